#include "jtwist/weyl.hpp"

#include <gmpxx.h>

#include <utility>
#include <vector>

namespace jtwist {

namespace {

/// (-i)^T
GaussianRational negImagPow(int T) {
    switch (((T % 4) + 4) % 4) {
        case 0: return GaussianRational(1);
        case 1: return GaussianRational(Rational(0), Rational(-1));
        case 2: return GaussianRational(-1);
        default: return GaussianRational(Rational(0), Rational(1));
    }
}

GaussianRational imagScalar(const Rational& r) { return {Rational(0), r}; }

}  // namespace

WElement WElement::shiftedKappa(int dm, const GaussianRational& c) const {
    if (dm < 0) throw AlgebraError("shiftedKappa requires dm >= 0");
    WElement r(dim_, order_);
    for (const auto& [k, v] : terms_) r.addTerm({k.kappa + dm, k.m}, v * c);
    return r;
}

WElement WElement::multiply(const WElement& a, const WElement& b) {
    a.requireShape(b, "multiply");
    WElement r(a.dim_, a.order_);
    const int n = a.dim_;
    for (const auto& [ka, ca] : a.terms_) {
        for (const auto& [kb, cb] : b.terms_) {
            int kappa = ka.kappa + kb.kappa;
            if (kappa > a.order_) continue;
            const WMono& A = ka.m;
            const WMono& B = kb.m;
            // D^c passes x^e P^f as (D + |e| - |f|)^c
            long dShift = static_cast<long>(B.xTotal()) - B.pTotal();
            GaussianRational base = ca * cb;
            std::array<unsigned, kMaxDim> t{};
            std::array<unsigned, kMaxDim> tmax{};
            for (int i = 0; i < n; ++i)
                tmax[i] = std::min<unsigned>(A.p[i], B.x[i]);
            while (true) {
                mpz_class fac = 1;
                unsigned T = 0;
                for (int i = 0; i < n; ++i) {
                    if (t[i] != 0) {
                        mpz_class b1, b2, f;
                        mpz_bin_uiui(b1.get_mpz_t(), A.p[i], t[i]);
                        mpz_bin_uiui(b2.get_mpz_t(), B.x[i], t[i]);
                        mpz_fac_ui(f.get_mpz_t(), t[i]);
                        fac *= b1 * b2 * f;
                    }
                    T += t[i];
                }
                GaussianRational cT = base * Rational(fac) * negImagPow(static_cast<int>(T));
                WMono M;
                bool overflow = false;
                for (int i = 0; i < n; ++i) {
                    long xe = static_cast<long>(A.x[i]) + B.x[i] - t[i];
                    long pe = static_cast<long>(A.p[i]) - t[i] + B.p[i];
                    if (xe > 65535 || pe > 65535) overflow = true;
                    M.x[i] = static_cast<uint16_t>(xe);
                    M.p[i] = static_cast<uint16_t>(pe);
                }
                for (unsigned j = 0; j <= A.d; ++j) {
                    mpz_class binD, pw;
                    mpz_bin_uiui(binD.get_mpz_t(), A.d, j);
                    mpz_class shift(dShift);
                    mpz_pow_ui(pw.get_mpz_t(), shift.get_mpz_t(), A.d - j);
                    long de = static_cast<long>(j) + B.d;
                    if (de > 65535 || overflow)
                        throw AlgebraError("exponent overflow in WElement multiply");
                    WMono Mj = M;
                    Mj.d = static_cast<uint16_t>(de);
                    r.addTerm({kappa, Mj}, cT * Rational(binD * pw));
                }
                int i = 0;
                for (; i < n; ++i) {
                    if (t[i] < tmax[i]) {
                        ++t[i];
                        break;
                    }
                    t[i] = 0;
                }
                if (i == n) break;
            }
        }
    }
    return r;
}

WElement WElement::pow(unsigned long e) const {
    WElement r(dim_, order_);
    r.addTerm(WKey{}, GaussianRational::unit());
    for (unsigned long i = 0; i < e; ++i) r = multiply(r, *this);
    return r;
}

WElement wUnit(const Config& c) { return WElement::unit(c); }

WElement wMono(const Config& c, const WMono& m, int kappaPow, const GaussianRational& coeff) {
    WElement w(c.dim, c.order);
    w.addTerm({kappaPow, m}, coeff);
    return w;
}

WElement wX(const Config& c, int mu) { return wMono(c, WMono::X(mu)); }
WElement wP(const Config& c, int mu) { return wMono(c, WMono::P(mu)); }
WElement wD(const Config& c) { return wMono(c, WMono::D()); }

WElement wContractedP(const Config& c, int kappaShift) {
    WElement w(c.dim, c.order);
    for (int mu = 0; mu < c.dim; ++mu)
        w.addTerm({kappaShift, WMono::P(mu)}, GaussianRational(c.v[mu]));
    return w;
}

WElement embedW(const UElement& a) {
    WElement w(a.dim(), a.order());
    for (const auto& [k, c] : a.terms()) {
        WMono m;
        m.p = k.legs[0].p;
        m.d = k.legs[0].d;
        w.addTerm({k.kappa, m}, c);
    }
    return w;
}

WElement commutatorW(const WElement& a, const WElement& b) {
    return WElement::multiply(a, b) - WElement::multiply(b, a);
}

WElement conjugateStarW(const WElement& w, bool shiftD) {
    WElement out(w.dim(), w.order());
    const long s = shiftD ? w.dim() : 0;
    Config shape(w.dim(), w.order());
    for (const auto& [k, c] : w.terms()) {
        // (x^a P^b D^c)* = (-D-s)^c P^b x^a, re-normal-ordered
        WElement dpart(w.dim(), w.order());
        const unsigned cD = k.m.d;
        for (unsigned j = 0; j <= cD; ++j) {
            mpz_class binD, pw;
            mpz_bin_uiui(binD.get_mpz_t(), cD, j);
            mpz_class sh(s);
            mpz_pow_ui(pw.get_mpz_t(), sh.get_mpz_t(), cD - j);
            Rational coeff(binD * pw);
            if (cD % 2 == 1) coeff = -coeff;
            WMono dm;
            dm.d = static_cast<uint16_t>(j);
            dpart.addTerm({0, dm}, GaussianRational(coeff));
        }
        WMono pb;
        pb.p = k.m.p;
        WMono xa;
        xa.x = k.m.x;
        WElement word = dpart * wMono(shape, pb) * wMono(shape, xa);
        out += word.shiftedKappa(k.kappa, c.conj());
    }
    return out;
}

WElement substituteDilatation(const WElement& w) {
    Config shape(w.dim(), w.order());
    // D -> i x.P
    WElement sub(w.dim(), w.order());
    for (int mu = 0; mu < w.dim(); ++mu) {
        WMono m;
        m.x[mu] = 1;
        m.p[mu] = 1;
        sub.addTerm({0, m}, GaussianRational::imagUnit());
    }
    std::vector<WElement> subPow{wUnit(shape)};
    WElement out(w.dim(), w.order());
    for (const auto& [k, c] : w.terms()) {
        while (subPow.size() <= k.m.d) subPow.push_back(subPow.back() * sub);
        WMono head = k.m;
        head.d = 0;
        out += (wMono(shape, head) * subPow[k.m.d]).shiftedKappa(k.kappa, c);
    }
    return out;
}

std::string renderW(const WElement& w, bool multiline) {
    if (w.isZero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, c] : w.terms()) {
        std::string term;
        std::string mono;
        auto append = [&](const std::string& base, int mu, unsigned e, bool named) {
            if (e == 0) return;
            if (!mono.empty()) mono += ' ';
            mono += named ? base + std::to_string(mu) : base;
            if (e > 1) mono += '^' + std::to_string(e);
        };
        for (int mu = 0; mu < w.dim(); ++mu) append("x", mu, k.m.x[mu], w.dim() > 1);
        for (int mu = 0; mu < w.dim(); ++mu) append("P", mu, k.m.p[mu], w.dim() > 1);
        append("D", 0, k.m.d, false);
        std::string coeff = c.str();
        bool unitCoeff = (coeff == "1");
        if (!unitCoeff || (k.kappa == 0 && mono.empty())) {
            bool compound = coeff.find('+') != std::string::npos ||
                            coeff.rfind('-') != std::string::npos ||
                            coeff.find('i') != std::string::npos;
            term += (compound && coeff != "i" && coeff != "-i") ? "(" + coeff + ")" : coeff;
        }
        if (k.kappa != 0) {
            if (!term.empty()) term += " * ";
            term += "kappa^-" + std::to_string(k.kappa);
        }
        if (!mono.empty()) {
            if (!term.empty()) term += " * ";
            term += mono;
        }
        if (!first) out += multiline ? "\n" : " + ";
        out += term;
        first = false;
    }
    return out;
}

namespace {

WElement xhatSum(const Twist& t, int mu) {
    WElement out(t.cfg.dim, t.cfg.order);
    const GaussianRational minusI(Rational(0), Rational(-1));
    for (const auto& [key, c] : t.Finv.terms()) {
        const Mono& f1 = key.legs[0];
        const Mono& f2 = key.legs[1];
        int ptot = 0;
        int idx = -1;
        for (int i = 0; i < t.cfg.dim; ++i) {
            ptot += f1.p[i];
            if (f1.p[i] != 0) idx = i;
        }
        if (ptot == 0) {
            WMono m;
            m.x[mu] = 1;
            m.p = f2.p;
            m.d = f2.d;
            out.addTerm({key.kappa, m}, c);
        } else if (ptot == 1 && idx == mu) {
            WMono m;
            m.p = f2.p;
            m.d = f2.d;
            out.addTerm({key.kappa, m}, c * minusI);
        }
        // two or more P factors act as zero on x^mu
    }
    return out;
}

std::pair<Family, Rational> normalizeRealizationFamily(Family f, const Rational& u) {
    if (f == Family::F0) return {Family::L, Rational(0)};
    if (f == Family::F1) return {Family::L, Rational(1)};
    return {f, u};
}

CheckReport wReport(std::string check, Family f, const Rational& u, int order) {
    CheckReport r;
    r.check = std::move(check);
    r.family = familyName(f);
    r.u = toString(u);
    r.order = order;
    r.pass = true;
    return r;
}

void foldResidualW(CheckReport& r, const WElement& diff) {
    if (diff.isZero()) return;
    int m = diff.minKappa();
    if (!r.firstResidualOrder || m < *r.firstResidualOrder) r.firstResidualOrder = m;
    r.pass = false;
}

void trackTermsW(CheckReport& r, const WElement& s) {
    if (s.size() > r.maxTerms) r.maxTerms = s.size();
}

}  // namespace

WElement xhatFromTwist(const Twist& t, int mu) {
    WElement atN = xhatSum(t, mu);
    Twist up = buildTwist(t.family, t.u, t.cfg.withOrder(t.cfg.order + 1));
    WElement atN1 = xhatSum(up, mu);
    if (!atN1.kappaComponent(t.cfg.order + 1).isZero() || atN1.truncatedTo(t.cfg.order) != atN)
        throw AlgebraError("coordinate realization does not stabilize between successive orders");
    return atN;
}

WElement closedFormXhat(Family f, const Rational& u, const Config& cfg, int mu) {
    auto [ff, uu] = normalizeRealizationFamily(f, u);
    WElement core = (wX(cfg, mu) + wD(cfg).shiftedKappa(1, imagScalar((1 - uu) * cfg.v[mu]))) *
                    (wUnit(cfg) + wContractedP(cfg, 1).scaled(GaussianRational(uu)));
    Rational chi = 0;
    if (ff == Family::R) chi = uu * (1 - uu);
    else if (ff == Family::LR) chi = uu * (1 - uu) / 2;
    if (chi != 0) core += wContractedP(cfg, 2).scaled(imagScalar(chi * cfg.v[mu]));
    return core;
}

namespace weyl {

CheckReport checkRealization(const Twist& t) {
    CheckReport r = wReport("realization", t.family, t.u, t.cfg.order);
    for (int mu = 0; mu < t.cfg.dim; ++mu) {
        WElement xh = xhatFromTwist(t, mu);
        trackTermsW(r, xh);
        foldResidualW(r, xh - closedFormXhat(t.family, t.u, t.cfg, mu));
    }
    return r;
}

CheckReport checkCommutators(Family f, const Rational& u, const Config& cfg) {
    auto [ff, uu] = normalizeRealizationFamily(f, u);
    Twist t = buildTwist(f, u, cfg);
    CheckReport r = wReport("weyl_commutators", f, t.u, cfg.order);
    std::vector<WElement> xh;
    for (int mu = 0; mu < cfg.dim; ++mu) xh.push_back(xhatFromTwist(t, mu));
    WElement onePlusUP = wUnit(cfg) + wContractedP(cfg, 1).scaled(GaussianRational(uu));
    for (int mu = 0; mu < cfg.dim; ++mu) {
        for (int nu = 0; nu < cfg.dim; ++nu) {
            if (mu < nu) {
                WElement lhs = commutatorW(xh[mu], xh[nu]);
                WElement rhs = (xh[nu].scaled(imagScalar(cfg.v[mu])) -
                                xh[mu].scaled(imagScalar(cfg.v[nu])))
                                   .shiftedKappa(1);
                trackTermsW(r, lhs);
                foldResidualW(r, lhs - rhs);
            }
            WElement lhs = commutatorW(wP(cfg, mu), xh[nu]);
            WElement delta = wUnit(cfg).scaled(
                mu == nu ? imagScalar(Rational(-1)) : GaussianRational(0));
            WElement rhs = (delta + wP(cfg, mu).shiftedKappa(1, imagScalar((1 - uu) * cfg.v[nu]))) *
                           onePlusUP;
            foldResidualW(r, lhs - rhs);
        }
    }
    (void)ff;
    return r;
}

CheckReport checkChiDifference(const Rational& u, const Config& cfg) {
    Twist l = buildTwist(Family::L, u, cfg);
    Twist rr = buildTwist(Family::R, u, cfg);
    CheckReport r = wReport("chi_difference", Family::R, u, cfg.order);
    r.family = "L/R";
    for (int mu = 0; mu < cfg.dim; ++mu) {
        WElement diff = xhatFromTwist(rr, mu) - xhatFromTwist(l, mu);
        WElement expected = wContractedP(cfg, 2).scaled(imagScalar(u * (1 - u) * cfg.v[mu]));
        trackTermsW(r, diff);
        foldResidualW(r, diff - expected);
    }
    return r;
}

CheckReport checkJacobi(Family f, const Rational& u, const Config& cfg) {
    Twist t = buildTwist(f, u, cfg);
    CheckReport r = wReport("weyl_jacobi", f, t.u, cfg.order);
    std::vector<WElement> xh;
    for (int mu = 0; mu < cfg.dim; ++mu) xh.push_back(xhatFromTwist(t, mu));
    for (int mu = 0; mu < cfg.dim; ++mu)
        for (int nu = 0; nu < cfg.dim; ++nu)
            for (int rho = 0; rho < cfg.dim; ++rho) {
                const WElement& a = xh[mu];
                const WElement& b = xh[nu];
                WElement c = wP(cfg, rho);
                WElement jac = commutatorW(commutatorW(a, b), c) +
                               commutatorW(commutatorW(b, c), a) +
                               commutatorW(commutatorW(c, a), b);
                trackTermsW(r, jac);
                foldResidualW(r, jac);
            }
    return r;
}

}  // namespace weyl

}  // namespace jtwist
