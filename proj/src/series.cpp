#include "jtwist/series.hpp"

#include <vector>

namespace jtwist {

namespace {

using Expansion = std::vector<std::pair<Mono, mpz_class>>;

/// Normal-ordered product of two legs. The crossing rule D P_mu = P_mu (D - 1)
/// gives, for multi-indices, D^b P^c = P^c (D - |c|)^b, hence
///   (P^a D^b)(P^c D^d) = sum_j C(b,j) (-|c|)^(b-j) P^(a+c) D^(j+d).
void legProduct(const Mono& lhs, const Mono& rhs, Expansion& out) {
    out.clear();
    Mono merged;
    for (int i = 0; i < kMaxDim; ++i) {
        unsigned s = unsigned(lhs.p[i]) + unsigned(rhs.p[i]);
        if (s > 0xffff) throw AlgebraError("P exponent overflow");
        merged.p[i] = static_cast<uint16_t>(s);
    }
    const unsigned b = lhs.d;
    const int cTot = rhs.pTotal();
    if (b == 0 || cTot == 0) {
        unsigned s = b + unsigned(rhs.d);
        if (s > 0xffff) throw AlgebraError("D exponent overflow");
        merged.d = static_cast<uint16_t>(s);
        out.emplace_back(merged, mpz_class(1));
        return;
    }
    mpz_class binom, powc, f;
    for (unsigned j = 0; j <= b; ++j) {
        unsigned s = j + unsigned(rhs.d);
        if (s > 0xffff) throw AlgebraError("D exponent overflow");
        Mono m = merged;
        m.d = static_cast<uint16_t>(s);
        mpz_bin_uiui(binom.get_mpz_t(), b, j);
        mpz_ui_pow_ui(powc.get_mpz_t(), static_cast<unsigned long>(cTot), b - j);
        f = binom * powc;
        if ((b - j) % 2 == 1) f = -f;
        out.emplace_back(m, f);
    }
}

/// (P^a D^b)* = (-D)^b P^a = (-1)^b sum_j C(b,j) (-|a|)^(b-j) P^a D^j.
void conjugateLeg(const Mono& m, Expansion& out) {
    Mono dPart;
    dPart.d = m.d;
    Mono pPart = m;
    pPart.d = 0;
    legProduct(dPart, pPart, out);
    if (m.d % 2 == 1)
        for (auto& [mono, f] : out) f = -f;
}

}  // namespace

template <int L>
Series<L> Series<L>::shiftedKappa(int dm, const GaussianRational& c) const {
    if (dm < 0) throw AlgebraError("shiftedKappa requires dm >= 0");
    Series r(dim_, order_);
    if (c.isZero()) return r;
    for (const auto& [k, v] : terms_) {
        if (k.kappa + dm > order_) continue;
        Key nk = k;
        nk.kappa += dm;
        r.terms_.emplace(nk, v * c);
    }
    return r;
}

template <int L>
Series<L> Series<L>::multiply(const Series& a, const Series& b) {
    a.requireShape(b, "multiply");
    Series r(a.dim_, a.order_);
    std::array<Expansion, L> ex;
    for (const auto& [ka, ca] : a.terms_) {
        for (const auto& [kb, cb] : b.terms_) {
            const int kap = ka.kappa + kb.kappa;
            if (kap > a.order_) continue;
            for (int l = 0; l < L; ++l) legProduct(ka.legs[l], kb.legs[l], ex[l]);
            const GaussianRational base = ca * cb;
            std::array<std::size_t, L> idx{};
            while (true) {
                Key k;
                k.kappa = kap;
                mpz_class f(1);
                for (int l = 0; l < L; ++l) {
                    k.legs[l] = ex[l][idx[l]].first;
                    f *= ex[l][idx[l]].second;
                }
                r.addTerm(k, base * Rational(f));
                int l = 0;
                while (l < L && ++idx[l] == ex[l].size()) {
                    idx[l] = 0;
                    ++l;
                }
                if (l == L) break;
            }
        }
    }
    return r;
}

template <int L>
Series<L> Series<L>::pow(unsigned long e) const {
    Series r(dim_, order_);
    r.addTerm(Key{}, GaussianRational::unit());
    for (unsigned long i = 0; i < e; ++i) r = multiply(r, *this);
    return r;
}

UTensor flip(const UTensor& t) {
    UTensor r(t.dim(), t.order());
    for (const auto& [k, c] : t.terms()) {
        TermKey<2> nk = k;
        std::swap(nk.legs[0], nk.legs[1]);
        r.addTerm(nk, c);
    }
    return r;
}

template <int L>
Series<L> kappaFlip(const Series<L>& s) {
    Series<L> r(s.dim(), s.order());
    for (const auto& [k, c] : s.terms()) r.addTerm(k, (k.kappa % 2 == 1) ? -c : c);
    return r;
}

template <int L>
Series<L> conjugateStar(const Series<L>& s) {
    Series<L> r(s.dim(), s.order());
    std::array<Expansion, L> ex;
    for (const auto& [k, c] : s.terms()) {
        for (int l = 0; l < L; ++l) conjugateLeg(k.legs[l], ex[l]);
        const GaussianRational base = c.conj();
        std::array<std::size_t, L> idx{};
        while (true) {
            TermKey<L> nk;
            nk.kappa = k.kappa;
            mpz_class f(1);
            for (int l = 0; l < L; ++l) {
                nk.legs[l] = ex[l][idx[l]].first;
                f *= ex[l][idx[l]].second;
            }
            r.addTerm(nk, base * Rational(f));
            int l = 0;
            while (l < L && ++idx[l] == ex[l].size()) {
                idx[l] = 0;
                ++l;
            }
            if (l == L) break;
        }
    }
    return r;
}

template class Series<1>;
template class Series<2>;
template class Series<3>;

template Series<1> kappaFlip(const Series<1>&);
template Series<2> kappaFlip(const Series<2>&);
template Series<3> kappaFlip(const Series<3>&);
template Series<1> conjugateStar(const Series<1>&);
template Series<2> conjugateStar(const Series<2>&);
template Series<3> conjugateStar(const Series<3>&);

}  // namespace jtwist
