#pragma once

#include "jtwist/report.hpp"
#include "jtwist/twist.hpp"

namespace jtwist {

/// One monomial of the extended Weyl-dilatation algebra in normal order
/// x^x[0]..x^x[n-1] P^p[0]..P^p[n-1] D^d, under the relations
/// [P_mu, x^nu] = -i delta_mu^nu, [D, x^mu] = x^mu, [P_mu, D] = P_mu.
struct WMono {
    std::array<uint16_t, kMaxDim> x{};
    std::array<uint16_t, kMaxDim> p{};
    uint16_t d = 0;

    friend auto operator<=>(const WMono&, const WMono&) = default;

    bool isUnit() const {
        if (d != 0) return false;
        for (int i = 0; i < kMaxDim; ++i)
            if (x[i] != 0 || p[i] != 0) return false;
        return true;
    }
    int xTotal() const {
        int s = 0;
        for (auto e : x) s += e;
        return s;
    }
    int pTotal() const {
        int s = 0;
        for (auto e : p) s += e;
        return s;
    }

    static WMono unit() { return WMono{}; }
    static WMono X(int mu) {
        WMono m;
        m.x[mu] = 1;
        return m;
    }
    static WMono P(int mu) {
        WMono m;
        m.p[mu] = 1;
        return m;
    }
    static WMono D() {
        WMono m;
        m.d = 1;
        return m;
    }
};

struct WKey {
    int32_t kappa = 0;
    WMono m{};

    friend auto operator<=>(const WKey&, const WKey&) = default;
};

/// Truncated series in 1/kappa over extended Weyl-dilatation monomials with
/// GaussianRational coefficients; the same exact, value-semantics discipline
/// as Series.
class WElement {
public:
    using Map = std::map<WKey, GaussianRational>;

    WElement() = default;
    WElement(int dim, int order) : dim_(dim), order_(order) {
        if (dim < 1 || dim > kMaxDim) throw AlgebraError("WElement dim out of range");
        if (order < 0) throw AlgebraError("WElement order must be >= 0");
    }

    static WElement zero(const Config& c) { return WElement(c.dim, c.order); }
    static WElement unit(const Config& c) {
        WElement w(c.dim, c.order);
        w.terms_.emplace(WKey{}, GaussianRational::unit());
        return w;
    }

    int dim() const { return dim_; }
    int order() const { return order_; }
    bool isZero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const Map& terms() const { return terms_; }

    void addTerm(const WKey& k, const GaussianRational& c) {
        if (k.kappa > order_) return;
        if (k.kappa < 0) throw AlgebraError("negative kappa power");
        if (c.isZero()) return;
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.isZero()) terms_.erase(it);
        }
    }

    WElement& operator+=(const WElement& o) {
        requireShape(o, "add");
        for (const auto& [k, c] : o.terms_) addTerm(k, c);
        return *this;
    }
    WElement& operator-=(const WElement& o) {
        requireShape(o, "subtract");
        for (const auto& [k, c] : o.terms_) addTerm(k, -c);
        return *this;
    }
    friend WElement operator+(WElement a, const WElement& b) { return a += b; }
    friend WElement operator-(WElement a, const WElement& b) { return a -= b; }
    WElement operator-() const {
        WElement r(dim_, order_);
        for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
        return r;
    }

    WElement scaled(const GaussianRational& c) const {
        WElement r(dim_, order_);
        if (c.isZero()) return r;
        for (const auto& [k, v] : terms_) r.terms_.emplace(k, v * c);
        return r;
    }

    /// Multiply by c * kappa^-dm (dm >= 0).
    WElement shiftedKappa(int dm, const GaussianRational& c = GaussianRational::unit()) const;

    friend WElement operator*(const WElement& a, const WElement& b) { return multiply(a, b); }
    static WElement multiply(const WElement& a, const WElement& b);
    WElement pow(unsigned long e) const;

    int minKappa() const {
        int m = order_ + 1;
        for (const auto& [k, c] : terms_)
            if (k.kappa < m) m = k.kappa;
        return m;
    }
    WElement kappaComponent(int m) const {
        WElement r(dim_, order_);
        for (const auto& [k, c] : terms_)
            if (k.kappa == m) r.terms_.emplace(k, c);
        return r;
    }
    WElement truncatedTo(int newOrder) const {
        WElement r(dim_, newOrder);
        for (const auto& [k, c] : terms_)
            if (k.kappa <= newOrder) r.terms_.emplace(k, c);
        return r;
    }
    WElement withDeclaredOrder(int newOrder) const {
        WElement r(dim_, newOrder);
        for (const auto& [k, c] : terms_) {
            if (k.kappa > newOrder)
                throw AlgebraError("withDeclaredOrder would discard a stored term");
            r.terms_.emplace(k, c);
        }
        return r;
    }

    friend bool operator==(const WElement& a, const WElement& b) {
        return a.dim_ == b.dim_ && a.order_ == b.order_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const WElement& a, const WElement& b) { return !(a == b); }

private:
    int dim_ = 0;
    int order_ = 0;
    Map terms_;

    void requireShape(const WElement& o, const char* op) const {
        if (dim_ != o.dim_) throw AlgebraError(std::string("dimension mismatch in ") + op);
        if (order_ != o.order_)
            throw AlgebraError(std::string("truncation-order mismatch in ") + op);
    }
};

WElement wUnit(const Config& c);
WElement wX(const Config& c, int mu);
WElement wP(const Config& c, int mu);
WElement wD(const Config& c);
WElement wMono(const Config& c, const WMono& m, int kappaPow = 0,
               const GaussianRational& coeff = GaussianRational::unit());
/// Contracted momentum v^alpha P_alpha, optionally times kappa^-shift.
WElement wContractedP(const Config& c, int kappaShift = 0);

/// Embed a one-leg series (monomials in P, D only) into the extended algebra.
WElement embedW(const UElement& a);

WElement commutatorW(const WElement& a, const WElement& b);

/// The antilinear anti-automorphism with x* = x, P* = P and D* = -D
/// (or D* = -D - dim when shiftD is set); legs are re-normal-ordered.
WElement conjugateStarW(const WElement& w, bool shiftD = false);

/// Substitute D -> i x.P everywhere and re-normal-order.
WElement substituteDilatation(const WElement& w);

/// One term per line in the shared text format with x factors.
std::string renderW(const WElement& w, bool multiline = true);

/// Noncommutative coordinate xhat^mu = sum (f1 acting on x^mu) f2 over the
/// terms f1 (x) f2 of the twist inverse; the left-leg action sends x^mu to
/// itself under D, to -i delta under a single P, and kills higher P powers.
/// Throws when the result fails to stabilize between orders N and N+1.
WElement xhatFromTwist(const Twist& t, int mu);

/// Closed forms: (x^mu + (i/kappa)(1-u) v^mu D)(1 + (u/kappa) P) for every
/// family, plus the chi term i u(1-u) kappa^-2 v^mu P for the R family (half
/// of it for LR). F0/F1 are the u = 0 / u = 1 members.
WElement closedFormXhat(Family f, const Rational& u, const Config& cfg, int mu);

namespace weyl {

/// xhatFromTwist equals closedFormXhat for every coordinate, with the
/// stabilization between N and N+1 implied by construction.
CheckReport checkRealization(const Twist& t);

/// [xhat^mu, xhat^nu] = (i/kappa)(v^mu xhat^nu - v^nu xhat^mu) and
/// [P_mu, xhat^nu] = (-i delta + (i/kappa) v^nu (1-u) P_mu)(1 + (u/kappa) P).
CheckReport checkCommutators(Family f, const Rational& u, const Config& cfg);

/// xhat_R - xhat_L = i u(1-u) kappa^-2 v^mu P exactly.
CheckReport checkChiDifference(const Rational& u, const Config& cfg);

/// Jacobi identity on the triples (xhat^mu, xhat^nu, P_rho).
CheckReport checkJacobi(Family f, const Rational& u, const Config& cfg);

}  // namespace weyl

}  // namespace jtwist
