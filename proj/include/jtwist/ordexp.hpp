#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "jtwist/config.hpp"
#include "jtwist/rational.hpp"
#include "jtwist/report.hpp"
#include "jtwist/twist.hpp"

namespace jtwist::ordexp {

/// Monomial x^a k^b p^c in the Weyl algebra extended by the formal central
/// momenta k. Stored in normal order: x to the left of p, with k commuting
/// with everything.
struct OMono {
    std::array<std::uint16_t, kMaxDim> x{};
    std::array<std::uint16_t, kMaxDim> k{};
    std::array<std::uint16_t, kMaxDim> p{};

    friend auto operator<=>(const OMono&, const OMono&) = default;

    int kTotal() const {
        int t = 0;
        for (auto e : k) t += e;
        return t;
    }
    bool hasX() const {
        for (auto e : x)
            if (e) return true;
        return false;
    }
    bool hasP() const {
        for (auto e : p)
            if (e) return true;
        return false;
    }
};

/// Sparse exact series over OMono, truncated at total k-degree M. The
/// noncommutative product realizes x_i p_j - p_j x_i = i delta_ij; the
/// normal-ordered product treats words as already ordered (plain exponent
/// addition), which is exactly the :...: prescription.
class OrdElement {
public:
    OrdElement(int dim, int kOrder);

    static OrdElement zero(int dim, int kOrder) { return OrdElement(dim, kOrder); }
    static OrdElement unit(int dim, int kOrder);

    int dim() const { return dim_; }
    int kOrder() const { return kOrder_; }
    const std::map<OMono, GaussianRational>& terms() const { return terms_; }
    bool isZero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    /// Accumulate one term; silently drops k-degrees beyond the truncation.
    void addTerm(const OMono& m, const GaussianRational& c);

    OrdElement& operator+=(const OrdElement& o);
    OrdElement& operator-=(const OrdElement& o);
    friend OrdElement operator+(OrdElement a, const OrdElement& b) { return a += b; }
    friend OrdElement operator-(OrdElement a, const OrdElement& b) { return a -= b; }
    friend OrdElement operator-(OrdElement a);
    OrdElement scaled(const GaussianRational& c) const;

    /// True product: contracts every p of the left factor against every x of
    /// the right factor via p^c x^e = sum_t C(c,t) C(e,t) t! (-i)^t x^(e-t) p^(c-t).
    static OrdElement multiply(const OrdElement& a, const OrdElement& b);

    /// Normal-ordered product: exponents add with no contraction.
    static OrdElement orderedMultiply(const OrdElement& a, const OrdElement& b);

    /// Component of exact total k-degree s.
    OrdElement kComponent(int s) const;
    /// Terms with every p exponent zero / the sub-series with no x at all.
    OrdElement dropP() const;
    int minKDegree() const;  // kOrder+1 when zero

    friend bool operator==(const OrdElement& a, const OrdElement& b);
    friend bool operator!=(const OrdElement& a, const OrdElement& b) { return !(a == b); }

private:
    int dim_;
    int kOrder_;
    std::map<OMono, GaussianRational> terms_;
};

/// exp(S) = sum_{m<=M} S^m / m! under the given product; requires every term
/// of S to carry k-degree >= 1 so the series terminates at the truncation.
OrdElement expSeries(const OrdElement& s, bool ordered);

/// Convenience single-variable monomials.
OrdElement oX(int dim, int kOrder, int mu, int e = 1);
OrdElement oK(int dim, int kOrder, int mu, int e = 1);
OrdElement oP(int dim, int kOrder, int mu, int e = 1);

/// --- One-dimensional layer -------------------------------------------------

/// The 1D Weyl algebra with a single formal k: dim fixed to 1.
using W1Element = OrdElement;

/// Dense polynomial in p: coefficient of p^j at index j.
using Poly1 = std::vector<GaussianRational>;

/// Phi(k,p) = J(k,p) - p as a map kPow -> polynomial in p; byOrder[0] is
/// identically zero (J(0,p) = p).
struct PhiSeries {
    int M = 0;
    std::vector<Poly1> byOrder;
};

/// exp(i k x phi(p)) expanded word-by-word with exact normal ordering,
/// truncated at kPow <= M.
W1Element bruteForceExpand(const Poly1& phi, int M);

/// Order-by-order formal solution of dJ/dk = phi(J), J(0,p) = p, returned as
/// Phi = J - p.
PhiSeries solveJSeries(const Poly1& phi, int M);

/// :exp(i x Phi): with every x power moved to the left.
W1Element normalOrderedExp(const PhiSeries& Phi, int M);

/// e^{-i k x phi(p)} p e^{i k x phi(p)} computed by brute-force conjugation;
/// exact at the truncation and free of x by construction.
W1Element conjugatedMomentum(const Poly1& phi, int M);

/// Proposition 1: bruteForceExpand == normalOrderedExp(solveJSeries), plus
/// the conjugation identity for J. phiLabel names the polynomial in the
/// report detail.
CheckReport checkProposition1(const Poly1& phi, int M, const std::string& phiLabel = "");

/// The 1D shadow of the interpolating realization:
/// phi(p) = (1 + u p)(1 - (1-u) p).
Poly1 interpolationPhi(const Rational& u);

/// --- Multidimensional layer ------------------------------------------------

/// Coordinate realization x^mu = x^alpha phi_alpha^mu(p) + chi^mu(p) with
/// polynomial entries (pure p, no x or k). phi[mu][alpha] holds
/// phi_alpha^mu; chi[mu] may be zero.
struct Realization {
    int dim = 0;
    int kOrder = 0;
    std::string label;
    std::vector<std::vector<OrdElement>> phi;
    std::vector<OrdElement> chi;
};

/// The interpolating family's realization at exact u and kappa: R carries the
/// full scalar term chi^mu = i u(1-u) kappa^-2 v^mu (v.p), LR half of it,
/// F0/F1/L none.
Realization familyRealization(Family f, const Rational& u, const Config& cfg,
                              const Rational& kappa, int M);

/// Formal flow of Proposition 2: J_alpha solving
/// dJ_alpha/dlambda = k_mu phi_alpha^mu(J) from J(0) = p, and the scalar Q
/// solving dQ/dlambda = k_mu chi^mu(J) from Q(0) = 0.
struct FlowSeries {
    std::vector<OrdElement> J;
    OrdElement Q;

    FlowSeries(int dim, int M) : Q(dim, M) {}
};

FlowSeries solveFlow(const Realization& r);

/// exp(i k_mu x^mu) with x^mu = x^alpha phi_alpha^mu + chi^mu, expanded and
/// normal-ordered exactly, truncated at total k-degree M.
OrdElement bruteForceExpandN(const Realization& r);

/// :exp(i x^alpha (J_alpha - p_alpha)): . exp(i Q).
OrdElement normalOrderedExpN(const FlowSeries& flow, const Realization& r);

/// Exact Taylor coefficients of gReal(A) = log(u e^{-(1-u)A} + (1-u) e^{uA})
/// up to A^M; index j holds the coefficient of A^j.
std::vector<Rational> gRealSeries(const Rational& u, int M);

/// Proposition 2 for the given realization: the ordered-exponential identity
/// holds exactly at the truncation, Q has no k-free part (Q(0,p) = 0), and
/// for the interpolating family Q(k,0) equals the exact g series in
/// A = (v.k)/kappa. The g comparison runs when interpParams is provided.
struct InterpParams {
    Rational u;
    Rational kappa;
    Rational chiWeight;  // 1 for R, 1/2 for LR, 0 for L
    std::vector<Rational> v;
};

CheckReport checkProposition2(const Realization& r,
                              const InterpParams* interpParams = nullptr);

/// familyRealization + solveFlow + the full Proposition 2 report, wiring the
/// g-series comparison for the chosen family.
CheckReport checkProposition2Family(Family f, const Rational& u, const Config& cfg,
                                    const Rational& kappa, int M);

}  // namespace jtwist::ordexp
