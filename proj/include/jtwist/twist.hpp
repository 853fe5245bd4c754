#pragma once

#include <string>

#include "jtwist/analytic.hpp"
#include "jtwist/ops.hpp"

namespace jtwist {

/// The five twist families on U(g)[[1/kappa]], g = {P_mu, D}, [P_mu, D] = P_mu:
/// F0 and F1 are the two basic Jordanian twists, L/R/LR the one-parameter
/// interpolating families obtained from F0 by coboundary twists built from
/// omega_L = exp(-(u/kappa) D P), omega_R = exp(-(u/kappa) P D) and their
/// symmetric mix.
enum class Family { F0, F1, L, R, LR };

std::string familyName(Family f);
Family parseFamily(const std::string& name);

struct Twist {
    Family family = Family::F0;
    Rational u{0};
    Config cfg;
    UTensor F;     // twist element
    UTensor Finv;  // exact inverse at the truncation order
};

/// Construct a family twist by composing analytic-series exponentials; the
/// inverse is assembled factor-by-factor in reverse order (never by series
/// inversion of the product). u is ignored for F0/F1 and recorded as 0/1.
Twist buildTwist(Family f, const Rational& u, const Config& cfg);

/// Exponent X of the coboundary element omega = exp(X) attached to a family
/// (L: X = -(u/kappa) DP, R: -(u/kappa) PD, LR: -(u/2kappa)(DP + PD)).
/// Throws for F0/F1, which carry no coboundary factor.
UElement omegaExponent(Family f, const Rational& u, const Config& cfg);

/// F_omega = (omega^-1 x omega^-1) F Delta(omega) for omega = exp(X), with the
/// inverse Delta(omega^-1) F^-1 (omega x omega). The family/u tags are copied
/// from `base`.
Twist coboundaryConjugate(const Twist& base, const UElement& X);

/// R = F^tau F^-1 and its kappa^-1 component.
struct RMatrix {
    UTensor matrix;
    UTensor classicalPart;
};
RMatrix rMatrix(const Twist& t);

/// 1 x 1 + u(1-u) kappa^-2 P x P, the commutative factor relating the L and R
/// families.
UTensor omegaTensor(const Config& cfg, const Rational& u);

/// True when the kappa^-1 component of F is antisymmetric under leg exchange
/// (equals the classical r-matrix contribution); the symmetric remainder is
/// returned through `symmetricPart` when given.
bool rSymmetric(const Twist& t, UTensor* symmetricPart = nullptr);

}  // namespace jtwist
