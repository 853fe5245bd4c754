#pragma once

#include "jtwist/report.hpp"
#include "jtwist/twist.hpp"

namespace jtwist::hopf {

// ---- twisted Hopf structure ---------------------------------------------------

/// Delta^F(Z) = F Delta(Z) F^-1 (valid for arbitrary Z, not only generators).
UTensor twistedCoproduct(const Twist& t, const UElement& Z);

/// S^F(Z) = U S(Z) U^-1 with U = mu((1 x S) F), U^-1 = mu((S x 1) F^-1).
UElement twistedAntipode(const Twist& t, const UElement& Z);
UElement antipodePrefactor(const Twist& t);
UElement antipodePrefactorInverse(const Twist& t);

// ---- closed-form family Hopf data ---------------------------------------------

UTensor closedCoproductP(Family f, const Rational& u, const Config& cfg, int mu);
UTensor closedCoproductD(Family f, const Rational& u, const Config& cfg);
UElement closedAntipodeP(Family f, const Rational& u, const Config& cfg, int mu);
UElement closedAntipodeD(Family f, const Rational& u, const Config& cfg);

// ---- checks ---------------------------------------------------------------------

CheckReport checkNormalization(const Twist& t);
CheckReport checkCocycle(const Twist& t, int tripleOrder);
/// Cocycle test for an ad-hoc tensor (used to demonstrate failures).
CheckReport checkCocycleTensor(const UTensor& F, int tripleOrder);
/// F_{f,0} = F0 and F_{f,1} = F1 exactly, f in {L, R, LR}.
CheckReport checkReduction(Family f, const Config& cfg);
/// buildTwist coincides with coboundaryConjugate(F0, omega) term by term.
CheckReport checkCoboundaryPath(Family f, const Rational& u, const Config& cfg);
CheckReport checkHopfClosedForms(const Twist& t);
CheckReport checkCoassociativity(const Twist& t, int tripleOrder);
CheckReport checkCounitAxiom(const Twist& t);
CheckReport checkAntipodeAxiom(const Twist& t);
/// F_{R,u}^-1 = F_{L,u}^-1 Omega^-1 and the LR interpolation
/// F_{LR,u}^-1 = F_{L,u}^-1 Omega^-1/2 = F_{R,u}^-1 Omega^1/2.
CheckReport checkFamilyRelation(const Rational& u, const Config& cfg);
/// exp((u/kappa) PD) exp(-(u/kappa) DP) = 1 + (u/kappa) P.
CheckReport checkExponentialIdentity(const Rational& u, const Config& cfg);
CheckReport checkQYBE(const Twist& t, int tripleOrder);
/// R_{L,u} = Omega^-1 R_{R,u} Omega and R_{LR,u} = Omega^1/2 R_{L,u} Omega^-1/2.
CheckReport checkRRelations(const Rational& u, const Config& cfg);
/// kappa^-1 part of R equals kappa^-1 (D x P - P x D) and is antisymmetric.
CheckReport checkClassicalR(const Twist& t);
/// Classical Yang-Baxter equation for r = kappa^-1 (D x P - P x D).
CheckReport checkCYBE(const Config& cfg);
/// F^{* x *} = F^-1 (families F0, F1, LR).
CheckReport checkUnitarity(const Twist& t);
/// F_{L,u}^{* x *} = F_{R,u}^-1.
CheckReport checkStarExchange(const Rational& u, const Config& cfg);
/// [Delta^{F_{L,u}}(Z)]^{* x *} = Delta^{F_{R,u}}(Z*) on generators.
CheckReport checkStarCoproduct(const Rational& u, const Config& cfg);
/// [S^{F_{L,u}}(Z)]* = S^{F_{R,1-u}}(Z*) with kappa -> -kappa, on generators.
CheckReport checkStarAntipode(const Rational& u, const Config& cfg);
/// (S x S)(F^{* x *}) = F^tau; holds only at u = 1/2 for the L/R families.
CheckReport checkMajid(const Twist& t);
/// dagger(Z) = -S^F(Z*) squares to the identity on generators.
CheckReport checkDagger(const Twist& t);
/// Delta^{F0}(omega Z omega^-1) = (omega x omega) Delta^{F_omega}(Z) (omega^-1 x omega^-1).
CheckReport checkGaugeEquivalence(Family f, const Rational& u, const Config& cfg);
/// Delta_L(P_mu) = Delta_R(P_mu) while Delta_L(D) != Delta_R(D) for u in (0,1);
/// reports the first differing kappa order.
CheckReport checkDeltaInequality(const Rational& u, const Config& cfg);
/// First-order part of F is antisymmetric exactly at u = 1/2.
CheckReport checkRSymmetry(const Twist& t);

}  // namespace jtwist::hopf
