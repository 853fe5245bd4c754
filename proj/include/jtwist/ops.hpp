#pragma once

#include <functional>
#include <span>

#include "jtwist/series.hpp"

namespace jtwist {

// ---- element builders -------------------------------------------------------

UElement unitElement(const Config& c);
UElement makeP(const Config& c, int mu);
UElement makeD(const Config& c);
/// Single-term element coeff * kappa^-kappaPow * mono.
UElement monoElement(const Config& c, const Mono& m, int kappaPow = 0,
                     const GaussianRational& coeff = GaussianRational::unit());
/// The contracted momentum P = v^alpha P_alpha, optionally times kappa^-shift.
UElement contractedP(const Config& c, int kappaShift = 0);

UTensor unitTensor(const Config& c);
UTensor tensorProduct(const UElement& a, const UElement& b);
UTensor3 unitTriple(const Config& c);

// ---- undeformed Hopf structure ----------------------------------------------

/// Coproduct Delta(P_mu) = P_mu x 1 + 1 x P_mu, Delta(D) = D x 1 + 1 x D,
/// extended as an algebra homomorphism.
UTensor coproduct(const UElement& x);

/// Counit: the scalar part of x (all-unit-leg terms), as a series in 1/kappa.
UElement counitScalar(const UElement& x);

/// Antipode S(P_mu) = -P_mu, S(D) = -D, extended as an anti-homomorphism.
UElement antipode(const UElement& x);

// ---- leg-wise maps and embeddings -------------------------------------------

/// Per-monomial map applied to one leg of a tensor (e.g. the antipode on leg 1
/// to form (S x 1) F^-1). The map receives the leg monomial and returns an
/// element; kappa powers and coefficients of the image combine with the term's.
using MonoMap = std::function<UElement(const Mono&)>;
UTensor mapLeg(const UTensor& t, int leg, const MonoMap& f);

/// Multiplication map mu: x (x) y -> x * y.
UElement multiplyLegs(const UTensor& t);

/// The undeformed antipode of a single normal-ordered monomial, as a MonoMap.
MonoMap antipodeMonoMap(const Config& c);

enum class TripleMode {
    CoproductLeft,    // (Delta x id) t
    CoproductRight,   // (id x Delta) t
    TensorUnitRight,  // t x 1   (legs 1,2)
    TensorUnitLeft    // 1 x t   (legs 2,3)
};
UTensor3 extendToTriple(const UTensor& t, TripleMode mode);

/// Embedding into legs 1 and 3: x (x) y -> x (x) 1 (x) y.
UTensor3 embed13(const UTensor& t);

/// (eps x id) t and (id x eps) t: keep terms whose selected leg is the unit
/// monomial, collapse to a single-leg series.
UElement counitLeg(const UTensor& t, int leg);

// ---- evaluation --------------------------------------------------------------

/// Evaluate a D-free tensor on numeric momenta: left-leg P_mu -> k[mu],
/// right-leg P_mu -> q[mu], kappa numeric. Throws AlgebraError when a leg
/// contains D, when the tensor has non-real coefficients, or when k/q sizes
/// do not match the tensor dimension.
double evalMomentum(const UTensor& t, std::span<const double> k, std::span<const double> q,
                    double kappa);

}  // namespace jtwist
