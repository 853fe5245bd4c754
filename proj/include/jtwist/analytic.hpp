#pragma once

#include "jtwist/series.hpp"

namespace jtwist {

enum class AnalyticKind { Exp, Log1p, Inv1p, Sqrt1p };

/// Apply exp(A), ln(1+A), (1+A)^-1 or sqrt(1+A) to a series A all of whose
/// terms carry kappa power >= 1 (so the expansion terminates at the truncation
/// order). Throws AlgebraError when A has a kappa^0 term.
template <int L>
Series<L> analytic(AnalyticKind kind, const Series<L>& a);

template <int L>
Series<L> expSeries(const Series<L>& a) {
    return analytic(AnalyticKind::Exp, a);
}
template <int L>
Series<L> log1pSeries(const Series<L>& a) {
    return analytic(AnalyticKind::Log1p, a);
}
template <int L>
Series<L> inv1pSeries(const Series<L>& a) {
    return analytic(AnalyticKind::Inv1p, a);
}
template <int L>
Series<L> sqrt1pSeries(const Series<L>& a) {
    return analytic(AnalyticKind::Sqrt1p, a);
}

/// Inverse of a series whose kappa^0 component is a nonzero multiple of the
/// identity monomial: x^-1 with x = c(1 + dev/c). Throws AlgebraError when the
/// kappa^0 component is missing, non-scalar, or zero.
template <int L>
Series<L> inverseUnit(const Series<L>& x);

/// Square root of a series of the form 1 + dev with dev carrying only
/// kappa >= 1 terms. Throws otherwise.
template <int L>
Series<L> sqrtUnit(const Series<L>& x);

extern template Series<1> analytic(AnalyticKind, const Series<1>&);
extern template Series<2> analytic(AnalyticKind, const Series<2>&);
extern template Series<3> analytic(AnalyticKind, const Series<3>&);
extern template Series<1> inverseUnit(const Series<1>&);
extern template Series<2> inverseUnit(const Series<2>&);
extern template Series<3> inverseUnit(const Series<3>&);
extern template Series<1> sqrtUnit(const Series<1>&);
extern template Series<2> sqrtUnit(const Series<2>&);
extern template Series<3> sqrtUnit(const Series<3>&);

}  // namespace jtwist
