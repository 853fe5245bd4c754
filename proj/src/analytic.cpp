#include "jtwist/analytic.hpp"

namespace jtwist {

namespace {

template <int L>
void requireDeviation(const Series<L>& a, const char* what) {
    if (!a.kappaComponent(0).isZero())
        throw AlgebraError(std::string(what) + ": argument contains a kappa^0 term");
}

}  // namespace

template <int L>
Series<L> analytic(AnalyticKind kind, const Series<L>& a) {
    requireDeviation(a, "analytic");
    Series<L> result(a.dim(), a.order());
    Series<L> power(a.dim(), a.order());
    power.addTerm(TermKey<L>{}, GaussianRational::unit());
    if (kind != AnalyticKind::Log1p) result += power;  // constant term 1
    Rational sqrtCoeff(1);
    for (int m = 1; m <= a.order(); ++m) {
        power = Series<L>::multiply(power, a);
        if (power.isZero()) break;
        Rational c;
        switch (kind) {
            case AnalyticKind::Exp: {
                // running 1/m! is folded into `power` to keep it small
                power = power.scaled(GaussianRational(Rational(1, m)));
                c = 1;
                break;
            }
            case AnalyticKind::Log1p:
                c = Rational(m % 2 == 1 ? 1 : -1, m);
                break;
            case AnalyticKind::Inv1p:
                c = (m % 2 == 1) ? -1 : 1;
                break;
            case AnalyticKind::Sqrt1p: {
                // binom(1/2, m) built up iteratively
                sqrtCoeff *= Rational(1, 2) - Rational(m - 1);
                sqrtCoeff /= m;
                c = sqrtCoeff;
                break;
            }
        }
        result += power.scaled(GaussianRational(c));
    }
    return result;
}

template <int L>
Series<L> inverseUnit(const Series<L>& x) {
    Series<L> scalar = x.kappaComponent(0);
    if (scalar.size() != 1)
        throw AlgebraError("inverseUnit: kappa^0 component is not a scalar multiple of 1");
    for (int l = 0; l < L; ++l)
        if (!scalar.terms().begin()->first.legs[l].isUnit())
            throw AlgebraError("inverseUnit: kappa^0 component is not a scalar multiple of 1");
    GaussianRational c = scalar.terms().begin()->second;
    GaussianRational cInv = c.inverse();
    Series<L> dev = x;
    dev.addTerm(TermKey<L>{}, -c);
    return inv1pSeries(dev.scaled(cInv)).scaled(cInv);
}

template <int L>
Series<L> sqrtUnit(const Series<L>& x) {
    Series<L> dev = x;
    dev.addTerm(TermKey<L>{}, -GaussianRational::unit());
    return sqrt1pSeries(dev);  // throws unless x = 1 + (kappa >= 1 terms)
}

template Series<1> analytic(AnalyticKind, const Series<1>&);
template Series<2> analytic(AnalyticKind, const Series<2>&);
template Series<3> analytic(AnalyticKind, const Series<3>&);
template Series<1> inverseUnit(const Series<1>&);
template Series<2> inverseUnit(const Series<2>&);
template Series<3> inverseUnit(const Series<3>&);
template Series<1> sqrtUnit(const Series<1>&);
template Series<2> sqrtUnit(const Series<2>&);
template Series<3> sqrtUnit(const Series<3>&);

}  // namespace jtwist
