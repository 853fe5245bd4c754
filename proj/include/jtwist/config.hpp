#pragma once

#include <vector>

#include "jtwist/rational.hpp"

namespace jtwist {

/// Hard cap on the spacetime dimension supported by the packed monomial keys.
inline constexpr int kMaxDim = 4;

/// Shared context for the graded series algebra: dimension, truncation order,
/// the fixed direction vector v, and the metric signature diagonal used only
/// to classify v^2.
struct Config {
    int dim = 2;                       // number of momentum components n, 1..kMaxDim
    int order = 6;                     // truncation order N >= 1 in powers of 1/kappa
    std::vector<Rational> v;           // n upper components v^mu
    std::vector<int> metric;           // signature diagonal, entries +1/-1; default (-1,+1,...)

    Config() : v{Rational(1), Rational(0)}, metric{-1, 1} {}
    Config(int n, int N) : dim(n), order(N) {
        v.assign(n, Rational(0));
        if (n > 0) v[0] = 1;
        metric.assign(n, 1);
        if (n > 0) metric[0] = -1;
    }
    Config(int n, int N, std::vector<Rational> vIn) : Config(n, N) { v = std::move(vIn); }

    /// v^2 = eta_{mu nu} v^mu v^nu; the engine requires it to be -1, 0 or +1.
    Rational vSquared() const;

    /// Throws std::invalid_argument when dim/order/v/metric are inconsistent.
    void validate() const;

    Config withOrder(int N) const {
        Config c = *this;
        c.order = N;
        return c;
    }
};

}  // namespace jtwist
