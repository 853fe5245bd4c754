#pragma once

#include <string>

#include "jtwist/series.hpp"

namespace jtwist {

/// Canonical text form, one term per line, terms in (kappa power, lexicographic
/// monomial) order. Examples: "1", "-1/2 * kappa^-2 * P0^2 D (x) D^2",
/// "(1/2+1/3i) * P1". A zero series renders as "0".
template <int L>
std::string renderSeries(const Series<L>& s, bool multiline = true);

extern template std::string renderSeries(const Series<1>&, bool);
extern template std::string renderSeries(const Series<2>&, bool);
extern template std::string renderSeries(const Series<3>&, bool);

}  // namespace jtwist
