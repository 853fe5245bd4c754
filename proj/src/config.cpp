#include "jtwist/config.hpp"

#include <cstdlib>

namespace jtwist {

Rational Config::vSquared() const {
    Rational s(0);
    for (int mu = 0; mu < dim; ++mu) s += Rational(metric[mu]) * v[mu] * v[mu];
    return s;
}

void Config::validate() const {
    if (dim < 1 || dim > kMaxDim)
        throw std::invalid_argument("Config.dim must be in [1, " + std::to_string(kMaxDim) + "]");
    if (order < 1) throw std::invalid_argument("Config.order must be >= 1");
    if (static_cast<int>(v.size()) != dim)
        throw std::invalid_argument("Config.v must have dim components");
    if (static_cast<int>(metric.size()) != dim)
        throw std::invalid_argument("Config.metric must have dim entries");
    for (int e : metric)
        if (e != 1 && e != -1) throw std::invalid_argument("Config.metric entries must be +1 or -1");
    Rational v2 = vSquared();
    if (!(v2 == -1 || v2 == 0 || v2 == 1))
        throw std::invalid_argument("Config.v must satisfy v^2 in {-1, 0, +1}, got " + toString(v2));
}

}  // namespace jtwist
