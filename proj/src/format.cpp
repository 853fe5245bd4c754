#include "jtwist/format.hpp"

namespace jtwist {

namespace {

std::string renderMono(const Mono& m, int dim) {
    if (m.isUnit()) return "1";
    std::string out;
    auto app = [&out](const std::string& s) {
        if (!out.empty()) out += " ";
        out += s;
    };
    for (int mu = 0; mu < dim; ++mu) {
        if (m.p[mu] == 0) continue;
        std::string name = (dim == 1) ? "P" : "P" + std::to_string(mu);
        app(m.p[mu] == 1 ? name : name + "^" + std::to_string(m.p[mu]));
    }
    if (m.d > 0) app(m.d == 1 ? "D" : "D^" + std::to_string(m.d));
    return out;
}

}  // namespace

template <int L>
std::string renderSeries(const Series<L>& s, bool multiline) {
    if (s.isZero()) return "0";
    std::string out;
    const char* sep = multiline ? "\n" : " + ";
    for (const auto& [k, c] : s.terms()) {
        std::string term;
        std::string legs;
        bool allUnit = true;
        for (int l = 0; l < L; ++l) {
            if (l > 0) legs += " ⊗ ";
            legs += renderMono(k.legs[l], s.dim());
            if (!k.legs[l].isUnit()) allUnit = false;
        }
        std::string coeff = c.str();
        bool needParens = coeff.find('+') != std::string::npos ||
                          (coeff.rfind('-') != std::string::npos && coeff.rfind('-') > 0);
        if (needParens) coeff = "(" + coeff + ")";
        bool hasFactors = k.kappa > 0 || !allUnit;
        if (!hasFactors) {
            term = coeff;
        } else {
            if (coeff != "1") term = coeff + " * ";
            if (k.kappa > 0) term += "kappa^-" + std::to_string(k.kappa) + " * ";
            term += legs;
        }
        if (!out.empty()) out += sep;
        out += term;
    }
    return out;
}

template std::string renderSeries(const Series<1>&, bool);
template std::string renderSeries(const Series<2>&, bool);
template std::string renderSeries(const Series<3>&, bool);

}  // namespace jtwist
