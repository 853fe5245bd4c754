// jtwist: command-line front end over the exact twist engine and its numeric
// verification layer. Subcommands:
//   verify     run check suites over a (family, u) grid and emit a report
//   expand     print a twist / coproduct / antipode / R-matrix series
//   star       evaluate the plane-wave product kernel at one point
//   ode-check  compare the closed-form flow maps against the RK4 oracle
//
// Exit codes: 0 every selected check passed, 1 at least one check failed (or a
// numeric evaluation left its domain), 2 usage error. Reports are byte-stable
// for a fixed seed and configuration; check rows are sorted by
// (check, family, u, order) before printing.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "jtwist/checks.hpp"
#include "jtwist/format.hpp"
#include "jtwist/ordexp.hpp"
#include "jtwist/report.hpp"
#include "jtwist/star.hpp"
#include "jtwist/twist.hpp"
#include "jtwist/weyl.hpp"

namespace {

using namespace jtwist;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// parsing helpers

std::vector<std::string> splitCommas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string trimmed(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

// Accepts "a/b", plain integers, and finite decimals ("0.25" -> 1/4); decimals
// are converted exactly, never through a double.
Rational parseExact(const std::string& raw) {
    std::string s = trimmed(raw);
    if (s.empty()) throw UsageError("empty rational value");
    std::size_t dot = s.find('.');
    if (dot == std::string::npos) {
        try {
            return parseRational(s);
        } catch (const std::exception& e) {
            throw UsageError("cannot parse rational '" + s + "': " + e.what());
        }
    }
    bool neg = false;
    std::string body = s;
    if (body[0] == '+' || body[0] == '-') {
        neg = (body[0] == '-');
        body = body.substr(1);
        dot -= 1;
    }
    std::string intPart = body.substr(0, dot);
    std::string fracPart = body.substr(dot + 1);
    if (intPart.empty()) intPart = "0";
    if (fracPart.empty()) fracPart = "0";
    for (char c : intPart + fracPart)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw UsageError("cannot parse decimal '" + s + "'");
    mpz_class den = 1;
    for (std::size_t i = 0; i < fracPart.size(); ++i) den *= 10;
    mpz_class num = mpz_class(intPart) * den + mpz_class(fracPart);
    if (neg) num = -num;
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::vector<Rational> parseExactList(const std::vector<std::string>& raw) {
    std::vector<Rational> out;
    for (const auto& chunk : raw)
        for (const auto& tok : splitCommas(chunk)) out.push_back(parseExact(tok));
    return out;
}

std::vector<double> parseDoubleList(const std::string& raw, const char* what) {
    std::vector<double> out;
    for (const auto& tok : splitCommas(raw)) {
        try {
            std::size_t used = 0;
            double x = std::stod(trimmed(tok), &used);
            if (used != trimmed(tok).size()) throw std::invalid_argument("trailing characters");
            out.push_back(x);
        } catch (const std::exception&) {
            throw UsageError(std::string("cannot parse ") + what + " component '" + tok + "'");
        }
    }
    return out;
}

Family parseFamilyToken(const std::string& raw) {
    std::string s = trimmed(raw);
    if (s == "FL") return Family::L;
    if (s == "FR") return Family::R;
    if (s == "FLR") return Family::LR;
    try {
        return parseFamily(s);
    } catch (const std::exception&) {
        throw UsageError("unknown family '" + s + "' (expected F0, F1, L, R or LR)");
    }
}

bool isInterpolating(Family f) {
    return f == Family::L || f == Family::R || f == Family::LR;
}

// F0/F1 carry a fixed interpolation parameter; collapse the u grid for them.
Rational effectiveU(Family f, const Rational& u) {
    if (f == Family::F0) return Rational(0);
    if (f == Family::F1) return Rational(1);
    return u;
}

std::vector<Rational> dedupe(const std::vector<Rational>& us) {
    std::vector<Rational> out;
    for (const auto& u : us)
        if (std::find(out.begin(), out.end(), u) == out.end()) out.push_back(u);
    return out;
}

// ---------------------------------------------------------------------------
// verify machinery

struct VerifyOptions {
    Config cfg;  // dim, order, v
    int tripleOrder = 4;
    std::vector<Family> families;
    std::vector<Rational> us;
    double kappa = 1.0;
    std::uint64_t seed = 42;
    int samples = 100;
    double tol = 1e-9;
    std::vector<std::string> checks;  // empty -> default suite
};

class TwistCache {
  public:
    explicit TwistCache(const Config& cfg) : cfg_(cfg) {}

    const Twist& get(Family f, const Rational& u) {
        Rational eff = effectiveU(f, u);
        auto key = std::make_pair(f, toString(eff));
        auto it = cache_.find(key);
        if (it == cache_.end()) it = cache_.emplace(key, buildTwist(f, eff, cfg_)).first;
        return it->second;
    }

  private:
    Config cfg_;
    std::map<std::pair<Family, std::string>, Twist> cache_;
};

// Wrap a raw identity check whose violation is the expected outcome: the
// wrapper passes exactly when the raw check fails with a definite residual
// order, and keeps that order in the report.
CheckReport expectViolation(const std::string& name, CheckReport raw) {
    CheckReport r = std::move(raw);
    r.check = name;
    bool violated = !r.pass && r.firstResidualOrder.has_value();
    r.pass = violated;
    r.detail = violated ? "expected violation confirmed; first residual at kappa^-" +
                              std::to_string(*r.firstResidualOrder)
                        : "expected a nonzero residual but the identity held";
    return r;
}

// Run one check, converting any engine exception into a failed report rather
// than aborting the whole suite.
template <typename Fn>
void runOne(std::vector<CheckReport>& out, const std::string& name, const std::string& family,
            const std::string& u, int order, Fn&& fn) {
    try {
        out.push_back(fn());
    } catch (const std::exception& e) {
        CheckReport r;
        r.check = name;
        r.family = family;
        r.u = u;
        r.order = order;
        r.pass = false;
        r.detail = std::string("error: ") + e.what();
        out.push_back(std::move(r));
    }
}

template <typename Fn>
void runMany(std::vector<CheckReport>& out, const std::string& name, const std::string& family,
             const std::string& u, int order, Fn&& fn) {
    try {
        for (auto& r : fn()) out.push_back(std::move(r));
    } catch (const std::exception& e) {
        CheckReport r;
        r.check = name;
        r.family = family;
        r.u = u;
        r.order = order;
        r.pass = false;
        r.detail = std::string("error: ") + e.what();
        out.push_back(std::move(r));
    }
}

constexpr int kProp1Order = 8;  // k-degree cap for the one-dimensional identity
constexpr int kProp2Order = 5;  // k-degree cap for the family realizations

// Named star-product property rows produced by checkStarProperties.
const std::vector<std::string>& starPropertyNames() {
    static const std::vector<std::string> names = {
        "star_associativity", "star_cocycle", "star_unitality", "star_momentum_map",
        "star_phase_map"};
    return names;
}

// The per-(family, u) exact checks that take the cached twist directly.
void runTwistChecks(std::vector<CheckReport>& out, const VerifyOptions& o, const Twist& t) {
    const std::string fam = familyName(t.family);
    const std::string us = toString(t.u);
    const int N = o.cfg.order;
    runOne(out, "normalization", fam, us, N, [&] { return hopf::checkNormalization(t); });
    runOne(out, "cocycle", fam, us, N, [&] { return hopf::checkCocycle(t, o.tripleOrder); });
    runOne(out, "hopf_closed_forms", fam, us, N, [&] { return hopf::checkHopfClosedForms(t); });
    runOne(out, "coassociativity", fam, us, N,
           [&] { return hopf::checkCoassociativity(t, o.tripleOrder); });
    runOne(out, "counit_axiom", fam, us, N, [&] { return hopf::checkCounitAxiom(t); });
    runOne(out, "antipode_axiom", fam, us, N, [&] { return hopf::checkAntipodeAxiom(t); });
    runOne(out, "qybe", fam, us, N, [&] { return hopf::checkQYBE(t, o.tripleOrder); });
    runOne(out, "classical_r", fam, us, N, [&] { return hopf::checkClassicalR(t); });
    runOne(out, "r_symmetry", fam, us, N, [&] { return hopf::checkRSymmetry(t); });
    runOne(out, "realization", fam, us, N, [&] { return weyl::checkRealization(t); });
}

// Default suite: assert every identity exactly where the theory predicts it
// holds, and assert the *violation* (with a definite residual order) where the
// theory predicts it breaks. Raw per-check runs are available via --checks.
std::vector<CheckReport> runDefaultSuite(const VerifyOptions& o) {
    std::vector<CheckReport> out;
    TwistCache cache(o.cfg);
    const std::vector<Rational> us = dedupe(o.us);
    const Rational half(1, 2);

    bool anyInterp = false;
    for (Family f : o.families) anyInterp = anyInterp || isInterpolating(f);

    // Configuration-level checks (family- and u-independent).
    runOne(out, "cybe", "", "", o.cfg.order, [&] { return hopf::checkCYBE(o.cfg); });
    runOne(out, "star_amplitude", "", "", 0, [&] { return star::checkAmplitudePin(); });

    // Per-u checks that compare the interpolating families against each other.
    for (const Rational& u : us) {
        const std::string ustr = toString(u);
        if (anyInterp) {
            runOne(out, "family_relation", "", ustr, o.cfg.order,
                   [&] { return hopf::checkFamilyRelation(u, o.cfg); });
            runOne(out, "exp_identity", "", ustr, o.cfg.order,
                   [&] { return hopf::checkExponentialIdentity(u, o.cfg); });
            runOne(out, "rmatrix_relation", "", ustr, o.cfg.order,
                   [&] { return hopf::checkRRelations(u, o.cfg); });
            runOne(out, "delta_inequality", "", ustr, o.cfg.order,
                   [&] { return hopf::checkDeltaInequality(u, o.cfg); });
            runOne(out, "chi_difference", "", ustr, o.cfg.order,
                   [&] { return weyl::checkChiDifference(u, o.cfg); });
            runOne(out, "star_exchange", "", ustr, o.cfg.order,
                   [&] { return hopf::checkStarExchange(u, o.cfg); });
            runOne(out, "star_coproduct", "", ustr, o.cfg.order,
                   [&] { return hopf::checkStarCoproduct(u, o.cfg); });
            runOne(out, "star_antipode", "", ustr, o.cfg.order,
                   [&] { return hopf::checkStarAntipode(u, o.cfg); });
        }
        runOne(out, "ode_oracle", "", ustr, 0, [&] {
            return star::checkOdeOracle(o.cfg, u, o.kappa, o.seed, o.samples, o.tol);
        });
        runOne(out, "proposition1", "", ustr, kProp1Order, [&] {
            CheckReport r = ordexp::checkProposition1(ordexp::interpolationPhi(u), kProp1Order,
                                                      "(1 + u p)(1 - (1-u) p)");
            r.u = ustr;
            return r;
        });
    }

    // Per-family and per-(family, u) checks.
    for (Family f : o.families) {
        const std::string fam = familyName(f);
        const std::vector<Rational> grid =
            isInterpolating(f) ? us : std::vector<Rational>{effectiveU(f, Rational(0))};

        if (isInterpolating(f)) {
            runOne(out, "reduction", fam, "", o.cfg.order,
                   [&] { return hopf::checkReduction(f, o.cfg); });
        }

        for (const Rational& u : grid) {
            const Rational eff = effectiveU(f, u);
            const std::string ustr = toString(eff);
            const Twist& t = cache.get(f, eff);
            runTwistChecks(out, o, t);

            if (isInterpolating(f)) {
                runOne(out, "coboundary_path", fam, ustr, o.cfg.order,
                       [&] { return hopf::checkCoboundaryPath(f, eff, o.cfg); });
                runOne(out, "gauge_equivalence", fam, ustr, o.cfg.order,
                       [&] { return hopf::checkGaugeEquivalence(f, eff, o.cfg); });
            }

            // Majid's real-form condition holds exactly at u = 1/2 and is
            // violated (first residual at kappa^-1) everywhere else.
            if (eff == half) {
                runOne(out, "majid", fam, ustr, o.cfg.order, [&] { return hopf::checkMajid(t); });
            } else {
                runOne(out, "majid_violation", fam, ustr, o.cfg.order,
                       [&] { return expectViolation("majid_violation", hopf::checkMajid(t)); });
            }

            // Unitarity (and its generator-wise dagger variant) holds for
            // F0, F1 and the symmetric family, and for L/R at the endpoints.
            const bool unitary = (f == Family::F0 || f == Family::F1 || f == Family::LR ||
                                  eff == 0 || eff == 1);
            if (unitary) {
                runOne(out, "star_unitarity", fam, ustr, o.cfg.order,
                       [&] { return hopf::checkUnitarity(t); });
                runOne(out, "dagger", fam, ustr, o.cfg.order, [&] { return hopf::checkDagger(t); });
            } else {
                runOne(out, "star_unitarity_violation", fam, ustr, o.cfg.order, [&] {
                    return expectViolation("star_unitarity_violation", hopf::checkUnitarity(t));
                });
                runOne(out, "dagger_violation", fam, ustr, o.cfg.order,
                       [&] { return expectViolation("dagger_violation", hopf::checkDagger(t)); });
            }

            runOne(out, "weyl_commutators", fam, ustr, o.cfg.order,
                   [&] { return weyl::checkCommutators(f, eff, o.cfg); });
            runOne(out, "weyl_jacobi", fam, ustr, o.cfg.order,
                   [&] { return weyl::checkJacobi(f, eff, o.cfg); });

            runMany(out, "star_properties", fam, ustr, 0, [&] {
                return star::checkStarProperties(o.cfg, eff, o.kappa, f, o.seed, o.samples, o.tol);
            });

            if (o.cfg.dim <= 3) {
                runOne(out, "proposition2", fam, ustr, kProp2Order, [&] {
                    return ordexp::checkProposition2Family(f, eff, o.cfg, o.kappa, kProp2Order);
                });
            }

            if (f == Family::L || f == Family::R) {
                runOne(out, "coproduct_consistency", fam, ustr, o.cfg.order, [&] {
                    return star::coproductConsistency(f, eff, o.cfg, o.kappa);
                });
            }
        }
    }
    return out;
}

enum class CheckKind { Once, PerU, PerFamily, PerFamilyU, PerInterpFamilyU };

const std::map<std::string, CheckKind>& checkRegistry() {
    static const std::map<std::string, CheckKind> reg = {
        {"cybe", CheckKind::Once},
        {"star_amplitude", CheckKind::Once},
        {"family_relation", CheckKind::PerU},
        {"exp_identity", CheckKind::PerU},
        {"rmatrix_relation", CheckKind::PerU},
        {"delta_inequality", CheckKind::PerU},
        {"chi_difference", CheckKind::PerU},
        {"star_exchange", CheckKind::PerU},
        {"star_coproduct", CheckKind::PerU},
        {"star_antipode", CheckKind::PerU},
        {"ode_oracle", CheckKind::PerU},
        {"proposition1", CheckKind::PerU},
        {"reduction", CheckKind::PerFamily},
        {"coboundary_path", CheckKind::PerInterpFamilyU},
        {"gauge_equivalence", CheckKind::PerInterpFamilyU},
        {"normalization", CheckKind::PerFamilyU},
        {"cocycle", CheckKind::PerFamilyU},
        {"hopf_closed_forms", CheckKind::PerFamilyU},
        {"coassociativity", CheckKind::PerFamilyU},
        {"counit_axiom", CheckKind::PerFamilyU},
        {"antipode_axiom", CheckKind::PerFamilyU},
        {"qybe", CheckKind::PerFamilyU},
        {"classical_r", CheckKind::PerFamilyU},
        {"r_symmetry", CheckKind::PerFamilyU},
        {"majid", CheckKind::PerFamilyU},
        {"majid_violation", CheckKind::PerFamilyU},
        {"dagger", CheckKind::PerFamilyU},
        {"dagger_violation", CheckKind::PerFamilyU},
        {"star_unitarity", CheckKind::PerFamilyU},
        {"star_unitarity_violation", CheckKind::PerFamilyU},
        {"realization", CheckKind::PerFamilyU},
        {"weyl_commutators", CheckKind::PerFamilyU},
        {"weyl_jacobi", CheckKind::PerFamilyU},
        {"proposition2", CheckKind::PerFamilyU},
        {"coproduct_consistency", CheckKind::PerFamilyU},
        {"star_associativity", CheckKind::PerFamilyU},
        {"star_cocycle", CheckKind::PerFamilyU},
        {"star_unitality", CheckKind::PerFamilyU},
        {"star_momentum_map", CheckKind::PerFamilyU},
        {"star_phase_map", CheckKind::PerFamilyU},
    };
    return reg;
}

std::string knownCheckNames() {
    std::string s;
    for (const auto& [name, kind] : checkRegistry()) {
        (void)kind;
        if (!s.empty()) s += ", ";
        s += name;
    }
    return s;
}

// (family, effective u) grid with the F0/F1 rows collapsed and deduplicated.
std::vector<std::pair<Family, Rational>> familyUGrid(const VerifyOptions& o, bool interpOnly) {
    std::vector<std::pair<Family, Rational>> grid;
    auto push = [&grid](Family f, const Rational& u) {
        for (const auto& [gf, gu] : grid)
            if (gf == f && gu == u) return;
        grid.emplace_back(f, u);
    };
    for (Family f : o.families) {
        if (interpOnly && !isInterpolating(f)) continue;
        if (isInterpolating(f)) {
            for (const Rational& u : dedupe(o.us)) push(f, u);
        } else {
            push(f, effectiveU(f, Rational(0)));
        }
    }
    return grid;
}

// Raw semantics: run exactly the named checks over the configured grid, no
// expectation wrappers; the exit code reflects the raw results.
std::vector<CheckReport> runRawChecks(const VerifyOptions& o) {
    std::vector<CheckReport> out;
    TwistCache cache(o.cfg);
    const auto& reg = checkRegistry();

    std::vector<std::string> names;
    for (const auto& chunk : o.checks)
        for (const auto& tok : splitCommas(chunk)) {
            std::string name = trimmed(tok);
            if (name.empty()) continue;
            if (!reg.count(name))
                throw UsageError("unknown check '" + name + "'; known checks: " +
                                 knownCheckNames());
            if (std::find(names.begin(), names.end(), name) == names.end())
                names.push_back(name);
        }
    if (names.empty()) throw UsageError("--checks given but no check names supplied");

    // The five star-product property rows come from a single sampler run; group
    // the requested ones so each (family, u) point samples once.
    std::vector<std::string> wantedStarProps;
    for (const auto& n : starPropertyNames())
        if (std::find(names.begin(), names.end(), n) != names.end()) wantedStarProps.push_back(n);

    const std::vector<Rational> us = dedupe(o.us);

    for (const auto& name : names) {
        const CheckKind kind = reg.at(name);
        if (kind == CheckKind::Once) {
            if (name == "cybe")
                runOne(out, name, "", "", o.cfg.order, [&] { return hopf::checkCYBE(o.cfg); });
            else
                runOne(out, name, "", "", 0, [&] { return star::checkAmplitudePin(); });
            continue;
        }
        if (kind == CheckKind::PerU) {
            for (const Rational& u : us) {
                const std::string ustr = toString(u);
                if (name == "family_relation")
                    runOne(out, name, "", ustr, o.cfg.order,
                           [&] { return hopf::checkFamilyRelation(u, o.cfg); });
                else if (name == "exp_identity")
                    runOne(out, name, "", ustr, o.cfg.order,
                           [&] { return hopf::checkExponentialIdentity(u, o.cfg); });
                else if (name == "rmatrix_relation")
                    runOne(out, name, "", ustr, o.cfg.order,
                           [&] { return hopf::checkRRelations(u, o.cfg); });
                else if (name == "delta_inequality")
                    runOne(out, name, "", ustr, o.cfg.order,
                           [&] { return hopf::checkDeltaInequality(u, o.cfg); });
                else if (name == "chi_difference")
                    runOne(out, name, "", ustr, o.cfg.order,
                           [&] { return weyl::checkChiDifference(u, o.cfg); });
                else if (name == "star_exchange")
                    runOne(out, name, "", ustr, o.cfg.order,
                           [&] { return hopf::checkStarExchange(u, o.cfg); });
                else if (name == "star_coproduct")
                    runOne(out, name, "", ustr, o.cfg.order,
                           [&] { return hopf::checkStarCoproduct(u, o.cfg); });
                else if (name == "star_antipode")
                    runOne(out, name, "", ustr, o.cfg.order,
                           [&] { return hopf::checkStarAntipode(u, o.cfg); });
                else if (name == "ode_oracle")
                    runOne(out, name, "", ustr, 0, [&] {
                        return star::checkOdeOracle(o.cfg, u, o.kappa, o.seed, o.samples, o.tol);
                    });
                else
                    runOne(out, name, "", ustr, kProp1Order, [&] {
                        CheckReport r = ordexp::checkProposition1(
                            ordexp::interpolationPhi(u), kProp1Order, "(1 + u p)(1 - (1-u) p)");
                        r.u = ustr;
                        return r;
                    });
            }
            continue;
        }
        if (kind == CheckKind::PerFamily) {
            bool any = false;
            for (Family f : o.families) {
                if (!isInterpolating(f)) continue;
                any = true;
                runOne(out, name, familyName(f), "", o.cfg.order,
                       [&] { return hopf::checkReduction(f, o.cfg); });
            }
            if (!any)
                throw UsageError("check '" + name + "' applies only to families L, R, LR");
            continue;
        }

        // PerFamilyU / PerInterpFamilyU
        const bool interpOnly = (kind == CheckKind::PerInterpFamilyU);
        if (std::find(wantedStarProps.begin(), wantedStarProps.end(), name) !=
                wantedStarProps.end() &&
            name != wantedStarProps.front())
            continue;  // sibling star rows are produced with the first one
        auto grid = familyUGrid(o, interpOnly);
        if (grid.empty())
            throw UsageError("check '" + name + "' applies only to families L, R, LR");
        if (name == "proposition2" && o.cfg.dim > 3)
            throw UsageError("check 'proposition2' requires --dim <= 3");

        for (const auto& [f, u] : grid) {
            const std::string fam = familyName(f);
            const std::string ustr = toString(u);
            const int N = o.cfg.order;
            if (name == "coboundary_path")
                runOne(out, name, fam, ustr, N,
                       [&, f = f, u = u] { return hopf::checkCoboundaryPath(f, u, o.cfg); });
            else if (name == "gauge_equivalence")
                runOne(out, name, fam, ustr, N,
                       [&, f = f, u = u] { return hopf::checkGaugeEquivalence(f, u, o.cfg); });
            else if (name == "normalization")
                runOne(out, name, fam, ustr, N,
                       [&, f = f, u = u] { return hopf::checkNormalization(cache.get(f, u)); });
            else if (name == "cocycle")
                runOne(out, name, fam, ustr, N, [&, f = f, u = u] {
                    return hopf::checkCocycle(cache.get(f, u), o.tripleOrder);
                });
            else if (name == "hopf_closed_forms")
                runOne(out, name, fam, ustr, N,
                       [&, f = f, u = u] { return hopf::checkHopfClosedForms(cache.get(f, u)); });
            else if (name == "coassociativity")
                runOne(out, name, fam, ustr, N, [&, f = f, u = u] {
                    return hopf::checkCoassociativity(cache.get(f, u), o.tripleOrder);
                });
            else if (name == "counit_axiom")
                runOne(out, name, fam, ustr, N,
                       [&, f = f, u = u] { return hopf::checkCounitAxiom(cache.get(f, u)); });
            else if (name == "antipode_axiom")
                runOne(out, name, fam, ustr, N,
                       [&, f = f, u = u] { return hopf::checkAntipodeAxiom(cache.get(f, u)); });
            else if (name == "qybe")
                runOne(out, name, fam, ustr, N, [&, f = f, u = u] {
                    return hopf::checkQYBE(cache.get(f, u), o.tripleOrder);
                });
            else if (name == "classical_r")
                runOne(out, name, fam, ustr, N,
                       [&, f = f, u = u] { return hopf::checkClassicalR(cache.get(f, u)); });
            else if (name == "r_symmetry")
                runOne(out, name, fam, ustr, N,
                       [&, f = f, u = u] { return hopf::checkRSymmetry(cache.get(f, u)); });
            else if (name == "majid")
                runOne(out, name, fam, ustr, N,
                       [&, f = f, u = u] { return hopf::checkMajid(cache.get(f, u)); });
            else if (name == "majid_violation")
                runOne(out, name, fam, ustr, N, [&, f = f, u = u] {
                    return expectViolation("majid_violation", hopf::checkMajid(cache.get(f, u)));
                });
            else if (name == "dagger")
                runOne(out, name, fam, ustr, N,
                       [&, f = f, u = u] { return hopf::checkDagger(cache.get(f, u)); });
            else if (name == "dagger_violation")
                runOne(out, name, fam, ustr, N, [&, f = f, u = u] {
                    return expectViolation("dagger_violation", hopf::checkDagger(cache.get(f, u)));
                });
            else if (name == "star_unitarity")
                runOne(out, name, fam, ustr, N,
                       [&, f = f, u = u] { return hopf::checkUnitarity(cache.get(f, u)); });
            else if (name == "star_unitarity_violation")
                runOne(out, name, fam, ustr, N, [&, f = f, u = u] {
                    return expectViolation("star_unitarity_violation",
                                           hopf::checkUnitarity(cache.get(f, u)));
                });
            else if (name == "realization")
                runOne(out, name, fam, ustr, N,
                       [&, f = f, u = u] { return weyl::checkRealization(cache.get(f, u)); });
            else if (name == "weyl_commutators")
                runOne(out, name, fam, ustr, N,
                       [&, f = f, u = u] { return weyl::checkCommutators(f, u, o.cfg); });
            else if (name == "weyl_jacobi")
                runOne(out, name, fam, ustr, N,
                       [&, f = f, u = u] { return weyl::checkJacobi(f, u, o.cfg); });
            else if (name == "proposition2")
                runOne(out, name, fam, ustr, kProp2Order, [&, f = f, u = u] {
                    return ordexp::checkProposition2Family(f, u, o.cfg, o.kappa, kProp2Order);
                });
            else if (name == "coproduct_consistency")
                runOne(out, name, fam, ustr, o.cfg.order, [&, f = f, u = u] {
                    return star::coproductConsistency(f, u, o.cfg, o.kappa);
                });
            else {  // grouped star-product property rows
                runMany(out, name, fam, ustr, 0, [&, f = f, u = u] {
                    auto rows =
                        star::checkStarProperties(o.cfg, u, o.kappa, f, o.seed, o.samples, o.tol);
                    std::vector<CheckReport> keep;
                    for (auto& r : rows)
                        if (std::find(wantedStarProps.begin(), wantedStarProps.end(), r.check) !=
                            wantedStarProps.end())
                            keep.push_back(std::move(r));
                    return keep;
                });
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// output

int emitReports(std::vector<CheckReport> reports, const std::string& format,
                const std::string& reportPath) {
    sortReports(reports);
    std::size_t passed = 0;
    for (const auto& r : reports)
        if (r.pass) ++passed;
    const std::size_t failed = reports.size() - passed;

    if (format == "json") {
        std::cout << toJson(reports, true) << "\n";
    } else {
        for (const auto& r : reports) std::cout << toLine(r) << "\n";
        std::cout << reports.size() << " checks: " << passed << " passed, " << failed
                  << " failed\n";
    }
    if (!reportPath.empty()) {
        std::ofstream os(reportPath);
        if (!os) throw UsageError("cannot open report file '" + reportPath + "'");
        os << toJson(reports, true) << "\n";
    }
    return failed == 0 ? 0 : 1;
}

std::string fmtDouble(double x) { return nlohmann::json(x).dump(); }

// ---------------------------------------------------------------------------
// subcommand option bags

struct CommonArgs {
    int dim = 2;
    int order = 6;
    int tripleOrder = 4;
    std::vector<std::string> uRaw;
    std::vector<std::string> familyRaw;
    double kappa = 1.0;
    std::string vRaw;
    std::uint64_t seed = 42;
    int samples = 100;
    double tol = 1e-9;
    std::vector<std::string> checksRaw;
    std::string reportPath;
    std::string format = "text";
};

void guardDimOrder(int dim, int order, int minOrder) {
    if (dim < 1 || dim > kMaxDim)
        throw UsageError("--dim must be between 1 and " + std::to_string(kMaxDim));
    if (order < minOrder)
        throw UsageError("--order must be >= " + std::to_string(minOrder));
}

Config makeConfig(const CommonArgs& a) {
    guardDimOrder(a.dim, a.order, 1);
    try {
        Config cfg = a.vRaw.empty()
                         ? Config(a.dim, a.order)
                         : Config(a.dim, a.order, parseExactList({a.vRaw}));
        cfg.validate();
        return cfg;
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

VerifyOptions makeVerifyOptions(const CommonArgs& a) {
    VerifyOptions o;
    o.cfg = makeConfig(a);
    if (a.tripleOrder < 1) throw UsageError("--triple-order must be >= 1");
    if (a.samples < 1) throw UsageError("--samples must be >= 1");
    if (!(a.tol > 0)) throw UsageError("--tol must be > 0");
    if (!(a.kappa > 0)) throw UsageError("--kappa must be > 0");
    o.tripleOrder = a.tripleOrder;
    o.kappa = a.kappa;
    o.seed = a.seed;
    o.samples = a.samples;
    o.tol = a.tol;
    o.checks = a.checksRaw;
    if (a.familyRaw.empty()) {
        o.families = {Family::F0, Family::F1, Family::L, Family::R, Family::LR};
    } else {
        for (const auto& chunk : a.familyRaw)
            for (const auto& tok : splitCommas(chunk)) {
                Family f = parseFamilyToken(tok);
                if (std::find(o.families.begin(), o.families.end(), f) == o.families.end())
                    o.families.push_back(f);
            }
    }
    if (a.uRaw.empty()) {
        o.us = {Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1),
                Rational(2)};
    } else {
        o.us = parseExactList(a.uRaw);
    }
    return o;
}

// ---------------------------------------------------------------------------
// expand

UTensor expandSeriesFor(const std::string& expr, Family fam, const Rational& u,
                        const Config& cfg, bool* isTensor, UElement* element) {
    *isTensor = true;
    const Config buildCfg = cfg.order >= 1 ? cfg : cfg.withOrder(1);
    if (expr == "F0" || expr == "F1" || expr == "FL" || expr == "FR" || expr == "FLR") {
        Family f = expr == "F0"   ? Family::F0
                   : expr == "F1" ? Family::F1
                   : expr == "FL" ? Family::L
                   : expr == "FR" ? Family::R
                                  : Family::LR;
        return buildTwist(f, u, buildCfg).F.truncatedTo(cfg.order);
    }
    if (expr == "rmatrix") {
        Twist t = buildTwist(fam, u, buildCfg);
        return rMatrix(t).matrix.truncatedTo(cfg.order);
    }
    auto colon = expr.find(':');
    if (colon != std::string::npos) {
        const std::string head = expr.substr(0, colon);
        const std::string gen = expr.substr(colon + 1);
        UElement z = unitElement(buildCfg);
        if (gen == "D") {
            z = makeD(buildCfg);
        } else if (gen.size() >= 2 && gen[0] == 'P') {
            int mu = -1;
            try {
                mu = std::stoi(gen.substr(1));
            } catch (const std::exception&) {
            }
            if (mu < 0 || mu >= buildCfg.dim)
                throw UsageError("unknown generator '" + gen + "' (expected P0..P" +
                                 std::to_string(buildCfg.dim - 1) + " or D)");
            z = makeP(buildCfg, mu);
        } else {
            throw UsageError("unknown generator '" + gen + "' (expected P0..P" +
                             std::to_string(buildCfg.dim - 1) + " or D)");
        }
        Twist t = buildTwist(fam, u, buildCfg);
        if (head == "coproduct") return hopf::twistedCoproduct(t, z).truncatedTo(cfg.order);
        if (head == "antipode") {
            *isTensor = false;
            *element = hopf::twistedAntipode(t, z).truncatedTo(cfg.order);
            return unitTensor(buildCfg);
        }
        throw UsageError("unknown expression '" + expr + "'");
    }
    throw UsageError("unknown expression '" + expr +
                     "' (expected F0, F1, FL, FR, FLR, rmatrix, coproduct:<gen> or "
                     "antipode:<gen>)");
}

int cmdExpand(const CommonArgs& a, const std::string& expr) {
    guardDimOrder(a.dim, a.order, 0);
    Config cfg = [&] {
        try {
            Config c = a.vRaw.empty()
                           ? Config(a.dim, std::max(1, a.order))
                           : Config(a.dim, std::max(1, a.order), parseExactList({a.vRaw}));
            c.validate();
            c.order = a.order;  // may be 0 for display truncation
            return c;
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }();
    Rational u = a.uRaw.empty() ? Rational(1, 2) : parseExactList(a.uRaw).front();
    Family fam = a.familyRaw.empty() ? Family::R : parseFamilyToken(a.familyRaw.front());
    bool isTensor = true;
    UElement element = unitElement(cfg.order >= 1 ? cfg : cfg.withOrder(1));
    UTensor tensor = expandSeriesFor(expr, fam, u, cfg, &isTensor, &element);
    std::string text = isTensor ? renderSeries(tensor, false) : renderSeries(element, false);
    // Keep the leg structure visible when a tensor series reduces to its unit.
    if (isTensor && text == "1") text = "1 ⊗ 1";
    std::cout << text << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// star / ode-check

int cmdStar(const CommonArgs& a, const std::string& kRaw, const std::string& qRaw) {
    if (!(a.kappa > 0)) throw UsageError("--kappa must be > 0");
    Rational u = a.uRaw.empty() ? Rational(1, 2) : parseExactList(a.uRaw).front();
    Family fam = a.familyRaw.empty() ? Family::R : parseFamilyToken(a.familyRaw.front());
    std::vector<double> v = a.vRaw.empty() ? std::vector<double>{1.0, 0.0}
                                           : parseDoubleList(a.vRaw, "v");
    std::vector<double> k = parseDoubleList(kRaw, "k");
    std::vector<double> q = parseDoubleList(qRaw, "q");
    if (k.size() != v.size() || q.size() != v.size())
        throw UsageError("--v, --k and --q must have the same number of components");
    star::StarParams p(u.get_d(), a.kappa, v);
    star::PlaneWaveProduct res;
    try {
        res = star::starKernel(p, k, q, fam);
    } catch (const star::DomainError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    nlohmann::ordered_json j;
    j["family"] = familyName(fam);
    j["u"] = p.u;
    j["kappa"] = p.kappa;
    j["dvec"] = res.dvec;
    j["g_log"] = res.gLog;
    j["amplitude"] = res.amplitude;
    if (a.format == "json") {
        std::cout << j.dump(2) << "\n";
    } else {
        std::string dv;
        for (std::size_t i = 0; i < res.dvec.size(); ++i) {
            if (i) dv += ", ";
            dv += fmtDouble(res.dvec[i]);
        }
        std::cout << "family    = " << familyName(fam) << "\n";
        std::cout << "dvec      = (" << dv << ")\n";
        std::cout << "g_log     = " << fmtDouble(res.gLog) << "\n";
        std::cout << "amplitude = " << fmtDouble(res.amplitude) << "\n";
    }
    if (!a.reportPath.empty()) {
        std::ofstream os(a.reportPath);
        if (!os) throw UsageError("cannot open report file '" + a.reportPath + "'");
        os << j.dump(2) << "\n";
    }
    return 0;
}

int cmdOdeCheck(const CommonArgs& a) {
    VerifyOptions o = makeVerifyOptions(a);
    std::vector<CheckReport> reports;
    for (const Rational& u : dedupe(o.us)) {
        runOne(reports, "ode_oracle", "", toString(u), 0, [&] {
            return star::checkOdeOracle(o.cfg, u, o.kappa, o.seed, o.samples, o.tol);
        });
    }
    return emitReports(std::move(reports), a.format, a.reportPath);
}

int cmdVerify(const CommonArgs& a) {
    VerifyOptions o = makeVerifyOptions(a);
    std::vector<CheckReport> reports =
        o.checks.empty() ? runDefaultSuite(o) : runRawChecks(o);
    return emitReports(std::move(reports), a.format, a.reportPath);
}

void addCommonVerifyFlags(CLI::App* cmd, CommonArgs& a, bool withChecks) {
    cmd->add_option("-N,--order", a.order, "series truncation order N (>= 1)")
        ->capture_default_str();
    cmd->add_option("--triple-order", a.tripleOrder,
                    "truncation order for three-leg identities (cocycle, coassociativity, QYBE)")
        ->capture_default_str();
    cmd->add_option("-n,--dim", a.dim, "number of momentum components (1..4)")
        ->capture_default_str();
    cmd->add_option("--u", a.uRaw,
                    "interpolation parameter(s), exact rationals like 1/4 (repeatable or "
                    "comma-separated; default 0,1/4,1/2,3/4,1,2)");
    cmd->add_option("--family", a.familyRaw,
                    "families to check: F0, F1, L, R, LR (repeatable; default all)");
    cmd->add_option("--kappa", a.kappa, "deformation scale for numeric checks")
        ->capture_default_str();
    cmd->add_option("--v", a.vRaw, "direction vector, comma-separated rationals (default 1,0,...)");
    cmd->add_option("--seed", a.seed, "RNG seed for numeric sampling")->capture_default_str();
    cmd->add_option("--samples", a.samples, "sample count per numeric check")
        ->capture_default_str();
    cmd->add_option("--tol", a.tol, "relative tolerance for numeric checks")
        ->capture_default_str();
    if (withChecks)
        cmd->add_option("--checks", a.checksRaw,
                        "run only the named checks with raw pass/fail semantics "
                        "(comma-separated or repeatable)");
    cmd->add_option("--report", a.reportPath, "write the JSON report to this path");
    cmd->add_option("--format", a.format, "stdout format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "exact and numeric verification for the interpolating Jordanian twist families"};
    app.require_subcommand(1);

    CommonArgs verifyArgs;
    CLI::App* verify = app.add_subcommand(
        "verify", "run the default check suite (or --checks subset) and write a report");
    addCommonVerifyFlags(verify, verifyArgs, true);

    CommonArgs expandArgs;
    std::string expandExpr;
    CLI::App* expand = app.add_subcommand(
        "expand", "print a series: F0 | F1 | FL | FR | FLR | rmatrix | coproduct:<gen> | "
                  "antipode:<gen> (gen = P0..P3 or D)");
    expand->add_option("expr", expandExpr, "expression to expand")->required();
    expand->add_option("-N,--order", expandArgs.order, "series truncation order (>= 0)")
        ->capture_default_str();
    expand->add_option("-n,--dim", expandArgs.dim, "number of momentum components (1..4)")
        ->capture_default_str();
    expand->add_option("--u", expandArgs.uRaw, "interpolation parameter (default 1/2)");
    expand->add_option("--family", expandArgs.familyRaw,
                       "family for coproduct/antipode/rmatrix (default R)");
    expand->add_option("--v", expandArgs.vRaw, "direction vector, comma-separated rationals");

    CommonArgs starArgs;
    std::string kRaw = "1,0";
    std::string qRaw = "1,0";
    CLI::App* starCmd =
        app.add_subcommand("star", "evaluate the plane-wave star product at one point");
    starCmd->add_option("--u", starArgs.uRaw, "interpolation parameter (default 1/2)");
    starCmd->add_option("--family", starArgs.familyRaw, "kernel family (default R)");
    starCmd->add_option("--kappa", starArgs.kappa, "deformation scale")->capture_default_str();
    starCmd->add_option("--v", starArgs.vRaw, "direction vector, comma-separated (default 1,0)");
    starCmd->add_option("--k", kRaw, "left momentum, comma-separated")->capture_default_str();
    starCmd->add_option("--q", qRaw, "right momentum, comma-separated")->capture_default_str();
    starCmd->add_option("--report", starArgs.reportPath, "write the JSON result to this path");
    starCmd->add_option("--format", starArgs.format, "stdout format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    CommonArgs odeArgs;
    CLI::App* ode = app.add_subcommand(
        "ode-check", "compare closed-form flow maps against the RK4 oracle");
    addCommonVerifyFlags(ode, odeArgs, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (verify->parsed()) return cmdVerify(verifyArgs);
        if (expand->parsed()) return cmdExpand(expandArgs, expandExpr);
        if (starCmd->parsed()) return cmdStar(starArgs, kRaw, qRaw);
        if (ode->parsed()) return cmdOdeCheck(odeArgs);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
