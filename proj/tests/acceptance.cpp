// Acceptance suite: ten numbered criteria covering twist construction, the
// deformed Hopf layer, real forms, coordinate realizations, the numeric
// oracles, and the ordered-exponential propositions. Each criterion prints a
// single [PASS]/[FAIL] line with its runtime; the binary exits nonzero when
// any criterion fails (including a blown time budget).

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "jtwist/checks.hpp"
#include "jtwist/ordexp.hpp"
#include "jtwist/star.hpp"
#include "jtwist/twist.hpp"
#include "jtwist/weyl.hpp"

using namespace jtwist;
using Clock = std::chrono::steady_clock;

namespace {

const std::vector<Rational> kUGrid = {Rational(0),      Rational(1, 4), Rational(1, 2),
                                      Rational(3, 4),   Rational(1),    Rational(2)};
const std::vector<Family> kAll = {Family::F0, Family::F1, Family::L, Family::R, Family::LR};
const std::vector<Family> kInterp = {Family::L, Family::R, Family::LR};

struct Criterion {
    int id;
    std::string label;
    double budgetSeconds;  // <= 0 means no cap
    std::function<bool(std::string&)> run;
};

bool require(bool ok, std::string& why, const std::string& what) {
    if (!ok && why.empty()) why = what;
    return ok;
}

bool requireReport(const CheckReport& r, std::string& why) {
    if (!r.pass && why.empty())
        why = r.check + " family=" + (r.family.empty() ? "-" : r.family) +
              " u=" + (r.u.empty() ? "-" : r.u) + ": " + r.detail;
    return r.pass;
}

}  // namespace

int main() {
    std::vector<Criterion> criteria;

    criteria.push_back({1, "twist reductions at the endpoints (N=6, n=2)", 10.0,
                        [](std::string& why) {
                            Config c(2, 6);
                            bool ok = true;
                            for (Family f : kInterp)
                                ok &= requireReport(hopf::checkReduction(f, c), why);
                            return ok;
                        }});

    criteria.push_back(
        {2, "cocycle + normalization, 5 families x 6 u values (triple order 4)", 60.0,
         [](std::string& why) {
             Config c(2, 6);
             bool ok = true;
             for (Family f : kAll) {
                 for (const Rational& u : kUGrid) {
                     Twist t = buildTwist(f, u, c);
                     ok &= requireReport(hopf::checkCocycle(t, 4), why);
                     ok &= requireReport(hopf::checkNormalization(t), why);
                     if (f == Family::F0 || f == Family::F1) break;
                 }
             }
             return ok;
         }});

    criteria.push_back(
        {3, "family relation, exponential identity, R-matrix relations (N=6)", 0.0,
         [](std::string& why) {
             Config c(2, 6);
             bool ok = true;
             for (const Rational& u : kUGrid) {
                 ok &= requireReport(hopf::checkFamilyRelation(u, c), why);
                 ok &= requireReport(hopf::checkExponentialIdentity(u, c), why);
                 ok &= requireReport(hopf::checkRRelations(u, c), why);
             }
             return ok;
         }});

    criteria.push_back(
        {4, "closed-form coproducts/antipodes; momentum coproducts agree, dilatation differ",
         0.0, [](std::string& why) {
             Config c(2, 6);
             bool ok = true;
             for (Family f : kAll) {
                 for (const Rational& u : kUGrid) {
                     ok &= requireReport(hopf::checkHopfClosedForms(buildTwist(f, u, c)), why);
                     if (f == Family::F0 || f == Family::F1) break;
                 }
             }
             for (const Rational& u : {Rational(1, 4), Rational(1, 2), Rational(3, 4)}) {
                 CheckReport r = hopf::checkDeltaInequality(u, c);
                 ok &= requireReport(r, why);
                 ok &= require(r.firstResidualOrder.has_value(), why,
                               "dilatation coproduct difference lacks a reported order");
             }
             ok &= requireReport(hopf::checkDeltaInequality(Rational(0), c), why);
             ok &= requireReport(hopf::checkDeltaInequality(Rational(1), c), why);
             return ok;
         }});

    criteria.push_back(
        {5, "Hopf axioms (triple order 4), QYBE (triple order 3), classical r + CYBE", 0.0,
         [](std::string& why) {
             Config c(2, 6);
             bool ok = true;
             for (Family f : kAll) {
                 for (const Rational& u : kUGrid) {
                     Twist t = buildTwist(f, u, c);
                     ok &= requireReport(hopf::checkCoassociativity(t, 4), why);
                     ok &= requireReport(hopf::checkCounitAxiom(t), why);
                     ok &= requireReport(hopf::checkAntipodeAxiom(t), why);
                     ok &= requireReport(hopf::checkClassicalR(t), why);
                     if (f == Family::F0 || f == Family::F1) break;
                 }
             }
             for (Family f : kInterp)
                 for (const Rational& u : kUGrid)
                     ok &= requireReport(hopf::checkQYBE(buildTwist(f, u, c), 3), why);
             ok &= requireReport(hopf::checkCYBE(c), why);
             return ok;
         }});

    criteria.push_back(
        {6, "real forms: unitarity, left/right star exchange, Majid profile (N=6)", 0.0,
         [](std::string& why) {
             Config c(2, 6);
             bool ok = true;
             ok &= requireReport(hopf::checkUnitarity(buildTwist(Family::F0, 0, c)), why);
             ok &= requireReport(hopf::checkUnitarity(buildTwist(Family::F1, 1, c)), why);
             for (const Rational& u : kUGrid)
                 ok &= requireReport(hopf::checkUnitarity(buildTwist(Family::LR, u, c)), why);
             for (const Rational& u : kUGrid)
                 ok &= requireReport(hopf::checkStarExchange(u, c), why);
             for (Family f : {Family::L, Family::R}) {
                 ok &= requireReport(hopf::checkMajid(buildTwist(f, Rational(1, 2), c)), why);
                 for (const Rational& u : {Rational(1, 4), Rational(3, 4)}) {
                     CheckReport r = hopf::checkMajid(buildTwist(f, u, c));
                     ok &= require(!r.pass, why,
                                   "Majid condition unexpectedly holds at u=" + toString(u));
                     ok &= require(r.firstResidualOrder.has_value(), why,
                                   "Majid violation lacks a reported residual order");
                 }
             }
             return ok;
         }});

    criteria.push_back(
        {7, "coordinate realizations: closed forms, stabilization, commutators, chi", 0.0,
         [](std::string& why) {
             Config c6(2, 6), c7(2, 7);
             bool ok = true;
             for (Family f : kAll) {
                 for (const Rational& u : {Rational(1, 4), Rational(1, 2), Rational(3, 4)}) {
                     ok &= requireReport(weyl::checkRealization(buildTwist(f, u, c6)), why);
                     ok &= requireReport(weyl::checkRealization(buildTwist(f, u, c7)), why);
                     ok &= requireReport(weyl::checkCommutators(f, u, c6), why);
                     if (f == Family::F0 || f == Family::F1) break;
                 }
             }
             for (const Rational& u : {Rational(1, 4), Rational(1, 2), Rational(3, 4)})
                 ok &= requireReport(weyl::checkChiDifference(u, c6), why);
             for (Family f : kInterp) {
                 Twist t6 = buildTwist(f, Rational(1, 2), c6);
                 Twist t7 = buildTwist(f, Rational(1, 2), c7);
                 for (int mu = 0; mu < 2; ++mu) {
                     WElement lo = xhatFromTwist(t6, mu);
                     WElement hi = xhatFromTwist(t7, mu);
                     ok &= require(lo == hi.truncatedTo(6), why,
                                   "realization does not stabilize between orders 6 and 7");
                 }
             }
             return ok;
         }});

    criteria.push_back(
        {8, "numeric oracles: RK4 vs closed forms, kernel identities, amplitude pin", 30.0,
         [](std::string& why) {
             Config c(2, 6);
             bool ok = true;
             for (const Rational& u : kUGrid)
                 ok &= requireReport(star::checkOdeOracle(c, u, 1.0, 42, 100, 1e-9), why);
             for (Family f : kInterp)
                 for (const Rational& u : {Rational(1, 4), Rational(1, 2), Rational(2)})
                     for (const auto& r :
                          star::checkStarProperties(c, u, 1.0, f, 42, 100, 1e-9))
                         ok &= requireReport(r, why);
             ok &= requireReport(star::checkAmplitudePin(), why);
             return ok;
         }});

    criteria.push_back(
        {9, "symbolic-numeric bridge: residual scales as kappa^-(N+1) at N=4 and N=6", 0.0,
         [](std::string& why) {
             bool ok = true;
             for (int N : {4, 6}) {
                 Config c(2, N);
                 for (Family f : {Family::L, Family::R})
                     for (const Rational& u : {Rational(1, 4), Rational(1, 2)})
                         ok &= requireReport(star::coproductConsistency(f, u, c, 1.0), why);
             }
             return ok;
         }});

    criteria.push_back(
        {10, "ordered-exponential propositions: interpolation phi, random cubics, full flow",
         60.0, [](std::string& why) {
             bool ok = true;
             for (const Rational& u : {Rational(1, 4), Rational(1, 2), Rational(3, 4)})
                 ok &= requireReport(ordexp::checkProposition1(ordexp::interpolationPhi(u), 8,
                                                               "interpolation u=" + toString(u)),
                                     why);
             std::mt19937_64 rng(42);
             std::uniform_int_distribution<int> num(-3, 3);
             for (int trial = 0; trial < 10; ++trial) {
                 ordexp::Poly1 cubic(4);
                 for (auto& coeff : cubic) coeff = GaussianRational(num(rng));
                 if (cubic[3].isZero()) cubic[3] = GaussianRational(1);  // keep it cubic
                 ok &= requireReport(ordexp::checkProposition1(
                                         cubic, 8, "random cubic #" + std::to_string(trial)),
                                     why);
             }
             Config c(2, 6);
             ok &= requireReport(
                 ordexp::checkProposition2Family(Family::R, Rational(1, 2), c, Rational(1), 5),
                 why);
             return ok;
         }});

    int failures = 0;
    for (auto& cr : criteria) {
        auto t0 = Clock::now();
        std::string why;
        bool ok = false;
        try {
            ok = cr.run(why);
        } catch (const std::exception& e) {
            why = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        bool inBudget = cr.budgetSeconds <= 0 || secs <= cr.budgetSeconds;
        if (ok && !inBudget)
            why = "exceeded time budget of " + std::to_string(cr.budgetSeconds) + "s";
        bool pass = ok && inBudget;
        std::printf("[%s] criterion %2d: %s (%.2fs%s)\n", pass ? "PASS" : "FAIL", cr.id,
                    cr.label.c_str(), secs,
                    cr.budgetSeconds > 0
                        ? (" / budget " + std::to_string(static_cast<int>(cr.budgetSeconds)) + "s")
                              .c_str()
                        : "");
        if (!pass) {
            std::printf("       reason: %s\n", why.c_str());
            ++failures;
        }
    }
    if (failures == 0) std::printf("all %zu criteria passed\n", criteria.size());
    return failures == 0 ? 0 : 1;
}
