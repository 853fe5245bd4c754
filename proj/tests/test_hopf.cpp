// Unit tests for the twist factory and the deformed Hopf layer. Frozen
// expectations are derived by hand from the commutation relation
// [P_mu, D] = P_mu and the conjugation formulas; family-level facts (where
// unitarity or the real-form condition holds or breaks) are asserted as
// biconditionals, not just as passes.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jtwist/checks.hpp"
#include "jtwist/ops.hpp"
#include "jtwist/twist.hpp"

using namespace jtwist;

namespace {

const std::vector<Family> kAllFamilies = {Family::F0, Family::F1, Family::L, Family::R,
                                          Family::LR};

Mono monoPD(int p0, int d) {
    Mono m;
    m.p[0] = static_cast<uint16_t>(p0);
    m.d = static_cast<uint16_t>(d);
    return m;
}

}  // namespace

TEST_CASE("basic twist at low order has the rising-factorial shape") {
    Config c(2, 2);
    Twist t = buildTwist(Family::F0, 0, c);
    // 1 + kappa^-1 P0 x D + kappa^-2 (1/2 P0^2 x D + 1/2 P0^2 x D^2)
    UTensor expected = unitTensor(c);
    expected += tensorProduct(monoElement(c, monoPD(1, 0), 1), makeD(c));
    expected += tensorProduct(monoElement(c, monoPD(2, 0), 2, GaussianRational(1, 2)),
                              makeD(c) + makeD(c) * makeD(c));
    CHECK(t.F == expected);
    CHECK(t.F * t.Finv == unitTensor(c));
}

TEST_CASE("twist inverses are exact at the truncation for every family") {
    Config c(2, 4);
    for (Family f : kAllFamilies) {
        CAPTURE(familyName(f));
        Twist t = buildTwist(f, Rational(1, 3), c);
        CHECK(t.F * t.Finv == unitTensor(c));
        CHECK(t.Finv * t.F == unitTensor(c));
        CHECK(t.F.kappaComponent(0) == unitTensor(c));  // counital normalization
    }
}

TEST_CASE("first-order term of the basic deformed momentum coproduct") {
    Config c(2, 3);
    Twist t = buildTwist(Family::F0, 0, c);
    UTensor cop = hopf::twistedCoproduct(t, makeP(c, 0));
    // [P x D, 1 x P0] = -P x P0, so the kappa^-1 part is -kappa^-1 (v.P) x P0.
    UTensor firstOrder = tensorProduct(contractedP(c, 1), makeP(c, 0)).scaled(GaussianRational(-1));
    CHECK(cop.kappaComponent(1) == firstOrder);
    CHECK(cop.kappaComponent(0) ==
          tensorProduct(makeP(c, 0), unitElement(c)) +
              tensorProduct(unitElement(c), makeP(c, 0)));
}

TEST_CASE("closed forms reproduce the conjugated coproducts and antipodes") {
    Config c(2, 4);
    for (Family f : kAllFamilies) {
        CAPTURE(familyName(f));
        Twist t = buildTwist(f, Rational(1, 3), c);
        CheckReport r = hopf::checkHopfClosedForms(t);
        CHECK(r.pass);
    }
}

TEST_CASE("cocycle, normalization and Hopf axioms at triple order 3") {
    Config c(2, 4);
    for (Family f : {Family::L, Family::R, Family::LR}) {
        CAPTURE(familyName(f));
        Twist t = buildTwist(f, Rational(1, 3), c);
        CHECK(hopf::checkNormalization(t).pass);
        CHECK(hopf::checkCocycle(t, 3).pass);
        CHECK(hopf::checkCoassociativity(t, 3).pass);
        CHECK(hopf::checkCounitAxiom(t).pass);
        CHECK(hopf::checkAntipodeAxiom(t).pass);
    }
}

TEST_CASE("family interpolation: endpoints, relation, exponential identity") {
    Config c(2, 4);
    CHECK(hopf::checkReduction(Family::L, c).pass);
    CHECK(hopf::checkReduction(Family::R, c).pass);
    CHECK(hopf::checkReduction(Family::LR, c).pass);
    for (const Rational& u : {Rational(1, 3), Rational(2)}) {
        CAPTURE(toString(u));
        CHECK(hopf::checkFamilyRelation(u, c).pass);
        CHECK(hopf::checkExponentialIdentity(u, c).pass);
        CHECK(hopf::checkRRelations(u, c).pass);
        CHECK(hopf::checkCoboundaryPath(Family::R, u, c).pass);
        CHECK(hopf::checkGaugeEquivalence(Family::L, u, c).pass);
    }
}

TEST_CASE("R-matrix: classical part, CYBE, QYBE") {
    Config c(2, 4);
    Twist t = buildTwist(Family::R, Rational(1, 3), c);
    RMatrix R = rMatrix(t);
    UTensor expected = tensorProduct(makeD(c), contractedP(c, 1)) -
                       tensorProduct(contractedP(c, 1), makeD(c));
    CHECK(R.classicalPart == expected);
    CHECK(hopf::checkClassicalR(t).pass);
    CHECK(hopf::checkCYBE(c).pass);
    CHECK(hopf::checkQYBE(buildTwist(Family::LR, Rational(1, 3), c), 3).pass);
}

TEST_CASE("r-matrix first order is antisymmetric exactly at u = 1/2") {
    Config c(2, 4);
    for (Family f : {Family::L, Family::R, Family::LR}) {
        for (const Rational& u : {Rational(1, 2), Rational(1, 3), Rational(2)}) {
            CAPTURE(familyName(f));
            CAPTURE(toString(u));
            Twist t = buildTwist(f, u, c);
            CHECK(rSymmetric(t) == (u == Rational(1, 2)));
            CHECK(hopf::checkRSymmetry(t).pass);  // biconditional built in
        }
    }
}

TEST_CASE("real form: unitarity profile over the families") {
    Config c(2, 4);
    auto unitary = [&](Family f, const Rational& u) {
        return hopf::checkUnitarity(buildTwist(f, u, c)).pass;
    };
    CHECK(unitary(Family::F0, 0));
    CHECK(unitary(Family::F1, 1));
    CHECK(unitary(Family::LR, Rational(1, 4)));
    CHECK(unitary(Family::L, 0));
    CHECK(unitary(Family::R, 1));
    CHECK_FALSE(unitary(Family::L, Rational(1, 4)));
    CHECK_FALSE(unitary(Family::R, Rational(3, 4)));
    // The generator-wise dagger condition follows the same profile.
    CHECK(hopf::checkDagger(buildTwist(Family::LR, Rational(3, 4), c)).pass);
    CHECK_FALSE(hopf::checkDagger(buildTwist(Family::L, Rational(1, 4), c)).pass);
}

TEST_CASE("real form: left and right families are star-conjugate") {
    Config c(2, 4);
    for (const Rational& u : {Rational(1, 4), Rational(1, 2), Rational(2)}) {
        CAPTURE(toString(u));
        CHECK(hopf::checkStarExchange(u, c).pass);
        CHECK(hopf::checkStarCoproduct(u, c).pass);
        CHECK(hopf::checkStarAntipode(u, c).pass);
    }
}

TEST_CASE("real form: the Majid condition holds exactly at u = 1/2") {
    Config c(2, 6);
    for (Family f : {Family::L, Family::R}) {
        CAPTURE(familyName(f));
        CHECK(hopf::checkMajid(buildTwist(f, Rational(1, 2), c)).pass);
        CheckReport quarter = hopf::checkMajid(buildTwist(f, Rational(1, 4), c));
        CHECK_FALSE(quarter.pass);
        REQUIRE(quarter.firstResidualOrder.has_value());
        CHECK(*quarter.firstResidualOrder == 1);
        CheckReport threeQ = hopf::checkMajid(buildTwist(f, Rational(3, 4), c));
        CHECK_FALSE(threeQ.pass);
        CHECK(threeQ.firstResidualOrder.has_value());
    }
}

TEST_CASE("momentum coproducts agree between L and R, dilatation ones differ") {
    Config c(2, 4);
    CheckReport mid = hopf::checkDeltaInequality(Rational(1, 3), c);
    CHECK(mid.pass);
    REQUIRE(mid.firstResidualOrder.has_value());
    CHECK(*mid.firstResidualOrder >= 1);
    CHECK(hopf::checkDeltaInequality(Rational(0), c).pass);  // equality at the endpoint
    CHECK(hopf::checkDeltaInequality(Rational(1), c).pass);
}
