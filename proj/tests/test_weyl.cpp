// Unit tests for the extended Weyl-dilatation algebra and the coordinate
// realizations extracted from the twists. Frozen normal forms come from the
// relations [P_mu, x^nu] = -i delta, [D, x^mu] = x^mu, [P_mu, D] = P_mu.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jtwist/weyl.hpp"

using namespace jtwist;

namespace {

const GaussianRational kI = GaussianRational::imagUnit();

WMono wmono(int x0, int x1, int p0, int p1, int d) {
    WMono m;
    m.x[0] = static_cast<uint16_t>(x0);
    m.x[1] = static_cast<uint16_t>(x1);
    m.p[0] = static_cast<uint16_t>(p0);
    m.p[1] = static_cast<uint16_t>(p1);
    m.d = static_cast<uint16_t>(d);
    return m;
}

}  // namespace

TEST_CASE("defining commutators of the extended algebra") {
    Config c(2, 4);
    CHECK(commutatorW(wP(c, 0), wX(c, 0)) == wUnit(c).scaled(-kI));
    CHECK(commutatorW(wP(c, 0), wX(c, 1)).isZero());
    CHECK(commutatorW(wD(c), wX(c, 0)) == wX(c, 0));
    CHECK(commutatorW(wP(c, 0), wD(c)) == wP(c, 0));
    CHECK(commutatorW(wX(c, 0), wX(c, 1)).isZero());
}

TEST_CASE("normal ordering of mixed words") {
    Config c(2, 4);
    // P0 x0 x0 = x0^2 P0 - 2i x0.
    WElement lhs = wP(c, 0) * wX(c, 0) * wX(c, 0);
    WElement expected = wMono(c, wmono(2, 0, 1, 0, 0));
    expected += wMono(c, wmono(1, 0, 0, 0, 0), 0, GaussianRational(-2) * kI);
    CHECK(lhs == expected);
    // D x0 = x0 D + x0.
    CHECK(wD(c) * wX(c, 0) == wMono(c, wmono(1, 0, 0, 0, 1)) + wX(c, 0));
}

TEST_CASE("star conjugation is an antilinear anti-automorphism") {
    Config c(2, 4);
    // (x0 P0)* = P0 x0 = x0 P0 - i.
    WElement xp = wMono(c, wmono(1, 0, 1, 0, 0));
    CHECK(conjugateStarW(xp) == xp + wUnit(c).scaled(-kI));
    // (x0 D)* = -D x0 = -(x0 D + x0).
    WElement xd = wMono(c, wmono(1, 0, 0, 0, 1));
    CHECK(conjugateStarW(xd) == -(xd + wX(c, 0)));
    // Antilinearity on coefficients.
    CHECK(conjugateStarW(wX(c, 0).scaled(kI)) == wX(c, 0).scaled(-kI));
    // Shifted variant: D* = -D - dim.
    CHECK(conjugateStarW(wD(c), true) == -(wD(c) + wUnit(c).scaled(GaussianRational(2))));
}

TEST_CASE("dilatation substitution D -> i x.P") {
    Config c(2, 4);
    WElement expected = wMono(c, wmono(1, 0, 1, 0, 0), 0, kI);
    expected += wMono(c, wmono(0, 1, 0, 1, 0), 0, kI);
    CHECK(substituteDilatation(wD(c)) == expected);
    // The substitution respects the defining relation [D, x0] = x0.
    WElement sub = substituteDilatation(wD(c));
    CHECK(commutatorW(sub, wX(c, 0)) == wX(c, 0));
}

TEST_CASE("closed-form coordinates at the basic endpoint") {
    Config c(2, 4);
    // u = 0: xhat^0 = x0 + (i/kappa) D, xhat^1 = x1.
    WElement expected0 = wX(c, 0) + wMono(c, WMono::D(), 1, kI);
    CHECK(closedFormXhat(Family::F0, 0, c, 0) == expected0);
    CHECK(closedFormXhat(Family::F0, 0, c, 1) == wX(c, 1));
    // u = 1 endpoint carries the momentum gain factor instead.
    WElement gained = (wX(c, 0)) * (wUnit(c) + wContractedP(c, 1));
    CHECK(closedFormXhat(Family::F1, 1, c, 0) == gained);
}

TEST_CASE("twist-extracted coordinates equal the closed forms") {
    Config c(2, 4);
    for (Family f : {Family::F0, Family::F1, Family::L, Family::R, Family::LR}) {
        CAPTURE(familyName(f));
        Twist t = buildTwist(f, Rational(1, 3), c);
        CHECK(weyl::checkRealization(t).pass);
        for (int mu = 0; mu < c.dim; ++mu)
            CHECK(xhatFromTwist(t, mu) == closedFormXhat(f, t.u, c, mu));
    }
}

TEST_CASE("coordinate commutators close on the Lie-algebra relations") {
    Config c(2, 4);
    for (Family f : {Family::L, Family::R, Family::LR}) {
        for (const Rational& u : {Rational(1, 3), Rational(2)}) {
            CAPTURE(familyName(f));
            CAPTURE(toString(u));
            CHECK(weyl::checkCommutators(f, u, c).pass);
            CHECK(weyl::checkJacobi(f, u, c).pass);
        }
    }
    CHECK(weyl::checkCommutators(Family::F0, 0, c).pass);
    CHECK(weyl::checkJacobi(Family::F1, 1, c).pass);
}

TEST_CASE("left/right coordinate difference is the exact chi term") {
    Config c(2, 4);
    Rational u(1, 3);
    CHECK(weyl::checkChiDifference(u, c).pass);
    // Direct frozen form: xhat_R - xhat_L = i u(1-u) kappa^-2 v^mu (v.P).
    WElement diff0 = closedFormXhat(Family::R, u, c, 0) - closedFormXhat(Family::L, u, c, 0);
    CHECK(diff0 == wContractedP(c, 2).scaled(kI * GaussianRational(Rational(2, 9))));
    WElement diff1 = closedFormXhat(Family::R, u, c, 1) - closedFormXhat(Family::L, u, c, 1);
    CHECK(diff1.isZero());  // v^1 = 0
    // The difference vanishes at both endpoints.
    CHECK((closedFormXhat(Family::R, 0, c, 0) - closedFormXhat(Family::L, 0, c, 0)).isZero());
    CHECK((closedFormXhat(Family::R, 1, c, 0) - closedFormXhat(Family::L, 1, c, 0)).isZero());
}

TEST_CASE("realization stabilizes across truncation orders") {
    Config c6(2, 6), c7(2, 7);
    Twist t6 = buildTwist(Family::R, Rational(1, 2), c6);
    Twist t7 = buildTwist(Family::R, Rational(1, 2), c7);
    WElement x6 = xhatFromTwist(t6, 0);
    WElement x7 = xhatFromTwist(t7, 0);
    // Identical term content once the declared orders are aligned.
    CHECK(x6 == x7.truncatedTo(6));
    CHECK(x7 == x6.withDeclaredOrder(7));
}
