// Unit tests for the brute-force normal-ordering layer: the contraction
// product on x/k/p monomials, ordered exponentials, the flow recursions, and
// both ordered-exponential propositions. Frozen elements are expanded by hand
// from x p - p x = i (so p x = x p - i).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jtwist/ordexp.hpp"
#include "jtwist/star.hpp"

using namespace jtwist;
using namespace jtwist::ordexp;

namespace {

const GaussianRational kI = GaussianRational::imagUnit();

OMono omono1(int k, int x, int p) {
    OMono m;
    m.k[0] = static_cast<uint16_t>(k);
    m.x[0] = static_cast<uint16_t>(x);
    m.p[0] = static_cast<uint16_t>(p);
    return m;
}

}  // namespace

TEST_CASE("contraction product on the one-dimensional algebra") {
    const int M = 4;
    // p x = x p - i.
    OrdElement px = OrdElement::multiply(oP(1, M, 0), oX(1, M, 0));
    OrdElement expected = OrdElement::unit(1, M).scaled(-kI);
    expected.addTerm(omono1(0, 1, 1), GaussianRational(1));
    CHECK(px == expected);
    // p^2 x^2 = x^2 p^2 - 4 i x p - 2.
    OrdElement p2x2 = OrdElement::multiply(oP(1, M, 0, 2), oX(1, M, 0, 2));
    OrdElement want(1, M);
    want.addTerm(omono1(0, 2, 2), GaussianRational(1));
    want.addTerm(omono1(0, 1, 1), GaussianRational(-4) * kI);
    want.addTerm(OMono{}, GaussianRational(-2));
    CHECK(p2x2 == want);
    // k is central.
    CHECK(OrdElement::multiply(oK(1, M, 0), oP(1, M, 0)) ==
          OrdElement::multiply(oP(1, M, 0), oK(1, M, 0)));
}

TEST_CASE("truncation in total k-degree") {
    const int M = 2;
    OrdElement k2 = oK(1, M, 0, 2);
    CHECK_FALSE(k2.isZero());
    CHECK(OrdElement::multiply(k2, oK(1, M, 0)).isZero());  // k^3 falls out
    CHECK_THROWS(expSeries(OrdElement::unit(1, M), false));  // needs min k-degree >= 1
}

TEST_CASE("brute-force expansion of the simplest flow") {
    // phi(p) = p gives S = i k x p and
    // e^S = 1 + i k x p + (i/2) k^2 x p - (1/2) k^2 x^2 p^2 at M = 2.
    Poly1 phi = {GaussianRational(0), GaussianRational(1)};
    W1Element got = bruteForceExpand(phi, 2);
    CHECK(got.size() == 4);
    OrdElement want(1, 2);
    want.addTerm(OMono{}, GaussianRational(1));
    want.addTerm(omono1(1, 1, 1), kI);
    want.addTerm(omono1(2, 1, 1), GaussianRational(Rational(0), Rational(1, 2)));
    want.addTerm(omono1(2, 2, 2), GaussianRational(Rational(-1, 2)));
    CHECK(got == want);
}

TEST_CASE("flow solution for phi = p is the exponential") {
    Poly1 phi = {GaussianRational(0), GaussianRational(1)};
    PhiSeries Phi = solveJSeries(phi, 4);
    // J = p e^k, so the k^b coefficient is p / b!.
    for (int b = 1; b <= 4; ++b) {
        REQUIRE(Phi.byOrder[static_cast<std::size_t>(b)].size() == 2);
        Rational fact(1);
        for (int j = 2; j <= b; ++j) fact *= j;
        CHECK(Phi.byOrder[static_cast<std::size_t>(b)][1] ==
              GaussianRational(Rational(1) / fact));
        CHECK(Phi.byOrder[static_cast<std::size_t>(b)][0].isZero());
    }
}

TEST_CASE("ordered-exponential identity for interpolation and cubic data") {
    CHECK(checkProposition1(interpolationPhi(Rational(1, 3)), 6).pass);
    CHECK(checkProposition1(interpolationPhi(Rational(2)), 6).pass);
    Poly1 cubic = {GaussianRational(1), GaussianRational(2), GaussianRational(-1, 3),
                   GaussianRational(1, 2)};
    CHECK(checkProposition1(cubic, 6).pass);
}

TEST_CASE("exact g-series matches its floating-point closed form") {
    const Rational u(1, 4);
    std::vector<Rational> g = gRealSeries(u, 12);
    CHECK(g[0] == 0);
    const double A = 0.1;
    double sum = 0.0, pw = 1.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
        sum += g[j].get_d() * pw;
        pw *= A;
    }
    star::StarParams p(0.25, 1.0, {1.0, 0.0});
    std::vector<double> k{A, 0.0};
    CHECK(std::abs(sum - star::closedGReal(p, k)) < 1e-14);
}

TEST_CASE("family realizations carry the right scalar weight") {
    Config cfg(2, 4);
    const Rational kap(1);
    Realization L = familyRealization(Family::L, Rational(1, 3), cfg, kap, 3);
    Realization R = familyRealization(Family::R, Rational(1, 3), cfg, kap, 3);
    Realization LR = familyRealization(Family::LR, Rational(1, 3), cfg, kap, 3);
    for (int mu = 0; mu < cfg.dim; ++mu) {
        CHECK(L.chi[static_cast<std::size_t>(mu)].isZero());
        CHECK(R.chi[static_cast<std::size_t>(mu)] ==
              LR.chi[static_cast<std::size_t>(mu)].scaled(GaussianRational(2)));
    }
    // F0/F1 are the endpoint members: same phi as L at u = 0 / u = 1.
    Realization f0 = familyRealization(Family::F0, Rational(1, 3), cfg, kap, 3);
    Realization l0 = familyRealization(Family::L, Rational(0), cfg, kap, 3);
    for (int mu = 0; mu < cfg.dim; ++mu)
        for (int al = 0; al < cfg.dim; ++al)
            CHECK(f0.phi[static_cast<std::size_t>(mu)][static_cast<std::size_t>(al)] ==
                  l0.phi[static_cast<std::size_t>(mu)][static_cast<std::size_t>(al)]);
}

TEST_CASE("multidimensional ordered-exponential identity with scalar term") {
    Config cfg(2, 4);
    for (Family f : {Family::L, Family::R, Family::LR}) {
        CAPTURE(familyName(f));
        CheckReport r = checkProposition2Family(f, Rational(1, 2), cfg, Rational(1), 4);
        CHECK(r.pass);
    }
    CHECK(checkProposition2Family(Family::R, Rational(1, 4), cfg, Rational(2), 4).pass);
    CHECK(checkProposition2Family(Family::F1, Rational(1, 3), cfg, Rational(1), 4).pass);
}
