// Unit tests for the floating-point layer: closed-form momentum maps, the
// plane-wave kernel, domain guards, the RK4 oracle, quadrature, and the
// symbolic-numeric consistency bridge. Expected numbers are recomputed from
// first principles inside each test, not copied from engine output.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include "jtwist/star.hpp"

using namespace jtwist;
using star::StarParams;

namespace {

bool messageContains(const std::exception& e, const std::string& needle) {
    return std::string(e.what()).find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("closed momentum map against its defining formula") {
    StarParams p(0.5, 1.0, {1.0, 0.0});
    std::vector<double> k{1.0, -0.3};
    auto K = star::closedK(p, k);
    const double A = 1.0;  // (v.k)/kappa
    const double scale = (std::exp(A) - 1.0) / A / (0.5 * std::exp(A) + 0.5);
    CHECK(K[0] == doctest::Approx(k[0] * scale).epsilon(1e-14));
    CHECK(K[1] == doctest::Approx(k[1] * scale).epsilon(1e-14));
}

TEST_CASE("momentum map round trips, including the small-argument branch") {
    for (double u : {0.0, 0.25, 0.5, 1.0, 2.0}) {
        StarParams p(u, 1.0, {1.0, 0.0});
        for (std::vector<double> k :
             {std::vector<double>{0.2, -0.1}, {1e-5, 0.3}, {-0.15, 0.05}}) {
            CAPTURE(u);
            CAPTURE(k[0]);
            auto K = star::closedK(p, k);
            auto back = star::closedKinv(p, K);
            CHECK(back[0] == doctest::Approx(k[0]).epsilon(1e-12));
            CHECK(back[1] == doctest::Approx(k[1]).epsilon(1e-12));
        }
    }
}

TEST_CASE("flow map endpoints") {
    StarParams p(0.25, 2.0, {1.0, 0.0});
    std::vector<double> k{0.3, -0.4}, q{0.2, 0.1}, zero{0.0, 0.0};
    auto j1 = star::closedJ(p, k, zero);
    auto K = star::closedK(p, k);
    CHECK(j1[0] == doctest::Approx(K[0]).epsilon(1e-14));
    CHECK(j1[1] == doctest::Approx(K[1]).epsilon(1e-14));
    auto j0 = star::closedJ(p, zero, q);
    CHECK(j0[0] == doctest::Approx(q[0]).epsilon(1e-14));
    CHECK(j0[1] == doctest::Approx(q[1]).epsilon(1e-14));
}

TEST_CASE("damping exponents: defining expressions and the q = 0 reduction") {
    const double u = 0.25, A = 0.3;
    StarParams p(u, 1.0, {1.0, 0.0});
    std::vector<double> k{A, -0.7};  // v.k/kappa = A; the transverse slot is inert
    std::vector<double> zero{0.0, 0.0};
    const double direct = std::log(u * std::exp(-(1 - u) * A) + (1 - u) * std::exp(u * A));
    CHECK(star::closedGReal(p, k) == doctest::Approx(direct).epsilon(1e-14));
    CHECK(star::closedGReal(p, zero) == 0.0);
    CHECK(star::closedQReal(p, k, zero) == doctest::Approx(direct).epsilon(1e-14));
}

TEST_CASE("plane-wave kernel at the pinned point") {
    StarParams p(0.5, 1.0, {1.0, 0.0});
    std::vector<double> k{1.0, 0.0}, q{1.0, 0.0};
    auto res = star::starKernel(p, k, q, Family::R);
    // u w A B = 1/4, so the R-family amplitude is (1 + 1/4)^-1 = 4/5.
    CHECK(std::abs(res.amplitude - 0.8) < 1e-12);
    CHECK(res.gLog == doctest::Approx(std::log1p(0.25)).epsilon(1e-14));
    // dvec = [k(1 + uB) + (1 - wA) q] / (1 + uwAB) = (1.5 + 0.5)/1.25 e0.
    CHECK(res.dvec[0] == doctest::Approx(1.6).epsilon(1e-14));
    CHECK(res.dvec[1] == 0.0);
    // The scalar weight is the only family dependence.
    CHECK(star::starKernel(p, k, q, Family::L).amplitude == doctest::Approx(1.0));
    CHECK(star::starKernel(p, k, q, Family::LR).gLog ==
          doctest::Approx(0.5 * std::log1p(0.25)).epsilon(1e-14));
    CHECK(star::starKernel(p, k, q, Family::LR).dvec[0] ==
          doctest::Approx(res.dvec[0]).epsilon(1e-15));
}

TEST_CASE("identity element and domain guards") {
    StarParams p(0.0, 1.0, {1.0, 0.0});
    std::vector<double> k{0.5, 0.2}, zero{0.0, 0.0};
    auto res = star::starKernel(p, k, zero, Family::R);
    CHECK(res.dvec[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(res.dvec[1] == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(res.amplitude == 1.0);

    StarParams mid(0.5, 1.0, {1.0, 0.0});
    std::vector<double> big{2.0, 0.0};
    try {
        star::starKernel(mid, big, zero, Family::R);
        FAIL("expected a domain violation for v.k = 2 kappa");
    } catch (const star::DomainError& e) {
        CHECK(messageContains(e, "1 - (1-u)*(v.k)/kappa"));
    }
    std::vector<double> lowQ{-2.0, 0.0};
    try {
        star::starKernel(mid, zero, lowQ, Family::R);
        FAIL("expected a domain violation for v.q = -2 kappa");
    } catch (const star::DomainError& e) {
        CHECK(messageContains(e, "1 + u*(v.q)/kappa"));
    }
}

TEST_CASE("RK4 oracle confirms the closed forms at a generic point") {
    StarParams p(0.75, 2.0, {1.0, 0.0});
    std::vector<double> k{0.3, -0.4}, q{0.2, 0.1};
    auto ode = star::odeOracle(p, k, q, 1.0);
    auto J = star::closedJ(p, k, q);
    for (int i = 0; i < 2; ++i) CHECK(star::relResidual(ode.vec[i], J[i]) < 1e-11);
    CHECK(star::relResidual(ode.scalar, star::closedQReal(p, k, q)) < 1e-11);
}

TEST_CASE("seeded sampling is deterministic and respects the domain") {
    StarParams p(0.5, 1.0, {1.0, 0.0});
    star::MomentumSampler a(p, 42), b(p, 42), c(p, 7);
    std::vector<double> k1, q1, k2, q2, k3, q3;
    a.samplePair(k1, q1);
    b.samplePair(k2, q2);
    c.samplePair(k3, q3);
    CHECK(k1 == k2);
    CHECK(q1 == q2);
    CHECK(k1 != k3);
    CHECK(std::abs(k1[0]) <= 0.25);  // window [-kappa/4, kappa/4]
}

TEST_CASE("numeric check wrappers pass at their tolerances") {
    Config cfg(2, 4);
    CHECK(star::checkOdeOracle(cfg, Rational(1, 3), 1.0, 7, 20, 1e-9).pass);
    for (const auto& r : star::checkStarProperties(cfg, Rational(1, 3), 1.0, Family::R, 7, 20,
                                                   1e-9)) {
        CAPTURE(r.check);
        CHECK(r.pass);
    }
    CheckReport pin = star::checkAmplitudePin();
    CHECK(pin.pass);
}

TEST_CASE("coproduct consistency scales with the truncation order") {
    Config cfg(2, 4);
    CheckReport r = star::coproductConsistency(Family::L, Rational(1, 2), cfg, 1.0);
    CHECK(r.pass);
    CheckReport floor = star::coproductConsistency(Family::L, Rational(0), cfg, 1.0);
    CHECK(floor.pass);  // truncation-exact path at the endpoint
}

TEST_CASE("Gauss-Hermite rule integrates low moments exactly") {
    std::vector<double> nodes, weights;
    star::gaussHermite(24, nodes, weights);
    double s0 = 0, s2 = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        s0 += weights[i];
        s2 += weights[i] * nodes[i] * nodes[i];
    }
    const double rootPi = std::sqrt(std::acos(-1.0));
    CHECK(s0 == doctest::Approx(rootPi).epsilon(1e-14));
    CHECK(s2 == doctest::Approx(rootPi / 2).epsilon(1e-13));
}

TEST_CASE("wave packets: narrow-spectrum and classical limits") {
    std::vector<double> x{0.3, -0.2};
    // A second packet with a narrow spectrum acts like a single plane wave, so
    // the full double integral collapses onto the one-sided kernel action.
    StarParams p(0.5, 1.0, {1.0, 0.0});
    star::GaussianPacket a{{0.2, 0.0}, {0.05, 0.05}};
    star::GaussianPacket b{{0.15, 0.1}, {0.005, 0.005}};
    auto packet = star::wavePacketStar(p, Family::R, a, b, x);
    CHECK(packet.tailMass < 1e-6);
    auto collapsed = star::kernelAction(p, Family::R, a, b.center, x);
    CHECK(std::abs(packet.value - collapsed) < 1e-3);
    // The deformation itself is visible at kappa = 1...
    CHECK(std::abs(packet.value - packet.pointwise) > 1e-3);
    // ...and switches off in the commutative limit kappa -> infinity.
    StarParams classical(0.5, 1e6, {1.0, 0.0});
    auto flat = star::wavePacketStar(classical, Family::R, a, b, x);
    CHECK(std::abs(flat.value - flat.pointwise) < 1e-5 * std::abs(flat.pointwise));
}
