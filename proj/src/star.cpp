#include "jtwist/star.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "jtwist/checks.hpp"
#include "jtwist/ops.hpp"

namespace jtwist::star {

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

void requireFinite(std::span<const double> w, const char* what) {
    for (double c : w)
        if (!std::isfinite(c)) throw std::invalid_argument(std::string(what) + " must be finite");
}

/// (e^A - 1)/A, switching to a 6-term Taylor polynomial near A = 0 so the
/// value stays fully accurate instead of suffering 0/0 cancellation.
double phiExpm1(double A) {
    if (std::abs(A) < 1e-4) {
        // 1 + A/2 + A^2/6 + A^3/24 + A^4/120 + A^5/720
        double s = 1.0 / 720.0;
        s = s * A + 1.0 / 120.0;
        s = s * A + 1.0 / 24.0;
        s = s * A + 1.0 / 6.0;
        s = s * A + 0.5;
        s = s * A + 1.0;
        return s;
    }
    return std::expm1(A) / A;
}

/// [ln(1 + uA) - ln(1 - (1-u)A)]/A with the same small-A Taylor switch:
/// sum_{m=1..6} A^(m-1) [(-1)^(m+1) u^m + (1-u)^m] / m.
double kinvScalar(double u, double A) {
    const double w = 1.0 - u;
    if (std::abs(A) < 1e-4) {
        double s = 0.0;
        double up = u, wp = w;  // u^m, (1-u)^m
        double Ap = 1.0;        // A^(m-1)
        double sign = 1.0;      // (-1)^(m+1)
        for (int m = 1; m <= 6; ++m) {
            s += Ap * (sign * up + wp) / m;
            up *= u;
            wp *= w;
            Ap *= A;
            sign = -sign;
        }
        return s;
    }
    const double num = 1.0 + u * A;
    const double den = 1.0 - w * A;
    if (num <= 0.0) throw DomainError("1 + u*(v.k)/kappa > 0");
    if (den <= 0.0) throw DomainError("1 - (1-u)*(v.k)/kappa > 0");
    return (std::log(num) - std::log(den)) / A;
}

}  // namespace

StarParams::StarParams(double uIn, double kappaIn, std::vector<double> vIn)
    : u(uIn), kappa(kappaIn), v(std::move(vIn)), dim(static_cast<int>(v.size())) {
    validate();
}

StarParams StarParams::fromConfig(const Config& cfg, const Rational& u, double kappa) {
    StarParams p;
    p.u = u.get_d();
    p.kappa = kappa;
    p.dim = cfg.dim;
    p.v.resize(cfg.dim);
    for (int i = 0; i < cfg.dim; ++i) p.v[i] = cfg.v[i].get_d();
    p.validate();
    return p;
}

void StarParams::validate() const {
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("dim must be in 1..4");
    if (static_cast<int>(v.size()) != dim) throw std::invalid_argument("v must have dim components");
    if (!std::isfinite(u)) throw std::invalid_argument("u must be finite");
    if (!std::isfinite(kappa) || kappa <= 0.0) throw std::invalid_argument("kappa must be positive");
    requireFinite(v, "v");
}

double StarParams::vDot(std::span<const double> w) const {
    if (static_cast<int>(w.size()) != dim)
        throw std::invalid_argument("momentum must have dim components");
    double s = 0.0;
    for (int i = 0; i < dim; ++i) s += v[i] * w[i];
    return s;
}

double chiScale(Family f) {
    switch (f) {
        case Family::R: return 1.0;
        case Family::LR: return 0.5;
        default: return 0.0;  // F0, F1, L carry no scalar generator
    }
}

PlaneWaveProduct starKernel(const StarParams& p, std::span<const double> k,
                            std::span<const double> q, Family f) {
    requireFinite(k, "k");
    requireFinite(q, "q");
    const double u = p.u, w = 1.0 - p.u;
    const double A = p.vDot(k) / p.kappa;
    const double B = p.vDot(q) / p.kappa;
    if (1.0 + u * B <= 0.0) throw DomainError("1 + u*(v.q)/kappa > 0");
    if (1.0 - w * A <= 0.0) throw DomainError("1 - (1-u)*(v.k)/kappa > 0");
    const double mixed = u * w * A * B;
    if (1.0 + mixed <= 0.0) throw DomainError("1 + u*(1-u)*(v.k)*(v.q)/kappa^2 > 0");

    PlaneWaveProduct out;
    out.dvec.resize(p.dim);
    const double den = 1.0 + mixed;
    for (int i = 0; i < p.dim; ++i)
        out.dvec[i] = (k[i] * (1.0 + u * B) + (1.0 - w * A) * q[i]) / den;
    out.gLog = chiScale(f) * std::log1p(mixed);
    out.amplitude = std::exp(-out.gLog);
    return out;
}

std::vector<double> closedK(const StarParams& p, std::span<const double> k) {
    requireFinite(k, "k");
    const double u = p.u, w = 1.0 - p.u;
    const double A = p.vDot(k) / p.kappa;
    const double den = w * std::exp(A) + u;
    if (den <= 0.0) throw DomainError("(1-u)*exp((v.k)/kappa) + u > 0");
    const double s = phiExpm1(A) / den;
    std::vector<double> out(k.begin(), k.end());
    for (double& c : out) c *= s;
    return out;
}

std::vector<double> closedKinv(const StarParams& p, std::span<const double> k) {
    requireFinite(k, "k");
    const double A = p.vDot(k) / p.kappa;
    const double s = kinvScalar(p.u, A);
    std::vector<double> out(k.begin(), k.end());
    for (double& c : out) c *= s;
    return out;
}

std::vector<double> closedJ(const StarParams& p, std::span<const double> k,
                            std::span<const double> q) {
    requireFinite(q, "q");
    const double u = p.u, w = 1.0 - p.u;
    const std::vector<double> K = closedK(p, k);
    const double vK = p.vDot(K) / p.kappa;
    const double B = p.vDot(q) / p.kappa;
    const double den = 1.0 + u * w * vK * B;
    if (den <= 0.0) throw DomainError("1 + u*(1-u)*(v.K(k))*(v.q)/kappa^2 > 0");
    std::vector<double> out(p.dim);
    for (int i = 0; i < p.dim; ++i)
        out[i] = (K[i] * (1.0 + u * B) + (1.0 - w * vK) * q[i]) / den;
    return out;
}

double closedGReal(const StarParams& p, std::span<const double> k) {
    requireFinite(k, "k");
    const double u = p.u, w = 1.0 - p.u;
    const double A = p.vDot(k) / p.kappa;
    // u e^{-(1-u)A} + (1-u) e^{uA} - 1, assembled from expm1 so the small-A
    // regime keeps full precision.
    const double argM1 = u * std::expm1(-w * A) + w * std::expm1(u * A);
    if (1.0 + argM1 <= 0.0)
        throw DomainError("u*exp(-(1-u)*A) + (1-u)*exp(u*A) > 0 with A = (v.k)/kappa");
    return std::log1p(argM1);
}

double closedQReal(const StarParams& p, std::span<const double> k,
                   std::span<const double> q) {
    requireFinite(k, "k");
    requireFinite(q, "q");
    const double u = p.u, w = 1.0 - p.u;
    const double A = p.vDot(k) / p.kappa;
    const double B = p.vDot(q) / p.kappa;
    // u(1-(1-u)B) e^{-(1-u)A} + (1-u)(1+uB) e^{uA} - 1; the B-linear pieces of
    // the two products cancel exactly, leaving a cancellation-free expm1 form.
    const double argM1 =
        u * (1.0 - w * B) * std::expm1(-w * A) + w * (1.0 + u * B) * std::expm1(u * A);
    if (1.0 + argM1 <= 0.0)
        throw DomainError(
            "u*(1-(1-u)*(v.q)/kappa)*exp(-(1-u)*A) + (1-u)*(1+u*(v.q)/kappa)*exp(u*A) > 0 "
            "with A = (v.k)/kappa");
    return std::log1p(argM1);
}

double relResidual(double a, double b) {
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) / scale;
}

namespace {

struct FlowState {
    std::vector<double> vec;
    double scalar = 0.0;
};

/// One RK4 pass with `steps` uniform steps over lambda in [0,1].
FlowState integrateFlow(const StarParams& p, std::span<const double> k,
                        std::span<const double> q, int steps) {
    const double u = p.u, w = 1.0 - p.u;
    const double vk = p.vDot(k);
    const int n = p.dim;
    FlowState y;
    y.vec.assign(q.begin(), q.end());
    if (y.vec.empty()) y.vec.assign(n, 0.0);

    auto rhs = [&](const std::vector<double>& vec, std::vector<double>& dvec,
                   double& dscalar) {
        double vJ = 0.0;
        for (int i = 0; i < n; ++i) vJ += p.v[i] * vec[i];
        const double gain = 1.0 + (u / p.kappa) * vJ;
        for (int i = 0; i < n; ++i)
            dvec[i] = (k[i] - (w / p.kappa) * vk * vec[i]) * gain;
        dscalar = u * w / (p.kappa * p.kappa) * vk * vJ;
    };

    const double h = 1.0 / steps;
    std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
    double s1, s2, s3, s4;
    for (int step = 0; step < steps; ++step) {
        rhs(y.vec, k1, s1);
        for (int i = 0; i < n; ++i) tmp[i] = y.vec[i] + 0.5 * h * k1[i];
        rhs(tmp, k2, s2);
        for (int i = 0; i < n; ++i) tmp[i] = y.vec[i] + 0.5 * h * k2[i];
        rhs(tmp, k3, s3);
        for (int i = 0; i < n; ++i) tmp[i] = y.vec[i] + h * k3[i];
        rhs(tmp, k4, s4);
        for (int i = 0; i < n; ++i)
            y.vec[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        y.scalar += h / 6.0 * (s1 + 2.0 * s2 + 2.0 * s3 + s4);
        for (double c : y.vec)
            if (!std::isfinite(c))
                throw DomainError("ode state left the domain (became non-finite)");
    }
    return y;
}

double flowDiff(const FlowState& a, const FlowState& b) {
    double worst = relResidual(a.scalar, b.scalar);
    for (std::size_t i = 0; i < a.vec.size(); ++i)
        worst = std::max(worst, relResidual(a.vec[i], b.vec[i]));
    return worst;
}

}  // namespace

OdeResult odeOracle(const StarParams& p, std::span<const double> k,
                    std::span<const double> q, double chiWeight, double relTol) {
    requireFinite(k, "k");
    if (!q.empty()) requireFinite(q, "q");
    int steps = 16;
    FlowState prev = integrateFlow(p, k, q, steps);
    while (steps <= (1 << 20)) {
        steps *= 2;
        FlowState cur = integrateFlow(p, k, q, steps);
        if (flowDiff(prev, cur) < relTol) {
            OdeResult out;
            // Richardson extrapolation: RK4 halving gains a factor 16.
            out.vec.resize(cur.vec.size());
            for (std::size_t i = 0; i < cur.vec.size(); ++i)
                out.vec[i] = cur.vec[i] + (cur.vec[i] - prev.vec[i]) / 15.0;
            out.scalar = (cur.scalar + (cur.scalar - prev.scalar) / 15.0) * chiWeight;
            out.steps = steps;
            return out;
        }
        prev = std::move(cur);
    }
    throw ConvergenceError("ode oracle: step halving did not reach the tolerance");
}

MomentumSampler::MomentumSampler(StarParams p, std::uint64_t seed)
    : params_(std::move(p)), rng_(seed) {
    params_.validate();
}

double MomentumSampler::uniform01() {
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

namespace {

/// Margin-strict admissibility of a single momentum under every closed-form
/// guard, so downstream evaluations never sit on a domain boundary.
bool vecAdmissible(const StarParams& p, std::span<const double> k) {
    const double u = p.u, w = 1.0 - p.u;
    const double A = p.vDot(k) / p.kappa;
    const double margin = 1e-6;
    if (1.0 + u * A <= margin) return false;
    if (1.0 - w * A <= margin) return false;
    if (w * std::exp(A) + u <= margin) return false;
    if (1.0 + u * std::expm1(-w * A) + w * std::expm1(u * A) <= margin) return false;
    return true;
}

bool pairAdmissible(const StarParams& p, std::span<const double> k,
                    std::span<const double> q) {
    const double u = p.u, w = 1.0 - p.u;
    const double A = p.vDot(k) / p.kappa;
    const double B = p.vDot(q) / p.kappa;
    const double margin = 1e-6;
    if (1.0 + u * w * A * B <= margin) return false;
    const double qArg =
        u * (1.0 - w * B) * std::expm1(-w * A) + w * (1.0 + u * B) * std::expm1(u * A);
    if (1.0 + qArg <= margin) return false;
    return true;
}

}  // namespace

void MomentumSampler::samplePair(std::vector<double>& k, std::vector<double>& q) {
    const double half = params_.kappa / 4.0;
    k.resize(params_.dim);
    q.resize(params_.dim);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        for (double& c : k) c = (2.0 * uniform01() - 1.0) * half;
        for (double& c : q) c = (2.0 * uniform01() - 1.0) * half;
        if (vecAdmissible(params_, k) && vecAdmissible(params_, q) &&
            pairAdmissible(params_, k, q))
            return;
    }
    throw std::logic_error("momentum sampler: rejection did not terminate");
}

namespace {

CheckReport numericReport(const std::string& name, Family f, const Rational& u,
                          bool pass, double worst, int samples, double tol,
                          const std::string& extra = "") {
    CheckReport r;
    r.check = name;
    r.family = familyName(f);
    r.u = toString(u);
    r.order = 0;
    r.pass = pass;
    r.detail = "max rel residual " + fmt(worst) + " over " + std::to_string(samples) +
               " samples (tol " + fmt(tol) + ")" + extra;
    return r;
}

}  // namespace

std::vector<CheckReport> checkStarProperties(const Config& cfg, const Rational& u,
                                             double kappa, Family f,
                                             std::uint64_t seed, int samples,
                                             double tol) {
    const StarParams p = StarParams::fromConfig(cfg, u, kappa);
    MomentumSampler sampler(p, seed);
    const std::vector<double> zero(p.dim, 0.0);

    double wAssoc = 0.0, wCocycle = 0.0, wUnit = 0.0, wMomentum = 0.0, wPhase = 0.0;
    std::vector<double> k, q, r, scratch;
    for (int s = 0; s < samples; ++s) {
        for (int attempt = 0;; ++attempt) {
            if (attempt >= 1000)
                throw std::logic_error("star properties: triple sampling did not terminate");
            sampler.samplePair(k, q);
            sampler.samplePair(r, scratch);
            try {
                // (a) associativity of the composed momentum
                const PlaneWaveProduct kq = starKernel(p, k, q, f);
                const PlaneWaveProduct qr = starKernel(p, q, r, f);
                const PlaneWaveProduct left = starKernel(p, kq.dvec, r, f);
                const PlaneWaveProduct right = starKernel(p, k, qr.dvec, f);
                for (int i = 0; i < p.dim; ++i)
                    wAssoc = std::max(wAssoc, relResidual(left.dvec[i], right.dvec[i]));

                // (b) phase cocycle
                wCocycle = std::max(
                    wCocycle, relResidual(kq.gLog + left.gLog, qr.gLog + right.gLog));

                // (c) unitality in both slots
                const PlaneWaveProduct k0 = starKernel(p, k, zero, f);
                const PlaneWaveProduct zq = starKernel(p, zero, q, f);
                for (int i = 0; i < p.dim; ++i) {
                    wUnit = std::max(wUnit, relResidual(k0.dvec[i], k[i]));
                    wUnit = std::max(wUnit, relResidual(zq.dvec[i], q[i]));
                }
                wUnit = std::max({wUnit, std::abs(k0.gLog), std::abs(zq.gLog)});

                // (d) kernel momentum vs the flow maps
                const std::vector<double> m = closedKinv(p, k);
                const std::vector<double> viaFlow = closedJ(p, m, q);
                for (int i = 0; i < p.dim; ++i)
                    wMomentum = std::max(wMomentum, relResidual(kq.dvec[i], viaFlow[i]));

                // (e) kernel phase vs the scalar flow
                const double viaQ =
                    chiScale(f) * (closedQReal(p, m, q) - closedQReal(p, m, zero));
                wPhase = std::max(wPhase, relResidual(kq.gLog, viaQ));
                break;
            } catch (const DomainError&) {
                continue;  // resample: a derived point left the domain
            }
        }
    }

    std::vector<CheckReport> out;
    out.push_back(numericReport("star_associativity", f, u, wAssoc < tol, wAssoc, samples, tol));
    out.push_back(numericReport("star_cocycle", f, u, wCocycle < tol, wCocycle, samples, tol));
    out.push_back(numericReport("star_unitality", f, u, wUnit < tol, wUnit, samples, tol));
    out.push_back(numericReport("star_momentum_map", f, u, wMomentum < tol, wMomentum, samples, tol));
    out.push_back(numericReport("star_phase_map", f, u, wPhase < tol, wPhase, samples, tol));
    return out;
}

CheckReport checkOdeOracle(const Config& cfg, const Rational& u, double kappa,
                           std::uint64_t seed, int samples, double tol) {
    const StarParams p = StarParams::fromConfig(cfg, u, kappa);
    MomentumSampler sampler(p, seed);
    const std::vector<double> zero(p.dim, 0.0);

    double wK = 0.0, wG = 0.0, wJ = 0.0, wQ = 0.0, wRound = 0.0, wDegen = 0.0;
    int maxSteps = 0;
    std::vector<double> k, q;
    for (int s = 0; s < samples; ++s) {
        sampler.samplePair(k, q);

        const OdeResult kFlow = odeOracle(p, k, zero, 1.0);
        const std::vector<double> Kc = closedK(p, k);
        for (int i = 0; i < p.dim; ++i) wK = std::max(wK, relResidual(kFlow.vec[i], Kc[i]));
        wG = std::max(wG, relResidual(kFlow.scalar, closedGReal(p, k)));

        const OdeResult jFlow = odeOracle(p, k, q, 1.0);
        const std::vector<double> Jc = closedJ(p, k, q);
        for (int i = 0; i < p.dim; ++i) wJ = std::max(wJ, relResidual(jFlow.vec[i], Jc[i]));
        wQ = std::max(wQ, relResidual(jFlow.scalar, closedQReal(p, k, q)));
        maxSteps = std::max(maxSteps, std::max(kFlow.steps, jFlow.steps));

        const std::vector<double> round = closedKinv(p, Kc);
        for (int i = 0; i < p.dim; ++i) wRound = std::max(wRound, relResidual(round[i], k[i]));

        const std::vector<double> degen = closedJ(p, k, zero);
        for (int i = 0; i < p.dim; ++i) wDegen = std::max(wDegen, relResidual(degen[i], Kc[i]));
    }

    const double worst = std::max({wK, wG, wJ, wQ, wRound, wDegen});
    CheckReport r = numericReport(
        "ode_oracle", Family::R, u, worst < tol, worst, samples, tol,
        "; K " + fmt(wK) + ", g " + fmt(wG) + ", J " + fmt(wJ) + ", Q " + fmt(wQ) +
            ", Kinv(K(k))=k " + fmt(wRound) + ", J(k,0)=K(k) " + fmt(wDegen) +
            ", finest grid " + std::to_string(maxSteps) + " steps");
    r.family = "";  // the flow maps are family-independent
    return r;
}

CheckReport checkAmplitudePin() {
    StarParams p(0.5, 1.0, {1.0, 0.0});
    const std::vector<double> k{1.0, 0.0}, q{1.0, 0.0};
    const PlaneWaveProduct pw = starKernel(p, k, q, Family::R);
    const double err = std::abs(pw.amplitude - 0.8);
    CheckReport r;
    r.check = "star_amplitude";
    r.family = familyName(Family::R);
    r.u = "1/2";
    r.pass = err <= 1e-12;
    r.detail = "amplitude(u=1/2, kappa=1, v.k=v.q=1) = " + fmt(pw.amplitude) +
               ", |amplitude - 4/5| = " + fmt(err) + " (tol 1e-12)";
    return r;
}

CheckReport coproductConsistency(Family f, const Rational& u, const Config& cfg,
                                 double kappa, double withinFactor) {
    cfg.validate();
    const Twist t = buildTwist(f, u, cfg);

    // Fixed, deterministic probe momenta well inside the domain: the scaling
    // window is tightest when |v.k|/kappa is small but the residual still
    // clears the double-precision floor.
    std::vector<double> k(cfg.dim), q(cfg.dim);
    for (int i = 0; i < cfg.dim; ++i) {
        k[i] = kappa * 0.125 / (1 + i);
        q[i] = kappa * 0.09 * ((i % 2 == 0) ? 1.0 : -1.0) / (1 + i);
    }

    std::vector<UTensor> sym;
    sym.reserve(cfg.dim);
    for (int mu = 0; mu < cfg.dim; ++mu)
        sym.push_back(hopf::twistedCoproduct(t, makeP(cfg, mu)));

    auto residualAt = [&](double kap) {
        const StarParams p = StarParams::fromConfig(cfg, u, kap);
        const PlaneWaveProduct exact = starKernel(p, k, q, f);
        double worst = 0.0;
        for (int mu = 0; mu < cfg.dim; ++mu) {
            const double num = evalMomentum(sym[mu], k, q, kap);
            worst = std::max(worst, std::abs(num - exact.dvec[mu]));
        }
        return worst;
    };

    const double r1 = residualAt(kappa);
    const double r2 = residualAt(2.0 * kappa);
    const double expected = std::pow(2.0, cfg.order + 1);

    CheckReport r;
    r.check = "coproduct_consistency";
    r.family = familyName(f);
    r.u = toString(u);
    r.order = cfg.order;

    if (r1 < 1e-13 && r2 < 1e-13) {
        // Truncation error identically zero at this u: the closed composition
        // law is a polynomial the symbolic expansion reproduces exactly.
        r.pass = true;
        r.detail = "residuals " + fmt(r1) + " / " + fmt(r2) +
                   " at the double-precision floor; truncation exact at this u, "
                   "scaling ratio unresolved";
        return r;
    }

    const double ratio = r1 / r2;
    r.pass = ratio >= expected * (1.0 - withinFactor) && ratio <= expected * (1.0 + withinFactor);
    r.detail = "residual(kappa) " + fmt(r1) + ", residual(2 kappa) " + fmt(r2) +
               ", ratio " + fmt(ratio) + ", expected 2^(N+1) = " + fmt(expected) +
               " within " + fmt(100.0 * withinFactor) + "%";
    return r;
}

void gaussHermite(int order, std::vector<double>& nodes, std::vector<double>& weights) {
    if (order < 1) throw std::invalid_argument("quadrature order must be >= 1");
    nodes.assign(order, 0.0);
    weights.assign(order, 0.0);
    const int half = (order + 1) / 2;
    const double piQuartInv = 0.7511255444649425;  // pi^(-1/4)
    double z = 0.0;
    for (int i = 0; i < half; ++i) {
        // Initial guesses: asymptotic for the outermost root, then stepping
        // inward from the roots already found.
        if (i == 0) {
            z = std::sqrt(2.0 * order + 1.0) - 1.85575 * std::pow(2.0 * order + 1.0, -1.0 / 6.0);
        } else if (i == 1) {
            z -= 1.14 * std::pow(order, 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * nodes[0];
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * nodes[1];
        } else {
            z = 2.0 * z - nodes[i - 2];
        }
        double pp = 0.0;
        bool converged = false;
        for (int iter = 0; iter < 100; ++iter) {
            // Orthonormal Hermite recurrence w.r.t. exp(-t^2).
            double p1 = piQuartInv, p2 = 0.0;
            for (int j = 0; j < order; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(double(j) / (j + 1)) * p3;
            }
            pp = std::sqrt(2.0 * order) * p2;
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) <= 1e-15 * std::max(1.0, std::abs(z))) {
                converged = true;
                break;
            }
        }
        if (!converged) throw ConvergenceError("gauss-hermite node iteration stalled");
        nodes[i] = z;
        nodes[order - 1 - i] = -z;
        weights[i] = 2.0 / (pp * pp);
        weights[order - 1 - i] = weights[i];
    }
}

namespace {

void validatePacket(const StarParams& p, const GaussianPacket& g, const char* name) {
    if (static_cast<int>(g.center.size()) != p.dim ||
        static_cast<int>(g.width.size()) != p.dim)
        throw std::invalid_argument(std::string(name) + ": packet center/width must have dim components");
    requireFinite(g.center, name);
    for (double w : g.width)
        if (!std::isfinite(w) || w <= 0.0)
            throw std::invalid_argument(std::string(name) + ": packet widths must be positive");
}

/// Gaussian upper tail P(X > x0) for X ~ N(m, s^2).
double gaussTail(double m, double s, double x0) {
    return 0.5 * std::erfc((x0 - m) / (s * std::sqrt(2.0)));
}

/// Spectral mass of the packet violating the kernel guards for its slot.
/// slotK: the packet feeds the k slot (guard 1-(1-u)(v.k)/kappa > 0),
/// otherwise the q slot (guard 1+u(v.q)/kappa > 0); both share the mixed
/// guard, bounded via the split |v.k|,|v.q| < kappa/sqrt(|u(1-u)|).
double domainTailMass(const StarParams& p, const GaussianPacket& g, bool slotK) {
    double m = 0.0, var = 0.0;
    for (int i = 0; i < p.dim; ++i) {
        m += p.v[i] * g.center[i];
        var += p.v[i] * p.v[i] * g.width[i] * g.width[i];
    }
    const double s = std::sqrt(var);
    if (s == 0.0) return 0.0;
    const double u = p.u, w = 1.0 - p.u;
    double mass = 0.0;
    if (slotK) {
        if (w > 0.0) mass += gaussTail(m, s, p.kappa / w);           // v.k too large
        if (w < 0.0) mass += gaussTail(-m, s, -p.kappa / w);         // v.k too small
    } else {
        if (u > 0.0) mass += gaussTail(-m, s, p.kappa / u);          // v.q too small
        if (u < 0.0) mass += gaussTail(m, s, -p.kappa / u);          // v.q too large
    }
    const double uw = std::abs(u * w);
    if (uw > 0.0) {
        const double T = p.kappa / std::sqrt(uw);
        mass += gaussTail(m, s, T) + gaussTail(-m, s, T);
    }
    return mass;
}

/// Tensor quadrature grid for one packet: order^dim points with transformed
/// coordinates c + sqrt(2) sigma t and the product Hermite weights.
struct PacketGrid {
    std::vector<std::vector<double>> points;
    std::vector<double> weights;
};

PacketGrid packetGrid(const StarParams& p, const GaussianPacket& g, int order) {
    std::vector<double> t, w;
    gaussHermite(order, t, w);
    PacketGrid grid;
    std::size_t total = 1;
    for (int i = 0; i < p.dim; ++i) total *= static_cast<std::size_t>(order);
    grid.points.reserve(total);
    grid.weights.reserve(total);
    std::vector<int> idx(p.dim, 0);
    for (;;) {
        std::vector<double> pt(p.dim);
        double wt = 1.0;
        for (int i = 0; i < p.dim; ++i) {
            pt[i] = g.center[i] + std::sqrt(2.0) * g.width[i] * t[idx[i]];
            wt *= w[idx[i]];
        }
        grid.points.push_back(std::move(pt));
        grid.weights.push_back(wt);
        int i = 0;
        while (i < p.dim && ++idx[i] == order) idx[i++] = 0;
        if (i == p.dim) break;
    }
    return grid;
}

std::complex<double> packetSignal(const GaussianPacket& g, std::span<const double> x) {
    double phase = 0.0, damp = 0.0;
    for (std::size_t i = 0; i < g.center.size(); ++i) {
        phase += g.center[i] * x[i];
        damp += 0.5 * g.width[i] * g.width[i] * x[i] * x[i];
    }
    return std::exp(std::complex<double>(-damp, phase));
}

}  // namespace

WavePacketResult wavePacketStar(const StarParams& p, Family f,
                                const GaussianPacket& a, const GaussianPacket& b,
                                std::span<const double> x, int quadOrder) {
    validatePacket(p, a, "first packet");
    validatePacket(p, b, "second packet");
    if (static_cast<int>(x.size()) != p.dim)
        throw std::invalid_argument("x must have dim components");
    requireFinite(x, "x");
    if (std::pow(double(quadOrder), 2.0 * p.dim) > 4e8)
        throw std::invalid_argument("quadrature grid too large for this dimension");

    WavePacketResult out;
    out.tailMass = domainTailMass(p, a, true) + domainTailMass(p, b, false);
    if (out.tailMass > 1e-6)
        throw DomainError("wave packet spectral mass outside the kernel domain stays below 1e-6");

    const PacketGrid ga = packetGrid(p, a, quadOrder);
    const PacketGrid gb = packetGrid(p, b, quadOrder);
    const double norm = std::pow(M_PI, -double(p.dim));

    std::complex<double> acc(0.0, 0.0);
    for (std::size_t ia = 0; ia < ga.points.size(); ++ia) {
        for (std::size_t ib = 0; ib < gb.points.size(); ++ib) {
            const PlaneWaveProduct pw = starKernel(p, ga.points[ia], gb.points[ib], f);
            double phase = 0.0;
            for (int i = 0; i < p.dim; ++i) phase += pw.dvec[i] * x[i];
            acc += ga.weights[ia] * gb.weights[ib] * pw.amplitude *
                   std::exp(std::complex<double>(0.0, phase));
        }
    }
    out.value = norm * acc;
    out.pointwise = packetSignal(a, x) * packetSignal(b, x);
    return out;
}

std::complex<double> kernelAction(const StarParams& p, Family f,
                                  const GaussianPacket& a, std::span<const double> q,
                                  std::span<const double> x, int quadOrder) {
    validatePacket(p, a, "packet");
    if (static_cast<int>(x.size()) != p.dim || static_cast<int>(q.size()) != p.dim)
        throw std::invalid_argument("q and x must have dim components");
    requireFinite(q, "q");
    requireFinite(x, "x");

    const PacketGrid ga = packetGrid(p, a, quadOrder);
    const double norm = std::pow(M_PI, -0.5 * p.dim);
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t ia = 0; ia < ga.points.size(); ++ia) {
        const PlaneWaveProduct pw = starKernel(p, ga.points[ia], q, f);
        double phase = 0.0;
        for (int i = 0; i < p.dim; ++i) phase += pw.dvec[i] * x[i];
        acc += ga.weights[ia] * pw.amplitude * std::exp(std::complex<double>(0.0, phase));
    }
    return norm * acc;
}

}  // namespace jtwist::star
