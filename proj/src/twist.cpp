#include "jtwist/twist.hpp"

namespace jtwist {

std::string familyName(Family f) {
    switch (f) {
        case Family::F0: return "F0";
        case Family::F1: return "F1";
        case Family::L: return "L";
        case Family::R: return "R";
        case Family::LR: return "LR";
    }
    return "?";
}

Family parseFamily(const std::string& name) {
    if (name == "F0") return Family::F0;
    if (name == "F1") return Family::F1;
    if (name == "L") return Family::L;
    if (name == "R") return Family::R;
    if (name == "LR") return Family::LR;
    throw AlgebraError("unknown family: " + name);
}

UElement omegaExponent(Family f, const Rational& u, const Config& cfg) {
    UElement D = makeD(cfg);
    UElement P = contractedP(cfg);
    switch (f) {
        case Family::L:
            return UElement::multiply(D, P).shiftedKappa(1, GaussianRational(-u));
        case Family::R:
            return UElement::multiply(P, D).shiftedKappa(1, GaussianRational(-u));
        case Family::LR: {
            UElement dp = UElement::multiply(D, P) + UElement::multiply(P, D);
            Rational half = -u / 2;
            return dp.shiftedKappa(1, GaussianRational(half));
        }
        default:
            throw AlgebraError("omegaExponent: family carries no coboundary factor");
    }
}

namespace {

Twist buildF0(const Config& cfg) {
    UElement Pk = contractedP(cfg, 1);  // P/kappa
    UElement X = -log1pSeries(-Pk);     // -ln(1 - P/kappa)
    UTensor arg = tensorProduct(X, makeD(cfg));
    Twist t;
    t.family = Family::F0;
    t.u = 0;
    t.cfg = cfg;
    t.F = expSeries(arg);
    t.Finv = expSeries(-arg);
    return t;
}

Twist conjugated(Family fam, const Rational& u, const Config& cfg) {
    UElement X = omegaExponent(fam, u, cfg);
    UElement one = unitElement(cfg);
    UTensor bothLegs = tensorProduct(X, one) + tensorProduct(one, X);
    UTensor copX = coproduct(X);
    Twist base = buildF0(cfg);
    Twist t;
    t.family = fam;
    t.u = u;
    t.cfg = cfg;
    t.F = expSeries(-bothLegs) * base.F * expSeries(copX);
    t.Finv = expSeries(-copX) * base.Finv * expSeries(bothLegs);
    return t;
}

}  // namespace

Twist buildTwist(Family f, const Rational& u, const Config& cfg) {
    cfg.validate();
    switch (f) {
        case Family::F0:
            return buildF0(cfg);
        case Family::F1: {
            // F1 is the kappa-reflected flip of F0.
            Twist base = buildF0(cfg);
            Twist t;
            t.family = Family::F1;
            t.u = 1;
            t.cfg = cfg;
            t.F = kappaFlip(flip(base.F));
            t.Finv = kappaFlip(flip(base.Finv));
            return t;
        }
        case Family::L:
        case Family::R:
        case Family::LR:
            return conjugated(f, u, cfg);
    }
    throw AlgebraError("buildTwist: bad family");
}

Twist coboundaryConjugate(const Twist& base, const UElement& X) {
    UElement omega = expSeries(X);
    UElement omegaInv = expSeries(-X);
    Twist t;
    t.family = base.family;
    t.u = base.u;
    t.cfg = base.cfg;
    t.F = tensorProduct(omegaInv, omegaInv) * base.F * coproduct(omega);
    t.Finv = coproduct(omegaInv) * base.Finv * tensorProduct(omega, omega);
    return t;
}

RMatrix rMatrix(const Twist& t) {
    RMatrix r;
    r.matrix = flip(t.F) * t.Finv;
    r.classicalPart = r.matrix.kappaComponent(1);
    return r;
}

UTensor omegaTensor(const Config& cfg, const Rational& u) {
    UElement P = contractedP(cfg);
    Rational c = u * (1 - u);
    return unitTensor(cfg) + tensorProduct(P, P).shiftedKappa(2, GaussianRational(c));
}

bool rSymmetric(const Twist& t, UTensor* symmetricPart) {
    UTensor f1 = t.F.kappaComponent(1);
    UTensor sym = f1 + flip(f1);
    bool ok = sym.isZero();
    if (symmetricPart) *symmetricPart = std::move(sym);
    return ok;
}

}  // namespace jtwist
