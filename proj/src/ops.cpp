#include "jtwist/ops.hpp"

#include <cmath>
#include <map>

namespace jtwist {

UElement unitElement(const Config& c) { return UElement::unit(c); }

UElement makeP(const Config& c, int mu) {
    if (mu < 0 || mu >= c.dim) throw AlgebraError("makeP: index out of range");
    UElement e(c.dim, c.order);
    e.addTerm({0, {Mono::P(mu)}}, GaussianRational::unit());
    return e;
}

UElement makeD(const Config& c) {
    UElement e(c.dim, c.order);
    e.addTerm({0, {Mono::D()}}, GaussianRational::unit());
    return e;
}

UElement monoElement(const Config& c, const Mono& m, int kappaPow, const GaussianRational& coeff) {
    UElement e(c.dim, c.order);
    e.addTerm({kappaPow, {m}}, coeff);
    return e;
}

UElement contractedP(const Config& c, int kappaShift) {
    UElement e(c.dim, c.order);
    for (int mu = 0; mu < c.dim; ++mu)
        e.addTerm({kappaShift, {Mono::P(mu)}}, GaussianRational(c.v[mu]));
    return e;
}

UTensor unitTensor(const Config& c) { return UTensor::unit(c); }

UTensor tensorProduct(const UElement& a, const UElement& b) {
    if (a.dim() != b.dim() || a.order() != b.order())
        throw AlgebraError("tensorProduct: shape mismatch");
    UTensor r(a.dim(), a.order());
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms())
            r.addTerm({ka.kappa + kb.kappa, {ka.legs[0], kb.legs[0]}}, ca * cb);
    return r;
}

UTensor3 unitTriple(const Config& c) { return UTensor3::unit(c); }

namespace {

/// Extends generator images to the whole algebra as a (anti-)homomorphism.
/// The image of P0^a0 .. D^b is the ordered product of generator-image powers;
/// for an anti-homomorphism the order is reversed. Caches monomial images.
template <class T>
class Extender {
public:
    Extender(std::vector<T> pImg, T dImg, bool antihom)
        : pImg_(std::move(pImg)), dImg_(std::move(dImg)), antihom_(antihom) {
        unit_ = T(dImg_.dim(), dImg_.order());
        unit_.addTerm({}, GaussianRational::unit());
    }

    const T& image(const Mono& m) {
        auto it = cache_.find(m);
        if (it != cache_.end()) return it->second;
        T img = unit_;
        if (!antihom_) {
            for (int mu = 0; mu < static_cast<int>(pImg_.size()); ++mu)
                for (int e = 0; e < m.p[mu]; ++e) img = T::multiply(img, pImg_[mu]);
            for (int e = 0; e < m.d; ++e) img = T::multiply(img, dImg_);
        } else {
            for (int e = 0; e < m.d; ++e) img = T::multiply(img, dImg_);
            for (int mu = static_cast<int>(pImg_.size()) - 1; mu >= 0; --mu)
                for (int e = 0; e < m.p[mu]; ++e) img = T::multiply(img, pImg_[mu]);
        }
        return cache_.emplace(m, std::move(img)).first->second;
    }

private:
    std::vector<T> pImg_;
    T dImg_, unit_;
    bool antihom_;
    std::map<Mono, T> cache_;
};

}  // namespace

UTensor coproduct(const UElement& x) {
    Config c(x.dim(), x.order());
    UElement one = unitElement(c);
    std::vector<UTensor> pImg;
    for (int mu = 0; mu < c.dim; ++mu) {
        UElement p = makeP(c, mu);
        pImg.push_back(tensorProduct(p, one) + tensorProduct(one, p));
    }
    UElement d = makeD(c);
    Extender<UTensor> ext(std::move(pImg), tensorProduct(d, one) + tensorProduct(one, d), false);
    UTensor r(x.dim(), x.order());
    for (const auto& [k, coeff] : x.terms()) {
        for (const auto& [ik, ic] : ext.image(k.legs[0]).terms()) {
            TermKey<2> nk = ik;
            nk.kappa += k.kappa;
            r.addTerm(nk, coeff * ic);
        }
    }
    return r;
}

UElement counitScalar(const UElement& x) {
    UElement r(x.dim(), x.order());
    for (const auto& [k, c] : x.terms())
        if (k.legs[0].isUnit()) r.addTerm(k, c);
    return r;
}

UElement antipode(const UElement& x) {
    Config c(x.dim(), x.order());
    std::vector<UElement> pImg;
    for (int mu = 0; mu < c.dim; ++mu) pImg.push_back(-makeP(c, mu));
    Extender<UElement> ext(std::move(pImg), -makeD(c), true);
    UElement r(x.dim(), x.order());
    for (const auto& [k, coeff] : x.terms()) {
        for (const auto& [ik, ic] : ext.image(k.legs[0]).terms()) {
            TermKey<1> nk = ik;
            nk.kappa += k.kappa;
            r.addTerm(nk, coeff * ic);
        }
    }
    return r;
}

UTensor mapLeg(const UTensor& t, int leg, const MonoMap& f) {
    if (leg < 0 || leg > 1) throw AlgebraError("mapLeg: leg must be 0 or 1");
    UTensor r(t.dim(), t.order());
    std::map<Mono, UElement> cache;
    for (const auto& [k, c] : t.terms()) {
        auto it = cache.find(k.legs[leg]);
        if (it == cache.end()) it = cache.emplace(k.legs[leg], f(k.legs[leg])).first;
        for (const auto& [ik, ic] : it->second.terms()) {
            TermKey<2> nk = k;
            nk.kappa += ik.kappa;
            nk.legs[leg] = ik.legs[0];
            r.addTerm(nk, c * ic);
        }
    }
    return r;
}

UElement multiplyLegs(const UTensor& t) {
    Config c(t.dim(), t.order());
    UElement r(t.dim(), t.order());
    for (const auto& [k, coeff] : t.terms()) {
        UElement prod = UElement::multiply(monoElement(c, k.legs[0]), monoElement(c, k.legs[1]));
        for (const auto& [ik, ic] : prod.terms()) {
            TermKey<1> nk = ik;
            nk.kappa += k.kappa;
            r.addTerm(nk, coeff * ic);
        }
    }
    return r;
}

MonoMap antipodeMonoMap(const Config& c) {
    return [c](const Mono& m) { return antipode(monoElement(c, m)); };
}

UTensor3 extendToTriple(const UTensor& t, TripleMode mode) {
    UTensor3 r(t.dim(), t.order());
    switch (mode) {
        case TripleMode::TensorUnitRight:
            for (const auto& [k, c] : t.terms())
                r.addTerm({k.kappa, {k.legs[0], k.legs[1], Mono::unit()}}, c);
            return r;
        case TripleMode::TensorUnitLeft:
            for (const auto& [k, c] : t.terms())
                r.addTerm({k.kappa, {Mono::unit(), k.legs[0], k.legs[1]}}, c);
            return r;
        case TripleMode::CoproductLeft:
        case TripleMode::CoproductRight: {
            const int leg = (mode == TripleMode::CoproductLeft) ? 0 : 1;
            Config cfg(t.dim(), t.order());
            std::map<Mono, UTensor> cache;
            for (const auto& [k, c] : t.terms()) {
                auto it = cache.find(k.legs[leg]);
                if (it == cache.end())
                    it = cache.emplace(k.legs[leg], coproduct(monoElement(cfg, k.legs[leg]))).first;
                for (const auto& [ik, ic] : it->second.terms()) {
                    TermKey<3> nk;
                    nk.kappa = k.kappa + ik.kappa;
                    if (leg == 0) {
                        nk.legs = {ik.legs[0], ik.legs[1], k.legs[1]};
                    } else {
                        nk.legs = {k.legs[0], ik.legs[0], ik.legs[1]};
                    }
                    r.addTerm(nk, c * ic);
                }
            }
            return r;
        }
    }
    throw AlgebraError("extendToTriple: bad mode");
}

UTensor3 embed13(const UTensor& t) {
    UTensor3 r(t.dim(), t.order());
    for (const auto& [k, c] : t.terms())
        r.addTerm({k.kappa, {k.legs[0], Mono::unit(), k.legs[1]}}, c);
    return r;
}

UElement counitLeg(const UTensor& t, int leg) {
    if (leg < 0 || leg > 1) throw AlgebraError("counitLeg: leg must be 0 or 1");
    UElement r(t.dim(), t.order());
    for (const auto& [k, c] : t.terms())
        if (k.legs[leg].isUnit()) r.addTerm({k.kappa, {k.legs[1 - leg]}}, c);
    return r;
}

double evalMomentum(const UTensor& t, std::span<const double> k, std::span<const double> q,
                    double kappa) {
    if (static_cast<int>(k.size()) != t.dim() || static_cast<int>(q.size()) != t.dim())
        throw AlgebraError("evalMomentum: momentum size mismatch");
    if (kappa == 0.0) throw AlgebraError("evalMomentum: kappa must be nonzero");
    double acc = 0.0;
    for (const auto& [key, c] : t.terms()) {
        if (key.legs[0].hasD() || key.legs[1].hasD())
            throw AlgebraError("evalMomentum requires a D-free tensor");
        if (!c.isReal()) throw AlgebraError("evalMomentum requires real coefficients");
        double v = c.re.get_d() * std::pow(kappa, -key.kappa);
        for (int mu = 0; mu < t.dim(); ++mu) {
            for (int e = 0; e < key.legs[0].p[mu]; ++e) v *= k[mu];
            for (int e = 0; e < key.legs[1].p[mu]; ++e) v *= q[mu];
        }
        acc += v;
    }
    return acc;
}

}  // namespace jtwist
