#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>

#include "jtwist/config.hpp"
#include "jtwist/rational.hpp"

namespace jtwist {

/// Raised on structural misuse: dimension or truncation-order mismatch,
/// exponent overflow, invalid arguments to algebra operations.
struct AlgebraError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One tensor leg in normal (PBW) order: P0^p[0] .. P{n-1}^p[n-1] D^d.
struct Mono {
    std::array<uint16_t, kMaxDim> p{};
    uint16_t d = 0;

    friend auto operator<=>(const Mono&, const Mono&) = default;

    bool isUnit() const {
        if (d != 0) return false;
        for (auto e : p)
            if (e != 0) return false;
        return true;
    }
    /// Total P-degree |a| = sum of P exponents.
    int pTotal() const {
        int s = 0;
        for (auto e : p) s += e;
        return s;
    }
    bool hasD() const { return d != 0; }

    static Mono unit() { return Mono{}; }
    static Mono P(int mu) {
        Mono m;
        m.p[mu] = 1;
        return m;
    }
    static Mono D() {
        Mono m;
        m.d = 1;
        return m;
    }
};

/// Key of one stored term: power m of 1/kappa plus L normal-ordered legs.
template <int L>
struct TermKey {
    int32_t kappa = 0;
    std::array<Mono, L> legs{};

    friend auto operator<=>(const TermKey&, const TermKey&) = default;
};

/// Truncated formal series in 1/kappa with GaussianRational coefficients over
/// normal-ordered monomials in L tensor legs (L = 1, 2, 3). All operations are
/// exact; terms with kappa power above the truncation order are discarded,
/// zero coefficients are never stored. Value semantics throughout.
template <int L>
class Series {
public:
    static_assert(L >= 1 && L <= 3);
    using Key = TermKey<L>;
    using Map = std::map<Key, GaussianRational>;

    Series() = default;
    Series(int dim, int order) : dim_(dim), order_(order) {
        if (dim < 1 || dim > kMaxDim) throw AlgebraError("Series dim out of range");
        if (order < 0) throw AlgebraError("Series order must be >= 0");
    }

    static Series zero(const Config& c) { return Series(c.dim, c.order); }
    static Series unit(const Config& c) {
        Series s(c.dim, c.order);
        s.terms_.emplace(Key{}, GaussianRational::unit());
        return s;
    }

    int dim() const { return dim_; }
    int order() const { return order_; }
    bool isZero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const Map& terms() const { return terms_; }

    /// Accumulate one term; silently drops kappa powers beyond the truncation
    /// order and erases cancelled entries.
    void addTerm(const Key& k, const GaussianRational& c) {
        if (k.kappa > order_) return;
        if (k.kappa < 0) throw AlgebraError("negative kappa power");
        if (c.isZero()) return;
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.isZero()) terms_.erase(it);
        }
    }

    Series& operator+=(const Series& o) {
        requireShape(o, "add");
        for (const auto& [k, c] : o.terms_) addTerm(k, c);
        return *this;
    }
    Series& operator-=(const Series& o) {
        requireShape(o, "subtract");
        for (const auto& [k, c] : o.terms_) addTerm(k, -c);
        return *this;
    }
    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }
    Series operator-() const {
        Series r(dim_, order_);
        for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
        return r;
    }

    Series scaled(const GaussianRational& c) const {
        Series r(dim_, order_);
        if (c.isZero()) return r;
        for (const auto& [k, v] : terms_) r.terms_.emplace(k, v * c);
        return r;
    }

    /// Multiply by c * kappa^-dm (dm >= 0).
    Series shiftedKappa(int dm, const GaussianRational& c = GaussianRational::unit()) const;

    friend Series operator*(const Series& a, const Series& b) { return multiply(a, b); }
    static Series multiply(const Series& a, const Series& b);
    Series pow(unsigned long e) const;

    /// Lowest kappa power carrying a nonzero term; order()+1 when the series
    /// is zero.
    int minKappa() const {
        int m = order_ + 1;
        for (const auto& [k, c] : terms_)
            if (k.kappa < m) m = k.kappa;
        return m;
    }

    /// Subseries of terms with kappa power exactly m.
    Series kappaComponent(int m) const {
        Series r(dim_, order_);
        for (const auto& [k, c] : terms_)
            if (k.kappa == m) r.terms_.emplace(k, c);
        return r;
    }

    /// Drop terms above newOrder and declare the tighter truncation.
    Series truncatedTo(int newOrder) const {
        Series r(dim_, newOrder);
        for (const auto& [k, c] : terms_)
            if (k.kappa <= newOrder) r.terms_.emplace(k, c);
        return r;
    }

    /// Re-declare the truncation order without changing content; throws if a
    /// stored term exceeds the new order.
    Series withDeclaredOrder(int newOrder) const {
        Series r(dim_, newOrder);
        for (const auto& [k, c] : terms_) {
            if (k.kappa > newOrder)
                throw AlgebraError("withDeclaredOrder would discard a stored term");
            r.terms_.emplace(k, c);
        }
        return r;
    }

    bool sameShape(const Series& o) const { return dim_ == o.dim_ && order_ == o.order_; }

    friend bool operator==(const Series& a, const Series& b) {
        return a.dim_ == b.dim_ && a.order_ == b.order_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Series& a, const Series& b) { return !(a == b); }

private:
    int dim_ = 0;
    int order_ = 0;
    Map terms_;

    void requireShape(const Series& o, const char* op) const {
        if (dim_ != o.dim_) throw AlgebraError(std::string("dimension mismatch in ") + op);
        if (order_ != o.order_)
            throw AlgebraError(std::string("truncation-order mismatch in ") + op);
    }
};

using UElement = Series<1>;
using UTensor = Series<2>;
using UTensor3 = Series<3>;

/// Swap the two legs of every term: tau(x (x) y) = y (x) x.
UTensor flip(const UTensor& t);

/// Substitute kappa -> -kappa: negate coefficients of odd kappa powers.
template <int L>
Series<L> kappaFlip(const Series<L>& s);

/// The antilinear anti-automorphism * with P_mu* = P_mu, D* = -D applied to
/// every leg, coefficients complex-conjugated. Re-normal-orders each leg.
template <int L>
Series<L> conjugateStar(const Series<L>& s);

extern template class Series<1>;
extern template class Series<2>;
extern template class Series<3>;

}  // namespace jtwist
