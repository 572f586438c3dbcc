#pragma once

#include "tlf/poly.hpp"

namespace tlf {

// Rational function num/den over a polynomial ring with field coefficients.
// Canonical form: gcd(num, den) = 1 and den monic (zero is 0/1).
template <class R>
struct RatFun {
    using P = Poly<R>;
    using Ctx = typename P::Ctx;

    P num, den;

    RatFun() = default;
    explicit RatFun(Ctx cx) : num(P::zero(cx)), den(P::one(cx)) {}
    RatFun(P n, P d) : num(std::move(n)), den(std::move(d)) { reduce(); }
    static RatFun of(const P& p) { return RatFun(p, P::one(p.cx)); }

    Ctx ctx() const { return num.cx; }
    static RatFun zero(Ctx cx) { return RatFun(cx); }
    static RatFun one(Ctx cx) { return RatFun(P::one(cx), P::one(cx)); }
    uint64_t base_q() const { return num.base_q(); }

    void reduce() {
        require(!den.is_zero(), "zero denominator");
        if (num.is_zero()) {
            den = P::one(num.cx);
            return;
        }
        P g = poly_gcd(num, den);
        if (g.deg() > 0) {
            num = num / g;
            den = den / g;
        }
        if (!den.is_monic()) {
            R l = ring_inv(den.lead());
            num = num.scaled(l);
            den = den.scaled(l);
        }
    }

    bool is_zero() const { return num.is_zero(); }
    bool is_one() const { return num.is_one() && den.is_one(); }
    bool is_polynomial() const { return den.is_one(); }

    RatFun operator-() const {
        RatFun r = *this;
        r.num = -r.num;
        return r;
    }
    RatFun operator+(const RatFun& o) const { return RatFun(num * o.den + o.num * den, den * o.den); }
    RatFun operator-(const RatFun& o) const { return RatFun(num * o.den - o.num * den, den * o.den); }
    RatFun operator*(const RatFun& o) const { return RatFun(num * o.num, den * o.den); }
    RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
    RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
    RatFun& operator*=(const RatFun& o) { return *this = *this * o; }
    bool operator==(const RatFun& o) const { return num == o.num && den == o.den; }
    bool operator!=(const RatFun& o) const { return !(*this == o); }

    bool is_unit() const { return !num.is_zero(); }
    RatFun inv() const {
        require(!num.is_zero(), "division by zero rational function");
        return RatFun(den, num);
    }

    RatFun frob(unsigned r) const {
        RatFun out = *this;
        out.num = out.num.frob(r);
        out.den = out.den.frob(r);
        out.reduce();
        return out;
    }

    // valuation at infinity: deg den - deg num (for var theta this is v_inf)
    long v_inf() const {
        require(!is_zero(), "v_inf of zero");
        return den.deg() - num.deg();
    }

    std::string str() const {
        if (is_polynomial()) return num.str();
        std::ostringstream os;
        os << "(" << num.str() << ")/(" << den.str() << ")";
        return os.str();
    }
};

template <class R>
std::ostream& operator<<(std::ostream& os, const RatFun<R>& f) {
    return os << f.str();
}

template <class R>
bool ring_is_unit(const RatFun<R>& a) { return a.is_unit(); }
template <class R>
RatFun<R> ring_inv(const RatFun<R>& a) { return a.inv(); }

using RatFq = RatFun<Fq>; // F_q(theta) or F_q(z) depending on the context var

} // namespace tlf
