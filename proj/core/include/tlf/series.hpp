#pragma once

#include <optional>

#include "tlf/poly.hpp"

namespace tlf {

// Truncated Laurent series in theta^{-1} with exact precision bookkeeping.
//
// A value is "known modulo theta^{-(N+1)}": every coefficient of theta^k with
// k >= -N is stored exactly, the rest are unknown. Storage is ascending from
// `lo` = -N; the top stored coefficient is nonzero (a series that is zero to
// its precision has empty storage). Arithmetic propagates the largest floor
// that the inputs can certify, so reported precision is always a guarantee.
template <class R>
struct SeriesCtx {
    typename R::Ctx coeff;
    long prec = 0; // default working precision for minted constants
    bool operator==(const SeriesCtx& o) const { return coeff == o.coeff && prec == o.prec; }
};

template <class R>
struct Series {
    using Coeff = R;
    using Ctx = SeriesCtx<R>;

    typename R::Ctx ccx{};
    long lo = 0;        // lowest known exponent (= -precision)
    std::vector<R> c;   // c[i] = coefficient of theta^{lo+i}; back() nonzero

    Series() = default;
    Series(typename R::Ctx ccx_, long lo_) : ccx(ccx_), lo(lo_) {}

    Ctx ctx() const { return Ctx{ccx, precision()}; }
    static Series zero(Ctx cx) { return Series(cx.coeff, -cx.prec); }
    static Series one(Ctx cx) { return constant(cx, R::one(cx.coeff)); }
    static Series constant(Ctx cx, const R& a) {
        Series s(cx.coeff, -cx.prec);
        if (a.is_zero() || -cx.prec > 0) return s;
        s.c.assign((size_t)(0 - s.lo + 1), R::zero(cx.coeff));
        s.c.back() = a;
        return s;
    }

    long precision() const { return -lo; }
    bool is_zero() const { return c.empty(); }       // zero to stated precision
    bool is_one() const {
        if (c.empty() || hi() != 0) return false;
        if (!(c.back() == R::one(ccx))) return false;
        for (size_t i = 0; i + 1 < c.size(); ++i)
            if (!c[i].is_zero()) return false;
        return true;
    }
    long hi() const {
        require(!c.empty(), "hi of zero series");
        return lo + (long)c.size() - 1;
    }
    long hi_eff() const { return c.empty() ? lo - 1 : hi(); }
    uint64_t base_q() const { return R::zero(ccx).base_q(); }
    R czero() const { return R::zero(ccx); }

    void normalize() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }

    R coeff_at(long exp) const {
        require(exp >= lo, "coefficient below known precision");
        long i = exp - lo;
        if (i >= (long)c.size()) return czero();
        return c[(size_t)i];
    }

    // valuation at infinity v(theta^k) = -k; for a series that is zero to its
    // precision this is only the lower bound precision()+1
    long v_inf_lower() const { return c.empty() ? precision() + 1 : -hi(); }
    std::optional<long> v_inf() const {
        if (c.empty()) return std::nullopt;
        return -hi();
    }

    static Series from_poly(const Poly<R>& p, long N) {
        require(p.cx.var == Var::theta, "series embedding expects a theta-polynomial");
        Series s(p.cx.coeff, -N);
        if (p.is_zero() || p.deg() < s.lo) return s;
        s.c.assign((size_t)(p.deg() - s.lo + 1), s.czero());
        for (long e = std::max(s.lo, 0L); e <= p.deg(); ++e) s.c[(size_t)(e - s.lo)] = p.coeff(e);
        s.normalize();
        return s;
    }

    Series truncated(long N) const { // reduce precision to N
        if (-N <= lo) return *this;
        Series s(ccx, -N);
        if (!c.empty() && hi() >= s.lo) {
            s.c.assign((size_t)(hi() - s.lo + 1), czero());
            for (long e = s.lo; e <= hi(); ++e) s.c[(size_t)(e - s.lo)] = coeff_at(e);
            s.normalize();
        }
        return s;
    }

    Series operator-() const {
        Series s = *this;
        for (auto& a : s.c) a = -a;
        return s;
    }
    Series operator+(const Series& o) const {
        require(ccx == o.ccx, "series context mismatch");
        Series s(ccx, std::max(lo, o.lo));
        long top = std::max(hi_eff(), o.hi_eff());
        if (top >= s.lo) {
            s.c.assign((size_t)(top - s.lo + 1), czero());
            for (long e = s.lo; e <= top; ++e) {
                R a = (e >= lo) ? coeff_at(e) : czero();
                R b = (e >= o.lo) ? o.coeff_at(e) : czero();
                s.c[(size_t)(e - s.lo)] = a + b;
            }
            s.normalize();
        }
        return s;
    }
    Series operator-(const Series& o) const { return *this + (-o); }
    Series operator*(const Series& o) const {
        require(ccx == o.ccx, "series context mismatch");
        long new_lo = std::max(lo + o.hi_eff(), o.lo + hi_eff());
        Series s(ccx, new_lo);
        if (c.empty() || o.c.empty()) return s;
        long top = hi() + o.hi();
        if (top < new_lo) return s;
        s.c.assign((size_t)(top - new_lo + 1), czero());
        for (size_t i = 0; i < c.size(); ++i) {
            if (c[i].is_zero()) continue;
            long ei = lo + (long)i;
            for (size_t j = 0; j < o.c.size(); ++j) {
                if (o.c[j].is_zero()) continue;
                long e = ei + o.lo + (long)j;
                if (e < new_lo) continue;
                s.c[(size_t)(e - new_lo)] += c[i] * o.c[j];
            }
        }
        s.normalize();
        return s;
    }
    Series& operator+=(const Series& o) { return *this = *this + o; }
    Series& operator-=(const Series& o) { return *this = *this - o; }
    Series& operator*=(const Series& o) { return *this = *this * o; }

    // exact equality: same knowledge, same values
    bool operator==(const Series& o) const { return ccx == o.ccx && lo == o.lo && c == o.c; }
    bool operator!=(const Series& o) const { return !(*this == o); }

    Series scaled(const R& a) const {
        Series s = *this;
        for (auto& x : s.c) x = x * a;
        s.normalize();
        return s;
    }
    Series shifted(long k) const { // multiply by theta^k (exact monomial)
        Series s = *this;
        s.lo += k;
        return s;
    }

    Series frob(unsigned r) const {
        if (r == 0) return *this;
        uint64_t Q = 1, q = base_q();
        for (unsigned i = 0; i < r; ++i) Q *= q;
        Series s(ccx, (lo - 1) * (long)Q + 1);
        if (c.empty()) return s;
        long top = hi() * (long)Q;
        s.c.assign((size_t)(top - s.lo + 1), czero());
        for (size_t i = 0; i < c.size(); ++i) {
            if (c[i].is_zero()) continue;
            long e = (lo + (long)i) * (long)Q;
            s.c[(size_t)(e - s.lo)] = c[i].frob(r);
        }
        s.normalize();
        return s;
    }

    std::string str() const {
        std::ostringstream os;
        if (c.empty()) {
            os << "O(theta^" << lo - 1 << ")";
            return os.str();
        }
        bool first = true;
        for (long e = hi(); e >= lo; --e) {
            R a = coeff_at(e);
            if (a.is_zero()) continue;
            if (!first) os << " + ";
            first = false;
            std::string cs = Poly<R>::to_coeff_string(a);
            bool unit_one = (a == R::one(ccx));
            if (e == 0) {
                os << cs;
            } else {
                if (!unit_one) os << cs << "*";
                os << "theta";
                if (e != 1) os << "^" << e;
            }
        }
        if (first) os << "0";
        os << " + O(theta^" << lo - 1 << ")";
        return os.str();
    }
};

template <class R>
std::ostream& operator<<(std::ostream& os, const Series<R>& s) {
    return os << s.str();
}

// agreement on the overlap of known coefficients
template <class R>
bool approx_eq(const Series<R>& a, const Series<R>& b) {
    long floor = std::max(a.lo, b.lo);
    long top = std::max(a.hi_eff(), b.hi_eff());
    for (long e = floor; e <= top; ++e)
        if (!(a.coeff_at(e) == b.coeff_at(e))) return false;
    return true;
}

// multiplicative inverse; the top stored coefficient must be a unit of R.
// Relative precision is preserved: the result is known mod theta^{lo - 2*hi - 1}.
template <class R>
Series<R> series_invert(const Series<R>& f) {
    require(!f.c.empty(), "cannot invert a series that is zero to precision");
    const R& top = f.c.back();
    require(ring_is_unit(top), "series inversion needs a unit leading coefficient");
    long d = f.hi();
    long rp = d - f.lo; // number of known coefficients below the top
    R t0 = ring_inv(top);
    // u = f * theta^{-d} has constant term `top`; invert u as a power series in theta^{-1}
    std::vector<R> w((size_t)rp + 1, R::zero(f.ccx));
    w[0] = t0;
    for (long k = 1; k <= rp; ++k) {
        R acc = R::zero(f.ccx);
        for (long j = 1; j <= k; ++j) {
            R uj = f.coeff_at(d - j); // coefficient of X^j in u
            if (uj.is_zero()) continue;
            acc += uj * w[(size_t)(k - j)];
        }
        w[(size_t)k] = -(t0 * acc);
    }
    Series<R> s(f.ccx, -d - rp);
    s.c.assign((size_t)rp + 1, R::zero(f.ccx));
    for (long k = 0; k <= rp; ++k) s.c[(size_t)(rp - k)] = w[(size_t)k]; // exp -d-k
    s.normalize();
    return s;
}

// series expansion of a rational function in theta to precision N
template <class R>
Series<R> series_of_ratio(const Poly<R>& num, const Poly<R>& den, long N) {
    require(!den.is_zero(), "series_of_ratio: zero denominator");
    long slack = 2 * den.deg() + std::max(0L, num.deg()) + 2;
    Series<R> d = Series<R>::from_poly(den, N + slack);
    Series<R> n = Series<R>::from_poly(num, N + slack);
    return (n * series_invert(d)).truncated(N);
}

} // namespace tlf
