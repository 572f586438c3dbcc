#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "tlf/ring.hpp"

namespace tlf {

// Polynomial variables. Frobenius twisting x -> x^{q^r} raises theta-powers
// and fixes z and Z (and the generic x), matching the semantics of the
// coefficient rings it is used with.
enum class Var : uint8_t { theta, z, Z, x };

inline const char* var_name(Var v) {
    switch (v) {
        case Var::theta: return "theta";
        case Var::z: return "z";
        case Var::Z: return "Z";
        default: return "x";
    }
}

template <class R>
struct PolyCtx {
    typename R::Ctx coeff;
    Var var = Var::theta;
    bool operator==(const PolyCtx& o) const { return coeff == o.coeff && var == o.var; }
};

// Dense univariate polynomial over R, coefficients ascending, normalized so
// the back coefficient is nonzero (zero polynomial has empty storage).
template <class R>
struct Poly {
    using Coeff = R;
    using Ctx = PolyCtx<R>;

    Ctx cx;
    std::vector<R> c;

    Poly() = default;
    explicit Poly(Ctx cx_) : cx(cx_) {}
    Poly(Ctx cx_, std::vector<R> coeffs) : cx(cx_), c(std::move(coeffs)) { normalize(); }

    Ctx ctx() const { return cx; }
    static Poly zero(Ctx cx) { return Poly(cx); }
    static Poly one(Ctx cx) { return constant(cx, R::one(cx.coeff)); }
    static Poly constant(Ctx cx, const R& a) {
        Poly p(cx);
        if (!a.is_zero()) p.c.push_back(a);
        return p;
    }
    static Poly gen(Ctx cx) { // the variable itself
        Poly p(cx);
        p.c = {R::zero(cx.coeff), R::one(cx.coeff)};
        return p;
    }

    void normalize() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }

    bool is_zero() const { return c.empty(); }
    long deg() const { return (long)c.size() - 1; } // -1 for zero
    R coeff(long i) const {
        if (i < 0 || i >= (long)c.size()) return R::zero(cx.coeff);
        return c[(size_t)i];
    }
    const R& lead() const {
        require(!c.empty(), "lead of zero polynomial");
        return c.back();
    }
    R czero() const { return R::zero(cx.coeff); }
    uint64_t base_q() const { return R::zero(cx.coeff).base_q(); }

    bool is_one() const { return c.size() == 1 && c[0] == R::one(cx.coeff); }
    bool is_monic() const { return !c.empty() && c.back() == R::one(cx.coeff); }

    Poly operator-() const {
        Poly r = *this;
        for (auto& a : r.c) a = -a;
        return r;
    }
    Poly operator+(const Poly& o) const {
        require(cx == o.cx, "polynomial context mismatch");
        Poly r(cx);
        r.c.resize(std::max(c.size(), o.c.size()), czero());
        for (size_t i = 0; i < r.c.size(); ++i) {
            R a = i < c.size() ? c[i] : czero();
            R b = i < o.c.size() ? o.c[i] : czero();
            r.c[i] = a + b;
        }
        r.normalize();
        return r;
    }
    Poly operator-(const Poly& o) const { return *this + (-o); }
    Poly operator*(const Poly& o) const {
        require(cx == o.cx, "polynomial context mismatch");
        if (c.empty() || o.c.empty()) return Poly(cx);
        Poly r(cx);
        r.c.assign(c.size() + o.c.size() - 1, czero());
        for (size_t i = 0; i < c.size(); ++i) {
            if (c[i].is_zero()) continue;
            for (size_t j = 0; j < o.c.size(); ++j) {
                if (o.c[j].is_zero()) continue;
                r.c[i + j] += c[i] * o.c[j];
            }
        }
        r.normalize();
        return r;
    }
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    bool operator==(const Poly& o) const { return cx == o.cx && c == o.c; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly scaled(const R& a) const {
        Poly r(cx);
        if (a.is_zero()) return r;
        r.c = c;
        for (auto& x : r.c) x = x * a;
        r.normalize();
        return r;
    }
    Poly shifted(long k) const { // multiply by var^k, k >= 0
        if (is_zero()) return *this;
        Poly r(cx);
        r.c.assign(c.size() + (size_t)k, czero());
        for (size_t i = 0; i < c.size(); ++i) r.c[i + (size_t)k] = c[i];
        return r;
    }

    R eval(const R& x) const { // Horner
        R acc = czero();
        for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
        return acc;
    }

    Poly frob(unsigned r) const {
        if (r == 0 || is_zero()) return *this;
        if (cx.var != Var::theta) {
            Poly out = *this;
            for (auto& a : out.c) a = a.frob(r);
            out.normalize();
            return out;
        }
        uint64_t Q = 1, q = base_q();
        for (unsigned i = 0; i < r; ++i) Q *= q;
        Poly out(cx);
        out.c.assign((size_t)deg() * Q + 1, czero());
        for (size_t i = 0; i < c.size(); ++i)
            if (!c[i].is_zero()) out.c[i * Q] = c[i].frob(r);
        out.normalize();
        return out;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (size_t i = c.size(); i-- > 0;) {
            if (c[i].is_zero()) continue;
            if (!first) os << " + ";
            first = false;
            std::string cs = to_coeff_string(c[i]);
            bool is_unit_one = (c[i] == R::one(cx.coeff));
            if (i == 0) {
                os << cs;
            } else {
                if (!is_unit_one) os << cs << "*";
                os << var_name(cx.var);
                if (i > 1) os << "^" << i;
            }
        }
        return os.str();
    }

    static std::string to_coeff_string(const R& a) {
        std::ostringstream os;
        bool wrap = needs_parens(a);
        if (wrap) os << "(";
        os << a;
        if (wrap) os << ")";
        return os.str();
    }
    static bool needs_parens(const R& a) {
        std::ostringstream os;
        os << a;
        auto s = os.str();
        return s.find_first_of("+- ") != std::string::npos;
    }
};

template <class R>
std::ostream& operator<<(std::ostream& os, const Poly<R>& p) {
    return os << p.str();
}

// quotient and remainder by a divisor whose leading coefficient is a unit
template <class R>
std::pair<Poly<R>, Poly<R>> divmod(const Poly<R>& a, const Poly<R>& b) {
    require(!b.is_zero(), "division by zero polynomial");
    require(ring_is_unit(b.lead()), "divmod needs a unit leading coefficient");
    Poly<R> q(a.cx), r = a;
    R linv = ring_inv(b.lead());
    long db = b.deg();
    if (r.deg() >= db) q.c.assign((size_t)(r.deg() - db) + 1, r.czero());
    while (r.deg() >= db) {
        long k = r.deg() - db;
        R f = r.lead() * linv;
        q.c[(size_t)k] = f;
        for (long i = 0; i <= db; ++i)
            r.c[(size_t)(k + i)] = r.c[(size_t)(k + i)] - f * b.c[(size_t)i];
        r.normalize();
    }
    q.normalize();
    return {q, r};
}

template <class R>
Poly<R> operator%(const Poly<R>& a, const Poly<R>& b) { return divmod(a, b).second; }
template <class R>
Poly<R> operator/(const Poly<R>& a, const Poly<R>& b) { return divmod(a, b).first; }

template <class R>
Poly<R> make_monic(const Poly<R>& a) {
    if (a.is_zero()) return a;
    return a.scaled(ring_inv(a.lead()));
}

// gcd over field-like coefficients, returned monic
template <class R>
Poly<R> poly_gcd(Poly<R> a, Poly<R> b) {
    while (!b.is_zero()) {
        Poly<R> r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return make_monic(a);
}

template <class R>
Poly<R> powmod(const Poly<R>& base, uint64_t n, const Poly<R>& mod) {
    Poly<R> acc = Poly<R>::one(base.cx) % mod;
    Poly<R> b = base % mod;
    while (n) {
        if (n & 1) acc = (acc * b) % mod;
        b = (b * b) % mod;
        n >>= 1;
    }
    return acc;
}

// --- F_q coefficient specifics ---

using PolyFq = Poly<Fq>;

inline PolyCtx<Fq> theta_ctx(const FqField* F) { return PolyCtx<Fq>{F, Var::theta}; }
inline PolyCtx<Fq> z_ctx(const FqField* F) { return PolyCtx<Fq>{F, Var::z}; }

// units of F_q[x] are the nonzero constants
inline bool ring_is_unit(const PolyFq& a) { return a.deg() == 0 && a.coeff(0).is_unit(); }
inline PolyFq ring_inv(const PolyFq& a) {
    require(ring_is_unit(a), "polynomial is not a unit");
    return PolyFq::constant(a.cx, a.coeff(0).inv());
}

// q^d with d small
inline uint64_t upow(uint64_t q, uint64_t d) {
    uint64_t r = 1;
    while (d--) r *= q;
    return r;
}

inline bool is_irreducible(const PolyFq& f) {
    long d = f.deg();
    if (d <= 0) return false;
    if (d == 1) return true;
    uint64_t q = f.base_q();
    PolyFq x = PolyFq::gen(f.cx);
    PolyFq fm = make_monic(f);
    if (powmod(x, upow(q, (uint64_t)d), fm) != x % fm) return false;
    for (long l = 2; l <= d; ++l) {
        if (d % l) continue;
        bool lp = true;
        for (long t = 2; t * t <= l; ++t)
            if (l % t == 0) { lp = false; break; }
        if (!lp) continue;
        PolyFq g = powmod(x, upow(q, (uint64_t)(d / l)), fm) - x % fm;
        if (poly_gcd(g, fm).deg() != 0) return false;
    }
    return true;
}

// polynomials in one variable over F_q from small integer codes: coefficient
// of x^i is digit i of `code` in base q (value order used by enumerations)
inline PolyFq poly_from_code(PolyCtx<Fq> cx, uint64_t code) {
    PolyFq p(cx);
    uint64_t q = cx.coeff->q;
    while (code) {
        p.c.push_back(Fq(cx.coeff, code % q));
        code /= q;
    }
    // elements of F_{p^e} with e > 1 use packed digit values < q, which the
    // modular arithmetic accepts directly
    p.normalize();
    return p;
}

inline uint64_t poly_to_code(const PolyFq& p) {
    uint64_t code = 0, q = p.cx.coeff->q;
    for (size_t i = p.c.size(); i-- > 0;) code = code * q + p.c[i].v;
    return code;
}

} // namespace tlf
