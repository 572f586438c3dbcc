#pragma once

#include "tlf/matrix.hpp"
#include "tlf/ratfun.hpp"

namespace tlf {

// Ore polynomials in the twist tau with matrix coefficients:
// sum_i B_i tau^i, with tau B = B^{(1)} tau (entrywise q-power Frobenius).
template <class R>
struct TwistedPoly {
    typename R::Ctx cx{};
    size_t n = 1; // matrix size
    std::vector<Matrix<R>> c;

    TwistedPoly() = default;
    TwistedPoly(typename R::Ctx cx_, size_t n_) : cx(cx_), n(n_) {}

    static TwistedPoly zero(typename R::Ctx cx, size_t n) { return TwistedPoly(cx, n); }
    static TwistedPoly one(typename R::Ctx cx, size_t n) {
        TwistedPoly t(cx, n);
        t.c.push_back(Matrix<R>::identity(cx, n));
        return t;
    }
    static TwistedPoly of(const Matrix<R>& m, size_t tau_deg = 0) {
        require(m.nr == m.nc, "twisted coefficients must be square");
        TwistedPoly t(m.cx, m.nr);
        t.c.assign(tau_deg + 1, Matrix<R>(m.cx, m.nr, m.nr));
        t.c[tau_deg] = m;
        t.normalize();
        return t;
    }

    void normalize() {
        auto is_zero_mat = [](const Matrix<R>& m) {
            for (auto& x : m.a)
                if (!x.is_zero()) return false;
            return true;
        };
        while (!c.empty() && is_zero_mat(c.back())) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    long deg_tau() const { return (long)c.size() - 1; }
    Matrix<R> coeff(size_t i) const {
        return i < c.size() ? c[i] : Matrix<R>(cx, n, n);
    }

    TwistedPoly operator+(const TwistedPoly& o) const {
        require(n == o.n, "size mismatch");
        TwistedPoly t(cx, n);
        t.c.assign(std::max(c.size(), o.c.size()), Matrix<R>(cx, n, n));
        for (size_t i = 0; i < t.c.size(); ++i) {
            if (i < c.size()) t.c[i] = t.c[i] + c[i];
            if (i < o.c.size()) t.c[i] = t.c[i] + o.c[i];
        }
        t.normalize();
        return t;
    }
    TwistedPoly operator-() const {
        TwistedPoly t = *this;
        for (auto& m : t.c) m = Matrix<R>(cx, n, n) - m;
        return t;
    }
    TwistedPoly operator-(const TwistedPoly& o) const { return *this + (-o); }
    TwistedPoly operator*(const TwistedPoly& o) const {
        require(n == o.n, "size mismatch");
        TwistedPoly t(cx, n);
        if (is_zero() || o.is_zero()) return t;
        t.c.assign(c.size() + o.c.size() - 1, Matrix<R>(cx, n, n));
        for (size_t i = 0; i < c.size(); ++i)
            for (size_t j = 0; j < o.c.size(); ++j)
                t.c[i + j] = t.c[i + j] + c[i] * o.c[j].frob((unsigned)i);
        t.normalize();
        return t;
    }
    bool operator==(const TwistedPoly& o) const { return n == o.n && c == o.c; }
    bool operator!=(const TwistedPoly& o) const { return !(*this == o); }

    TwistedPoly pow(unsigned long k) const {
        TwistedPoly r = one(cx, n), b = *this;
        while (k) {
            if (k & 1) r = r * b;
            b = b * b;
            k >>= 1;
        }
        return r;
    }
};

// Coefficients E_0 = I, E_1, ..., E_count of the exponential attached to
// phi_theta = A_0 + A_1 tau + ... + A_r tau^r. Determined degree by degree
// from exp * A_0 = phi_theta * exp:
//   E_m A_0^{(m)} - A_0 E_m = sum_{i=1..min(m,r)} A_i E_{m-i}^{(i)}
// a Sylvester equation solved as an n^2 x n^2 linear system over the
// (field-like) coefficient ring.
template <class R>
std::vector<Matrix<R>> exp_coefficients(const std::vector<Matrix<R>>& A, size_t count) {
    require(!A.empty(), "empty module data");
    auto cx = A[0].cx;
    size_t n = A[0].nr;
    std::vector<Matrix<R>> E;
    E.push_back(Matrix<R>::identity(cx, n));
    size_t r = A.size() - 1;
    for (size_t m = 1; m <= count; ++m) {
        Matrix<R> rhs(cx, n, n);
        for (size_t i = 1; i <= std::min(m, r); ++i)
            rhs = rhs + A[i] * E[m - i].frob((unsigned)i);
        Matrix<R> A0m = A[0].frob((unsigned)m);
        // unknowns X(a,b) laid out row-major: X A0m - A0 X = rhs
        Matrix<R> sys(cx, n * n, n * n);
        std::vector<R> b(n * n, R::zero(cx));
        for (size_t a = 0; a < n; ++a)
            for (size_t bcol = 0; bcol < n; ++bcol) {
                size_t row = a * n + bcol;
                b[row] = rhs(a, bcol);
                for (size_t k = 0; k < n; ++k) {
                    sys(row, a * n + k) += A0m(k, bcol);
                    sys(row, k * n + bcol) -= A[0](a, k);
                }
            }
        auto x = solve(sys, b);
        Matrix<R> Em(cx, n, n);
        for (size_t a = 0; a < n; ++a)
            for (size_t bcol = 0; bcol < n; ++bcol) Em(a, bcol) = x[a * n + bcol];
        E.push_back(Em);
    }
    return E;
}

// Composition inverse of the exponential: L_0 = I,
// L_m = -sum_{i=1..m} E_i L_{m-i}^{(i)}.
template <class R>
std::vector<Matrix<R>> log_coefficients(const std::vector<Matrix<R>>& E, size_t count) {
    require(!E.empty(), "empty exponential data");
    auto cx = E[0].cx;
    size_t n = E[0].nr;
    std::vector<Matrix<R>> L;
    L.push_back(Matrix<R>::identity(cx, n));
    for (size_t m = 1; m <= count; ++m) {
        Matrix<R> s(cx, n, n);
        for (size_t i = 1; i <= m; ++i) {
            if (i >= E.size()) break;
            s = s + E[i] * L[m - i].frob((unsigned)i);
        }
        L.push_back(Matrix<R>(cx, n, n) - s);
    }
    return L;
}

// Carlitz exponential coefficients e_0 = 1, e_i = e_{i-1}^q / (theta^{q^i} - theta),
// as exact rational functions. v_inf(e_i) = i q^i.
inline std::vector<RatFq> carlitz_exp_coeffs(const FqField* F, size_t count) {
    PolyCtx<Fq> cx{F, Var::theta};
    std::vector<RatFq> e;
    e.push_back(RatFq::one(cx));
    for (size_t i = 1; i <= count; ++i) {
        RatFq prev = e.back().frob(1);
        PolyFq den = PolyFq::one(cx).shifted((long)upow(F->q, i)) - PolyFq::gen(cx);
        e.push_back(prev * RatFq::of(den).inv());
    }
    return e;
}

} // namespace tlf
