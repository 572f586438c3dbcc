#pragma once

#include "tlf/ring.hpp"

#include <optional>
#include <vector>

namespace tlf {

// Dense matrix over a commutative ring R (value-semantic, row major).
template <class R>
struct Matrix {
    using Ctx = typename R::Ctx;

    Ctx cx{};
    size_t nr = 0, nc = 0;
    std::vector<R> a;

    Matrix() = default;
    Matrix(Ctx cx_, size_t r, size_t c) : cx(cx_), nr(r), nc(c), a(r * c, R::zero(cx_)) {}

    static Matrix identity(Ctx cx, size_t n) {
        Matrix m(cx, n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = R::one(cx);
        return m;
    }

    R& operator()(size_t i, size_t j) { return a[i * nc + j]; }
    const R& operator()(size_t i, size_t j) const { return a[i * nc + j]; }

    bool operator==(const Matrix& o) const { return nr == o.nr && nc == o.nc && a == o.a; }

    Matrix operator+(const Matrix& o) const {
        require(nr == o.nr && nc == o.nc, "matrix shape mismatch");
        Matrix m = *this;
        for (size_t i = 0; i < a.size(); ++i) m.a[i] = a[i] + o.a[i];
        return m;
    }
    Matrix operator-(const Matrix& o) const {
        require(nr == o.nr && nc == o.nc, "matrix shape mismatch");
        Matrix m = *this;
        for (size_t i = 0; i < a.size(); ++i) m.a[i] = a[i] - o.a[i];
        return m;
    }
    Matrix operator*(const Matrix& o) const {
        require(nc == o.nr, "matrix shape mismatch");
        Matrix m(cx, nr, o.nc);
        for (size_t i = 0; i < nr; ++i)
            for (size_t k = 0; k < nc; ++k) {
                const R& x = (*this)(i, k);
                if (x.is_zero()) continue;
                for (size_t j = 0; j < o.nc; ++j) {
                    const R& y = o(k, j);
                    if (y.is_zero()) continue;
                    m(i, j) += x * y;
                }
            }
        return m;
    }
    Matrix scaled(const R& s) const {
        Matrix m = *this;
        for (auto& x : m.a) x = x * s;
        return m;
    }
    std::vector<R> apply(const std::vector<R>& v) const {
        require(v.size() == nc, "matrix/vector shape mismatch");
        std::vector<R> r(nr, R::zero(cx));
        for (size_t i = 0; i < nr; ++i)
            for (size_t j = 0; j < nc; ++j)
                if (!a[i * nc + j].is_zero() && !v[j].is_zero()) r[i] += a[i * nc + j] * v[j];
        return r;
    }
    template <class F>
    Matrix map(F f) const {
        Matrix m = *this;
        for (auto& x : m.a) x = f(x);
        return m;
    }
    Matrix frob(unsigned r) const {
        return map([r](const R& x) { return x.frob(r); });
    }
};

// Characteristic polynomial det(X*I - M) by the Samuelson-Berkowitz scheme:
// division free, so it works over any commutative ring (group rings included).
// Returned coefficients are descending: out[0] = 1, out[k] = coeff of X^{n-k}.
template <class R>
std::vector<R> berkowitz_charpoly(const Matrix<R>& M) {
    require(M.nr == M.nc, "charpoly of a non-square matrix");
    size_t n = M.nr;
    R zero = R::zero(M.cx), one = R::one(M.cx);
    std::vector<R> c{one};
    for (size_t r = 1; r <= n; ++r) {
        // Toeplitz column for the leading r x r principal block
        std::vector<R> t((size_t)r + 1, zero);
        t[0] = one;
        t[1] = -M(r - 1, r - 1);
        if (r >= 2) {
            std::vector<R> v(r - 1);
            for (size_t i = 0; i < r - 1; ++i) v[i] = M(i, r - 1);
            for (size_t k = 2; k <= r; ++k) {
                R dot = zero;
                for (size_t i = 0; i < r - 1; ++i)
                    if (!M(r - 1, i).is_zero() && !v[i].is_zero()) dot += M(r - 1, i) * v[i];
                t[k] = -dot;
                if (k < r) {
                    std::vector<R> w(r - 1, zero);
                    for (size_t i = 0; i < r - 1; ++i)
                        for (size_t j = 0; j < r - 1; ++j)
                            if (!M(i, j).is_zero() && !v[j].is_zero()) w[i] += M(i, j) * v[j];
                    v = std::move(w);
                }
            }
        }
        std::vector<R> nc((size_t)r + 1, zero);
        for (size_t i = 0; i <= r; ++i)
            for (size_t j = 0; j <= i && j < t.size(); ++j) {
                if (t[j].is_zero() || i - j >= c.size()) continue;
                nc[i] += t[j] * c[i - j];
            }
        c = std::move(nc);
    }
    return c;
}

template <class R>
R det(const Matrix<R>& M) {
    if (M.nr == 0) return R::one(M.cx);
    std::vector<R> c = berkowitz_charpoly(M);
    R d = c.back(); // det(0*I - M) = (-1)^n det(M)
    if (M.nr % 2) d = -d;
    return d;
}

// Solve A x = b over field-like coefficients (Gauss, partial pivot on units).
// Throws if the system is singular or inconsistent.
template <class R>
std::vector<R> solve(Matrix<R> A, std::vector<R> b) {
    require(A.nr == A.nc && b.size() == A.nr, "solve expects a square system");
    size_t n = A.nr;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && A(piv, col).is_zero()) ++piv;
        require(piv < n, "singular system");
        if (piv != col) {
            for (size_t j = 0; j < n; ++j) std::swap(A(col, j), A(piv, j));
            std::swap(b[col], b[piv]);
        }
        R inv = ring_inv(A(col, col));
        for (size_t j = col; j < n; ++j) A(col, j) = A(col, j) * inv;
        b[col] = b[col] * inv;
        for (size_t i = 0; i < n; ++i) {
            if (i == col || A(i, col).is_zero()) continue;
            R f = A(i, col);
            for (size_t j = col; j < n; ++j) A(i, j) = A(i, j) - f * A(col, j);
            b[i] = b[i] - f * b[col];
        }
    }
    return b;
}

// Rank over field-like coefficients; destroys its copy.
template <class R>
size_t rank_of(Matrix<R> A) {
    size_t r = 0;
    for (size_t col = 0; col < A.nc && r < A.nr; ++col) {
        size_t piv = r;
        while (piv < A.nr && A(piv, col).is_zero()) ++piv;
        if (piv == A.nr) continue;
        if (piv != r)
            for (size_t j = 0; j < A.nc; ++j) std::swap(A(r, j), A(piv, j));
        R inv = ring_inv(A(r, col));
        for (size_t j = col; j < A.nc; ++j) A(r, j) = A(r, j) * inv;
        for (size_t i = 0; i < A.nr; ++i) {
            if (i == r || A(i, col).is_zero()) continue;
            R f = A(i, col);
            for (size_t j = col; j < A.nc; ++j) A(i, j) = A(i, j) - f * A(r, j);
        }
        ++r;
    }
    return r;
}

// Solve a possibly rectangular system A x = b over field-like coefficients;
// nullopt when inconsistent, one solution (least columns used) when
// underdetermined.
template <class R>
std::optional<std::vector<R>> try_solve_rect(Matrix<R> A, std::vector<R> b) {
    require(b.size() == A.nr, "solve_rect shape mismatch");
    size_t n = A.nr, m = A.nc, r = 0;
    std::vector<size_t> pivot_col;
    for (size_t col = 0; col < m && r < n; ++col) {
        size_t piv = r;
        while (piv < n && A(piv, col).is_zero()) ++piv;
        if (piv == n) continue;
        if (piv != r) {
            for (size_t j = 0; j < m; ++j) std::swap(A(r, j), A(piv, j));
            std::swap(b[r], b[piv]);
        }
        R inv = ring_inv(A(r, col));
        for (size_t j = col; j < m; ++j) A(r, j) = A(r, j) * inv;
        b[r] = b[r] * inv;
        for (size_t i = 0; i < n; ++i) {
            if (i == r || A(i, col).is_zero()) continue;
            R f = A(i, col);
            for (size_t j = col; j < m; ++j) A(i, j) = A(i, j) - f * A(r, j);
            b[i] = b[i] - f * b[r];
        }
        pivot_col.push_back(col);
        ++r;
    }
    for (size_t i = r; i < n; ++i)
        if (!b[i].is_zero()) return std::nullopt;
    std::vector<R> x(m, R::zero(A.cx));
    for (size_t i = 0; i < r; ++i) x[pivot_col[i]] = b[i];
    return x;
}

template <class R>
std::vector<R> solve_rect(Matrix<R> A, std::vector<R> b) {
    auto x = try_solve_rect(std::move(A), std::move(b));
    require(x.has_value(), "inconsistent linear system");
    return *x;
}

// Inverse over a commutative ring via Cayley-Hamilton: the only division is by
// det(M), which must be a unit. Elimination would need unit pivots, which
// group rings cannot promise even for invertible matrices.
template <class R>
Matrix<R> inverse_via_charpoly(const Matrix<R>& M) {
    require(M.nr == M.nc, "inverse of a non-square matrix");
    size_t n = M.nr;
    std::vector<R> c = berkowitz_charpoly(M); // descending, c[0] = 1
    require(ring_is_unit(c[n]), "matrix determinant is not a unit");
    Matrix<R> S = Matrix<R>::identity(M.cx, n);
    for (size_t k = 1; k < n; ++k) {
        S = S * M;
        for (size_t i = 0; i < n; ++i) S(i, i) += c[k];
    }
    R f = -ring_inv(c[n]);
    for (auto& a : S.a) a = a * f;
    return S;
}

} // namespace tlf
