#pragma once

#include "tlf/ratfun.hpp"

namespace tlf {

// Splitting algebra of x^p - x - 1/theta over k = F_p(theta), extended by a
// (p-1)-st root delta of 1 + theta^{p-1}:
//
//   B = k[alpha, delta],  alpha^p = alpha + 1/theta,  delta^{p-1} = 1 + theta^{p-1}.
//
// Basis alpha^i delta^j with 0 <= i < p, 0 <= j < p-1; at p = 2 the delta part
// collapses (delta = 1 + theta is already in k) and the basis is {1, alpha}.
// tau is the p-power map: semilinear over k (c -> c^p), alpha -> alpha + 1/theta,
// delta -> (1 + theta^{p-1}) delta.  G = Z/p acts by sigma_c: alpha -> alpha + c,
// fixing theta and delta; tau commutes with every sigma_c.

struct ExtAlgebra;

struct AlgElem {
    using K = RatFun<Fq>;
    using Ctx = const ExtAlgebra*;
    Ctx B = nullptr;
    std::vector<K> c; // c[i*nd + j] = coordinate of alpha^i delta^j

    AlgElem() = default;
    explicit AlgElem(Ctx B_);

    static AlgElem zero(Ctx B) { return AlgElem(B); }
    static AlgElem one(Ctx B);
    static AlgElem scalar(Ctx B, const K& a);

    bool is_zero() const {
        for (auto& x : c)
            if (!x.is_zero()) return false;
        return true;
    }
    bool operator==(const AlgElem& o) const { return B == o.B && c == o.c; }
    bool operator!=(const AlgElem& o) const { return !(*this == o); }

    AlgElem operator+(const AlgElem& o) const {
        require(B == o.B, "algebra mismatch");
        AlgElem r = *this;
        for (size_t i = 0; i < c.size(); ++i) r.c[i] = r.c[i] + o.c[i];
        return r;
    }
    AlgElem operator-(const AlgElem& o) const {
        require(B == o.B, "algebra mismatch");
        AlgElem r = *this;
        for (size_t i = 0; i < c.size(); ++i) r.c[i] = r.c[i] - o.c[i];
        return r;
    }
    AlgElem operator-() const {
        AlgElem r = *this;
        for (auto& x : r.c) x = -x;
        return r;
    }
    AlgElem& operator+=(const AlgElem& o) { return *this = *this + o; }
    AlgElem& operator-=(const AlgElem& o) { return *this = *this - o; }
    AlgElem operator*(const AlgElem& o) const;
    AlgElem scaled(const K& a) const {
        AlgElem r = *this;
        for (auto& x : r.c) x = x * a;
        return r;
    }

    std::string str() const;
};

struct ExtAlgebra {
    uint32_t p = 0;
    const FqField* F = nullptr;
    PolyCtx<Fq> kcx;  // F_p[theta]
    size_t nd = 1;   // delta-exponent range (p-1, or 1 when that is 1)
    size_t dim = 0;  // p * nd
    Poly<Fq> one_plus;               // 1 + theta^{p-1}
    RatFun<Fq> inv_theta;            // 1/theta
    std::vector<std::vector<Fq>> binom; // Pascal triangle mod p, rows 0..p-1
    std::vector<AlgElem> tau_basis;     // tau(alpha^i delta^j)

    static const ExtAlgebra* get(uint32_t p);

    size_t idx(size_t i, size_t j) const { return i * nd + j; }

    AlgElem basis(size_t i, size_t j) const {
        require(i < p && j < nd, "basis exponent out of range");
        AlgElem x(this);
        x.c[idx(i, j)] = RatFun<Fq>::one(kcx);
        return x;
    }
    AlgElem alpha() const { return basis(1, 0); }
    // delta as an element: a basis vector for p > 2, the scalar 1 + theta at p = 2
    AlgElem delta() const {
        if (nd > 1) return basis(0, 1);
        return AlgElem::scalar(this, RatFun<Fq>::of(one_plus));
    }
    AlgElem theta() const { return AlgElem::scalar(this, RatFun<Fq>::of(Poly<Fq>::gen(kcx))); }

    // sigma_c: alpha -> alpha + c.  (alpha + c)^i needs no reduction (i < p).
    AlgElem sigma(long cc, const AlgElem& x) const {
        require(x.B == this, "algebra mismatch");
        Fq cf = Fq::from_int(F, cc);
        AlgElem r(this);
        for (size_t i = 0; i < p; ++i)
            for (size_t j = 0; j < nd; ++j) {
                const auto& a = x.c[idx(i, j)];
                if (a.is_zero()) continue;
                Fq cp = Fq::one(F); // cf^{i-m}
                for (size_t m = i + 1; m-- > 0;) {
                    Fq b = binom[i][m] * cp;
                    if (!b.is_zero())
                        r.c[idx(m, j)] = r.c[idx(m, j)] + a * RatFun<Fq>::of(Poly<Fq>::constant(kcx, b));
                    cp = cp * cf;
                }
            }
        return r;
    }

    AlgElem trace_G(const AlgElem& x) const {
        AlgElem s(this);
        for (long cc = 0; cc < (long)p; ++cc) s += sigma(cc, x);
        return s;
    }

    // p-power map; semilinear: tau(c x) = c^(1) tau(x)
    AlgElem tau(const AlgElem& x) const {
        require(x.B == this, "algebra mismatch");
        AlgElem r(this);
        for (size_t i = 0; i < dim; ++i) {
            if (x.c[i].is_zero()) continue;
            r += tau_basis[i].scaled(x.c[i].frob(1));
        }
        return r;
    }

private:
    void init(uint32_t p_);
};

inline AlgElem::AlgElem(Ctx B_) : B(B_), c(B_->dim, K::zero(B_->kcx)) {}

inline AlgElem AlgElem::one(Ctx B) {
    AlgElem x(B);
    x.c[0] = K::one(B->kcx);
    return x;
}

inline AlgElem AlgElem::scalar(Ctx B, const K& a) {
    AlgElem x(B);
    x.c[0] = a;
    return x;
}

inline AlgElem AlgElem::operator*(const AlgElem& o) const {
    require(B == o.B, "algebra mismatch");
    const auto* A = B;
    AlgElem r(A);
    for (size_t i1 = 0; i1 < A->p; ++i1)
        for (size_t j1 = 0; j1 < A->nd; ++j1) {
            const auto& x = c[A->idx(i1, j1)];
            if (x.is_zero()) continue;
            for (size_t i2 = 0; i2 < A->p; ++i2)
                for (size_t j2 = 0; j2 < A->nd; ++j2) {
                    const auto& y = o.c[A->idx(i2, j2)];
                    if (y.is_zero()) continue;
                    K s = x * y;
                    size_t i = i1 + i2, j = j1 + j2;
                    if (j >= A->nd) { // delta^{p-1} = 1 + theta^{p-1}
                        j -= A->nd;
                        s = s * K::of(A->one_plus);
                    }
                    if (i >= A->p) { // alpha^{p+t} = alpha^{t+1} + alpha^t/theta
                        size_t t = i - A->p;
                        r.c[A->idx(t + 1, j)] = r.c[A->idx(t + 1, j)] + s;
                        r.c[A->idx(t, j)] = r.c[A->idx(t, j)] + s * A->inv_theta;
                    } else {
                        r.c[A->idx(i, j)] = r.c[A->idx(i, j)] + s;
                    }
                }
        }
    return r;
}

inline std::string AlgElem::str() const {
    if (is_zero()) return "0";
    std::string s;
    for (size_t i = 0; i < B->p; ++i)
        for (size_t j = 0; j < B->nd; ++j) {
            const auto& x = c[B->idx(i, j)];
            if (x.is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += "(" + x.str() + ")";
            if (i) s += "*a" + (i > 1 ? "^" + std::to_string(i) : "");
            if (j) s += "*d" + (j > 1 ? "^" + std::to_string(j) : "");
        }
    return s;
}

} // namespace tlf
