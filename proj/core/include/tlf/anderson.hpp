#pragma once

#include "tlf/series.hpp"
#include "tlf/twisted.hpp"

#include <limits>

namespace tlf {

// Entries of module coefficient matrices: polynomials in the deformation
// variable z with rational-function-in-theta coefficients. Undeformed
// modules simply have z-degree 0 everywhere.
using Kz = Poly<RatFun<Fq>>;

inline PolyCtx<RatFun<Fq>> kz_ctx(const FqField* F) {
    return PolyCtx<RatFun<Fq>>{PolyCtx<Fq>{F, Var::theta}, Var::z};
}
inline Kz kz_scalar(const FqField* F, const RatFun<Fq>& a) {
    return Kz::constant(kz_ctx(F), a);
}
inline Kz kz_theta(const FqField* F) {
    return kz_scalar(F, RatFun<Fq>::of(PolyFq::gen(PolyCtx<Fq>{F, Var::theta})));
}

// phi_E: F_q[theta] -> M_n(K){tau}, theta |-> A_0 + A_1 tau + ... + A_r tau^r
// with (A_0 - theta I)^n = 0.
struct AndersonModule {
    const FqField* F = nullptr;
    size_t n = 1;
    std::vector<Matrix<Kz>> A;
    bool deformed = false;

    static AndersonModule carlitz(const FqField* F) {
        AndersonModule E;
        E.F = F;
        E.n = 1;
        Matrix<Kz> a0(kz_ctx(F), 1, 1), a1(kz_ctx(F), 1, 1);
        a0(0, 0) = kz_theta(F);
        a1(0, 0) = Kz::one(kz_ctx(F));
        E.A = {a0, a1};
        E.check_invariants();
        return E;
    }

    // tensor power of the Carlitz module: A_0 = theta I + N (superdiagonal 1s),
    // A_1 = lower-left 1; used by tests that need n > 1
    static AndersonModule carlitz_tensor(const FqField* F, size_t n) {
        AndersonModule E;
        E.F = F;
        E.n = n;
        Matrix<Kz> a0(kz_ctx(F), n, n), a1(kz_ctx(F), n, n);
        for (size_t i = 0; i < n; ++i) {
            a0(i, i) = kz_theta(F);
            if (i + 1 < n) a0(i, i + 1) = Kz::one(kz_ctx(F));
        }
        a1(n - 1, 0) = Kz::one(kz_ctx(F));
        E.A = {a0, a1};
        E.check_invariants();
        return E;
    }

    void check_invariants() const {
        require(!A.empty() && A[0].nr == n && A[0].nc == n, "bad module data");
        auto cx = A[0].cx;
        Matrix<Kz> nil = A[0];
        for (size_t i = 0; i < n; ++i) nil(i, i) -= kz_theta(F);
        Matrix<Kz> pw = Matrix<Kz>::identity(cx, n);
        for (size_t i = 0; i < n; ++i) pw = pw * nil;
        for (auto& x : pw.a) require(x.is_zero(), "A_0 - theta I is not nilpotent of order n");
    }

    unsigned r() const { return (unsigned)A.size() - 1; }

    AndersonModule z_deform() const {
        require(!deformed, "already deformed");
        AndersonModule E = *this;
        E.deformed = true;
        for (size_t i = 1; i < E.A.size(); ++i)
            for (auto& x : E.A[i].a) x = x.shifted((long)i);
        return E;
    }

    // specialize z -> v
    AndersonModule at_z(const RatFun<Fq>& v) const {
        AndersonModule E = *this;
        E.deformed = false;
        for (auto& m : E.A)
            for (auto& x : m.a) x = Kz::constant(kz_ctx(F), x.eval(v));
        // trailing zero matrices are harmless; keep r intact
        return E;
    }

    TwistedPoly<Kz> phi_theta() const {
        TwistedPoly<Kz> t(kz_ctx(F), n);
        t.c = A;
        t.normalize();
        return t;
    }

    // phi_a for a in A, via the ring homomorphism property
    TwistedPoly<Kz> phi(const PolyFq& a) const {
        auto cx = kz_ctx(F);
        TwistedPoly<Kz> acc = TwistedPoly<Kz>::zero(cx, n);
        TwistedPoly<Kz> pw = TwistedPoly<Kz>::one(cx, n);
        TwistedPoly<Kz> pt = phi_theta();
        for (long j = 0; j <= a.deg(); ++j) {
            if (!a.coeff(j).is_zero()) {
                Matrix<Kz> cj = Matrix<Kz>::identity(cx, n).scaled(kz_scalar(F, RatFun<Fq>::of(
                    PolyFq::constant(PolyCtx<Fq>{F, Var::theta}, a.coeff(j)))));
                acc = acc + TwistedPoly<Kz>::of(cj) * pw;
            }
            if (j < a.deg()) pw = pw * pt;
        }
        return acc;
    }

    // Lie action delta_E(a) = a(A_0), z-free by the invariant
    Matrix<RatFun<Fq>> lie(const PolyFq& a) const {
        PolyCtx<Fq> tcx{F, Var::theta};
        Matrix<RatFun<Fq>> A0(tcx, n, n);
        for (size_t i = 0; i < n * n; ++i) {
            require(A[0].a[i].deg() <= 0, "A_0 must be z-free");
            A0.a[i] = A[0].a[i].coeff(0);
        }
        Matrix<RatFun<Fq>> acc(tcx, n, n), pw = Matrix<RatFun<Fq>>::identity(tcx, n);
        for (long j = 0; j <= a.deg(); ++j) {
            if (!a.coeff(j).is_zero())
                acc = acc + pw.scaled(RatFun<Fq>::of(PolyFq::constant(tcx, a.coeff(j))));
            if (j < a.deg()) pw = pw * A0;
        }
        return acc;
    }

    // exponential coefficient matrices E_0..E_count over k (undeformed view)
    std::vector<Matrix<RatFun<Fq>>> exp_coeffs(size_t count) const {
        PolyCtx<Fq> tcx{F, Var::theta};
        std::vector<Matrix<RatFun<Fq>>> Ak;
        for (auto& m : A) {
            Matrix<RatFun<Fq>> mk(tcx, n, n);
            for (size_t i = 0; i < n * n; ++i) {
                const Kz& x = m.a[i];
                RatFun<Fq> v = RatFun<Fq>::zero(tcx);
                for (long j = 0; j <= x.deg(); ++j) v += x.coeff(j); // z = 1
                mk.a[i] = v;
            }
            Ak.push_back(mk);
        }
        return exp_coefficients(Ak, count);
    }
};

// order of (A/v)^* for irreducible v: q^deg(v) - 1; used for modular
// inversion by powering
inline uint64_t modulus_unit_order(const PolyFq& v) {
    uint64_t q = v.cx.coeff->q, t = 1;
    for (long i = 0; i < v.deg(); ++i) {
        require(t <= (uint64_t(1) << 62) / q, "modulus too large");
        t *= q;
    }
    return t - 1;
}

// act on a vector with entries in A/v: phi_a applied with reductions mod v
inline PolyFq act_mod(const AndersonModule& E, const PolyFq& a, const PolyFq& x,
                      const PolyFq& v) {
    require(E.n == 1, "act_mod is for 1-dimensional modules");
    auto tw = E.phi(a);
    PolyCtx<Fq> tcx{E.F, Var::theta};
    PolyFq acc = PolyFq::zero(tcx);
    PolyFq xp = x % v;
    for (long i = 0; i <= tw.deg_tau(); ++i) {
        const Kz& cz = tw.coeff((size_t)i)(0, 0);
        RatFun<Fq> ci = RatFun<Fq>::zero(tcx);
        for (long j = 0; j <= cz.deg(); ++j) ci += cz.coeff(j); // z = 1
        if (!ci.is_zero()) {
            PolyFq den = ci.den % v;
            require(!den.is_zero() && !poly_gcd(ci.den, v).deg(), "denominator not coprime to v");
            // invert den mod v by extended powering: den^(q^d - 1... use gcd-based inverse
            PolyFq num = ci.num % v;
            PolyFq deninv = powmod(den, modulus_unit_order(v) - 1, v);
            acc = (acc + num * deninv % v * xp) % v;
        }
        xp = powmod(xp, E.F->q, v);
    }
    return acc % v;
}

// exponential evaluated on a vector of theta^-1 series, certified to precision N:
// y = sum_i E_i x^{(i)}, stopping once the valuation lower bound of every
// remaining term exceeds N with a strictly increasing bound sequence.
inline std::vector<Series<Fq>> exp_eval(const AndersonModule& E,
                                        const std::vector<Series<Fq>>& x, long N) {
    require(x.size() == E.n, "vector size mismatch");
    const FqField* F = E.F;
    SeriesCtx<Fq> scx{F, N};
    long vx = N + 1;
    for (auto& s : x) {
        require(s.precision() >= N, "input precision below target");
        vx = std::min(vx, s.v_inf_lower());
    }
    std::vector<Series<Fq>> y(E.n, Series<Fq>::zero(scx));
    if (vx > N) return y; // zero to precision
    // vx = 0 is allowed: convergence then rests on the coefficient
    // valuations alone, and the rising-bound certificate below still
    // decides (or honestly refuses) termination.
    require(vx >= 0, "exponential argument must be integral at infinity");

    std::vector<Matrix<RatFun<Fq>>> Ei = E.exp_coeffs(0);
    long prev_bound = -1;
    unsigned rising = 0;
    for (unsigned i = 0;; ++i) {
        if (i >= Ei.size()) {
            auto more = E.exp_coeffs(i);
            Ei = std::move(more);
        }
        long vE = 0;
        bool zero = true;
        for (auto& e : Ei[i].a)
            if (!e.is_zero()) {
                long v = e.v_inf();
                vE = zero ? v : std::min(vE, v);
                zero = false;
            }
        long qi = 1;
        for (unsigned j = 0; j < i && qi <= N + 1; ++j) qi *= (long)F->q;
        // vE must stay unclamped: the rising-bound certificate needs the true
        // coefficient valuations, which carry the whole tail when vx = 0.
        long bound = zero ? std::numeric_limits<long>::max() / 2 : vE + qi * vx;
        if (bound > N) {
            if (++rising >= 2 && bound > prev_bound) break;
        } else {
            rising = 0;
            std::vector<Series<Fq>> xi;
            for (auto& s : x) xi.push_back(s.frob(i).truncated(N));
            for (size_t a = 0; a < E.n; ++a)
                for (size_t b = 0; b < E.n; ++b) {
                    const RatFun<Fq>& c = Ei[i](a, b);
                    if (c.is_zero()) continue;
                    y[a] = y[a] + series_of_ratio(c.num, c.den, N) * xi[b];
                }
        }
        require(i < 64, "exponential tail bound did not certify");
        prev_bound = bound;
    }
    for (auto& s : y) s = s.truncated(N);
    return y;
}

} // namespace tlf
