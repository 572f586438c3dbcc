#pragma once

#include "tlf/extalg.hpp"
#include "tlf/groupring.hpp"
#include "tlf/matrix.hpp"
#include "tlf/primes.hpp"

namespace tlf {

// Free A-lattice inside the extension algebra, given by a k-basis.  Members
// are recognized by decomposing against the basis over k; the lattice accepts
// exactly the elements whose coordinates are polynomials in theta.
struct Lattice {
    const ExtAlgebra* B = nullptr;
    std::string name;
    std::vector<AlgElem> basis;

    std::optional<std::vector<RatFun<Fq>>> try_coords(const AlgElem& x) const {
        require(x.B == B, "algebra mismatch");
        Matrix<RatFun<Fq>> A(B->kcx, B->dim, basis.size());
        for (size_t j = 0; j < basis.size(); ++j)
            for (size_t i = 0; i < B->dim; ++i) A(i, j) = basis[j].c[i];
        return try_solve_rect(std::move(A), x.c);
    }
    std::vector<RatFun<Fq>> coords(const AlgElem& x) const {
        auto co = try_coords(x);
        require(co.has_value(), "element outside the lattice span");
        return *co;
    }
    bool contains(const AlgElem& x) const {
        auto co = try_coords(x);
        if (!co) return false;
        for (auto& a : *co)
            if (!a.is_polynomial()) return false;
        return true;
    }
};

// tau-stability certificate: tau maps the lattice into itself iff every basis
// image decomposes with polynomial coordinates.
struct StabilityReport {
    bool stable = true;
    std::vector<std::vector<RatFun<Fq>>> images; // coords of tau(basis[i])
};

inline StabilityReport tau_stability(const Lattice& L) {
    StabilityReport rep;
    for (auto& b : L.basis) {
        auto co = L.coords(L.B->tau(b));
        for (auto& a : co) rep.stable = rep.stable && a.is_polynomial();
        rep.images.push_back(std::move(co));
    }
    return rep;
}

// The Artin-Schreier tower at q = p: L = k(alpha), alpha^p - alpha = 1/theta,
// G = Gal(L/k) = Z/p via sigma_c(alpha) = alpha + c, twisted by the Kummer
// line delta^{p-1} = 1 + theta^{p-1}.  Lattices:
//   OL = A + sum_{i>=1} theta A alpha^i          (ring of integers)
//   M  = sum_i theta A alpha^i = A[G].(theta alpha^{p-1})
//   Mp = M delta                                  (tau-stable twist)
//   N  = Tr_G(Mp) = theta A delta
struct ArtinSchreier {
    const ExtAlgebra* B = nullptr;
    const AbelianGroup* G = nullptr;
    uint32_t p = 0;
    Lattice OL, M, Mp, N;
    AlgElem g;                     // A[G]-generator of Mp
    Matrix<RatFun<Fq>> V;          // column c = coords of sigma_c(g) in Mp basis
    GroupRing<Poly<Fq>> u;         // tau(g) = u . g, coefficients in A
    Poly<Fq> n_mult;               // tau(theta delta) = n_mult . (theta delta)
    Poly<Fq> one_plus;             // 1 + theta^{p-1} (symbol modulus)

    GroupRingCtx<Poly<Fq>> agcx() const { return GroupRingCtx<Poly<Fq>>{G, B->kcx}; }
    GroupRingCtx<Fq> fgcx() const { return GroupRingCtx<Fq>{G, B->F}; }
};

inline ArtinSchreier build_artin_schreier(uint32_t p) {
    ArtinSchreier AS;
    AS.p = p;
    AS.B = ExtAlgebra::get(p);
    AS.G = AbelianGroup::get({(long)p}, p);
    const auto* B = AS.B;
    AlgElem th = B->theta();
    AlgElem al = B->alpha();
    AlgElem de = B->delta();

    AS.OL.B = AS.M.B = AS.Mp.B = AS.N.B = B;
    AS.OL.name = "O_L";
    AS.M.name = "M";
    AS.Mp.name = "M'";
    AS.N.name = "N";
    AlgElem ap = AlgElem::one(B);
    for (size_t i = 0; i < p; ++i) {
        AS.OL.basis.push_back(i == 0 ? AlgElem::one(B) : th * ap);
        AS.M.basis.push_back(th * ap);
        AS.Mp.basis.push_back(th * ap * de);
        if (i + 1 < p) ap = ap * al;
    }
    AS.N.basis.push_back(th * de);
    AS.g = AS.Mp.basis.back(); // theta alpha^{p-1} delta

    // Tr_G(theta alpha^{p-1}) = -theta: the trace collapses onto the scalar line.
    AlgElem tr = B->trace_G(th * ap);
    require(tr == -th, "trace of the normal-basis generator is not -theta");

    // Normal basis: sigma_c(g) against the Mp basis; entries are scalars and
    // the matrix is invertible over F_p, so Mp = A[G].g.
    AS.V = Matrix<RatFun<Fq>>(B->kcx, p, p);
    for (long cc = 0; cc < (long)p; ++cc) {
        auto co = AS.Mp.coords(B->sigma(cc, AS.g));
        for (size_t i = 0; i < p; ++i) {
            require(co[i].is_polynomial() && co[i].num.deg() <= 0, "normal-basis matrix entry is not a scalar");
            AS.V(i, (size_t)cc) = co[i];
        }
    }

    // tau(g) = sum_c u_c sigma_c(g) with u_c in A: Mp is O_L{tau}[G]-stable.
    auto tg = AS.Mp.coords(B->tau(AS.g));
    auto uc = solve(AS.V, tg);
    AS.u = GroupRing<Poly<Fq>>(AS.agcx());
    for (size_t cc = 0; cc < p; ++cc) {
        require(uc[cc].is_polynomial(), "tau(g) does not lie in A[G].g");
        AS.u.c[AS.G->index({(long)cc})] = uc[cc].num;
    }

    // On the trace line N = theta A delta, tau is multiplication by
    // theta^{p-1}(1 + theta^{p-1}).
    std::vector<Fq> mc((size_t)p, Fq::zero(B->F));
    mc[p - 1] = Fq::one(B->F);
    AS.n_mult = Poly<Fq>(B->kcx, mc) * B->one_plus;
    AlgElem nb = AS.N.basis[0];
    require(B->tau(nb) == nb.scaled(RatFun<Fq>::of(AS.n_mult)), "trace-line multiplier mismatch");

    AS.one_plus = B->one_plus;
    return AS;
}

// ---------------------------------------------------------------------------
// Finite theta-modules: a free R-module of finite rank together with the
// matrix of the theta-action.  The monic Fitting generator is the
// characteristic polynomial det(theta I - A_theta), division free.

template <class S>
struct FiniteThetaModule {
    Matrix<S> theta_action;
    std::string provenance;
    size_t rank() const { return theta_action.nr; }
};

template <class S>
Poly<S> fitting_monic(const FiniteThetaModule<S>& N) {
    auto desc = berkowitz_charpoly(N.theta_action);
    std::vector<S> asc(desc.rbegin(), desc.rend());
    return Poly<S>(PolyCtx<S>{N.theta_action.cx, Var::theta}, std::move(asc));
}

// Matrix over F_q of x -> theta x on A/v, basis theta^t.
inline Matrix<Fq> mult_theta_matrix(const Poly<Fq>& v) {
    require(v.is_monic() && v.deg() >= 1, "modulus must be monic nonconstant");
    size_t d = (size_t)v.deg();
    Matrix<Fq> m(v.cx.coeff, d, d);
    for (size_t t = 0; t + 1 < d; ++t) m(t + 1, t) = Fq::one(v.cx.coeff);
    for (size_t s = 0; s < d; ++s) m(s, d - 1) = -v.coeff((long)s);
    return m;
}

// Matrix over F_q of x -> m x^q on A/v (the twist part of a rank-one action).
inline Matrix<Fq> twist_part_matrix(const Poly<Fq>& m, const Poly<Fq>& v) {
    size_t d = (size_t)v.deg();
    uint64_t q = v.base_q();
    Matrix<Fq> out(v.cx.coeff, d, d);
    Poly<Fq> x = Poly<Fq>::gen(v.cx);
    for (size_t t = 0; t < d; ++t) {
        Poly<Fq> col = (m * powmod(x, q * (uint64_t)t, v)) % v;
        for (size_t s = 0; s < d; ++s) out(s, t) = col.coeff((long)s);
    }
    return out;
}

// Rank-one quotients E(W/vW) where C_theta acts as theta + (mult) o Frobenius:
// the Carlitz lattice A itself (mult = 1) and the trace line N (mult = n_mult).
inline FiniteThetaModule<Fq> reduce_mod_scalar(const Poly<Fq>& mult, const Poly<Fq>& v, std::string tag) {
    FiniteThetaModule<Fq> N{mult_theta_matrix(v) + twist_part_matrix(mult, v), std::move(tag)};
    return N;
}

inline FiniteThetaModule<Fq> reduce_mod_scalar_lie(const Poly<Fq>& v, std::string tag) {
    return FiniteThetaModule<Fq>{mult_theta_matrix(v), std::move(tag)};
}

// z-deformed rank-one quotient: coefficients in F_q[z], twist part times z.
inline FiniteThetaModule<Poly<Fq>> reduce_mod_scalar_deformed(const Poly<Fq>& mult, const Poly<Fq>& v,
                                                              std::string tag) {
    PolyCtx<Fq> zcx{v.cx.coeff, Var::z};
    size_t d = (size_t)v.deg();
    Matrix<Fq> a = mult_theta_matrix(v), b = twist_part_matrix(mult, v);
    Matrix<Poly<Fq>> m(zcx, d, d);
    Poly<Fq> z = Poly<Fq>::gen(zcx);
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j)
            m(i, j) = Poly<Fq>::constant(zcx, a(i, j)) + z.scaled(b(i, j));
    return FiniteThetaModule<Poly<Fq>>{std::move(m), std::move(tag)};
}

inline FiniteThetaModule<Poly<Fq>> reduce_mod_scalar_deformed_lie(const Poly<Fq>& v, std::string tag) {
    PolyCtx<Fq> zcx{v.cx.coeff, Var::z};
    size_t d = (size_t)v.deg();
    Matrix<Fq> a = mult_theta_matrix(v);
    Matrix<Poly<Fq>> m(zcx, d, d);
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) m(i, j) = Poly<Fq>::constant(zcx, a(i, j));
    return FiniteThetaModule<Poly<Fq>>{std::move(m), std::move(tag)};
}

// Equivariant quotient Mp/vMp as a free F_p[G]-module with basis theta^t g:
// C_theta(x g) = (theta x + x^(1) u) g, so the action matrix over F_p[G] is
// the companion of v plus the per-group-component twist parts.
inline FiniteThetaModule<GroupRing<Fq>> reduce_mod_equivariant(const ArtinSchreier& AS, const Poly<Fq>& v) {
    size_t d = (size_t)v.deg();
    auto gcx = AS.fgcx();
    Matrix<GroupRing<Fq>> m(gcx, d, d);
    Matrix<Fq> a = mult_theta_matrix(v);
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) m(i, j) = GroupRing<Fq>::scalar(gcx, a(i, j));
    for (size_t cc = 0; cc < AS.G->size(); ++cc) {
        const Poly<Fq>& ucp = AS.u.c[cc];
        if (ucp.is_zero()) continue;
        Matrix<Fq> b = twist_part_matrix(ucp, v);
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j)
                if (!b(i, j).is_zero()) m(i, j).c[cc] = m(i, j).c[cc] + b(i, j);
    }
    return FiniteThetaModule<GroupRing<Fq>>{std::move(m), "M'/(" + v.str() + ")"};
}

inline FiniteThetaModule<GroupRing<Fq>> reduce_mod_equivariant_lie(const ArtinSchreier& AS, const Poly<Fq>& v) {
    size_t d = (size_t)v.deg();
    auto gcx = AS.fgcx();
    Matrix<GroupRing<Fq>> m(gcx, d, d);
    Matrix<Fq> a = mult_theta_matrix(v);
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) m(i, j) = GroupRing<Fq>::scalar(gcx, a(i, j));
    return FiniteThetaModule<GroupRing<Fq>>{std::move(m), "Lie M'/(" + v.str() + ")"};
}

// Deformed equivariant quotient: coefficients in F_p[z][G], twist scaled by z.
inline FiniteThetaModule<GroupRing<Poly<Fq>>> reduce_mod_equivariant_deformed(const ArtinSchreier& AS,
                                                                              const Poly<Fq>& v) {
    size_t d = (size_t)v.deg();
    PolyCtx<Fq> zcx{AS.B->F, Var::z};
    GroupRingCtx<Poly<Fq>> gcx{AS.G, zcx};
    Matrix<GroupRing<Poly<Fq>>> m(gcx, d, d);
    Matrix<Fq> a = mult_theta_matrix(v);
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j)
            m(i, j) = GroupRing<Poly<Fq>>::scalar(gcx, Poly<Fq>::constant(zcx, a(i, j)));
    Poly<Fq> z = Poly<Fq>::gen(zcx);
    for (size_t cc = 0; cc < AS.G->size(); ++cc) {
        const Poly<Fq>& ucp = AS.u.c[cc];
        if (ucp.is_zero()) continue;
        Matrix<Fq> b = twist_part_matrix(ucp, v);
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j)
                if (!b(i, j).is_zero()) m(i, j).c[cc] = m(i, j).c[cc] + z.scaled(b(i, j));
    }
    return FiniteThetaModule<GroupRing<Poly<Fq>>>{std::move(m), "~M'/(" + v.str() + ")"};
}

inline FiniteThetaModule<GroupRing<Poly<Fq>>> reduce_mod_equivariant_deformed_lie(
    const ArtinSchreier& AS, const Poly<Fq>& v) {
    size_t d = (size_t)v.deg();
    PolyCtx<Fq> zcx{AS.B->F, Var::z};
    GroupRingCtx<Poly<Fq>> gcx{AS.G, zcx};
    Matrix<GroupRing<Poly<Fq>>> m(gcx, d, d);
    Matrix<Fq> a = mult_theta_matrix(v);
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j)
            m(i, j) = GroupRing<Poly<Fq>>::scalar(gcx, Poly<Fq>::constant(zcx, a(i, j)));
    return FiniteThetaModule<GroupRing<Poly<Fq>>>{std::move(m), "Lie ~M'/(" + v.str() + ")"};
}

// The G-action on Mp/vMp over F_p (for cohomological-triviality checks):
// sigma_e permutes the sigma_c(g) components, theta^t coordinates untouched.
inline GModule gmodule_of_quotient(const ArtinSchreier& AS, const Poly<Fq>& v) {
    size_t d = (size_t)v.deg(), n = AS.G->size();
    GModule M;
    M.G = AS.G;
    M.F = AS.B->F;
    M.dim = d * n;
    Matrix<Fq> act(AS.B->F, M.dim, M.dim);
    for (size_t cc = 0; cc < n; ++cc) {
        size_t dst = AS.G->add(cc, AS.G->index({1}));
        for (size_t t = 0; t < d; ++t) act(dst * d + t, cc * d + t) = Fq::one(AS.B->F);
    }
    M.gen_action = {act};
    return M;
}

// Frobenius element of P in G = Z/p: sigma_P(alpha) = alpha + eta_P with
// eta_P = sum of the q-power conjugates of 1/theta mod P.  Cross-checked
// against the closed form -P_1/P_0 (log-derivative at zero), which is how the
// element extends multiplicatively to composite moduli prime to theta.
inline long frobenius_element(uint32_t p, const Poly<Fq>& P) {
    require(P.is_monic() && P.deg() >= 1, "frobenius element needs a monic modulus");
    require(!P.coeff(0).is_zero(), "theta ramifies: no Frobenius at theta");
    const auto* F = P.cx.coeff;
    // 1/theta mod P via the cofactor of theta in P
    Poly<Fq> x = Poly<Fq>::gen(P.cx);
    std::vector<Fq> cof;
    for (long i = 1; i <= P.deg(); ++i) cof.push_back(P.coeff(i));
    Poly<Fq> tinv = Poly<Fq>(P.cx, cof).scaled(-P.coeff(0).inv());
    require((tinv * x) % P == Poly<Fq>::one(P.cx) % P, "inverse of theta mod P");
    Poly<Fq> s = Poly<Fq>::zero(P.cx), t = tinv;
    for (long j = 0; j < P.deg(); ++j) {
        s = s + t;
        t = powmod(t, F->q, P);
    }
    require(s.deg() <= 0, "Frobenius sum did not land in the prime field");
    Fq eta = s.coeff(0);
    Fq oracle = -P.coeff(1) * P.coeff(0).inv();
    require(eta == oracle, "Frobenius trace disagrees with the coefficient form");
    long e = 0;
    Fq one = Fq::one(F), acc = Fq::zero(F);
    while (!(acc == eta)) {
        acc = acc + one;
        ++e;
        require(e < (long)p, "Frobenius value outside the prime field");
    }
    return e;
}

// Artin element of a monic b prime to theta, as a group index: -b_1/b_0,
// additive in products because (bc)_1/(bc)_0 = b_1/b_0 + c_1/c_0.
inline long artin_element(uint32_t p, const Poly<Fq>& b) {
    require(!b.coeff(0).is_zero(), "Artin element needs b prime to theta");
    Fq eta = -b.coeff(1) * b.coeff(0).inv();
    const auto* F = b.cx.coeff;
    long e = 0;
    Fq one = Fq::one(F), acc = Fq::zero(F);
    while (!(acc == eta)) {
        acc = acc + one;
        ++e;
        require(e < (long)p, "Artin value outside the prime field");
    }
    return e;
}

} // namespace tlf
