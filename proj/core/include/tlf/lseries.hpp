#pragma once

#include "tlf/anderson.hpp"
#include "tlf/lattice.hpp"
#include "tlf/monic.hpp"

#include <atomic>
#include <limits>
#include <map>
#include <optional>
#include <thread>

namespace tlf {

// ---------------------------------------------------------------------------
// residue symbols with composite lower argument

// (num/b)_d extended multiplicatively over the factorization of b.
// Trial-division path; the sieved SymbolTable below must agree with it.
inline Fq residue_symbol_monic(const PolyFq& num, PolyFq b, uint64_t d) {
    const FqField* F = b.cx.coeff;
    require(!b.is_zero(), "symbol with zero lower argument");
    Fq s = Fq::one(F);
    for (auto& [P, e] : factorize(std::move(b))) {
        Fq t = residue_symbol(num, P, d);
        for (long i = 0; i < e; ++i) s = s * t;
    }
    return s;
}

// chi(b) = (num/b)_d for every monic b of degree <= D, filled by a
// smallest-prime-factor sieve over the base-q coefficient codes.
struct SymbolTable {
    const FqField* F = nullptr;
    PolyFq num;
    uint64_t d = 1;
    long D = 0;
    std::vector<uint64_t> spf;  // code of smallest prime factor; 0 = prime (or unit)
    std::vector<Fq> chi;        // indexed by code

    SymbolTable(const FqField* F_, PolyFq num_, uint64_t d_, long D_)
        : F(F_), num(std::move(num_)), d(d_), D(D_) {
        uint64_t size = 1;
        for (long i = 0; i <= D; ++i) {
            require(size <= (uint64_t(1) << 40) / F->q, "symbol table cutoff too large");
            size *= F->q;
        }
        spf.assign(size, 0);
        chi.assign(size, Fq::zero(F));
        PolyCtx<Fq> tcx{F, Var::theta};
        chi[poly_to_code(PolyFq::one(tcx))] = Fq::one(F);
        for (long dp = 1; dp <= D; ++dp)
            visit_monics(F, dp, [&](const PolyFq& b) {
                uint64_t cb = poly_to_code(b);
                if (spf[cb] == 0) { // untouched by smaller primes: b is prime
                    chi[cb] = residue_symbol(num, b, d);
                    for (long dm = 0; dp + dm <= D; ++dm)
                        visit_monics(F, dm, [&](const PolyFq& m) {
                            uint64_t cm = poly_to_code(b * m);
                            if (spf[cm] == 0) spf[cm] = cb;
                        });
                } else {
                    // chi multiplicative; the cofactor has smaller degree
                    PolyFq cof = b / poly_from_code(tcx, spf[cb]);
                    chi[cb] = chi[spf[cb]] * chi[poly_to_code(cof)];
                }
            });
    }

    Fq operator()(const PolyFq& b) const {
        require(b.deg() <= D, "argument beyond table cutoff");
        return chi[poly_to_code(b)];
    }
};

// ---------------------------------------------------------------------------
// local factors and L-series

// One Euler factor: |Lie(E(A/v))| over |E(A/v)|, both monic theta-polynomials
// of degree equal to the rank of the quotient.
template <class S>
struct LocalFactor {
    Poly<S> lie;
    Poly<S> e;
    PolyFq v;
};

template <class S>
LocalFactor<S> make_local_factor(Poly<S> lie, Poly<S> e, PolyFq v) {
    require(lie.deg() == e.deg(), "local factor degree mismatch");
    auto one = S::one(lie.cx.coeff);
    require(lie.lead() == one && e.lead() == one, "local factors must be monic");
    return LocalFactor<S>{std::move(lie), std::move(e), std::move(v)};
}

template <class S>
struct LSeries {
    Series<S> value;
    long D = 0, N = 0;
    std::string tag;
    std::vector<std::pair<long, Series<S>>> partials; // running product after each degree
    std::vector<PolyFq> excluded;                     // primes skipped by policy
    std::vector<LocalFactor<S>> factors;              // retained on request
};

struct EulerOptions {
    long D = 1;
    long N = 1;
    PolyFq structural_den;   // exclude primes dividing this (zero poly = nothing)
    bool keep_factors = false;
    unsigned threads = 0;    // 0 = hardware concurrency
    std::string tag;
};

template <class T, class Fn>
std::vector<T> parallel_map(const std::vector<PolyFq>& in, unsigned threads, Fn&& fn) {
    std::vector<T> out(in.size());
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, (unsigned)std::max<size_t>(in.size(), 1));
    if (threads <= 1 || in.size() <= 1) {
        for (size_t i = 0; i < in.size(); ++i) out[i] = fn(in[i]);
        return out;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (size_t i; (i = next.fetch_add(1)) < in.size();) out[i] = fn(in[i]);
        });
    for (auto& th : pool) th.join();
    return out;
}

// Product over primes of degree <= D of the series-expanded local factors,
// in increasing prime degree, one running product. Factors are computed in
// parallel; the reduction order is fixed (and immaterial: the ring commutes).
template <class S, class Fn>
LSeries<S> euler_product(const FqField* F, typename S::Ctx ccx, Fn&& local_at,
                         const EulerOptions& opt) {
    require(opt.D >= 1 && opt.N >= 1, "euler product needs D >= 1, N >= 1");
    SeriesCtx<S> scx{ccx, opt.N};
    LSeries<S> out;
    out.value = Series<S>::one(scx);
    out.D = opt.D;
    out.N = opt.N;
    out.tag = opt.tag;

    auto primes = enumerate_monic_irreducibles(F, opt.D);
    for (long d = 1; d <= opt.D; ++d) {
        std::vector<PolyFq> batch;
        for (auto& P : primes) {
            if (P.degree != d) continue;
            if (!opt.structural_den.is_zero() && (opt.structural_den % P.v).is_zero())
                out.excluded.push_back(P.v);
            else
                batch.push_back(P.v);
        }
        auto factors = parallel_map<LocalFactor<S>>(
            batch, opt.threads, [&](const PolyFq& v) { return local_at(v); });
        for (auto& f : factors) {
            out.value = (out.value * series_of_ratio(f.lie, f.e, opt.N)).truncated(opt.N);
            if (opt.keep_factors) out.factors.push_back(std::move(f));
        }
        out.partials.emplace_back(d, out.value);
    }
    require(out.value.coeff_at(0) == S::one(ccx), "euler product lost its constant term");
    return out;
}

// ---------------------------------------------------------------------------
// preset local factors

inline LocalFactor<Fq> local_factor_carlitz(const FqField* F, const PolyFq& v) {
    auto E = reduce_mod_scalar(PolyFq::one(PolyCtx<Fq>{F, Var::theta}), v, "carlitz");
    auto L = reduce_mod_scalar_lie(v, "carlitz");
    return make_local_factor(fitting_monic(L), fitting_monic(E), v);
}

inline LocalFactor<Poly<Fq>> local_factor_carlitz_z(const FqField* F, const PolyFq& v) {
    auto E = reduce_mod_scalar_deformed(PolyFq::one(PolyCtx<Fq>{F, Var::theta}), v, "carlitz-z");
    auto L = reduce_mod_scalar_deformed_lie(v, "carlitz-z");
    return make_local_factor(fitting_monic(L), fitting_monic(E), v);
}

inline LocalFactor<GroupRing<Fq>> local_factor_as(const ArtinSchreier& AS, const PolyFq& v) {
    auto E = reduce_mod_equivariant(AS, v);
    auto L = reduce_mod_equivariant_lie(AS, v);
    return make_local_factor(fitting_monic(L), fitting_monic(E), v);
}

inline LocalFactor<GroupRing<Poly<Fq>>> local_factor_as_z(const ArtinSchreier& AS,
                                                          const PolyFq& v) {
    auto E = reduce_mod_equivariant_deformed(AS, v);
    auto L = reduce_mod_equivariant_deformed_lie(AS, v);
    return make_local_factor(fitting_monic(L), fitting_monic(E), v);
}

// the trace sublattice N = Tr_G(M') = theta*A*delta, a rank-one scalar object
inline LocalFactor<Fq> local_factor_trace_line(const ArtinSchreier& AS, const PolyFq& v) {
    auto E = reduce_mod_scalar(AS.n_mult, v, "trace-line");
    auto L = reduce_mod_scalar_lie(v, "trace-line");
    return make_local_factor(fitting_monic(L), fitting_monic(E), v);
}

// ---------------------------------------------------------------------------
// direct monic sums (the oracle side of the trace formula)

inline Fq scale_coeff(const Fq& w, const Fq& a, const FqField*) { return w * a; }
inline Poly<Fq> scale_coeff(const Poly<Fq>& w, const Fq& a, PolyCtx<Fq>) { return w.scaled(a); }
inline GroupRing<Fq> scale_coeff(const GroupRing<Fq>& w, const Fq& a, GroupRingCtx<Fq>) {
    return w.scaled(a);
}
inline GroupRing<Poly<Fq>> scale_coeff(const GroupRing<Poly<Fq>>& w, const Fq& a,
                                       GroupRingCtx<Poly<Fq>> cx) {
    return w.scaled(Poly<Fq>::constant(cx.coeff, a));
}

// w * s for a scalar series s, coefficientwise into S
template <class S>
Series<S> embed_scaled(typename S::Ctx ccx, const Series<Fq>& s, const S& w) {
    Series<S> t(ccx, s.lo);
    if (s.is_zero() || w.is_zero()) return t;
    t.c.assign(s.c.size(), S::zero(ccx));
    for (size_t i = 0; i < s.c.size(); ++i)
        if (!s.c[i].is_zero()) t.c[i] = scale_coeff(w, s.c[i], ccx);
    t.normalize();
    return t;
}

// sum over monic b with deg b <= D and gcd(b, coprime_to) = 1 of weight(b)/b.
// weight returns an S; zero weights are skipped.
template <class S, class Fn>
Series<S> monic_weighted_sum(const FqField* F, typename S::Ctx ccx, long D, long N,
                             const PolyFq& coprime_to, Fn&& weight) {
    SeriesCtx<S> scx{ccx, N};
    Series<S> acc = Series<S>::zero(scx);
    PolyCtx<Fq> tcx{F, Var::theta};
    Poly<Fq> one = Poly<Fq>::one(tcx);
    for (long d = 0; d <= D; ++d)
        visit_monics(F, d, [&](const PolyFq& b) {
            if (!coprime_to.is_zero() && poly_gcd(b, coprime_to).deg() != 0) return;
            S w = weight(b);
            if (w.is_zero()) return;
            acc += embed_scaled<S>(ccx, series_of_ratio(one, b, N), w);
        });
    return acc.truncated(N);
}

// ---------------------------------------------------------------------------
// zeta by degree blocks

// sum over monic b of degree exactly d of 1/b equals (-1)^d / l_d with
// l_d = prod_{i=1..d} (theta^{q^i} - theta); its valuation q + ... + q^d
// lets blocks beyond the precision window be dropped unmaterialized.
inline long zeta_block_valuation(uint64_t q, long d, long cap) {
    long val = 0;
    uint64_t qk = 1;
    for (long i = 1; i <= d; ++i) {
        qk *= q;
        val += (long)qk;
        if (val > cap) return cap + 1;
    }
    return val;
}

inline Series<Fq> zeta_degree_block(const FqField* F, long d, long N) {
    SeriesCtx<Fq> scx{F, N};
    if (d == 0) return Series<Fq>::one(scx);
    if (zeta_block_valuation(F->q, d, N) > N) return Series<Fq>::zero(scx);
    PolyCtx<Fq> tcx{F, Var::theta};
    Poly<Fq> ld = Poly<Fq>::one(tcx);
    Poly<Fq> th = Poly<Fq>::gen(tcx);
    uint64_t qk = 1;
    for (long i = 1; i <= d; ++i) {
        qk *= F->q;
        std::vector<Fq> m((size_t)qk + 1, Fq::zero(F));
        m[1] = -Fq::one(F);
        m[(size_t)qk] = Fq::one(F);
        ld = ld * Poly<Fq>(tcx, m);
    }
    Poly<Fq> num = Poly<Fq>::constant(tcx, Fq::from_int(F, d % 2 ? -1 : 1));
    return series_of_ratio(num, ld, N);
}

inline Series<Fq> zeta_degree_block_enumerated(const FqField* F, long d, long N) {
    PolyCtx<Fq> tcx{F, Var::theta};
    SeriesCtx<Fq> scx{F, N};
    Series<Fq> acc = Series<Fq>::zero(scx);
    Poly<Fq> one = Poly<Fq>::one(tcx);
    visit_monics(F, d, [&](const PolyFq& b) { acc += series_of_ratio(one, b, N); });
    return acc.truncated(N);
}

// zeta_A(1) truncated: every degree block through D, exact past the point
// where blocks leave the window
inline Series<Fq> zeta_value(const FqField* F, long D, long N) {
    Series<Fq> acc = Series<Fq>::zero(SeriesCtx<Fq>{F, N});
    for (long d = 0; d <= D; ++d) acc += zeta_degree_block(F, d, N);
    return acc.truncated(N);
}

// ---------------------------------------------------------------------------
// lattice indexes

// group ring over the rational function field: units decided by det_G
inline bool ring_is_unit(const GroupRing<RatFun<Fq>>& x) { return !det_G(x).is_zero(); }
inline GroupRing<RatFun<Fq>> ring_inv(const GroupRing<RatFun<Fq>>& x) {
    auto Minv = inverse_via_charpoly(x.mult_matrix());
    GroupRing<RatFun<Fq>> r(x.cx);
    for (size_t g = 0; g < x.cx.G->size(); ++g) r.c[g] = Minv(g, 0);
    return r;
}
// B1 X = B2 for bases given as columns; X over the coefficient ring
template <class R>
Matrix<R> change_matrix(const Matrix<R>& B1, const Matrix<R>& B2) {
    require(B1.nr == B2.nr && B1.nr == B1.nc && B2.nc == B2.nr, "basis shape mismatch");
    return inverse_via_charpoly(B1) * B2;
}

// [B1 : B2]_A: unique monic generator of (det X). Monic here means monic
// numerator and denominator; a genuine sublattice gives a monic polynomial.
inline RatFun<Fq> lattice_index_A(const Matrix<RatFun<Fq>>& B1,
                                  const Matrix<RatFun<Fq>>& B2) {
    RatFun<Fq> d = det(change_matrix(B1, B2));
    require(!d.is_zero(), "degenerate lattice pair");
    return RatFun<Fq>(make_monic(d.num), make_monic(d.den));
}

// componentwise series expansion of a k[G] element
inline Series<GroupRing<Fq>> groupring_series(const GroupRing<RatFun<Fq>>& x, long N) {
    const auto* G = x.cx.G;
    GroupRingCtx<Fq> gcx{G, x.cx.coeff.coeff};
    Series<GroupRing<Fq>> acc = Series<GroupRing<Fq>>::zero(SeriesCtx<GroupRing<Fq>>{gcx, N});
    for (size_t g = 0; g < G->size(); ++g) {
        if (x.c[g].is_zero()) continue;
        Series<Fq> s = series_of_ratio(x.c[g].num, x.c[g].den, N);
        acc += embed_scaled<GroupRing<Fq>>(gcx, s, GroupRing<Fq>::basis(gcx, g));
    }
    return acc;
}

struct GIndex {
    GroupRing<RatFun<Fq>> raw; // exact determinant of the change matrix
    MonicRep rep;              // monic representative of its expansion
};

// [B1 : B2]_G = det(X)^+ over k[G], normalized through the character blocks
inline GIndex lattice_index_G(const Matrix<GroupRing<RatFun<Fq>>>& B1,
                              const Matrix<GroupRing<RatFun<Fq>>>& B2,
                              const FineCharacters& fc, long N) {
    GroupRing<RatFun<Fq>> d = det(change_matrix(B1, B2));
    require(ring_is_unit(d), "degenerate equivariant lattice pair");
    return GIndex{d, monic_representative(groupring_series(d, N), fc)};
}

// transpose a group-ring-coefficient series into a series-coefficient group
// ring element, so the plain det_G template applies to it
inline GroupRing<Series<Fq>> series_components(const Series<GroupRing<Fq>>& s) {
    const auto* G = s.ccx.G;
    SeriesCtx<Fq> scx{s.ccx.coeff, s.precision()};
    GroupRing<Series<Fq>> r(GroupRingCtx<Series<Fq>>{G, scx});
    for (size_t g = 0; g < G->size(); ++g) {
        Series<Fq> comp(scx.coeff, s.lo);
        comp.c.assign(s.c.size(), Fq::zero(scx.coeff));
        for (size_t i = 0; i < s.c.size(); ++i) comp.c[i] = s.c[i].c[g];
        comp.normalize();
        r.c[g] = std::move(comp);
    }
    return r;
}

inline Series<Fq> det_G_series(const Series<GroupRing<Fq>>& s) {
    return det_G(series_components(s));
}

// ---------------------------------------------------------------------------
// unit membership certificates

// Largest degree whose residue-class sums can still reach theta^{-N}: summing
// 1/b over the monics of degree d in a fixed class mod m telescopes through
// the affine collapse
//   sum_{c in F_q} 1/(x + m c) = -m^{q-1} / (x^q - m^{q-1} x),
// one free coefficient at a time, so v_inf(sum) >= q d - (q-1) deg m. Any
// weight that is a class function modulo m therefore cannot see degrees past
// the returned cutoff. The tests check the collapse identity exactly and the
// valuation bound on enumerated class sums.
inline long class_sum_cutoff(uint64_t q, long deg_m, long N) {
    require(q >= 2 && deg_m >= 0 && N >= 0, "bad class sum parameters");
    return (N + (long)(q - 1) * deg_m) / (long)q;
}

// L-value of the trace line at precision N. The Euler product collapses to
//   sum over monic b coprime to theta (1+theta^{p-1}) of chi(b)/b
// with chi the (p-1)-power residue symbol of 1+theta^{p-1}; the factor at
// theta has |Lie| = |E| = theta and drops out. chi together with the
// coprimality indicator is a class function of b modulo theta (1+theta^{p-1})
// (reciprocity; deg = p), so the sum is exact already at the class cutoff.
inline Series<Fq> trace_line_series(uint32_t p, long N) {
    const FqField* F = FqField::get(p);
    PolyCtx<Fq> tcx{F, Var::theta};
    std::vector<Fq> op((size_t)p, Fq::zero(F));
    op[0] = Fq::one(F);
    op[p - 1] = Fq::one(F);
    Poly<Fq> one_plus(tcx, op);
    long D = std::min<long>(N, class_sum_cutoff(F->q, (long)p, N));
    SymbolTable tab(F, one_plus, (uint64_t)p - 1, D);
    return monic_weighted_sum<Fq>(F, F, D, N, Poly<Fq>::gen(tcx) * one_plus,
                                  [&](const PolyFq& b) { return tab(b); });
}

struct UnitReport {
    bool member = false;
    long N = 0;
    Poly<Fq> candidate;      // A-coordinate of the nearest lattice element
    long residual_floor = 0; // certified lower bound on v(exp(x) - candidate)
};

// split a series into its polynomial part (exponents >= keep_from) and report
// membership of the rest
inline UnitReport series_membership(const Series<Fq>& y, long keep_from, long N) {
    UnitReport rep;
    rep.N = N;
    PolyCtx<Fq> tcx{y.ccx, Var::theta};
    std::vector<Fq> cs;
    long top = y.hi_eff();
    if (top >= keep_from) {
        cs.assign((size_t)top + 1, Fq::zero(y.ccx));
        for (long e = keep_from; e <= top; ++e) cs[(size_t)e] = y.coeff_at(e);
    }
    rep.candidate = Poly<Fq>(tcx, cs);
    Series<Fq> residual = y - Series<Fq>::from_poly(rep.candidate, N);
    rep.residual_floor = residual.v_inf_lower();
    rep.member = residual.is_zero();
    return rep;
}

// target lattice A^n: exp_E(x) must be a vector of polynomials, certified
// through precision N
inline std::vector<UnitReport> verify_unit_integral(const AndersonModule& E,
                                                    const std::vector<Series<Fq>>& x,
                                                    long N) {
    auto y = exp_eval(E, x, N);
    std::vector<UnitReport> reps;
    for (auto& s : y) reps.push_back(series_membership(s, 0, N));
    return reps;
}

// Kummer line theta*A*delta at q = p: for x = s * theta*delta the Carlitz
// exponential collapses to exp(x) = delta * T(s),
//   T(s) = sum_i e_i s^(i) theta^{p^i} (1+theta^{p-1})^{(p^i-1)/(p-1)},
// so x lands in the lattice iff T(s) is a polynomial divisible by theta.
// Term i has valuation at least p^i (i-2) + 1: the certificate below stops
// once that bound has risen past N twice.
inline UnitReport verify_unit_delta_line(uint32_t p, const Series<Fq>& s, long N) {
    const FqField* F = FqField::get(p);
    require(s.ccx == F, "series field mismatch");
    require(s.precision() >= N, "input precision below target");
    PolyCtx<Fq> tcx{F, Var::theta};
    AndersonModule C = AndersonModule::carlitz(F);
    long vs = std::max(0L, s.v_inf_lower());

    SeriesCtx<Fq> scx{F, N};
    Series<Fq> T = Series<Fq>::zero(scx);
    std::vector<Fq> op((size_t)p, Fq::zero(F));
    op[0] = Fq::one(F);
    op[p - 1] = Fq::one(F);
    Poly<Fq> one_plus(tcx, op);

    auto Ei = C.exp_coeffs(0);
    long prev_bound = -std::numeric_limits<long>::max();
    unsigned rising = 0;
    for (unsigned i = 0;; ++i) {
        if (i >= Ei.size()) Ei = C.exp_coeffs(i);
        const RatFun<Fq>& e = Ei[i](0, 0);
        long pi = 1;
        for (unsigned j = 0; j < i; ++j) {
            require(pi < std::numeric_limits<long>::max() / (long)p / 4, "tail bound overflow");
            pi *= (long)p;
        }
        // numerator theta^{p^i} (1+theta^{p-1})^{(p^i-1)/(p-1)}
        long k = (pi - 1) / ((long)p - 1);
        Poly<Fq> num = e.num;
        for (long j = 0; j < k; ++j) num = num * one_plus;
        std::vector<Fq> sh((size_t)pi + 1, Fq::zero(F));
        sh[(size_t)pi] = Fq::one(F);
        num = num * Poly<Fq>(tcx, sh);
        long v_coeff = e.den.deg() - num.deg();
        long bound = v_coeff + pi * vs;
        if (bound > N) {
            if (++rising >= 2 && bound > prev_bound) break;
        } else {
            rising = 0;
            T += (series_of_ratio(num, e.den, N) * s.frob(i)).truncated(N);
        }
        require(i < 48, "exponential tail bound did not certify");
        prev_bound = bound;
    }
    return series_membership(T.truncated(N), 1, N);
}

} // namespace tlf
