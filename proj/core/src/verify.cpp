#include "tlf/verify.hpp"

#include "tlf/lseries.hpp"
#include "tlf/nuclear.hpp"

#include <json.hpp>

#include <optional>
#include <random>
#include <sstream>

namespace tlf {

namespace {

std::string to_str(long v) { return std::to_string(v); }
template <class T>
std::string to_str(const T& x) {
    return x.str();
}

// Records one CheckResult per identity; exact values only on failure.
struct Recorder {
    SuiteReport& R;

    void is(std::string name, std::string detail, bool ok, std::string lhs = "",
            std::string rhs = "") {
        CheckResult c;
        c.name = std::move(name);
        c.pass = ok;
        c.detail = std::move(detail);
        if (!ok) {
            c.lhs = std::move(lhs);
            c.rhs = std::move(rhs);
        }
        R.checks.push_back(std::move(c));
    }

    template <class T>
    void eq(const std::string& name, const std::string& detail, const T& lhs, const T& rhs) {
        bool ok = lhs == rhs;
        is(name, detail, ok, ok ? "" : to_str(lhs), ok ? "" : to_str(rhs));
    }

    template <class S>
    void outcome(const std::string& name, const std::string& detail, const CheckOutcome<S>& oc) {
        is(name, detail.empty() ? oc.what : detail + ": " + oc.what, oc.ok,
           oc.ok ? "" : oc.lhs.str(), oc.ok ? "" : oc.rhs.str());
    }
};

long pick(long cfgv, long dflt) { return cfgv >= 1 ? cfgv : dflt; }

const FqField* field_of(uint64_t q) {
    uint32_t p = 0, e = 0;
    require(is_prime_power(q, p, e), "base field size must be a prime power");
    return FqField::get(p, e);
}

uint32_t prime_field_of(const RunConfig& cfg, uint32_t dflt) {
    uint32_t p = cfg.q ? cfg.q : dflt;
    uint32_t pp = 0, ee = 0;
    require(is_prime_power(p, pp, ee) && ee == 1, "this suite needs a prime base field");
    return p;
}

// equality through the joint window, indifferent to precision floors
template <class R>
bool same_series(const Series<R>& a, const Series<R>& b, long N) {
    return (a - b).truncated(N).is_zero();
}

// largest D' in [D, D+5] keeping q^D' enumerable
long stabilized_degree(uint64_t q, long D) {
    long d = D;
    int extra = 5;
    while (extra > 0 && upow(q, (uint64_t)(d + 1)) <= (uint64_t(1) << 18)) {
        ++d;
        --extra;
    }
    return d;
}

Poly<Fq> var_power(PolyCtx<Fq> cx, long d) {
    std::vector<Fq> c((size_t)d + 1, Fq::zero(cx.coeff));
    c[(size_t)d] = Fq::one(cx.coeff);
    return Poly<Fq>(cx, c);
}

// Poly over GroupRing -> GroupRing over Poly, same element of F_q[G][theta]
GroupRing<Poly<Fq>> nest_swap(const Poly<GroupRing<Fq>>& f) {
    auto gcx = f.cx.coeff;
    PolyCtx<Fq> tcx{gcx.coeff, Var::theta};
    GroupRing<Poly<Fq>> out(GroupRingCtx<Poly<Fq>>{gcx.G, tcx});
    for (size_t g = 0; g < gcx.G->size(); ++g) {
        std::vector<Fq> cs((size_t)std::max(f.deg(), 0L) + 1, Fq::zero(gcx.coeff));
        for (long k = 0; k <= f.deg(); ++k) cs[(size_t)k] = f.coeff(k).c[g];
        out.c[g] = Poly<Fq>(tcx, cs);
    }
    return out;
}

// replace every R[G] entry by its multiplication matrix on the group basis
template <class R>
Matrix<R> blowup(const Matrix<GroupRing<R>>& M) {
    size_t n = M.cx.G->size();
    Matrix<R> B(M.cx.coeff, M.nr * n, M.nc * n);
    for (size_t i = 0; i < M.nr; ++i)
        for (size_t j = 0; j < M.nc; ++j) {
            Matrix<R> mm = M(i, j).mult_matrix();
            for (size_t r = 0; r < n; ++r)
                for (size_t s = 0; s < n; ++s) B(i * n + r, j * n + s) = mm(r, s);
        }
    return B;
}

GroupRing<RatFun<Fq>> lift_groupring(const GroupRing<Fq>& x, GroupRingCtx<RatFun<Fq>> kg) {
    GroupRing<RatFun<Fq>> r(kg);
    for (size_t g = 0; g < x.c.size(); ++g)
        r.c[g] = RatFun<Fq>::of(Poly<Fq>::constant(kg.coeff, x.c[g]));
    return r;
}

Poly<Fq> specialize_z(const Poly<Poly<Fq>>& f, const Fq& v) {
    PolyCtx<Fq> tcx{f.cx.coeff.coeff, Var::theta};
    std::vector<Fq> cs((size_t)std::max(f.deg(), 0L) + 1, Fq::zero(tcx.coeff));
    for (long k = 0; k <= f.deg(); ++k) cs[(size_t)k] = f.coeff(k).eval(v);
    return Poly<Fq>(tcx, cs);
}

Poly<GroupRing<Fq>> specialize_z(const Poly<GroupRing<Poly<Fq>>>& f, const Fq& v) {
    auto gz = f.cx.coeff;
    GroupRingCtx<Fq> gcx{gz.G, gz.coeff.coeff};
    std::vector<GroupRing<Fq>> cs((size_t)std::max(f.deg(), 0L) + 1, GroupRing<Fq>::zero(gcx));
    for (long k = 0; k <= f.deg(); ++k)
        for (size_t g = 0; g < gz.G->size(); ++g) cs[(size_t)k].c[g] = f.coeff(k).c[g].eval(v);
    return Poly<GroupRing<Fq>>(PolyCtx<GroupRing<Fq>>{gcx, Var::theta}, cs);
}

Series<Fq> specialize_z(const Series<Poly<Fq>>& s, const Fq& v) {
    const FqField* F = s.ccx.coeff;
    Series<Fq> out(F, s.lo);
    out.c.assign(s.c.size(), Fq::zero(F));
    for (size_t i = 0; i < s.c.size(); ++i) out.c[i] = s.c[i].eval(v);
    out.normalize();
    return out;
}

Series<GroupRing<Fq>> specialize_z(const Series<GroupRing<Poly<Fq>>>& s, const Fq& v) {
    GroupRingCtx<Fq> gcx{s.ccx.G, s.ccx.coeff.coeff};
    Series<GroupRing<Fq>> out(gcx, s.lo);
    out.c.assign(s.c.size(), GroupRing<Fq>::zero(gcx));
    for (size_t i = 0; i < s.c.size(); ++i)
        for (size_t g = 0; g < gcx.G->size(); ++g) out.c[i].c[g] = s.c[i].c[g].eval(v);
    out.normalize();
    return out;
}

// series in theta^-1 reread as a polynomial in Z, coefficient of Z^k at theta^-k
Poly<Fq> z_reading(const Series<Fq>& s, long N, PolyCtx<Fq> Zcx) {
    std::vector<Fq> cs((size_t)N, Fq::zero(Zcx.coeff));
    for (long k = 0; k < N; ++k)
        if (-k >= s.lo) cs[(size_t)k] = s.coeff_at(-k);
    return Poly<Fq>(Zcx, cs);
}

// ---------------------------------------------------------------------------
// carlitz-zeta

SuiteReport suite_carlitz_zeta(const RunConfig& cfg) {
    SuiteReport R;
    R.suite = "carlitz-zeta";
    R.seed = cfg.seed;
    Recorder rec{R};

    uint64_t q = cfg.q ? cfg.q : 2;
    const FqField* F = field_of(q);
    long N = pick(cfg.precision, 10);
    long D = pick(cfg.max_deg, N);
    R.params = {"q=" + to_str((long)q), "N=" + to_str(N), "D=" + to_str(D)};

    PolyCtx<Fq> tcx{F, Var::theta};
    auto local = [&](const PolyFq& v) { return local_factor_carlitz(F, v); };
    EulerOptions opt;
    opt.D = D;
    opt.N = N;
    opt.tag = "carlitz";
    LSeries<Fq> L = euler_product<Fq>(F, F, local, opt);

    // the product and the degree-block sum agree through the joint window
    long W = std::min(N, D);
    Series<Fq> zv = zeta_value(F, D, N);
    rec.is("product-equals-block-sum", "compared through theta^-" + to_str(W),
           same_series(L.value, zv, W), L.value.str(), zv.str());

    for (long d = 0; d <= std::min(4L, D); ++d)
        rec.eq("block-equals-enumeration", "degree " + to_str(d), zeta_degree_block(F, d, N),
               zeta_degree_block_enumerated(F, d, N));

    // closed form of the local factor: the quotient has one more element
    // than its Lie side, so |E| = P - 1
    for (auto& pr : enumerate_monic_irreducibles(F, std::min(3L, D))) {
        auto lf = local_factor_carlitz(F, pr.v);
        rec.eq("factor-closed-form", "P = " + pr.v.str(), lf.e,
               pr.v - Poly<Fq>::one(tcx));
        rec.eq("factor-lie", "P = " + pr.v.str(), lf.lie, pr.v);
    }

    if (q == 2) {
        Series<Fq> got = zeta_value(F, 4, 4);
        Series<Fq> want(F, -4);
        want.c.assign(5, Fq::zero(F));
        want.c[0] = want.c[1] = want.c[2] = Fq::one(F); // theta^-4, theta^-3, theta^-2
        want.c[4] = Fq::one(F);                         // constant term
        rec.eq("initial-window", "q=2 N=4", got, want);
    }

    // the exponential closes the window: exp(value) = 1 through theta^-N
    Series<Fq> zfull = zeta_value(F, std::max(D, N), N);
    auto y = exp_eval(AndersonModule::carlitz(F), {zfull}, N);
    Series<Fq> one_s = Series<Fq>::from_poly(Poly<Fq>::one(tcx), N);
    rec.is("exp-of-value-is-one", "N=" + to_str(N), same_series(y[0], one_s, N), y[0].str(), "1");

    // factors of degree above the window cannot move the value
    long Dbase = std::max(D, N);
    long Dstab = stabilized_degree(q, Dbase);
    if (Dstab > Dbase) {
        EulerOptions o1 = opt, o2 = opt;
        o1.D = Dbase;
        o2.D = Dstab;
        rec.eq("euler-stabilization", "D=" + to_str(Dbase) + " vs D=" + to_str(Dstab),
               euler_product<Fq>(F, F, local, o1).value, euler_product<Fq>(F, F, local, o2).value);
    } else {
        R.params.push_back("stabilization window exhausted at D=" + to_str(Dbase));
    }

    EulerOptions ot1 = opt, ot4 = opt;
    ot1.threads = 1;
    ot4.threads = 4;
    rec.eq("thread-schedule-independence", "threads 1 vs 4",
           euler_product<Fq>(F, F, local, ot1).value, euler_product<Fq>(F, F, local, ot4).value);

    return R;
}

// ---------------------------------------------------------------------------
// artin-schreier

SuiteReport suite_artin_schreier(const RunConfig& cfg) {
    SuiteReport R;
    R.suite = "artin-schreier";
    R.seed = cfg.seed;
    Recorder rec{R};

    uint32_t p = prime_field_of(cfg, 3);
    long N = pick(cfg.precision, 5);
    long D = pick(cfg.max_deg, 3);
    R.params = {"p=" + to_str((long)p), "N=" + to_str(N), "D=" + to_str(D)};

    const FqField* F = FqField::get(p);
    PolyCtx<Fq> tcx{F, Var::theta};
    ArtinSchreier AS = build_artin_schreier(p);
    auto gcx = AS.fgcx();
    PolyCtx<GroupRing<Fq>> gtcx{gcx, Var::theta};
    PolyFq ramified = Poly<Fq>::gen(tcx) * AS.one_plus;

    {
        auto lf = local_factor_as(AS, Poly<Fq>::gen(tcx));
        std::vector<GroupRing<Fq>> ce = {GroupRing<Fq>::trace_elem(gcx), GroupRing<Fq>::one(gcx)};
        std::vector<GroupRing<Fq>> cl = {GroupRing<Fq>::zero(gcx), GroupRing<Fq>::one(gcx)};
        rec.eq("ramified-factor", "P = theta", lf.e, Poly<GroupRing<Fq>>(gtcx, ce));
        rec.eq("ramified-lie", "P = theta", lf.lie, Poly<GroupRing<Fq>>(gtcx, cl));
    }

    // split factors: P 1_G minus the symbol times the Frobenius of P
    for (auto& pr : enumerate_monic_irreducibles(F, D)) {
        if ((ramified % pr.v).is_zero()) continue;
        long frob = frobenius_element(p, pr.v);
        Fq chi = residue_symbol_monic(AS.one_plus, pr.v, p - 1);
        auto lf = local_factor_as(AS, pr.v);
        Poly<GroupRing<Fq>> want =
            embed_theta_poly<GroupRing<Fq>>(gcx, pr.v) -
            Poly<GroupRing<Fq>>::constant(gtcx,
                                          GroupRing<Fq>::basis(gcx, (size_t)frob).scaled(chi));
        rec.eq("factor-at", "P = " + pr.v.str(), lf.e, want);
        rec.eq("lie-at", "P = " + pr.v.str(), lf.lie, embed_theta_poly<GroupRing<Fq>>(gcx, pr.v));
        rec.eq("frobenius-is-artin", "P = " + pr.v.str(), frob, artin_element(p, pr.v));
    }

    // the Artin element is additive on products
    std::mt19937_64 rng(cfg.seed);
    auto random_coprime = [&](long dmax) {
        long d = 1 + (long)(rng() % (uint64_t)dmax);
        std::vector<Fq> cs((size_t)d + 1, Fq::zero(F));
        cs[0] = Fq::from_int(F, 1 + (long)(rng() % (p - 1)));
        for (long i = 1; i < d; ++i) cs[(size_t)i] = Fq::from_int(F, (long)(rng() % p));
        cs[(size_t)d] = Fq::one(F);
        return Poly<Fq>(tcx, cs);
    };
    for (int t = 0; t < 20; ++t) {
        PolyFq a = random_coprime(4), b = random_coprime(4);
        rec.eq("artin-additivity", "a = " + a.str() + ", b = " + b.str(),
               artin_element(p, a * b), (artin_element(p, a) + artin_element(p, b)) % (long)p);
    }

    // trace of theta alpha^{p-1} collapses to -theta
    for (uint32_t tp : {3u, 5u}) {
        const ExtAlgebra* B = ExtAlgebra::get(tp);
        AlgElem ap = AlgElem::one(B);
        for (uint32_t i = 0; i + 1 < tp; ++i) ap = ap * B->alpha();
        AlgElem tr = B->trace_G(B->theta() * ap);
        rec.is("trace-collapse", "p = " + to_str((long)tp), tr == -B->theta(), tr.str(),
               (-B->theta()).str());
    }

    // product over split primes vs the symbol-weighted monic sum
    long Wts = N;
    while (Wts > 1 && upow(p, (uint64_t)Wts) > (uint64_t(1) << 18)) --Wts;
    {
        EulerOptions opt;
        opt.D = Wts;
        opt.N = Wts;
        opt.structural_den = ramified;
        opt.tag = "equivariant";
        auto L = euler_product<GroupRing<Fq>>(
            F, gcx, [&](const PolyFq& v) { return local_factor_as(AS, v); }, opt);
        SymbolTable tab(F, AS.one_plus, p - 1, Wts);
        auto S = monic_weighted_sum<GroupRing<Fq>>(
            F, gcx, Wts, Wts, ramified, [&](const PolyFq& b) {
                Fq c = tab(b);
                if (c.is_zero()) return GroupRing<Fq>::zero(gcx);
                return GroupRing<Fq>::basis(gcx, (size_t)artin_element(p, b)).scaled(c);
            });
        rec.is("product-equals-symbol-sum", "D = N = " + to_str(Wts),
               same_series(L.value, S, Wts), L.value.str(), S.str());

        long want_excluded = 0;
        for (auto& [P, e] : factorize(ramified))
            if (P.deg() <= Wts) ++want_excluded;
        rec.eq("excluded-prime-count", "divisors of theta (1+theta^(p-1))",
               (long)L.excluded.size(), want_excluded);
    }

    // every quotient of the twisted lattice is cohomologically trivial
    auto fc = FineCharacters::make(AS.G, F);
    for (auto& pr : enumerate_monic_irreducibles(F, 2)) {
        auto ct = cohomologically_trivial(gmodule_of_quotient(AS, pr.v), fc);
        rec.is("quotient-cohomologically-trivial", "P = " + pr.v.str(), ct.trivial,
               to_str((long)ct.blocks.size()) + " blocks", "all blocks free");
    }

    // equivariant Euler stabilization
    long Dbase = std::max(D, N);
    long Dstab = stabilized_degree(p, Dbase);
    if (Dstab > Dbase) {
        EulerOptions o1, o2;
        o1.D = Dbase;
        o2.D = Dstab;
        o1.N = o2.N = N;
        o1.structural_den = o2.structural_den = ramified;
        auto a = euler_product<GroupRing<Fq>>(
            F, gcx, [&](const PolyFq& v) { return local_factor_as(AS, v); }, o1);
        auto b = euler_product<GroupRing<Fq>>(
            F, gcx, [&](const PolyFq& v) { return local_factor_as(AS, v); }, o2);
        rec.eq("euler-stabilization", "D=" + to_str(Dbase) + " vs D=" + to_str(Dstab), a.value,
               b.value);
    } else {
        R.params.push_back("stabilization window exhausted at D=" + to_str(Dbase));
    }

    return R;
}

// ---------------------------------------------------------------------------
// detg-bridge

SuiteReport suite_detg_bridge(const RunConfig& cfg) {
    SuiteReport R;
    R.suite = "detg-bridge";
    R.seed = cfg.seed;
    Recorder rec{R};

    const long trials = 100;
    std::mt19937_64 rng(cfg.seed);
    const std::vector<std::vector<long>> gspecs = {{2}, {3}, {4}, {2, 2}};
    R.params = {"trials=" + to_str(trials), "q in {2,3}", "G in {Z/2, Z/3, Z/4, Z/2 x Z/2}",
                "rank <= 4", "seed=" + to_str((long)cfg.seed)};

    for (long t = 0; t < trials; ++t) {
        uint32_t q = (t % 2) ? 3 : 2;
        const FqField* F = FqField::get(q);
        const AbelianGroup* G = AbelianGroup::get(gspecs[(size_t)((t / 2) % 4)], q);
        size_t rank = 1 + (size_t)(rng() % 4);
        size_t n = G->size();
        GroupRingCtx<Fq> gcx{G, F};

        Matrix<GroupRing<Fq>> M(gcx, rank, rank);
        for (size_t i = 0; i < rank; ++i)
            for (size_t j = 0; j < rank; ++j) {
                GroupRing<Fq> x(gcx);
                for (size_t g = 0; g < n; ++g) x.c[g] = Fq(F, rng() % q);
                M(i, j) = x;
            }
        std::string desc = "trial " + to_str(t) + ": q=" + to_str((long)q) + " G=" + G->str() +
                           " rank=" + to_str((long)rank);

        // det_G of the equivariant Fitting generator is the Fitting generator
        // of the same module seen over F_q
        auto fitG = fitting_monic(FiniteThetaModule<GroupRing<Fq>>{M, "sample"});
        auto fitA = fitting_monic(FiniteThetaModule<Fq>{blowup(M), "sample over F_q"});
        rec.eq("fitting-blowup-bridge", desc, det_G(nest_swap(fitG)), fitA);

        // same bridge through the lattice-index route: present the module by
        // theta I - A_theta and compare the two index computations
        PolyCtx<Fq> kcx{F, Var::theta};
        GroupRingCtx<RatFun<Fq>> kg{G, kcx};
        RatFun<Fq> th = RatFun<Fq>::of(Poly<Fq>::gen(kcx));
        bool scaled_basis = (t % 4 == 3);

        Matrix<GroupRing<RatFun<Fq>>> B2(kg, rank, rank);
        for (size_t i = 0; i < rank; ++i)
            for (size_t j = 0; j < rank; ++j) {
                B2(i, j) = -lift_groupring(M(i, j), kg);
                if (i == j) B2(i, j) += GroupRing<RatFun<Fq>>::scalar(kg, th);
            }
        Matrix<GroupRing<RatFun<Fq>>> B1 = Matrix<GroupRing<RatFun<Fq>>>::identity(kg, rank);
        if (scaled_basis)
            for (size_t i = 0; i < rank; ++i) B1(i, i) = GroupRing<RatFun<Fq>>::scalar(kg, th);
        RatFun<Fq> viaG = det_G(det(change_matrix(B1, B2)));

        Matrix<Fq> bm = blowup(M);
        Matrix<RatFun<Fq>> bb(kcx, rank * n, rank * n);
        Matrix<RatFun<Fq>> b1 = Matrix<RatFun<Fq>>::identity(kcx, rank * n);
        for (size_t r = 0; r < rank * n; ++r) {
            for (size_t s = 0; s < rank * n; ++s)
                bb(r, s) = RatFun<Fq>::of(Poly<Fq>::constant(kcx, -bm(r, s)));
            bb(r, r) = bb(r, r) + th;
            if (scaled_basis) b1(r, r) = th;
        }
        RatFun<Fq> viaA = lattice_index_A(b1, bb);
        rec.is("index-blowup-bridge", desc + (scaled_basis ? ", basis theta I" : ""),
               (viaG - viaA).is_zero(), viaG.str(), viaA.str());
    }

    return R;
}

// ---------------------------------------------------------------------------
// nuclear-props

SuiteReport suite_nuclear_props(const RunConfig& cfg) {
    SuiteReport R;
    R.suite = "nuclear-props";
    R.seed = cfg.seed;
    Recorder rec{R};

    long N = std::max(2L, pick(cfg.precision, 3));
    std::vector<uint64_t> qs = cfg.q ? std::vector<uint64_t>{cfg.q} : std::vector<uint64_t>{2, 3};
    {
        std::string qlist;
        for (uint64_t q : qs) qlist += (qlist.empty() ? "" : ",") + to_str((long)q);
        R.params = {"q in {" + qlist + "}", "N=" + to_str(N), "tower depth <= 3"};
    }

    for (uint64_t q : qs) {
        const FqField* F = field_of(q);
        PolyCtx<Fq> tcx{F, Var::theta};
        std::string qtag = "q=" + to_str((long)q);
        PolyFq p1 = Poly<Fq>::gen(tcx) + Poly<Fq>::one(tcx);

        for (auto& pr : enumerate_monic_irreducibles(F, 2)) {
            auto oc = check_localization<Fq>(
                [&](long depth, bool ft) { return tower_carlitz(F, pr.v, depth, ft); }, N);
            rec.outcome("localization", qtag + " P=" + pr.v.str(), oc);
            rec.outcome("ratio-vs-fitting", qtag + " P=" + pr.v.str(),
                        check_ratio_vs_fitting(tower_carlitz(F, pr.v, 1, true), N));
        }

        {
            bool ok = true;
            std::string bad;
            for (auto& pr : enumerate_monic_irreducibles(F, 3)) {
                auto E = reduce_mod_scalar(Poly<Fq>::one(tcx), pr.v, "");
                auto L = reduce_mod_scalar_lie(pr.v, "");
                if (!reverse_charpoly_bridge(E) || !reverse_charpoly_bridge(L)) {
                    ok = false;
                    bad += (bad.empty() ? "" : ", ") + pr.v.str();
                }
            }
            rec.is("reverse-charpoly-bridge", qtag + ", primes of degree <= 3", ok, bad, "");
        }

        QuotientTower<Fq> T3 = tower_carlitz(F, p1, 3, false);
        NuclearOperator<Fq> psi = ratio_operator(T3, N);
        {
            std::vector<TwistedData<Fq>> data;
            for (long r = 1; r < N; ++r)
                data.push_back(TwistedData<Fq>{{1, var_power(tcx, r)}, {2, Poly<Fq>::one(tcx)}});
            NuclearOperator<Fq> phi = nuclear_from_twisted(T3, data, N, "sample family");
            rec.outcome("multiplicativity", qtag, check_multiplicativity(T3, phi, psi, N));
            rec.outcome("multiplicativity-with-identity", qtag,
                        check_multiplicativity(T3, zero_operator(T3, N), psi, N));
        }
        for (long m = 1; m < std::min(N, 3L); ++m) {
            Poly<Fq> a = var_power(tcx, 2) + Poly<Fq>::one(tcx);
            rec.outcome("commutation", qtag + " placement Z^" + to_str(m),
                        check_commutation(T3, a, TwistedData<Fq>{{1, Poly<Fq>::gen(tcx)}}, m, N));
        }
        rec.outcome("nucleus-independence", qtag, check_nucleus_independence(T3, psi, N));

        auto tower_of = [&](const PolyFq& v) {
            return std::optional<QuotientTower<Fq>>(tower_carlitz(F, v, 1, true));
        };
        Poly<Fq> e1 = nuclear_euler<Fq>(F, tower_of, N, N);
        Poly<Fq> e2 = nuclear_euler<Fq>(F, tower_of, N + 2, N);
        rec.eq("nuclear-euler-stabilization", qtag + " D=" + to_str(N) + " vs D=" + to_str(N + 2),
               e1, e2);
        PolyCtx<Fq> Zcx{F, Var::Z};
        rec.eq("nuclear-euler-inverts-zeta", qtag + " mod Z^" + to_str(N),
               poly_drop_from(e1 * z_reading(zeta_value(F, N, N), N, Zcx), N),
               Poly<Fq>::one(Zcx));
    }

    // equivariant and deformed towers at p = 3
    if (!cfg.q || cfg.q == 3) {
        const uint32_t p = 3;
        const FqField* F = FqField::get(p);
        PolyCtx<Fq> tcx{F, Var::theta};
        PolyFq p1 = Poly<Fq>::gen(tcx) + Poly<Fq>::one(tcx);
        ArtinSchreier AS = build_artin_schreier(p);
        long Ne = std::min(N, 3L);

        rec.outcome("localization-equivariant", "P=" + p1.str(),
                    check_localization<GroupRing<Fq>>(
                        [&](long d, bool ft) { return tower_equivariant(AS, p1, d, ft); }, Ne));
        rec.outcome("localization-deformed", "P=" + p1.str(),
                    check_localization<GroupRing<Poly<Fq>>>(
                        [&](long d, bool ft) { return tower_equivariant_deformed(AS, p1, d, ft); },
                        Ne));
        rec.outcome("localization-trace-line", "P=" + p1.str(),
                    check_localization<Fq>(
                        [&](long d, bool ft) { return tower_trace_line(AS, p1, d, ft); }, N));
        rec.outcome("localization-deformed-scalar", "P=theta",
                    check_localization<Poly<Fq>>(
                        [&](long d, bool ft) {
                            return tower_carlitz_deformed(F, Poly<Fq>::gen(tcx), d, ft);
                        },
                        Ne));

        rec.outcome("ratio-vs-fitting-equivariant", "P=" + p1.str(),
                    check_ratio_vs_fitting(tower_equivariant(AS, p1, 1, true), Ne));
        rec.outcome("ratio-vs-fitting-deformed", "P=" + p1.str(),
                    check_ratio_vs_fitting(tower_equivariant_deformed(AS, p1, 1, true), Ne));
        rec.outcome("ratio-vs-fitting-trace-line", "P=" + p1.str(),
                    check_ratio_vs_fitting(tower_trace_line(AS, p1, 1, true), N));

        {
            auto Teq = tower_equivariant(AS, p1, 2, false);
            rec.outcome("multiplicativity-equivariant", "P=" + p1.str(),
                        check_multiplicativity(Teq, ratio_operator(Teq, Ne),
                                               ratio_operator(Teq, Ne), Ne));
        }

        bool ok = true;
        std::string bad;
        for (auto& pr : enumerate_monic_irreducibles(F, 2)) {
            if (!reverse_charpoly_bridge(reduce_mod_equivariant(AS, pr.v)) ||
                !reverse_charpoly_bridge(reduce_mod_equivariant_deformed(AS, pr.v))) {
                ok = false;
                bad += (bad.empty() ? "" : ", ") + pr.v.str();
            }
        }
        rec.is("reverse-charpoly-bridge-equivariant", "p=3, primes of degree <= 2", ok, bad, "");
    }

    return R;
}

// ---------------------------------------------------------------------------
// lattice-index

SuiteReport suite_lattice_index(const RunConfig& cfg) {
    SuiteReport R;
    R.suite = "lattice-index";
    R.seed = cfg.seed;
    Recorder rec{R};

    uint32_t p = prime_field_of(cfg, 3);
    long N = pick(cfg.precision, 12);
    long D = pick(cfg.max_deg, 3);
    R.params = {"p=" + to_str((long)p), "N=" + to_str(N), "D=" + to_str(D),
                "seed=" + to_str((long)cfg.seed)};

    const FqField* F = FqField::get(p);
    PolyCtx<Fq> tcx{F, Var::theta};
    ArtinSchreier AS = build_artin_schreier(p);

    // trace line: |E| = P - chi(P) for every monic irreducible P, with
    // chi = 0 exactly at the divisors of the multiplier
    for (auto& pr : enumerate_monic_irreducibles(F, D)) {
        Fq chi = (AS.n_mult % pr.v).is_zero() ? Fq::zero(F)
                                              : residue_symbol_monic(AS.one_plus, pr.v, p - 1);
        auto lf = local_factor_trace_line(AS, pr.v);
        rec.eq("trace-line-factor", "P = " + pr.v.str(), lf.e,
               pr.v - Poly<Fq>::constant(tcx, chi));
        rec.eq("trace-line-lie", "P = " + pr.v.str(), lf.lie, pr.v);
    }

    // the product telescopes onto the class-function sum
    {
        long Wp = std::min(N, 6L);
        while (Wp > 1 && upow(p, (uint64_t)Wp) > (uint64_t(1) << 18)) --Wp;
        EulerOptions opt;
        opt.D = Wp;
        opt.N = Wp;
        opt.tag = "trace line";
        auto L = euler_product<Fq>(
            F, F, [&](const PolyFq& v) { return local_factor_trace_line(AS, v); }, opt);
        Series<Fq> s = trace_line_series(p, Wp);
        rec.is("product-equals-class-sum", "D = N = " + to_str(Wp), same_series(L.value, s, Wp),
               L.value.str(), s.str());
    }

    // Kummer-line unit: the L-value times theta delta exponentiates into the lattice
    {
        Series<Fq> s = trace_line_series(p, N);
        UnitReport rep = verify_unit_delta_line(p, s, N);
        rec.is("delta-line-membership", "N = " + to_str(N), rep.member,
               "residual floor " + to_str(rep.residual_floor), "zero residual");
        if (p == 3 && N >= 6) {
            std::vector<Fq> cand = {Fq::zero(F), Fq::one(F), Fq::one(F)};
            rec.eq("delta-line-candidate", "N = " + to_str(N), rep.candidate,
                   Poly<Fq>(tcx, cand));
        }
    }

    // integral unit: exp(zeta value) lands on 1 in the full lattice
    for (uint64_t q2 : {2, 3}) {
        const FqField* F2 = FqField::get((uint32_t)q2);
        PolyCtx<Fq> tcx2{F2, Var::theta};
        auto C = AndersonModule::carlitz(F2);
        UnitReport rep = verify_unit_integral(C, {zeta_value(F2, N, N)}, N)[0];
        rec.is("integral-membership", "q = " + to_str((long)q2), rep.member,
               "residual floor " + to_str(rep.residual_floor), "zero residual");
        rec.eq("integral-candidate", "q = " + to_str((long)q2), rep.candidate,
               Poly<Fq>::one(tcx2));

        Series<Fq> off(F2, -N);
        off.c.assign((size_t)N, Fq::zero(F2));
        off.c[(size_t)(N - 1)] = Fq::one(F2); // theta^-1
        UnitReport neg = verify_unit_integral(C, {off}, N)[0];
        rec.is("non-member-detected", "q = " + to_str((long)q2) + ", input theta^-1",
               !neg.member, "accepted", "rejection");
    }

    std::mt19937_64 rng(cfg.seed);
    PolyCtx<Fq> kcx{F, Var::theta};
    auto random_ratfun_basis = [&](size_t nr, long dmax) {
        for (;;) {
            Matrix<RatFun<Fq>> B(kcx, nr, nr);
            for (size_t i = 0; i < nr; ++i)
                for (size_t j = 0; j < nr; ++j) {
                    std::vector<Fq> cs((size_t)dmax + 1, Fq::zero(F));
                    for (auto& a : cs) a = Fq::from_int(F, (long)(rng() % p));
                    B(i, j) = RatFun<Fq>::of(Poly<Fq>(kcx, cs));
                }
            if (!det(B).is_zero()) return B;
        }
    };

    // [B : fB] = f^rank
    for (int t = 0; t < 10; ++t) {
        Matrix<RatFun<Fq>> B = random_ratfun_basis(2, 2);
        long fd = 1 + (long)(rng() % 3);
        std::vector<Fq> fc((size_t)fd + 1, Fq::zero(F));
        for (long i = 0; i < fd; ++i) fc[(size_t)i] = Fq::from_int(F, (long)(rng() % p));
        fc[(size_t)fd] = Fq::one(F);
        Poly<Fq> f(kcx, fc);
        Matrix<RatFun<Fq>> fB(kcx, 2, 2);
        for (size_t i = 0; i < 2; ++i)
            for (size_t j = 0; j < 2; ++j) fB(i, j) = B(i, j) * RatFun<Fq>::of(f);
        RatFun<Fq> idx = lattice_index_A(B, fB);
        rec.is("index-scaling", "f = " + f.str(), (idx - RatFun<Fq>::of(f * f)).is_zero(),
               idx.str(), (f * f).str());
    }

    // equivariant index against its scalar shadow, plus the monic certificate
    for (long gf : {2L, 3L}) {
        const AbelianGroup* G = AbelianGroup::get({gf}, p);
        auto fc = FineCharacters::make(G, F);
        GroupRingCtx<RatFun<Fq>> kg{G, kcx};
        size_t n = G->size();
        long Nb = std::min(N, 10L);
        for (int t = 0; t < 5; ++t) {
            Matrix<GroupRing<RatFun<Fq>>> B2(kg, 2, 2);
            int attempts = 0;
            for (;;) {
                for (size_t i = 0; i < 2; ++i)
                    for (size_t j = 0; j < 2; ++j) {
                        GroupRing<RatFun<Fq>> x(kg);
                        for (size_t g = 0; g < n; ++g) {
                            std::vector<Fq> cs(2, Fq::zero(F));
                            cs[0] = Fq::from_int(F, (long)(rng() % p));
                            cs[1] = Fq::from_int(F, (long)(rng() % p));
                            x.c[g] = RatFun<Fq>::of(Poly<Fq>(kcx, cs));
                        }
                        B2(i, j) = x;
                    }
                if (ring_is_unit(det(B2))) break;
                require(++attempts < 100, "no invertible sample found");
            }
            Matrix<GroupRing<RatFun<Fq>>> B1 = Matrix<GroupRing<RatFun<Fq>>>::identity(kg, 2);
            GIndex gi = lattice_index_G(B1, B2, fc, Nb);
            RatFun<Fq> viaA = lattice_index_A(Matrix<RatFun<Fq>>::identity(kcx, 2 * n),
                                              blowup(B2));
            RatFun<Fq> dg = det_G(gi.raw);
            RatFun<Fq> dgm(make_monic(dg.num), make_monic(dg.den));
            std::string desc = "trial " + to_str((long)t) + ": G=" + G->str();
            rec.is("index-detg-bridge", desc, (dgm - viaA).is_zero(), dgm.str(), viaA.str());

            Series<Fq> lhs = det_G_series(gi.rep.plus);
            Series<Fq> rhs = series_of_ratio(viaA.num, viaA.den, Nb);
            rec.is("monic-rep-det-series", desc, same_series(lhs, rhs, Nb), lhs.str(), rhs.str());

            rec.is("unit-certificate", desc, ring_is_unit(nest_swap(gi.rep.unit)),
                   gi.rep.unit.str(), "polynomial unit");
            Series<GroupRing<Fq>> back =
                Series<GroupRing<Fq>>::from_poly(gi.rep.unit, Nb) * gi.rep.plus;
            Series<GroupRing<Fq>> orig = groupring_series(gi.raw, Nb);
            rec.is("unit-times-monic-rep", desc, same_series(back, orig, Nb), back.str(),
                   orig.str());
        }
    }

    return R;
}

// ---------------------------------------------------------------------------
// z-deform

SuiteReport suite_z_deform(const RunConfig& cfg) {
    SuiteReport R;
    R.suite = "z-deform";
    R.seed = cfg.seed;
    Recorder rec{R};

    long N = pick(cfg.precision, 5);
    long D = pick(cfg.max_deg, 3);
    uint64_t qc = cfg.q ? cfg.q : 2;
    R.params = {"carlitz q=" + to_str((long)qc), "equivariant p=3", "N=" + to_str(N),
                "D=" + to_str(D)};

    // shape of the deformation: A_i picks up z^i, specializations undo it
    for (uint64_t q : {qc, (uint64_t)3}) {
        const FqField* F = field_of(q);
        PolyCtx<Fq> ktx{F, Var::theta};
        RatFun<Fq> one = RatFun<Fq>::one(ktx);
        RatFun<Fq> zero = RatFun<Fq>::zero(ktx);
        Kz zk = Kz::gen(kz_ctx(F));
        std::string qtag = "q=" + to_str((long)q);

        AndersonModule C = AndersonModule::carlitz(F);
        AndersonModule Cz = C.z_deform();
        Matrix<Kz> a1(kz_ctx(F), 1, 1);
        a1(0, 0) = zk;
        rec.is("deformed-carlitz-twist", qtag, Cz.A[1] == a1, "", "A_1 = z");

        AndersonModule T2 = AndersonModule::carlitz_tensor(F, 2);
        AndersonModule T2z = T2.z_deform();
        bool shape = true;
        for (size_t i = 1; i < T2z.A.size(); ++i) {
            Matrix<Kz> want = T2.A[i];
            for (size_t k = 0; k < i; ++k) want = want.scaled(zk);
            shape = shape && (T2z.A[i] == want);
        }
        rec.is("deformed-tensor-shape", qtag + ", rank 2", shape, "", "A_i scaled by z^i");

        bool back1 = true, back0 = true;
        AndersonModule C1 = Cz.at_z(one), T21 = T2z.at_z(one);
        for (size_t i = 0; i < C.A.size(); ++i) back1 = back1 && (C1.A[i] == C.A[i]);
        for (size_t i = 0; i < T2.A.size(); ++i) back1 = back1 && (T21.A[i] == T2.A[i]);
        AndersonModule C0 = Cz.at_z(zero);
        back0 = C0.A[1] == Matrix<Kz>(kz_ctx(F), 1, 1);
        rec.is("specialize-at-one", qtag, back1, "", "original module");
        rec.is("specialize-at-zero", qtag, back0, "", "twist removed");
    }

    // deformed scalar factors: P 1 - z^{deg P}, specializing as expected
    {
        const FqField* F = field_of(qc);
        PolyCtx<Fq> tcx{F, Var::theta};
        PolyCtx<Fq> zcx{F, Var::z};
        PolyCtx<Poly<Fq>> ztx{zcx, Var::theta};
        for (auto& pr : enumerate_monic_irreducibles(F, D)) {
            auto lf = local_factor_carlitz_z(F, pr.v);
            Poly<Poly<Fq>> want = embed_theta_poly<Poly<Fq>>(zcx, pr.v) -
                                  Poly<Poly<Fq>>::constant(ztx, var_power(zcx, pr.degree));
            rec.eq("deformed-factor", "P = " + pr.v.str(), lf.e, want);
            rec.eq("deformed-at-one", "P = " + pr.v.str(), specialize_z(lf.e, Fq::one(F)),
                   local_factor_carlitz(F, pr.v).e);
            rec.eq("deformed-at-zero", "P = " + pr.v.str(), specialize_z(lf.e, Fq::zero(F)),
                   pr.v);
        }

        // the deformed zeta collects each degree block with weight z^d
        long Wz = std::min(N, 8L);
        EulerOptions opt;
        opt.D = Wz;
        opt.N = Wz;
        opt.tag = "deformed carlitz";
        auto Lz = euler_product<Poly<Fq>>(
            F, zcx, [&](const PolyFq& v) { return local_factor_carlitz_z(F, v); }, opt);
        SeriesCtx<Poly<Fq>> szx{zcx, Wz};
        Series<Poly<Fq>> want = Series<Poly<Fq>>::zero(szx);
        for (long d = 0; d <= Wz; ++d)
            want += embed_scaled<Poly<Fq>>(zcx, zeta_degree_block(F, d, Wz), var_power(zcx, d));
        rec.is("deformed-zeta-blocks", "q=" + to_str((long)qc) + " D=N=" + to_str(Wz),
               same_series(Lz.value, want, Wz), Lz.value.str(), want.str());
        rec.is("deformed-zeta-at-one", "q=" + to_str((long)qc),
               same_series(specialize_z(Lz.value, Fq::one(F)), zeta_value(F, Wz, Wz), Wz),
               specialize_z(Lz.value, Fq::one(F)).str(), zeta_value(F, Wz, Wz).str());
        Series<Fq> at0 = specialize_z(Lz.value, Fq::zero(F));
        rec.is("deformed-zeta-at-zero", "q=" + to_str((long)qc), at0.is_one(), at0.str(), "1");
    }

    // equivariant deformation at p = 3
    {
        const uint32_t p = 3;
        const FqField* F = FqField::get(p);
        PolyCtx<Fq> tcx{F, Var::theta};
        PolyCtx<Fq> zcx{F, Var::z};
        ArtinSchreier AS = build_artin_schreier(p);
        auto gcx = AS.fgcx();
        GroupRingCtx<Poly<Fq>> gzx{AS.G, zcx};
        PolyCtx<GroupRing<Poly<Fq>>> gztx{gzx, Var::theta};
        PolyFq ramified = Poly<Fq>::gen(tcx) * AS.one_plus;

        for (auto& pr : enumerate_monic_irreducibles(F, D)) {
            if ((ramified % pr.v).is_zero()) continue;
            long frob = frobenius_element(p, pr.v);
            Fq chi = residue_symbol_monic(AS.one_plus, pr.v, p - 1);
            auto lf = local_factor_as_z(AS, pr.v);
            GroupRing<Poly<Fq>> sub =
                GroupRing<Poly<Fq>>::basis(gzx, (size_t)frob)
                    .scaled(var_power(zcx, pr.degree).scaled(chi));
            Poly<GroupRing<Poly<Fq>>> want =
                embed_theta_poly<GroupRing<Poly<Fq>>>(gzx, pr.v) -
                Poly<GroupRing<Poly<Fq>>>::constant(gztx, sub);
            rec.eq("deformed-equivariant-factor", "P = " + pr.v.str(), lf.e, want);
            rec.eq("deformed-equivariant-at-one", "P = " + pr.v.str(),
                   specialize_z(lf.e, Fq::one(F)), local_factor_as(AS, pr.v).e);
            rec.eq("deformed-equivariant-at-zero", "P = " + pr.v.str(),
                   specialize_z(lf.e, Fq::zero(F)), embed_theta_poly<GroupRing<Fq>>(gcx, pr.v));
        }

        // deformed product vs the z-weighted symbol sum
        long Wts = std::min(N, 5L);
        EulerOptions opt;
        opt.D = Wts;
        opt.N = Wts;
        opt.structural_den = ramified;
        auto Lz = euler_product<GroupRing<Poly<Fq>>>(
            F, gzx, [&](const PolyFq& v) { return local_factor_as_z(AS, v); }, opt);
        SymbolTable tab(F, AS.one_plus, p - 1, Wts);
        auto S = monic_weighted_sum<GroupRing<Poly<Fq>>>(
            F, gzx, Wts, Wts, ramified, [&](const PolyFq& b) {
                Fq c = tab(b);
                if (c.is_zero()) return GroupRing<Poly<Fq>>::zero(gzx);
                return GroupRing<Poly<Fq>>::basis(gzx, (size_t)artin_element(p, b))
                    .scaled(var_power(zcx, b.deg()).scaled(c));
            });
        rec.is("deformed-product-equals-symbol-sum", "p=3 D=N=" + to_str(Wts),
               same_series(Lz.value, S, Wts), Lz.value.str(), S.str());

        auto plain = euler_product<GroupRing<Fq>>(
            F, gcx, [&](const PolyFq& v) { return local_factor_as(AS, v); }, opt);
        rec.is("deformed-equivariant-at-one-series", "p=3 D=N=" + to_str(Wts),
               same_series(specialize_z(Lz.value, Fq::one(F)), plain.value, Wts),
               specialize_z(Lz.value, Fq::one(F)).str(), plain.value.str());
        Series<GroupRing<Fq>> at0 = specialize_z(Lz.value, Fq::zero(F));
        rec.is("deformed-equivariant-at-zero-series", "p=3", at0.is_one(), at0.str(), "1");
    }

    return R;
}

// ---------------------------------------------------------------------------
// algebra-laws

template <class R, class Gen>
void ring_axiom_family(Recorder& rec, const std::string& tag, typename R::Ctx cx, long trials,
                       Gen&& gen) {
    long bad = 0;
    std::string first;
    for (long t = 0; t < trials; ++t) {
        R a = gen(), b = gen(), c = gen();
        bool ok = ((a + b) + c == a + (b + c)) && (a * b == b * a) &&
                  ((a * b) * c == a * (b * c)) && (a * (b + c) == a * b + a * c) &&
                  (a * R::one(cx) == a) && (a + R::zero(cx) == a) && (a - a == R::zero(cx));
        if (!ok) {
            ++bad;
            if (first.empty())
                first = "trial " + std::to_string(t) + ": a=" + a.str() + " b=" + b.str() +
                        " c=" + c.str();
        }
    }
    rec.is("ring-axioms-" + tag, std::to_string(trials) + " trials", bad == 0, first, "");
}

SuiteReport suite_algebra_laws(const RunConfig& cfg) {
    SuiteReport R;
    R.suite = "algebra-laws";
    R.seed = cfg.seed;
    Recorder rec{R};

    const long trials = 100;
    std::mt19937_64 rng(cfg.seed);
    R.params = {"trials per family=" + to_str(trials), "seed=" + to_str((long)cfg.seed)};

    const FqField* F2 = FqField::get(2);
    const FqField* F3 = FqField::get(3);
    auto rand_fq = [&](const FqField* F) { return Fq(F, rng() % F->q); };
    auto rand_poly = [&](PolyCtx<Fq> cx, long dmax) {
        std::vector<Fq> cs((size_t)dmax + 1, Fq::zero(cx.coeff));
        for (auto& a : cs) a = rand_fq(cx.coeff);
        return Poly<Fq>(cx, cs);
    };

    {
        PolyCtx<Fq> cx{F3, Var::theta};
        ring_axiom_family<Poly<Fq>>(rec, "poly", cx, trials, [&] { return rand_poly(cx, 4); });
    }
    {
        GroupRingCtx<Fq> cx{AbelianGroup::get({4}, 2), F2};
        ring_axiom_family<GroupRing<Fq>>(rec, "groupring", cx, trials, [&] {
            GroupRing<Fq> x(cx);
            for (auto& a : x.c) a = rand_fq(F2);
            return x;
        });
    }
    {
        PolyCtx<Fq> zcx{F3, Var::z};
        GroupRingCtx<Poly<Fq>> cx{AbelianGroup::get({3}, 3), zcx};
        ring_axiom_family<GroupRing<Poly<Fq>>>(rec, "groupring-poly", cx, trials, [&] {
            GroupRing<Poly<Fq>> x(cx);
            for (auto& a : x.c) a = rand_poly(zcx, 2);
            return x;
        });
    }

    // series inversion
    {
        PolyCtx<Fq> tcx{F3, Var::theta};
        long Ns = 8;
        long bad = 0;
        std::string first;
        for (long t = 0; t < trials; ++t) {
            Series<Fq> a(F3, -Ns);
            a.c.assign((size_t)Ns + 2, Fq::zero(F3));
            for (auto& v : a.c) v = rand_fq(F3);
            a.c.back() = Fq::from_int(F3, 1 + (long)(rng() % 2)); // unit lead
            a.normalize();
            Series<Fq> b = Series<Fq>::from_poly(rand_poly(tcx, 2), Ns) +
                           Series<Fq>::one(SeriesCtx<Fq>{F3, Ns});
            Series<Fq> cs = Series<Fq>::from_poly(rand_poly(tcx, 1), Ns) +
                            Series<Fq>::one(SeriesCtx<Fq>{F3, Ns});
            Series<Fq> inv = series_invert(a);
            long Nc = std::min(inv.precision(), a.precision());
            bool ok = (a * inv).truncated(Nc).is_one() &&
                      same_series(series_invert(inv), a, std::min(Nc, Ns)) &&
                      same_series((a * b) * cs, a * (b * cs), Ns);
            if (!ok) {
                ++bad;
                if (first.empty()) first = "trial " + std::to_string(t) + ": a=" + a.str();
            }
        }
        rec.is("series-inversion", std::to_string(trials) + " trials", bad == 0, first, "");
    }

    // residue symbol multiplicativity, and the sieve against trial division
    {
        PolyCtx<Fq> tcx{F3, Var::theta};
        Poly<Fq> num = var_power(tcx, 2) + Poly<Fq>::one(tcx);
        SymbolTable tab(F3, num, 2, 8);
        auto rand_monic = [&](long dmax) {
            long d = (long)(rng() % (uint64_t)(dmax + 1));
            std::vector<Fq> cs((size_t)d + 1, Fq::zero(F3));
            for (long i = 0; i < d; ++i) cs[(size_t)i] = rand_fq(F3);
            cs[(size_t)d] = Fq::one(F3);
            return Poly<Fq>(tcx, cs);
        };
        long bad = 0;
        std::string first;
        for (long t = 0; t < trials; ++t) {
            PolyFq a = rand_monic(4), b = rand_monic(4);
            Fq lhs = residue_symbol_monic(num, a * b, 2);
            Fq rhs = residue_symbol_monic(num, a, 2) * residue_symbol_monic(num, b, 2);
            bool ok = lhs == rhs && tab(a * b) == lhs && tab(a) == residue_symbol_monic(num, a, 2);
            if (!ok) {
                ++bad;
                if (first.empty())
                    first = "a=" + a.str() + " b=" + b.str() + ": " + lhs.str() + " vs " +
                            rhs.str();
            }
        }
        rec.is("symbol-multiplicativity", std::to_string(trials) + " trials", bad == 0, first,
               "");
    }

    // lattice index transitivity
    {
        PolyCtx<Fq> kcx{F3, Var::theta};
        auto rand_basis = [&] {
            for (;;) {
                Matrix<RatFun<Fq>> B(kcx, 2, 2);
                for (size_t i = 0; i < 2; ++i)
                    for (size_t j = 0; j < 2; ++j) B(i, j) = RatFun<Fq>::of(rand_poly(kcx, 1));
                if (!det(B).is_zero()) return B;
            }
        };
        long bad = 0;
        std::string first;
        for (long t = 0; t < trials; ++t) {
            auto B1 = rand_basis(), B2 = rand_basis(), B3 = rand_basis();
            RatFun<Fq> i13 = lattice_index_A(B1, B3);
            RatFun<Fq> prod = lattice_index_A(B1, B2) * lattice_index_A(B2, B3);
            RatFun<Fq> norm(make_monic(prod.num), make_monic(prod.den));
            if (!(i13 - norm).is_zero()) {
                ++bad;
                if (first.empty())
                    first = "trial " + std::to_string(t) + ": " + i13.str() + " vs " + norm.str();
            }
        }
        rec.is("index-transitivity", std::to_string(trials) + " trials", bad == 0, first, "");
    }

    // monic representative: reconstruction, idempotence, unit certificate
    {
        struct Case {
            const AbelianGroup* G;
            const FqField* F;
        };
        std::vector<Case> cases = {{AbelianGroup::get({2}, 2), F2},
                                   {AbelianGroup::get({3}, 3), F3},
                                   {AbelianGroup::get({6}, 3), F3}};
        long Ns = 8;
        long bad = 0, skipped = 0;
        std::string first;
        for (long t = 0; t < trials; ++t) {
            auto& cse = cases[(size_t)(t % (long)cases.size())];
            GroupRingCtx<Fq> gcx{cse.G, cse.F};
            auto fcb = FineCharacters::make(cse.G, cse.F);
            Series<GroupRing<Fq>> f(gcx, -Ns);
            long hi = (long)(rng() % 3);
            f.c.assign((size_t)(hi + Ns + 1), GroupRing<Fq>::zero(gcx));
            for (auto& v : f.c)
                for (size_t g = 0; g < cse.G->size(); ++g) v.c[g] = rand_fq(cse.F);
            f.normalize();
            MonicRep rep;
            try {
                rep = monic_representative(f, fcb);
            } catch (const std::exception&) {
                ++skipped; // not invertible at this precision; the draw says so
                continue;
            }
            bool ok = true;
            Series<GroupRing<Fq>> back =
                Series<GroupRing<Fq>>::from_poly(rep.unit, Ns) * rep.plus;
            ok = ok && same_series(back, f, std::min(back.precision(), f.precision()));
            ok = ok && !rep.plus.is_zero() &&
                 rep.plus.coeff_at(rep.plus.hi()) == GroupRing<Fq>::one(gcx);
            ok = ok && ring_is_unit(nest_swap(rep.unit));
            MonicRep again = monic_representative(rep.plus, fcb);
            ok = ok && again.plus == rep.plus &&
                 again.unit == Poly<GroupRing<Fq>>::one(PolyCtx<GroupRing<Fq>>{gcx, Var::theta});
            if (!ok) {
                ++bad;
                if (first.empty()) first = "trial " + std::to_string(t) + ": f=" + f.str();
            }
        }
        rec.is("monic-representative",
               std::to_string(trials) + " trials (" + std::to_string(skipped) +
                   " non-invertible draws skipped)",
               bad == 0 && skipped < trials / 2, first, "");
    }

    // det_G and augmentation are multiplicative
    {
        long bad = 0;
        std::string first;
        for (long t = 0; t < trials; ++t) {
            const FqField* F = (t % 2) ? F3 : F2;
            GroupRingCtx<Fq> gcx{AbelianGroup::get({(t % 2) ? 3L : 4L}, F->p), F};
            GroupRing<Fq> x(gcx), y(gcx);
            for (auto& a : x.c) a = rand_fq(F);
            for (auto& a : y.c) a = rand_fq(F);
            bool ok = det_G(x * y) == det_G(x) * det_G(y) &&
                      (x * y).augmentation() == x.augmentation() * y.augmentation();
            if (!ok) {
                ++bad;
                if (first.empty()) first = "x=" + x.str() + " y=" + y.str();
            }
        }
        rec.is("detg-multiplicativity", std::to_string(trials) + " trials", bad == 0, first, "");
    }

    return R;
}

}  // namespace

std::vector<std::string> suite_names() {
    return {"carlitz-zeta", "artin-schreier", "detg-bridge", "nuclear-props",
            "lattice-index", "z-deform",      "algebra-laws"};
}

SuiteReport run_suite(const std::string& suite, const RunConfig& cfg) {
    validate_config(cfg);
    if (suite == "carlitz-zeta") return suite_carlitz_zeta(cfg);
    if (suite == "artin-schreier") return suite_artin_schreier(cfg);
    if (suite == "detg-bridge") return suite_detg_bridge(cfg);
    if (suite == "nuclear-props") return suite_nuclear_props(cfg);
    if (suite == "lattice-index") return suite_lattice_index(cfg);
    if (suite == "z-deform") return suite_z_deform(cfg);
    if (suite == "algebra-laws") return suite_algebra_laws(cfg);
    std::string names;
    for (auto& n : suite_names()) names += (names.empty() ? "" : ", ") + n;
    throw std::runtime_error("unknown suite '" + suite + "' (available: " + names + ")");
}

std::string SuiteReport::to_json(int indent) const {
    nlohmann::json j;
    j["schema"] = "tlf.verify/1";
    j["suite"] = suite;
    j["seed"] = seed;
    j["pass"] = pass();
    j["params"] = params;
    j["checks"] = nlohmann::json::array();
    for (auto& c : checks) {
        nlohmann::json jc;
        jc["name"] = c.name;
        jc["pass"] = c.pass;
        jc["detail"] = c.detail;
        if (!c.pass) {
            jc["lhs"] = c.lhs;
            jc["rhs"] = c.rhs;
        }
        j["checks"].push_back(std::move(jc));
    }
    return indent < 0 ? j.dump() : j.dump(indent);
}

std::string SuiteReport::to_text() const {
    std::ostringstream os;
    os << "suite " << suite << ": " << (pass() ? "PASS" : "FAIL") << " (" << checks.size()
       << " checks";
    if (failed()) os << ", " << failed() << " failed";
    os << ")\n";
    for (auto& p : params) os << "  param " << p << "\n";
    for (auto& c : checks) {
        os << (c.pass ? "  ok   " : "  FAIL ") << c.name;
        if (!c.detail.empty()) os << "  [" << c.detail << "]";
        os << "\n";
        if (!c.pass) {
            if (!c.lhs.empty()) os << "       lhs: " << c.lhs << "\n";
            if (!c.rhs.empty()) os << "       rhs: " << c.rhs << "\n";
        }
    }
    return os.str();
}

}  // namespace tlf
