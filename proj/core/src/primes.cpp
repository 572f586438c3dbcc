#include "tlf/primes.hpp"

namespace tlf {

void visit_monics(const FqField* F, long d, const std::function<void(const PolyFq&)>& fn) {
    require(d >= 0, "negative degree");
    PolyCtx<Fq> cx{F, Var::theta};
    uint64_t q = F->q;
    uint64_t lowcount = 1;
    for (long i = 0; i < d; ++i) {
        require(lowcount <= (uint64_t(1) << 62) / q, "degree too large to enumerate");
        lowcount *= q;
    }
    // code of a monic of degree d lies in [q^d, 2 q^d)
    for (uint64_t low = 0; low < lowcount; ++low) fn(poly_from_code(cx, lowcount + low));
}

std::vector<PrimeOfA> enumerate_monic_irreducibles(const FqField* F, long d_max) {
    std::vector<PrimeOfA> out;
    for (long d = 1; d <= d_max; ++d)
        visit_monics(F, d, [&](const PolyFq& f) {
            if (is_irreducible(f)) out.push_back(PrimeOfA{f, d});
        });
    return out;
}

static long moebius(long n) {
    long mu = 1;
    for (long l = 2; l * l <= n; ++l) {
        if (n % l) continue;
        n /= l;
        if (n % l == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

long necklace_count(uint64_t q, long d) {
    require(d >= 1, "necklace count needs d >= 1");
    long long s = 0;
    for (long e = 1; e <= d; ++e) {
        if (d % e) continue;
        long mu = moebius(e);
        if (!mu) continue;
        long long t = 1;
        for (long i = 0; i < d / e; ++i) t *= (long long)q;
        s += mu * t;
    }
    return (long)(s / d);
}

std::vector<std::pair<PolyFq, long>> factorize(PolyFq f) {
    require(!f.is_zero(), "factorize(0)");
    f = make_monic(f);
    std::vector<std::pair<PolyFq, long>> out;
    // ascending trial division: once primes of degree < d are stripped, any
    // degree-d divisor is automatically irreducible
    for (long d = 1; 2 * d <= f.deg(); ++d) {
        visit_monics(f.cx.coeff, d, [&](const PolyFq& P) {
            if (2 * d > f.deg()) return;
            long mult = 0;
            while (f.deg() >= d && (f % P).is_zero()) {
                f = f / P;
                ++mult;
            }
            if (mult) out.emplace_back(P, mult);
        });
    }
    if (f.deg() >= 1) out.emplace_back(f, 1);
    return out;
}

Fq residue_symbol(const PolyFq& b, const PolyFq& P, uint64_t d) {
    const FqField* F = b.cx.coeff;
    require(d >= 1 && (F->q - 1) % d == 0, "symbol order must divide q - 1");
    require(P.deg() >= 1, "symbol modulus must be nonconstant");
    uint64_t qd = 1;
    for (long i = 0; i < P.deg(); ++i) {
        require(qd <= (uint64_t(1) << 62) / F->q, "modulus degree too large");
        qd *= F->q;
    }
    PolyFq r = b % P;
    if (r.is_zero()) return Fq::zero(F);
    PolyFq s = powmod(r, (qd - 1) / d, P);
    require(s.deg() <= 0, "residue symbol did not land in the base field");
    return s.coeff(0);
}

} // namespace tlf
