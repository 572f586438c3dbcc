#pragma once

#include <random>

#include "tlf/groupring.hpp"
#include "tlf/poly.hpp"

namespace tlf {

// Deterministic source for the randomized property suites: a fixed seed must
// reproduce every trial bit-for-bit, so all draws go through one engine.
struct Rng {
    std::mt19937_64 g;

    explicit Rng(uint64_t seed) : g(seed) {}

    uint64_t below(uint64_t n) {
        require(n > 0, "empty range");
        return std::uniform_int_distribution<uint64_t>(0, n - 1)(g);
    }

    Fq fq(const FqField* F) { return Fq::from_int(F, (long)below(F->q)); }

    Fq fq_nonzero(const FqField* F) { return Fq::from_int(F, 1 + (long)below(F->q - 1)); }

    // degree <= maxdeg, zero allowed
    Poly<Fq> poly(PolyCtx<Fq> cx, long maxdeg) {
        std::vector<Fq> c;
        long d = (long)below((uint64_t)maxdeg + 1);
        for (long k = 0; k <= d; ++k) c.push_back(fq(cx.coeff));
        return Poly<Fq>(cx, std::move(c));
    }

    Poly<Fq> monic(PolyCtx<Fq> cx, long deg) {
        std::vector<Fq> c;
        for (long k = 0; k < deg; ++k) c.push_back(fq(cx.coeff));
        c.push_back(Fq::one(cx.coeff));
        return Poly<Fq>(cx, std::move(c));
    }

    GroupRing<Fq> groupring(GroupRingCtx<Fq> cx) {
        GroupRing<Fq> x(cx);
        for (auto& a : x.c) a = fq(cx.coeff);
        return x;
    }

    GroupRing<Poly<Fq>> groupring_poly(GroupRingCtx<Poly<Fq>> cx, long maxdeg) {
        GroupRing<Poly<Fq>> x(cx);
        for (auto& a : x.c) a = poly(cx.coeff, maxdeg);
        return x;
    }
};

}  // namespace tlf
