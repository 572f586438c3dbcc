#pragma once

#include <functional>

#include "tlf/poly.hpp"

namespace tlf {

// Monic irreducible element of A = F_q[theta].
struct PrimeOfA {
    PolyFq v;
    long degree = 0;
};

// All monic irreducibles of degree <= d_max, ordered by degree then by
// base-q coefficient code.
std::vector<PrimeOfA> enumerate_monic_irreducibles(const FqField* F, long d_max);

// (1/d) sum_{e | d} mu(e) q^{d/e}: the number of monic irreducibles of degree d
long necklace_count(uint64_t q, long d);

// Visit every monic polynomial of exact degree d in code order (q^d of them).
void visit_monics(const FqField* F, long d, const std::function<void(const PolyFq&)>& fn);

// Monic irreducible factorization by trial division; returns (prime, multiplicity)
// pairs in ascending prime order. The unit leading coefficient is discarded.
std::vector<std::pair<PolyFq, long>> factorize(PolyFq f);

// d-th power residue symbol (b/P)_d = b^{(q^{deg P}-1)/d} mod P, an element of
// the group mu_d of F_q^* (or 0 when P | b). Requires d | q - 1.
Fq residue_symbol(const PolyFq& b, const PolyFq& P, uint64_t d);

} // namespace tlf
