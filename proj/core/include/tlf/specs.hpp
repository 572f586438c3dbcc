#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tlf/anderson.hpp"
#include "tlf/lseries.hpp"
#include "tlf/toml_lite.hpp"

namespace tlf {

// "Z/d1 x Z/d2 x ..." or "1" for the trivial group; whitespace and case of
// the Z are flexible. p is the ambient characteristic for the group cache.
const AbelianGroup* parse_group_spec(const std::string& spec, uint32_t p);

// Polynomial expressions in the context variable: +, -, *, ^, parentheses,
// integer constants (reduced into the prime field), and c<code> for a raw
// coefficient code in an extension field.
Poly<Fq> parse_poly(const std::string& text, PolyCtx<Fq> cx);

// Expressions in alpha, delta, theta over the extension algebra, same grammar.
AlgElem parse_alg_expr(const std::string& text, const ExtAlgebra* B);

// Module description file:
//   [module]
//   q = 3
//   dimension = 2
//   r = 1
//   A0 = [["theta", "1"], ["0", "theta"]]
//   A1 = [["1", "0"], ["0", "1"]]
// Matrices are row-major over theta-polynomial strings; A0 must satisfy the
// nilpotence invariant checked by AndersonModule.
struct ModuleFile {
    AndersonModule E;
    std::string name;
};

ModuleFile module_from_toml(const TomlDoc& doc);
ModuleFile module_from_file(const std::string& path);

// Local factor of a module at a monic irreducible v: the quotient carries
// phi(theta) = sum_i A_i tau^i with tau the q-power Frobenius of A/v acting
// componentwise, and the Lie side keeps only A_0. Entries must be integral
// (polynomial) since the quotient is A-level data.
LocalFactor<Fq> local_factor_anderson(const AndersonModule& E, const PolyFq& v);

// Same with the z-weights the module carries (pass E.z_deform() for the
// canonical deformation); coefficients land in F_q[z].
LocalFactor<Poly<Fq>> local_factor_anderson_z(const AndersonModule& E, const PolyFq& v);

// Lattice description file:
//   [lattice]
//   p = 3
//   generators = ["theta * delta"]
struct LatticeSpec {
    uint32_t p = 0;
    std::vector<std::string> generators;
    std::string name;
};

LatticeSpec lattice_from_toml(const TomlDoc& doc);
LatticeSpec lattice_from_file(const std::string& path);

// named instances; "delta-line" is theta * delta
LatticeSpec lattice_preset(const std::string& name, uint32_t p);

Lattice build_lattice(const LatticeSpec& ls);

struct RunConfig {
    uint32_t q = 0;           // base field size; 0 lets a command pick its default
    long precision = 1;       // series truncation N
    long max_deg = 1;         // Euler-product degree cutoff D
    std::string group;        // abelian group spec
    std::string preset;       // named module family
    std::string module_file;  // TOML module description
    std::string format = "json";  // json | csv | text
    uint64_t seed = 0;        // randomized suites are reproducible per seed
    std::string z;            // "", "poly", or "eval=<poly in z>"
};

// shared sanity gate; commands that run Euler products additionally require
// precision >= 1 and max_deg >= 1
void validate_config(const RunConfig& cfg);

bool is_prime_power(uint64_t n, uint32_t& p, uint32_t& e);

}  // namespace tlf
