#pragma once

#include <cstdint>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tlf {

// A finite field F_{p^e}. Contexts are interned: FqField::get(p, e) returns a
// pointer that stays valid for the lifetime of the process, so elements can
// carry a raw pointer and context equality is pointer equality.
//
// For e > 1 the field is F_p[x]/(modulus), where the modulus is the monic
// irreducible of degree e whose coefficient vector (c_0, c_1, ..., c_{e-1}),
// read as the base-p integer sum c_i p^i, is smallest. That makes extension
// arithmetic reproducible across runs and machines.
struct FqField {
    uint32_t p = 0;
    uint32_t e = 1;
    uint64_t q = 0;                  // p^e
    std::vector<uint32_t> modulus;   // length e+1, monic; e == 1: {0, 1} placeholder

    static const FqField* get(uint32_t p, uint32_t e = 1);

    bool prime() const { return e == 1; }
};

struct Fq {
    const FqField* F = nullptr;
    // e == 1: value in [0, p). e > 1: base-p packed digits, digit i = coeff of x^i.
    uint64_t v = 0;

    Fq() = default;
    Fq(const FqField* F_, uint64_t v_) : F(F_), v(v_) {}

    using Ctx = const FqField*;
    Ctx ctx() const { return F; }
    static Fq zero(Ctx F) { return Fq(F, 0); }
    static Fq one(Ctx F) { return Fq(F, F->e == 1 ? (F->p > 1 ? 1u : 0u) : 1u); }
    static Fq from_int(Ctx F, long long n) {
        long long r = n % (long long)F->p;
        if (r < 0) r += F->p;
        return Fq(F, (uint64_t)r);
    }

    bool is_zero() const { return v == 0; }
    bool is_one() const { return v == 1; }
    uint64_t base_q() const { return F->q; }

    Fq operator-() const;
    Fq operator+(const Fq& o) const;
    Fq operator-(const Fq& o) const { return *this + (-o); }
    Fq operator*(const Fq& o) const;
    Fq& operator+=(const Fq& o) { return *this = *this + o; }
    Fq& operator-=(const Fq& o) { return *this = *this - o; }
    Fq& operator*=(const Fq& o) { return *this = *this * o; }
    bool operator==(const Fq& o) const { return F == o.F && v == o.v; }
    bool operator!=(const Fq& o) const { return !(*this == o); }

    bool is_unit() const { return v != 0; }
    Fq inv() const;
    Fq pow(uint64_t n) const;

    // x -> x^{q^r}. The q-power map fixes every element of its own field, so
    // this is the identity; it exists so generic coefficient code can twist.
    Fq frob(unsigned /*r*/) const { return *this; }

    // digit of x^i in the polynomial representation
    uint32_t digit(uint32_t i) const;

    std::string str() const;
};

std::ostream& operator<<(std::ostream& os, const Fq& a);

// Deterministic embedding F_{p^e} -> F_{p^{e*m}} sending the generator of the
// small field to the first root (in value order) of its modulus in the big one.
struct FqEmbed {
    const FqField* src = nullptr;
    const FqField* dst = nullptr;
    std::vector<Fq> gen_pows;        // images of x^0 .. x^{e-1}

    static FqEmbed make(const FqField* src, const FqField* dst);
    Fq up(const Fq& a) const;
    // inverse on the image; throws if a is not in the embedded copy
    Fq down(const Fq& a) const;
    bool in_image(const Fq& a) const;
};

inline void require(bool cond, const char* msg) {
    if (!cond) throw std::runtime_error(msg);
}

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::runtime_error(msg);
}

} // namespace tlf
