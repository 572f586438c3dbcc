#include "tlf/fq.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace tlf {

namespace {

// --- tiny F_p[x] helpers used only for modulus selection and e>1 arithmetic ---

using Fpx = std::vector<uint32_t>; // coeffs ascending, possibly with trailing zeros

void trim(Fpx& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Fpx mul_mod_p(const Fpx& a, const Fpx& b, uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Fpx r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + (uint64_t)a[i] * b[j]) % p;
    }
    trim(r);
    return r;
}

// a mod m, m monic
Fpx rem_mod_p(Fpx a, const Fpx& m, uint32_t p) {
    trim(a);
    size_t dm = m.size() - 1;
    while (a.size() > dm) {
        uint32_t lead = a.back();
        size_t shift = a.size() - 1 - dm;
        if (lead) {
            for (size_t i = 0; i <= dm; ++i) {
                uint64_t sub = (uint64_t)lead * m[i] % p;
                uint32_t& c = a[shift + i];
                c = (uint32_t)((c + p - sub) % p);
            }
        }
        a.pop_back();
        trim(a);
        if (a.size() <= dm) break;
    }
    return a;
}

Fpx pow_x_q_mod(uint64_t qpow, const Fpx& m, uint32_t p) {
    // x^qpow mod m by square and multiply on the exponent
    Fpx result{0, 1}; // x
    result = rem_mod_p(result, m, p);
    Fpx acc{1};
    // binary exponentiation of the polynomial x to the power qpow
    Fpx base = result;
    uint64_t n = qpow;
    while (n) {
        if (n & 1) acc = rem_mod_p(mul_mod_p(acc, base, p), m, p);
        base = rem_mod_p(mul_mod_p(base, base, p), m, p);
        n >>= 1;
    }
    return acc;
}

Fpx gcd_mod_p(Fpx a, Fpx b, uint32_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        // make b monic for rem
        uint32_t lb = b.back();
        if (lb != 1) {
            // lb^{-1} via Fermat
            uint64_t inv = 1, base = lb, n = p - 2;
            while (n) {
                if (n & 1) inv = inv * base % p;
                base = base * base % p;
                n >>= 1;
            }
            for (auto& c : b) c = (uint32_t)((uint64_t)c * inv % p);
        }
        Fpx r = rem_mod_p(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

bool irreducible_mod_p(const Fpx& f, uint32_t p) {
    size_t d = f.size() - 1;
    if (d == 0) return false;
    if (d == 1) return true;
    // x^{p^d} == x mod f, and gcd(x^{p^{d/l}} - x, f) == 1 for prime l | d
    auto qd = [&](size_t k) {
        uint64_t r = 1;
        for (size_t i = 0; i < k; ++i) r *= p;
        return r;
    };
    Fpx xq = pow_x_q_mod(qd(d), f, p);
    Fpx x{0, 1};
    Fpx diff = xq;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(diff);
    if (!diff.empty()) return false;
    for (size_t l = 2; l <= d; ++l) {
        if (d % l) continue;
        bool lp = true;
        for (size_t t = 2; t * t <= l; ++t)
            if (l % t == 0) { lp = false; break; }
        if (!lp) continue;
        Fpx g = pow_x_q_mod(qd(d / l), f, p);
        if (g.size() < 2) g.resize(2, 0);
        g[1] = (g[1] + p - 1) % p;
        trim(g);
        Fpx gc = gcd_mod_p(g, f, p);
        if (!(gc.size() == 1)) return false;
    }
    return true;
}

std::vector<uint32_t> pick_modulus(uint32_t p, uint32_t e) {
    // smallest coefficient vector in base-p integer order, monic degree e
    uint64_t count = 1;
    for (uint32_t i = 0; i < e; ++i) count *= p;
    for (uint64_t tail = 0; tail < count; ++tail) {
        Fpx f(e + 1, 0);
        uint64_t t = tail;
        for (uint32_t i = 0; i < e; ++i) {
            f[i] = (uint32_t)(t % p);
            t /= p;
        }
        f[e] = 1;
        if (irreducible_mod_p(f, p)) return f;
    }
    throw std::runtime_error("no irreducible modulus found");
}

std::mutex g_fields_mu;
std::map<std::pair<uint32_t, uint32_t>, std::unique_ptr<FqField>> g_fields;

bool is_prime_u32(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; (uint64_t)d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace

const FqField* FqField::get(uint32_t p, uint32_t e) {
    if (!is_prime_u32(p)) throw std::invalid_argument("field characteristic must be prime");
    if (e == 0) throw std::invalid_argument("extension degree must be positive");
    uint64_t q = 1;
    for (uint32_t i = 0; i < e; ++i) {
        q *= p;
        if (q > (uint64_t)1 << 40) throw std::invalid_argument("field too large");
    }
    std::lock_guard<std::mutex> lk(g_fields_mu);
    auto key = std::make_pair(p, e);
    auto it = g_fields.find(key);
    if (it != g_fields.end()) return it->second.get();
    auto F = std::make_unique<FqField>();
    F->p = p;
    F->e = e;
    F->q = q;
    F->modulus = (e == 1) ? std::vector<uint32_t>{0, 1} : pick_modulus(p, e);
    const FqField* ptr = F.get();
    g_fields.emplace(key, std::move(F));
    return ptr;
}

uint32_t Fq::digit(uint32_t i) const {
    if (F->e == 1) return i == 0 ? (uint32_t)v : 0;
    uint64_t t = v;
    for (uint32_t k = 0; k < i; ++k) t /= F->p;
    return (uint32_t)(t % F->p);
}

namespace {

uint64_t pack(const Fpx& digits, uint32_t p, uint32_t e) {
    uint64_t v = 0, mul = 1;
    for (uint32_t i = 0; i < e; ++i) {
        uint32_t d = i < digits.size() ? digits[i] : 0;
        v += (uint64_t)d * mul;
        mul *= p;
    }
    return v;
}

Fpx unpack(uint64_t v, uint32_t p, uint32_t e) {
    Fpx d(e, 0);
    for (uint32_t i = 0; i < e; ++i) {
        d[i] = (uint32_t)(v % p);
        v /= p;
    }
    trim(d);
    return d;
}

} // namespace

Fq Fq::operator-() const {
    if (F->e == 1) return Fq(F, v ? F->p - v : 0);
    Fpx d = unpack(v, F->p, F->e);
    for (auto& c : d) c = c ? F->p - c : 0;
    return Fq(F, pack(d, F->p, F->e));
}

Fq Fq::operator+(const Fq& o) const {
    require(F == o.F, "field mismatch in +");
    if (F->e == 1) {
        uint64_t s = v + o.v;
        if (s >= F->p) s -= F->p;
        return Fq(F, s);
    }
    Fpx a = unpack(v, F->p, F->e), b = unpack(o.v, F->p, F->e);
    if (b.size() > a.size()) a.swap(b);
    for (size_t i = 0; i < b.size(); ++i) {
        a[i] += b[i];
        if (a[i] >= F->p) a[i] -= F->p;
    }
    trim(a);
    return Fq(F, pack(a, F->p, F->e));
}

Fq Fq::operator*(const Fq& o) const {
    require(F == o.F, "field mismatch in *");
    if (F->e == 1) return Fq(F, v * o.v % F->p);
    Fpx a = unpack(v, F->p, F->e), b = unpack(o.v, F->p, F->e);
    Fpx r = rem_mod_p(mul_mod_p(a, b, F->p), F->modulus, F->p);
    return Fq(F, pack(r, F->p, F->e));
}

Fq Fq::pow(uint64_t n) const {
    Fq acc = Fq::one(F);
    Fq base = *this;
    while (n) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

Fq Fq::inv() const {
    require(v != 0, "division by zero in F_q");
    return pow(F->q - 2);
}

std::string Fq::str() const {
    if (F->e == 1) return std::to_string(v);
    std::ostringstream os;
    bool first = true;
    for (int i = (int)F->e - 1; i >= 0; --i) {
        uint32_t d = digit((uint32_t)i);
        if (!d) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0 || d != 1) os << d;
        if (i > 0) {
            if (d != 1) os << "*";
            os << "w";
            if (i > 1) os << "^" << i;
        }
    }
    if (first) os << "0";
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Fq& a) { return os << a.str(); }

FqEmbed FqEmbed::make(const FqField* src, const FqField* dst) {
    require(src->p == dst->p, "embedding needs equal characteristic");
    require(dst->e % src->e == 0, "no embedding between these fields");
    FqEmbed em;
    em.src = src;
    em.dst = dst;
    if (src->e == 1) {
        em.gen_pows = {Fq::one(dst)};
        return em;
    }
    // find the first root of src->modulus inside dst, scanning element values
    for (uint64_t cand = 0; cand < dst->q; ++cand) {
        Fq x(dst, cand);
        Fq acc = Fq::zero(dst);
        Fq xp = Fq::one(dst);
        for (size_t i = 0; i < src->modulus.size(); ++i) {
            acc += Fq::from_int(dst, src->modulus[i]) * xp;
            xp = xp * x;
        }
        if (acc.is_zero()) {
            // reject roots lying in a proper subfield of the copy we want:
            // the root must have degree exactly src->e over F_p
            bool ok = true;
            Fq t = x;
            for (uint32_t r = 1; r < src->e; ++r) {
                t = t.pow(dst->p);
                if (t == x) { ok = false; break; }
            }
            if (!ok) continue;
            em.gen_pows.resize(src->e);
            em.gen_pows[0] = Fq::one(dst);
            for (uint32_t i = 1; i < src->e; ++i) em.gen_pows[i] = em.gen_pows[i - 1] * x;
            return em;
        }
    }
    throw std::runtime_error("embedding root not found");
}

Fq FqEmbed::up(const Fq& a) const {
    require(a.F == src, "embed: wrong source field");
    Fq acc = Fq::zero(dst);
    for (uint32_t i = 0; i < src->e; ++i) {
        uint32_t d = a.digit(i);
        if (d) acc += Fq::from_int(dst, d) * gen_pows[i];
    }
    return acc;
}

bool FqEmbed::in_image(const Fq& a) const {
    require(a.F == dst, "embed: wrong target field");
    // fixed by x -> x^{|src|}
    Fq t = a.pow(src->q);
    return t == a;
}

Fq FqEmbed::down(const Fq& a) const {
    require(in_image(a), "element not in embedded subfield");
    // solve for digits against gen_pows over F_p by brute scan (fields are tiny)
    if (src->e == 1) {
        for (uint64_t c = 0; c < src->p; ++c)
            if (Fq::from_int(dst, (long long)c) == a) return Fq(src, c);
        throw std::runtime_error("constant descent failed");
    }
    for (uint64_t cand = 0; cand < src->q; ++cand) {
        Fq small(src, cand);
        if (up(small) == a) return small;
    }
    throw std::runtime_error("descent failed");
}

} // namespace tlf
