#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <numeric>

#include "tlf/matrix.hpp"
#include "tlf/poly.hpp"

namespace tlf {

// Finite abelian group, written additively as Z/d_1 x ... x Z/d_k, carrying
// the ambient characteristic p so it can split itself into the p-part H and
// the prime-to-p part D. Interned: pointer equality is group equality.
struct AbelianGroup {
    std::vector<long> factors;    // moduli > 1 (trivial group: empty)
    uint32_t p = 0;               // ambient characteristic
    size_t n = 1;                 // order
    std::vector<long> p_part;     // per factor: p^a
    std::vector<long> np_part;    // per factor: d / p^a

    static const AbelianGroup* get(std::vector<long> factors, uint32_t p) {
        static std::mutex mu;
        static std::map<std::pair<std::vector<long>, uint32_t>, std::unique_ptr<AbelianGroup>> cache;
        std::vector<long> f;
        for (long d : factors) {
            require(d >= 1, "group factor must be >= 1");
            if (d > 1) f.push_back(d);
        }
        std::lock_guard<std::mutex> lk(mu);
        auto key = std::make_pair(f, p);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second.get();
        auto g = std::make_unique<AbelianGroup>();
        g->factors = f;
        g->p = p;
        for (long d : f) {
            g->n *= (size_t)d;
            long ph = 1;
            long rest = d;
            while (rest % p == 0) {
                rest /= p;
                ph *= p;
            }
            g->p_part.push_back(ph);
            g->np_part.push_back(rest);
        }
        const AbelianGroup* ptr = g.get();
        cache.emplace(key, std::move(g));
        return ptr;
    }

    size_t size() const { return n; }
    std::vector<long> tuple(size_t idx) const {
        std::vector<long> t(factors.size());
        for (size_t i = 0; i < factors.size(); ++i) {
            t[i] = (long)(idx % (size_t)factors[i]);
            idx /= (size_t)factors[i];
        }
        return t;
    }
    size_t index(const std::vector<long>& t) const {
        require(t.size() == factors.size(), "group tuple arity mismatch");
        size_t idx = 0, mul = 1;
        for (size_t i = 0; i < factors.size(); ++i) {
            long v = ((t[i] % factors[i]) + factors[i]) % factors[i];
            idx += (size_t)v * mul;
            mul *= (size_t)factors[i];
        }
        return idx;
    }
    size_t add(size_t a, size_t b) const {
        auto ta = tuple(a), tb = tuple(b);
        for (size_t i = 0; i < ta.size(); ++i) ta[i] = (ta[i] + tb[i]) % factors[i];
        return index(ta);
    }
    size_t neg(size_t a) const {
        auto t = tuple(a);
        for (size_t i = 0; i < t.size(); ++i) t[i] = (factors[i] - t[i]) % factors[i];
        return index(t);
    }
    size_t sub(size_t a, size_t b) const { return add(a, neg(b)); }

    const AbelianGroup* sylow_p() const {
        std::vector<long> f;
        for (long ph : p_part)
            if (ph > 1) f.push_back(ph);
        return AbelianGroup::get(f, p);
    }
    const AbelianGroup* prime_to_p() const {
        std::vector<long> f;
        for (long m : np_part)
            if (m > 1) f.push_back(m);
        return AbelianGroup::get(f, p);
    }
    // element index -> (index in H, index in D) along the CRT splitting
    std::pair<size_t, size_t> split(size_t idx) const {
        auto t = tuple(idx);
        std::vector<long> th, td;
        for (size_t i = 0; i < factors.size(); ++i) {
            if (p_part[i] > 1) th.push_back(t[i] % p_part[i]);
            if (np_part[i] > 1) td.push_back(t[i] % np_part[i]);
        }
        return {sylow_p()->index(th), prime_to_p()->index(td)};
    }
    size_t unsplit(size_t hidx, size_t didx) const {
        auto th = sylow_p()->tuple(hidx);
        auto td = prime_to_p()->tuple(didx);
        std::vector<long> t(factors.size());
        size_t ih = 0, id = 0;
        for (size_t i = 0; i < factors.size(); ++i) {
            long hv = (p_part[i] > 1) ? th[ih++] : 0;
            long dv = (np_part[i] > 1) ? td[id++] : 0;
            // CRT: t = hv mod p^a, t = dv mod m
            long ph = p_part[i], m = np_part[i];
            long x = 0;
            for (long cand = 0; cand < factors[i]; ++cand) {
                if (cand % ph == hv % ph && cand % m == dv % m) {
                    x = cand;
                    break;
                }
            }
            t[i] = x;
        }
        return index(t);
    }
    long exponent_prime_to_p() const {
        long M = 1;
        for (long m : np_part) M = std::lcm(M, m);
        return M;
    }

    std::string str() const {
        if (factors.empty()) return "1";
        std::string s;
        for (size_t i = 0; i < factors.size(); ++i) {
            if (i) s += " x ";
            s += "Z/" + std::to_string(factors[i]);
        }
        return s;
    }
};

template <class R>
struct GroupRingCtx {
    const AbelianGroup* G = nullptr;
    typename R::Ctx coeff{};
    bool operator==(const GroupRingCtx& o) const { return G == o.G && coeff == o.coeff; }
};

// Group algebra R[G], dense coefficients indexed by group element.
template <class R>
struct GroupRing {
    using Coeff = R;
    using Ctx = GroupRingCtx<R>;

    Ctx cx;
    std::vector<R> c;

    GroupRing() = default;
    explicit GroupRing(Ctx cx_) : cx(cx_), c(cx_.G->size(), R::zero(cx_.coeff)) {}

    Ctx ctx() const { return cx; }
    static GroupRing zero(Ctx cx) { return GroupRing(cx); }
    static GroupRing one(Ctx cx) {
        GroupRing x(cx);
        x.c[0] = R::one(cx.coeff);
        return x;
    }
    static GroupRing basis(Ctx cx, size_t g) {
        GroupRing x(cx);
        x.c[g] = R::one(cx.coeff);
        return x;
    }
    static GroupRing scalar(Ctx cx, const R& a) {
        GroupRing x(cx);
        x.c[0] = a;
        return x;
    }
    static GroupRing trace_elem(Ctx cx) { // sum of all group elements
        GroupRing x(cx);
        for (auto& v : x.c) v = R::one(cx.coeff);
        return x;
    }

    bool is_zero() const {
        for (auto& v : c)
            if (!v.is_zero()) return false;
        return true;
    }
    uint64_t base_q() const { return R::zero(cx.coeff).base_q(); }

    GroupRing operator-() const {
        GroupRing x = *this;
        for (auto& v : x.c) v = -v;
        return x;
    }
    GroupRing operator+(const GroupRing& o) const {
        require(cx == o.cx, "group ring context mismatch");
        GroupRing x = *this;
        for (size_t i = 0; i < c.size(); ++i) x.c[i] += o.c[i];
        return x;
    }
    GroupRing operator-(const GroupRing& o) const { return *this + (-o); }
    GroupRing operator*(const GroupRing& o) const {
        require(cx == o.cx, "group ring context mismatch");
        GroupRing x(cx);
        for (size_t i = 0; i < c.size(); ++i) {
            if (c[i].is_zero()) continue;
            for (size_t j = 0; j < o.c.size(); ++j) {
                if (o.c[j].is_zero()) continue;
                size_t k = cx.G->add(i, j);
                x.c[k] += c[i] * o.c[j];
            }
        }
        return x;
    }
    GroupRing& operator+=(const GroupRing& o) { return *this = *this + o; }
    GroupRing& operator-=(const GroupRing& o) { return *this = *this - o; }
    GroupRing& operator*=(const GroupRing& o) { return *this = *this * o; }
    bool operator==(const GroupRing& o) const { return cx == o.cx && c == o.c; }
    bool operator!=(const GroupRing& o) const { return !(*this == o); }

    GroupRing scaled(const R& a) const {
        GroupRing x = *this;
        for (auto& v : x.c) v = v * a;
        return x;
    }

    GroupRing frob(unsigned r) const { // fixes G, twists coefficients
        GroupRing x = *this;
        for (auto& v : x.c) v = v.frob(r);
        return x;
    }

    R augmentation() const { // g -> 1
        R s = R::zero(cx.coeff);
        for (auto& v : c) s += v;
        return s;
    }

    // matrix of multiplication by this element on the group basis
    Matrix<R> mult_matrix() const {
        Matrix<R> m(cx.coeff, cx.G->size(), cx.G->size());
        for (size_t i = 0; i < c.size(); ++i)
            for (size_t j = 0; j < c.size(); ++j) m(i, j) = c[cx.G->sub(i, j)];
        return m;
    }

    std::string str() const {
        std::ostringstream os;
        bool first = true;
        for (size_t i = 0; i < c.size(); ++i) {
            if (c[i].is_zero()) continue;
            if (!first) os << " + ";
            first = false;
            os << Poly<R>::to_coeff_string(c[i]) << "*";
            if (i == 0) {
                os << "1_G";
            } else {
                os << "g(";
                auto t = cx.G->tuple(i);
                for (size_t k = 0; k < t.size(); ++k) {
                    if (k) os << ",";
                    os << t[k];
                }
                os << ")";
            }
        }
        if (first) os << "0";
        return os.str();
    }
};

template <class R>
std::ostream& operator<<(std::ostream& os, const GroupRing<R>& x) {
    return os << x.str();
}

// det_G: determinant of the multiplication matrix, over any commutative R.
template <class R>
R det_G(const GroupRing<R>& x) {
    return det(x.mult_matrix());
}

inline bool ring_is_unit(const GroupRing<Fq>& x) {
    return !det_G(x).is_zero();
}

inline GroupRing<Fq> ring_inv(const GroupRing<Fq>& x) {
    // solve x * y = 1 via the multiplication matrix
    auto M = x.mult_matrix();
    std::vector<Fq> e(x.cx.G->size(), Fq::zero(x.cx.coeff));
    e[0] = Fq::one(x.cx.coeff);
    auto y = solve(M, e);
    GroupRing<Fq> r(x.cx);
    r.c = y;
    return r;
}

// A[G]-units have constant nonzero det_G; the charpoly inverse divides only
// by that constant, which keeps the computation inside A[G].
inline bool ring_is_unit(const GroupRing<Poly<Fq>>& x) {
    auto d = det_G(x);
    return !d.is_zero() && d.deg() == 0;
}

inline GroupRing<Poly<Fq>> ring_inv(const GroupRing<Poly<Fq>>& x) {
    auto Minv = inverse_via_charpoly(x.mult_matrix());
    GroupRing<Poly<Fq>> r(x.cx);
    for (size_t g = 0; g < x.cx.G->size(); ++g) r.c[g] = Minv(g, 0);
    return r;
}

// ---- finite F_q[G]-modules with explicit action matrices ----

struct GModule {
    const AbelianGroup* G = nullptr;
    const FqField* F = nullptr;
    size_t dim = 0;
    std::vector<Matrix<Fq>> gen_action; // action of the generator of each factor

    // action of an arbitrary element index
    Matrix<Fq> action(size_t g) const {
        auto t = G->tuple(g);
        Matrix<Fq> m = Matrix<Fq>::identity(F, dim);
        for (size_t i = 0; i < t.size(); ++i)
            for (long k = 0; k < t[i]; ++k) m = m * gen_action[i];
        return m;
    }
    Matrix<Fq> action_of(const GroupRing<Fq>& x) const {
        require(x.cx.G == G, "module/group mismatch");
        Matrix<Fq> m(F, dim, dim);
        for (size_t g = 0; g < G->size(); ++g) {
            if (x.c[g].is_zero()) continue;
            m = m + action(g).scaled(x.c[g]);
        }
        return m;
    }
};

// dim of the Tate cohomology H^0(G, M) = M^G / Tr_G(M)
inline size_t tate_h0_dim(const GModule& M) {
    // fixed points: common kernel of (gen - 1)
    size_t k = M.G->factors.size();
    Matrix<Fq> stack(M.F, M.dim * std::max<size_t>(k, 1), M.dim);
    for (size_t i = 0; i < k; ++i) {
        Matrix<Fq> d = M.gen_action[i] - Matrix<Fq>::identity(M.F, M.dim);
        for (size_t r = 0; r < M.dim; ++r)
            for (size_t c2 = 0; c2 < M.dim; ++c2) stack(i * M.dim + r, c2) = d(r, c2);
    }
    size_t fixed = M.dim - (k ? rank_of(stack) : 0);
    Matrix<Fq> tr(M.F, M.dim, M.dim);
    for (size_t g = 0; g < M.G->size(); ++g) tr = tr + M.action(g);
    size_t image = rank_of(tr);
    return fixed - image; // Tr(M) is inside M^G
}

} // namespace tlf
