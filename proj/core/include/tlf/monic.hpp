#pragma once

#include "tlf/characters.hpp"
#include "tlf/series.hpp"

namespace tlf {

// Weierstrass theory for F_q[G]-coefficient Laurent series in theta^-1.
//
// Per fine character block the coefficient ring O = E[H] is local with
// maximal ideal m = augmentation ideal of H (nilpotent, m^{|H|} = 0).
// Writing a block as f = theta^D * h(X) with X = theta^-1 and h in O[[X]],
// h factors as h = P * u with P = X^n - r distinguished (r in m[X], deg < n)
// and u a unit power series. The monic representative of the class of f
// modulo polynomial units is theta^{D-n} * u/u_0, a series with lead
// coefficient 1; the discarded factor theta^n P(theta^-1) * u_0 is a unit
// of E[H][theta].

namespace detail {

using GR = GroupRing<Fq>;

inline std::vector<GR> ps_mul(const std::vector<GR>& a, const std::vector<GR>& b, size_t len,
                              typename GR::Ctx cx) {
    std::vector<GR> r(len, GR::zero(cx));
    for (size_t i = 0; i < a.size() && i < len; ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size() && i + j < len; ++j) {
            if (b[j].is_zero()) continue;
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

inline std::vector<GR> ps_inv(const std::vector<GR>& a, size_t len) {
    require(!a.empty(), "inverting empty power series");
    auto cx = a[0].ctx();
    GR t0 = ring_inv(a[0]);
    std::vector<GR> w(len, GR::zero(cx));
    w[0] = t0;
    for (size_t k = 1; k < len; ++k) {
        GR s = GR::zero(cx);
        for (size_t j = 1; j <= k && j < a.size(); ++j) s += a[j] * w[k - j];
        w[k] = -(t0 * s);
    }
    return w;
}

struct BlockDivision {
    long n = 0;                 // Weierstrass index
    std::vector<GR> q;          // X^n = q*h + r, unit power series, len T+1
    std::vector<GR> r;          // distinguished remainder, deg < n
    std::vector<GR> w;          // q^{-1}/q^{-1}_0 = u/u_0, w[0] = 1
};

// h given by coefficients h[0..Tp] of X^0..X^Tp.
inline BlockDivision weierstrass_divide(const std::vector<GR>& h, size_t nH) {
    auto cx = h[0].ctx();
    BlockDivision bd;
    long Tp = (long)h.size() - 1;
    long n = -1;
    for (long j = 0; j <= Tp; ++j)
        if (local_is_unit(h[(size_t)j])) {
            n = j;
            break;
        }
    require(n >= 0, "no unit coefficient in block: series not invertible at this precision");
    bd.n = n;
    size_t T = (size_t)(Tp - n);
    std::vector<GR> hU(h.begin() + n, h.end()); // unit constant term
    std::vector<GR> hUinv = ps_inv(hU, T + 1);

    std::vector<GR> q(T + 1, GR::zero(cx));
    std::vector<GR> e(h.size(), GR::zero(cx)); // X^n - q*h, tracked mod X^{Tp+1}
    e[(size_t)n] = GR::one(cx);
    size_t rounds = 0;
    for (;;) {
        std::vector<GR> eU(e.begin() + n, e.end());
        bool zero = true;
        for (auto& v : eU)
            if (!v.is_zero()) {
                zero = false;
                break;
            }
        if (zero) break;
        require(++rounds <= nH + 2, "Weierstrass division failed to converge");
        std::vector<GR> qinc = ps_mul(eU, hUinv, T + 1, cx);
        for (size_t i = 0; i <= T; ++i) q[i] += qinc[i];
        std::vector<GR> qh = ps_mul(q, h, h.size(), cx);
        for (size_t i = 0; i < e.size(); ++i) e[i] = -qh[i];
        e[(size_t)n] += GR::one(cx);
    }
    bd.q = q;
    bd.r.assign(e.begin(), e.begin() + n);
    require(local_is_unit(q[0]), "Weierstrass quotient is not a unit");
    bd.w = ps_inv(q, T + 1);
    GR w0inv = q[0]; // (q^{-1})_0^{-1} = q_0
    for (auto& v : bd.w) v = v * w0inv;
    return bd;
}

// block of f at the orbit representative, as h[0..Tp] with h[j] = block
// component of the coefficient of theta^{D-j}
inline std::vector<GR> block_of(const Series<GR>& f, const FineCharacters& fc, size_t chi) {
    long D = f.hi();
    long Tp = D - f.lo;
    std::vector<GR> h;
    h.reserve((size_t)Tp + 1);
    for (long j = 0; j <= Tp; ++j) h.push_back(fc.to_block(f.coeff_at(D - j), chi));
    return h;
}

} // namespace detail

struct MonicRep {
    Series<GroupRing<Fq>> plus;     // monic representative, lead coefficient 1_G
    Poly<GroupRing<Fq>> unit;       // polynomial unit with f = unit * plus
};

// Monic representative of an invertible F_q[G]-coefficient Laurent series,
// computed blockwise and reassembled through the character decomposition.
// Output precision floor equals the input floor.
inline MonicRep monic_representative(const Series<GroupRing<Fq>>& f, const FineCharacters& fc) {
    using GR = GroupRing<Fq>;
    require(!f.is_zero(), "monic representative of zero series");
    require(f.ccx.G == fc.G, "series/character group mismatch");
    long D = f.hi();
    size_t nH = fc.H->size();

    std::vector<detail::BlockDivision> bds;
    for (size_t ob = 0; ob < fc.orbits.size(); ++ob) {
        auto h = detail::block_of(f, fc, fc.orbits[ob].chars[0]);
        bds.push_back(detail::weierstrass_divide(h, nH));
    }

    typename GR::Ctx cxH{fc.H, fc.E};
    long top = D - bds[0].n;
    for (auto& bd : bds) top = std::max(top, D - bd.n);

    MonicRep out;
    out.plus = Series<GR>(f.ccx, f.lo);
    out.plus.c.assign((size_t)(top - f.lo + 1), GR::zero(f.ccx));
    for (long e = f.lo; e <= top; ++e) {
        std::vector<GR> vals;
        for (auto& bd : bds) {
            long k = (D - bd.n) - e; // offset into w
            GR v(cxH);
            if (k >= 0 && k < (long)bd.w.size()) v = bd.w[(size_t)k];
            vals.push_back(v);
        }
        out.plus.c[(size_t)(e - f.lo)] = fc.from_orbit_reps(vals);
    }
    out.plus.normalize();

    // unit factor: q_0^{-1} (1 - sum_j r_j theta^{n-j}) per block
    long maxn = 0;
    for (auto& bd : bds) maxn = std::max(maxn, bd.n);
    std::vector<GR> ucoef;
    for (long t = 0; t <= maxn; ++t) {
        std::vector<GR> vals;
        for (auto& bd : bds) {
            GR u0 = ring_inv(bd.q[0]);
            GR v(cxH);
            if (t == 0) v = GR::one(cxH);
            if (bd.n - t >= 0 && bd.n - t < (long)bd.r.size()) v -= bd.r[(size_t)(bd.n - t)];
            if (t > bd.n) v = GR::zero(cxH);
            vals.push_back(u0 * v);
        }
        ucoef.push_back(fc.from_orbit_reps(vals));
    }
    out.unit = Poly<GR>(typename Poly<GR>::Ctx{f.ccx, Var::theta}, ucoef);
    return out;
}

// Inverse of an invertible F_q[G]-coefficient Laurent series. Blocks whose
// Weierstrass index n is positive lose n*(s+1) terms of precision, where s
// is the nilpotency degree reached by the distinguished part; n = 0 blocks
// lose nothing.
inline Series<GroupRing<Fq>> block_inverse(const Series<GroupRing<Fq>>& f,
                                           const FineCharacters& fc) {
    using GR = GroupRing<Fq>;
    require(!f.is_zero(), "inverse of zero series");
    long D = f.hi();
    size_t nH = fc.H->size();
    typename GR::Ctx cxH{fc.H, fc.E};

    // per block: Laurent coefficients of f^{-1} * theta^{D} = q(X) * P^{-1}(X)
    // indexed by X-exponent, plus the certified floor in theta-exponents
    struct BlockInv {
        std::map<long, GR> lx; // X-exponent -> coefficient
        long theta_floor = 0;
    };
    std::vector<BlockInv> binv;
    long out_lo = f.lo;
    long out_hi = -D;
    auto acc = [](std::map<long, GR>& m, long k, const GR& v) {
        auto it = m.find(k);
        if (it == m.end())
            m.emplace(k, v);
        else
            it->second += v;
    };
    for (size_t ob = 0; ob < fc.orbits.size(); ++ob) {
        auto h = detail::block_of(f, fc, fc.orbits[ob].chars[0]);
        auto bd = detail::weierstrass_divide(h, nH);
        long n = bd.n;
        long T = (long)bd.q.size() - 1;
        // P^{-1} = X^{-n} sum_k rho^k, rho = r(X) X^{-n}, nilpotent
        std::map<long, GR> pinv;
        std::map<long, GR> rho_k;
        rho_k.emplace(0, GR::one(cxH));
        long s_eff = 0;
        for (long k = 0;; ++k) {
            bool nonzero = false;
            for (auto& [e, v] : rho_k)
                if (!v.is_zero()) {
                    nonzero = true;
                    break;
                }
            if (!nonzero) break;
            require(k <= (long)nH, "distinguished part is not nilpotent");
            s_eff = k;
            for (auto& [e, v] : rho_k) {
                if (v.is_zero()) continue;
                acc(pinv, e - n, v);
            }
            // rho_k *= rho
            std::map<long, GR> nxt;
            for (auto& [e, v] : rho_k) {
                if (v.is_zero()) continue;
                for (long j = 0; j < n; ++j) {
                    if (bd.r[(size_t)j].is_zero()) continue;
                    acc(nxt, e + j - n, v * bd.r[(size_t)j]);
                }
            }
            rho_k = std::move(nxt);
            if (n == 0) break; // rho is empty, only k = 0 contributes
        }
        BlockInv bi;
        for (auto& [pe, pv] : pinv) {
            if (pv.is_zero()) continue;
            for (long i = 0; i <= T; ++i) {
                if (bd.q[(size_t)i].is_zero()) continue;
                acc(bi.lx, pe + i, pv * bd.q[(size_t)i]);
            }
        }
        // certified X-range: m <= T - n*s_eff
        long mmax = T - n * s_eff;
        bi.theta_floor = -D - mmax;
        for (auto it = bi.lx.begin(); it != bi.lx.end();)
            it = (it->first > mmax) ? bi.lx.erase(it) : std::next(it);
        out_lo = std::max(out_lo, bi.theta_floor);
        binv.push_back(std::move(bi));
    }
    // theta-exponent of the X^m term is -D - m
    out_hi = out_lo;
    for (auto& bi : binv)
        for (auto& [e, v] : bi.lx)
            if (!v.is_zero()) out_hi = std::max(out_hi, -D - e);

    Series<GR> out(f.ccx, out_lo);
    out.c.assign((size_t)(out_hi - out_lo + 1), GR::zero(f.ccx));
    for (long t = out_lo; t <= out_hi; ++t) {
        std::vector<GR> vals;
        for (auto& bi : binv) {
            GR v(cxH);
            auto it = bi.lx.find(-D - t);
            if (it != bi.lx.end() && t >= bi.theta_floor) v = it->second;
            vals.push_back(v);
        }
        out.c[(size_t)(t - out_lo)] = fc.from_orbit_reps(vals);
    }
    out.normalize();
    return out;
}

} // namespace tlf
