#include "tlf/extalg.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace tlf {

const ExtAlgebra* ExtAlgebra::get(uint32_t p) {
    static std::mutex mu;
    static std::map<uint32_t, std::unique_ptr<ExtAlgebra>> cache;
    require(p >= 2, "characteristic must be at least 2");
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(p);
    if (it != cache.end()) return it->second.get();
    auto B = std::make_unique<ExtAlgebra>();
    B->init(p);
    const ExtAlgebra* ptr = B.get();
    cache.emplace(p, std::move(B));
    return ptr;
}

void ExtAlgebra::init(uint32_t p_) {
    p = p_;
    F = FqField::get(p);
    kcx = PolyCtx<Fq>{F, Var::theta};
    nd = p >= 3 ? (size_t)p - 1 : 1;
    dim = (size_t)p * nd;
    std::vector<Fq> op(p, Fq::zero(F));
    op[0] = Fq::one(F);
    op[p - 1] = Fq::one(F);
    one_plus = Poly<Fq>(kcx, op);
    inv_theta = RatFun<Fq>(Poly<Fq>::one(kcx), Poly<Fq>::gen(kcx));
    binom.assign(p, std::vector<Fq>(p, Fq::zero(F)));
    for (size_t i = 0; i < p; ++i) {
        binom[i][0] = Fq::one(F);
        for (size_t m = 1; m <= i; ++m)
            binom[i][m] = binom[i - 1][m - 1] + (m < i ? binom[i - 1][m] : Fq::zero(F));
    }
    // tau(alpha^i delta^j) = (alpha + 1/theta)^i (1+theta^{p-1})^j delta^j
    tau_basis.assign(dim, AlgElem(this));
    AlgElem apow = AlgElem::one(this);
    AlgElem ashift(this); // alpha + 1/theta
    ashift.c[idx(1, 0)] = RatFun<Fq>::one(kcx);
    ashift.c[idx(0, 0)] = inv_theta;
    for (size_t i = 0; i < p; ++i) {
        RatFun<Fq> dscale = RatFun<Fq>::one(kcx);
        for (size_t j = 0; j < nd; ++j) {
            AlgElem t(this);
            for (size_t m = 0; m < p; ++m)
                t.c[idx(m, j)] = apow.c[idx(m, 0)] * dscale;
            tau_basis[idx(i, j)] = t;
            dscale = dscale * RatFun<Fq>::of(one_plus);
        }
        if (i + 1 < p) apow = apow * ashift;
    }
}

} // namespace tlf
