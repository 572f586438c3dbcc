#pragma once

// Shared JSON <-> ring-element glue for the serialization TUs. Not installed;
// everything here stays out of the public headers so nlohmann::json does too.

#include <json.hpp>

#include "tlf/lseries.hpp"

namespace tlf::jsondetail {

using njson = nlohmann::json;

inline std::string ring_tag(const FqField*) { return "fq"; }
inline std::string ring_tag(PolyCtx<Fq> cx) { return std::string("poly-") + var_name(cx.var); }
inline std::string ring_tag(GroupRingCtx<Fq>) { return "groupring-fq"; }
inline std::string ring_tag(GroupRingCtx<Poly<Fq>> cx) {
    return std::string("groupring-poly-") + var_name(cx.coeff.var);
}

inline std::string group_key(const AbelianGroup* G, size_t idx) {
    auto t = G->tuple(idx);
    std::string s = "(";
    for (size_t k = 0; k < t.size(); ++k) {
        if (k) s += ",";
        s += std::to_string(t[k]);
    }
    return s + ")";
}

inline std::vector<long> parse_group_key(const std::string& s) {
    require(s.size() >= 2 && s.front() == '(' && s.back() == ')', "malformed group element key");
    std::vector<long> t;
    size_t i = 1;
    while (i + 1 < s.size()) {
        size_t j = s.find(',', i);
        if (j == std::string::npos || j > s.size() - 1) j = s.size() - 1;
        t.push_back(std::stol(s.substr(i, j - i)));
        i = j + 1;
    }
    return t;
}

inline njson elem_json(const Fq& a) { return a.v; }
template <class S>
njson elem_json(const GroupRing<S>& x);

template <class S>
njson elem_json(const Poly<S>& f) {
    njson j;
    j["ring"] = "poly";
    j["var"] = var_name(f.cx.var);
    njson arr = njson::array();
    for (long k = 0; k <= f.deg(); ++k) arr.push_back(elem_json(f.coeff(k)));
    j["coeffs"] = arr;
    return j;
}

template <class S>
njson elem_json(const GroupRing<S>& x) {
    njson j;
    j["ring"] = "groupring";
    j["group"] = x.cx.G->str();
    njson co = njson::object();
    for (size_t g = 0; g < x.c.size(); ++g)
        if (!x.c[g].is_zero()) co[group_key(x.cx.G, g)] = elem_json(x.c[g]);
    j["coeffs"] = co;
    return j;
}

inline Fq elem_from_json(const njson& j, const FqField* F) {
    require(j.is_number_unsigned(), "expected a coefficient code");
    uint64_t v = j.get<uint64_t>();
    require(v < F->q, "coefficient code out of range for the field");
    return Fq(F, v);
}
template <class S>
GroupRing<S> elem_from_json(const njson& j, GroupRingCtx<S> cx);

template <class S>
Poly<S> elem_from_json(const njson& j, PolyCtx<S> cx) {
    require(j.is_object() && j.value("ring", "") == "poly", "expected a polynomial object");
    require(j.value("var", "") == var_name(cx.var), "polynomial variable mismatch");
    std::vector<S> c;
    for (const auto& e : j.at("coeffs")) c.push_back(elem_from_json(e, cx.coeff));
    return Poly<S>(cx, std::move(c));
}

template <class S>
GroupRing<S> elem_from_json(const njson& j, GroupRingCtx<S> cx) {
    require(j.is_object() && j.value("ring", "") == "groupring", "expected a group-ring object");
    require(j.value("group", "") == cx.G->str(), "group mismatch");
    GroupRing<S> x(cx);
    for (const auto& [key, val] : j.at("coeffs").items()) {
        auto t = parse_group_key(key);
        x.c[cx.G->index(t)] = elem_from_json(val, cx.coeff);
    }
    return x;
}

// Series in the uniformizer 1/theta: lead is the smallest power of theta^-1
// present (precision + 1 when the series is zero to the working precision),
// coeffs[j] is the coefficient of theta^-(lead+j) through theta^-precision.
template <class S>
njson series_json(const Series<S>& s) {
    njson j;
    j["schema"] = "tlf.series/1";
    j["var"] = "theta^-1";
    j["ring"] = ring_tag(s.ccx);
    j["q"] = S::zero(s.ccx).base_q();
    long N = s.precision();
    j["precision"] = N;
    long lead = s.c.empty() ? N + 1 : -s.hi();
    j["lead"] = lead;
    njson arr = njson::array();
    for (long e = -lead; e >= s.lo; --e) arr.push_back(elem_json(s.coeff_at(e)));
    j["coeffs"] = arr;
    return j;
}

template <class S>
Series<S> series_from(const njson& j, SeriesCtx<S> scx) {
    require(j.value("schema", "") == "tlf.series/1", "unrecognized series schema");
    require(j.value("var", "") == "theta^-1", "series variable mismatch");
    require(j.value("ring", "") == ring_tag(scx.coeff), "series ring mismatch");
    require(j.value("q", (uint64_t)0) == S::zero(scx.coeff).base_q(), "field size mismatch");
    long N = j.at("precision").get<long>();
    require(N == scx.prec, "series precision mismatch");
    long lead = j.at("lead").get<long>();
    Series<S> s(scx.coeff, -N);
    const auto& arr = j.at("coeffs");
    require(lead > N ? arr.empty() : (long)arr.size() == N - lead + 1,
            "series coefficient count does not match lead/precision");
    if (!arr.empty()) {
        s.c.assign((size_t)(N - lead + 1), S::zero(scx.coeff));
        for (long k = 0; k < (long)arr.size(); ++k)
            s.c[(size_t)(N - lead - k)] = elem_from_json(arr[(size_t)k], scx.coeff);
        s.normalize();
    }
    return s;
}

template <class S>
njson lseries_json(const LSeries<S>& L) {
    njson j;
    j["schema"] = "tlf.lseries/1";
    j["tag"] = L.tag;
    j["q"] = S::zero(L.value.ccx).base_q();
    j["D"] = L.D;
    j["N"] = L.N;
    j["value"] = series_json(L.value);
    njson parts = njson::array();
    for (const auto& [d, s] : L.partials) parts.push_back({{"degree", d}, {"value", series_json(s)}});
    j["partials"] = parts;
    njson exc = njson::array();
    for (const auto& v : L.excluded) exc.push_back(v.str());
    j["excluded"] = exc;
    njson facs = njson::array();
    for (const auto& f : L.factors)
        facs.push_back({{"prime", f.v.str()}, {"lie", elem_json(f.lie)}, {"e", elem_json(f.e)}});
    j["factors"] = facs;
    return j;
}

}  // namespace tlf::jsondetail
