#include "tlf/specs.hpp"

#include "tlf/nuclear.hpp"

#include <cctype>

namespace tlf {

namespace {

std::string trimmed(const std::string& s) {
    size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

// Recursive-descent expression parser shared by the polynomial and algebra
// readers. V needs +, -, *, unary -; atoms come from the two callbacks.
template <class V>
struct ExprParser {
    const std::string& s;
    size_t i = 0;
    std::function<V(const std::string&)> name_of;  // identifier -> value
    std::function<V(const std::string&)> num_of;   // digit string (or c<code>) -> value

    [[noreturn]] void fail(const std::string& what) const {
        throw std::runtime_error("expr: " + what + " at offset " + std::to_string(i) + " in '" +
                                 s + "'");
    }
    void skip() {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    }
    bool eat(char c) {
        skip();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }

    V parse() {
        V v = expr();
        skip();
        if (i != s.size()) fail("trailing input");
        return v;
    }

    V expr() {
        skip();
        bool neg = false;
        if (eat('-')) neg = true;
        else eat('+');
        V v = term();
        if (neg) v = -v;
        for (;;) {
            if (eat('+')) v = v + term();
            else if (eat('-')) v = v - term();
            else return v;
        }
    }

    V term() {
        V v = factor();
        while (eat('*')) v = v * factor();
        return v;
    }

    V factor() {
        V v = atom();
        if (eat('^')) {
            skip();
            size_t k0 = i;
            while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
            if (i == k0) fail("expected an exponent");
            long e = std::stol(s.substr(k0, i - k0));
            V r = v;
            if (e == 0) fail("use an explicit constant instead of ^0");
            for (long k = 1; k < e; ++k) r = r * v;
            v = r;
        }
        return v;
    }

    V atom() {
        skip();
        if (eat('(')) {
            V v = expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (i < s.size() && std::isdigit((unsigned char)s[i])) {
            size_t k0 = i;
            while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
            return num_of(s.substr(k0, i - k0));
        }
        if (i < s.size() && (std::isalpha((unsigned char)s[i]) || s[i] == '_')) {
            size_t k0 = i;
            while (i < s.size() && (std::isalnum((unsigned char)s[i]) || s[i] == '_')) ++i;
            std::string name = s.substr(k0, i - k0);
            if (name.size() > 1 && name[0] == 'c' &&
                std::all_of(name.begin() + 1, name.end(),
                            [](char c) { return std::isdigit((unsigned char)c); }))
                return num_of(name);
            return name_of(name);
        }
        fail("unrecognized token");
    }
};

}  // namespace

const AbelianGroup* parse_group_spec(const std::string& spec, uint32_t p) {
    require(p >= 2, "group spec needs the ambient characteristic");
    std::string t = trimmed(spec);
    std::vector<long> factors;
    if (t.empty() || t == "1") return AbelianGroup::get(factors, p);
    size_t pos = 0;
    while (pos <= t.size()) {
        size_t nxt = t.find_first_of("xX", pos);
        // avoid splitting inside a token: factors are "Z/<n>", so any x is a separator
        std::string tok = trimmed(t.substr(pos, nxt == std::string::npos ? nxt : nxt - pos));
        require(tok.size() > 2 && (tok[0] == 'Z' || tok[0] == 'z') && tok[1] == '/',
                "group factor must look like Z/<n>: '" + tok + "'");
        std::string digits = trimmed(tok.substr(2));
        require(!digits.empty() &&
                    std::all_of(digits.begin(), digits.end(),
                                [](char c) { return std::isdigit((unsigned char)c); }),
                "group factor must look like Z/<n>: '" + tok + "'");
        factors.push_back(std::stol(digits));
        if (nxt == std::string::npos) break;
        pos = nxt + 1;
    }
    return AbelianGroup::get(factors, p);
}

Poly<Fq> parse_poly(const std::string& text, PolyCtx<Fq> cx) {
    const FqField* F = cx.coeff;
    ExprParser<Poly<Fq>> P{text, 0, {}, {}};
    P.name_of = [&](const std::string& name) {
        if (name == var_name(cx.var)) return Poly<Fq>::gen(cx);
        throw std::runtime_error("expr: unknown name '" + name + "' (variable here is " +
                                 var_name(cx.var) + ")");
    };
    P.num_of = [&](const std::string& digits) {
        if (digits[0] == 'c') {
            uint64_t code = std::stoull(digits.substr(1));
            require(code < F->q, "coefficient code out of range");
            return Poly<Fq>::constant(cx, Fq(F, code));
        }
        return Poly<Fq>::constant(cx, Fq::from_int(F, std::stoll(digits)));
    };
    return P.parse();
}

AlgElem parse_alg_expr(const std::string& text, const ExtAlgebra* B) {
    ExprParser<AlgElem> P{text, 0, {}, {}};
    P.name_of = [&](const std::string& name) {
        if (name == "alpha") return B->alpha();
        if (name == "delta") return B->delta();
        if (name == "theta") return B->theta();
        throw std::runtime_error("expr: unknown name '" + name +
                                 "' (expected alpha, delta, or theta)");
    };
    P.num_of = [&](const std::string& digits) {
        Fq a = digits[0] == 'c' ? Fq(B->F, std::stoull(digits.substr(1)))
                                : Fq::from_int(B->F, std::stoll(digits));
        require(a.v < B->F->q, "coefficient code out of range");
        return AlgElem::scalar(B, RatFun<Fq>::of(Poly<Fq>::constant(B->kcx, a)));
    };
    return P.parse();
}

ModuleFile module_from_toml(const TomlDoc& doc) {
    const TomlTable& m = doc.table("module");
    long qv = m.at("q").as_int();
    uint32_t p = 0, e = 0;
    require(qv >= 2 && is_prime_power((uint64_t)qv, p, e), "module q must be a prime power");
    const FqField* F = FqField::get(p, e);
    long dim = m.at("dimension").as_int();
    long r = m.at("r").as_int();
    require(dim >= 1 && r >= 0, "module needs dimension >= 1 and r >= 0");

    PolyCtx<Fq> tcx{F, Var::theta};
    AndersonModule E;
    E.F = F;
    E.n = (size_t)dim;
    for (long i = 0; i <= r; ++i) {
        std::string key = "A" + std::to_string(i);
        const auto& rows = m.at(key).as_array();
        require((long)rows.size() == dim, key + " must have 'dimension' rows");
        Matrix<Kz> Ai(kz_ctx(F), (size_t)dim, (size_t)dim);
        for (long a = 0; a < dim; ++a) {
            const auto& row = rows[(size_t)a].as_array();
            require((long)row.size() == dim, key + " rows must have 'dimension' entries");
            for (long b = 0; b < dim; ++b) {
                Poly<Fq> entry = parse_poly(row[(size_t)b].as_str(), tcx);
                Ai((size_t)a, (size_t)b) = kz_scalar(F, RatFun<Fq>::of(entry));
            }
        }
        E.A.push_back(std::move(Ai));
    }
    E.check_invariants();
    return ModuleFile{std::move(E), m.str_or("name", "custom")};
}

ModuleFile module_from_file(const std::string& path) {
    return module_from_toml(toml_parse_file(path));
}

namespace {

// integral theta-polynomial at z-degree k of a Kz entry
Poly<Fq> entry_at_z(const Kz& e, long k) {
    RatFun<Fq> c = e.coeff(k);
    require(c.is_polynomial(), "module entry has a denominator; quotients need integral entries");
    return c.num;
}

}  // namespace

LocalFactor<Fq> local_factor_anderson(const AndersonModule& E, const PolyFq& v) {
    const FqField* F = E.F;
    size_t n = (size_t)v.deg(), d = E.n;
    PolyCtx<Fq> tcx{F, Var::theta};
    Matrix<Fq> C = mult_theta_matrix(v);
    Matrix<Fq> Fr = twist_part_matrix(Poly<Fq>::one(tcx), v);
    Matrix<Fq> full(F, d * n, d * n), lie(F, d * n, d * n);
    Matrix<Fq> Fri = Matrix<Fq>::identity(F, n);
    for (size_t i = 0; i < E.A.size(); ++i) {
        for (size_t a = 0; a < d; ++a)
            for (size_t b = 0; b < d; ++b) {
                const Kz& entry = E.A[i](a, b);
                require(entry.deg() <= 0, "module carries z-weights; use the z-aware factor");
                Poly<Fq> pe = entry_at_z(entry, 0);
                if (pe.is_zero()) continue;
                Matrix<Fq> blk = poly_in_matrix(pe, C) * Fri;
                for (size_t s = 0; s < n; ++s)
                    for (size_t t = 0; t < n; ++t) {
                        full(a * n + s, b * n + t) += blk(s, t);
                        if (i == 0) lie(a * n + s, b * n + t) += blk(s, t);
                    }
            }
        Fri = Fri * Fr;
    }
    FiniteThetaModule<Fq> Em{std::move(full), "module/(" + v.str() + ")"};
    FiniteThetaModule<Fq> Lm{std::move(lie), "Lie module/(" + v.str() + ")"};
    return make_local_factor(fitting_monic(Lm), fitting_monic(Em), v);
}

LocalFactor<Poly<Fq>> local_factor_anderson_z(const AndersonModule& E, const PolyFq& v) {
    const FqField* F = E.F;
    size_t n = (size_t)v.deg(), d = E.n;
    PolyCtx<Fq> tcx{F, Var::theta}, zcx{F, Var::z};
    Matrix<Fq> C = mult_theta_matrix(v);
    Matrix<Fq> Fr = twist_part_matrix(Poly<Fq>::one(tcx), v);
    Matrix<Poly<Fq>> full(zcx, d * n, d * n), lie(zcx, d * n, d * n);
    Matrix<Fq> Fri = Matrix<Fq>::identity(F, n);
    Poly<Fq> z = Poly<Fq>::gen(zcx);
    for (size_t i = 0; i < E.A.size(); ++i) {
        for (size_t a = 0; a < d; ++a)
            for (size_t b = 0; b < d; ++b) {
                const Kz& entry = E.A[i](a, b);
                for (long k = 0; k <= entry.deg(); ++k) {
                    Poly<Fq> pe = entry_at_z(entry, k);
                    if (pe.is_zero()) continue;
                    Matrix<Fq> blk = poly_in_matrix(pe, C) * Fri;
                    Poly<Fq> zk = Poly<Fq>::one(zcx);
                    for (long u = 0; u < k; ++u) zk = zk * z;
                    for (size_t s = 0; s < n; ++s)
                        for (size_t t = 0; t < n; ++t) {
                            if (blk(s, t).is_zero()) continue;
                            full(a * n + s, b * n + t) += zk.scaled(blk(s, t));
                            if (i == 0) lie(a * n + s, b * n + t) += zk.scaled(blk(s, t));
                        }
                }
            }
        Fri = Fri * Fr;
    }
    FiniteThetaModule<Poly<Fq>> Em{std::move(full), "~module/(" + v.str() + ")"};
    FiniteThetaModule<Poly<Fq>> Lm{std::move(lie), "Lie ~module/(" + v.str() + ")"};
    return make_local_factor(fitting_monic(Lm), fitting_monic(Em), v);
}

LatticeSpec lattice_from_toml(const TomlDoc& doc) {
    const TomlTable& t = doc.table("lattice");
    LatticeSpec ls;
    long pv = t.at("p").as_int();
    require(pv >= 2, "lattice p must be at least 2");
    ls.p = (uint32_t)pv;
    for (const auto& g : t.at("generators").as_array()) ls.generators.push_back(g.as_str());
    require(!ls.generators.empty(), "lattice needs at least one generator");
    ls.name = t.str_or("name", "custom");
    return ls;
}

LatticeSpec lattice_from_file(const std::string& path) {
    return lattice_from_toml(toml_parse_file(path));
}

LatticeSpec lattice_preset(const std::string& name, uint32_t p) {
    if (name == "delta-line") return LatticeSpec{p, {"theta * delta"}, name};
    if (name == "integral") return LatticeSpec{p, {"1"}, name};
    throw std::runtime_error("unknown lattice preset '" + name + "'");
}

Lattice build_lattice(const LatticeSpec& ls) {
    const ExtAlgebra* B = ExtAlgebra::get(ls.p);
    Lattice L;
    L.B = B;
    L.name = ls.name;
    for (const auto& g : ls.generators) L.basis.push_back(parse_alg_expr(g, B));
    return L;
}

bool is_prime_power(uint64_t n, uint32_t& p, uint32_t& e) {
    if (n < 2) return false;
    uint64_t m = n;
    for (uint64_t d = 2; d * d <= m; ++d) {
        if (m % d) continue;
        p = (uint32_t)d;
        e = 0;
        while (m % d == 0) {
            m /= d;
            ++e;
        }
        return m == 1;
    }
    p = (uint32_t)m;
    e = 1;
    return true;
}

void validate_config(const RunConfig& cfg) {
    if (cfg.q) {
        uint32_t p = 0, e = 0;
        require(is_prime_power(cfg.q, p, e), "q must be a prime power");
    }
    require(cfg.precision >= 0, "precision must be nonnegative");
    require(cfg.max_deg >= 0, "max-deg must be nonnegative");
    require(cfg.format == "json" || cfg.format == "csv" || cfg.format == "text",
            "format must be json, csv, or text");
    if (!cfg.z.empty())
        require(cfg.z == "poly" || cfg.z.rfind("eval=", 0) == 0,
                "z mode must be 'poly' or 'eval=<value>'");
}

}  // namespace tlf
