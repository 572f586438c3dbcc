#include "tlf/io_json.hpp"

#include "json_detail.hpp"

namespace tlf {

using jsondetail::njson;

namespace {

std::string dump(const njson& j, int indent) { return indent < 0 ? j.dump() : j.dump(indent); }

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string json_of_series(const Series<Fq>& s, int indent) {
    return dump(jsondetail::series_json(s), indent);
}
std::string json_of_series(const Series<Poly<Fq>>& s, int indent) {
    return dump(jsondetail::series_json(s), indent);
}
std::string json_of_series(const Series<GroupRing<Fq>>& s, int indent) {
    return dump(jsondetail::series_json(s), indent);
}
std::string json_of_series(const Series<GroupRing<Poly<Fq>>>& s, int indent) {
    return dump(jsondetail::series_json(s), indent);
}

Series<Fq> series_from_json(const std::string& text, SeriesCtx<Fq> scx) {
    return jsondetail::series_from(njson::parse(text), scx);
}
Series<Poly<Fq>> series_from_json(const std::string& text, SeriesCtx<Poly<Fq>> scx) {
    return jsondetail::series_from(njson::parse(text), scx);
}
Series<GroupRing<Fq>> series_from_json(const std::string& text, SeriesCtx<GroupRing<Fq>> scx) {
    return jsondetail::series_from(njson::parse(text), scx);
}
Series<GroupRing<Poly<Fq>>> series_from_json(const std::string& text,
                                             SeriesCtx<GroupRing<Poly<Fq>>> scx) {
    return jsondetail::series_from(njson::parse(text), scx);
}

std::string json_of(const GroupRing<Fq>& x, int indent) {
    return dump(jsondetail::elem_json(x), indent);
}
std::string json_of(const GroupRing<Poly<Fq>>& x, int indent) {
    return dump(jsondetail::elem_json(x), indent);
}
GroupRing<Fq> groupring_from_json(const std::string& text, GroupRingCtx<Fq> cx) {
    return jsondetail::elem_from_json(njson::parse(text), cx);
}
GroupRing<Poly<Fq>> groupring_from_json(const std::string& text, GroupRingCtx<Poly<Fq>> cx) {
    return jsondetail::elem_from_json(njson::parse(text), cx);
}

std::string json_of_lseries(const LSeries<Fq>& L, int indent) {
    return dump(jsondetail::lseries_json(L), indent);
}
std::string json_of_lseries(const LSeries<Poly<Fq>>& L, int indent) {
    return dump(jsondetail::lseries_json(L), indent);
}
std::string json_of_lseries(const LSeries<GroupRing<Fq>>& L, int indent) {
    return dump(jsondetail::lseries_json(L), indent);
}
std::string json_of_lseries(const LSeries<GroupRing<Poly<Fq>>>& L, int indent) {
    return dump(jsondetail::lseries_json(L), indent);
}

std::string csv_of_rows(const std::vector<FactorRow>& rows) {
    std::string out = "prime,|Lie|,|E|,symbol,frobenius\n";
    for (const auto& r : rows) {
        out += csv_field(r.prime) + "," + csv_field(r.lie) + "," + csv_field(r.e) + "," +
               csv_field(r.symbol) + "," + csv_field(r.frobenius) + "\n";
    }
    return out;
}

}  // namespace tlf
