#pragma once

#include <string>
#include <vector>

#include "tlf/lseries.hpp"

namespace tlf {

// JSON serialization for series, group-ring elements, and L-series reports.
// The JSON side is the machine-readable source of truth for tool output; the
// schemas are versioned ("tlf.series/1", "tlf.lseries/1"). indent < 0 emits
// compact one-line JSON, otherwise pretty-printed with that indent width.
//
// Series schema: var is always "theta^-1", lead is the smallest power of
// theta^-1 present (precision + 1 for a zero series), and coeffs[j] is the
// coefficient of theta^-(lead+j), listed through theta^-precision. Fq elements
// appear as their code (base-p digit packing for extension fields), nested
// rings as tagged objects.

std::string json_of_series(const Series<Fq>& s, int indent = -1);
std::string json_of_series(const Series<Poly<Fq>>& s, int indent = -1);
std::string json_of_series(const Series<GroupRing<Fq>>& s, int indent = -1);
std::string json_of_series(const Series<GroupRing<Poly<Fq>>>& s, int indent = -1);

Series<Fq> series_from_json(const std::string& text, SeriesCtx<Fq> scx);
Series<Poly<Fq>> series_from_json(const std::string& text, SeriesCtx<Poly<Fq>> scx);
Series<GroupRing<Fq>> series_from_json(const std::string& text, SeriesCtx<GroupRing<Fq>> scx);
Series<GroupRing<Poly<Fq>>> series_from_json(const std::string& text,
                                             SeriesCtx<GroupRing<Poly<Fq>>> scx);

std::string json_of(const GroupRing<Fq>& x, int indent = -1);
std::string json_of(const GroupRing<Poly<Fq>>& x, int indent = -1);
GroupRing<Fq> groupring_from_json(const std::string& text, GroupRingCtx<Fq> cx);
GroupRing<Poly<Fq>> groupring_from_json(const std::string& text, GroupRingCtx<Poly<Fq>> cx);

std::string json_of_lseries(const LSeries<Fq>& L, int indent = -1);
std::string json_of_lseries(const LSeries<Poly<Fq>>& L, int indent = -1);
std::string json_of_lseries(const LSeries<GroupRing<Fq>>& L, int indent = -1);
std::string json_of_lseries(const LSeries<GroupRing<Poly<Fq>>>& L, int indent = -1);

// CSV table of local factors, one row per prime. Callers render the ring
// elements; csv_of_rows only handles quoting.
struct FactorRow {
    std::string prime, lie, e, symbol, frobenius;
};

std::string csv_of_rows(const std::vector<FactorRow>& rows);

}  // namespace tlf
