#pragma once

#include <string>

#include <json.hpp>

#include "bk/ext1.hpp"

namespace bk {

inline constexpr const char* kVersion = "0.1.0";

// nlohmann's map-backed object keeps keys sorted, which is what makes the
// emitted documents canonical.
using Json = nlohmann::json;

// Field elements are serialized as discrete-log exponents relative to the
// field's deterministic generator (null for zero), never as coefficient
// tuples; the field itself is described once by p, m, and the modulus.
Json json_field(const FieldPtr& k);
Json json_fq(const FieldPtr& k, int32_t rep);
Json json_weight(const SerreWeight& w);
Json json_weights_sorted(std::vector<SerreWeight> ws);
Json json_engeance(const Engeance& e, const FieldPtr& k);
Json json_class(const ResidualClass& cls, const FieldPtr& k);
Json json_ext_class(const Ext1Class& c, const FieldPtr& k);
Json json_ring(const PresentedRing& r);
Json json_calibration(const Calibration& cal, const FieldPtr& k);
Json json_bm_report(const BMReport& r, const FieldPtr& k);

const char* genre_name(Genre g);

// {command, config, results, calibration, version}
Json make_document(const std::string& command, Json config, Json results, Json calibration);

// The three reproducible tables.  Each is a complete document: the engeance
// table over theta in {1, g, g^{-1}} with the fibre members per row, the
// common-weight table, and the nongeneric weight lists for two twists.
// window_mult widens the series window used by the censuses.
Json figure1_table(int64_t p, int window_mult = 1);
Json figure3_table(int64_t p);
Json nongeneric_table(int64_t p);

std::string json_canonical(const Json& j);

}  // namespace bk
