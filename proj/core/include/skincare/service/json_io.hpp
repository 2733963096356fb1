#pragma once

#include <chrono>
#include <string>
#include <string_view>

#include "json.hpp"
#include "skincare/assessment.hpp"
#include "skincare/catalog.hpp"
#include "skincare/routine.hpp"
#include "skincare/tsne.hpp"

namespace skincare::service {

using json = nlohmann::json;
using Clock = std::chrono::system_clock;

/// RFC 3339 UTC with microseconds: 2026-10-14T12:38:00.123456Z.
std::string format_rfc3339(Clock::time_point t);
/// Accepts 'Z' or a numeric offset, with or without fractional seconds.
/// Throws Error(Format).
Clock::time_point parse_rfc3339(std::string_view text);
/// Drops sub-microsecond precision so timestamps survive a JSON round-trip.
Clock::time_point truncate_to_micros(Clock::time_point t);

json to_json(const Product& p);
json to_json(const SkinAssessment& a);
json to_json(const ScoredProduct& s, const Catalog* catalog = nullptr);
/// Product brand and name are included when a catalog is given.
json to_json(const Routine& r, const Catalog* catalog = nullptr);
json to_json(const tsne::Embedding& e, std::string_view scope, const Catalog& catalog);

/// Accepts any of:
///   {"skin_type": "dry", "confidences": [0.9, 0.05, 0.03, 0.02]}
///   {"questionnaire": {"tightness_after_wash": "always", "midday_shine": "none",
///                      "reacts_to_new_products": false, "primary_goal": "wrinkles"}}
///   {"skin_type": "dry", "concern": "acne"}
///   the stored form produced by to_json(SkinAssessment).
/// Confidences may also be an object keyed by concern. Throws
/// Error(InvalidValue) or Error(InvalidDistribution).
SkinAssessment assessment_from_json(const json& j);

/// Inverse of to_json(Routine); throws Error(Format).
Routine routine_from_json(const json& j);

}  // namespace skincare::service
