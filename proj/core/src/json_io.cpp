#include "skincare/service/json_io.hpp"

#include <cmath>
#include <cctype>
#include <cstdio>
#include <ctime>

#include "skincare/error.hpp"
#include "skincare/fingerprint.hpp"

namespace skincare::service {

Clock::time_point truncate_to_micros(Clock::time_point t) {
  return std::chrono::time_point_cast<std::chrono::microseconds>(t);
}

std::string format_rfc3339(Clock::time_point t) {
  using namespace std::chrono;
  const auto us = duration_cast<microseconds>(t.time_since_epoch()).count();
  std::int64_t secs = us / 1'000'000;
  std::int64_t frac = us % 1'000'000;
  if (frac < 0) {
    frac += 1'000'000;
    --secs;
  }
  const std::time_t tt = static_cast<std::time_t>(secs);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[96];  // room for any int fields; the compiler cannot bound tm values
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%06lldZ", tm.tm_year + 1900,
                tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec,
                static_cast<long long>(frac));
  return buf;
}

Clock::time_point parse_rfc3339(std::string_view text) {
  const std::string s(text);
  std::tm tm{};
  int consumed = 0;
  if (std::sscanf(s.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%n", &tm.tm_year, &tm.tm_mon, &tm.tm_mday,
                  &tm.tm_hour, &tm.tm_min, &tm.tm_sec, &consumed) != 6) {
    throw Error(ErrorCode::Format, "invalid RFC 3339 timestamp '" + s + "'");
  }
  tm.tm_year -= 1900;
  tm.tm_mon -= 1;
  std::size_t pos = static_cast<std::size_t>(consumed);
  std::int64_t micros = 0;
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    int digits = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      if (digits < 6) micros = micros * 10 + (s[pos] - '0');
      ++digits, ++pos;
    }
    if (digits == 0) throw Error(ErrorCode::Format, "invalid RFC 3339 fraction in '" + s + "'");
    for (int d = digits; d < 6; ++d) micros *= 10;
  }
  std::int64_t offset = 0;
  if (pos < s.size() && (s[pos] == 'Z' || s[pos] == 'z')) {
    ++pos;
  } else if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
    int oh = 0, om = 0;
    if (std::sscanf(s.c_str() + pos + 1, "%2d:%2d", &oh, &om) != 2) {
      throw Error(ErrorCode::Format, "invalid RFC 3339 offset in '" + s + "'");
    }
    offset = (s[pos] == '+' ? 1 : -1) * (oh * 3600 + om * 60);
    pos += 6;
  } else {
    throw Error(ErrorCode::Format, "RFC 3339 timestamp needs a zone: '" + s + "'");
  }
  if (pos != s.size()) throw Error(ErrorCode::Format, "trailing characters in timestamp '" + s + "'");
  const std::int64_t secs = static_cast<std::int64_t>(timegm(&tm)) - offset;
  return Clock::time_point(std::chrono::duration_cast<Clock::duration>(
      std::chrono::microseconds(secs * 1'000'000 + micros)));
}

json to_json(const Product& p) {
  json suit = json::object();
  for (SkinType t : kAllSkinTypes) suit[std::string(key(t))] = p.suits(t);
  return {
      {"id", p.id},
      {"category", key(p.category)},
      {"issue", p.issue ? json(key(*p.issue)) : json(nullptr)},
      {"brand", p.brand},
      {"name", p.name},
      {"ingredients", p.ingredients},
      {"suitability", suit},
      {"price", p.price ? json(*p.price) : json(nullptr)},
      {"rank", p.rank ? json(*p.rank) : json(nullptr)},
  };
}

json to_json(const SkinAssessment& a) {
  json probs = json::object();
  for (Concern c : kAllConcerns) probs[std::string(key(c))] = a.concern_probs[index_of(c)];
  return {
      {"skin_type", key(a.skin_type)},
      {"concern", key(a.concern)},
      {"concern_probs", probs},
      {"source", key(a.source)},
  };
}

json to_json(const ScoredProduct& s, const Catalog* catalog) {
  json j{{"product_id", s.product_id},
         {"final_score", s.final_score},
         {"cosine_part", s.cosine_part},
         {"mf_part", s.mf_part}};
  if (catalog) {
    if (const Product* p = catalog->find(s.product_id)) {
      j["brand"] = p->brand;
      j["name"] = p->name;
    }
  }
  return j;
}

json to_json(const Routine& r, const Catalog* catalog) {
  json cats = json::object();
  for (Category c : kAllCategories) {
    json list = json::array();
    for (const auto& s : r.in(c)) list.push_back(to_json(s, catalog));
    cats[std::string(key(c))] = std::move(list);
  }
  return {
      {"created_at", format_rfc3339(r.created_at)},
      {"alpha", r.alpha},
      {"anchor", r.anchor ? json(*r.anchor) : json(nullptr)},
      {"fingerprint", to_hex(r.fingerprint)},
      {"assessment", to_json(r.assessment)},
      {"categories", std::move(cats)},
  };
}

json to_json(const tsne::Embedding& e, std::string_view scope, const Catalog& catalog) {
  json points = json::array();
  for (std::size_t i = 0; i < e.points.rows(); ++i) {
    json pt{{"product_id", e.product_ids.at(i)}, {"x", e.points(i, 0)}, {"y", e.points(i, 1)}};
    if (const Product* p = catalog.find(e.product_ids[i])) {
      pt["category"] = key(p->category);
      pt["issue"] = p->issue ? json(key(*p->issue)) : json(nullptr);
    }
    points.push_back(std::move(pt));
  }
  return {
      {"scope", scope},
      {"seed", e.seed},
      {"fingerprint", to_hex(catalog.fingerprint())},
      {"kl_final", e.kl_trace.empty() ? json(nullptr) : json(e.kl_trace.back())},
      {"points", std::move(points)},
  };
}

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::InvalidValue, what); }

const json& member(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) invalid(std::string("missing field '") + name + "'");
  return j.at(name);
}

std::string string_field(const json& j, const char* name) {
  const json& v = member(j, name);
  if (!v.is_string()) invalid(std::string("field '") + name + "' must be a string");
  return v.get<std::string>();
}

SkinType skin_type_field(const json& j) {
  const std::string s = string_field(j, "skin_type");
  auto t = try_parse_skin_type(s);
  if (!t) invalid("unknown skin_type '" + s + "'");
  return *t;
}

Concern concern_value(const std::string& s) {
  auto c = try_parse_concern(s);
  if (!c) invalid("unknown concern '" + s + "'");
  return *c;
}

std::array<double, kConcernCount> probability_vector(const json& v, const char* name) {
  std::array<double, kConcernCount> out{};
  if (v.is_array()) {
    if (v.size() != kConcernCount) {
      throw Error(ErrorCode::InvalidDistribution,
                  std::string("'") + name + "' must hold exactly 4 numbers");
    }
    for (std::size_t i = 0; i < kConcernCount; ++i) {
      if (!v[i].is_number()) invalid(std::string("'") + name + "' entries must be numbers");
      out[i] = v[i].get<double>();
    }
  } else if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) {
      if (!it.value().is_number()) invalid(std::string("'") + name + "' entries must be numbers");
      out[index_of(concern_value(it.key()))] = it.value().get<double>();
    }
  } else {
    invalid(std::string("'") + name + "' must be an array or object");
  }
  return out;
}

}  // namespace

SkinAssessment assessment_from_json(const json& j) {
  if (!j.is_object()) invalid("assessment must be a JSON object");
  if (j.contains("questionnaire")) {
    const json& q = j.at("questionnaire");
    QuestionnaireAnswers a;
    const std::string tight = string_field(q, "tightness_after_wash");
    auto t = try_parse_tightness(tight);
    if (!t) invalid("tightness_after_wash must be never, sometimes or always");
    a.tightness_after_wash = *t;
    const std::string shine = string_field(q, "midday_shine");
    auto s = try_parse_shine(shine);
    if (!s) invalid("midday_shine must be none, tzone or allover");
    a.midday_shine = *s;
    const json& reacts = member(q, "reacts_to_new_products");
    if (!reacts.is_boolean()) invalid("reacts_to_new_products must be a boolean");
    a.reacts_to_new_products = reacts.get<bool>();
    a.primary_goal = concern_value(string_field(q, "primary_goal"));
    return from_questionnaire(a);
  }
  if (j.contains("confidences")) {
    auto probs = probability_vector(j.at("confidences"), "confidences");
    return from_confidences(probs, skin_type_field(j));
  }
  if (j.contains("concern_probs")) {
    SkinAssessment a;
    a.skin_type = skin_type_field(j);
    a.concern_probs = probability_vector(j.at("concern_probs"), "concern_probs");
    double total = 0.0;
    for (double p : a.concern_probs) {
      if (!(p >= 0.0)) throw Error(ErrorCode::InvalidDistribution, "concern_probs must be >= 0");
      total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) {
      throw Error(ErrorCode::InvalidDistribution, "concern_probs must sum to 1");
    }
    a.concern = argmax_concern(a.concern_probs);
    if (j.contains("concern") && concern_value(string_field(j, "concern")) != a.concern) {
      throw Error(ErrorCode::InvalidDistribution, "concern is not the argmax of concern_probs");
    }
    a.source = AssessmentSource::Direct;
    if (j.contains("source")) {
      auto src = try_parse_source(string_field(j, "source"));
      if (!src) invalid("unknown assessment source");
      a.source = *src;
    }
    return a;
  }
  if (j.contains("concern")) {
    return from_direct(skin_type_field(j), concern_value(string_field(j, "concern")));
  }
  invalid("assessment needs confidences, questionnaire, concern_probs or concern");
}

Routine routine_from_json(const json& j) {
  try {
    Routine r;
    r.created_at = parse_rfc3339(j.at("created_at").get<std::string>());
    r.alpha = j.at("alpha").get<double>();
    if (!j.at("anchor").is_null()) r.anchor = j.at("anchor").get<ProductId>();
    r.fingerprint = from_hex(j.at("fingerprint").get<std::string>());
    r.assessment = assessment_from_json(j.at("assessment"));
    const json& cats = j.at("categories");
    for (Category c : kAllCategories) {
      for (const json& s : cats.at(std::string(key(c)))) {
        r.by_category[index_of(c)].push_back({s.at("product_id").get<ProductId>(),
                                              s.at("final_score").get<double>(),
                                              s.at("cosine_part").get<double>(),
                                              s.at("mf_part").get<double>()});
      }
    }
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Format, std::string("malformed routine record: ") + e.what());
  }
}

}  // namespace skincare::service
