#include "skincare/assessment.hpp"

#include <cctype>
#include <cmath>
#include <numeric>
#include <string>

#include "skincare/error.hpp"

namespace skincare {

std::string_view key(AssessmentSource s) noexcept {
  switch (s) {
    case AssessmentSource::Direct: return "direct";
    case AssessmentSource::Classifier: return "classifier";
    case AssessmentSource::Questionnaire: return "questionnaire";
    case AssessmentSource::Synthetic: return "synthetic";
  }
  return "?";
}

std::optional<AssessmentSource> try_parse_source(std::string_view text) {
  for (auto s : {AssessmentSource::Direct, AssessmentSource::Classifier,
                 AssessmentSource::Questionnaire, AssessmentSource::Synthetic}) {
    if (text == key(s)) return s;
  }
  return std::nullopt;
}

std::string_view key(Tightness t) noexcept {
  switch (t) {
    case Tightness::Never: return "never";
    case Tightness::Sometimes: return "sometimes";
    case Tightness::Always: return "always";
  }
  return "?";
}

std::string_view key(Shine s) noexcept {
  switch (s) {
    case Shine::None: return "none";
    case Shine::TZone: return "tzone";
    case Shine::AllOver: return "allover";
  }
  return "?";
}

namespace {

// Lowercase with '_', '-' and spaces removed: "T-Zone" -> "tzone".
std::string fold(std::string_view text) {
  std::string out;
  for (char ch : text) {
    auto c = static_cast<unsigned char>(ch);
    if (std::isspace(c) || c == '_' || c == '-') continue;
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

}  // namespace

std::optional<Tightness> try_parse_tightness(std::string_view text) {
  const std::string f = fold(text);
  for (auto t : {Tightness::Never, Tightness::Sometimes, Tightness::Always}) {
    if (f == key(t)) return t;
  }
  return std::nullopt;
}

std::optional<Shine> try_parse_shine(std::string_view text) {
  const std::string f = fold(text);
  for (auto s : {Shine::None, Shine::TZone, Shine::AllOver}) {
    if (f == key(s)) return s;
  }
  return std::nullopt;
}

Concern argmax_concern(std::span<const double, kConcernCount> probs) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < kConcernCount; ++i) {
    if (probs[i] > probs[best]) best = i;
  }
  return kAllConcerns[best];
}

SkinAssessment from_direct(SkinType skin_type, Concern concern) {
  SkinAssessment a;
  a.skin_type = skin_type;
  a.concern_probs[index_of(concern)] = 1.0;
  a.concern = concern;
  a.source = AssessmentSource::Direct;
  return a;
}

SkinAssessment from_confidences(std::span<const double> confidences, SkinType skin_type) {
  if (confidences.size() != kConcernCount) {
    throw Error(ErrorCode::InvalidDistribution,
                "expected 4 concern confidences, got " + std::to_string(confidences.size()));
  }
  double total = 0.0;
  for (double c : confidences) {
    if (!std::isfinite(c) || c < 0.0) {
      throw Error(ErrorCode::InvalidDistribution, "concern confidences must be finite and >= 0");
    }
    total += c;
  }
  if (total <= 0.0) throw Error(ErrorCode::InvalidDistribution, "concern confidences are all zero");
  SkinAssessment a;
  a.skin_type = skin_type;
  for (std::size_t i = 0; i < kConcernCount; ++i) a.concern_probs[i] = confidences[i] / total;
  a.concern = argmax_concern(a.concern_probs);
  a.source = AssessmentSource::Classifier;
  return a;
}

SkinAssessment from_questionnaire(const QuestionnaireAnswers& answers) {
  SkinType type = SkinType::Normal;
  if (answers.reacts_to_new_products) {
    type = SkinType::Sensitive;
  } else if (answers.tightness_after_wash == Tightness::Always &&
             answers.midday_shine == Shine::None) {
    type = SkinType::Dry;
  } else if (answers.tightness_after_wash == Tightness::Never &&
             answers.midday_shine == Shine::AllOver) {
    type = SkinType::Oily;
  } else if (answers.midday_shine == Shine::TZone) {
    type = SkinType::Combination;
  }
  SkinAssessment a = from_direct(type, answers.primary_goal);
  a.source = AssessmentSource::Questionnaire;
  return a;
}

std::array<double, kConcernCount> synthetic_concern_weights() {
  // Canonical order: Acne, ClearSkin, Pigmentation, Wrinkles.
  std::array<double, kConcernCount> w{49.4, 10.0, 55.9, 39.4};
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x /= total;
  return w;
}

AssessmentGenerator::AssessmentGenerator(std::uint64_t seed)
    : rng_(seed),
      concern_({49.4, 10.0, 55.9, 39.4}),
      skin_type_(0, static_cast<int>(kSkinTypeCount) - 1) {}

SkinAssessment AssessmentGenerator::next() {
  const auto concern = kAllConcerns[static_cast<std::size_t>(concern_(rng_))];
  const auto type = kAllSkinTypes[static_cast<std::size_t>(skin_type_(rng_))];
  SkinAssessment a = from_direct(type, concern);
  a.source = AssessmentSource::Synthetic;
  return a;
}

std::vector<SkinAssessment> synthesize(std::uint64_t seed, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "synthesize needs n >= 1");
  AssessmentGenerator gen(seed);
  std::vector<SkinAssessment> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(gen.next());
  return out;
}

}  // namespace skincare
