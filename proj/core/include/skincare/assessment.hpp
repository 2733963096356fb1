#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "skincare/types.hpp"

namespace skincare {

enum class AssessmentSource { Direct, Classifier, Questionnaire, Synthetic };

std::string_view key(AssessmentSource s) noexcept;
std::optional<AssessmentSource> try_parse_source(std::string_view text);

/// What the rest of the pipeline needs from a skin analysis: the skin type
/// and a distribution over the four concerns.
struct SkinAssessment {
  SkinType skin_type = SkinType::Normal;
  std::array<double, kConcernCount> concern_probs{};  // canonical Concern order
  Concern concern = Concern::Acne;                    // argmax, ties -> lowest index
  AssessmentSource source = AssessmentSource::Direct;

  friend bool operator==(const SkinAssessment&, const SkinAssessment&) = default;
};

/// Index of the largest entry; ties go to the earliest canonical concern.
Concern argmax_concern(std::span<const double, kConcernCount> probs);

/// One-hot on the given concern.
SkinAssessment from_direct(SkinType skin_type, Concern concern);

/// Normalises classifier confidences. Throws Error(InvalidDistribution) for
/// a wrong length, negative, non-finite or all-zero input.
SkinAssessment from_confidences(std::span<const double> confidences, SkinType skin_type);

enum class Tightness { Never, Sometimes, Always };
enum class Shine { None, TZone, AllOver };

struct QuestionnaireAnswers {
  Tightness tightness_after_wash = Tightness::Sometimes;
  Shine midday_shine = Shine::None;
  bool reacts_to_new_products = false;
  Concern primary_goal = Concern::ClearSkin;
};

std::optional<Tightness> try_parse_tightness(std::string_view text);
std::optional<Shine> try_parse_shine(std::string_view text);
std::string_view key(Tightness t) noexcept;
std::string_view key(Shine s) noexcept;

/// Skin type rules, first match wins:
///   reacts to new products          -> Sensitive
///   always tight, no shine          -> Dry
///   never tight, shine all over     -> Oily
///   shine on the T-zone             -> Combination
///   anything else                   -> Normal
SkinAssessment from_questionnaire(const QuestionnaireAnswers& answers);

/// Concern sampling weights for synthetic workloads, normalised, canonical
/// order. Prevalence percentages: pigmentation 55.9, acne 49.4, wrinkles 39.4,
/// plus 10.0 for clear skin.
std::array<double, kConcernCount> synthetic_concern_weights();

/// Seeded stream of synthetic assessments (one-hot concern, uniform skin type).
class AssessmentGenerator {
 public:
  explicit AssessmentGenerator(std::uint64_t seed);
  SkinAssessment next();

 private:
  std::mt19937_64 rng_;
  std::discrete_distribution<int> concern_;
  std::uniform_int_distribution<int> skin_type_;
};

/// Throws Error(InvalidArgument) for n = 0.
std::vector<SkinAssessment> synthesize(std::uint64_t seed, std::size_t n);

}  // namespace skincare
