#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "skincare/assessment.hpp"
#include "skincare/catalog.hpp"
#include "skincare/mf.hpp"
#include "skincare/vectors.hpp"

namespace skincare {

inline constexpr std::size_t kProductsPerCategory = 5;

struct ScoredProduct {
  ProductId product_id = 0;
  double final_score = 0.0;  // alpha * cosine_part + (1 - alpha) * mf_part
  double cosine_part = 0.0;
  double mf_part = 0.0;  // min-max normalised over the candidate set

  friend bool operator==(const ScoredProduct&, const ScoredProduct&) = default;
};

struct Routine {
  std::array<std::vector<ScoredProduct>, kCategoryCount> by_category;
  SkinAssessment assessment;
  std::optional<ProductId> anchor;
  double alpha = 0.5;
  std::chrono::system_clock::time_point created_at;
  std::uint64_t fingerprint = 0;

  const std::vector<ScoredProduct>& in(Category c) const { return by_category[index_of(c)]; }
  friend bool operator==(const Routine&, const Routine&) = default;
};

/// Descending score, then ascending id.
bool ranks_before(const ScoredProduct& a, const ScoredProduct& b);

/// Per category, ranks the products that suit the assessed skin type
/// (excluding the anchor) by a blend of ingredient similarity and the
/// factor-model score for the assessed profile.
///
/// The similarity term is the cosine to the anchor's ingredient vector, or
/// without an anchor, the cosine to the centroid of the candidates that
/// target the assessed concern (all candidates when none do). Factor scores
/// are min-max normalised over each candidate set; a constant set maps to
/// 0.5.
///
/// Throws Error(InvalidArgument) for alpha outside [0,1],
/// Error(UnknownAnchor), and Error(StaleModel) when the matrix or model was
/// built from a different catalog.
Routine recommend(const Catalog& catalog, const IngredientMatrix& matrix,
                  const mf::FactorModel& model, const SkinAssessment& assessment,
                  std::optional<ProductId> anchor = std::nullopt, double alpha = 0.5);

/// Products of `brand` in `category` that suit the routine's skin type,
/// ranked by cosine similarity to the routine's top product in that
/// category (or to the anchor when the category came back empty). The
/// reference product and the anchor are never returned. Scores carry
/// cosine only (mf_part = 0).
/// Throws Error(UnknownBrand) when no catalog product has that brand.
std::vector<ScoredProduct> alternatives(const Catalog& catalog, const IngredientMatrix& matrix,
                                        const Routine& routine, Category category,
                                        std::string_view brand);

}  // namespace skincare
