#include "skincare/routine.hpp"

#include <algorithm>

#include "skincare/error.hpp"

namespace skincare {
namespace {

void require_aligned(const Catalog& catalog, const IngredientMatrix& matrix) {
  if (matrix.fingerprint() != catalog.fingerprint() || matrix.rows() != catalog.size()) {
    throw Error(ErrorCode::StaleModel, "ingredient matrix was built from a different catalog");
  }
}

void top_k(std::vector<ScoredProduct>& list) {
  std::sort(list.begin(), list.end(), ranks_before);
  if (list.size() > kProductsPerCategory) list.resize(kProductsPerCategory);
}

}  // namespace

bool ranks_before(const ScoredProduct& a, const ScoredProduct& b) {
  if (a.final_score != b.final_score) return a.final_score > b.final_score;
  return a.product_id < b.product_id;
}

Routine recommend(const Catalog& catalog, const IngredientMatrix& matrix,
                  const mf::FactorModel& model, const SkinAssessment& assessment,
                  std::optional<ProductId> anchor, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "alpha must lie in [0, 1]");
  }
  require_aligned(catalog, matrix);
  if (model.fingerprint != catalog.fingerprint() || model.v.rows() != catalog.size() ||
      model.u.rows() != mf::ProfileIndex::kSize) {
    throw Error(ErrorCode::StaleModel, "factor model was trained on a different catalog");
  }
  std::optional<std::size_t> anchor_row;
  if (anchor) {
    anchor_row = catalog.position(*anchor);
    if (!anchor_row) {
      throw Error(ErrorCode::UnknownAnchor, "anchor product " + std::to_string(*anchor) +
                                                " is not in the catalog");
    }
  }

  Routine routine;
  routine.assessment = assessment;
  routine.anchor = anchor;
  routine.alpha = alpha;
  routine.fingerprint = catalog.fingerprint();
  routine.created_at = std::chrono::system_clock::now();

  const auto& products = catalog.products();
  const std::size_t profile = mf::ProfileIndex::row(assessment.skin_type, assessment.concern);

  for (Category category : kAllCategories) {
    std::vector<std::size_t> rows;
    for (std::size_t r = 0; r < products.size(); ++r) {
      if (products[r].category == category && products[r].suits(assessment.skin_type) &&
          r != anchor_row) {
        rows.push_back(r);
      }
    }
    if (rows.empty()) continue;

    std::vector<double> similarity(rows.size());
    if (anchor_row) {
      for (std::size_t i = 0; i < rows.size(); ++i) {
        similarity[i] = row_cosine(matrix, *anchor_row, rows[i]);
      }
    } else {
      std::vector<double> centroid(matrix.cols(), 0.0);
      std::size_t members = 0;
      auto accumulate = [&](bool issue_only) {
        for (std::size_t r : rows) {
          if (issue_only && !products[r].targets(assessment.concern)) continue;
          for (auto c : matrix.nonzeros(r)) centroid[c] += 1.0;
          ++members;
        }
      };
      accumulate(true);
      if (members == 0) accumulate(false);
      for (double& x : centroid) x /= static_cast<double>(members);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        similarity[i] = cosine(matrix.row_values(rows[i]), centroid);
      }
    }

    std::vector<double> raw(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) raw[i] = model.predict(profile, rows[i]);
    const auto [lo, hi] = std::minmax_element(raw.begin(), raw.end());
    const double min = *lo, span = *hi - *lo;

    auto& list = routine.by_category[index_of(category)];
    list.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      ScoredProduct s;
      s.product_id = products[rows[i]].id;
      s.cosine_part = similarity[i];
      s.mf_part = span > 0.0 ? (raw[i] - min) / span : 0.5;
      s.final_score = alpha * s.cosine_part + (1.0 - alpha) * s.mf_part;
      list.push_back(s);
    }
    top_k(list);
  }
  return routine;
}

std::vector<ScoredProduct> alternatives(const Catalog& catalog, const IngredientMatrix& matrix,
                                        const Routine& routine, Category category,
                                        std::string_view brand) {
  if (!catalog.has_brand(brand)) {
    throw Error(ErrorCode::UnknownBrand, "no catalog product has brand '" + std::string(brand) + "'");
  }
  require_aligned(catalog, matrix);
  if (routine.fingerprint != catalog.fingerprint()) {
    throw Error(ErrorCode::StaleModel, "routine was produced from a different catalog");
  }

  std::optional<std::size_t> anchor_row;
  if (routine.anchor) anchor_row = catalog.position(*routine.anchor);
  std::optional<std::size_t> reference;
  const auto& current = routine.in(category);
  if (!current.empty()) {
    reference = catalog.position(current.front().product_id);
  } else {
    reference = anchor_row;
  }
  if (!reference) return {};

  std::vector<ScoredProduct> out;
  const auto& products = catalog.products();
  for (std::size_t r = 0; r < products.size(); ++r) {
    const Product& p = products[r];
    if (p.category != category || !iequals(p.brand, brand) ||
        !p.suits(routine.assessment.skin_type) || r == *reference || r == anchor_row) {
      continue;
    }
    const double sim = row_cosine(matrix, *reference, r);
    out.push_back({p.id, sim, sim, 0.0});
  }
  top_k(out);
  return out;
}

}  // namespace skincare
