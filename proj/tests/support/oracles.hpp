#pragma once

// Reference implementations written from the definitions, sharing no code
// with the library beyond its data types. Tests compare against these.

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "skincare/assessment.hpp"
#include "skincare/catalog.hpp"
#include "skincare/matrix.hpp"
#include "skincare/mf.hpp"
#include "skincare/routine.hpp"
#include "skincare/vectors.hpp"

namespace oracle {

using skincare::Catalog;
using skincare::Category;
using skincare::DenseMatrix;
using skincare::Product;
using skincare::ProductId;
using skincare::ScoredProduct;

using TokenSet = std::set<std::string>;

TokenSet tokens_of(const Product& p);
/// |A n B| / (sqrt|A| sqrt|B|), 0 when either set is empty.
double set_cosine(const TokenSet& a, const TokenSet& b);
double dense_cosine(const std::vector<double>& a, const std::vector<double>& b);

/// All products other than `query`, similarity descending then id ascending.
struct ScanHit {
  ProductId id;
  double similarity;
};
std::vector<ScanHit> exhaustive_scan(const Catalog& catalog, ProductId query,
                                     const std::function<bool(const Product&)>& keep = {});

/// Central differences of f at x, step h.
std::vector<double> central_differences(const std::function<double(std::span<const double>)>& f,
                                        std::vector<double> x, double h);

DenseMatrix naive_sq_distances(const std::vector<std::vector<double>>& rows);
/// -sum p log2 p over the off-diagonal entries of a conditional row.
double entropy_bits(std::span<const double> row);
/// sum p log(p / q) with q built explicitly from Student-t kernels.
double naive_kl(const DenseMatrix& p, const DenseMatrix& y);
/// Triple loop over (r - U V^T)^2 plus the L2 penalty.
double naive_mf_objective(const DenseMatrix& r, const DenseMatrix& u, const DenseMatrix& v,
                          double reg);
/// r[(t,c)][p] by counting flags.
DenseMatrix naive_interactions(const Catalog& catalog);

/// Scores every candidate of one category for recommend() from token sets
/// and raw factor matrices, sorts canonically and truncates to five.
std::vector<ScoredProduct> brute_force_category(const Catalog& catalog,
                                                const skincare::mf::FactorModel& model,
                                                const skincare::SkinAssessment& assessment,
                                                std::optional<ProductId> anchor, double alpha,
                                                Category category);

/// Ranked per-category list by cosine only: the pure-similarity reduction.
std::vector<ScoredProduct> pure_cosine(const Catalog& catalog,
                                       const skincare::SkinAssessment& assessment,
                                       std::optional<ProductId> anchor, Category category);
/// Ranked per-category list by normalised factor score only.
std::vector<ScoredProduct> pure_mf(const Catalog& catalog, const skincare::mf::FactorModel& model,
                                   const skincare::SkinAssessment& assessment,
                                   std::optional<ProductId> anchor, Category category);

std::vector<ScoredProduct> brute_force_alternatives(const Catalog& catalog,
                                                    const skincare::Routine& routine,
                                                    Category category, const std::string& brand);

}  // namespace oracle
