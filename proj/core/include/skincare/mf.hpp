#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "skincare/catalog.hpp"
#include "skincare/matrix.hpp"
#include "skincare/types.hpp"

namespace skincare::mf {

/// The 20 skin profiles (SkinType x Concern), SkinType-major in canonical
/// order: row = 4 * skin_type + concern.
struct ProfileIndex {
  static constexpr std::size_t kSize = kSkinTypeCount * kConcernCount;

  static constexpr std::size_t row(SkinType t, Concern c) {
    return index_of(t) * kConcernCount + index_of(c);
  }
  static constexpr std::pair<SkinType, Concern> profile(std::size_t row) {
    return {kAllSkinTypes[row / kConcernCount], kAllConcerns[row % kConcernCount]};
  }
};

struct InteractionMatrix {
  DenseMatrix r;  // profiles x products, entries in {0, 1}
  std::vector<ProductId> product_ids;
  std::uint64_t fingerprint = 0;
};

/// r[(t, c)][p] = 1 iff product p suits skin type t and targets concern c.
InteractionMatrix build_interactions(const Catalog& catalog);

struct MfConfig {
  std::size_t k = 8;
  double reg = 0.01;
  double momentum = 0.9;
  double learning_rate = 0.01;
  std::size_t epochs = 500;
  std::uint64_t seed = 42;
  double grad_tolerance = 1e-10;
};

struct FactorModel {
  DenseMatrix u;  // profiles x k
  DenseMatrix v;  // products x k
  std::size_t k = 0;
  double reg = 0.0;
  double final_loss = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t fingerprint = 0;   // catalog the interactions came from
  std::vector<double> loss_trace;  // one entry per epoch; not persisted

  /// dot(u[profile], v[product]).
  double predict(std::size_t profile_row, std::size_t product_row) const;

  friend bool operator==(const FactorModel&, const FactorModel&) = default;
};

/// Dense objective sum (r - UV^T)^2 + reg (|U|^2 + |V|^2) with U, V packed
/// row-major into theta as [U; V]. Writes the gradient when it is non-empty.
double objective(const DenseMatrix& r, std::span<const double> theta, std::size_t k, double reg,
                 std::span<double> gradient = {});

/// Full-batch training through optim::minimize from seeded N(0, 0.1^2)
/// factors. Throws NonFiniteLossError on divergence.
FactorModel train(const InteractionMatrix& interactions, const MfConfig& config);

/// Throws Error(IndexOutOfRange).
double score(const FactorModel& model, SkinType skin_type, Concern concern,
             std::size_t product_row);

/// Versioned text format starting with the line `MFv1`.
void save_model(std::ostream& out, const FactorModel& model);
/// Throws Error(Format) on a bad header or truncated data.
FactorModel load_model(std::istream& in);

}  // namespace skincare::mf
