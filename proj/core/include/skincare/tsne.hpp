#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "skincare/catalog.hpp"
#include "skincare/matrix.hpp"
#include "skincare/vectors.hpp"

namespace skincare::tsne {

/// Squared Euclidean distances between rows (Hamming distance for binary
/// rows). Throws Error(TooFewPoints) for fewer than two rows.
DenseMatrix pairwise_sq_distances(const IngredientMatrix& matrix);
DenseMatrix pairwise_sq_distances(const DenseMatrix& points);

struct Affinities {
  DenseMatrix p;            // joint, symmetric, zero diagonal, sums to 1
  DenseMatrix conditional;  // row i holds p_{j|i}
  double perplexity = 0.0;  // effective target: min(requested, (n-1)/3)
  std::vector<double> sigmas;
  std::vector<double> entropy_bits;  // achieved H(P_i) per row
  std::size_t degenerate_rows = 0;   // rows whose search did not converge
};

// Bandwidth search bounds.
inline constexpr int kSigmaSearchIterations = 64;
inline constexpr double kEntropyTolerance = 1e-5;  // bits
inline constexpr double kSigmaMin = 1e-20;
inline constexpr double kSigmaMax = 1e20;

/// Per-row bisection on sigma (log scale) until |H(P_i) - log2(perplexity)|
/// is within kEntropyTolerance. Rows that cannot reach the target keep the
/// last bandwidth and are counted in degenerate_rows.
/// Throws Error(TooFewPoints) or Error(InvalidPerplexity).
Affinities calibrate_affinities(const DenseMatrix& sq_distances, double perplexity);

struct TsneConfig {
  double perplexity = 30.0;
  std::size_t iterations = 1000;
  double exaggeration = 12.0;
  std::size_t exaggeration_iters = 250;
  double learning_rate = 200.0;
  double momentum = 0.5;
  double final_momentum = 0.8;
  std::size_t momentum_switch_iter = 250;
  std::uint64_t seed = 42;
};

struct Embedding {
  DenseMatrix points;            // n x 2
  std::vector<double> kl_trace;  // KL(P||Q) after each iteration
  std::uint64_t seed = 0;
  std::vector<ProductId> product_ids;

  friend bool operator==(const Embedding&, const Embedding&) = default;
};

/// n x 2 Gaussian noise with standard deviation 1e-4.
DenseMatrix initial_embedding(std::size_t n, std::uint64_t seed);

/// KL(P||Q) for the Student-t output affinities of points.
double kl_divergence(const DenseMatrix& p, const DenseMatrix& points);

/// Writes d KL(scale*P || Q) / d points into gradient (row-major n x 2) and
/// returns KL(P||Q) for the unscaled P.
double kl_gradient(const DenseMatrix& p, const DenseMatrix& points, double scale,
                   std::span<double> gradient);

/// Exact t-SNE with early exaggeration and a momentum switch; each
/// iteration applies the shared momentum optimizer and re-centres the
/// points. Deterministic for a fixed seed. Throws Error(TooFewPoints) when
/// n < 4.
Embedding fit(const IngredientMatrix& matrix, const TsneConfig& config);
/// Same, starting from an explicit n x 2 initial layout.
Embedding fit(const IngredientMatrix& matrix, const TsneConfig& config, DenseMatrix init);
Embedding fit_affinities(const Affinities& affinities, const TsneConfig& config,
                         DenseMatrix init);

/// `product_id,x,y` rows with round-trip precision.
void write_embedding_csv(std::ostream& out, const Embedding& embedding);
/// Reads the points back; kl_trace is not part of the CSV.
Embedding read_embedding_csv(std::istream& in);

}  // namespace skincare::tsne
