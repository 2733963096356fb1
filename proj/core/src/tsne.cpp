#include "skincare/tsne.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "skincare/csv.hpp"
#include "skincare/error.hpp"
#include "skincare/optimizer.hpp"

namespace skincare::tsne {
namespace {

void require_points(std::size_t n, std::size_t at_least) {
  if (n < at_least) {
    throw Error(ErrorCode::TooFewPoints, "need at least " + std::to_string(at_least) +
                                             " points, got " + std::to_string(n));
  }
}

struct RowEntropy {
  double bits;
  double sum;
};

// Entropy in bits of p_j ∝ exp(-(d_j - d_min) * beta) over j != i, computed
// without forming log p: H = ln S + beta * E_p[d - d_min].
RowEntropy row_entropy(std::span<const double> d, std::size_t self, double d_min,
                       double beta) {
  double sum = 0.0, weighted = 0.0;
  for (std::size_t j = 0; j < d.size(); ++j) {
    if (j == self) continue;
    const double shifted = d[j] - d_min;
    const double w = std::exp(-shifted * beta);
    sum += w;
    weighted += w * shifted;
  }
  const double nats = std::log(sum) + beta * weighted / sum;
  return {nats / std::log(2.0), sum};
}

void center(std::span<double> xy) {
  const std::size_t n = xy.size() / 2;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xy[2 * i];
    my += xy[2 * i + 1];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    xy[2 * i] -= mx;
    xy[2 * i + 1] -= my;
  }
}

double p_log_p(const DenseMatrix& p) {
  double s = 0.0;
  for (double v : p.values()) {
    if (v > 0.0) s += v * std::log(v);
  }
  return s;
}

// KL from precomputed sum p log p, the Student-t normaliser Z and
// sum_ij p_ij log(1 + |y_i - y_j|^2).
double kl_from_parts(double plogp, double z, double p_log_kernel) {
  // log q_ij = -log(1+d2) - log Z; sum p = 1.
  return plogp + p_log_kernel + std::log(z);
}

}  // namespace

DenseMatrix pairwise_sq_distances(const IngredientMatrix& matrix) {
  const std::size_t n = matrix.rows();
  require_points(n, 2);
  DenseMatrix d(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    auto a = matrix.nonzeros(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      auto b = matrix.nonzeros(j);
      std::size_t x = 0, y = 0, common = 0;
      while (x < a.size() && y < b.size()) {
        if (a[x] == b[y]) {
          ++common, ++x, ++y;
        } else if (a[x] < b[y]) {
          ++x;
        } else {
          ++y;
        }
      }
      const double dist = static_cast<double>(a.size() + b.size() - 2 * common);
      d(i, j) = dist;
      d(j, i) = dist;
    }
  }
  return d;
}

DenseMatrix pairwise_sq_distances(const DenseMatrix& points) {
  const std::size_t n = points.rows();
  require_points(n, 2);
  DenseMatrix d(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double s = 0.0;
      for (std::size_t c = 0; c < points.cols(); ++c) {
        const double diff = points(i, c) - points(j, c);
        s += diff * diff;
      }
      d(i, j) = s;
      d(j, i) = s;
    }
  }
  return d;
}

Affinities calibrate_affinities(const DenseMatrix& sq_distances, double perplexity) {
  const std::size_t n = sq_distances.rows();
  require_points(n, 2);
  if (sq_distances.cols() != n) {
    throw Error(ErrorCode::LengthMismatch, "distance matrix must be square");
  }
  Affinities out;
  out.perplexity = std::min(perplexity, static_cast<double>(n - 1) / 3.0);
  if (!(out.perplexity >= 1.0)) {
    throw Error(ErrorCode::InvalidPerplexity,
                "effective perplexity " + std::to_string(out.perplexity) +
                    " is below 1 (requested " + std::to_string(perplexity) + ", n = " +
                    std::to_string(n) + ")");
  }
  const double target = std::log2(out.perplexity);
  out.conditional = DenseMatrix(n, n);
  out.sigmas.assign(n, 0.0);
  out.entropy_bits.assign(n, 0.0);

  for (std::size_t i = 0; i < n; ++i) {
    auto d = sq_distances.row(i);
    double d_min = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) d_min = std::min(d_min, d[j]);
    }
    double lo = std::log(kSigmaMin), hi = std::log(kSigmaMax);
    double log_sigma = 0.0;
    RowEntropy h{};
    bool converged = false;
    for (int it = 0; it < kSigmaSearchIterations; ++it) {
      log_sigma = 0.5 * (lo + hi);
      const double sigma = std::exp(log_sigma);
      h = row_entropy(d, i, d_min, 1.0 / (2.0 * sigma * sigma));
      if (std::abs(h.bits - target) < kEntropyTolerance) {
        converged = true;
        break;
      }
      // Entropy grows with the bandwidth.
      if (h.bits > target) {
        hi = log_sigma;
      } else {
        lo = log_sigma;
      }
    }
    if (!converged) ++out.degenerate_rows;
    const double sigma = std::exp(log_sigma);
    const double beta = 1.0 / (2.0 * sigma * sigma);
    out.sigmas[i] = sigma;
    out.entropy_bits[i] = h.bits;
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double w = std::exp(-(d[j] - d_min) * beta);
      out.conditional(i, j) = w;
      sum += w;
    }
    for (std::size_t j = 0; j < n; ++j) out.conditional(i, j) /= sum;
  }

  out.p = DenseMatrix(n, n);
  const double denom = 2.0 * static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = (out.conditional(i, j) + out.conditional(j, i)) / denom;
      out.p(i, j) = v;
      out.p(j, i) = v;
    }
  }
  return out;
}

DenseMatrix initial_embedding(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1e-4);
  DenseMatrix y(n, 2);
  for (double& v : y.values()) v = noise(rng);
  return y;
}

double kl_divergence(const DenseMatrix& p, const DenseMatrix& points) {
  const std::size_t n = points.rows();
  double z = 0.0, p_log_kernel = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = points(i, 0) - points(j, 0);
      const double dy = points(i, 1) - points(j, 1);
      const double d2 = dx * dx + dy * dy;
      z += 2.0 / (1.0 + d2);
      if (p(i, j) > 0.0) p_log_kernel += 2.0 * p(i, j) * std::log1p(d2);
    }
  }
  return kl_from_parts(p_log_p(p), z, p_log_kernel);
}

namespace {

double kl_gradient_with(const DenseMatrix& p, double plogp, const DenseMatrix& points,
                        double scale, std::span<double> gradient) {
  const std::size_t n = points.rows();
  if (gradient.size() != 2 * n || p.rows() != n) {
    throw Error(ErrorCode::LengthMismatch, "gradient buffer does not match the point count");
  }
  // Upper-triangle kernel values w_ij = 1 / (1 + |y_i - y_j|^2).
  std::vector<double> w(n * (n - 1) / 2);
  double z = 0.0, p_log_kernel = 0.0;
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++k) {
      const double dx = points(i, 0) - points(j, 0);
      const double dy = points(i, 1) - points(j, 1);
      const double d2 = dx * dx + dy * dy;
      w[k] = 1.0 / (1.0 + d2);
      z += 2.0 * w[k];
      if (p(i, j) > 0.0) p_log_kernel += 2.0 * p(i, j) * std::log1p(d2);
    }
  }
  std::fill(gradient.begin(), gradient.end(), 0.0);
  k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++k) {
      const double coeff = 4.0 * (scale * p(i, j) - w[k] / z) * w[k];
      const double fx = coeff * (points(i, 0) - points(j, 0));
      const double fy = coeff * (points(i, 1) - points(j, 1));
      gradient[2 * i] += fx;
      gradient[2 * i + 1] += fy;
      gradient[2 * j] -= fx;
      gradient[2 * j + 1] -= fy;
    }
  }
  return kl_from_parts(plogp, z, p_log_kernel);
}

}  // namespace

double kl_gradient(const DenseMatrix& p, const DenseMatrix& points, double scale,
                   std::span<double> gradient) {
  return kl_gradient_with(p, p_log_p(p), points, scale, gradient);
}

Embedding fit_affinities(const Affinities& affinities, const TsneConfig& config,
                         DenseMatrix init) {
  const std::size_t n = affinities.p.rows();
  require_points(n, 4);
  if (init.rows() != n || init.cols() != 2) {
    throw Error(ErrorCode::LengthMismatch, "initial layout must be n x 2");
  }
  if (config.iterations == 0) throw Error(ErrorCode::InvalidArgument, "iterations must be at least 1");

  std::vector<double> theta(init.values().begin(), init.values().end());
  center(theta);
  auto state = optim::OptimizerState::start(std::move(theta), config.momentum,
                                            config.learning_rate);
  const double plogp = p_log_p(affinities.p);

  Embedding out;
  out.seed = config.seed;
  out.kl_trace.reserve(config.iterations);
  DenseMatrix y(n, 2);
  std::vector<double> grad(2 * n);
  auto load = [&](const std::vector<double>& flat) {
    std::copy(flat.begin(), flat.end(), y.values().begin());
  };

  for (std::size_t t = 0; t < config.iterations; ++t) {
    load(state.theta);
    const double scale = t < config.exaggeration_iters ? config.exaggeration : 1.0;
    state.momentum = t < config.momentum_switch_iter ? config.momentum : config.final_momentum;
    const double kl = kl_gradient_with(affinities.p, plogp, y, scale, grad);
    if (!std::isfinite(kl)) {
      throw NonFiniteLossError(t, "t-SNE KL divergence became non-finite at iteration " +
                                      std::to_string(t));
    }
    if (t > 0) out.kl_trace.push_back(kl);
    state = optim::step(std::move(state), grad);
    center(state.theta);
  }
  load(state.theta);
  const double final_kl = kl_divergence(affinities.p, y);
  if (!std::isfinite(final_kl)) {
    throw NonFiniteLossError(config.iterations, "t-SNE KL divergence became non-finite");
  }
  out.kl_trace.push_back(final_kl);
  out.points = std::move(y);
  return out;
}

Embedding fit(const IngredientMatrix& matrix, const TsneConfig& config, DenseMatrix init) {
  require_points(matrix.rows(), 4);
  Affinities aff = calibrate_affinities(pairwise_sq_distances(matrix), config.perplexity);
  Embedding e = fit_affinities(aff, config, std::move(init));
  e.product_ids = matrix.product_ids();
  return e;
}

Embedding fit(const IngredientMatrix& matrix, const TsneConfig& config) {
  require_points(matrix.rows(), 4);
  return fit(matrix, config, initial_embedding(matrix.rows(), config.seed));
}

void write_embedding_csv(std::ostream& out, const Embedding& embedding) {
  out << "product_id,x,y\n";
  char buf[64];
  for (std::size_t i = 0; i < embedding.points.rows(); ++i) {
    out << (i < embedding.product_ids.size() ? embedding.product_ids[i] : i + 1);
    for (std::size_t c = 0; c < 2; ++c) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, embedding.points(i, c));
      out << ',' << std::string_view(buf, static_cast<std::size_t>(ptr - buf));
    }
    out << '\n';
  }
}

Embedding read_embedding_csv(std::istream& in) {
  auto rows = csv::read(in);
  if (rows.empty() || rows.front().fields.size() != 3) {
    throw Error(ErrorCode::Format, "embedding CSV must have header product_id,x,y");
  }
  Embedding e;
  e.points = DenseMatrix(rows.size() - 1, 2);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& f = rows[r].fields;
    if (f.size() != 3) throw Error(ErrorCode::Format, "bad embedding row on line " + std::to_string(rows[r].line));
    ProductId id = 0;
    auto r1 = std::from_chars(f[0].data(), f[0].data() + f[0].size(), id);
    double x = 0, y = 0;
    auto r2 = std::from_chars(f[1].data(), f[1].data() + f[1].size(), x);
    auto r3 = std::from_chars(f[2].data(), f[2].data() + f[2].size(), y);
    if (r1.ec != std::errc{} || r2.ec != std::errc{} || r3.ec != std::errc{}) {
      throw Error(ErrorCode::Format, "bad embedding row on line " + std::to_string(rows[r].line));
    }
    e.product_ids.push_back(id);
    e.points(r - 1, 0) = x;
    e.points(r - 1, 1) = y;
  }
  return e;
}

}  // namespace skincare::tsne
