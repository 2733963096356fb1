#include "skincare/mf.hpp"

#include <charconv>
#include <cmath>
#include <random>
#include <string>

#include "skincare/error.hpp"
#include "skincare/fingerprint.hpp"
#include "skincare/optimizer.hpp"

namespace skincare::mf {

InteractionMatrix build_interactions(const Catalog& catalog) {
  InteractionMatrix out;
  out.r = DenseMatrix(ProfileIndex::kSize, catalog.size());
  out.fingerprint = catalog.fingerprint();
  const auto& products = catalog.products();
  for (std::size_t p = 0; p < products.size(); ++p) {
    out.product_ids.push_back(products[p].id);
    for (std::size_t row = 0; row < ProfileIndex::kSize; ++row) {
      auto [type, concern] = ProfileIndex::profile(row);
      out.r(row, p) = (products[p].suits(type) && products[p].targets(concern)) ? 1.0 : 0.0;
    }
  }
  return out;
}

double FactorModel::predict(std::size_t profile_row, std::size_t product_row) const {
  if (profile_row >= u.rows() || product_row >= v.rows()) {
    throw Error(ErrorCode::IndexOutOfRange, "factor index out of range");
  }
  double s = 0.0;
  auto a = u.row(profile_row);
  auto b = v.row(product_row);
  for (std::size_t f = 0; f < k; ++f) s += a[f] * b[f];
  return s;
}

double objective(const DenseMatrix& r, std::span<const double> theta, std::size_t k, double reg,
                 std::span<double> gradient) {
  const std::size_t m = r.rows(), n = r.cols();
  if (theta.size() != (m + n) * k) {
    throw Error(ErrorCode::LengthMismatch, "parameter vector does not match (rows + cols) * k");
  }
  const bool want_grad = !gradient.empty();
  if (want_grad && gradient.size() != theta.size()) {
    throw Error(ErrorCode::LengthMismatch, "gradient buffer does not match parameters");
  }
  const double* u = theta.data();
  const double* v = theta.data() + m * k;
  double loss = 0.0;
  if (want_grad) std::fill(gradient.begin(), gradient.end(), 0.0);
  double* gu = want_grad ? gradient.data() : nullptr;
  double* gv = want_grad ? gradient.data() + m * k : nullptr;

  for (std::size_t a = 0; a < m; ++a) {
    const double* ua = u + a * k;
    for (std::size_t b = 0; b < n; ++b) {
      const double* vb = v + b * k;
      double pred = 0.0;
      for (std::size_t f = 0; f < k; ++f) pred += ua[f] * vb[f];
      const double err = r(a, b) - pred;
      loss += err * err;
      if (want_grad) {
        for (std::size_t f = 0; f < k; ++f) {
          gu[a * k + f] -= 2.0 * err * vb[f];
          gv[b * k + f] -= 2.0 * err * ua[f];
        }
      }
    }
  }
  double sq = 0.0;
  for (double x : theta) sq += x * x;
  loss += reg * sq;
  if (want_grad) {
    for (std::size_t i = 0; i < theta.size(); ++i) gradient[i] += 2.0 * reg * theta[i];
  }
  return loss;
}

FactorModel train(const InteractionMatrix& interactions, const MfConfig& config) {
  const DenseMatrix& r = interactions.r;
  if (r.empty()) throw Error(ErrorCode::EmptyInput, "interaction matrix is empty");
  if (config.k == 0) throw Error(ErrorCode::InvalidArgument, "latent dimension k must be at least 1");
  if (config.reg < 0) throw Error(ErrorCode::InvalidArgument, "regularisation must be non-negative");
  const std::size_t m = r.rows(), n = r.cols(), k = config.k;

  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> init(0.0, 0.1);
  std::vector<double> theta((m + n) * k);
  for (double& x : theta) x = init(rng);

  optim::MinimizeConfig mc;
  mc.momentum = config.momentum;
  mc.learning_rate = config.learning_rate;
  mc.max_steps = config.epochs;
  mc.grad_tolerance = config.grad_tolerance;

  auto eval = [&](std::span<const double> th) {
    optim::LossAndGradient lg;
    lg.gradient.resize(th.size());
    lg.loss = objective(r, th, k, config.reg, lg.gradient);
    return lg;
  };
  optim::MinimizeResult result = optim::minimize(eval, std::move(theta), mc);

  FactorModel model;
  model.k = k;
  model.reg = config.reg;
  model.seed = config.seed;
  model.fingerprint = interactions.fingerprint;
  model.final_loss = objective(r, result.theta, k, config.reg);
  if (!std::isfinite(model.final_loss)) {
    throw NonFiniteLossError(result.losses.size(), "matrix factorisation diverged");
  }
  model.loss_trace = std::move(result.losses);
  model.u = DenseMatrix(m, k);
  model.v = DenseMatrix(n, k);
  std::copy(result.theta.begin(), result.theta.begin() + static_cast<std::ptrdiff_t>(m * k),
            model.u.values().begin());
  std::copy(result.theta.begin() + static_cast<std::ptrdiff_t>(m * k), result.theta.end(),
            model.v.values().begin());
  return model;
}

double score(const FactorModel& model, SkinType skin_type, Concern concern,
             std::size_t product_row) {
  return model.predict(ProfileIndex::row(skin_type, concern), product_row);
}

namespace {

std::string fmt(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void write_matrix(std::ostream& out, const DenseMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? " " : "") << fmt(m(i, j));
    out << '\n';
  }
}

double read_double(std::istream& in) {
  std::string tok;
  if (!(in >> tok)) throw Error(ErrorCode::Format, "truncated MFv1 model");
  double v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw Error(ErrorCode::Format, "bad number '" + tok + "' in MFv1 model");
  }
  return v;
}

void expect(std::istream& in, const std::string& word) {
  std::string tok;
  if (!(in >> tok) || tok != word) {
    throw Error(ErrorCode::Format, "MFv1 model: expected '" + word + "', got '" + tok + "'");
  }
}

std::uint64_t read_uint(std::istream& in) {
  std::string tok;
  if (!(in >> tok)) throw Error(ErrorCode::Format, "truncated MFv1 model");
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw Error(ErrorCode::Format, "bad integer '" + tok + "' in MFv1 model");
  }
  return v;
}

}  // namespace

void save_model(std::ostream& out, const FactorModel& model) {
  out << "MFv1\n"
      << "fingerprint " << to_hex(model.fingerprint) << '\n'
      << "k " << model.k << '\n'
      << "seed " << model.seed << '\n'
      << "reg " << fmt(model.reg) << '\n'
      << "final_loss " << fmt(model.final_loss) << '\n'
      << "profiles " << model.u.rows() << '\n'
      << "products " << model.v.rows() << '\n'
      << "U\n";
  write_matrix(out, model.u);
  out << "V\n";
  write_matrix(out, model.v);
}

FactorModel load_model(std::istream& in) {
  std::string magic;
  if (!(in >> magic) || magic != "MFv1") {
    throw Error(ErrorCode::Format, "not an MFv1 model (header '" + magic + "')");
  }
  FactorModel m;
  expect(in, "fingerprint");
  std::string fp;
  in >> fp;
  m.fingerprint = from_hex(fp);
  expect(in, "k");
  m.k = read_uint(in);
  expect(in, "seed");
  m.seed = read_uint(in);
  expect(in, "reg");
  m.reg = read_double(in);
  expect(in, "final_loss");
  m.final_loss = read_double(in);
  expect(in, "profiles");
  const std::size_t rows = read_uint(in);
  expect(in, "products");
  const std::size_t cols = read_uint(in);
  if (m.k == 0) throw Error(ErrorCode::Format, "MFv1 model with k = 0");
  expect(in, "U");
  m.u = DenseMatrix(rows, m.k);
  for (double& x : m.u.values()) x = read_double(in);
  expect(in, "V");
  m.v = DenseMatrix(cols, m.k);
  for (double& x : m.v.values()) x = read_double(in);
  return m;
}

}  // namespace skincare::mf
