#include "oracles.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>

namespace oracle {

using skincare::Concern;
using skincare::SkinType;

TokenSet tokens_of(const Product& p) { return TokenSet(p.ingredients.begin(), p.ingredients.end()); }

double set_cosine(const TokenSet& a, const TokenSet& b) {
  if (a.empty() || b.empty()) return 0.0;
  std::size_t common = 0;
  for (const auto& t : a) common += b.count(t);
  return static_cast<double>(common) /
         (std::sqrt(static_cast<double>(a.size())) * std::sqrt(static_cast<double>(b.size())));
}

double dense_cosine(const std::vector<double>& a, const std::vector<double>& b) {
  long double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += static_cast<long double>(a[i]) * b[i];
    na += static_cast<long double>(a[i]) * a[i];
    nb += static_cast<long double>(b[i]) * b[i];
  }
  if (na == 0 || nb == 0) return 0.0;
  return static_cast<double>(dot / std::sqrt(na * nb));
}

std::vector<ScanHit> exhaustive_scan(const Catalog& catalog, ProductId query,
                                     const std::function<bool(const Product&)>& keep) {
  const TokenSet q = tokens_of(catalog.at(query));
  std::vector<ScanHit> hits;
  for (const Product& p : catalog.products()) {
    if (p.id == query || (keep && !keep(p))) continue;
    hits.push_back({p.id, set_cosine(q, tokens_of(p))});
  }
  std::sort(hits.begin(), hits.end(), [](const ScanHit& a, const ScanHit& b) {
    return a.similarity != b.similarity ? a.similarity > b.similarity : a.id < b.id;
  });
  return hits;
}

std::vector<double> central_differences(const std::function<double(std::span<const double>)>& f,
                                        std::vector<double> x, double h) {
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double saved = x[i];
    x[i] = saved + h;
    const double up = f(x);
    x[i] = saved - h;
    const double down = f(x);
    x[i] = saved;
    g[i] = (up - down) / (2 * h);
  }
  return g;
}

DenseMatrix naive_sq_distances(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  DenseMatrix d(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0;
      for (std::size_t c = 0; c < rows[i].size(); ++c) {
        const double diff = rows[i][c] - rows[j][c];
        s += diff * diff;
      }
      d(i, j) = s;
    }
  return d;
}

double entropy_bits(std::span<const double> row) {
  double h = 0;
  for (double p : row)
    if (p > 0) h -= p * std::log2(p);
  return h;
}

double naive_kl(const DenseMatrix& p, const DenseMatrix& y) {
  const std::size_t n = y.rows();
  DenseMatrix q(n, n);
  double z = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double dx = y(i, 0) - y(j, 0), dy = y(i, 1) - y(j, 1);
      q(i, j) = 1.0 / (1.0 + dx * dx + dy * dy);
      z += q(i, j);
    }
  double kl = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && p(i, j) > 0) kl += p(i, j) * std::log(p(i, j) / (q(i, j) / z));
  return kl;
}

double naive_mf_objective(const DenseMatrix& r, const DenseMatrix& u, const DenseMatrix& v,
                          double reg) {
  double loss = 0;
  for (std::size_t a = 0; a < r.rows(); ++a)
    for (std::size_t b = 0; b < r.cols(); ++b) {
      double pred = 0;
      for (std::size_t k = 0; k < u.cols(); ++k) pred += u(a, k) * v(b, k);
      loss += (r(a, b) - pred) * (r(a, b) - pred);
    }
  double norm = 0;
  for (double x : u.values()) norm += x * x;
  for (double x : v.values()) norm += x * x;
  return loss + reg * norm;
}

DenseMatrix naive_interactions(const Catalog& catalog) {
  DenseMatrix r(20, catalog.size());
  for (std::size_t p = 0; p < catalog.size(); ++p) {
    const Product& prod = catalog.products()[p];
    for (int t = 0; t < 5; ++t)
      for (int c = 0; c < 4; ++c) {
        const bool issue_ok = !prod.issue || static_cast<int>(*prod.issue) == c;
        r(t * 4 + c, p) = prod.suitability[t] && issue_ok ? 1.0 : 0.0;
      }
  }
  return r;
}

namespace {

struct Candidate {
  std::size_t row;
  const Product* p;
};

std::vector<Candidate> candidates(const Catalog& catalog, const skincare::SkinAssessment& a,
                                  std::optional<ProductId> anchor, Category category) {
  std::vector<Candidate> out;
  for (std::size_t r = 0; r < catalog.size(); ++r) {
    const Product& p = catalog.products()[r];
    if (p.category != category) continue;
    if (!p.suitability[static_cast<std::size_t>(a.skin_type)]) continue;
    if (anchor && p.id == *anchor) continue;
    out.push_back({r, &p});
  }
  return out;
}

std::vector<double> similarities(const Catalog& catalog, const std::vector<Candidate>& cands,
                                 const skincare::SkinAssessment& a,
                                 std::optional<ProductId> anchor) {
  std::vector<double> out;
  if (anchor) {
    const TokenSet ref = tokens_of(catalog.at(*anchor));
    for (const auto& c : cands) out.push_back(set_cosine(ref, tokens_of(*c.p)));
    return out;
  }
  // Centroid over the candidates targeting the concern, else over all.
  std::vector<const Product*> members;
  for (const auto& c : cands)
    if (!c.p->issue || *c.p->issue == a.concern) members.push_back(c.p);
  if (members.empty())
    for (const auto& c : cands) members.push_back(c.p);
  std::map<std::string, double> centroid;
  for (const Product* p : members)
    for (const auto& t : p->ingredients) centroid[t] += 1.0;
  for (auto& [t, x] : centroid) x /= static_cast<double>(members.size());
  for (const auto& c : cands) {
    const TokenSet mine = tokens_of(*c.p);
    double dot = 0, nb = 0;
    for (const auto& [t, x] : centroid) {
      if (mine.count(t)) dot += x;
      nb += x * x;
    }
    const double na = static_cast<double>(mine.size());
    out.push_back(na == 0 || nb == 0 ? 0.0 : dot / (std::sqrt(na) * std::sqrt(nb)));
  }
  return out;
}

std::vector<double> normalised_mf(const skincare::mf::FactorModel& model,
                                  const std::vector<Candidate>& cands,
                                  const skincare::SkinAssessment& a) {
  const std::size_t profile =
      static_cast<std::size_t>(a.skin_type) * 4 + static_cast<std::size_t>(a.concern);
  std::vector<double> raw;
  for (const auto& c : cands) {
    double s = 0;
    for (std::size_t k = 0; k < model.u.cols(); ++k) s += model.u(profile, k) * model.v(c.row, k);
    raw.push_back(s);
  }
  double lo = raw.empty() ? 0 : raw[0], hi = lo;
  for (double x : raw) lo = std::min(lo, x), hi = std::max(hi, x);
  for (double& x : raw) x = hi > lo ? (x - lo) / (hi - lo) : 0.5;
  return raw;
}

void canonical_top5(std::vector<ScoredProduct>& list) {
  std::sort(list.begin(), list.end(), [](const ScoredProduct& a, const ScoredProduct& b) {
    return a.final_score != b.final_score ? a.final_score > b.final_score
                                          : a.product_id < b.product_id;
  });
  if (list.size() > 5) list.resize(5);
}

}  // namespace

std::vector<ScoredProduct> brute_force_category(const Catalog& catalog,
                                                const skincare::mf::FactorModel& model,
                                                const skincare::SkinAssessment& assessment,
                                                std::optional<ProductId> anchor, double alpha,
                                                Category category) {
  const auto cands = candidates(catalog, assessment, anchor, category);
  const auto sims = similarities(catalog, cands, assessment, anchor);
  const auto mfs = normalised_mf(model, cands, assessment);
  std::vector<ScoredProduct> out;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    out.push_back({cands[i].p->id, alpha * sims[i] + (1 - alpha) * mfs[i], sims[i], mfs[i]});
  }
  canonical_top5(out);
  return out;
}

std::vector<ScoredProduct> pure_cosine(const Catalog& catalog,
                                       const skincare::SkinAssessment& assessment,
                                       std::optional<ProductId> anchor, Category category) {
  const auto cands = candidates(catalog, assessment, anchor, category);
  const auto sims = similarities(catalog, cands, assessment, anchor);
  std::vector<ScoredProduct> out;
  for (std::size_t i = 0; i < cands.size(); ++i) out.push_back({cands[i].p->id, sims[i], sims[i], 0});
  canonical_top5(out);
  return out;
}

std::vector<ScoredProduct> pure_mf(const Catalog& catalog, const skincare::mf::FactorModel& model,
                                   const skincare::SkinAssessment& assessment,
                                   std::optional<ProductId> anchor, Category category) {
  const auto cands = candidates(catalog, assessment, anchor, category);
  const auto mfs = normalised_mf(model, cands, assessment);
  std::vector<ScoredProduct> out;
  for (std::size_t i = 0; i < cands.size(); ++i) out.push_back({cands[i].p->id, mfs[i], 0, mfs[i]});
  canonical_top5(out);
  return out;
}

std::vector<ScoredProduct> brute_force_alternatives(const Catalog& catalog,
                                                    const skincare::Routine& routine,
                                                    Category category, const std::string& brand) {
  auto lower = [](std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
  };
  std::optional<ProductId> reference;
  const auto& current = routine.by_category[static_cast<std::size_t>(category)];
  if (!current.empty()) reference = current.front().product_id;
  else reference = routine.anchor;
  if (!reference) return {};
  const TokenSet ref = tokens_of(catalog.at(*reference));
  std::vector<ScoredProduct> out;
  for (const Product& p : catalog.products()) {
    if (p.category != category || lower(p.brand) != lower(brand)) continue;
    if (!p.suitability[static_cast<std::size_t>(routine.assessment.skin_type)]) continue;
    if (p.id == *reference || (routine.anchor && p.id == *routine.anchor)) continue;
    const double s = set_cosine(ref, tokens_of(p));
    out.push_back({p.id, s, s, 0});
  }
  canonical_top5(out);
  return out;
}

}  // namespace oracle
