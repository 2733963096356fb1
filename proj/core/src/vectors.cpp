#include "skincare/vectors.hpp"

#include <algorithm>
#include <cmath>

#include "skincare/csv.hpp"
#include "skincare/error.hpp"

namespace skincare {

Vocabulary::Vocabulary(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
  std::sort(tokens_.begin(), tokens_.end());
  tokens_.erase(std::unique(tokens_.begin(), tokens_.end()), tokens_.end());
  index_.reserve(tokens_.size());
  for (std::size_t i = 0; i < tokens_.size(); ++i) index_.emplace(tokens_[i], i);
}

std::optional<std::size_t> Vocabulary::index_of(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Vocabulary build_vocabulary(std::span<const Product> products) {
  if (products.empty()) throw Error(ErrorCode::EmptyInput, "no products to build a vocabulary from");
  std::vector<std::string> all;
  for (const auto& p : products) all.insert(all.end(), p.ingredients.begin(), p.ingredients.end());
  if (all.empty()) throw Error(ErrorCode::EmptyVocabulary, "no product lists any ingredient");
  return Vocabulary(std::move(all));
}

std::vector<double> IngredientMatrix::row_values(std::size_t r) const {
  auto bits = row(r);
  return std::vector<double>(bits.begin(), bits.end());
}

std::optional<std::size_t> IngredientMatrix::row_of(ProductId id) const {
  auto it = row_by_id_.find(id);
  if (it == row_by_id_.end()) return std::nullopt;
  return it->second;
}

IngredientMatrix IngredientMatrix::select_rows(std::span<const std::size_t> rows) const {
  IngredientMatrix out;
  out.rows_ = rows.size();
  out.cols_ = cols_;
  out.fingerprint_ = fingerprint_;
  out.data_.reserve(rows.size() * cols_);
  for (std::size_t r : rows) {
    if (r >= rows_) throw Error(ErrorCode::RowOutOfRange, "row " + std::to_string(r) + " out of range");
    auto bits = row(r);
    out.data_.insert(out.data_.end(), bits.begin(), bits.end());
    auto nz = nonzeros(r);
    out.nz_.insert(out.nz_.end(), nz.begin(), nz.end());
    out.nz_offsets_.push_back(out.nz_.size());
    out.row_by_id_.emplace(product_ids_[r], out.product_ids_.size());
    out.product_ids_.push_back(product_ids_[r]);
  }
  return out;
}

IngredientMatrix vectorize(std::span<const Product> products, const Vocabulary& vocab,
                           std::uint64_t fingerprint) {
  IngredientMatrix m;
  m.rows_ = products.size();
  m.cols_ = vocab.size();
  m.fingerprint_ = fingerprint;
  m.data_.assign(m.rows_ * m.cols_, 0);
  m.product_ids_.reserve(m.rows_);
  for (std::size_t r = 0; r < products.size(); ++r) {
    const Product& p = products[r];
    std::vector<std::uint32_t> cols;
    cols.reserve(p.ingredients.size());
    for (const auto& token : p.ingredients) {
      auto c = vocab.index_of(token);
      if (!c) {
        throw Error(ErrorCode::UnknownToken, "product " + std::to_string(p.id) +
                                                 " uses token '" + token + "' not in the vocabulary");
      }
      if (m.data_[r * m.cols_ + *c] == 0) cols.push_back(static_cast<std::uint32_t>(*c));
      m.data_[r * m.cols_ + *c] = 1;
    }
    std::sort(cols.begin(), cols.end());
    m.nz_.insert(m.nz_.end(), cols.begin(), cols.end());
    m.nz_offsets_.push_back(m.nz_.size());
    m.row_by_id_.emplace(p.id, r);
    m.product_ids_.push_back(p.id);
  }
  return m;
}

IngredientMatrix vectorize(const Catalog& catalog, Vocabulary* vocab_out) {
  Vocabulary vocab = build_vocabulary(catalog.products());
  IngredientMatrix m = vectorize(catalog.products(), vocab, catalog.fingerprint());
  if (vocab_out) *vocab_out = std::move(vocab);
  return m;
}

double cosine(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::LengthMismatch, "cosine of vectors with lengths " +
                                               std::to_string(a.size()) + " and " +
                                               std::to_string(b.size()));
  }
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

double row_cosine(const IngredientMatrix& m, std::size_t a, std::size_t b) {
  auto x = m.nonzeros(a);
  auto y = m.nonzeros(b);
  if (x.empty() || y.empty()) return 0.0;
  std::size_t i = 0, j = 0, common = 0;
  while (i < x.size() && j < y.size()) {
    if (x[i] == y[j]) {
      ++common, ++i, ++j;
    } else if (x[i] < y[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  // Integer-valued sums are exact, so this matches cosine() bit for bit.
  return static_cast<double>(common) /
         (std::sqrt(static_cast<double>(x.size())) * std::sqrt(static_cast<double>(y.size())));
}

std::vector<Neighbor> nearest(const IngredientMatrix& m, std::size_t query_row, std::size_t k,
                              const RowMask& mask) {
  if (query_row >= m.rows()) {
    throw Error(ErrorCode::RowOutOfRange, "query row " + std::to_string(query_row) +
                                              " out of range for " + std::to_string(m.rows()) +
                                              " rows");
  }
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
  std::vector<Neighbor> all;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r == query_row || (mask && !mask(r))) continue;
    all.push_back({m.product_id(r), r, row_cosine(m, query_row, r)});
  }
  auto better = [](const Neighbor& a, const Neighbor& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    return a.product_id < b.product_id;
  };
  const std::size_t take = std::min(k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(take), all.end(), better);
  all.resize(take);
  return all;
}

void write_matrix_csv(std::ostream& out, const IngredientMatrix& m, const Vocabulary& vocab) {
  out << "product_id";
  for (const auto& t : vocab.tokens()) out << ',' << csv::escape(t);
  out << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out << m.product_id(r);
    for (auto bit : m.row(r)) out << ',' << static_cast<int>(bit);
    out << '\n';
  }
}

}  // namespace skincare
