#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "skincare/catalog.hpp"

namespace skincare {

/// Sorted ingredient vocabulary; token i owns column i.
class Vocabulary {
 public:
  Vocabulary() = default;
  /// Sorts and deduplicates.
  explicit Vocabulary(std::vector<std::string> tokens);

  std::size_t size() const noexcept { return tokens_.size(); }
  const std::vector<std::string>& tokens() const noexcept { return tokens_; }
  std::optional<std::size_t> index_of(std::string_view token) const;

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Sorted union of every product's ingredient tokens.
/// Throws Error(EmptyInput) for no products, Error(EmptyVocabulary) when no
/// product has an ingredient.
Vocabulary build_vocabulary(std::span<const Product> products);

/// Dense binary products x vocabulary matrix. Row i belongs to product_ids[i].
/// Immutable after construction.
class IngredientMatrix {
 public:
  IngredientMatrix() = default;

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  std::uint8_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const std::uint8_t> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  /// Column indices of the ones in row r, ascending.
  std::span<const std::uint32_t> nonzeros(std::size_t r) const {
    return {nz_.data() + nz_offsets_[r], nz_offsets_[r + 1] - nz_offsets_[r]};
  }
  std::size_t row_count(std::size_t r) const { return nz_offsets_[r + 1] - nz_offsets_[r]; }
  std::vector<double> row_values(std::size_t r) const;

  const std::vector<ProductId>& product_ids() const noexcept { return product_ids_; }
  ProductId product_id(std::size_t r) const { return product_ids_.at(r); }
  std::optional<std::size_t> row_of(ProductId id) const;

  /// Fingerprint of the catalog the rows were built from (0 when unknown).
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }

  /// Sub-matrix over the given rows, in the given order.
  IngredientMatrix select_rows(std::span<const std::size_t> rows) const;

 private:
  friend IngredientMatrix vectorize(std::span<const Product>, const Vocabulary&,
                                    std::uint64_t);

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> data_;
  std::vector<std::uint32_t> nz_;
  std::vector<std::size_t> nz_offsets_{0};
  std::vector<ProductId> product_ids_;
  std::unordered_map<ProductId, std::size_t> row_by_id_;
  std::uint64_t fingerprint_ = 0;
};

/// Throws Error(UnknownToken) when a product token is missing from vocab.
IngredientMatrix vectorize(std::span<const Product> products, const Vocabulary& vocab,
                           std::uint64_t fingerprint = 0);

/// Builds vocabulary and matrix for a whole catalog.
IngredientMatrix vectorize(const Catalog& catalog, Vocabulary* vocab_out = nullptr);

/// dot(a,b) / (|a| |b|); exactly 0 when either vector has zero norm.
/// Throws Error(LengthMismatch).
double cosine(std::span<const double> a, std::span<const double> b);

/// Cosine between two matrix rows; bit-identical to cosine() on row_values().
double row_cosine(const IngredientMatrix& m, std::size_t a, std::size_t b);

struct Neighbor {
  ProductId product_id = 0;
  std::size_t row = 0;
  double similarity = 0.0;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

using RowMask = std::function<bool(std::size_t row)>;

/// The k rows most cosine-similar to query_row, excluding query_row itself
/// and rows rejected by mask. Descending similarity, ties by ascending
/// product id. Throws Error(RowOutOfRange) or Error(InvalidArgument) for k=0.
std::vector<Neighbor> nearest(const IngredientMatrix& m, std::size_t query_row,
                              std::size_t k, const RowMask& mask = {});

/// `product_id,<token>,...` header, then one 0/1 row per product.
void write_matrix_csv(std::ostream& out, const IngredientMatrix& m, const Vocabulary& vocab);

}  // namespace skincare
