#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "skincare/types.hpp"

namespace skincare {

using ProductId = std::uint64_t;

struct Product {
  ProductId id = 0;
  Category category = Category::Cleanser;
  /// Empty when the source had no Issue column: the product then targets
  /// every concern.
  std::optional<Concern> issue;
  std::string brand;
  std::string name;
  std::vector<std::string> ingredients;  // canonical tokens, first-seen order
  std::array<bool, kSkinTypeCount> suitability{};
  std::optional<double> price;
  std::optional<double> rank;

  bool suits(SkinType t) const { return suitability[index_of(t)]; }
  bool targets(Concern c) const { return !issue || *issue == c; }

  friend bool operator==(const Product&, const Product&) = default;
};

/// Splits an ingredient list on ',' and ';', trims, lowercases and collapses
/// internal whitespace. Empty fragments and repeats are dropped; first
/// occurrence wins and relative order is kept.
std::vector<std::string> parse_ingredients(std::string_view raw);

/// Maps canonical column keys (id, label, issue, brand, name, ingredients,
/// combination, dry, normal, oily, sensitive, price, rank) to header names of
/// the source file. Header matching is case-insensitive.
class ColumnMapping {
 public:
  static ColumnMapping canonical();
  /// Flat `key = Column Name` lines; '#' starts a comment.
  static ColumnMapping parse(std::istream& in);
  static ColumnMapping load(const std::filesystem::path& path);

  const std::string& source_for(const std::string& key) const;
  void set(const std::string& key, std::string column);

 private:
  std::map<std::string, std::string> columns_;
};

struct LoadReport {
  std::size_t rows_read = 0;
  std::size_t skipped_unknown_category = 0;
  std::size_t collapsed_duplicates = 0;
};

/// Immutable after construction; safe to share between threads.
class Catalog {
 public:
  /// Validates every Product invariant. Throws Error(EmptyCatalog),
  /// Error(DuplicateId) or Error(InvalidValue).
  explicit Catalog(std::vector<Product> products, LoadReport report = {});

  const std::vector<Product>& products() const noexcept { return products_; }
  std::size_t size() const noexcept { return products_.size(); }
  const LoadReport& report() const noexcept { return report_; }

  std::optional<std::size_t> position(ProductId id) const;
  const Product* find(ProductId id) const;
  /// Throws Error(UnknownProduct).
  const Product& at(ProductId id) const;
  bool has_brand(std::string_view brand) const;

  /// Content hash over the normalized products.
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }

 private:
  std::vector<Product> products_;
  std::unordered_map<ProductId, std::size_t> by_id_;
  std::uint64_t fingerprint_ = 0;
  LoadReport report_;
};

/// Throws Error(MalformedCsv), Error(EmptyCatalog) or Error(DuplicateId).
Catalog load_catalog(std::istream& source,
                     const ColumnMapping& mapping = ColumnMapping::canonical());
/// Throws Error(Io) naming the path when it cannot be opened.
Catalog load_catalog(const std::filesystem::path& path,
                     const ColumnMapping& mapping = ColumnMapping::canonical());

/// Writes the canonical 13-column layout; load_catalog reads it back to an
/// identical catalog.
void write_catalog_csv(std::ostream& out, const Catalog& catalog);

struct ProductFilter {
  std::optional<Category> category;
  std::optional<SkinType> skin_type;
  std::optional<Concern> issue;
  std::optional<std::string> brand;  // case-insensitive exact match
};

/// Conjunction of the set predicates, ordered by ascending id.
std::vector<Product> filter(const Catalog& catalog, const ProductFilter& where);

bool iequals(std::string_view a, std::string_view b) noexcept;

}  // namespace skincare
