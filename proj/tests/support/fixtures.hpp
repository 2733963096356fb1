#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>

#include "skincare/catalog.hpp"

namespace fixtures {

/// data/sample_catalog.csv in the source tree.
std::filesystem::path sample_catalog_path();
/// Loaded once per process.
const skincare::Catalog& sample_catalog();

/// Number of rows in the public catalog the scale tests stand in for.
inline constexpr std::size_t kPublicCatalogRows = 1472;

/// Writes a deterministic catalog in the public source layout
/// (Label, Brand, Name, Price, Rank, Ingredients, five suitability flags;
/// no id and no Issue column). Label counts follow the public file: 298
/// Moisturizer, 281 Cleanser, 266 Face Mask, 248 Treatment, 209 Eye cream,
/// 170 Sun protect. Triples are unique, so only Eye cream rows are dropped
/// on ingest.
void write_public_layout_catalog(std::ostream& out, std::uint64_t seed = 7);
/// Rows that survive ingest of the catalog above.
inline constexpr std::size_t kPublicLayoutKept = 1472 - 209;

/// Fresh directory under the system temp dir, removed by the destructor.
class TempDir {
 public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace fixtures
