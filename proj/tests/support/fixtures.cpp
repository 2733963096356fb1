#include "fixtures.hpp"

#include <iomanip>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "skincare/csv.hpp"

#ifndef SKINCARE_DATA_DIR
#error "SKINCARE_DATA_DIR must point at the data/ directory"
#endif

namespace fixtures {

std::filesystem::path sample_catalog_path() {
  return std::filesystem::path(SKINCARE_DATA_DIR) / "sample_catalog.csv";
}

const skincare::Catalog& sample_catalog() {
  static const skincare::Catalog catalog = skincare::load_catalog(sample_catalog_path());
  return catalog;
}

void write_public_layout_catalog(std::ostream& out, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::vector<std::pair<std::string, int>> labels = {
      {"Moisturizer", 298}, {"Cleanser", 281},  {"Face Mask", 266},
      {"Treatment", 248},   {"Eye cream", 209}, {"Sun protect", 170}};

  // Zipf-like token popularity over a 5,000-token vocabulary.
  constexpr int kVocab = 5000;
  std::vector<std::string> vocab;
  static const char* stems[] = {"extract", "oil", "acid", "glycol", "oxide", "butter",
                                "ferment", "peptide", "water", "seed", "ester", "silica"};
  for (int i = 0; i < kVocab; ++i) {
    std::ostringstream t;
    t << "Compound " << i << ' ' << stems[i % 12];
    vocab.push_back(t.str());
  }
  vocab[0] = "Water";
  vocab[1] = "Glycerin";
  vocab[2] = "Butylene Glycol";
  std::vector<double> weights(kVocab);
  for (int i = 0; i < kVocab; ++i) weights[i] = 1.0 / (1.0 + i);
  std::discrete_distribution<int> token(weights.begin(), weights.end());
  std::uniform_int_distribution<int> length(6, 45);
  std::uniform_int_distribution<int> brand(0, 115);
  std::bernoulli_distribution flag(0.6);
  std::uniform_int_distribution<int> price(5, 350);
  std::uniform_int_distribution<int> rank10(0, 50);

  out << "Label,Brand,Name,Price,Rank,Ingredients,Combination,Dry,Normal,Oily,Sensitive\n";
  int serial = 0;
  for (const auto& [label, count] : labels) {
    for (int i = 0; i < count; ++i, ++serial) {
      std::ostringstream b, n, ing;
      b << "BRAND " << std::setw(3) << std::setfill('0') << brand(rng);
      n << label << " Formula No. " << serial;
      std::set<int> seen;
      const int len = length(rng);
      bool first = true;
      for (int k = 0; k < len; ++k) {
        const int t = token(rng);
        if (!seen.insert(t).second) continue;
        if (!first) ing << ", ";
        ing << vocab[t];
        first = false;
      }
      out << skincare::csv::escape(label) << ',' << skincare::csv::escape(b.str()) << ','
          << skincare::csv::escape(n.str()) << ',' << price(rng) << ',' << rank10(rng) / 10.0
          << ',' << skincare::csv::escape(ing.str());
      for (int f = 0; f < 5; ++f) out << ',' << (flag(rng) ? 1 : 0);
      out << '\n';
    }
  }
}

TempDir::TempDir(const std::string& tag) {
  std::random_device rd;
  std::ostringstream name;
  name << "skincare-" << tag << '-' << std::hex << rd() << rd();
  path_ = std::filesystem::temp_directory_path() / name.str();
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

}  // namespace fixtures
