#pragma once

#include <algorithm>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "skincare/catalog.hpp"

namespace bench {

inline const skincare::Catalog& sample() {
  static const skincare::Catalog c =
      skincare::load_catalog(std::string(SKINCARE_DATA_DIR) + "/sample_catalog.csv");
  return c;
}

/// n products over a Zipf-weighted vocabulary, every product suiting every skin type.
inline skincare::Catalog synthetic(std::size_t n, std::uint64_t seed = 1) {
  std::mt19937_64 rng(seed);
  std::vector<double> w(3000);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = 1.0 / (1.0 + i);
  std::discrete_distribution<int> token(w.begin(), w.end());
  std::vector<skincare::Product> ps;
  for (std::size_t i = 0; i < n; ++i) {
    skincare::Product p;
    p.id = i + 1;
    p.category = skincare::kAllCategories[i % skincare::kCategoryCount];
    p.brand = "brand " + std::to_string(i % 97);
    p.name = "product " + std::to_string(i);
    for (int k = 0; k < 25; ++k) p.ingredients.push_back("ingredient " + std::to_string(token(rng)));
    std::sort(p.ingredients.begin(), p.ingredients.end());
    p.ingredients.erase(std::unique(p.ingredients.begin(), p.ingredients.end()), p.ingredients.end());
    p.suitability.fill(true);
    ps.push_back(std::move(p));
  }
  return skincare::Catalog(std::move(ps));
}

}  // namespace bench
