#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "skincare/error.hpp"
#include "skincare/routine.hpp"

using namespace skincare;

namespace {

struct Engine {
  const Catalog& catalog = fixtures::sample_catalog();
  IngredientMatrix matrix = vectorize(catalog);
  mf::FactorModel model = mf::train(mf::build_interactions(catalog), mf::MfConfig{});
};

const Engine& engine() {
  static const Engine e;
  return e;
}

void expect_lists_equal(const std::vector<ScoredProduct>& got,
                        const std::vector<ScoredProduct>& want, const std::string& ctx) {
  ASSERT_EQ(got.size(), want.size()) << ctx;
  for (std::size_t i = 0; i < got.size(); ++i) {
    EXPECT_EQ(got[i].product_id, want[i].product_id) << ctx << " rank " << i;
    EXPECT_EQ(got[i].final_score, want[i].final_score) << ctx << " rank " << i;
  }
}

void expect_safe(const Routine& r, const Catalog& c) {
  for (Category cat : kAllCategories) {
    const auto& list = r.in(cat);
    EXPECT_LE(list.size(), kProductsPerCategory);
    for (std::size_t i = 0; i < list.size(); ++i) {
      const Product& p = c.at(list[i].product_id);
      EXPECT_EQ(p.category, cat);
      EXPECT_TRUE(p.suits(r.assessment.skin_type));
      if (r.anchor) EXPECT_NE(p.id, *r.anchor);
      EXPECT_NEAR(list[i].final_score,
                  r.alpha * list[i].cosine_part + (1 - r.alpha) * list[i].mf_part, 1e-9);
      if (i) EXPECT_TRUE(ranks_before(list[i - 1], list[i]));
    }
  }
}

}  // namespace

TEST(Recommend, SampleAnchorOneMatchesExhaustiveScoring) {
  const Engine& e = engine();
  const auto a = from_direct(SkinType::Dry, Concern::Acne);
  const Routine r = recommend(e.catalog, e.matrix, e.model, a, 1, 0.5);
  for (Category c : kAllCategories) {
    const auto want = oracle::brute_force_category(e.catalog, e.model, a, 1, 0.5, c);
    ASSERT_EQ(r.in(c).size(), want.size());
    for (std::size_t i = 0; i < want.size(); ++i) EXPECT_EQ(r.in(c)[i], want[i]);
  }
  expect_safe(r, e.catalog);
}

TEST(Recommend, AlphaOneWithAnchorReducesToNearest) {
  const Engine& e = engine();
  const auto a = from_direct(SkinType::Oily, Concern::Wrinkles);
  const Routine r = recommend(e.catalog, e.matrix, e.model, a, 3, 1.0);
  for (Category c : kAllCategories) {
    const auto hits = nearest(e.matrix, *e.matrix.row_of(3), 5, [&](std::size_t row) {
      const Product& p = e.catalog.products()[row];
      return p.category == c && p.suits(a.skin_type);
    });
    ASSERT_EQ(r.in(c).size(), hits.size());
    for (std::size_t i = 0; i < hits.size(); ++i) {
      EXPECT_EQ(r.in(c)[i].product_id, hits[i].product_id);
      EXPECT_EQ(r.in(c)[i].final_score, hits[i].similarity);
    }
  }
}

TEST(Recommend, EndpointsMatchPureOracles) {
  const Engine& e = engine();
  for (SkinType t : kAllSkinTypes)
    for (Concern k : kAllConcerns)
      for (std::optional<ProductId> anchor : {std::optional<ProductId>{}, std::optional<ProductId>{11}}) {
        const auto a = from_direct(t, k);
        const Routine r1 = recommend(e.catalog, e.matrix, e.model, a, anchor, 1.0);
        const Routine r0 = recommend(e.catalog, e.matrix, e.model, a, anchor, 0.0);
        for (Category c : kAllCategories) {
          const std::string ctx = std::string(key(t)) + "/" + std::string(key(k));
          expect_lists_equal(r1.in(c), oracle::pure_cosine(e.catalog, a, anchor, c), ctx);
          expect_lists_equal(r0.in(c), oracle::pure_mf(e.catalog, e.model, a, anchor, c), ctx);
        }
      }
}

TEST(Recommend, AnchorlessUsesIssueMatchedCentroid) {
  const Engine& e = engine();
  const auto a = from_direct(SkinType::Normal, Concern::Pigmentation);
  const Routine r = recommend(e.catalog, e.matrix, e.model, a, std::nullopt, 0.5);
  for (Category c : kAllCategories) {
    const auto want = oracle::brute_force_category(e.catalog, e.model, a, std::nullopt, 0.5, c);
    ASSERT_EQ(r.in(c).size(), want.size());
    for (std::size_t i = 0; i < want.size(); ++i) EXPECT_EQ(r.in(c)[i], want[i]);
  }
}

TEST(Recommend, RandomisedSafetyInvariants) {
  const Engine& e = engine();
  std::mt19937_64 rng(99);
  AssessmentGenerator gen(5);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = gen.next();
    std::optional<ProductId> anchor;
    if (rng() % 3) anchor = e.catalog.products()[rng() % e.catalog.size()].id;
    const double alpha = std::uniform_real_distribution<double>(0, 1)(rng);
    const Routine r = recommend(e.catalog, e.matrix, e.model, a, anchor, alpha);
    expect_safe(r, e.catalog);
  }
}

TEST(Recommend, DeterministicExceptTimestamp) {
  const Engine& e = engine();
  const auto a = from_direct(SkinType::Dry, Concern::Acne);
  Routine x = recommend(e.catalog, e.matrix, e.model, a, 2, 0.3);
  Routine y = recommend(e.catalog, e.matrix, e.model, a, 2, 0.3);
  y.created_at = x.created_at;
  EXPECT_EQ(x, y);
}

TEST(Recommend, AllFalseProductNeverRecommended) {
  const Engine& e = engine();
  for (SkinType t : kAllSkinTypes) {
    const Routine r = recommend(e.catalog, e.matrix, e.model, from_direct(t, Concern::Acne));
    for (const auto& list : r.by_category)
      for (const auto& s : list) EXPECT_NE(s.product_id, 44u);
  }
}

TEST(Recommend, Errors) {
  const Engine& e = engine();
  const auto a = from_direct(SkinType::Dry, Concern::Acne);
  auto code = [&](auto&& f) {
    try {
      f();
    } catch (const Error& err) {
      return err.code();
    }
    return ErrorCode::Io;
  };
  EXPECT_EQ(code([&] { (void)recommend(e.catalog, e.matrix, e.model, a, 999); }),
            ErrorCode::UnknownAnchor);
  EXPECT_EQ(code([&] { (void)recommend(e.catalog, e.matrix, e.model, a, 1, 1.5); }),
            ErrorCode::InvalidArgument);
  mf::FactorModel stale = e.model;
  stale.fingerprint ^= 1;
  EXPECT_EQ(code([&] { (void)recommend(e.catalog, e.matrix, stale, a); }), ErrorCode::StaleModel);
  std::vector<Product> other(e.catalog.products().begin(), e.catalog.products().begin() + 10);
  const Catalog small(other);
  EXPECT_EQ(code([&] { (void)recommend(small, e.matrix, e.model, a); }), ErrorCode::StaleModel);
}

TEST(Alternatives, BelifMoisturizersMatchScanOracle) {
  const Engine& e = engine();
  for (SkinType t : kAllSkinTypes) {
    const auto a = from_direct(t, Concern::Acne);
    const Routine r = recommend(e.catalog, e.matrix, e.model, a, 1, 0.5);
    const auto got = alternatives(e.catalog, e.matrix, r, Category::Moisturizer, "BELIF");
    const auto want = oracle::brute_force_alternatives(e.catalog, r, Category::Moisturizer, "BELIF");
    ASSERT_EQ(got.size(), want.size()) << key(t);
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_EQ(got[i], want[i]);
    for (const auto& s : got) {
      EXPECT_EQ(e.catalog.at(s.product_id).brand, "BELIF");
      EXPECT_EQ(s.mf_part, 0.0);
    }
  }
}

TEST(Alternatives, ExcludesReferenceAndHandlesEmptyBrandCategory) {
  const Engine& e = engine();
  const auto a = from_direct(SkinType::Normal, Concern::Acne);
  const Routine r = recommend(e.catalog, e.matrix, e.model, a);
  const ProductId top = r.in(Category::Moisturizer).front().product_id;
  const std::string brand = e.catalog.at(top).brand;
  const auto got = alternatives(e.catalog, e.matrix, r, Category::Moisturizer, brand);
  for (const auto& s : got) EXPECT_NE(s.product_id, top);
  EXPECT_EQ(got, oracle::brute_force_alternatives(e.catalog, r, Category::Moisturizer, brand));

  // A brand that exists but sells nothing in the category.
  std::string sunscreen_only;
  for (const auto& p : e.catalog.products()) {
    bool other = false;
    for (const auto& q : e.catalog.products())
      if (q.brand == p.brand && q.category == Category::Cleanser) other = true;
    if (!other) {
      sunscreen_only = p.brand;
      break;
    }
  }
  ASSERT_FALSE(sunscreen_only.empty());
  EXPECT_TRUE(alternatives(e.catalog, e.matrix, r, Category::Cleanser, sunscreen_only).empty());
  try {
    (void)alternatives(e.catalog, e.matrix, r, Category::Mask, "NO SUCH BRAND");
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::UnknownBrand);
  }
}
