#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace skincare {

// Closed enumerations. The underlying values are the canonical orderings used
// for matrix indexing and tie-breaking everywhere in the library.

enum class Category { Cleanser = 0, Moisturizer, Treatment, Mask, Sunscreen };
enum class SkinType { Combination = 0, Dry, Normal, Oily, Sensitive };
enum class Concern { Acne = 0, ClearSkin, Pigmentation, Wrinkles };

inline constexpr std::size_t kCategoryCount = 5;
inline constexpr std::size_t kSkinTypeCount = 5;
inline constexpr std::size_t kConcernCount = 4;

inline constexpr std::array<Category, kCategoryCount> kAllCategories{
    Category::Cleanser, Category::Moisturizer, Category::Treatment,
    Category::Mask, Category::Sunscreen};
inline constexpr std::array<SkinType, kSkinTypeCount> kAllSkinTypes{
    SkinType::Combination, SkinType::Dry, SkinType::Normal, SkinType::Oily,
    SkinType::Sensitive};
inline constexpr std::array<Concern, kConcernCount> kAllConcerns{
    Concern::Acne, Concern::ClearSkin, Concern::Pigmentation,
    Concern::Wrinkles};

constexpr std::size_t index_of(Category c) { return static_cast<std::size_t>(c); }
constexpr std::size_t index_of(SkinType s) { return static_cast<std::size_t>(s); }
constexpr std::size_t index_of(Concern c) { return static_cast<std::size_t>(c); }

// Display names ("Moisturizer", "ClearSkin").
std::string_view display_name(Category c) noexcept;
std::string_view display_name(SkinType s) noexcept;
std::string_view display_name(Concern c) noexcept;

// snake_case keys used on the wire ("moisturizer", "clear_skin").
std::string_view key(Category c) noexcept;
std::string_view key(SkinType s) noexcept;
std::string_view key(Concern c) noexcept;

// Parsing is case-insensitive and ignores spaces, '_' and '-', so
// "Clear Skin", "clear_skin" and "ClearSkin" are equivalent. Category also
// accepts the aliases found in the public source dataset ("Serum" and
// "Essence" -> Treatment, "Face Mask" -> Mask, "Sun protect" -> Sunscreen,
// "Moisturiser" -> Moisturizer).
std::optional<Category> try_parse_category(std::string_view text);
std::optional<SkinType> try_parse_skin_type(std::string_view text);
std::optional<Concern> try_parse_concern(std::string_view text);

/// Throws Error(UnknownCategory).
Category parse_category(std::string_view text);
/// Throws Error(InvalidValue).
SkinType parse_skin_type(std::string_view text);
/// Throws Error(InvalidValue).
Concern parse_concern(std::string_view text);

}  // namespace skincare
