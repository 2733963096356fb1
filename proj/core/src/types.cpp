#include "skincare/types.hpp"

#include <cctype>

#include "skincare/error.hpp"

namespace skincare {
namespace {

// Lowercase, drop separators. "Sun protect" -> "sunprotect".
std::string squash(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char ch : text) {
    auto c = static_cast<unsigned char>(ch);
    if (std::isspace(c) || c == '_' || c == '-') continue;
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

}  // namespace

std::string_view display_name(Category c) noexcept {
  switch (c) {
    case Category::Cleanser: return "Cleanser";
    case Category::Moisturizer: return "Moisturizer";
    case Category::Treatment: return "Treatment";
    case Category::Mask: return "Mask";
    case Category::Sunscreen: return "Sunscreen";
  }
  return "?";
}

std::string_view display_name(SkinType s) noexcept {
  switch (s) {
    case SkinType::Combination: return "Combination";
    case SkinType::Dry: return "Dry";
    case SkinType::Normal: return "Normal";
    case SkinType::Oily: return "Oily";
    case SkinType::Sensitive: return "Sensitive";
  }
  return "?";
}

std::string_view display_name(Concern c) noexcept {
  switch (c) {
    case Concern::Acne: return "Acne";
    case Concern::ClearSkin: return "ClearSkin";
    case Concern::Pigmentation: return "Pigmentation";
    case Concern::Wrinkles: return "Wrinkles";
  }
  return "?";
}

std::string_view key(Category c) noexcept {
  switch (c) {
    case Category::Cleanser: return "cleanser";
    case Category::Moisturizer: return "moisturizer";
    case Category::Treatment: return "treatment";
    case Category::Mask: return "mask";
    case Category::Sunscreen: return "sunscreen";
  }
  return "?";
}

std::string_view key(SkinType s) noexcept {
  switch (s) {
    case SkinType::Combination: return "combination";
    case SkinType::Dry: return "dry";
    case SkinType::Normal: return "normal";
    case SkinType::Oily: return "oily";
    case SkinType::Sensitive: return "sensitive";
  }
  return "?";
}

std::string_view key(Concern c) noexcept {
  switch (c) {
    case Concern::Acne: return "acne";
    case Concern::ClearSkin: return "clear_skin";
    case Concern::Pigmentation: return "pigmentation";
    case Concern::Wrinkles: return "wrinkles";
  }
  return "?";
}

std::optional<Category> try_parse_category(std::string_view text) {
  const std::string s = squash(text);
  for (Category c : kAllCategories) {
    if (s == squash(display_name(c))) return c;
  }
  if (s == "serum" || s == "essence") return Category::Treatment;
  if (s == "facemask") return Category::Mask;
  if (s == "sunprotect" || s == "sunprotection" || s == "spf")
    return Category::Sunscreen;
  if (s == "moisturiser") return Category::Moisturizer;
  return std::nullopt;
}

std::optional<SkinType> try_parse_skin_type(std::string_view text) {
  const std::string s = squash(text);
  for (SkinType t : kAllSkinTypes) {
    if (s == squash(display_name(t))) return t;
  }
  if (s == "combin") return SkinType::Combination;
  return std::nullopt;
}

std::optional<Concern> try_parse_concern(std::string_view text) {
  const std::string s = squash(text);
  for (Concern c : kAllConcerns) {
    if (s == squash(display_name(c))) return c;
  }
  return std::nullopt;
}

Category parse_category(std::string_view text) {
  if (auto c = try_parse_category(text)) return *c;
  throw Error(ErrorCode::UnknownCategory,
              "unknown category '" + std::string(text) + "'");
}

SkinType parse_skin_type(std::string_view text) {
  if (auto t = try_parse_skin_type(text)) return *t;
  throw Error(ErrorCode::InvalidValue,
              "unknown skin type '" + std::string(text) + "'");
}

Concern parse_concern(std::string_view text) {
  if (auto c = try_parse_concern(text)) return *c;
  throw Error(ErrorCode::InvalidValue,
              "unknown concern '" + std::string(text) + "'");
}

}  // namespace skincare
