#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace skincare {

/// 64-bit FNV-1a. Stable across platforms and runs, which std::hash is not.
class Fingerprint {
 public:
  Fingerprint& bytes(std::string_view data) noexcept;
  Fingerprint& u64(std::uint64_t value) noexcept;
  Fingerprint& real(double value) noexcept;
  /// Length-prefixed so that ("ab","c") and ("a","bc") differ.
  Fingerprint& add_field(std::string_view text) noexcept;

  std::uint64_t value() const noexcept { return state_; }

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

/// 16 lowercase hex digits.
std::string to_hex(std::uint64_t value);
/// Inverse of to_hex; throws Error(Format).
std::uint64_t from_hex(std::string_view text);

}  // namespace skincare
