#include "skincare/fingerprint.hpp"

#include <bit>
#include <charconv>
#include <cstdio>

#include "skincare/error.hpp"

namespace skincare {

Fingerprint& Fingerprint::bytes(std::string_view data) noexcept {
  for (unsigned char c : data) {
    state_ ^= c;
    state_ *= 0x100000001b3ULL;
  }
  return *this;
}

Fingerprint& Fingerprint::u64(std::uint64_t value) noexcept {
  for (int i = 0; i < 8; ++i) {
    state_ ^= (value >> (8 * i)) & 0xffU;
    state_ *= 0x100000001b3ULL;
  }
  return *this;
}

Fingerprint& Fingerprint::real(double value) noexcept {
  return u64(std::bit_cast<std::uint64_t>(value));
}

Fingerprint& Fingerprint::add_field(std::string_view text) noexcept {
  u64(static_cast<std::uint64_t>(text.size()));
  return bytes(text);
}

std::string to_hex(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(value));
  return buf;
}

std::uint64_t from_hex(std::string_view text) {
  std::uint64_t value = 0;
  auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value, 16);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw Error(ErrorCode::Format,
                "invalid hex fingerprint '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace skincare
