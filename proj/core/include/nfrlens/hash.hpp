#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace nfrlens {

// 64-bit FNV-1a. Used to fingerprint bundled data files and persisted
// vectorizers; not a cryptographic hash.
constexpr std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Lowercase 16-digit hex rendering of fnv1a64.
std::string fnv1a64_hex(std::string_view bytes);

}  // namespace nfrlens
