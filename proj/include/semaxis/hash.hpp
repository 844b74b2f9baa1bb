#pragma once

#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <string_view>

namespace semaxis {

/// 64-bit FNV-1a. Used for cache keys and persisted references, so it must
/// stay stable across builds (std::hash does not promise that).
class Fnv1a {
 public:
  Fnv1a& bytes(const void* data, std::size_t size) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < size; ++i) {
      state_ ^= p[i];
      state_ *= 0x100000001b3ULL;
    }
    return *this;
  }
  Fnv1a& str(std::string_view s) {
    bytes(s.data(), s.size());
    return u64(s.size());
  }
  Fnv1a& u64(std::uint64_t v) { return bytes(&v, sizeof v); }
  Fnv1a& real(double v) {
    if (v == 0.0) v = 0.0;  // fold -0 into +0
    return bytes(&v, sizeof v);
  }
  Fnv1a& reals(std::span<const double> vs) {
    for (double v : vs) real(v);
    return u64(vs.size());
  }
  std::uint64_t value() const noexcept { return state_; }

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

std::string to_hex(std::uint64_t v);

}  // namespace semaxis
