#ifndef TBRW_HASH_HPP
#define TBRW_HASH_HPP

#include <cstdint>
#include <cstring>
#include <span>
#include <string_view>
#include <type_traits>

namespace tbrw {

/// 64-bit FNV-1a, incremental.
class Fnv1a {
 public:
  void bytes(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      state_ ^= p[i];
      state_ *= 0x100000001b3ULL;
    }
  }

  template <typename T>
    requires std::is_trivially_copyable_v<T>
  void value(const T& v) {
    bytes(&v, sizeof(T));
  }

  template <typename T>
    requires std::is_trivially_copyable_v<T>
  void values(std::span<const T> vs) {
    bytes(vs.data(), vs.size_bytes());
  }

  void text(std::string_view s) { bytes(s.data(), s.size()); }

  std::uint64_t digest() const noexcept { return state_; }

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

}  // namespace tbrw

#endif  // TBRW_HASH_HPP
