#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>

namespace sosgap {

/// Incremental SHA-256, used for provenance fingerprints of balls,
/// programs and certificates.
class Sha256 {
 public:
  Sha256();
  ~Sha256();
  Sha256(Sha256&&) noexcept;
  Sha256& operator=(Sha256&&) noexcept;

  Sha256& update(std::string_view bytes);
  Sha256& update(std::span<const std::byte> bytes);
  template <class T>
  Sha256& update_pod(std::span<const T> values) {
    return update(std::as_bytes(values));
  }
  /// Lower-case hex digest. The hasher must not be used afterwards.
  std::string hex_digest();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::string sha256_hex(std::string_view bytes);

}  // namespace sosgap
