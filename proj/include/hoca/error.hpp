#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hoca {

enum class errc {
  invalid_modulus,
  modulus_mismatch,
  invalid_prime,
  shape_mismatch,
  overflow,
  invalid_argument,
  schema,
  unsupported,
  io,
};

inline std::string_view to_string(errc code) {
  switch (code) {
    case errc::invalid_modulus: return "invalid-modulus";
    case errc::modulus_mismatch: return "modulus-mismatch";
    case errc::invalid_prime: return "invalid-prime";
    case errc::shape_mismatch: return "shape-mismatch";
    case errc::overflow: return "overflow";
    case errc::invalid_argument: return "invalid-argument";
    case errc::schema: return "schema";
    case errc::unsupported: return "unsupported";
    case errc::io: return "io";
  }
  return "unknown";
}

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto its exit-code protocol.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace hoca
