// Shared aliases, error type, and small formatting utilities.
#pragma once

#include <complex>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mpspec {

using cplx = std::complex<double>;

// Error categories map onto the CLI exit codes: config -> 2,
// numerical -> 3, invariant -> 4.
class Error : public std::runtime_error {
 public:
  enum class Kind { config, numerical, invariant };

  Error(Kind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}

  Kind kind() const { return kind_; }

  int exit_code() const {
    switch (kind_) {
      case Kind::config: return 2;
      case Kind::numerical: return 3;
      case Kind::invariant: return 4;
    }
    return 3;
  }

 private:
  Kind kind_;
};

[[noreturn]] inline void config_error(const std::string& msg) {
  throw Error(Error::Kind::config, msg);
}
[[noreturn]] inline void numerical_error(const std::string& msg) {
  throw Error(Error::Kind::numerical, msg);
}
[[noreturn]] inline void invariant_error(const std::string& msg) {
  throw Error(Error::Kind::invariant, msg);
}

// Full-precision decimal form; round-trips a double exactly.
inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace mpspec
