#ifndef RQA_COMMON_HPP
#define RQA_COMMON_HPP

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace rqa {

/// Domain error with a stable machine-readable kind.
/// Kinds are forwarded verbatim through the CLI report trail.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

namespace errs {
inline constexpr const char* NotDivisible = "NotDivisible";
inline constexpr const char* NotPthPower = "NotPthPower";
inline constexpr const char* NotClosed = "NotClosed";
inline constexpr const char* NotExact = "NotExact";
inline constexpr const char* NotLocallyExact = "NotLocallyExact";
inline constexpr const char* NotUnit = "NotUnit";
inline constexpr const char* NeedsCoverExtension = "NeedsCoverExtension";
inline constexpr const char* NilpotencyTooDeep = "NilpotencyTooDeep";
inline constexpr const char* IntegrabilityViolated = "IntegrabilityViolated";
inline constexpr const char* UnsupportedShape = "UnsupportedShape";
inline constexpr const char* WindowOverflow = "WindowOverflow";
inline constexpr const char* MixedSession = "MixedSession";
inline constexpr const char* BadInput = "BadInput";
inline constexpr const char* ParseError = "ParseError";
inline constexpr const char* CertificationFailed = "CertificationFailed";
}  // namespace errs

[[noreturn]] inline void fail(const char* kind, const std::string& msg) {
  throw Error(kind, msg);
}

inline void require(bool ok, const char* kind, const std::string& msg) {
  if (!ok) fail(kind, msg);
}

inline bool is_prime(int m) {
  if (m < 2) return false;
  for (int d = 2; d * d <= m; ++d)
    if (m % d == 0) return false;
  return true;
}

/// Global parameters of a computation session. Every object constructed
/// from a session inherits p, n and the h-truncation N; mixing values from
/// different sessions is rejected by the arithmetic layer.
struct Session {
  int p = 3;       // odd prime characteristic
  int n = 1;       // number of symplectic pairs
  int N = 5;       // arithmetic is exact modulo h^N
  std::uint64_t seed = 0;

  Session() = default;
  Session(int p_, int n_, int N_, std::uint64_t seed_ = 0)
      : p(p_), n(n_), N(N_), seed(seed_) {
    require(is_prime(p) && p > 2, errs::BadInput,
            "characteristic must be an odd prime, got " + std::to_string(p));
    require(n >= 1, errs::BadInput, "need at least one symplectic pair");
    require(N >= p + 2, errs::BadInput,
            "truncation order must be at least p+2 = " + std::to_string(p + 2));
  }
};

/// Seedable deterministic generator for the sampled property suites.
/// The seed is echoed in every report so runs can be reproduced.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  int uniform(int lo, int hi) {  // inclusive bounds
    return std::uniform_int_distribution<int>(lo, hi)(gen_);
  }
  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace rqa

#endif
