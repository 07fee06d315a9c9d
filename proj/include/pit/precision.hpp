// Software emulation of reduced-precision binary floating-point formats.
//
// Values are always carried as binary64; a format constrains them to its own
// representable set by rounding (round-to-nearest, ties-to-even). Every
// supported format is a strict subset of binary64 (exponent_bits <= 11,
// mantissa_bits <= 52), so the shadow representation is exact.

#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace pit {

/// A binary floating-point format: sign bit, `exponent_bits` exponent bits,
/// `mantissa_bits` stored fraction bits (the leading 1 is implicit).
class FloatFormat {
 public:
  /// Defaults to binary64, for which rounding is the identity.
  FloatFormat() : FloatFormat("fp64", 11, 52, true) {}

  FloatFormat(std::string name, int exponent_bits, int mantissa_bits,
              bool supports_subnormals = true);

  const std::string& name() const { return name_; }
  int exponent_bits() const { return exponent_bits_; }
  int mantissa_bits() const { return mantissa_bits_; }
  bool supports_subnormals() const { return supports_subnormals_; }

  /// u = 2^(-mantissa_bits-1), half the spacing of representables near 1.
  double unit_roundoff() const { return std::ldexp(1.0, -mantissa_bits_ - 1); }
  /// Largest finite value: (2 - 2^-t) * 2^emax.
  double max_finite() const;
  /// Smallest positive normal value: 2^emin.
  double min_normal() const { return std::ldexp(1.0, emin_); }
  /// Smallest positive subnormal value: 2^(emin - t).
  double min_subnormal() const { return std::ldexp(1.0, emin_ - mantissa_bits_); }

  /// True when rounding through this format cannot change any binary64 value.
  bool is_identity() const { return mantissa_bits_ == 52 && exponent_bits_ == 11; }

  friend double round_scalar(double x, const FloatFormat& f);

 private:
  std::string name_;
  int exponent_bits_;
  int mantissa_bits_;
  bool supports_subnormals_;
  // Precomputed rounding constants.
  int emin_;                 // minimum normal exponent, 1 - emax
  std::uint64_t shift_;      // binary64 fraction bits to drop
  std::uint64_t mask_;
  std::uint64_t half_;
  std::uint64_t emax_biased_;  // emax + 1023
};

/// Builds a format from a name: "fp64", "fp32", "fp16", or "eXmY" for a
/// custom format with X exponent and Y mantissa bits (e.g. "e8m7").
/// Throws std::invalid_argument for unknown names.
FloatFormat make_format(std::string_view name);

/// Custom format from explicit bit counts.
FloatFormat make_format(int exponent_bits, int mantissa_bits,
                        bool supports_subnormals = true);

/// Rounds a binary64 value to the nearest value representable in `f`
/// (ties to even). Overflow gives the signed infinity of `f`; values that
/// round below the smallest subnormal give a signed zero; NaN propagates.
inline double round_scalar(double x, const FloatFormat& f) {
  std::uint64_t bits = std::bit_cast<std::uint64_t>(x);
  std::uint64_t sign = bits & 0x8000000000000000ull;
  std::uint64_t mag = bits & 0x7fffffffffffffffull;
  if (int(mag >> 52) - 1023 >= f.emin_) [[likely]] {
    // Normal range of the target (also catches inf/NaN inputs).
    if (mag >= 0x7ff0000000000000ull) [[unlikely]]
      return x;
    std::uint64_t rem = mag & f.mask_;
    std::uint64_t trunc = mag & ~f.mask_;
    std::uint64_t lsb = (trunc >> f.shift_) & 1ull;
    // Round-half-even as one unsigned compare; the carry may bump the
    // exponent, which is exactly the IEEE overflow-to-infinity behaviour.
    trunc += std::uint64_t((rem + lsb) > f.half_) << f.shift_;
    if ((trunc >> 52) > f.emax_biased_) [[unlikely]]
      return std::bit_cast<double>(sign | 0x7ff0000000000000ull);
    return std::bit_cast<double>(sign | trunc);
  }
  // Subnormal range of the target; grid spacing 2^(emin - t). Handles
  // binary64-subnormal inputs and zeros as well.
  int raw = int(mag >> 52);
  std::uint64_t m = raw ? ((1ull << 52) | (mag & 0xfffffffffffffull))
                        : (mag & 0xfffffffffffffull);
  int exp2 = raw ? raw - 1023 - 52 : -1074;
  long s = long(f.emin_ - f.mantissa_bits_) - exp2;
  if (s <= 0) return x;  // already on the target grid
  if (s > 54) return std::bit_cast<double>(sign);
  std::uint64_t q = m >> s;
  std::uint64_t rem = m & ((1ull << s) - 1);
  std::uint64_t hf = 1ull << (s - 1);
  q += std::uint64_t((rem + (q & 1ull)) > hf);
  if (q == 0 || (!f.supports_subnormals_ && q < (1ull << f.mantissa_bits_)))
    return std::bit_cast<double>(sign);
  // Exact: q <= 2^t and the scale is a power of two inside binary64 range.
  double r = std::ldexp(double(q), f.emin_ - f.mantissa_bits_);
  return sign ? -r : r;
}

/// Rounds every entry of `v` through `f`. Idempotent.
Eigen::VectorXd round_elementwise(const Eigen::VectorXd& v, const FloatFormat& f);
Eigen::MatrixXd round_elementwise(const Eigen::MatrixXd& v, const FloatFormat& f);
void round_elementwise_inplace(Eigen::Ref<Eigen::VectorXd> v, const FloatFormat& f);
void round_elementwise_inplace(Eigen::Ref<Eigen::MatrixXd> v, const FloatFormat& f);

/// How aggressively kernels round intermediate results.
///  - OpLevel: every elementary multiply/add/divide/sqrt result is rounded
///    before use, including each accumulation step of a reduction.
///  - KernelLevel: each kernel accumulates in binary64 and rounds only the
///    values it hands back (per output entry). Scalar recurrences outside
///    array kernels still round per operation.
enum class Granularity { OpLevel, KernelLevel };

/// The execution context threaded through every numerical kernel: which
/// format results are constrained to, and at what granularity.
struct PrecisionContext {
  FloatFormat format;
  Granularity granularity = Granularity::OpLevel;

  PrecisionContext() = default;
  explicit PrecisionContext(FloatFormat f,
                            Granularity g = Granularity::OpLevel)
      : format(std::move(f)), granularity(g) {}

  /// Rounding is a no-op (binary64 working precision).
  bool exact() const { return format.is_identity(); }
  bool op_level() const {
    return granularity == Granularity::OpLevel && !exact();
  }

  /// Rounds one scalar result. Identity in binary64.
  double rnd(double x) const { return round_scalar(x, format); }
};

}  // namespace pit
