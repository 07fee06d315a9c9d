#include "pit/precision.hpp"

#include <charconv>
#include <stdexcept>

namespace pit {

FloatFormat::FloatFormat(std::string name, int exponent_bits, int mantissa_bits,
                         bool supports_subnormals)
    : name_(std::move(name)),
      exponent_bits_(exponent_bits),
      mantissa_bits_(mantissa_bits),
      supports_subnormals_(supports_subnormals) {
  if (exponent_bits_ < 2 || mantissa_bits_ < 1)
    throw std::invalid_argument("FloatFormat: need exponent_bits >= 2 and mantissa_bits >= 1");
  if (exponent_bits_ > 11 || mantissa_bits_ > 52)
    throw std::invalid_argument(
        "FloatFormat: shadow representation requires a subset of binary64 "
        "(exponent_bits <= 11, mantissa_bits <= 52)");
  int emax = (1 << (exponent_bits_ - 1)) - 1;
  emin_ = 1 - emax;
  shift_ = std::uint64_t(52 - mantissa_bits_);
  mask_ = shift_ ? (1ull << shift_) - 1 : 0;
  half_ = shift_ ? 1ull << (shift_ - 1) : 0;
  emax_biased_ = std::uint64_t(emax + 1023);
}

double FloatFormat::max_finite() const {
  int emax = (1 << (exponent_bits_ - 1)) - 1;
  return std::ldexp(2.0 - std::ldexp(1.0, -mantissa_bits_), emax);
}

FloatFormat make_format(std::string_view name) {
  if (name == "fp64" || name == "double") return FloatFormat("fp64", 11, 52);
  if (name == "fp32" || name == "single") return FloatFormat("fp32", 8, 23);
  if (name == "fp16" || name == "half") return FloatFormat("fp16", 5, 10);
  // "eXmY" custom syntax, e.g. "e8m7" for bfloat16-like parameters.
  if (name.size() >= 4 && name[0] == 'e') {
    auto mpos = name.find('m');
    if (mpos != std::string_view::npos && mpos > 1) {
      int e = 0, m = 0;
      auto r1 = std::from_chars(name.data() + 1, name.data() + mpos, e);
      auto r2 = std::from_chars(name.data() + mpos + 1, name.data() + name.size(), m);
      if (r1.ec == std::errc() && r2.ec == std::errc() &&
          r1.ptr == name.data() + mpos && r2.ptr == name.data() + name.size())
        return make_format(e, m);
    }
  }
  throw std::invalid_argument("unknown precision name: " + std::string(name));
}

FloatFormat make_format(int exponent_bits, int mantissa_bits, bool supports_subnormals) {
  std::string nm = "e" + std::to_string(exponent_bits) + "m" + std::to_string(mantissa_bits);
  return FloatFormat(std::move(nm), exponent_bits, mantissa_bits, supports_subnormals);
}

Eigen::VectorXd round_elementwise(const Eigen::VectorXd& v, const FloatFormat& f) {
  Eigen::VectorXd out = v;
  round_elementwise_inplace(out, f);
  return out;
}

Eigen::MatrixXd round_elementwise(const Eigen::MatrixXd& v, const FloatFormat& f) {
  Eigen::MatrixXd out = v;
  round_elementwise_inplace(out, f);
  return out;
}

void round_elementwise_inplace(Eigen::Ref<Eigen::VectorXd> v, const FloatFormat& f) {
  if (f.is_identity()) return;
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = round_scalar(v[i], f);
}

void round_elementwise_inplace(Eigen::Ref<Eigen::MatrixXd> v, const FloatFormat& f) {
  if (f.is_identity()) return;
  for (Eigen::Index j = 0; j < v.cols(); ++j)
    for (Eigen::Index i = 0; i < v.rows(); ++i) v(i, j) = round_scalar(v(i, j), f);
}

}  // namespace pit
