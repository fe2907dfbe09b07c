#pragma once

#include <string>
#include <string_view>

#include "cubicosc/mparith.hpp"

namespace cubicosc {

using mp::BranchedComplex;
using mp::Complex;
using mp::Real;

/// Series depths and truncation thresholds. The term tolerance is stored as
/// a decimal exponent so that the policy is independent of any precision.
struct TruncationPolicy {
  int frobenius_max_terms = 6000;
  int thome_max_terms = 3000;
  int eta_inner_max = 4000;
  int extraction_n_min = 20;
  int extraction_n_max = 60;
  int term_tolerance_exponent = -64;

  static TruncationPolicy defaults(const mp::Precision& precision);
  void validate(const mp::Precision& precision) const;
  /// 10^term_tolerance_exponent at working precision.
  [[nodiscard]] Real term_tolerance() const { return mp::pow10(term_tolerance_exponent); }
};

/// One oscillator instance H(kappa, lambda) = -d^2/dx^2 + kappa x^2/4 - lambda x^3
/// plus the numerical settings used to solve it.
///
/// kappa and lambda are kept as the decimal text they were given in, and
/// materialised at whatever precision is current when they are read. Call
/// the accessors inside a PrecisionScope for `precision`.
class ProblemSpec {
 public:
  /// lambda = modulus * exp(i pi arg_over_pi), 0 <= arg_over_pi <= 1/2.
  static ProblemSpec from_polar(std::string_view kappa, std::string_view lambda_modulus,
                                std::string_view lambda_arg_over_pi, mp::Precision precision = {});
  static ProblemSpec from_polar(double kappa, double lambda_modulus, double lambda_arg_over_pi,
                                mp::Precision precision = {});

  [[nodiscard]] Real kappa() const;
  [[nodiscard]] Complex lambda() const;
  [[nodiscard]] Real lambda_modulus() const;
  /// arg lambda in radians.
  [[nodiscard]] Real lambda_arg() const;

  [[nodiscard]] const std::string& kappa_text() const { return kappa_; }
  [[nodiscard]] const std::string& lambda_modulus_text() const { return modulus_; }
  [[nodiscard]] const std::string& lambda_arg_over_pi_text() const { return arg_over_pi_; }
  [[nodiscard]] double kappa_value() const;
  [[nodiscard]] double lambda_modulus_value() const;
  [[nodiscard]] double lambda_arg_over_pi_value() const;

  /// True when lambda sits on the positive real axis to within 10^(-digits/2).
  [[nodiscard]] bool on_stokes_ray() const;

  /// Same oscillator with another arg lambda / pi.
  [[nodiscard]] ProblemSpec with_lambda_arg(std::string_view arg_over_pi) const;
  [[nodiscard]] ProblemSpec with_precision(mp::Precision p) const;

  mp::Precision precision;
  TruncationPolicy truncation;

 private:
  ProblemSpec() = default;
  void validate() const;

  std::string kappa_;
  std::string modulus_;
  std::string arg_over_pi_;
};

/// Shortest round-trip decimal rendering of a double.
std::string decimal_text(double v);

/// Relative tolerances derived from the working precision.
struct Tolerances {
  static Real identity(const mp::Precision& p);  // 10^(-digits/2)
  static Real plateau(const mp::Precision& p);   // 10^(-digits/3)
  static Real noise(const mp::Precision& p);     // 10^(-digits+guard)
};

}  // namespace cubicosc
