#pragma once

// Connection factors T_{i,j}^{(sigma)}(E), defined by
//
//   w_i = T_{i,3} w_3 + T_{i,4} w_4,
//
// obtained from the Wronskians W[w_i, w_j] of Frobenius and Thome solutions.
// The Wronskian is extracted from the eta values through the Heaviside
// exponential series, sum_n z^(n+delta) / Gamma(n+1+delta).

#include <array>

#include "cubicosc/series.hpp"

namespace cubicosc::connection {

struct WronskianExtraction {
  int sigma = 1;
  int i = 1;
  int j = 3;
  long n_used = 0;
  std::array<Complex, 5> g;  // W = g_0 + ... + g_4
  std::array<Real, 5> delta;
  Real plateau_spread;
  /// Relative error bound from the truncated eta sums.
  Real eta_error;
  bool stokes_averaged = false;
};

struct Wronskian {
  Complex value;
  WronskianExtraction extraction;
};

/// W[w_i, w_j] for sigma, scanning the extraction window for a plateau.
/// Throws PlateauError when no index in the window is flat to 10^(-digits/3).
Wronskian wronskian_frob_thome(const ProblemSpec& spec, int sigma, int i, int j, const Complex& E);

/// Same, at a fixed extraction index n (no scan, no plateau test).
Wronskian wronskian_at(const ProblemSpec& spec, int sigma, int i, int j, const Complex& E, long n);

/// The exponent base -alpha/5 on the branch with |arg| < pi. Throws
/// BranchError on the Stokes ray, where neither e^{+i pi} nor e^{-i pi} works.
BranchedComplex heaviside_base(const series::ThomeExponents& exps);

/// arg(-alpha) candidates arg alpha + pi and arg alpha - pi, in that order.
std::array<Real, 2> minus_alpha_arguments(const series::ThomeExponents& exps);

/// True for (sigma = -1, j = 4) with lambda on the positive real axis.
bool is_stokes_case(const ProblemSpec& spec, int sigma, int j);

class ConnectionMatrix {
 public:
  Complex E;
  Real det_residual;
  Real error_estimate;

  /// T_{i,j}^{(sigma)}
  [[nodiscard]] const Complex& T(int i, int j, int sigma) const { return t_[slot(i, j, sigma)]; }
  Complex& T(int i, int j, int sigma) { return t_[slot(i, j, sigma)]; }
  /// alpha_4^{(sigma)}
  [[nodiscard]] const Complex& alpha4(int sigma) const { return alpha4_[sigma > 0 ? 1 : 0]; }
  Complex& alpha4(int sigma) { return alpha4_[sigma > 0 ? 1 : 0]; }

 private:
  static std::size_t slot(int i, int j, int sigma);
  std::array<Complex, 8> t_;
  std::array<Complex, 2> alpha4_;
};

/// All eight factors plus the determinant check
///   T_13 T_24 - T_23 T_14 = 1 / alpha_4   (each sigma).
/// Throws ConsistencyError if the relative residual exceeds 10^(-digits/2).
ConnectionMatrix connection_matrix(const ProblemSpec& spec, const Complex& E);

/// T_{1,4}, T_{2,4} for both sigma: the factors multiplying the solution that
/// grows (or is incoming) at infinity. Only the j = 3 Wronskians are needed.
struct RecessiveFactors {
  Complex T14_plus;
  Complex T24_plus;
  Complex T14_minus;
  Complex T24_minus;
  Real error_estimate;  // relative
};

RecessiveFactors recessive_factors(const ProblemSpec& spec, const Complex& E);

}  // namespace cubicosc::connection
