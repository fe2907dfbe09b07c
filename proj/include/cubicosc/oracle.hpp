#pragma once

// Independent check on the series/connection-factor path: direct numerical
// integration in double precision. Shares no code with the rest of the
// library on purpose.

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace cubicosc::oracle {

using cplx = std::complex<double>;

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Oscillator {
  double kappa = 0;
  cplx lambda;

  static Oscillator from_polar(double kappa, double modulus, double arg_over_pi);
};

struct OdeOptions {
  double abs_tol = 1e-13;
  double rel_tol = 1e-13;
};

struct OdeResult {
  cplx value;
  cplx derivative;
  int steps = 0;
  /// Largest |w| seen along the way over the larger of |w| at the ends.
  double growth = 0;
};

/// Integrates t^2 w'' + (4 sigma lambda t^10 - kappa t^8 + 4E t^4 - 3/4) w = 0
/// along real t from t_start to t_end (both > 0) with an adaptive
/// Runge-Kutta-Fehlberg 7(8) stepper.
OdeResult integrate_ode(const Oscillator& osc, int sigma, cplx E, double t_start, double t_end, cplx w0,
                        cplx dw0, const OdeOptions& options = {});

/// Same equation with `steps` fixed classical RK4 steps, for order checks.
OdeResult integrate_ode_fixed(const Oscillator& osc, int sigma, cplx E, double t_start, double t_end, cplx w0,
                              cplx dw0, int steps);

/// log2 of the error ratio between n and 2n, and 2n and 4n, fixed steps:
/// the observed convergence order of the fixed-step scheme.
double observed_order(const Oscillator& osc, int sigma, cplx E, double t_start, double t_end, cplx w0, cplx dw0,
                      int n);

/// A recessive solution shot from far out along a decay ray to x = 0.
struct Shot {
  cplx psi;
  cplx dpsi;  // d/dx at the origin
  double start_radius = 0;
  double ray_angle = 0;  // radians
  int steps = 0;
  double growth = 0;
  /// The solution shrank on the way in: the shot ran in its unstable direction.
  bool unstable = false;
};

/// side > 0: psi decaying along x = r e^{i(pi - arg lambda)/5};
/// side < 0: psi(-y) decaying along y = r e^{-i arg lambda / 5}.
/// The shot starts from WKB data at the radius where the decay exponent
/// reaches about 30, or at `radius` if that is positive.
Shot shoot(const Oscillator& osc, int side, cplx E, double radius = 0, const OdeOptions& options = {});

/// Start radius used by shoot when none is given.
double start_radius(const Oscillator& osc, int side, cplx E);

/// psi_R psi_L' - psi_R' psi_L, scaled by |psi_R psi_L'| + |psi_R' psi_L|.
cplx matching_mismatch(const Oscillator& osc, cplx E, const OdeOptions& options = {});

struct ShootResult {
  cplx E;
  cplx mismatch;
  int iterations = 0;
  int steps = 0;
  bool unstable = false;
};

/// Secant iteration on the matching Wronskian.
ShootResult shoot_eigenvalue(const Oscillator& osc, cplx seed, double tol = 1e-10, int max_iterations = 50);

}  // namespace cubicosc::oracle
