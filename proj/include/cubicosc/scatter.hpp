#pragma once

// Scattering by the real cubic barrier (arg lambda = 0): the particle comes in
// from the right and is totally reflected.

#include <vector>

#include "cubicosc/spectrum.hpp"

namespace cubicosc::scatter {

/// S = -N/D with N = T13+ T24- + T23+ T14-, D = T14+ T24- + T24+ T14-.
struct ScatteringValue {
  Complex E;
  Complex numerator;
  Complex denominator;
  Complex S;
  /// |D| relative to its two products is at the noise floor: E sits on a pole.
  bool near_pole = false;
};

/// Valid for any complex E (used for pole and conjugation checks). Throws
/// DomainError unless arg lambda = 0.
ScatteringValue scattering_function(const ProblemSpec& spec, const Complex& E);

/// S(E) at real E.
Complex s_matrix(const ProblemSpec& spec, const Real& E);

struct ScatterCurve {
  explicit ScatterCurve(ProblemSpec s) : spec(std::move(s)) {}

  ProblemSpec spec;
  std::vector<double> E;
  std::vector<Complex> S;
  std::vector<double> delta;
  std::vector<double> time_delay;  // hbar = 1
  std::vector<bool> near_pole;
  /// Largest grid spacing entering the difference stencil.
  double stencil_step = 0;
  /// Midpoints inserted while unwrapping.
  int refinements = 0;
};

/// Samples S on an increasing grid and unwraps delta = arg S / 2 along it,
/// with delta at the first grid point in [0, pi). A step whose phase change
/// is pi/2 or more is bisected once; if that does not resolve it the grid is
/// too coarse and ConvergenceError is thrown.
ScatterCurve phase_shift_curve(const ProblemSpec& spec, const std::vector<double>& grid);

/// Fills time_delay = 2 d delta/dE: three-point differences on the
/// (possibly uneven) grid, one-sided at the ends.
void time_delay_curve(ScatterCurve& curve);

/// n evenly spaced points on [a, b].
std::vector<double> linear_grid(double a, double b, int n);

/// Interior local maxima of the time delay above threshold.
std::vector<std::size_t> time_delay_peaks(const ScatterCurve& curve, double threshold);

struct Resonance {
  double E_peak = 0;
  /// Full width at half maximum of the time-delay hump (from one side if the
  /// other leaves the window).
  double width = 0;
  double time_delay = 0;
  spectrum::EigenResult gamow;
};

/// Peaks of the time delay above threshold in [E_min, E_max], each paired
/// with the Gamow energy found from the seed E_peak - i width/2.
std::vector<Resonance> resonance_scan(const ProblemSpec& spec, double E_min, double E_max, int points,
                                      double threshold);
std::vector<Resonance> resonances_from_curve(const ScatterCurve& curve, double threshold);

}  // namespace cubicosc::scatter
