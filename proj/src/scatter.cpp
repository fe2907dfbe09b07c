#include "cubicosc/scatter.hpp"

#include <algorithm>
#include <cmath>

namespace cubicosc::scatter {

namespace {

void require_real_lambda(const ProblemSpec& spec) {
  if (!spec.on_stokes_ray()) throw DomainError("scattering needs real lambda (arg lambda = 0)");
}

double phase_step(const Complex& from, const Complex& to) { return mp::arg(to / from).to_double(); }

}  // namespace

ScatteringValue scattering_function(const ProblemSpec& spec, const Complex& E_in) {
  mp::PrecisionScope scope(spec.precision.digits);
  require_real_lambda(spec);
  const auto T = connection::connection_matrix(spec, E_in);
  ScatteringValue v;
  v.E = E_in;
  v.numerator = T.T(1, 3, 1) * T.T(2, 4, -1) + T.T(2, 3, 1) * T.T(1, 4, -1);
  const Complex a = T.T(1, 4, 1) * T.T(2, 4, -1);
  const Complex b = T.T(2, 4, 1) * T.T(1, 4, -1);
  v.denominator = a + b;
  const Real floor = mp::max(T.error_estimate, Tolerances::noise(spec.precision)) * 100;
  v.near_pole = mp::abs(v.denominator) <= floor * (mp::abs(a) + mp::abs(b));
  if (!v.denominator.is_zero()) v.S = -(v.numerator / v.denominator);
  return v;
}

Complex s_matrix(const ProblemSpec& spec, const Real& E) {
  mp::PrecisionScope scope(spec.precision.digits);
  auto v = scattering_function(spec, Complex(E));
  if (v.near_pole) throw ConvergenceError("S(E) evaluated on a pole: D(E) is at the noise floor");
  return v.S;
}

std::vector<double> linear_grid(double a, double b, int n) {
  if (n < 2 || !(b > a)) throw DomainError("grid needs at least two points on an increasing interval");
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) g[k] = a + (b - a) * k / (n - 1);
  return g;
}

ScatterCurve phase_shift_curve(const ProblemSpec& spec, const std::vector<double>& grid) {
  require_real_lambda(spec);
  if (grid.empty()) throw DomainError("empty energy grid");
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (!(grid[k] > grid[k - 1])) throw DomainError("energy grid must be strictly increasing");
  }
  mp::PrecisionScope scope(spec.precision.digits);
  ScatterCurve c(spec);
  c.E = grid;
  for (double e : grid) {
    auto v = scattering_function(spec, Complex(Real(e)));
    c.S.push_back(v.S);
    c.near_pole.push_back(v.near_pole);
  }

  const double pi = M_PI;
  double d0 = 0.5 * mp::arg(c.S.front()).to_double();
  d0 = std::fmod(d0, pi);
  if (d0 < 0) d0 += pi;
  c.delta.push_back(d0);
  for (std::size_t k = 1; k < grid.size(); ++k) {
    double step = phase_step(c.S[k - 1], c.S[k]);
    if (std::abs(step) >= pi / 2) {
      const double mid = 0.5 * (grid[k - 1] + grid[k]);
      const Complex s_mid = scattering_function(spec, Complex(Real(mid))).S;
      const double a = phase_step(c.S[k - 1], s_mid);
      const double b = phase_step(s_mid, c.S[k]);
      ++c.refinements;
      if (std::abs(a) >= pi / 2 || std::abs(b) >= pi / 2) {
        throw ConvergenceError("phase of S jumps by pi/2 or more between E = " + decimal_text(grid[k - 1]) +
                               " and " + decimal_text(grid[k]) + " even after bisection; refine the grid");
      }
      step = a + b;
    }
    c.delta.push_back(c.delta.back() + 0.5 * step);
  }
  return c;
}

void time_delay_curve(ScatterCurve& c) {
  const std::size_t n = c.E.size();
  c.time_delay.assign(n, 0.0);
  c.stencil_step = 0;
  if (n < 2) return;
  const auto& x = c.E;
  const auto& f = c.delta;
  for (std::size_t k = 1; k < n; ++k) c.stencil_step = std::max(c.stencil_step, x[k] - x[k - 1]);
  c.time_delay[0] = 2 * (f[1] - f[0]) / (x[1] - x[0]);
  c.time_delay[n - 1] = 2 * (f[n - 1] - f[n - 2]) / (x[n - 1] - x[n - 2]);
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const double h1 = x[k] - x[k - 1];
    const double h2 = x[k + 1] - x[k];
    const double d = h2 / (h1 * (h1 + h2)) * (f[k] - f[k - 1]) + h1 / (h2 * (h1 + h2)) * (f[k + 1] - f[k]);
    c.time_delay[k] = 2 * d;
  }
}

std::vector<std::size_t> time_delay_peaks(const ScatterCurve& c, double threshold) {
  std::vector<std::size_t> out;
  const auto& t = c.time_delay;
  for (std::size_t k = 1; k + 1 < t.size(); ++k) {
    if (t[k] > threshold && t[k] > t[k - 1] && t[k] >= t[k + 1]) out.push_back(k);
  }
  return out;
}

std::vector<Resonance> resonances_from_curve(const ScatterCurve& c, double threshold) {
  std::vector<Resonance> out;
  const auto& t = c.time_delay;
  const auto& x = c.E;
  for (std::size_t k : time_delay_peaks(c, threshold)) {
    Resonance r;
    r.E_peak = x[k];
    r.time_delay = t[k];
    const double half = t[k] / 2;
    // Half-maximum crossings, linearly interpolated.
    double left = -1;
    double right = -1;
    for (std::size_t j = k; j > 0; --j) {
      if (t[j - 1] <= half) {
        left = x[j - 1] + (half - t[j - 1]) / (t[j] - t[j - 1]) * (x[j] - x[j - 1]);
        break;
      }
    }
    for (std::size_t j = k; j + 1 < t.size(); ++j) {
      if (t[j + 1] <= half) {
        right = x[j] + (t[j] - half) / (t[j] - t[j + 1]) * (x[j + 1] - x[j]);
        break;
      }
    }
    if (left >= 0 && right >= 0) {
      r.width = right - left;
    } else if (left >= 0) {
      r.width = 2 * (r.E_peak - left);
    } else if (right >= 0) {
      r.width = 2 * (right - r.E_peak);
    } else {
      // No half-maximum inside the window; a Lorentzian of this height.
      r.width = 4 / r.time_delay;
    }
    mp::PrecisionScope scope(c.spec.precision.digits);
    const Complex seed(Real(r.E_peak), Real(-r.width / 2));
    r.gamow = spectrum::find_eigenvalue(c.spec, seed, Real(0));
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Resonance> resonance_scan(const ProblemSpec& spec, double E_min, double E_max, int points,
                                      double threshold) {
  auto c = phase_shift_curve(spec, linear_grid(E_min, E_max, points));
  time_delay_curve(c);
  return resonances_from_curve(c, threshold);
}

}  // namespace cubicosc::scatter
