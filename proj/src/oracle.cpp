#include "cubicosc/oracle.hpp"

#include <array>
#include <cmath>

#include <boost/numeric/odeint.hpp>

namespace cubicosc::oracle {

namespace odeint = boost::numeric::odeint;

namespace {

// (Re y, Im y, Re y', Im y')
using State = std::array<double, 4>;

State pack(cplx y, cplx dy) { return {y.real(), y.imag(), dy.real(), dy.imag()}; }
cplx value(const State& s) { return {s[0], s[1]}; }
cplx slope(const State& s) { return {s[2], s[3]}; }

// y'' = q(s) y
template <class Q>
struct Linear {
  Q q;
  void operator()(const State& s, State& ds, double r) const {
    const cplx acc = q(r) * value(s);
    ds = {s[2], s[3], acc.real(), acc.imag()};
  }
};

template <class Q>
Linear<Q> linear(Q q) {
  return Linear<Q>{std::move(q)};
}

struct Tracker {
  double peak = 0;
  int steps = 0;
  void operator()(const State& s, double) {
    peak = std::max(peak, std::abs(value(s)));
    ++steps;
  }
};

auto w_coefficient(const Oscillator& osc, int sigma, cplx E) {
  if (sigma != 1 && sigma != -1) throw OracleError("sigma must be +1 or -1");
  return [=](double t) {
    const double t2 = t * t;
    const double t4 = t2 * t2;
    const double t6 = t4 * t2;
    const double t8 = t4 * t4;
    return -(4.0 * sigma * osc.lambda * t8 - osc.kappa * t6 + 4.0 * E * t2 - 0.75 / t2);
  };
}

void check_interval(double a, double b) {
  if (!(a > 0) || !(b > 0)) throw OracleError("the w equation is integrated on t > 0 only");
}

// Potential seen by a shot on `side`: V(x) - E for side > 0, V(-y) - E for side < 0.
struct Ray {
  double kappa;
  cplx lambda;
  double sign;  // coefficient of the cubic term
  cplx dir;     // e^{i angle}
  double angle;
  cplx E;

  [[nodiscard]] cplx q(double r) const {
    const cplx x = r * dir;
    return dir * dir * (kappa * x * x / 4.0 + sign * lambda * x * x * x - E);
  }
  [[nodiscard]] cplx dq(double r) const {
    const cplx x = r * dir;
    return dir * dir * dir * (kappa * x / 2.0 + 3.0 * sign * lambda * x * x);
  }
};

Ray make_ray(const Oscillator& osc, int side, cplx E) {
  const double arg = std::arg(osc.lambda);
  Ray ray{osc.kappa, osc.lambda, 0, {}, 0, E};
  if (side > 0) {
    ray.sign = -1;
    ray.angle = (M_PI - arg) / 5;
  } else if (side < 0) {
    ray.sign = 1;
    ray.angle = -arg / 5;
  } else {
    throw OracleError("side must be +1 or -1");
  }
  ray.dir = std::polar(1.0, ray.angle);
  return ray;
}

}  // namespace

Oscillator Oscillator::from_polar(double kappa, double modulus, double arg_over_pi) {
  if (!(modulus > 0)) throw OracleError("lambda must be nonzero");
  if (arg_over_pi < 0 || arg_over_pi > 0.5) throw OracleError("arg lambda / pi must lie in [0, 1/2]");
  return {kappa, std::polar(modulus, M_PI * arg_over_pi)};
}

OdeResult integrate_ode(const Oscillator& osc, int sigma, cplx E, double t_start, double t_end, cplx w0, cplx dw0,
                        const OdeOptions& options) {
  check_interval(t_start, t_end);
  // The equation is linear: integrate data of unit size so the absolute
  // tolerance means the same thing at every amplitude.
  const double scale = std::max(std::abs(w0), std::abs(dw0));
  OdeResult out;
  if (scale == 0) return out;
  State s = pack(w0 / scale, dw0 / scale);
  if (t_start == t_end) {
    out.value = w0;
    out.derivative = dw0;
    return out;
  }
  auto stepper = odeint::make_controlled(options.abs_tol, options.rel_tol,
                                         odeint::runge_kutta_fehlberg78<State>());
  Tracker track;
  const double dt = (t_end - t_start) * 1e-3;
  try {
    odeint::integrate_adaptive(stepper, linear(w_coefficient(osc, sigma, E)), s, t_start, t_end, dt, std::ref(track));
  } catch (const odeint::step_adjustment_error& e) {
    throw OracleError(std::string("step size underflow: ") + e.what());
  }
  out.value = value(s) * scale;
  out.derivative = slope(s) * scale;
  out.steps = track.steps;
  const double ends = std::max(std::abs(w0), std::abs(out.value)) / scale;
  out.growth = ends > 0 ? track.peak / ends : 0;
  return out;
}

OdeResult integrate_ode_fixed(const Oscillator& osc, int sigma, cplx E, double t_start, double t_end, cplx w0,
                              cplx dw0, int steps) {
  check_interval(t_start, t_end);
  if (steps < 1) throw OracleError("need at least one step");
  State s = pack(w0, dw0);
  odeint::runge_kutta4<State> stepper;
  const double h = (t_end - t_start) / steps;
  odeint::integrate_n_steps(stepper, linear(w_coefficient(osc, sigma, E)), s, t_start, h,
                            static_cast<std::size_t>(steps));
  OdeResult out;
  out.value = value(s);
  out.derivative = slope(s);
  out.steps = steps;
  return out;
}

double observed_order(const Oscillator& osc, int sigma, cplx E, double t_start, double t_end, cplx w0, cplx dw0,
                      int n) {
  const cplx a = integrate_ode_fixed(osc, sigma, E, t_start, t_end, w0, dw0, n).value;
  const cplx b = integrate_ode_fixed(osc, sigma, E, t_start, t_end, w0, dw0, 2 * n).value;
  const cplx c = integrate_ode_fixed(osc, sigma, E, t_start, t_end, w0, dw0, 4 * n).value;
  return std::log2(std::abs(a - b) / std::abs(b - c));
}

double start_radius(const Oscillator& osc, int side, cplx E) {
  const Ray ray = make_ray(osc, side, E);
  // Accumulate the decay exponent int Re sqrt(q) dr until it reaches 30.
  const double h = 1e-3;
  double exponent = 0;
  double r = 0;
  double prev = std::sqrt(ray.q(0)).real();
  while (exponent < 30) {
    r += h;
    const double cur = std::sqrt(ray.q(r)).real();
    exponent += 0.5 * h * (prev + cur);
    prev = cur;
    if (r > 1e4) throw OracleError("no decay along the shooting ray");
  }
  return r;
}

Shot shoot(const Oscillator& osc, int side, cplx E, double radius, const OdeOptions& options) {
  const Ray ray = make_ray(osc, side, E);
  Shot shot;
  shot.ray_angle = ray.angle;
  shot.start_radius = radius > 0 ? radius : start_radius(osc, side, E);
  const double R = shot.start_radius;

  // WKB: psi = Q^{-1/4} exp(-int sqrt Q), scaled to psi(R) = 1.
  const cplx q = ray.q(R);
  const cplx dpsi = -(std::sqrt(q) + ray.dq(R) / (4.0 * q));
  State s = pack(1.0, dpsi);
  auto stepper = odeint::make_controlled(options.abs_tol, options.rel_tol,
                                         odeint::runge_kutta_fehlberg78<State>());
  Tracker track;
  try {
    odeint::integrate_adaptive(stepper, linear([&](double r) { return ray.q(r); }), s, R, 0.0, -R * 1e-3,
                               std::ref(track));
  } catch (const odeint::step_adjustment_error& e) {
    throw OracleError(std::string("step size underflow: ") + e.what());
  }
  // d/dx along the ray, then back to x for the left side.
  const cplx d = slope(s) / ray.dir;
  shot.psi = value(s);
  shot.dpsi = side > 0 ? d : -d;
  shot.steps = track.steps;
  shot.growth = track.peak;
  shot.unstable = std::abs(shot.psi) < 1e-3 * track.peak && std::abs(d) * R < 1e-3 * track.peak;
  return shot;
}

namespace {

struct Matcher {
  const Oscillator& osc;
  double right_radius;
  double left_radius;
  OdeOptions options;
  int steps = 0;
  bool unstable = false;

  cplx raw(cplx E, cplx* scaled) {
    const Shot r = shoot(osc, 1, E, right_radius, options);
    const Shot l = shoot(osc, -1, E, left_radius, options);
    steps += r.steps + l.steps;
    unstable = unstable || r.unstable || l.unstable;
    const cplx a = r.psi * l.dpsi;
    const cplx b = r.dpsi * l.psi;
    if (scaled) *scaled = (a - b) / (std::abs(a) + std::abs(b));
    return a - b;
  }
};

}  // namespace

cplx matching_mismatch(const Oscillator& osc, cplx E, const OdeOptions& options) {
  Matcher m{osc, start_radius(osc, 1, E), start_radius(osc, -1, E), options};
  cplx scaled;
  m.raw(E, &scaled);
  return scaled;
}

ShootResult shoot_eigenvalue(const Oscillator& osc, cplx seed, double tol, int max_iterations) {
  // Fixed start radii keep the matching function analytic in E.
  Matcher m{osc, start_radius(osc, 1, seed), start_radius(osc, -1, seed), {}};
  cplx x0 = seed * (1.0 + 1e-4) + cplx(1e-4, 1e-4);
  cplx x1 = seed;
  cplx f0 = m.raw(x0, nullptr);
  cplx scaled;
  cplx f1 = m.raw(x1, &scaled);
  ShootResult out;
  for (int it = 1; it <= max_iterations; ++it) {
    if (f1 == f0) break;
    const cplx step = -f1 * (x1 - x0) / (f1 - f0);
    x0 = x1;
    f0 = f1;
    x1 += step;
    f1 = m.raw(x1, &scaled);
    out.iterations = it;
    if (std::abs(step) <= tol * std::max(1.0, std::abs(x1))) {
      out.E = x1;
      out.mismatch = scaled;
      out.steps = m.steps;
      out.unstable = m.unstable;
      return out;
    }
  }
  throw OracleError("shooting did not converge from seed (" + std::to_string(seed.real()) + ", " +
                    std::to_string(seed.imag()) + ")");
}

}  // namespace cubicosc::oracle
