#include "cubicosc/spectrum.hpp"

#include <algorithm>
#include <cmath>

namespace cubicosc::spectrum {

namespace {

struct Evaluation {
  Complex F;
  Real scale;  // |T14+ T24-| + |T24+ T14-|
  Real noise;  // relative
};

Evaluation evaluate(const ProblemSpec& spec, const Complex& E) {
  const auto r = connection::recessive_factors(spec, E);
  const Complex a = r.T14_plus * r.T24_minus;
  const Complex b = r.T24_plus * r.T14_minus;
  Evaluation e;
  e.F = a + b;
  e.scale = mp::abs(a) + mp::abs(b);
  e.noise = r.error_estimate;
  return e;
}

Real relative(const Evaluation& e) { return e.scale.is_zero() ? Real(0) : mp::abs(e.F) / e.scale; }

Real magnitude_floor(const Complex& E) { return mp::max(Real(1), mp::abs(E)); }

}  // namespace

Complex eigencondition(const ProblemSpec& spec, const Complex& E) {
  mp::PrecisionScope scope(spec.precision.digits);
  return evaluate(spec, E).F;
}

EigenResult find_eigenvalue(const ProblemSpec& spec, const Complex& seed_in, const Real& tol_in,
                            const SolverOptions& options) {
  mp::PrecisionScope scope(spec.precision.digits);
  const Complex seed = seed_in;
  const Real tol = tol_in.sign() > 0 ? Real(tol_in) : Tolerances::identity(spec.precision);
  const Real box = mp::abs(seed) * 100 + 100;

  EigenResult out;
  out.seed_used = seed;

  auto finish = [&](const Complex& E, const Evaluation& ev, const Real& last_step, int iterations) {
    out.E = E;
    out.residual = mp::abs(ev.F);
    out.relative_residual = relative(ev);
    out.iterations = iterations;
    out.error_estimate = mp::max(ev.noise, last_step / magnitude_floor(E));
    return out;
  };

  Complex x1 = seed;
  Evaluation f1 = evaluate(spec, x1);
  const Real noise_floor = f1.noise * 100;
  if (relative(f1) <= mp::max(tol, noise_floor) * Real("1e-2")) return finish(x1, f1, Real(0), 0);

  const Real h = magnitude_floor(seed) * Real("1e-6");
  Complex x0 = seed + Complex(h, h);
  Evaluation f0 = evaluate(spec, x0);
  Complex xm;  // third point for Muller steps
  Evaluation fm;
  bool have_third = false;
  Real best = relative(f1);
  int stalled = 0;

  for (int it = 1; it <= options.max_iterations; ++it) {
    Complex step;
    const bool muller = have_third && stalled >= options.stagnation_limit;
    if (muller) {
      // Quadratic through (xm, x0, x1); root nearest x1.
      const Complex h1 = x0 - xm;
      const Complex h2 = x1 - x0;
      const Complex d1 = (f0.F - fm.F) / h1;
      const Complex d2 = (f1.F - f0.F) / h2;
      const Complex a = (d2 - d1) / (h2 + h1);
      const Complex b = a * h2 + d2;
      const Complex disc = mp::sqrt(b * b - a * f1.F * 4);
      const Complex p = b + disc;
      const Complex m = b - disc;
      const Complex den = mp::abs(p) >= mp::abs(m) ? p : m;
      step = den.is_zero() ? Complex(h) : -(f1.F * 2) / den;
      stalled = 0;
    } else {
      const Complex df = f1.F - f0.F;
      if (df.is_zero()) {
        if (relative(f1) <= mp::max(tol, noise_floor)) return finish(x1, f1, Real(0), it - 1);
        throw ConvergenceError("secant iteration stalled: F(E) unchanged between iterates");
      }
      step = -(f1.F * (x1 - x0) / df);
    }
    Complex x2 = x1 + step;
    if (mp::abs(x2) > box) {
      throw ConvergenceError("eigenvalue iteration left the search region |E| <= " + box.str(6) +
                             " (seed " + seed.re.str(8) + ", " + seed.im.str(8) + ")");
    }
    Evaluation f2 = evaluate(spec, x2);
    const Real step_size = mp::abs(step);
    const Real rel2 = relative(f2);

    xm = std::move(x0);
    fm = std::move(f0);
    have_third = true;
    x0 = std::move(x1);
    f0 = std::move(f1);
    x1 = std::move(x2);
    f1 = std::move(f2);

    const bool small_step = step_size <= tol * magnitude_floor(x1);
    if ((small_step && rel2 <= mp::max(tol, noise_floor)) || rel2 <= noise_floor) {
      return finish(x1, f1, step_size, it);
    }
    if (rel2 < best) {
      best = rel2;
      stalled = 0;
    } else {
      ++stalled;
    }
  }
  throw ConvergenceError("eigenvalue iteration did not converge in " + std::to_string(options.max_iterations) +
                         " steps (last relative residual " + relative(f1).str(3) + ")");
}

Complex symanzik_scale(const Complex& E_ref, const Complex& lambda) {
  // lambda e^{-i pi/2} = -i lambda, principal branch of the 2/5 power.
  const Complex rotated(lambda.im, -lambda.re);
  return mp::pow(rotated, Real(2) / 5) * E_ref;
}

double pure_cubic_estimate(int level) {
  if (level < 1) throw DomainError("levels are numbered from 1");
  const double n = level - 1;
  const double base = std::tgamma(11.0 / 6.0) * std::sqrt(M_PI) * (n + 0.5) /
                      (std::sin(M_PI / 3.0) * std::tgamma(4.0 / 3.0));
  return std::pow(base, 1.2);
}

std::vector<Complex> pure_cubic_reference(int levels, const mp::Precision& precision) {
  const auto spec = ProblemSpec::from_polar("0", "1", "0.5", precision);
  mp::PrecisionScope scope(precision.digits);
  std::vector<Complex> out;
  for (int k = 1; k <= levels; ++k) {
    const auto r = find_eigenvalue(spec, Complex(Real(pure_cubic_estimate(k))), Real(0));
    out.push_back(r.E);
  }
  return out;
}

SpectrumTable trace_levels(std::string_view kappa, std::string_view lambda_modulus, int levels,
                           const std::vector<std::string>& grid, const TraceOptions& options) {
  if (levels < 1) throw DomainError("need at least one level");
  if (grid.empty()) throw DomainError("empty arg lambda grid");
  mp::PrecisionScope scope(options.precision.digits);
  SpectrumTable table;
  table.kappa = std::string(kappa);
  table.lambda_modulus = std::string(lambda_modulus);

  const auto start = ProblemSpec::from_polar(kappa, lambda_modulus, grid.front(), options.precision);
  std::vector<Complex> seeds = options.seeds;
  if (seeds.empty()) {
    for (const auto& ref : pure_cubic_reference(levels, options.precision)) {
      seeds.push_back(symanzik_scale(ref, start.lambda()));
    }
  }
  if (static_cast<int>(seeds.size()) < levels) throw DomainError("fewer seeds than levels");

  std::vector<std::vector<Complex>> path(static_cast<std::size_t>(levels));
  std::vector<EigenResult> first;
  for (int k = 0; k < levels; ++k) first.push_back(find_eigenvalue(start, seeds[k], options.tol));
  std::sort(first.begin(), first.end(), [](const EigenResult& a, const EigenResult& b) { return a.E.re < b.E.re; });
  for (int k = 0; k + 1 < levels; ++k) {
    if (mp::abs(first[k].E - first[k + 1].E) <= Real("1e-6") * magnitude_floor(first[k].E)) {
      throw ConvergenceError("two seeds converged to the same eigenvalue at arg lambda/pi = " + grid.front());
    }
  }
  for (int k = 0; k < levels; ++k) {
    path[k].push_back(first[k].E);
    table.rows.push_back({grid.front(), k + 1, first[k]});
  }

  for (std::size_t s = 1; s < grid.size(); ++s) {
    const auto spec = ProblemSpec::from_polar(kappa, lambda_modulus, grid[s], options.precision);
    const Real a_prev(grid[s - 1]);
    const Real a_now(grid[s]);
    for (int k = 0; k < levels; ++k) {
      auto& p = path[k];
      Complex seed = p.back();
      if (p.size() >= 2) {
        const Real a_prev2(grid[s - 2]);
        const Real ratio = (a_now - a_prev) / (a_prev - a_prev2);
        seed = p.back() + (p.back() - p[p.size() - 2]) * ratio;
      }
      EigenResult r;
      try {
        r = find_eigenvalue(spec, seed, options.tol);
      } catch (const ConvergenceError& e) {
        throw ConvergenceError("continuation of level " + std::to_string(k + 1) + " broke at arg lambda/pi = " +
                               grid[s] + " (" + e.what() + "); use a finer grid");
      }
      p.push_back(r.E);
      table.rows.push_back({grid[s], k + 1, r});
    }
  }
  return table;
}

std::vector<SectorImage> reflect_sector(const Complex& lambda, const Complex& E) {
  std::vector<SectorImage> out;
  out.push_back({mp::conj(lambda), mp::conj(E), true, false});
  out.push_back({-lambda, E, false, true});
  out.push_back({-mp::conj(lambda), mp::conj(E), true, true});
  return out;
}

}  // namespace cubicosc::spectrum
