#include "cubicosc/series.hpp"

#include <algorithm>
#include <string>

namespace cubicosc::series {

namespace {

// Cheap magnitude for truncation tests: within a factor sqrt(2) of |z|.
Real mag(const Complex& z) { return mp::max(mp::abs(z.re), mp::abs(z.im)); }

const Complex& at(const std::vector<Complex>& v, long k, const Complex& zero) {
  return k < 0 ? zero : v[static_cast<std::size_t>(k)];
}

void check_sigma(int sigma) {
  if (sigma != 1 && sigma != -1) throw DomainError("sigma must be +1 or -1");
}

void check_i(int i) {
  if (i != 1 && i != 2) throw DomainError("Frobenius index must be 1 or 2");
}

void check_j(int j) {
  if (j != 3 && j != 4) throw DomainError("Thome index must be 3 or 4");
}

struct VRecurrence {
  int nu2;  // 2 nu
  Complex gamma, gamma_sq, beta, beta_sq, e_term;  // e_term = 2 beta gamma + 4E
  Real kappa;
  Complex four_sigma_lambda;
};

// n(n-1+2nu) c_n = 2gamma(n-1+nu) c_{n-1} - gamma^2 c_{n-2} + 2beta(n-2+nu) c_{n-3}
//   - (2 beta gamma + 4E) c_{n-4} - beta^2 c_{n-6} + kappa c_{n-8} - 4 sigma lambda c_{n-10}
void extend_v(std::vector<Complex>& c, std::size_t size, const VRecurrence& r) {
  const Complex zero;
  if (c.empty()) c.emplace_back(1);
  c.reserve(size);
  while (c.size() < size) {
    const long n = static_cast<long>(c.size());
    if (n == 2) {
      c.push_back(r.gamma_sq / 2);
      continue;
    }
    Complex rhs;
    // 2 gamma (n-1+nu) = gamma (2n-2+nu2), 2 beta (n-2+nu) = beta (2n-4+nu2)
    rhs.add_product(r.gamma, at(c, n - 1, zero) * static_cast<long>(2 * n - 2 + r.nu2));
    rhs.sub_product(r.gamma_sq, at(c, n - 2, zero));
    rhs.add_product(r.beta, at(c, n - 3, zero) * static_cast<long>(2 * n - 4 + r.nu2));
    rhs.sub_product(r.e_term, at(c, n - 4, zero));
    rhs.sub_product(r.beta_sq, at(c, n - 6, zero));
    rhs += r.kappa * at(c, n - 8, zero);
    rhs.sub_product(r.four_sigma_lambda, at(c, n - 10, zero));
    c.push_back(rhs / (n * (n - 1 + r.nu2)));
  }
}

VRecurrence v_recurrence(const ProblemSpec& spec, const ThomeExponents& exps, int sigma, int i,
                         const Complex& E) {
  VRecurrence r;
  r.nu2 = i == 1 ? -1 : 3;
  r.gamma = exps.gamma;
  r.gamma_sq = exps.gamma * exps.gamma;
  r.beta = exps.beta;
  r.beta_sq = exps.beta * exps.beta;
  r.e_term = exps.beta * exps.gamma * 2 + E * 4;
  r.kappa = spec.kappa();
  r.four_sigma_lambda = spec.lambda() * static_cast<long>(4 * sigma);
  return r;
}

}  // namespace

FrobeniusSolution frobenius(const ProblemSpec& spec, int sigma, int i, const Complex& E_in, int n_max) {
  check_sigma(sigma);
  check_i(i);
  if (n_max < 0 || n_max > spec.truncation.frobenius_max_terms) {
    throw DomainError("Frobenius depth " + std::to_string(n_max) + " outside [0, " +
                      std::to_string(spec.truncation.frobenius_max_terms) + "]");
  }
  mp::PrecisionScope scope(spec.precision.digits);
  const Complex E = E_in;
  const Complex four_e = E * 4;
  const Real kappa = spec.kappa();
  const Complex four_sigma_lambda = spec.lambda() * static_cast<long>(4 * sigma);
  FrobeniusSolution sol;
  sol.sigma = sigma;
  sol.index = i;
  const int nu2 = sol.nu_twice();
  const Complex zero;
  auto& c = sol.c;
  c.reserve(static_cast<std::size_t>(n_max) + 1);
  c.emplace_back(1);
  for (long n = 1; n <= n_max; ++n) {
    if (i == 1 && n == 2) {
      c.emplace_back(0);
      continue;
    }
    Complex rhs;
    rhs.sub_product(four_e, at(c, n - 4, zero));
    rhs += kappa * at(c, n - 8, zero);
    rhs.sub_product(four_sigma_lambda, at(c, n - 10, zero));
    // n(n - 1 + 2 nu) = n(n - 1 + nu2)
    c.push_back(rhs / (n * (n - 1 + nu2)));
  }
  return sol;
}

ThomeExponents thome_exponents(const ProblemSpec& spec, int sigma, int j) {
  check_sigma(sigma);
  check_j(j);
  mp::PrecisionScope scope(spec.precision.digits);
  const Real pi = mp::pi();
  const Real half_arg = spec.lambda_arg() / 2;
  Real arg;
  Real lo;
  Real hi;
  if (sigma == -1) {
    if (j == 3) {
      arg = half_arg - pi;
      lo = -pi;
      hi = -3 * pi / 4;
    } else {
      arg = half_arg;
      lo = Real(0);
      hi = pi / 4;
    }
  } else if (j == 3) {
    arg = half_arg + pi / 2;
    lo = pi / 2;
    hi = 3 * pi / 4;
  } else {
    arg = half_arg - pi / 2;
    lo = -pi / 2;
    hi = -pi / 4;
  }
  const Real slack = mp::pow10(-(spec.precision.digits - spec.precision.guard));
  if (arg < lo - slack || arg > hi + slack) {
    throw BranchError("arg alpha outside its sector for sigma=" + std::to_string(sigma) +
                      ", j=" + std::to_string(j));
  }
  ThomeExponents e;
  e.sigma = sigma;
  e.j = j;
  e.alpha = BranchedComplex{2 * mp::sqrt(spec.lambda_modulus()), arg};
  const Complex alpha = e.alpha.to_complex();
  e.beta = Complex(spec.kappa()) / (alpha * 2);
  e.gamma = -(e.beta * e.beta) / (alpha * 2);
  if (spec.kappa().is_zero()) {
    e.beta = Complex();
    e.gamma = Complex();
  }
  return e;
}

std::vector<Complex> thome_coefficients(const ThomeExponents& exps, const Complex& E, int m_max) {
  if (m_max < 0) throw DomainError("negative Thome depth");
  const Complex zero;
  const Complex alpha2 = exps.alpha_value() * 2;
  const Complex c1 = E * 4 + exps.beta * exps.gamma * 2;
  const Complex two_beta = exps.beta * 2;
  const Complex gamma_sq = exps.gamma * exps.gamma;
  const Complex two_gamma = exps.gamma * 2;
  const Real three_quarters = Real(3) / 4;
  std::vector<Complex> a;
  a.reserve(static_cast<std::size_t>(m_max) + 1);
  a.emplace_back(1);
  for (long m = 1; m <= m_max; ++m) {
    Complex rhs = c1 * at(a, m - 1, zero);
    rhs.sub_product(two_beta, at(a, m - 2, zero) * (m - 1));
    rhs.add_product(gamma_sq, at(a, m - 3, zero));
    rhs.sub_product(two_gamma, at(a, m - 4, zero) * (m - 2));
    rhs += at(a, m - 5, zero) * (Real((m - 2) * (m - 3)) - three_quarters);
    a.push_back(rhs / (alpha2 * m));
  }
  return a;
}

ThomeSolution thome(const ProblemSpec& spec, int sigma, int j, const Complex& E_in, int m_max) {
  if (m_max > spec.truncation.thome_max_terms) {
    throw DomainError("Thome depth " + std::to_string(m_max) + " exceeds the policy limit");
  }
  mp::PrecisionScope scope(spec.precision.digits);
  const Complex E = E_in;
  ThomeSolution sol;
  sol.exps = thome_exponents(spec, sigma, j);
  sol.a = thome_coefficients(sol.exps, E, m_max);
  return sol;
}

VCoefficients v_coefficients(const ProblemSpec& spec, int sigma, int i, int j, const Complex& E_in, int n_max) {
  check_i(i);
  if (n_max < 0) throw DomainError("negative v-coefficient depth");
  mp::PrecisionScope scope(spec.precision.digits);
  const Complex E = E_in;
  const ThomeExponents exps = thome_exponents(spec, sigma, j);
  VCoefficients v;
  v.sigma = sigma;
  v.i = i;
  v.j = j;
  extend_v(v.c_hat, static_cast<std::size_t>(n_max) + 1, v_recurrence(spec, exps, sigma, i, E));
  return v;
}

// ---------------------------------------------------------------------------

EtaSeries::EtaSeries(const ProblemSpec& spec, int sigma, int i, int j, const Complex& E)
    : digits_(spec.precision.digits), policy_(spec.truncation), sigma_(sigma), i_(i), j_(j) {
  check_i(i);
  mp::PrecisionScope scope(digits_);
  E_ = E;
  kappa_ = spec.kappa();
  four_sigma_lambda_ = spec.lambda() * static_cast<long>(4 * sigma);
  exps_ = thome_exponents(spec, sigma, j);
  alpha_ = exps_.alpha_value();
  two_beta_ = exps_.beta * 2;
  two_gamma_ = exps_.gamma * 2;
  tolerance_ = policy_.term_tolerance();
  zero_ = Complex();
}

const Complex& EtaSeries::c_hat(long k) const { return at(c_hat_, k, zero_); }

void EtaSeries::extend_c_hat(std::size_t size) {
  if (c_hat_.size() >= size) return;
  VRecurrence r;
  r.nu2 = nu_twice();
  r.gamma = exps_.gamma;
  r.gamma_sq = exps_.gamma * exps_.gamma;
  r.beta = exps_.beta;
  r.beta_sq = exps_.beta * exps_.beta;
  r.e_term = exps_.beta * exps_.gamma * 2 + E_ * 4;
  r.kappa = kappa_;
  r.four_sigma_lambda = four_sigma_lambda_;
  extend_v(c_hat_, std::max(size, c_hat_.size() + 256), r);
}

void EtaSeries::extend_a(std::size_t size) {
  if (a_.size() >= size) return;
  const auto target = std::min<std::size_t>(std::max(size, a_.size() + 256),
                                            static_cast<std::size_t>(policy_.eta_inner_max) + 1);
  a_ = thome_coefficients(exps_, E_, static_cast<int>(target) - 1);
  m_a_.clear();
  m_a_.reserve(a_.size());
  for (std::size_t m = 0; m < a_.size(); ++m) m_a_.push_back(a_[m] * static_cast<long>(m));
}

void EtaSeries::extend_p(std::size_t size) {
  if (p_.size() >= size) return;
  const std::size_t target = std::max(size, p_.size() + 256);
  extend_c_hat(target + 1);
  const int nu2 = nu_twice();
  p_.reserve(target);
  while (p_.size() < target) {
    const long k = static_cast<long>(p_.size());
    Complex p = alpha_ * c_hat(k - 4);
    p.add_product(two_beta_, c_hat(k - 2));
    p.add_product(two_gamma_, c_hat(k));
    // (k + 3 + nu) = (2k + 6 + nu2)/2
    p -= c_hat(k + 1) * static_cast<long>(2 * k + 6 + nu2) / 2;
    p_.push_back(std::move(p));
  }
}

EtaValue EtaSeries::eta(long n) {
  mp::PrecisionScope scope(digits_);
  EtaValue out;
  out.sigma = sigma_;
  out.i = i_;
  out.j = j_;
  out.n = n;
  out.truncation_estimate = Real(0);
  const long m_max = policy_.eta_inner_max;
  // Every c_hat index in the m-th term is below n + m + 2.
  const long m_start = std::max(0L, -n - 1);
  if (m_start > m_max) {
    out.value = Complex();
    return out;
  }

  Complex sum;
  Real last;
  int negligible = 0;
  bool have_best = false;
  Real best_block;
  Complex best_sum;
  long best_m = m_start;
  Real block;
  int in_block = 0;
  bool converged = false;
  bool diverged = false;
  const Real divergence_factor = mp::pow10(20);

  long m = m_start;
  for (; m <= m_max; ++m) {
    const long k = n + m;
    if (static_cast<long>(a_.size()) <= m) extend_a(static_cast<std::size_t>(m) + 1);
    if (static_cast<long>(p_.size()) <= k) extend_p(static_cast<std::size_t>(k) + 1);
    const auto mu = static_cast<std::size_t>(m);
    Complex term = a_[mu] * p_[static_cast<std::size_t>(k)];
    term.sub_product(m_a_[mu], c_hat(k + 1));
    sum += term;
    last = mag(term);
    if (last <= tolerance_ * mag(sum)) {
      if (++negligible >= 10) {
        converged = true;
        break;
      }
    } else {
      negligible = 0;
    }
    if (last > block) block = last;
    if (++in_block == 5) {
      if (!block.is_zero()) {
        if (!have_best || block < best_block) {
          have_best = true;
          best_block = block;
          best_sum = sum;
          best_m = m;
        } else if (block > best_block * divergence_factor) {
          diverged = true;
          break;
        }
      }
      block = Real(0);
      in_block = 0;
    }
  }

  out.inner_terms_used = static_cast<int>(std::min(m, m_max) - m_start + 1);
  if (converged) {
    out.value = std::move(sum);
    out.truncation_estimate = last;
    out.converged = true;
  } else if (diverged || (have_best && best_block < block)) {
    // Past the smallest term: optimal truncation.
    out.value = std::move(best_sum);
    out.truncation_estimate = best_block;
    out.inner_terms_used = static_cast<int>(best_m - m_start + 1);
    out.converged = best_block <= tolerance_ * mag(out.value);
  } else {
    out.value = std::move(sum);
    out.truncation_estimate = last;
    out.converged = last <= tolerance_ * mag(out.value);
  }
  if (mag(out.value).is_zero()) out.converged = true;
  return out;
}

EtaValue eta(const ProblemSpec& spec, int sigma, int i, int j, const Complex& E, long n) {
  EtaSeries s(spec, sigma, i, j, E);
  return s.eta(n);
}

// ---------------------------------------------------------------------------

SeriesValue frobenius_eval(const FrobeniusSolution& sol, const Real& t, const Real& term_tolerance) {
  if (t.sign() < 0) throw DomainError("Frobenius evaluation requires t >= 0");
  SeriesValue out;
  out.tail_estimate = Real(0);
  if (t.is_zero()) {
    if (sol.index == 1) throw DomainError("w_1 is singular at t = 0");
    out.value = Complex();
    out.derivative = Complex();
    out.terms_used = 1;
    return out;
  }
  Complex sum;
  Complex dsum;  // sum (n + nu) c_n t^(n-1)
  Real tn(1);   // t^n
  Real tn1 = 1 / t;
  const int nu2 = sol.nu_twice();
  int negligible = 0;
  out.converged = false;
  std::size_t n = 0;
  for (; n < sol.c.size(); ++n) {
    const Complex& c = sol.c[n];
    if (!c.is_zero()) {
      const Complex term = c * tn;
      sum += term;
      dsum += c * tn1 * static_cast<long>(2 * static_cast<long>(n) + nu2) / 2;
      out.tail_estimate = mag(term);
    }
    if (mag(c) * tn <= term_tolerance * mag(sum)) {
      if (++negligible >= 10) {
        out.converged = true;
        break;
      }
    } else {
      negligible = 0;
    }
    tn1 = tn;
    tn *= t;
  }
  out.terms_used = static_cast<int>(std::min(n + 1, sol.c.size()));
  const Real nu = sol.nu();
  const Real tnu = mp::pow(t, nu);
  out.value = sum * tnu;
  out.derivative = dsum * tnu;
  return out;
}

Complex thome_phase(const ThomeExponents& exps, const Real& t) {
  const Real t2 = t * t;
  const Real t3 = t2 * t;
  const Real t5 = t3 * t2;
  Complex phase = exps.alpha_value() * (t5 / 5);
  phase += exps.beta * (t3 / 3);
  phase += exps.gamma * t;
  return phase;
}

SeriesValue thome_eval(const ThomeSolution& sol, const Real& t, const Real& tolerance) {
  if (!(t.sign() > 0)) throw DomainError("Thome evaluation requires t > 0");
  const Real inv = 1 / t;
  Complex sum;
  Complex dsum;  // d/dt sum a_m t^-m
  Real tm(1);    // t^-m
  int negligible = 0;
  bool converged = false;
  bool have_best = false;
  Real best_block;
  Complex best_sum;
  Complex best_dsum;
  std::size_t best_m = 0;
  Real block;
  Real last;
  int in_block = 0;
  const Real growth = Real(1000);
  std::size_t m = 0;
  bool past_minimum = false;
  for (; m < sol.a.size(); ++m) {
    const Complex term = sol.a[m] * tm;
    sum += term;
    if (m > 0) dsum -= term * inv * static_cast<long>(m);
    last = mag(term);
    if (last <= tolerance * mag(sum) * Real("1e-3")) {
      if (++negligible >= 10) {
        converged = true;
        break;
      }
    } else {
      negligible = 0;
    }
    if (last > block) block = last;
    if (++in_block == 5) {
      if (!have_best || block < best_block) {
        have_best = true;
        best_block = block;
        best_sum = sum;
        best_dsum = dsum;
        best_m = m;
      } else if (block > best_block * growth) {
        past_minimum = true;
        break;
      }
      block = Real(0);
      in_block = 0;
    }
    tm *= inv;
  }

  SeriesValue out;
  Real estimate;
  if (converged) {
    estimate = last;
    out.terms_used = static_cast<int>(m + 1);
  } else if (have_best && (past_minimum || best_block < block)) {
    sum = best_sum;
    dsum = best_dsum;
    estimate = best_block;
    out.terms_used = static_cast<int>(best_m + 1);
  } else {
    estimate = last;
    out.terms_used = static_cast<int>(sol.a.size());
  }
  out.tail_estimate = estimate;
  out.converged = estimate <= tolerance * mag(sum);
  if (!out.converged) {
    throw AsymptoticRegimeError("asymptotic series cannot reach tolerance at t = " + t.str(8) +
                                " (smallest term " + estimate.str(3) + ")");
  }
  const Complex pre = mp::exp(thome_phase(sol.exps, t)) * (inv * inv);
  const Real t2 = t * t;
  Complex dphase = sol.exps.alpha_value() * (t2 * t2);
  dphase += sol.exps.beta * t2;
  dphase += sol.exps.gamma;
  // d/dt [e^phase t^-2 S] = e^phase t^-2 (phase' S - 2 S / t + S')
  Complex d = dphase * sum;
  d -= sum * inv * 2;
  d += dsum;
  out.value = pre * sum;
  out.derivative = pre * d;
  return out;
}

}  // namespace cubicosc::series
