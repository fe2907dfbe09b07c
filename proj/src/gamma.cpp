#include <gmpxx.h>

#include <cmath>
#include <memory>
#include <mutex>
#include <vector>

#include "cubicosc/mparith.hpp"

namespace cubicosc::mp {

namespace {

// Exact Bernoulli numbers B_0..B_n (B_1 = +1/2 convention; only even
// indices are used) by the Akiyama-Tanigawa transform.
std::vector<mpq_class> bernoulli_numbers(std::size_t n) {
  std::vector<mpq_class> out(n + 1);
  std::vector<mpq_class> a(n + 1);
  for (std::size_t m = 0; m <= n; ++m) {
    a[m] = mpq_class(1, static_cast<unsigned long>(m + 1));
    for (std::size_t j = m; j >= 1; --j) {
      a[j - 1] = mpq_class(static_cast<unsigned long>(j)) * (a[j - 1] - a[j]);
      a[j - 1].canonicalize();
    }
    out[m] = a[0];
  }
  return out;
}

// Grow-only cache; readers keep their snapshot alive.
std::shared_ptr<const std::vector<mpq_class>> bernoulli_table(std::size_t n) {
  static std::mutex mutex;
  static std::shared_ptr<const std::vector<mpq_class>> table;
  std::lock_guard<std::mutex> lock(mutex);
  if (!table || table->size() <= n) {
    const std::size_t size = std::max<std::size_t>(n, table ? 2 * table->size() : n);
    table = std::make_shared<const std::vector<mpq_class>>(bernoulli_numbers(size));
  }
  return table;
}

Real to_real(const mpq_class& q) {
  Real r;
  mpfr_set_q(r.raw(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

}  // namespace

Real gamma_real(const Real& x) {
  if (!x.is_finite() || x.sign() <= 0) {
    throw DomainError("gamma_real requires a positive finite argument");
  }
  const int digits = working_digits() + 12;
  Real inner_result = [&] {
    PrecisionScope scope(digits);
    const Real xx = x;
    // Shift so that the Stirling series' smallest term, ~exp(-2 pi z),
    // lies below 10^-digits.
    const double z_min = digits * std::log(10.0) / (2.0 * M_PI) + 2.0;
    const long shift = std::max(0L, static_cast<long>(std::ceil(z_min - xx.to_double())));
    const Real z = xx + shift;

    Real lg = (z - Real("0.5")) * log(z) - z + log(2 * pi()) / 2;
    const Real eps = pow10(-digits);
    const Real z2 = z * z;
    Real zpow = z;  // z^(2k-1)
    const auto max_k = static_cast<std::size_t>(M_PI * z_min) + 4;
    const auto bern = bernoulli_table(2 * max_k + 2);
    bool converged = false;
    for (std::size_t k = 1; k <= max_k; ++k) {
      Real term = to_real((*bern)[2 * k]) / (zpow * static_cast<long>(2 * k * (2 * k - 1)));
      lg += term;
      if (abs(term) < eps) {
        converged = true;
        break;
      }
      zpow *= z2;
    }
    if (!converged) throw ConvergenceError("Stirling series did not converge");

    Real product(1);
    for (long k = 0; k < shift; ++k) product *= xx + k;
    return Real(exp(lg) / product);
  }();
  return Real(inner_result);
}

}  // namespace cubicosc::mp
