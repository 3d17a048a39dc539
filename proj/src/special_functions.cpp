#include "qflow/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qflow/error.hpp"

namespace qflow {

PolyDegree::PolyDegree(int n) : n_(n) {
  if (n < 0 || n > kMaxDegree) {
    throw Error(Errc::degree_out_of_range,
                "degree " + std::to_string(n) + " outside [0, " +
                    std::to_string(kMaxDegree) + "]");
  }
}

double hermite(PolyDegree n, double x) {
  if (!std::isfinite(x)) {
    throw Error(Errc::argument_out_of_domain, "hermite: non-finite argument");
  }
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * x * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double assoc_legendre(PolyDegree l, PolyDegree m_abs, double x) {
  if (m_abs > l) {
    throw Error(Errc::degree_out_of_range,
                "assoc_legendre: m_abs " + std::to_string(m_abs.value()) +
                    " exceeds l " + std::to_string(l.value()));
  }
  if (!(x >= -1.0 && x <= 1.0)) {
    throw Error(Errc::argument_out_of_domain,
                "assoc_legendre: argument outside [-1, 1]");
  }
  const int m = m_abs;
  // P_m^m = (2m-1)!! (1-x^2)^{m/2}
  double pmm = 1.0;
  if (m > 0) {
    const double s = std::sqrt((1.0 - x) * (1.0 + x));
    double odd = 1.0;
    for (int i = 1; i <= m; ++i) {
      pmm *= odd * s;
      odd += 2.0;
    }
  }
  if (l == m) return pmm;

  double pmm1 = x * (2.0 * m + 1.0) * pmm;
  for (int k = m + 2; k <= l; ++k) {
    const double pk = (x * (2.0 * k - 1.0) * pmm1 - (k + m - 1.0) * pmm) / (k - m);
    pmm = pmm1;
    pmm1 = pk;
  }
  return pmm1;
}

double oscillator_norm(PolyDegree n, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error(Errc::argument_out_of_domain,
                "oscillator_norm: alpha must be positive");
  }
  // 2^n n! stays finite for n <= 64 (about 1e108).
  double denom = std::sqrt(std::numbers::pi);
  for (int k = 1; k <= n; ++k) denom *= 2.0 * k;
  return std::sqrt(alpha / denom);
}

}  // namespace qflow
