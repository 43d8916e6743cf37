#include "lgcy/series1d.hpp"

#include <mutex>
#include <stdexcept>

namespace lgcy {

RSeries rseriesMul(const RSeries& a, const RSeries& b) {
  size_t n = std::min(a.size(), b.size());
  RSeries r(n, Rational(0));
  for (size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; i + j < n; ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

RSeries rseriesExp(const RSeries& a) {
  if (!a.empty() && a[0] != 0) throw std::domain_error("exp of a series with nonzero constant term");
  size_t n = a.size();
  // e' = a' e, solved coefficientwise.
  RSeries e(n, Rational(0));
  if (n == 0) return e;
  e[0] = 1;
  for (size_t k = 1; k < n; ++k) {
    Rational s = 0;
    for (size_t j = 1; j <= k; ++j) s += Rational(static_cast<long>(j)) * a[j] * e[k - j];
    e[k] = s / Rational(static_cast<long>(k));
  }
  return e;
}

RSeries rseriesInv(const RSeries& a) {
  if (a.empty() || a[0] == 0) throw std::domain_error("inverse of a series with zero constant term");
  size_t n = a.size();
  RSeries r(n, Rational(0));
  r[0] = 1 / a[0];
  for (size_t k = 1; k < n; ++k) {
    Rational s = 0;
    for (size_t j = 1; j <= k; ++j) s += a[j] * r[k - j];
    r[k] = -s * r[0];
  }
  return r;
}

Rational bernoulliNumber(unsigned n) {
  static std::mutex m;
  static std::vector<Rational> cache{Rational(1)};
  std::lock_guard<std::mutex> lock(m);
  // sum_{k=0}^{n} C(n+1, k) B_k = 0 for n >= 1
  while (cache.size() <= n) {
    unsigned k = cache.size();
    Rational s = 0;
    for (unsigned i = 0; i < k; ++i) s += Rational(binomial(k + 1, i)) * cache[i];
    cache.push_back(-s / Rational(binomial(k + 1, k)));
  }
  return cache[n];
}

std::vector<Rational> bernoulliPolyCoeffs(unsigned n) {
  std::vector<Rational> c(n + 1, Rational(0));
  for (unsigned k = 0; k <= n; ++k) c[n - k] = Rational(binomial(n, k)) * bernoulliNumber(k);
  return c;
}

Rational bernoulliPoly(unsigned n, const Rational& x) {
  auto c = bernoulliPolyCoeffs(n);
  Rational r = 0;
  for (unsigned i = n + 1; i-- > 0;) r = r * x + c[i];
  return r;
}

}  // namespace lgcy
