#include "lgcy/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace lgcy {

namespace {

using Poly = std::vector<Rational>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Long division of a by b (b nonzero); returns quotient, a becomes the remainder.
Poly divmod(Poly& a, const Poly& b) {
  trim(a);
  Poly q;
  if (a.size() < b.size()) return q;
  q.assign(a.size() - b.size() + 1, Rational(0));
  const Rational& lead = b.back();
  for (size_t k = a.size(); k-- >= b.size();) {
    if (a[k] == 0) continue;
    Rational f = a[k] / lead;
    size_t shift = k - (b.size() - 1);
    q[shift] = f;
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
  }
  trim(a);
  trim(q);
  return q;
}

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

Poly sub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), Rational(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

struct Table {
  std::vector<long> phi;
  Poly phiQ;
};

std::recursive_mutex tableMutex;

const Table& tableFor(unsigned n) {
  static std::map<unsigned, Table> t;
  std::lock_guard<std::recursive_mutex> lock(tableMutex);
  auto it = t.find(n);
  if (it != t.end()) return it->second;
  // x^n - 1 divided by Phi_k for every proper divisor k of n.
  Poly p(n + 1, Rational(0));
  p[0] = -1;
  p[n] = 1;
  for (unsigned k = 1; k < n; ++k) {
    if (n % k != 0) continue;
    Poly rem = p;
    Poly q = divmod(rem, tableFor(k).phiQ);
    if (!rem.empty()) throw std::logic_error("cyclotomic division not exact");
    p = q;
  }
  Table tab;
  tab.phiQ = p;
  for (auto& c : p) {
    if (c.get_den() != 1) throw std::logic_error("non-integral cyclotomic coefficient");
    tab.phi.push_back(c.get_num().get_si());
  }
  return t.emplace(n, std::move(tab)).first->second;
}

}  // namespace

unsigned eulerPhi(unsigned n) {
  unsigned r = n;
  unsigned m = n;
  for (unsigned p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    while (m % p == 0) m /= p;
    r -= r / p;
  }
  if (m > 1) r -= r / m;
  return r;
}

const std::vector<long>& cyclotomicPolynomial(unsigned n) {
  if (n == 0) throw std::invalid_argument("cyclotomic order must be positive");
  return tableFor(n).phi;
}

Cyclotomic::Cyclotomic() : order_(1), c_(1, Rational(0)) {}

Cyclotomic::Cyclotomic(unsigned order) : order_(order) {
  if (order == 0) throw std::invalid_argument("cyclotomic order must be positive");
  c_.assign(eulerPhi(order), Rational(0));
}

Cyclotomic::Cyclotomic(unsigned order, const Rational& r) : Cyclotomic(order) { c_[0] = r; }

Cyclotomic Cyclotomic::fromPowers(unsigned order, const std::vector<Rational>& powers) {
  Cyclotomic out(order);
  Poly p = powers;
  trim(p);
  const Poly& phi = tableFor(order).phiQ;
  if (p.size() >= phi.size()) divmod(p, phi);
  for (size_t i = 0; i < p.size(); ++i) out.c_[i] = p[i];
  return out;
}

Cyclotomic Cyclotomic::xiPow(unsigned order, long k) {
  long m = ((k % static_cast<long>(order)) + order) % order;
  std::vector<Rational> p(m + 1, Rational(0));
  p[m] = 1;
  return fromPowers(order, p);
}

bool Cyclotomic::isZero() const {
  for (auto& x : c_)
    if (x != 0) return false;
  return true;
}

bool Cyclotomic::isRational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r(*this);
  for (auto& x : r.c_) x = -x;
  return r;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  if (o.order_ != order_) throw std::invalid_argument("cyclotomic order mismatch");
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) {
  if (o.order_ != order_) throw std::invalid_argument("cyclotomic order mismatch");
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.order_ != b.order_) throw std::invalid_argument("cyclotomic order mismatch");
  if (a.c_.size() == 1) {
    Cyclotomic r(b);
    r *= a.c_[0];
    return r;
  }
  if (a.isRational()) return b * a.c_[0];
  if (b.isRational()) return a * b.c_[0];
  return Cyclotomic::fromPowers(a.order_, mul(a.c_, b.c_));
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) { return *this = *this * o; }

Cyclotomic& Cyclotomic::operator*=(const Rational& r) {
  for (auto& x : c_) x *= r;
  return *this;
}

Cyclotomic Cyclotomic::inverse() const {
  if (isZero()) throw std::domain_error("inverse of zero cyclotomic");
  if (isRational()) return Cyclotomic(order_, 1 / c_[0]);
  // Extended Euclid: s*a + t*phi = gcd, gcd is a nonzero constant since phi is irreducible.
  Poly r0 = tableFor(order_).phiQ, r1 = c_;
  trim(r1);
  Poly s0, s1{Rational(1)};
  while (!(r1.size() == 1)) {
    Poly rem = r0;
    Poly q = divmod(rem, r1);
    Poly s2 = sub(s0, mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
    if (r1.empty()) throw std::logic_error("cyclotomic element not invertible");
  }
  Rational inv = 1 / r1[0];
  for (auto& x : s1) x *= inv;
  return fromPowers(order_, s1);
}

std::string Cyclotomic::toString() const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    const Rational& x = c_[i];
    if (x == 0) continue;
    Rational a = abs(x);
    if (first) {
      if (x < 0) os << "-";
    } else {
      os << (x < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << a.get_str();
      continue;
    }
    if (a != 1) os << a.get_str() << "*";
    os << "xi";
    if (i > 1) os << "^" << i;
  }
  if (first) return "0";
  return os.str();
}

Cyclotomic cycloMul(const Cyclotomic& a, const Cyclotomic& b) { return a * b; }

}  // namespace lgcy
