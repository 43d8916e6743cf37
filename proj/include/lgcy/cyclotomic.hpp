#pragma once

#include "lgcy/rational.hpp"

#include <string>
#include <vector>

namespace lgcy {

// Element of Q(xi), xi a primitive n-th root of unity, stored as the coefficient
// vector on 1, xi, ..., xi^(phi(n)-1) after reduction modulo the n-th cyclotomic
// polynomial. The representation is canonical, so == is coefficientwise.
class Cyclotomic {
 public:
  Cyclotomic();  // zero of Q (order 1)
  explicit Cyclotomic(unsigned order);
  Cyclotomic(unsigned order, const Rational& r);
  // Reduces an arbitrary-length coefficient vector on powers of xi.
  static Cyclotomic fromPowers(unsigned order, const std::vector<Rational>& powers);
  static Cyclotomic xiPow(unsigned order, long k);

  unsigned order() const { return order_; }
  const std::vector<Rational>& coeffs() const { return c_; }
  bool isZero() const;
  bool isRational() const;  // only the xi^0 coefficient can be nonzero
  Rational rationalPart() const { return c_[0]; }

  Cyclotomic operator-() const;
  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Rational& r);
  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator*(Cyclotomic a, const Rational& r) { return a *= r; }
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    return a.order_ == b.order_ && a.c_ == b.c_;
  }
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

  // Field inverse; throws std::domain_error on zero.
  Cyclotomic inverse() const;

  // "1/2 - 3*xi + xi^3" on the reduced xi-power basis.
  std::string toString() const;

 private:
  unsigned order_;
  std::vector<Rational> c_;
};

Cyclotomic cycloMul(const Cyclotomic& a, const Cyclotomic& b);

unsigned eulerPhi(unsigned n);
// Integer coefficients of the n-th cyclotomic polynomial, lowest degree first.
const std::vector<long>& cyclotomicPolynomial(unsigned n);

}  // namespace lgcy
