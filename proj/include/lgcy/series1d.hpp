#pragma once

#include "lgcy/rational.hpp"

#include <vector>

namespace lgcy {

// Univariate rational power series truncated to a fixed length (coefficients of x^0..x^(n-1)).
using RSeries = std::vector<Rational>;

RSeries rseriesMul(const RSeries& a, const RSeries& b);
// exp of a series with zero constant term.
RSeries rseriesExp(const RSeries& a);
// Inverse of a series with nonzero constant term.
RSeries rseriesInv(const RSeries& a);

// Bernoulli numbers with B_1 = -1/2.
Rational bernoulliNumber(unsigned n);
// B_n(x) evaluated exactly at rational x.
Rational bernoulliPoly(unsigned n, const Rational& x);
// B_n(x) coefficients on x^0..x^n.
std::vector<Rational> bernoulliPolyCoeffs(unsigned n);

}  // namespace lgcy
