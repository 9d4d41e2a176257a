#pragma once

#include "tautrel/rational.hpp"

#include <vector>

namespace tautrel {

// B_n with the convention B_1 = -1/2, i.e. the coefficients of t/(e^t - 1).
Rational bernoulli_number(int n);

// Coefficients c_0..c_n of B_n(x) = sum_k c_k x^k.
std::vector<Rational> bernoulli_poly_coefficients(int n);

// B_n(x) = sum_{k=0}^{n} C(n,k) B_k x^{n-k}.
Rational bernoulli_poly(int n, const Rational& x);

} // namespace tautrel
