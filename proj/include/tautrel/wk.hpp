#pragma once

#include "tautrel/rational.hpp"

#include <vector>

namespace tautrel {

// Integrand psi_1^{d_1} ... psi_n^{d_n} on the moduli space of genus-g curves with n points.
struct PsiMonomial {
    int genus = 0;
    std::vector<int> exponents;
};

// Adds kappa_{k_1} ... kappa_{k_m}; kappa_a has degree a (pushforward of psi^{a+1} from
// one extra point).
struct KappaPsiMonomial {
    int genus = 0;
    std::vector<int> psi_exponents;
    std::vector<int> kappa_indices;
};

// <tau_{d_1} ... tau_{d_n}>_g by string, dilaton and the DVV recursion.
// DimensionError unless sum d_i = 3g-3+n; ParameterError for unstable (g,n).
Rational psi_integral(const PsiMonomial& m);
Rational kappa_psi_integral(const KappaPsiMonomial& m);

// Same values, but returns 0 instead of throwing on a degree mismatch. Used by integrals
// over strata, where vertices of the wrong degree simply contribute nothing.
Rational psi_integral_or_zero(int genus, std::vector<int> exponents);
Rational kappa_psi_integral_or_zero(int genus, std::vector<int> psi_exponents, std::vector<int> kappa_indices);

// Number of memoized pure-psi values, and a snapshot of them (genus, sorted exponents, value).
struct MemoEntry {
    int genus;
    std::vector<int> exponents;
    Rational value;
};
std::vector<MemoEntry> psi_memo_snapshot();

} // namespace tautrel
