#pragma once

#include "tautrel/rational.hpp"

#include <string>
#include <vector>

namespace tautrel {

// Input of the relation generator: genus, number of points, order r of the cyclic group,
// residues a_i in [0, r), the degree d, and whether (for a = 0) we restrict to nontrivial
// r-torsion bundles.
struct RelationSpec {
    int g = 0;
    int n = 0;
    int r = 2;
    std::vector<int> a;
    int d = 1;
    bool nontrivial_component = false;
};

// Human-readable list of violated invariants; empty when the spec is valid.
// With allow_out_of_window only the lower end of the degree window is relaxed
// (1 <= d <= 3g-3+n is still required).
std::vector<std::string> spec_violations(const RelationSpec& s, bool allow_out_of_window = false);
// Throws SpecError naming every violated invariant.
void validate_spec(const RelationSpec& s, bool allow_out_of_window = false);

// Degree of the coarse bundle, -(1/r) sum a_i. ParameterError if sum a_i is not divisible by r.
long coarse_degree(const std::vector<int>& a, int r);

// Residue q at the branch on the (l, I) side of a separating node: q + sum_{i in I} a_i = 0 mod r.
// I holds 1-based point labels. ParameterError if either side is unstable.
int node_multiplicity(int g, int l, const std::vector<int>& I, const std::vector<int>& a, int r);

// (1/r) sum a_i + g - 1.
long virtual_rank(const RelationSpec& s);

struct SepTerm {
    int l;                // genus on the chosen side
    std::vector<int> I;   // points on the chosen side, increasing
    int q;                // residue at the chosen branch
    Rational coeff;       // (r/2) B_{d+1}(q/r) / (d+1)!
};

struct IrrTerm {
    int q;
    Rational coeff;
};

// ch_d of the derived pushforward of the universal r-th root, as coefficients. Every node
// term stands for the pushforward of gamma_{d-1} from nodes with a chosen branch; see
// chern_char_class for how gamma is expanded.
struct ChernCharExpr {
    int degree = 0;
    Rational kappa_coeff;
    std::vector<Rational> psi_coeffs;
    std::vector<SepTerm> sep_terms; // each unordered splitting appears once per branch
    std::vector<IrrTerm> irr_terms; // q = 0..r-1 when g >= 1, else empty
};

ChernCharExpr chiodo_chern_char(const RelationSpec& s, int d);

} // namespace tautrel
