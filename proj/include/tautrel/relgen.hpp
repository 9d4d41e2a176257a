#pragma once

#include "tautrel/chiodo.hpp"
#include "tautrel/strata.hpp"

#include <map>
#include <vector>

namespace tautrel {

// e(-R pi_* L) = (-1)^deg lambda^rank exp(sum_{d>=1} s_d ch_d) with s_d = (d-1)!/lambda^d.
// Only the bookkeeping is kept: the lambda power and the s_d.
struct EquivariantEulerSeries {
    long rank = 0;
    std::map<int, Rational> coefficients; // d -> (d-1)!
};

EquivariantEulerSeries euler_series(const RelationSpec& s, int truncation);

// The ambient on the root side: (g, n, r, a).
Ambient root_ambient(const RelationSpec& s);

// ch_d as a class on the root side. A node term with chosen-branch residue q becomes the
// one-edge stratum with residues (q, r - q) and gamma_{d-1} expanded on its half-edges.
TautExpr chern_char_class(const RelationSpec& s, int d);

// (d+1)! ch_d: the factor that appears once per part of a partition.
TautExpr bracket(const RelationSpec& s, int d);

struct PartitionTerm {
    std::vector<int> parts; // non-increasing
    Rational coeff;         // 1 / (prod mult! * prod d_i (d_i + 1))
};

// The relation as a sum over partitions of d of products of brackets.
struct BZrRelation {
    RelationSpec spec;
    std::vector<PartitionTerm> terms;
    std::map<int, TautExpr> brackets; // by part size

    // Multiplies out every partition term (on the root side).
    TautExpr expand(const MultiplyOptions& options = {}) const;
};

std::vector<std::vector<int>> partitions(int d);

// validate_spec first (SpecError), unless allow_out_of_window relaxes the lower bound.
BZrRelation relation_bzr(const RelationSpec& s, bool allow_out_of_window = false);

// Degree-d part of exp(sum_k (k-1)! ch_k), by truncated power series exponentiation.
TautExpr exp_series_relation(const RelationSpec& s, bool allow_out_of_window = false,
                             const MultiplyOptions& options = {});

// Degree of the forgetful map from roots to curves, stratum by stratum, relative to the
// open part: r^{-E-h1} when some a_i != 0. For a = 0 restricted to nontrivial roots the
// trivial root is subtracted: r^{-E} (r^{-h1} - [w = 0] r^{-2g}).
Rational pushforward_multiplicity(const RelationSpec& s, const DecoratedStratum& root_stratum);

// Root-side class -> class on the moduli of curves (r = 1 ambient).
TautExpr pushforward(const RelationSpec& s, const TautExpr& root_class);

// Relation on the moduli of stable curves, homogeneous of degree d. IntegrityError otherwise.
TautExpr pushforward_relation(const RelationSpec& s, bool allow_out_of_window = false,
                              const MultiplyOptions& options = {});

} // namespace tautrel
