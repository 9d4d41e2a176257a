#pragma once

#include "tautrel/rational.hpp"
#include "tautrel/stable_graph.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

namespace tautrel {

// Where a class lives.
//
// r == 1 is the moduli space of stable curves itself. r >= 2 is the moduli space of
// r-th roots of O(-sum a_i x_i) (equivalently maps to B Z_r with monodromies a_i): strata
// then carry a residue at every half-edge, opposite halves sum to 0 mod r, and at every
// vertex the residues of its legs and half-edges sum to 0 mod r. There the normal
// bundle of a boundary divisor is (T_h (x) T_h')^{1/r}, so the excess class on a shared
// edge is -(psi_h + psi_h')/r instead of -(psi_h + psi_h').
struct Ambient {
    int g = 0;
    int n = 0;
    int r = 1;
    std::vector<int> residues; // a_1..a_n; all zero when r == 1

    static Ambient curves(int g, int n);
    static Ambient roots(int g, int n, int r, std::vector<int> residues);

    int dim() const { return 3 * g - 3 + n; }
    void check() const;
    bool operator==(const Ambient&) const = default;
};

struct Decoration {
    std::vector<int> leg_psi;                   // per leg
    std::vector<int> halfedge_psi;              // per half-edge
    std::vector<std::vector<int>> vertex_kappa; // per vertex, sorted multiset of kappa indices
    std::vector<int> residue;                   // per half-edge, in [0, r)

    bool operator==(const Decoration&) const = default;
};

// The class (1/|Aut graph|) * xi_{graph *}(decoration).
struct DecoratedStratum {
    StableGraph graph;
    Decoration deco;

    static DecoratedStratum bare(const StableGraph& graph);

    int degree() const;
    // Psi/kappa degree at vertex v.
    int vertex_degree(int v) const;
    // Some vertex carries more than its dimension, so the class is zero.
    bool vanishes_by_dimension() const;
    GraphLabels labels() const;
    bool operator==(const DecoratedStratum&) const = default;
};

using StratumKey = std::vector<int>;

// Canonical representative: isomorphic decorated strata map to identical output.
DecoratedStratum canonical(const DecoratedStratum& s, StratumKey* key = nullptr);

struct Term {
    DecoratedStratum stratum;
    Rational coeff;
};

// Formal rational combination of canonical decorated strata. Zero coefficients are never stored.
class TautExpr {
public:
    explicit TautExpr(Ambient ambient);

    const Ambient& ambient() const { return ambient_; }
    const std::map<StratumKey, Term>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add(const DecoratedStratum& s, const Rational& coeff);
    // Adds an already-canonical term.
    void add_canonical(const StratumKey& key, const DecoratedStratum& s, const Rational& coeff);
    void add(const TautExpr& other, const Rational& scale = 1);

    TautExpr scaled(const Rational& factor) const;
    TautExpr degree_part(int degree) const;
    // Degree of all terms if they agree; nullopt for the empty or a mixed expression.
    std::optional<int> homogeneous_degree() const;
    int max_degree() const;

    bool operator==(const TautExpr& other) const;

private:
    Ambient ambient_;
    std::map<StratumKey, Term> terms_;
};

TautExpr fundamental_class(const Ambient& ambient);
TautExpr psi_class(const Ambient& ambient, int leg, int exponent = 1);
TautExpr kappa_class(const Ambient& ambient, int index);
TautExpr stratum_class(const Ambient& ambient, const DecoratedStratum& s, const Rational& coeff = 1);

struct MultiplyOptions {
    int max_degree = -1;         // drop products above this degree; -1 keeps all
    std::size_t max_terms = 0;   // LimitError when the result would exceed this; 0 = no cap
};

// Product in the strata algebra: sum over generic common degenerations of the two graphs,
// pulling decorations back, with the excess class on every edge the two factors share.
// The OpenMP kernel distributes term pairs; multiply_serial is the reference loop.
TautExpr multiply(const TautExpr& a, const TautExpr& b, const MultiplyOptions& options = {});
TautExpr multiply_serial(const TautExpr& a, const TautExpr& b, const MultiplyOptions& options = {});

// Product of two single canonical strata with unit coefficients (memoized).
std::vector<Term> multiply_strata(const Ambient& ambient, const DecoratedStratum& a, const DecoratedStratum& b);
// Drops every memoized stratum product (the graph indices stay). Not safe during a multiply.
void clear_product_cache();

// Top-degree integral on the moduli of stable curves (r == 1).
// Empty input integrates to 0; anything not homogeneous of degree dim is a DimensionError.
Rational integrate(const TautExpr& e);
Rational integrate_stratum(const DecoratedStratum& s);

// integrate(multiply(relation, monomial)), guarded by the degree condition.
Rational pairing(const TautExpr& relation, const TautExpr& monomial);

// Residue assignments on the half-edges of `graph` that satisfy the root conditions.
std::vector<std::vector<int>> admissible_residues(const Ambient& ambient, const StableGraph& graph);

// Forgets residues; used when moving from the root side to the curve side.
DecoratedStratum strip_residues(const DecoratedStratum& s);

} // namespace tautrel
