#pragma once

#include "tautrel/chiodo.hpp"
#include "tautrel/strata.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace tautrel {

struct VerifyOptions {
    bool allow_out_of_window = false;
    std::size_t max_graphs = 0; // LimitError if the ambient has more stable graphs; 0 = no cap
    std::size_t max_terms = 0;  // passed on to every product; 0 = no cap
    bool parallel = true;       // pair monomials on OpenMP threads
};

struct PairingValue {
    std::size_t monomial = 0; // position in the complementary monomial list
    std::string description;
    Rational value;
};

struct VerificationReport {
    RelationSpec spec;
    int ambient_dim = 0;
    int relation_degree = 0;
    std::size_t relation_terms = 0;
    std::size_t monomials_paired = 0;
    std::vector<PairingValue> pairings;
    bool all_zero = true;
    double elapsed = 0; // seconds
};

// Every decorated stratum of the given degree (graph plus psi/kappa decorations), one per
// isomorphism class, in canonical-key order. Spans the classes of that degree.
std::vector<DecoratedStratum> complementary_strata(int g, int n, int degree);
std::vector<TautExpr> complementary_monomials(int g, int n, int degree);

// Short readable name of a stratum, e.g. "g1[1,2] psi1^2 kappa(0)=1".
std::string describe(const DecoratedStratum& s);

// Generates the pushed-forward relation and pairs it with every complementary monomial.
VerificationReport verify(const RelationSpec& s, const VerifyOptions& options = {});

// Same pairing step for an already generated relation (degree s.d on the curves of type (g,n)).
VerificationReport verify_relation(const RelationSpec& s, const TautExpr& relation,
                                   const VerifyOptions& options = {});

} // namespace tautrel
