#pragma once

#include "tautrel/chiodo.hpp"
#include "tautrel/stable_graph.hpp"
#include "tautrel/strata.hpp"
#include "tautrel/verify.hpp"

#include <json.hpp>

#include <string>

namespace tautrel {

// Half-edges are named "v.k": vertex v, k-th half-edge at v in increasing id order.
std::string halfedge_name(const StableGraph& graph, int halfedge);

nlohmann::json to_json(const StableGraph& graph);
StableGraph graph_from_json(const nlohmann::json& j);

// {"graph", "leg_psi", "halfedge_psi", "vertex_kappa", "coeff"} plus "halfedge_residue"
// on the root side. Zero exponents are omitted.
nlohmann::json to_json(const DecoratedStratum& s, const Rational& coeff, bool with_residues);
nlohmann::json to_json(const TautExpr& e);

nlohmann::json to_json(const RelationSpec& s);
nlohmann::json to_json(const ChernCharExpr& ch);
nlohmann::json to_json(const VerificationReport& report);

} // namespace tautrel
