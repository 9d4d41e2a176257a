#include "tautrel/json_io.hpp"

#include "tautrel/error.hpp"

#include <algorithm>

namespace tautrel {

using nlohmann::json;

std::string halfedge_name(const StableGraph& graph, int halfedge)
{
    const int v = graph.vertex_of(halfedge);
    auto at = graph.halfedges_at(v);
    const auto slot = std::find(at.begin(), at.end(), halfedge) - at.begin();
    return std::to_string(v) + "." + std::to_string(slot);
}

json to_json(const StableGraph& graph)
{
    json j;
    j["vertices"] = json::array();
    for (int v = 0; v < graph.num_vertices(); ++v)
        j["vertices"].push_back({{"genus", graph.genera[v]}, {"legs", graph.legs_at(v)}});
    j["edges"] = json::array();
    for (int e = 0; e < graph.num_edges(); ++e)
        j["edges"].push_back({halfedge_name(graph, 2 * e), halfedge_name(graph, 2 * e + 1)});
    return j;
}

StableGraph graph_from_json(const json& j)
{
    StableGraph graph;
    int n = 0;
    for (const auto& v : j.at("vertices"))
        for (int leg : v.at("legs"))
            n = std::max(n, leg);
    graph.leg_vertex.assign(n, -1);
    for (const auto& v : j.at("vertices")) {
        const int id = graph.num_vertices();
        graph.genera.push_back(v.at("genus").get<int>());
        for (int leg : v.at("legs"))
            graph.leg_vertex[leg - 1] = id;
    }
    // half-edge names only fix the vertex; slots follow edge order
    for (const auto& e : j.at("edges")) {
        std::array<int, 2> ends{};
        for (int side = 0; side < 2; ++side) {
            const std::string name = e.at(side).get<std::string>();
            ends[side] = std::stoi(name.substr(0, name.find('.')));
        }
        graph.edges.push_back(ends);
    }
    graph.check();
    return graph;
}

json to_json(const DecoratedStratum& s, const Rational& coeff, bool with_residues)
{
    json j;
    j["graph"] = to_json(s.graph);
    j["leg_psi"] = json::object();
    for (int i = 0; i < s.graph.num_legs(); ++i)
        if (s.deco.leg_psi[i])
            j["leg_psi"][std::to_string(i + 1)] = s.deco.leg_psi[i];
    j["halfedge_psi"] = json::object();
    for (int h = 0; h < s.graph.num_halfedges(); ++h)
        if (s.deco.halfedge_psi[h])
            j["halfedge_psi"][halfedge_name(s.graph, h)] = s.deco.halfedge_psi[h];
    j["vertex_kappa"] = json::object();
    for (int v = 0; v < s.graph.num_vertices(); ++v)
        if (!s.deco.vertex_kappa[v].empty())
            j["vertex_kappa"][std::to_string(v)] = s.deco.vertex_kappa[v];
    if (with_residues) {
        j["halfedge_residue"] = json::object();
        for (int h = 0; h < s.graph.num_halfedges(); ++h)
            j["halfedge_residue"][halfedge_name(s.graph, h)] = s.deco.residue[h];
    }
    j["coeff"] = to_string(coeff);
    return j;
}

json to_json(const TautExpr& e)
{
    json terms = json::array();
    for (const auto& [key, term] : e.terms())
        terms.push_back(to_json(term.stratum, term.coeff, e.ambient().r > 1));
    return terms;
}

json to_json(const RelationSpec& s)
{
    return {{"g", s.g}, {"n", s.n}, {"r", s.r}, {"a", s.a}, {"d", s.d}, {"nontrivial_component", s.nontrivial_component}};
}

json to_json(const ChernCharExpr& ch)
{
    json j;
    j["degree"] = ch.degree;
    j["gamma_degree"] = ch.degree - 1;
    j["kappa_coeff"] = to_string(ch.kappa_coeff);
    j["psi_coeffs"] = json::array();
    for (const auto& c : ch.psi_coeffs)
        j["psi_coeffs"].push_back(to_string(c));
    j["sep_terms"] = json::array();
    for (const auto& t : ch.sep_terms)
        j["sep_terms"].push_back({{"l", t.l}, {"I", t.I}, {"q", t.q}, {"coeff", to_string(t.coeff)}});
    j["irr_terms"] = json::array();
    for (const auto& t : ch.irr_terms)
        j["irr_terms"].push_back({{"q", t.q}, {"coeff", to_string(t.coeff)}});
    return j;
}

json to_json(const VerificationReport& report)
{
    json j;
    j["spec"] = to_json(report.spec);
    j["ambient_dim"] = report.ambient_dim;
    j["relation_degree"] = report.relation_degree;
    j["relation_terms"] = report.relation_terms;
    j["monomials_paired"] = report.monomials_paired;
    j["pairings"] = json::array();
    for (const auto& p : report.pairings)
        j["pairings"].push_back({{"monomial", p.monomial}, {"description", p.description}, {"value", to_string(p.value)}});
    j["all_zero"] = report.all_zero;
    j["elapsed"] = report.elapsed;
    return j;
}

} // namespace tautrel
