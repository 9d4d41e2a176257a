#pragma once

#include <array>
#include <vector>

namespace tautrel {

// Dual graph of a stable nodal curve.
//
// Half-edges have stable integer identities: edge e owns half-edges 2e (on edges[e][0])
// and 2e+1 (on edges[e][1]). A self-loop has both ends on the same vertex. Legs are the
// marked points 1..n; leg i sits on vertex leg_vertex[i-1].
struct StableGraph {
    std::vector<int> genera;
    std::vector<int> leg_vertex;
    std::vector<std::array<int, 2>> edges;

    static StableGraph smooth(int g, int n);

    int num_vertices() const { return static_cast<int>(genera.size()); }
    int num_edges() const { return static_cast<int>(edges.size()); }
    int num_legs() const { return static_cast<int>(leg_vertex.size()); }
    int num_halfedges() const { return 2 * num_edges(); }
    int vertex_of(int halfedge) const { return edges[halfedge / 2][halfedge % 2]; }
    static int opposite(int halfedge) { return halfedge ^ 1; }

    // First Betti number.
    int h1() const { return num_edges() - num_vertices() + 1; }
    int genus() const;

    std::vector<int> halfedges_at(int v) const;
    // 1-based leg labels on v, increasing.
    std::vector<int> legs_at(int v) const;
    int valence(int v) const;
    // 3 g_v - 3 + n_v for the vertex moduli space.
    int vertex_dim(int v) const { return 3 * genera[v] - 3 + valence(v); }

    bool is_connected() const;
    // Throws ParameterError naming the first violated invariant.
    void check() const;

    bool operator==(const StableGraph&) const = default;
};

// Optional labels that take part in canonical forms and automorphism counts.
struct GraphLabels {
    std::vector<std::vector<int>> vertex; // per vertex
    std::vector<int> leg;                 // per leg
    std::vector<int> halfedge;            // per half-edge
};

// Where each vertex/half-edge of the input went.
struct Relabeling {
    std::vector<int> vertex;
    std::vector<int> halfedge;
};

using GraphKey = std::vector<int>;

struct CanonicalForm {
    StableGraph graph;
    Relabeling map; // input -> canonical
    GraphKey key;
};

// Minimal encoding over vertex orderings refined by (genus, legs, labels, degree) classes.
// Isomorphic labeled graphs give identical keys and identical canonical graphs.
CanonicalForm canonical_form(const StableGraph& graph, const GraphLabels* labels = nullptr);
StableGraph canonicalize(const StableGraph& graph);
GraphKey canonical_key(const StableGraph& graph);

// Automorphisms fixing legs pointwise: vertex permutations, edge permutations and
// swaps of the two halves of an edge, preserving labels when given.
long aut_order(const StableGraph& graph, const GraphLabels* labels = nullptr);

// All isomorphisms from -> to fixing legs, as explicit vertex and half-edge maps.
std::vector<Relabeling> isomorphisms(const StableGraph& from, const StableGraph& to);

struct Contraction {
    StableGraph graph;
    std::vector<int> vertex; // old vertex -> new vertex
    std::vector<int> edge;   // old edge -> new edge (orientation kept), -1 if contracted
};

Contraction contract_edges(const StableGraph& graph, unsigned contract_mask);

// One representative per isomorphism class, with at most max_edges edges, ordered by
// edge count and then canonical key. Every returned graph is canonical.
std::vector<StableGraph> enumerate_stable_graphs(int g, int n, int max_edges);

} // namespace tautrel
