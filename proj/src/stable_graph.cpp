#include "tautrel/stable_graph.hpp"

#include "tautrel/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

namespace tautrel {

StableGraph StableGraph::smooth(int g, int n)
{
    if (g < 0 || n < 0 || 2 * g - 2 + n <= 0)
        throw ParameterError("unstable (g,n) = (" + std::to_string(g) + "," + std::to_string(n) + ")");
    StableGraph graph;
    graph.genera = {g};
    graph.leg_vertex.assign(n, 0);
    return graph;
}

int StableGraph::genus() const
{
    return std::accumulate(genera.begin(), genera.end(), 0) + h1();
}

std::vector<int> StableGraph::halfedges_at(int v) const
{
    std::vector<int> result;
    for (int h = 0; h < num_halfedges(); ++h)
        if (vertex_of(h) == v)
            result.push_back(h);
    return result;
}

std::vector<int> StableGraph::legs_at(int v) const
{
    std::vector<int> result;
    for (int i = 0; i < num_legs(); ++i)
        if (leg_vertex[i] == v)
            result.push_back(i + 1);
    return result;
}

int StableGraph::valence(int v) const
{
    int count = 0;
    for (int lv : leg_vertex)
        count += (lv == v);
    for (const auto& e : edges)
        count += (e[0] == v) + (e[1] == v);
    return count;
}

bool StableGraph::is_connected() const
{
    const int V = num_vertices();
    if (V == 0)
        return false;
    std::vector<int> parent(V);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    int components = V;
    for (const auto& e : edges) {
        int a = find(e[0]), b = find(e[1]);
        if (a != b) {
            parent[a] = b;
            --components;
        }
    }
    return components == 1;
}

void StableGraph::check() const
{
    const int V = num_vertices();
    if (V == 0)
        throw ParameterError("graph has no vertices");
    for (int lv : leg_vertex)
        if (lv < 0 || lv >= V)
            throw ParameterError("leg attached to a missing vertex");
    for (const auto& e : edges)
        if (e[0] < 0 || e[0] >= V || e[1] < 0 || e[1] >= V)
            throw ParameterError("edge attached to a missing vertex");
    for (int v = 0; v < V; ++v) {
        if (genera[v] < 0)
            throw ParameterError("negative vertex genus");
        if (2 * genera[v] - 2 + valence(v) <= 0)
            throw ParameterError("unstable vertex " + std::to_string(v));
    }
    if (!is_connected())
        throw ParameterError("graph is not connected");
}

namespace {

struct Frame {
    const StableGraph& graph;
    const GraphLabels* labels;

    int halfedge_label(int h) const { return labels && !labels->halfedge.empty() ? labels->halfedge[h] : 0; }

    std::vector<int> signature(int v) const
    {
        std::vector<int> sig{graph.genera[v]};
        auto legs = graph.legs_at(v);
        sig.push_back(static_cast<int>(legs.size()));
        for (int leg : legs) {
            sig.push_back(leg);
            sig.push_back(labels && !labels->leg.empty() ? labels->leg[leg - 1] : 0);
        }
        if (labels && !labels->vertex.empty()) {
            sig.push_back(static_cast<int>(labels->vertex[v].size()));
            sig.insert(sig.end(), labels->vertex[v].begin(), labels->vertex[v].end());
        }
        else {
            sig.push_back(0);
        }
        std::vector<int> he;
        int loops = 0;
        for (int h = 0; h < graph.num_halfedges(); ++h) {
            if (graph.vertex_of(h) != v)
                continue;
            he.push_back(halfedge_label(h));
            if (h % 2 == 0 && graph.vertex_of(h + 1) == v)
                ++loops;
        }
        std::sort(he.begin(), he.end());
        sig.push_back(static_cast<int>(he.size()));
        sig.insert(sig.end(), he.begin(), he.end());
        sig.push_back(loops);
        return sig;
    }

    using Tuple = std::array<int, 4>;

    std::vector<Tuple> edge_tuples(const std::vector<int>& pos) const
    {
        std::vector<Tuple> tuples;
        tuples.reserve(graph.edges.size());
        for (int e = 0; e < graph.num_edges(); ++e) {
            std::array<int, 2> a{pos[graph.edges[e][0]], halfedge_label(2 * e)};
            std::array<int, 2> b{pos[graph.edges[e][1]], halfedge_label(2 * e + 1)};
            if (b < a)
                std::swap(a, b);
            tuples.push_back({a[0], a[1], b[0], b[1]});
        }
        std::sort(tuples.begin(), tuples.end());
        return tuples;
    }
};

// Calls visit(pos) for every vertex ordering that keeps the signature classes in place.
template <class Visit>
void for_each_class_ordering(const std::vector<std::vector<int>>& classes, std::vector<int>& pos, Visit&& visit)
{
    std::vector<std::vector<int>> members = classes;
    std::vector<int> start(classes.size());
    int offset = 0;
    for (size_t c = 0; c < classes.size(); ++c) {
        start[c] = offset;
        offset += static_cast<int>(classes[c].size());
    }
    auto recurse = [&](auto&& self, size_t c) -> void {
        if (c == members.size()) {
            visit(pos);
            return;
        }
        auto& m = members[c];
        std::sort(m.begin(), m.end());
        do {
            for (size_t i = 0; i < m.size(); ++i)
                pos[m[i]] = start[c] + static_cast<int>(i);
            self(self, c + 1);
        } while (std::next_permutation(m.begin(), m.end()));
    };
    recurse(recurse, 0);
}

struct ClassData {
    std::vector<std::vector<int>> signatures; // in new (sorted) order
    std::vector<std::vector<int>> classes;
};

ClassData vertex_classes(const Frame& frame)
{
    const int V = frame.graph.num_vertices();
    std::vector<std::vector<int>> sig(V);
    for (int v = 0; v < V; ++v)
        sig[v] = frame.signature(v);
    std::vector<int> order(V);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return sig[a] < sig[b]; });
    ClassData data;
    for (int i = 0; i < V; ++i) {
        int v = order[i];
        if (i == 0 || sig[v] != sig[order[i - 1]])
            data.classes.emplace_back();
        data.classes.back().push_back(v);
        data.signatures.push_back(sig[v]);
    }
    return data;
}

long factorial_long(int m)
{
    long f = 1;
    for (int i = 2; i <= m; ++i)
        f *= i;
    return f;
}

} // namespace

CanonicalForm canonical_form(const StableGraph& graph, const GraphLabels* labels)
{
    Frame frame{graph, labels};
    const int V = graph.num_vertices();
    const int E = graph.num_edges();
    ClassData data = vertex_classes(frame);

    std::vector<int> pos(V, 0);
    std::vector<int> best_pos;
    std::vector<Frame::Tuple> best;
    for_each_class_ordering(data.classes, pos, [&](const std::vector<int>& p) {
        auto tuples = frame.edge_tuples(p);
        if (best_pos.empty() || tuples < best) {
            best = std::move(tuples);
            best_pos = p;
        }
    });

    CanonicalForm result;
    result.key = {V, E, graph.num_legs()};
    for (const auto& s : data.signatures) {
        result.key.push_back(static_cast<int>(s.size()));
        result.key.insert(result.key.end(), s.begin(), s.end());
    }
    for (const auto& t : best)
        result.key.insert(result.key.end(), t.begin(), t.end());

    StableGraph& out = result.graph;
    out.genera.assign(V, 0);
    for (int v = 0; v < V; ++v)
        out.genera[best_pos[v]] = graph.genera[v];
    out.leg_vertex.resize(graph.num_legs());
    for (int i = 0; i < graph.num_legs(); ++i)
        out.leg_vertex[i] = best_pos[graph.leg_vertex[i]];

    // Order original edges by their oriented tuple under best_pos.
    struct Oriented {
        Frame::Tuple tuple;
        int edge;
        bool flipped;
    };
    std::vector<Oriented> oriented;
    for (int e = 0; e < E; ++e) {
        std::array<int, 2> a{best_pos[graph.edges[e][0]], frame.halfedge_label(2 * e)};
        std::array<int, 2> b{best_pos[graph.edges[e][1]], frame.halfedge_label(2 * e + 1)};
        bool flipped = b < a;
        if (flipped)
            std::swap(a, b);
        oriented.push_back({{a[0], a[1], b[0], b[1]}, e, flipped});
    }
    std::stable_sort(oriented.begin(), oriented.end(),
                     [](const Oriented& x, const Oriented& y) { return x.tuple < y.tuple; });
    out.edges.resize(E);
    result.map.vertex = best_pos;
    result.map.halfedge.assign(2 * E, 0);
    for (int k = 0; k < E; ++k) {
        const auto& o = oriented[k];
        out.edges[k] = {o.tuple[0], o.tuple[2]};
        result.map.halfedge[2 * o.edge] = 2 * k + (o.flipped ? 1 : 0);
        result.map.halfedge[2 * o.edge + 1] = 2 * k + (o.flipped ? 0 : 1);
    }
    return result;
}

StableGraph canonicalize(const StableGraph& graph)
{
    return canonical_form(graph).graph;
}

GraphKey canonical_key(const StableGraph& graph)
{
    return canonical_form(graph).key;
}

long aut_order(const StableGraph& graph, const GraphLabels* labels)
{
    Frame frame{graph, labels};
    ClassData data = vertex_classes(frame);
    std::vector<int> pos(graph.num_vertices(), 0);
    std::vector<Frame::Tuple> reference;
    bool have_reference = false;
    long vertex_automorphisms = 0;
    for_each_class_ordering(data.classes, pos, [&](const std::vector<int>& p) {
        auto tuples = frame.edge_tuples(p);
        if (!have_reference) {
            reference = std::move(tuples);
            have_reference = true;
            ++vertex_automorphisms;
        }
        else if (tuples == reference) {
            ++vertex_automorphisms;
        }
    });
    long edge_symmetries = 1;
    for (size_t i = 0; i < reference.size();) {
        size_t j = i;
        while (j < reference.size() && reference[j] == reference[i])
            ++j;
        int m = static_cast<int>(j - i);
        edge_symmetries *= factorial_long(m);
        const auto& t = reference[i];
        if (t[0] == t[2] && t[1] == t[3])
            edge_symmetries <<= m;
        i = j;
    }
    return vertex_automorphisms * edge_symmetries;
}

std::vector<Relabeling> isomorphisms(const StableGraph& from, const StableGraph& to)
{
    std::vector<Relabeling> result;
    const int V = from.num_vertices();
    const int E = from.num_edges();
    if (V != to.num_vertices() || E != to.num_edges() || from.num_legs() != to.num_legs())
        return result;

    auto vertex_sig = [](const StableGraph& g, int v) {
        std::vector<int> s{g.genera[v], g.valence(v)};
        auto legs = g.legs_at(v);
        s.insert(s.end(), legs.begin(), legs.end());
        int loops = 0;
        for (const auto& e : g.edges)
            loops += (e[0] == v && e[1] == v);
        s.push_back(loops);
        return s;
    };
    std::vector<std::vector<int>> sig_from(V), sig_to(V);
    for (int v = 0; v < V; ++v) {
        sig_from[v] = vertex_sig(from, v);
        sig_to[v] = vertex_sig(to, v);
    }

    std::vector<int> vmap(V, -1);
    std::vector<bool> used(V, false);

    auto pair_key = [](int a, int b) { return a <= b ? std::pair{a, b} : std::pair{b, a}; };

    auto emit_edges = [&]() {
        std::map<std::pair<int, int>, std::vector<int>> from_groups, to_groups;
        for (int e = 0; e < E; ++e)
            from_groups[pair_key(vmap[from.edges[e][0]], vmap[from.edges[e][1]])].push_back(e);
        for (int e = 0; e < E; ++e)
            to_groups[pair_key(to.edges[e][0], to.edges[e][1])].push_back(e);
        if (from_groups.size() != to_groups.size())
            return;
        std::vector<std::pair<std::vector<int>, std::vector<int>>> groups;
        for (auto& [key, list] : from_groups) {
            auto it = to_groups.find(key);
            if (it == to_groups.end() || it->second.size() != list.size())
                return;
            groups.emplace_back(list, it->second);
        }
        std::vector<int> hmap(2 * E, -1);
        auto recurse = [&](auto&& self, size_t gi) -> void {
            if (gi == groups.size()) {
                result.push_back({vmap, hmap});
                return;
            }
            const auto& src = groups[gi].first;
            auto dst = groups[gi].second;
            std::sort(dst.begin(), dst.end());
            do {
                // orientation choices: loops can flip freely, other edges follow the vertex map
                std::vector<int> free_loops;
                for (size_t i = 0; i < src.size(); ++i) {
                    int e = src[i], f = dst[i];
                    if (from.edges[e][0] == from.edges[e][1]) {
                        free_loops.push_back(static_cast<int>(i));
                    }
                    else {
                        bool straight = vmap[from.edges[e][0]] == to.edges[f][0];
                        hmap[2 * e] = 2 * f + (straight ? 0 : 1);
                        hmap[2 * e + 1] = 2 * f + (straight ? 1 : 0);
                    }
                }
                const unsigned combos = 1u << free_loops.size();
                for (unsigned bits = 0; bits < combos; ++bits) {
                    for (size_t k = 0; k < free_loops.size(); ++k) {
                        int i = free_loops[k];
                        int e = src[i], f = dst[i];
                        bool flip = (bits >> k) & 1u;
                        hmap[2 * e] = 2 * f + (flip ? 1 : 0);
                        hmap[2 * e + 1] = 2 * f + (flip ? 0 : 1);
                    }
                    self(self, gi + 1);
                }
            } while (std::next_permutation(dst.begin(), dst.end()));
        };
        recurse(recurse, 0);
    };

    auto assign = [&](auto&& self, int v) -> void {
        if (v == V) {
            emit_edges();
            return;
        }
        for (int w = 0; w < V; ++w) {
            if (used[w] || sig_from[v] != sig_to[w])
                continue;
            used[w] = true;
            vmap[v] = w;
            self(self, v + 1);
            used[w] = false;
        }
        vmap[v] = -1;
    };
    assign(assign, 0);
    return result;
}

Contraction contract_edges(const StableGraph& graph, unsigned contract_mask)
{
    const int V = graph.num_vertices();
    const int E = graph.num_edges();
    std::vector<int> parent(V);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int e = 0; e < E; ++e) {
        if (!((contract_mask >> e) & 1u))
            continue;
        int a = find(graph.edges[e][0]), b = find(graph.edges[e][1]);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }
    Contraction c;
    std::vector<int> root_id(V, -1);
    c.vertex.assign(V, -1);
    int next = 0;
    for (int v = 0; v < V; ++v) {
        int root = find(v);
        if (root_id[root] < 0)
            root_id[root] = next++;
        c.vertex[v] = root_id[root];
    }
    c.graph.genera.assign(next, 0);
    std::vector<int> size(next, 0), internal(next, 0);
    for (int v = 0; v < V; ++v) {
        c.graph.genera[c.vertex[v]] += graph.genera[v];
        ++size[c.vertex[v]];
    }
    c.edge.assign(E, -1);
    for (int e = 0; e < E; ++e) {
        if ((contract_mask >> e) & 1u) {
            ++internal[c.vertex[graph.edges[e][0]]];
        }
        else {
            c.edge[e] = c.graph.num_edges();
            c.graph.edges.push_back({c.vertex[graph.edges[e][0]], c.vertex[graph.edges[e][1]]});
        }
    }
    for (int w = 0; w < next; ++w)
        c.graph.genera[w] += internal[w] - (size[w] - 1);
    c.graph.leg_vertex.resize(graph.num_legs());
    for (int i = 0; i < graph.num_legs(); ++i)
        c.graph.leg_vertex[i] = c.vertex[graph.leg_vertex[i]];
    return c;
}

namespace {

// All graphs obtained from `graph` by degenerating one vertex (adding one edge).
void degenerations(const StableGraph& graph, std::map<GraphKey, StableGraph>& out)
{
    auto insert = [&](const StableGraph& candidate) {
        auto cf = canonical_form(candidate);
        out.emplace(std::move(cf.key), std::move(cf.graph));
    };
    for (int v = 0; v < graph.num_vertices(); ++v) {
        if (graph.genera[v] >= 1) {
            StableGraph loop = graph;
            --loop.genera[v];
            loop.edges.push_back({v, v});
            insert(loop);
        }
        // Items at v: legs (encoded as -leg) and half-edges.
        std::vector<int> items;
        for (int leg : graph.legs_at(v))
            items.push_back(-leg);
        for (int h : graph.halfedges_at(v))
            items.push_back(h);
        const int k = static_cast<int>(items.size());
        for (int g1 = 0; g1 <= graph.genera[v]; ++g1) {
            int g2 = graph.genera[v] - g1;
            for (unsigned mask = 0; mask < (1u << k); ++mask) {
                int n1 = __builtin_popcount(mask);
                int n2 = k - n1;
                if (2 * g1 - 2 + n1 + 1 <= 0 || 2 * g2 - 2 + n2 + 1 <= 0)
                    continue;
                StableGraph split = graph;
                const int w = split.num_vertices();
                split.genera[v] = g1;
                split.genera.push_back(g2);
                for (int i = 0; i < k; ++i) {
                    if ((mask >> i) & 1u)
                        continue;
                    if (items[i] < 0)
                        split.leg_vertex[-items[i] - 1] = w;
                    else
                        split.edges[items[i] / 2][items[i] % 2] = w;
                }
                split.edges.push_back({v, w});
                insert(split);
            }
        }
    }
}

} // namespace

std::vector<StableGraph> enumerate_stable_graphs(int g, int n, int max_edges)
{
    StableGraph smooth = StableGraph::smooth(g, n);
    if (max_edges < 0)
        throw ParameterError("max_edges must be nonnegative");
    max_edges = std::min(max_edges, 3 * g - 3 + n);

    std::vector<StableGraph> result;
    std::map<GraphKey, StableGraph> layer;
    auto cf = canonical_form(smooth);
    layer.emplace(cf.key, cf.graph);
    for (int edges = 0;; ++edges) {
        for (const auto& [key, graph] : layer)
            result.push_back(graph);
        if (edges == max_edges)
            break;
        std::map<GraphKey, StableGraph> next;
        for (const auto& [key, graph] : layer)
            degenerations(graph, next);
        layer = std::move(next);
        if (layer.empty())
            break;
    }
    return result;
}

} // namespace tautrel
