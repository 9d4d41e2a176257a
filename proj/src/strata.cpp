#include "tautrel/strata.hpp"

#include "tautrel/error.hpp"
#include "tautrel/wk.hpp"

#include <omp.h>

#include <algorithm>
#include <exception>
#include <memory>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <string>
#include <utility>

namespace tautrel {

// ---------------------------------------------------------------------------------------
// Ambient

Ambient Ambient::curves(int g, int n)
{
    Ambient a{g, n, 1, std::vector<int>(n, 0)};
    a.check();
    return a;
}

Ambient Ambient::roots(int g, int n, int r, std::vector<int> residues)
{
    Ambient a{g, n, r, std::move(residues)};
    a.check();
    return a;
}

void Ambient::check() const
{
    if (g < 0 || n < 0 || 2 * g - 2 + n <= 0)
        throw ParameterError("unstable (g,n) = (" + std::to_string(g) + "," + std::to_string(n) + ")");
    if (r < 1 || r >= 65536)
        throw ParameterError("r out of range");
    if (static_cast<int>(residues.size()) != n)
        throw ParameterError("need one residue per marked point");
    for (int a : residues)
        if (a < 0 || a >= r)
            throw ParameterError("residue out of range");
}

// ---------------------------------------------------------------------------------------
// DecoratedStratum

DecoratedStratum DecoratedStratum::bare(const StableGraph& graph)
{
    DecoratedStratum s;
    s.graph = graph;
    s.deco.leg_psi.assign(graph.num_legs(), 0);
    s.deco.halfedge_psi.assign(graph.num_halfedges(), 0);
    s.deco.vertex_kappa.assign(graph.num_vertices(), {});
    s.deco.residue.assign(graph.num_halfedges(), 0);
    return s;
}

int DecoratedStratum::degree() const
{
    int d = graph.num_edges();
    for (int e : deco.leg_psi)
        d += e;
    for (int e : deco.halfedge_psi)
        d += e;
    for (const auto& k : deco.vertex_kappa)
        d += std::accumulate(k.begin(), k.end(), 0);
    return d;
}

int DecoratedStratum::vertex_degree(int v) const
{
    int d = std::accumulate(deco.vertex_kappa[v].begin(), deco.vertex_kappa[v].end(), 0);
    for (int i = 0; i < graph.num_legs(); ++i)
        if (graph.leg_vertex[i] == v)
            d += deco.leg_psi[i];
    for (int h = 0; h < graph.num_halfedges(); ++h)
        if (graph.vertex_of(h) == v)
            d += deco.halfedge_psi[h];
    return d;
}

bool DecoratedStratum::vanishes_by_dimension() const
{
    for (int v = 0; v < graph.num_vertices(); ++v)
        if (vertex_degree(v) > graph.vertex_dim(v))
            return true;
    return false;
}

GraphLabels DecoratedStratum::labels() const
{
    GraphLabels labels;
    labels.vertex = deco.vertex_kappa;
    labels.leg = deco.leg_psi;
    labels.halfedge.resize(graph.num_halfedges());
    for (int h = 0; h < graph.num_halfedges(); ++h)
        labels.halfedge[h] = deco.halfedge_psi[h] * 65536 + deco.residue[h];
    return labels;
}

DecoratedStratum canonical(const DecoratedStratum& s, StratumKey* key)
{
    GraphLabels labels = s.labels();
    CanonicalForm cf = canonical_form(s.graph, &labels);
    DecoratedStratum out;
    out.graph = std::move(cf.graph);
    out.deco.leg_psi = s.deco.leg_psi;
    out.deco.vertex_kappa.assign(out.graph.num_vertices(), {});
    for (int v = 0; v < s.graph.num_vertices(); ++v)
        out.deco.vertex_kappa[cf.map.vertex[v]] = s.deco.vertex_kappa[v];
    out.deco.halfedge_psi.assign(out.graph.num_halfedges(), 0);
    out.deco.residue.assign(out.graph.num_halfedges(), 0);
    for (int h = 0; h < s.graph.num_halfedges(); ++h) {
        out.deco.halfedge_psi[cf.map.halfedge[h]] = s.deco.halfedge_psi[h];
        out.deco.residue[cf.map.halfedge[h]] = s.deco.residue[h];
    }
    if (key)
        *key = std::move(cf.key);
    return out;
}

DecoratedStratum strip_residues(const DecoratedStratum& s)
{
    DecoratedStratum out = s;
    std::fill(out.deco.residue.begin(), out.deco.residue.end(), 0);
    return out;
}

// ---------------------------------------------------------------------------------------
// TautExpr

TautExpr::TautExpr(Ambient ambient) : ambient_(std::move(ambient)) {}

void TautExpr::add(const DecoratedStratum& s, const Rational& coeff)
{
    if (coeff == 0)
        return;
    StratumKey key;
    DecoratedStratum c = canonical(s, &key);
    add_canonical(key, c, coeff);
}

void TautExpr::add_canonical(const StratumKey& key, const DecoratedStratum& s, const Rational& coeff)
{
    if (coeff == 0)
        return;
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, Term{s, coeff});
        return;
    }
    it->second.coeff += coeff;
    if (it->second.coeff == 0)
        terms_.erase(it);
}

void TautExpr::add(const TautExpr& other, const Rational& scale)
{
    if (!(other.ambient_ == ambient_))
        throw ParameterError("adding classes from different moduli spaces");
    for (const auto& [key, term] : other.terms_)
        add_canonical(key, term.stratum, term.coeff * scale);
}

TautExpr TautExpr::scaled(const Rational& factor) const
{
    TautExpr out(ambient_);
    if (factor == 0)
        return out;
    out.terms_ = terms_;
    for (auto& [key, term] : out.terms_)
        term.coeff *= factor;
    return out;
}

TautExpr TautExpr::degree_part(int degree) const
{
    TautExpr out(ambient_);
    for (const auto& [key, term] : terms_)
        if (term.stratum.degree() == degree)
            out.terms_.emplace(key, term);
    return out;
}

std::optional<int> TautExpr::homogeneous_degree() const
{
    std::optional<int> degree;
    for (const auto& [key, term] : terms_) {
        int d = term.stratum.degree();
        if (degree && *degree != d)
            return std::nullopt;
        degree = d;
    }
    return degree;
}

int TautExpr::max_degree() const
{
    int d = -1;
    for (const auto& [key, term] : terms_)
        d = std::max(d, term.stratum.degree());
    return d;
}

bool TautExpr::operator==(const TautExpr& other) const
{
    if (!(ambient_ == other.ambient_) || terms_.size() != other.terms_.size())
        return false;
    auto it = other.terms_.begin();
    for (const auto& [key, term] : terms_) {
        if (key != it->first || term.coeff != it->second.coeff)
            return false;
        ++it;
    }
    return true;
}

TautExpr fundamental_class(const Ambient& ambient)
{
    TautExpr e(ambient);
    e.add(DecoratedStratum::bare(StableGraph::smooth(ambient.g, ambient.n)), 1);
    return e;
}

TautExpr psi_class(const Ambient& ambient, int leg, int exponent)
{
    if (leg < 1 || leg > ambient.n)
        throw ParameterError("no such marked point");
    auto s = DecoratedStratum::bare(StableGraph::smooth(ambient.g, ambient.n));
    s.deco.leg_psi[leg - 1] = exponent;
    TautExpr e(ambient);
    e.add(s, 1);
    return e;
}

TautExpr kappa_class(const Ambient& ambient, int index)
{
    if (index < 1)
        throw ParameterError("kappa index must be positive");
    auto s = DecoratedStratum::bare(StableGraph::smooth(ambient.g, ambient.n));
    s.deco.vertex_kappa[0] = {index};
    TautExpr e(ambient);
    e.add(s, 1);
    return e;
}

TautExpr stratum_class(const Ambient& ambient, const DecoratedStratum& s, const Rational& coeff)
{
    s.graph.check();
    if (s.graph.num_legs() != ambient.n || s.graph.genus() != ambient.g)
        throw ParameterError("stratum does not live on the given moduli space");
    TautExpr e(ambient);
    e.add(s, coeff);
    return e;
}

// ---------------------------------------------------------------------------------------
// Admissible residues

namespace {

bool residues_admissible(const Ambient& ambient, const StableGraph& graph, const std::vector<int>& residue)
{
    if (ambient.r == 1)
        return true;
    std::vector<long> sum(graph.num_vertices(), 0);
    for (int i = 0; i < graph.num_legs(); ++i)
        sum[graph.leg_vertex[i]] += ambient.residues[i];
    for (int h = 0; h < graph.num_halfedges(); ++h) {
        if ((residue[h] + residue[h ^ 1]) % ambient.r != 0)
            return false;
        sum[graph.vertex_of(h)] += residue[h];
    }
    for (long s : sum)
        if (s % ambient.r != 0)
            return false;
    return true;
}

} // namespace

std::vector<std::vector<int>> admissible_residues(const Ambient& ambient, const StableGraph& graph)
{
    std::vector<std::vector<int>> result;
    const int E = graph.num_edges();
    std::vector<int> residue(2 * E, 0);
    auto recurse = [&](auto&& self, int e) -> void {
        if (e == E) {
            if (residues_admissible(ambient, graph, residue))
                result.push_back(residue);
            return;
        }
        for (int q = 0; q < ambient.r; ++q) {
            residue[2 * e] = q;
            residue[2 * e + 1] = (ambient.r - q) % ambient.r;
            self(self, e + 1);
        }
    };
    recurse(recurse, 0);
    return result;
}

// ---------------------------------------------------------------------------------------
// Products

namespace {

// All stable graphs of the ambient type, with the contraction class of every edge subset.
struct GraphIndex {
    std::vector<StableGraph> graphs;
    std::vector<std::vector<GraphKey>> kept_key; // [graph][mask of kept edges]
    std::map<GraphKey, std::vector<std::pair<int, unsigned>>> by_key;

    explicit GraphIndex(int g, int n)
    {
        graphs = enumerate_stable_graphs(g, n, 3 * g - 3 + n);
        kept_key.resize(graphs.size());
        for (size_t id = 0; id < graphs.size(); ++id) {
            const int E = graphs[id].num_edges();
            const unsigned full = (1u << E) - 1;
            kept_key[id].resize(1u << E);
            for (unsigned kept = 0; kept <= full; ++kept) {
                auto c = contract_edges(graphs[id], full & ~kept);
                kept_key[id][kept] = canonical_key(c.graph);
                by_key[kept_key[id][kept]].emplace_back(static_cast<int>(id), kept);
            }
        }
    }
};

struct PairKeyHash {
    std::size_t operator()(const std::pair<StratumKey, StratumKey>& p) const
    {
        std::size_t h = 1469598103934665603ull;
        for (int x : p.first)
            h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
        h ^= 0x9e3779b97f4a7c15ull;
        for (int x : p.second)
            h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
        return h;
    }
};

struct AmbientData {
    std::once_flag index_once;
    std::unique_ptr<GraphIndex> index;
    std::shared_mutex products_mutex;
    std::map<std::pair<StratumKey, StratumKey>, std::vector<Term>> products;

    const GraphIndex& graph_index(const Ambient& ambient)
    {
        std::call_once(index_once, [&] { index = std::make_unique<GraphIndex>(ambient.g, ambient.n); });
        return *index;
    }
};

struct Registry {
    std::mutex mutex;
    std::map<std::vector<int>, std::unique_ptr<AmbientData>> ambients;
};

Registry& registry()
{
    static Registry r;
    return r;
}

AmbientData& ambient_data(const Ambient& ambient)
{
    std::vector<int> key{ambient.g, ambient.n, ambient.r};
    key.insert(key.end(), ambient.residues.begin(), ambient.residues.end());
    Registry& reg = registry();
    std::lock_guard lock(reg.mutex);
    auto& slot = reg.ambients[key];
    if (!slot)
        slot = std::make_unique<AmbientData>();
    return *slot;
}

bool is_identity(const DecoratedStratum& s)
{
    return s.graph.num_edges() == 0 && s.degree() == 0;
}

// Ways to pull a vertex kappa multiset back to the vertices of a degeneration:
// kappa_b(x) pulls back to the sum of kappa_b over the vertices contracted onto x.
void pull_back_kappa(const std::vector<std::vector<int>>& kappa, const std::vector<int>& to_factor_vertex,
                     std::map<std::vector<std::vector<int>>, long>& out)
{
    const int V = static_cast<int>(to_factor_vertex.size());
    std::vector<std::vector<int>> preimage(kappa.size());
    for (int v = 0; v < V; ++v)
        preimage[to_factor_vertex[v]].push_back(v);
    std::vector<std::pair<int, int>> items; // (factor vertex, index)
    for (size_t x = 0; x < kappa.size(); ++x)
        for (int b : kappa[x])
            items.emplace_back(static_cast<int>(x), b);
    std::vector<std::vector<int>> current(V);
    auto recurse = [&](auto&& self, size_t i) -> void {
        if (i == items.size()) {
            auto sorted = current;
            for (auto& k : sorted)
                std::sort(k.begin(), k.end());
            ++out[sorted];
            return;
        }
        for (int v : preimage[items[i].first]) {
            current[v].push_back(items[i].second);
            self(self, i + 1);
            current[v].pop_back();
        }
    };
    recurse(recurse, 0);
}

std::vector<Term> compute_product(const Ambient& ambient, const DecoratedStratum& a_in, const DecoratedStratum& b_in)
{
    const DecoratedStratum& A = a_in.graph.num_edges() >= b_in.graph.num_edges() ? a_in : b_in;
    const DecoratedStratum& B = &A == &a_in ? b_in : a_in;
    const int EA = A.graph.num_edges();
    const int EB = B.graph.num_edges();
    const GraphKey KA = canonical_key(A.graph);
    const GraphKey KB = canonical_key(B.graph);
    const GraphIndex& index = ambient_data(ambient).graph_index(ambient);
    const Rational excess = Rational(-1) / Rational(ambient.r);

    TautExpr result(ambient);
    auto found = index.by_key.find(KA);
    if (found == index.by_key.end())
        return {};

    for (const auto& [gid, kept_a] : found->second) {
        const StableGraph& G = index.graphs[gid];
        const int E = G.num_edges();
        if (E > EA + EB)
            continue;
        const unsigned full = (1u << E) - 1;
        const unsigned rest = full & ~kept_a;
        const int need = EB - __builtin_popcount(rest);
        if (need < 0)
            continue;

        Contraction ca = contract_edges(G, rest);
        auto isos_a = isomorphisms(ca.graph, A.graph);

        for (unsigned extra = kept_a;; extra = (extra - 1) & kept_a) {
            if (__builtin_popcount(extra) == need) {
                const unsigned kept_b = rest | extra;
                if (index.kept_key[gid][kept_b] == KB) {
                    Contraction cb = contract_edges(G, full & ~kept_b);
                    auto isos_b = isomorphisms(cb.graph, B.graph);
                    const Rational weight = Rational(1) / Rational(static_cast<long>(isos_a.size() * isos_b.size()));
                    std::vector<int> shared;
                    for (int e = 0; e < E; ++e)
                        if (((kept_a & kept_b) >> e) & 1u)
                            shared.push_back(e);

                    for (const auto& ia : isos_a) {
                        for (const auto& ib : isos_b) {
                            DecoratedStratum s = DecoratedStratum::bare(G);
                            for (int i = 0; i < G.num_legs(); ++i)
                                s.deco.leg_psi[i] = A.deco.leg_psi[i] + B.deco.leg_psi[i];
                            std::vector<int> residue(2 * E, -1);
                            bool consistent = true;
                            auto pull = [&](const DecoratedStratum& F, const Contraction& c, const Relabeling& iso) {
                                for (int e = 0; e < E; ++e) {
                                    if (c.edge[e] < 0)
                                        continue;
                                    for (int side = 0; side < 2; ++side) {
                                        int hf = iso.halfedge[2 * c.edge[e] + side];
                                        s.deco.halfedge_psi[2 * e + side] += F.deco.halfedge_psi[hf];
                                        int q = F.deco.residue[hf];
                                        if (residue[2 * e + side] >= 0 && residue[2 * e + side] != q)
                                            consistent = false;
                                        residue[2 * e + side] = q;
                                    }
                                }
                            };
                            pull(A, ca, ia);
                            pull(B, cb, ib);
                            if (!consistent || !residues_admissible(ambient, G, residue))
                                continue;
                            s.deco.residue = residue;

                            std::vector<int> to_a(G.num_vertices()), to_b(G.num_vertices());
                            for (int v = 0; v < G.num_vertices(); ++v) {
                                to_a[v] = ia.vertex[ca.vertex[v]];
                                to_b[v] = ib.vertex[cb.vertex[v]];
                            }
                            std::map<std::vector<std::vector<int>>, long> kappa_a, kappa_b;
                            pull_back_kappa(A.deco.vertex_kappa, to_a, kappa_a);
                            pull_back_kappa(B.deco.vertex_kappa, to_b, kappa_b);

                            const unsigned choices = 1u << shared.size();
                            for (const auto& [ka, ma] : kappa_a) {
                                for (const auto& [kb, mb] : kappa_b) {
                                    DecoratedStratum t = s;
                                    for (int v = 0; v < G.num_vertices(); ++v) {
                                        auto& k = t.deco.vertex_kappa[v];
                                        k = ka[v];
                                        k.insert(k.end(), kb[v].begin(), kb[v].end());
                                        std::sort(k.begin(), k.end());
                                    }
                                    Rational base = weight * Rational(ma * mb);
                                    for (unsigned bits = 0; bits < choices; ++bits) {
                                        DecoratedStratum u = t;
                                        Rational c = base;
                                        for (size_t k = 0; k < shared.size(); ++k) {
                                            ++u.deco.halfedge_psi[2 * shared[k] + ((bits >> k) & 1u)];
                                            c *= excess;
                                        }
                                        if (u.vanishes_by_dimension())
                                            continue;
                                        result.add(u, c);
                                    }
                                }
                            }
                        }
                    }
                }
            }
            if (extra == 0)
                break;
        }
    }

    std::vector<Term> terms;
    terms.reserve(result.size());
    for (const auto& [key, term] : result.terms())
        terms.push_back(term);
    return terms;
}

} // namespace

std::vector<Term> multiply_strata(const Ambient& ambient, const DecoratedStratum& a, const DecoratedStratum& b)
{
    if (is_identity(a))
        return {Term{b, 1}};
    if (is_identity(b))
        return {Term{a, 1}};
    StratumKey ka, kb;
    DecoratedStratum ca = canonical(a, &ka);
    DecoratedStratum cb = canonical(b, &kb);
    if (kb < ka) {
        std::swap(ka, kb);
        std::swap(ca, cb);
    }
    auto key = std::make_pair(ka, kb);
    AmbientData& data = ambient_data(ambient);
    {
        std::shared_lock lock(data.products_mutex);
        auto it = data.products.find(key);
        if (it != data.products.end())
            return it->second;
    }
    auto terms = compute_product(ambient, ca, cb);
    std::unique_lock lock(data.products_mutex);
    data.products.emplace(std::move(key), terms);
    return terms;
}

void clear_product_cache()
{
    Registry& reg = registry();
    std::lock_guard lock(reg.mutex);
    for (auto& [key, data] : reg.ambients) {
        std::unique_lock products_lock(data->products_mutex);
        data->products.clear();
    }
}

namespace {

struct PairList {
    std::vector<const Term*> left, right;
    std::vector<std::pair<int, int>> pairs;
};

PairList product_pairs(const TautExpr& a, const TautExpr& b, const MultiplyOptions& options)
{
    if (!(a.ambient() == b.ambient()))
        throw ParameterError("multiplying classes from different moduli spaces");
    PairList list;
    for (const auto& [key, term] : a.terms())
        list.left.push_back(&term);
    for (const auto& [key, term] : b.terms())
        list.right.push_back(&term);
    const int top = a.ambient().dim();
    for (size_t i = 0; i < list.left.size(); ++i) {
        int da = list.left[i]->stratum.degree();
        for (size_t j = 0; j < list.right.size(); ++j) {
            int d = da + list.right[j]->stratum.degree();
            if (d > top || (options.max_degree >= 0 && d > options.max_degree))
                continue;
            list.pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
    }
    return list;
}

void accumulate_pair(const Ambient& ambient, const PairList& list, size_t p, TautExpr& into)
{
    const Term& x = *list.left[list.pairs[p].first];
    const Term& y = *list.right[list.pairs[p].second];
    Rational c = x.coeff * y.coeff;
    for (const auto& t : multiply_strata(ambient, x.stratum, y.stratum))
        into.add(t.stratum, c * t.coeff);
}

void check_size(const TautExpr& e, const MultiplyOptions& options)
{
    if (options.max_terms && e.size() > options.max_terms)
        throw LimitError("product has " + std::to_string(e.size()) + " terms, cap is " +
                         std::to_string(options.max_terms));
}

} // namespace

TautExpr multiply_serial(const TautExpr& a, const TautExpr& b, const MultiplyOptions& options)
{
    PairList list = product_pairs(a, b, options);
    TautExpr result(a.ambient());
    for (size_t p = 0; p < list.pairs.size(); ++p)
        accumulate_pair(a.ambient(), list, p, result);
    check_size(result, options);
    return result;
}

TautExpr multiply(const TautExpr& a, const TautExpr& b, const MultiplyOptions& options)
{
    PairList list = product_pairs(a, b, options);
    const int threads = omp_get_max_threads();
    if (threads <= 1 || list.pairs.size() < 2)
        return multiply_serial(a, b, options);

    std::vector<TautExpr> partial(threads, TautExpr(a.ambient()));
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const long count = static_cast<long>(list.pairs.size());
#pragma omp parallel num_threads(threads)
    {
        TautExpr& mine = partial[omp_get_thread_num()];
#pragma omp for schedule(dynamic, 4)
        for (long p = 0; p < count; ++p) {
            try {
                accumulate_pair(a.ambient(), list, static_cast<size_t>(p), mine);
            }
            catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
            }
        }
    }
    if (failure)
        std::rethrow_exception(failure);
    TautExpr result(a.ambient());
    for (const auto& part : partial)
        result.add(part);
    check_size(result, options);
    return result;
}

// ---------------------------------------------------------------------------------------
// Integration

Rational integrate_stratum(const DecoratedStratum& s)
{
    const StableGraph& G = s.graph;
    Rational value = 1;
    for (int v = 0; v < G.num_vertices(); ++v) {
        std::vector<int> psi;
        for (int i = 0; i < G.num_legs(); ++i)
            if (G.leg_vertex[i] == v)
                psi.push_back(s.deco.leg_psi[i]);
        for (int h = 0; h < G.num_halfedges(); ++h)
            if (G.vertex_of(h) == v)
                psi.push_back(s.deco.halfedge_psi[h]);
        value *= kappa_psi_integral_or_zero(G.genera[v], psi, s.deco.vertex_kappa[v]);
        if (value == 0)
            return 0;
    }
    value /= aut_order(G);
    return value;
}

Rational integrate(const TautExpr& e)
{
    if (e.ambient().r != 1)
        throw ParameterError("integration is defined on the moduli space of curves (r = 1)");
    if (e.empty())
        return 0;
    auto degree = e.homogeneous_degree();
    if (!degree || *degree != e.ambient().dim())
        throw DimensionError("integrand is not homogeneous of top degree " + std::to_string(e.ambient().dim()));
    Rational sum = 0;
    for (const auto& [key, term] : e.terms())
        sum += term.coeff * integrate_stratum(term.stratum);
    return sum;
}

Rational pairing(const TautExpr& relation, const TautExpr& monomial)
{
    if (relation.empty() || monomial.empty())
        return 0;
    auto dr = relation.homogeneous_degree();
    auto dm = monomial.homogeneous_degree();
    if (!dr || !dm || *dr + *dm != relation.ambient().dim())
        throw DimensionError("pairing needs complementary homogeneous degrees");
    MultiplyOptions options;
    options.max_degree = relation.ambient().dim();
    return integrate(multiply(relation, monomial, options));
}

} // namespace tautrel
