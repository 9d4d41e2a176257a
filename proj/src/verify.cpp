#include "tautrel/verify.hpp"

#include "tautrel/error.hpp"
#include "tautrel/relgen.hpp"

#include <omp.h>

#include <chrono>
#include <exception>
#include <map>
#include <mutex>
#include <sstream>

namespace tautrel {

namespace {

// Decorations of total degree `budget` on `graph`, vertex by vertex, respecting vertex dimensions.
void decorate(const StableGraph& graph, int budget, std::map<StratumKey, DecoratedStratum>& out)
{
    DecoratedStratum s = DecoratedStratum::bare(graph);
    const int V = graph.num_vertices();
    std::vector<std::vector<int>> psi_slots(V); // >= 0: leg index, < 0: ~halfedge
    for (int i = 0; i < graph.num_legs(); ++i)
        psi_slots[graph.leg_vertex[i]].push_back(i);
    for (int h = 0; h < graph.num_halfedges(); ++h)
        psi_slots[graph.vertex_of(h)].push_back(~h);

    auto set_psi = [&](int slot, int e) {
        if (slot >= 0)
            s.deco.leg_psi[slot] = e;
        else
            s.deco.halfedge_psi[~slot] = e;
    };

    auto per_vertex = [&](auto&& self, int v, int remaining) -> void {
        if (v == V) {
            if (remaining == 0) {
                StratumKey key;
                DecoratedStratum c = canonical(s, &key);
                out.emplace(std::move(key), std::move(c));
            }
            return;
        }
        const int cap = std::min(remaining, graph.vertex_dim(v));
        // kappa multiset first (non-increasing parts), then psi exponents on the slots
        auto psi_fill = [&](auto&& fill, size_t slot, int left, int used) -> void {
            if (slot == psi_slots[v].size()) {
                self(self, v + 1, remaining - used);
                return;
            }
            for (int e = 0; e <= left; ++e) {
                set_psi(psi_slots[v][slot], e);
                fill(fill, slot + 1, left - e, used + e);
            }
            set_psi(psi_slots[v][slot], 0);
        };
        auto kappa_fill = [&](auto&& fill, int left, int largest, int used) -> void {
            psi_fill(psi_fill, 0, left, used);
            for (int k = std::min(left, largest); k >= 1; --k) {
                s.deco.vertex_kappa[v].push_back(k);
                fill(fill, left - k, k, used + k);
                s.deco.vertex_kappa[v].pop_back();
            }
        };
        kappa_fill(kappa_fill, cap, cap, 0);
    };
    per_vertex(per_vertex, 0, budget);
}

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

} // namespace

std::vector<DecoratedStratum> complementary_strata(int g, int n, int degree)
{
    if (g < 0 || n < 0 || 2 * g - 2 + n <= 0)
        throw ParameterError("unstable (g,n)");
    const int dim = 3 * g - 3 + n;
    if (degree < 0 || degree > dim)
        throw ParameterError("degree " + std::to_string(degree) + " outside [0, " + std::to_string(dim) + "]");
    std::map<StratumKey, DecoratedStratum> found;
    for (const auto& graph : enumerate_stable_graphs(g, n, degree))
        decorate(graph, degree - graph.num_edges(), found);
    std::vector<DecoratedStratum> out;
    out.reserve(found.size());
    for (auto& [key, s] : found)
        out.push_back(std::move(s));
    return out;
}

std::vector<TautExpr> complementary_monomials(int g, int n, int degree)
{
    const Ambient amb = Ambient::curves(g, n);
    std::vector<TautExpr> out;
    for (const auto& s : complementary_strata(g, n, degree))
        out.push_back(stratum_class(amb, s));
    return out;
}

std::string describe(const DecoratedStratum& s)
{
    const StableGraph& G = s.graph;
    std::ostringstream os;
    for (int v = 0; v < G.num_vertices(); ++v) {
        if (v)
            os << ' ';
        os << 'g' << G.genera[v] << '[';
        auto legs = G.legs_at(v);
        for (size_t i = 0; i < legs.size(); ++i)
            os << (i ? "," : "") << legs[i];
        os << ']';
    }
    for (int e = 0; e < G.num_edges(); ++e)
        os << " e" << G.edges[e][0] << '-' << G.edges[e][1];
    for (int i = 0; i < G.num_legs(); ++i)
        if (s.deco.leg_psi[i])
            os << " psi" << i + 1 << '^' << s.deco.leg_psi[i];
    for (int h = 0; h < G.num_halfedges(); ++h)
        if (s.deco.halfedge_psi[h])
            os << " psi(h" << h << ")^" << s.deco.halfedge_psi[h];
    for (int v = 0; v < G.num_vertices(); ++v)
        for (int k : s.deco.vertex_kappa[v])
            os << " kappa" << k << "(v" << v << ')';
    return os.str();
}

VerificationReport verify_relation(const RelationSpec& s, const TautExpr& relation, const VerifyOptions& options)
{
    const auto start = std::chrono::steady_clock::now();
    const Ambient amb = Ambient::curves(s.g, s.n);
    if (!(relation.ambient() == amb))
        throw ParameterError("relation does not live on the moduli space of the spec");
    if (!relation.empty() && relation.homogeneous_degree() != s.d)
        throw IntegrityError("relation is not homogeneous of degree " + std::to_string(s.d));

    VerificationReport report;
    report.spec = s;
    report.ambient_dim = amb.dim();
    report.relation_degree = s.d;
    report.relation_terms = relation.size();

    const auto strata = complementary_strata(s.g, s.n, amb.dim() - s.d);
    report.monomials_paired = strata.size();
    report.pairings.resize(strata.size());

    MultiplyOptions mult;
    mult.max_degree = amb.dim();
    mult.max_terms = options.max_terms;

    auto pair_one = [&](size_t i) {
        TautExpr mono = stratum_class(amb, strata[i]);
        Rational value = relation.empty() ? Rational(0) : integrate(multiply_serial(relation, mono, mult));
        report.pairings[i] = {i, describe(strata[i]), value};
    };

    const long count = static_cast<long>(strata.size());
    if (options.parallel && omp_get_max_threads() > 1 && count > 1) {
        std::exception_ptr failure;
        std::mutex failure_mutex;
#pragma omp parallel for schedule(dynamic, 1)
        for (long i = 0; i < count; ++i) {
            try {
                pair_one(static_cast<size_t>(i));
            }
            catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
            }
        }
        if (failure)
            std::rethrow_exception(failure);
    }
    else {
        for (long i = 0; i < count; ++i)
            pair_one(static_cast<size_t>(i));
    }

    report.all_zero = true;
    for (const auto& p : report.pairings)
        if (p.value != 0)
            report.all_zero = false;
    report.elapsed = seconds_since(start);
    return report;
}

VerificationReport verify(const RelationSpec& s, const VerifyOptions& options)
{
    const auto start = std::chrono::steady_clock::now();
    validate_spec(s, options.allow_out_of_window);
    if (options.max_graphs) {
        const auto graphs = enumerate_stable_graphs(s.g, s.n, 3 * s.g - 3 + s.n).size();
        if (graphs > options.max_graphs)
            throw LimitError("moduli space has " + std::to_string(graphs) + " stable graphs, cap is " +
                             std::to_string(options.max_graphs));
    }
    MultiplyOptions mult;
    mult.max_terms = options.max_terms;
    TautExpr relation = pushforward_relation(s, options.allow_out_of_window, mult);
    VerificationReport report = verify_relation(s, relation, options);
    report.elapsed = seconds_since(start);
    return report;
}

} // namespace tautrel
