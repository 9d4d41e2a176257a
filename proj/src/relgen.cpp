#include "tautrel/relgen.hpp"

#include "tautrel/error.hpp"

#include <algorithm>

namespace tautrel {

EquivariantEulerSeries euler_series(const RelationSpec& s, int truncation)
{
    EquivariantEulerSeries e;
    e.rank = virtual_rank(s);
    for (int d = 1; d <= truncation; ++d)
        e.coefficients[d] = Rational(factorial(d - 1));
    return e;
}

Ambient root_ambient(const RelationSpec& s)
{
    return Ambient::roots(s.g, s.n, s.r, s.a);
}

namespace {

// Adds coeff * xi_*(gamma_{d-1}) for the one-edge graph whose chosen branch is half-edge 0.
// The sign alternates with the exponent on the opposite branch: gamma_{d-1} =
// sum_{i+j=d-1} psi^i (-psihat)^j. Putting it on the chosen branch instead breaks
// vanishing as soon as B_{d+1}(q/r) != B_{d+1}(1-q/r) at a separating node (r >= 3).
void add_node_term(TautExpr& out, const StableGraph& graph, int q, int r, int d, const Rational& coeff)
{
    DecoratedStratum s = DecoratedStratum::bare(graph);
    s.deco.residue[0] = q;
    s.deco.residue[1] = (r - q) % r;
    // xi_* of a class is |Aut| times the stratum class in our normalization
    const Rational scale = coeff * Rational(aut_order(graph));
    for (int i = 0; i <= d - 1; ++i) {
        s.deco.halfedge_psi[0] = i;
        s.deco.halfedge_psi[1] = d - 1 - i;
        out.add(s, (d - 1 - i) % 2 ? -scale : scale);
    }
}

} // namespace

TautExpr chern_char_class(const RelationSpec& s, int d)
{
    const Ambient amb = root_ambient(s);
    const ChernCharExpr ch = chiodo_chern_char(s, d);
    TautExpr out(amb);
    if (d <= amb.dim()) {
        DecoratedStratum smooth = DecoratedStratum::bare(StableGraph::smooth(s.g, s.n));
        DecoratedStratum k = smooth;
        k.deco.vertex_kappa[0] = {d};
        out.add(k, ch.kappa_coeff);
        for (int j = 0; j < s.n; ++j) {
            DecoratedStratum p = smooth;
            p.deco.leg_psi[j] = d;
            out.add(p, ch.psi_coeffs[j]);
        }
    }
    for (const auto& t : ch.sep_terms) {
        StableGraph graph;
        graph.genera = {t.l, s.g - t.l};
        graph.leg_vertex.assign(s.n, 1);
        for (int i : t.I)
            graph.leg_vertex[i - 1] = 0;
        graph.edges = {{0, 1}};
        add_node_term(out, graph, t.q, s.r, d, t.coeff);
    }
    for (const auto& t : ch.irr_terms) {
        StableGraph graph;
        graph.genera = {s.g - 1};
        graph.leg_vertex.assign(s.n, 0);
        graph.edges = {{0, 0}};
        add_node_term(out, graph, t.q, s.r, d, t.coeff);
    }
    // Terms beyond a vertex's dimension are zero classes.
    TautExpr pruned(amb);
    for (const auto& [key, term] : out.terms())
        if (!term.stratum.vanishes_by_dimension())
            pruned.add_canonical(key, term.stratum, term.coeff);
    return pruned;
}

TautExpr bracket(const RelationSpec& s, int d)
{
    return chern_char_class(s, d).scaled(Rational(factorial(d + 1)));
}

std::vector<std::vector<int>> partitions(int d)
{
    std::vector<std::vector<int>> out;
    std::vector<int> current;
    auto recurse = [&](auto&& self, int remaining, int largest) -> void {
        if (remaining == 0) {
            out.push_back(current);
            return;
        }
        for (int part = std::min(remaining, largest); part >= 1; --part) {
            current.push_back(part);
            self(self, remaining - part, part);
            current.pop_back();
        }
    };
    if (d >= 1)
        recurse(recurse, d, d);
    return out;
}

BZrRelation relation_bzr(const RelationSpec& s, bool allow_out_of_window)
{
    validate_spec(s, allow_out_of_window);
    BZrRelation rel;
    rel.spec = s;
    for (const auto& parts : partitions(s.d)) {
        Rational c = 1;
        for (size_t i = 0; i < parts.size();) {
            size_t j = i;
            while (j < parts.size() && parts[j] == parts[i])
                ++j;
            c /= Rational(factorial(static_cast<unsigned>(j - i)));
            i = j;
        }
        for (int p : parts) {
            c /= p * (p + 1);
            if (!rel.brackets.count(p))
                rel.brackets.emplace(p, bracket(s, p));
        }
        rel.terms.push_back({parts, c});
    }
    return rel;
}

TautExpr BZrRelation::expand(const MultiplyOptions& options) const
{
    const Ambient amb = root_ambient(spec);
    MultiplyOptions opts = options;
    opts.max_degree = spec.d;
    TautExpr out(amb);
    for (const auto& term : terms) {
        TautExpr product = brackets.at(term.parts[0]);
        for (size_t i = 1; i < term.parts.size(); ++i)
            product = multiply(product, brackets.at(term.parts[i]), opts);
        out.add(product, term.coeff);
    }
    return out.degree_part(spec.d);
}

TautExpr exp_series_relation(const RelationSpec& s, bool allow_out_of_window, const MultiplyOptions& options)
{
    validate_spec(s, allow_out_of_window);
    const Ambient amb = root_ambient(s);
    MultiplyOptions opts = options;
    opts.max_degree = s.d;

    TautExpr x(amb);
    for (int k = 1; k <= s.d; ++k)
        x.add(chern_char_class(s, k), Rational(factorial(k - 1)));

    // exp(x) = sum_m x^m / m!, truncated at degree d; x has no constant term.
    TautExpr total(amb);
    TautExpr power = fundamental_class(amb);
    for (int m = 1; m <= s.d; ++m) {
        power = multiply(power, x, opts).scaled(Rational(1, m));
        total.add(power);
    }
    return total.degree_part(s.d);
}

Rational pushforward_multiplicity(const RelationSpec& s, const DecoratedStratum& root_stratum)
{
    const StableGraph& G = root_stratum.graph;
    const int E = G.num_edges();
    const int h1 = G.h1();
    const bool all_zero = std::all_of(s.a.begin(), s.a.end(), [](int x) { return x == 0; });
    Rational m = int_power(s.r, -E - h1);
    if (all_zero && s.nontrivial_component) {
        const auto& w = root_stratum.deco.residue;
        if (std::all_of(w.begin(), w.end(), [](int q) { return q == 0; }))
            m -= int_power(s.r, -E - 2 * s.g);
    }
    return m;
}

TautExpr pushforward(const RelationSpec& s, const TautExpr& root_class)
{
    TautExpr out(Ambient::curves(s.g, s.n));
    for (const auto& [key, term] : root_class.terms())
        out.add(strip_residues(term.stratum), term.coeff * pushforward_multiplicity(s, term.stratum));
    return out;
}

TautExpr pushforward_relation(const RelationSpec& s, bool allow_out_of_window, const MultiplyOptions& options)
{
    BZrRelation rel = relation_bzr(s, allow_out_of_window);
    TautExpr out = pushforward(s, rel.expand(options));
    auto degree = out.homogeneous_degree();
    if (!out.empty() && (!degree || *degree != s.d))
        throw IntegrityError("pushed-forward relation is not homogeneous of degree " + std::to_string(s.d));
    return out;
}

} // namespace tautrel
