#pragma once

#include "tautrel/rational.hpp"
#include "tautrel/stable_graph.hpp"
#include "tautrel/strata.hpp"
#include "tautrel/verify.hpp"
#include "tautrel/wk.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <vector>

namespace support {

using namespace tautrel;

inline StableGraph make(std::vector<int> genera, std::vector<int> legs, std::vector<std::array<int, 2>> edges)
{
    StableGraph g;
    g.genera = std::move(genera);
    g.leg_vertex = std::move(legs);
    g.edges = std::move(edges);
    return g;
}

// Decorated strata of degree 0, 1, 2 (as far as the dimension allows).
inline std::vector<std::vector<DecoratedStratum>> pool_for(int g, int n)
{
    std::vector<std::vector<DecoratedStratum>> pool;
    for (int d = 0; d <= std::min(2, 3 * g - 3 + n); ++d)
        pool.push_back(complementary_strata(g, n, d));
    return pool;
}

// Homogeneous combination of one to three strata from the pool, with small rational coefficients.
inline TautExpr random_class(const Ambient& amb, std::mt19937& rng, const std::vector<std::vector<DecoratedStratum>>& pool)
{
    TautExpr e(amb);
    std::uniform_int_distribution<int> count(1, 3), coeff(-5, 5);
    std::uniform_int_distribution<size_t> degree(0, pool.size() - 1);
    const size_t d = degree(rng);
    for (int i = count(rng); i > 0; --i) {
        std::uniform_int_distribution<size_t> pick(0, pool[d].size() - 1);
        int c = coeff(rng);
        e.add(pool[d][pick(rng)], make_rational(c ? c : 1, 1 + static_cast<long>(rng() % 3)));
    }
    return e;
}

// Polynomials in commuting symbols x_1, x_2, ... keyed by sorted index lists.
using Symbolic = std::map<std::vector<int>, Rational>;

// Degree-d part of exp(sum_k (k-1)! x_k) with x_k of degree k.
inline Symbolic symbolic_exp_part(int d)
{
    Symbolic total, power{{{}, 1}};
    auto degree = [](const std::vector<int>& m) {
        int s = 0;
        for (int x : m)
            s += x;
        return s;
    };
    for (int m = 1; m <= d; ++m) {
        Symbolic next;
        for (const auto& [mono, c] : power)
            for (int k = 1; k <= d; ++k) {
                auto grown = mono;
                grown.push_back(k);
                if (degree(grown) > d)
                    continue;
                std::sort(grown.begin(), grown.end());
                next[grown] += c * Rational(factorial(k - 1)) / m;
            }
        power = next;
        for (const auto& [mono, c] : power)
            if (degree(mono) == d)
                total[mono] += c;
    }
    return total;
}

// Sorted exponent tuples of length n and total 3g-3+n.
inline std::vector<std::vector<int>> psi_tuples(int g, int n)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    const int total = 3 * g - 3 + n;
    auto rec = [&](auto&& self, int left, int min) -> void {
        if (static_cast<int>(cur.size()) == n) {
            if (left == 0)
                out.push_back(cur);
            return;
        }
        for (int e = min; e <= left; ++e) {
            cur.push_back(e);
            self(self, left - e, e);
            cur.pop_back();
        }
    };
    if (total >= 0)
        rec(rec, total, 0);
    return out;
}

inline Integer odd_double_factorial(int m) // (2m-1)!!
{
    Integer f = 1;
    for (int i = 2 * m - 1; i > 1; i -= 2)
        f *= i;
    return f;
}

// Right-hand side of DVV for <tau_{k+1} tau_rest>_g, evaluated with the library values.
inline Rational dvv_rhs(int g, int k, const std::vector<int>& rest)
{
    Rational sum = 0;
    const int m = static_cast<int>(rest.size());
    for (int j = 0; j < m; ++j) {
        auto raised = rest;
        raised[j] += k;
        sum += Rational(odd_double_factorial(k + rest[j] + 1)) / Rational(odd_double_factorial(rest[j])) *
               psi_integral_or_zero(g, raised);
    }
    for (int a = 0; a <= k - 1; ++a) {
        const int b = k - 1 - a;
        Rational c = Rational(odd_double_factorial(a + 1) * odd_double_factorial(b + 1)) / 2;
        auto joined = rest;
        joined.push_back(a);
        joined.push_back(b);
        if (g >= 1)
            sum += c * psi_integral_or_zero(g - 1, joined);
        for (int g1 = 0; g1 <= g; ++g1)
            for (unsigned mask = 0; mask < (1u << m); ++mask) {
                std::vector<int> l{a}, r{b};
                for (int i = 0; i < m; ++i)
                    ((mask >> i) & 1u ? l : r).push_back(rest[i]);
                sum += c * psi_integral_or_zero(g1, l) * psi_integral_or_zero(g - g1, r);
            }
    }
    return sum / Rational(odd_double_factorial(k + 2));
}

} // namespace support
