#include "oracles.hpp"
#include "support.hpp"

#include "tautrel/error.hpp"
#include "tautrel/wk.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace tautrel;

namespace {

Rational psi(int g, std::vector<int> e) { return psi_integral_or_zero(g, std::move(e)); }

} // namespace

TEST_CASE("documented psi integrals")
{
    CHECK(psi_integral({0, {0, 0, 0}}) == 1);
    CHECK(psi_integral({0, {1, 0, 0, 0}}) == 1);
    CHECK(psi_integral({1, {1}}) == make_rational(1, 24));
    CHECK(psi_integral({2, {4}}) == make_rational(1, 1152));
    CHECK(psi_integral({1, {1, 1}}) == make_rational(1, 24));
    CHECK(psi_integral({2, {2, 3}}) == make_rational(29, 5760));
}

TEST_CASE("<tau_1>_1 follows from DVV at <tau_0 tau_2>_1 and the string equation")
{
    // string: <tau_0 tau_2>_1 = x; DVV: 5!! x = 3!! x + 1/2 <tau_0^3>_0
    Rational x = Rational(1, 2) * psi(0, {0, 0, 0}) / Rational(15 - 3);
    CHECK(x == make_rational(1, 24));
    CHECK(psi(1, {1}) == x);
    CHECK(psi(1, {0, 2}) == x);
}

TEST_CASE("errors")
{
    CHECK_THROWS_AS(psi_integral({0, {1, 0, 0}}), DimensionError);
    CHECK_THROWS_AS(psi_integral({0, {0, 0}}), ParameterError);
    CHECK_THROWS_AS(psi_integral({0, {-1, 1, 1, 0}}), ParameterError);
    CHECK_THROWS_AS(kappa_psi_integral({1, {0}, {2}}), DimensionError);
    CHECK_THROWS_AS(kappa_psi_integral({1, {0}, {0}}), ParameterError);
}

TEST_CASE("documented kappa integrals")
{
    CHECK(kappa_psi_integral({1, {0}, {1}}) == make_rational(1, 24));
    CHECK(kappa_psi_integral({0, {0, 0, 0, 0}, {1}}) == 1);
    CHECK(kappa_psi_integral({2, {2, 3}, {}}) == psi_integral({2, {2, 3}}));
    CHECK(kappa_psi_integral({1, {0, 0}, {1, 1}}) == make_rational(1, 8));
    CHECK(kappa_psi_integral({1, {1, 0}, {1}}) == make_rational(1, 12));
}

TEST_CASE("kappa reduction agrees with the permutation-sum oracle")
{
    for (int g = 0; g <= 2; ++g) {
        for (int n = 0; n <= 4; ++n) {
            if (2 * g - 2 + n <= 0)
                continue;
            const int dim = 3 * g - 3 + n;
            if (dim > 5)
                continue;
            // kappa multisets of degree k and psi exponents of degree dim - k
            for (int k = 1; k <= dim; ++k) {
                std::vector<std::vector<int>> kappas;
                std::vector<int> cur;
                auto rec = [&](auto&& self, int left, int largest) -> void {
                    if (left == 0) {
                        kappas.push_back(cur);
                        return;
                    }
                    for (int p = std::min(left, largest); p >= 1; --p) {
                        cur.push_back(p);
                        self(self, left - p, p);
                        cur.pop_back();
                    }
                };
                rec(rec, k, k);
                std::vector<std::vector<int>> psis;
                std::vector<int> e(n, 0);
                auto fill = [&](auto&& self, int i, int left) -> void {
                    if (i == n) {
                        if (left == 0)
                            psis.push_back(e);
                        return;
                    }
                    for (int x = 0; x <= left; ++x) {
                        e[i] = x;
                        self(self, i + 1, left - x);
                    }
                    e[i] = 0;
                };
                fill(fill, 0, dim - k);
                for (const auto& kap : kappas)
                    for (const auto& p : psis)
                        CHECK(kappa_psi_integral({g, p, kap}) == oracle::kappa_by_permutations(g, p, kap));
            }
        }
    }
}

TEST_CASE("string, dilaton and DVV on all values up to dimension 6")
{
    for (int g = 0; g <= 2; ++g)
        for (int n = 1; n <= 9; ++n)
            if (2 * g - 2 + n > 0 && 3 * g - 3 + n <= 6)
                for (const auto& t : support::psi_tuples(g, n))
                    psi(g, t);

    auto memo = psi_memo_snapshot();
    REQUIRE(memo.size() > 50);
    int checked = 0;
    for (const auto& entry : memo) {
        const int g = entry.genus;
        const int n = static_cast<int>(entry.exponents.size());
        if (3 * g - 3 + n > 6)
            continue;
        ++checked;
        // permutation symmetry
        auto reversed = entry.exponents;
        std::reverse(reversed.begin(), reversed.end());
        CHECK(psi(g, reversed) == entry.value);
        // dilaton: <tau_1 X>_g = (2g - 2 + n) <X>_g
        auto with1 = entry.exponents;
        with1.push_back(1);
        CHECK(psi(g, with1) == Rational(2 * g - 2 + n) * entry.value);
        // string, as <tau_0 Y>_g = sum_j <Y with d_j - 1>_g for every Y raising one exponent of X
        for (int j = 0; j < n; ++j) {
            auto y = entry.exponents;
            ++y[j];
            auto y0 = y;
            y0.push_back(0);
            Rational sum = 0;
            for (int i = 0; i < n; ++i)
                if (y[i] > 0) {
                    auto lowered = y;
                    --lowered[i];
                    sum += psi(g, lowered);
                }
            CHECK(psi(g, y0) == sum);
        }
        // DVV on the largest exponent
        auto sorted = entry.exponents;
        std::sort(sorted.begin(), sorted.end());
        if (!sorted.empty() && sorted.back() >= 1 && !(g == 1 && n == 1)) {
            const int k = sorted.back() - 1;
            std::vector<int> rest(sorted.begin(), sorted.end() - 1);
            CHECK(entry.value == support::dvv_rhs(g, k, rest));
        }
    }
    CHECK(checked > 50);
}
