#include "tautrel/bernoulli.hpp"
#include "tautrel/chiodo.hpp"
#include "tautrel/error.hpp"

#include <doctest.h>

#include <algorithm>

using namespace tautrel;

TEST_CASE("spec validation")
{
    CHECK(spec_violations({0, 5, 2, {1, 1, 1, 1, 0}, 2}).empty());
    CHECK_FALSE(spec_violations({0, 4, 2, {1, 1, 1, 1}, 1}).empty());
    CHECK_THROWS_AS(validate_spec({0, 4, 2, {1, 1, 1, 1}, 1}), SpecError);
    CHECK(spec_violations({1, 1, 2, {0}, 1, true}).empty());
    CHECK_THROWS_AS(validate_spec({1, 1, 2, {0}, 1, false}), SpecError);
    CHECK_THROWS_AS(validate_spec({0, 4, 2, {0, 0, 0, 0}, 1, true}), SpecError);
    CHECK_THROWS_AS(validate_spec({0, 4, 2, {1, 1, 1, 2}, 1}), SpecError);  // residue out of range
    CHECK_THROWS_AS(validate_spec({0, 4, 3, {1, 1, 1, 1}, 1}), SpecError);  // sum not divisible
    CHECK_THROWS_AS(validate_spec({0, 5, 2, {1, 1, 1, 1, 0}, 3}), SpecError); // above the dimension
    CHECK_THROWS_AS(validate_spec({0, 5, 2, {1, 1, 1, 0}, 2}), SpecError);    // wrong length
    // d = rank is outside the window but passes with the out-of-window allowance
    CHECK_THROWS_AS(validate_spec({0, 5, 2, {1, 1, 1, 1, 0}, 1}), SpecError);
    CHECK_NOTHROW(validate_spec({0, 5, 2, {1, 1, 1, 1, 0}, 1}, true));
    CHECK_THROWS_AS(validate_spec({0, 5, 2, {1, 1, 1, 1, 0}, 0}, true), SpecError);

    auto problems = spec_violations({0, 4, 2, {0, 0, 0, 0}, 1, false});
    CHECK(problems.size() == 2);
}

TEST_CASE("coarse degree and rank")
{
    CHECK(coarse_degree({1, 1}, 2) == -1);
    CHECK(coarse_degree({0, 0, 0}, 5) == 0);
    CHECK(coarse_degree({1, 2}, 3) == -1);
    CHECK_THROWS_AS(coarse_degree({1, 1}, 3), ParameterError);

    CHECK(virtual_rank({1, 2, 2, {1, 1}, 2}) == 1);
    CHECK(virtual_rank({0, 5, 2, {1, 1, 1, 1, 0}, 2}) == 1);
    CHECK(virtual_rank({2, 3, 4, {0, 0, 0}, 2, true}) == 1);
    for (RelationSpec s : {RelationSpec{1, 2, 2, {1, 1}, 2}, RelationSpec{0, 6, 3, {1, 1, 1, 1, 1, 1}, 3},
                           RelationSpec{2, 2, 5, {4, 1}, 3}})
        CHECK(virtual_rank(s) == -coarse_degree(s.a, s.r) + s.g - 1);
}

TEST_CASE("node multiplicities")
{
    CHECK(node_multiplicity(2, 1, {1}, {1, 1}, 2) == 1);
    CHECK(node_multiplicity(0, 0, {1, 2}, {1, 1, 2, 2}, 3) == 1);
    CHECK(node_multiplicity(2, 1, {}, {1, 1}, 2) == 0);
    CHECK_THROWS_AS(node_multiplicity(0, 0, {1}, {1, 1, 2, 2}, 3), ParameterError);
    CHECK_THROWS_AS(node_multiplicity(1, 1, {1}, {1, 1}, 2), ParameterError);
}

TEST_CASE("Chern character coefficients")
{
    RelationSpec s{1, 2, 2, {1, 1}, 1};
    auto ch = chiodo_chern_char(s, 1);
    CHECK(ch.kappa_coeff == make_rational(1, 12));
    REQUIRE(ch.psi_coeffs.size() == 2);
    CHECK(ch.psi_coeffs[0] == make_rational(1, 24));
    CHECK(ch.psi_coeffs[1] == make_rational(1, 24));
    REQUIRE(ch.irr_terms.size() == 2);
    CHECK(ch.irr_terms[0].q == 0);
    CHECK(ch.irr_terms[0].coeff == make_rational(1, 12));
    CHECK(ch.irr_terms[1].coeff == make_rational(-1, 24));
    // (l, I) in {(0,{1,2}), (1,{})}: one unordered splitting listed from both sides
    CHECK(ch.sep_terms.size() == 2);
    CHECK_THROWS_AS(chiodo_chern_char(s, 0), ParameterError);

    auto g0 = chiodo_chern_char({0, 5, 2, {1, 1, 1, 1, 0}, 2}, 2);
    CHECK(g0.irr_terms.empty());
    CHECK(g0.sep_terms.size() == 20); // 10 splittings with two points on one side, both branches
}

TEST_CASE("Chern character invariants")
{
    for (RelationSpec s : {RelationSpec{0, 6, 3, {1, 1, 1, 1, 1, 1}, 3}, RelationSpec{1, 3, 3, {1, 1, 1}, 2},
                           RelationSpec{2, 2, 5, {4, 1}, 3}, RelationSpec{1, 2, 4, {0, 0}, 2, true}}) {
        for (int d = 1; d <= 5; ++d) {
            auto ch = chiodo_chern_char(s, d);
            CHECK(static_cast<int>(ch.irr_terms.size()) == (s.g >= 1 ? s.r : 0));
            for (const auto& t : ch.sep_terms) {
                CHECK(t.q == node_multiplicity(s.g, t.l, t.I, s.a, s.r));
                long sum = t.q;
                for (int i : t.I)
                    sum += s.a[i - 1];
                CHECK(sum % s.r == 0);
                // partner on the other branch: (g - l, I^c, r - q); with gamma's branch swap
                // (-1)^{d-1} the two contributions agree
                std::vector<int> complement;
                for (int i = 1; i <= s.n; ++i)
                    if (!std::binary_search(t.I.begin(), t.I.end(), i))
                        complement.push_back(i);
                auto partner = std::find_if(ch.sep_terms.begin(), ch.sep_terms.end(), [&](const SepTerm& u) {
                    return u.l == s.g - t.l && u.I == complement;
                });
                REQUIRE(partner != ch.sep_terms.end());
                CHECK(partner->q == (s.r - t.q) % s.r);
                Rational sign = (d - 1) % 2 ? -1 : 1;
                CHECK(partner->coeff * sign == t.coeff);
            }
        }
    }
}
