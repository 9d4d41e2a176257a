#include "tautrel/error.hpp"
#include "tautrel/relgen.hpp"
#include "tautrel/verify.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace tautrel;

namespace {

std::vector<std::string> sorted_values(const VerificationReport& r)
{
    std::vector<std::string> out;
    for (const auto& p : r.pairings)
        out.push_back(to_string(p.value));
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("complementary monomials")
{
    CHECK(complementary_monomials(0, 4, 0).size() == 1);
    CHECK(complementary_monomials(0, 5, 0).size() == 1);
    CHECK(complementary_monomials(1, 2, 0).size() == 1);
    auto deg1 = complementary_strata(1, 2, 1);
    CHECK(deg1.size() == 5);
    int boundary = 0;
    for (const auto& s : deg1)
        boundary += s.graph.num_edges();
    CHECK(boundary == 2);
    CHECK(complementary_strata(0, 4, 1).size() == 8); // psi_1..psi_4, kappa_1, three divisors
    CHECK_THROWS_AS(complementary_monomials(1, 2, 3), ParameterError);
    CHECK_THROWS_AS(complementary_monomials(1, 2, -1), ParameterError);
}

TEST_CASE("headline vanishing")
{
    for (RelationSpec s : {RelationSpec{0, 5, 2, {1, 1, 1, 1, 0}, 2}, RelationSpec{1, 2, 2, {1, 1}, 2},
                           RelationSpec{1, 1, 2, {0}, 1, true}, RelationSpec{1, 2, 3, {1, 2}, 2}}) {
        auto report = verify(s);
        CHECK(report.all_zero);
        CHECK(report.monomials_paired == 1);
        CHECK(report.ambient_dim == 3 * s.g - 3 + s.n);
        CHECK(report.relation_degree == s.d);
    }
}

TEST_CASE("vanishing below the top degree")
{
    for (RelationSpec s : {RelationSpec{1, 3, 2, {1, 1, 0}, 2}, RelationSpec{0, 6, 3, {1, 1, 1, 1, 1, 1}, 2},
                           RelationSpec{0, 6, 2, {1, 1, 1, 1, 0, 0}, 2}, RelationSpec{1, 3, 4, {1, 3, 0}, 2}}) {
        auto report = verify(s);
        CHECK(report.monomials_paired > 1);
        CHECK(report.all_zero);
    }
}

TEST_CASE("negative control")
{
    RelationSpec s{0, 5, 2, {1, 1, 1, 1, 0}, 1};
    CHECK_THROWS_AS(verify(s), SpecError);
    VerifyOptions opts;
    opts.allow_out_of_window = true;
    auto report = verify(s, opts);
    CHECK_FALSE(report.all_zero);
    CHECK(std::any_of(report.pairings.begin(), report.pairings.end(), [](const auto& p) { return p.value != 0; }));
}

TEST_CASE("reports are deterministic and independent of threading")
{
    RelationSpec s{1, 3, 2, {1, 1, 0}, 2};
    auto a = verify(s);
    VerifyOptions serial;
    serial.parallel = false;
    auto b = verify(s, serial);
    REQUIRE(a.pairings.size() == b.pairings.size());
    for (size_t i = 0; i < a.pairings.size(); ++i) {
        CHECK(a.pairings[i].value == b.pairings[i].value);
        CHECK(a.pairings[i].description == b.pairings[i].description);
    }
}

TEST_CASE("scaling and relabeling do not change the verdict")
{
    for (RelationSpec s : {RelationSpec{1, 3, 2, {1, 1, 0}, 2}, RelationSpec{0, 5, 2, {1, 1, 1, 1, 0}, 1}}) {
        auto rel = pushforward_relation(s, true);
        auto base = verify_relation(s, rel);
        auto scaled = verify_relation(s, rel.scaled(make_rational(7, 3)));
        CHECK(base.all_zero == scaled.all_zero);
        for (size_t i = 0; i < base.pairings.size(); ++i)
            CHECK(scaled.pairings[i].value == base.pairings[i].value * make_rational(7, 3));
    }
    CHECK(verify({1, 3, 2, {0, 1, 1}, 2}).all_zero);
    CHECK(verify({0, 5, 2, {0, 1, 1, 1, 1}, 2}).all_zero);
}

TEST_CASE("permuting the monomials permutes the pairings")
{
    RelationSpec s{0, 5, 2, {1, 1, 1, 1, 0}, 1};
    VerifyOptions opts;
    opts.allow_out_of_window = true;
    auto report = verify(s, opts);
    auto rel = pushforward_relation(s, true);
    auto strata = complementary_strata(0, 5, 1);
    std::mt19937 rng(5);
    std::shuffle(strata.begin(), strata.end(), rng);
    std::vector<std::string> values;
    bool all_zero = true;
    for (const auto& m : strata) {
        Rational v = pairing(rel, stratum_class(Ambient::curves(0, 5), m));
        all_zero = all_zero && v == 0;
        values.push_back(to_string(v));
    }
    std::sort(values.begin(), values.end());
    CHECK(values == sorted_values(report));
    CHECK(all_zero == report.all_zero);
}

TEST_CASE("resource limits are errors")
{
    RelationSpec s{0, 6, 2, {1, 1, 1, 1, 1, 1}, 3};
    VerifyOptions graphs;
    graphs.max_graphs = 10;
    CHECK_THROWS_AS(verify(s, graphs), LimitError);
    VerifyOptions terms;
    terms.max_terms = 5;
    CHECK_THROWS_AS(verify(s, terms), LimitError);
}
