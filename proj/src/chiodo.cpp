#include "tautrel/chiodo.hpp"

#include "tautrel/bernoulli.hpp"
#include "tautrel/error.hpp"

#include <numeric>

namespace tautrel {

namespace {

long residue_sum(const std::vector<int>& a)
{
    return std::accumulate(a.begin(), a.end(), 0L);
}

bool side_stable(int genus, int points) { return 2 * genus - 2 + points + 1 > 0; }

} // namespace

std::vector<std::string> spec_violations(const RelationSpec& s, bool allow_out_of_window)
{
    std::vector<std::string> out;
    if (s.g < 0 || s.n < 0 || 2 * s.g - 2 + s.n <= 0)
        out.push_back("(g,n) is not stable");
    if (s.r < 2)
        out.push_back("r must be at least 2");
    if (static_cast<int>(s.a.size()) != s.n)
        out.push_back("expected " + std::to_string(s.n) + " residues, got " + std::to_string(s.a.size()));
    bool in_range = true;
    for (int x : s.a)
        if (s.r >= 1 && (x < 0 || x >= s.r))
            in_range = false;
    if (!in_range)
        out.push_back("residue out of range [0, r)");
    if (s.r >= 1 && residue_sum(s.a) % s.r != 0)
        out.push_back("sum of residues is not divisible by r");

    const bool all_zero = residue_sum(s.a) == 0;
    if (all_zero) {
        if (s.g == 0)
            out.push_back("all residues zero requires g > 0");
        if (!s.nontrivial_component)
            out.push_back("all residues zero requires the nontrivial-component flag");
    }
    if (!out.empty())
        return out;

    const long rank = virtual_rank(s);
    const int dim = 3 * s.g - 3 + s.n;
    if (s.d > dim)
        out.push_back("degree " + std::to_string(s.d) + " exceeds the dimension " + std::to_string(dim));
    if (allow_out_of_window) {
        if (s.d < 1)
            out.push_back("degree must be positive");
    }
    else if (s.d <= rank) {
        out.push_back("degree " + std::to_string(s.d) + " is not above the rank " + std::to_string(rank) +
                      " (window " + std::to_string(rank) + " < d <= " + std::to_string(dim) + ")");
    }
    return out;
}

void validate_spec(const RelationSpec& s, bool allow_out_of_window)
{
    auto problems = spec_violations(s, allow_out_of_window);
    if (problems.empty())
        return;
    std::string message = "invalid spec: ";
    for (size_t i = 0; i < problems.size(); ++i)
        message += (i ? "; " : "") + problems[i];
    throw SpecError(message);
}

long coarse_degree(const std::vector<int>& a, int r)
{
    if (r < 1)
        throw ParameterError("r must be positive");
    const long sum = residue_sum(a);
    if (sum % r != 0)
        throw ParameterError("sum of residues is not divisible by r");
    return -sum / r;
}

int node_multiplicity(int g, int l, const std::vector<int>& I, const std::vector<int>& a, int r)
{
    const int n = static_cast<int>(a.size());
    if (l < 0 || l > g)
        throw ParameterError("split genus out of range");
    long sum = 0;
    for (int i : I) {
        if (i < 1 || i > n)
            throw ParameterError("point label out of range");
        sum += a[i - 1];
    }
    const int k = static_cast<int>(I.size());
    if (!side_stable(l, k) || !side_stable(g - l, n - k))
        throw ParameterError("unstable splitting");
    return static_cast<int>(((-sum) % r + r) % r);
}

long virtual_rank(const RelationSpec& s)
{
    return residue_sum(s.a) / s.r + s.g - 1;
}

ChernCharExpr chiodo_chern_char(const RelationSpec& s, int d)
{
    if (d < 1)
        throw ParameterError("Chern character degree must be positive");
    ChernCharExpr ch;
    ch.degree = d;
    const Rational norm = Rational(1) / Rational(factorial(d + 1));
    const Rational half_r(s.r, 2);
    auto at = [&](int q) { return bernoulli_poly(d + 1, make_rational(q, s.r)); };

    ch.kappa_coeff = bernoulli_number(d + 1) * norm;
    for (int x : s.a)
        ch.psi_coeffs.push_back(-at(x) * norm);

    for (int l = 0; l <= s.g; ++l) {
        for (unsigned mask = 0; mask < (1u << s.n); ++mask) {
            std::vector<int> I;
            for (int i = 0; i < s.n; ++i)
                if ((mask >> i) & 1u)
                    I.push_back(i + 1);
            const int k = static_cast<int>(I.size());
            if (!side_stable(l, k) || !side_stable(s.g - l, s.n - k))
                continue;
            int q = node_multiplicity(s.g, l, I, s.a, s.r);
            ch.sep_terms.push_back({l, I, q, half_r * at(q) * norm});
        }
    }
    if (s.g >= 1)
        for (int q = 0; q < s.r; ++q)
            ch.irr_terms.push_back({q, half_r * at(q) * norm});
    return ch;
}

} // namespace tautrel
