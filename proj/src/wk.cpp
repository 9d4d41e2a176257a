#include "tautrel/wk.hpp"

#include "tautrel/error.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <string>

namespace tautrel {
namespace {

using Key = std::pair<int, std::vector<int>>;

class Memo {
public:
    bool find(const Key& key, Rational& out) const
    {
        std::shared_lock lock(mutex_);
        auto it = table_.find(key);
        if (it == table_.end())
            return false;
        out = it->second;
        return true;
    }
    void insert(const Key& key, const Rational& value)
    {
        std::unique_lock lock(mutex_);
        table_.emplace(key, value);
    }
    std::vector<MemoEntry> snapshot() const
    {
        std::shared_lock lock(mutex_);
        std::vector<MemoEntry> out;
        for (const auto& [key, value] : table_)
            out.push_back({key.first, key.second, value});
        return out;
    }

private:
    mutable std::shared_mutex mutex_;
    std::map<Key, Rational> table_;
};

Memo& psi_memo()
{
    static Memo memo;
    return memo;
}

struct KappaKey {
    int genus;
    std::vector<int> psi, kappa;
    auto operator<=>(const KappaKey&) const = default;
};

std::shared_mutex kappa_mutex;
std::map<KappaKey, Rational>& kappa_memo()
{
    static std::map<KappaKey, Rational> memo;
    return memo;
}

// (2m-1)!! with (-1)!! = 1
Integer odd_double_factorial(int m)
{
    Integer f = 1;
    for (int i = 2 * m - 1; i > 1; i -= 2)
        f *= i;
    return f;
}

bool stable(int g, int n) { return g >= 0 && 2 * g - 2 + n > 0; }

int degree_sum(const std::vector<int>& e) { return std::accumulate(e.begin(), e.end(), 0); }

Rational psi_value(int g, std::vector<int> exps);

Rational psi_value_uncached(int g, const std::vector<int>& exps)
{
    const int n = static_cast<int>(exps.size());
    if (g == 0 && n == 3)
        return 1;
    if (g == 1 && n == 1)
        return Rational(1, 24);

    auto zero = std::find(exps.begin(), exps.end(), 0);
    if (zero != exps.end() && stable(g, n - 1)) {
        // string equation
        std::vector<int> rest(exps);
        rest.erase(rest.begin() + (zero - exps.begin()));
        Rational sum = 0;
        for (size_t j = 0; j < rest.size(); ++j) {
            if (rest[j] == 0)
                continue;
            auto lowered = rest;
            --lowered[j];
            sum += psi_value(g, lowered);
        }
        return sum;
    }
    auto one = std::find(exps.begin(), exps.end(), 1);
    if (one != exps.end() && stable(g, n - 1)) {
        // dilaton equation
        std::vector<int> rest(exps);
        rest.erase(rest.begin() + (one - exps.begin()));
        Rational value = psi_value(g, rest);
        value *= 2 * g - 2 + n - 1;
        return value;
    }

    // DVV on the largest exponent k+1.
    auto top = std::max_element(exps.begin(), exps.end());
    const int k = *top - 1;
    std::vector<int> rest(exps);
    rest.erase(rest.begin() + (top - exps.begin()));
    const int m = static_cast<int>(rest.size());

    Rational sum = 0;
    for (int j = 0; j < m; ++j) {
        auto raised = rest;
        raised[j] += k;
        Rational c(odd_double_factorial(k + rest[j] + 1), odd_double_factorial(rest[j]));
        c.canonicalize();
        sum += c * psi_value(g, raised);
    }
    Rational half(1, 2);
    for (int a = 0; a <= k - 1; ++a) {
        int b = k - 1 - a;
        Rational c = half * Rational(odd_double_factorial(a + 1) * odd_double_factorial(b + 1));
        // genus reduction
        if (g >= 1) {
            auto joined = rest;
            joined.push_back(a);
            joined.push_back(b);
            sum += c * psi_value(g - 1, joined);
        }
        // splitting into two components
        for (int g1 = 0; g1 <= g; ++g1) {
            for (unsigned mask = 0; mask < (1u << m); ++mask) {
                std::vector<int> left{a}, right{b};
                for (int i = 0; i < m; ++i)
                    ((mask >> i) & 1u ? left : right).push_back(rest[i]);
                Rational lv = psi_value(g1, left);
                if (lv == 0)
                    continue;
                sum += c * lv * psi_value(g - g1, right);
            }
        }
    }
    Rational result = sum / Rational(odd_double_factorial(k + 2));
    return result;
}

// Zero for unstable, negative or dimensionally wrong data.
Rational psi_value(int g, std::vector<int> exps)
{
    const int n = static_cast<int>(exps.size());
    if (!stable(g, n))
        return 0;
    for (int e : exps)
        if (e < 0)
            return 0;
    if (degree_sum(exps) != 3 * g - 3 + n)
        return 0;
    std::sort(exps.begin(), exps.end());
    Key key{g, exps};
    Rational value;
    if (psi_memo().find(key, value))
        return value;
    value = psi_value_uncached(g, exps);
    psi_memo().insert(key, value);
    return value;
}

// Each kappa_b is replaced by a new point with psi^{b+1}; pulling the remaining kappas
// back along the forgetful map subtracts psi^{b_i} of the new point.
Rational kappa_value(int g, std::vector<int> psi, std::vector<int> kappa)
{
    if (kappa.empty())
        return psi_value(g, std::move(psi));
    const int n = static_cast<int>(psi.size());
    if (!stable(g, n))
        return 0;
    if (degree_sum(psi) + degree_sum(kappa) != 3 * g - 3 + n)
        return 0;
    std::sort(psi.begin(), psi.end());
    std::sort(kappa.begin(), kappa.end());
    KappaKey key{g, psi, kappa};
    {
        std::shared_lock lock(kappa_mutex);
        auto it = kappa_memo().find(key);
        if (it != kappa_memo().end())
            return it->second;
    }
    const int first = kappa[0];
    std::vector<int> others(kappa.begin() + 1, kappa.end());
    const int m = static_cast<int>(others.size());
    Rational sum = 0;
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        int exponent = first + 1;
        std::vector<int> remaining;
        for (int i = 0; i < m; ++i) {
            if ((mask >> i) & 1u)
                exponent += others[i];
            else
                remaining.push_back(others[i]);
        }
        auto extended = psi;
        extended.push_back(exponent);
        Rational term = kappa_value(g, extended, remaining);
        if (__builtin_popcount(mask) % 2)
            sum -= term;
        else
            sum += term;
    }
    std::unique_lock lock(kappa_mutex);
    kappa_memo().emplace(key, sum);
    return sum;
}

void check_input(int g, const std::vector<int>& psi, const std::vector<int>& kappa)
{
    const int n = static_cast<int>(psi.size());
    if (!stable(g, n))
        throw ParameterError("unstable (g,n) = (" + std::to_string(g) + "," + std::to_string(n) + ")");
    for (int e : psi)
        if (e < 0)
            throw ParameterError("negative psi exponent");
    for (int k : kappa)
        if (k < 1)
            throw ParameterError("kappa indices must be positive");
    const int degree = degree_sum(psi) + degree_sum(kappa);
    if (degree != 3 * g - 3 + n)
        throw DimensionError("degree " + std::to_string(degree) + " does not match dimension " +
                             std::to_string(3 * g - 3 + n));
}

} // namespace

Rational psi_integral(const PsiMonomial& m)
{
    check_input(m.genus, m.exponents, {});
    return psi_value(m.genus, m.exponents);
}

Rational kappa_psi_integral(const KappaPsiMonomial& m)
{
    check_input(m.genus, m.psi_exponents, m.kappa_indices);
    return kappa_value(m.genus, m.psi_exponents, m.kappa_indices);
}

Rational psi_integral_or_zero(int genus, std::vector<int> exponents)
{
    return psi_value(genus, std::move(exponents));
}

Rational kappa_psi_integral_or_zero(int genus, std::vector<int> psi_exponents, std::vector<int> kappa_indices)
{
    return kappa_value(genus, std::move(psi_exponents), std::move(kappa_indices));
}

std::vector<MemoEntry> psi_memo_snapshot()
{
    return psi_memo().snapshot();
}

} // namespace tautrel
