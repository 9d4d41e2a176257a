#include "tautrel/bernoulli.hpp"

#include "tautrel/error.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>

namespace tautrel {
namespace {

// Append-only tables; readers share the lock, a miss takes it exclusively and fills up to n.
class BernoulliCache {
public:
    Rational number(int n)
    {
        {
            std::shared_lock lock(mutex_);
            if (n < static_cast<int>(numbers_.size()))
                return numbers_[n];
        }
        std::unique_lock lock(mutex_);
        fill_numbers(n);
        return numbers_[n];
    }

    std::vector<Rational> polynomial(int n)
    {
        {
            std::shared_lock lock(mutex_);
            auto it = polys_.find(n);
            if (it != polys_.end())
                return it->second;
        }
        std::unique_lock lock(mutex_);
        auto it = polys_.find(n);
        if (it != polys_.end())
            return it->second;
        fill_numbers(n);
        std::vector<Rational> coeffs(n + 1);
        for (int k = 0; k <= n; ++k)
            coeffs[n - k] = Rational(binomial(n, k)) * numbers_[k];
        polys_.emplace(n, coeffs);
        return coeffs;
    }

private:
    // sum_{k=0}^{m} C(m+1,k) B_k = 0 for m >= 1.
    void fill_numbers(int n)
    {
        if (numbers_.empty())
            numbers_.push_back(Rational(1));
        for (int m = static_cast<int>(numbers_.size()); m <= n; ++m) {
            Rational sum = 0;
            for (int k = 0; k < m; ++k)
                sum += Rational(binomial(m + 1, k)) * numbers_[k];
            Rational b = -sum / (m + 1);
            numbers_.push_back(b);
        }
    }

    std::shared_mutex mutex_;
    std::vector<Rational> numbers_;
    std::map<int, std::vector<Rational>> polys_;
};

BernoulliCache& cache()
{
    static BernoulliCache instance;
    return instance;
}

} // namespace

Rational bernoulli_number(int n)
{
    if (n < 0)
        throw ParameterError("Bernoulli index must be nonnegative");
    return cache().number(n);
}

std::vector<Rational> bernoulli_poly_coefficients(int n)
{
    if (n < 0)
        throw ParameterError("Bernoulli index must be nonnegative");
    return cache().polynomial(n);
}

Rational bernoulli_poly(int n, const Rational& x)
{
    auto coeffs = bernoulli_poly_coefficients(n);
    // Horner
    Rational value = 0;
    for (int k = n; k >= 0; --k)
        value = value * x + coeffs[k];
    return value;
}

} // namespace tautrel
