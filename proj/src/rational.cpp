#include "tautrel/rational.hpp"

#include "tautrel/error.hpp"

namespace tautrel {

Rational make_rational(long num, long den)
{
    if (den == 0)
        throw ParameterError("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q)
{
    return q.get_str();
}

Rational parse_rational(const std::string& text)
{
    Rational q;
    if (q.set_str(text, 10) != 0 || q.get_den() == 0)
        throw ParameterError("not a rational number: '" + text + "'");
    q.canonicalize();
    return q;
}

Integer factorial(unsigned n)
{
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

Integer binomial(unsigned n, unsigned k)
{
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

Rational power(const Rational& base, unsigned exponent)
{
    Rational num, den;
    mpz_pow_ui(num.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
    mpz_pow_ui(den.get_num_mpz_t(), base.get_den_mpz_t(), exponent);
    Rational result = num / den;
    return result;
}

Rational int_power(long base, int exponent)
{
    Integer p;
    mpz_pow_ui(p.get_mpz_t(), Integer(base).get_mpz_t(), static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    if (exponent >= 0)
        return Rational(p);
    Rational q = Rational(1) / Rational(p);
    return q;
}

} // namespace tautrel
