/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <eorders/rational.hh>

#include <stdexcept>

using std::string;
using std::string_view;

namespace eorders
{
    namespace
    {
        auto all_digits(string_view s) -> bool
        {
            if (s.empty())
                return false;
            for (char c : s)
                if (c < '0' || c > '9')
                    return false;
            return true;
        }

        auto parse_integer(string_view s) -> Integer
        {
            bool negative = false;
            if (! s.empty() && (s.front() == '-' || s.front() == '+')) {
                negative = s.front() == '-';
                s.remove_prefix(1);
            }
            if (! all_digits(s))
                throw std::invalid_argument("not an integer: '" + string(s) + "'");
            Integer result(string(s), 10);
            return negative ? Integer(-result) : result;
        }
    }

    auto parse_rational(string_view text) -> Rational
    {
        if (auto slash = text.find('/'); slash != string_view::npos) {
            Integer num = parse_integer(text.substr(0, slash));
            Integer den = parse_integer(text.substr(slash + 1));
            if (den == 0)
                throw std::invalid_argument("zero denominator in '" + string(text) + "'");
            Rational r(num, den);
            r.canonicalize();
            return r;
        }

        if (auto dot = text.find('.'); dot != string_view::npos) {
            string_view whole = text.substr(0, dot), frac = text.substr(dot + 1);
            bool negative = ! whole.empty() && whole.front() == '-';
            if (! whole.empty() && (whole.front() == '-' || whole.front() == '+'))
                whole.remove_prefix(1);
            if ((whole.empty() && frac.empty()) || (! whole.empty() && ! all_digits(whole)) || (! frac.empty() && ! all_digits(frac)))
                throw std::invalid_argument("not a decimal: '" + string(text) + "'");
            Integer scale = 1;
            for (std::size_t i = 0 ; i < frac.size() ; ++i)
                scale *= 10;
            Integer w = whole.empty() ? Integer(0) : Integer(string(whole), 10);
            Integer f = frac.empty() ? Integer(0) : Integer(string(frac), 10);
            Rational r(w * scale + f, scale);
            r.canonicalize();
            return negative ? Rational(-r) : r;
        }

        return Rational(parse_integer(text));
    }

    auto to_string(const Rational & value) -> string
    {
        return value.get_str();
    }

    auto to_string(const Integer & value) -> string
    {
        return value.get_str();
    }

    auto ceil(const Rational & value) -> Integer
    {
        Integer result;
        mpz_cdiv_q(result.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
        return result;
    }

    auto floor(const Rational & value) -> Integer
    {
        Integer result;
        mpz_fdiv_q(result.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
        return result;
    }

    auto density(std::uint64_t edges, std::uint64_t a, std::uint64_t b) -> Rational
    {
        if (a == 0 || b == 0)
            return Rational(0);
        Integer den(static_cast<unsigned long>(a));
        den *= static_cast<unsigned long>(b);
        Rational r(Integer(static_cast<unsigned long>(edges)), den);
        r.canonicalize();
        return r;
    }

    auto strict_threshold(const Rational & x) -> Integer
    {
        return ceil(x);
    }

    auto pow(const Rational & base, unsigned long exponent) -> Rational
    {
        Rational result;
        mpz_pow_ui(result.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
        mpz_pow_ui(result.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
        result.canonicalize();
        return result;
    }

    auto abs_diff(const Rational & a, const Rational & b) -> Rational
    {
        Rational d = a - b;
        return d < 0 ? Rational(-d) : d;
    }
}
