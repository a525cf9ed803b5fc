/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef EORDERS_RATIONAL_HH
#define EORDERS_RATIONAL_HH 1

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace eorders
{
    /// Exact rationals. Every density, threshold and verdict in the library is
    /// computed with these; doubles only appear in printed summaries.
    using Rational = mpq_class;
    using Integer = mpz_class;

    /// Parses "P/Q", "P" or a finite decimal such as "0.125" exactly.
    /// Throws std::invalid_argument on malformed input.
    auto parse_rational(std::string_view text) -> Rational;

    auto to_string(const Rational & value) -> std::string;
    auto to_string(const Integer & value) -> std::string;

    auto ceil(const Rational & value) -> Integer;
    auto floor(const Rational & value) -> Integer;

    /// Exact density e / (a * b); zero when either side is empty.
    auto density(std::uint64_t edges, std::uint64_t a, std::uint64_t b) -> Rational;

    /// Smallest integer T with (k < T  <=>  k < x) for every integer k.
    auto strict_threshold(const Rational & x) -> Integer;

    auto pow(const Rational & base, unsigned long exponent) -> Rational;

    auto abs_diff(const Rational & a, const Rational & b) -> Rational;
}

#endif
