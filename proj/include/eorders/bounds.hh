/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef EORDERS_BOUNDS_HH
#define EORDERS_BOUNDS_HH 1

#include <eorders/rational.hh>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace eorders
{
    /**
     * coefficient * prod (log2 base)^power. Exact when every base is a power
     * of two, otherwise evaluated as an interval with outward rounding.
     */
    class LogExpression
    {
        private:
            Rational _coefficient;
            std::vector<std::pair<unsigned long, unsigned>> _factors;

        public:
            explicit LogExpression(Rational coefficient = 0);

            auto times_log(unsigned long base, unsigned power = 1) -> LogExpression &;

            auto coefficient() const -> const Rational & { return _coefficient; }
            auto factors() const -> const std::vector<std::pair<unsigned long, unsigned>> & { return _factors; }

            auto exact() const -> std::optional<Rational>;

            /// Lower and upper bounds, rounded outwards at the given precision.
            auto enclosure(unsigned bits = 128) const -> std::pair<double, double>;

            /// The exact value, or "lo..hi" to 12 significant digits.
            auto to_string() const -> std::string;
    };

    /// Sound comparison: nullopt when the enclosures overlap and neither is exact.
    auto definitely_less(const LogExpression & a, const LogExpression & b) -> std::optional<bool>;

    // log2 N for each of the closed-form bounds
    auto bound_two_color(unsigned long n) -> LogExpression;
    auto bound_multicolor(unsigned long n, unsigned long q) -> LogExpression;
    auto bound_degenerate(unsigned long n, unsigned long d) -> LogExpression;
    auto bound_weak(unsigned long n) -> LogExpression;

    /// alpha_h = n^-(2^(h+1) - 2), gamma_h = (delta2 / (2^(h+2) (n - d)))^(h (d + 1)).
    auto sparse_schedule(unsigned long n, unsigned long d, const Rational & delta2, unsigned h)
        -> std::pair<Rational, Rational>;

    /// The t-set, complete-pattern form: is the schedule at h = ceil(log2 t),
    /// d = n - 1 at least (n^(-4t+2), (delta2 / 8t)^(n ceil(log2 t)))?
    auto complete_pattern_schedule_holds(unsigned long n, unsigned long t, const Rational & delta2) -> bool;

    /// x^e for an integer exponent that may be negative.
    auto power(const Rational & x, long e) -> Rational;

    struct MulticolorSchedule
    {
        /// alpha_{k,h} = n^-alpha_exponent
        Integer alpha_exponent;

        /// gamma_{k,h} = gamma_base^gamma_exponent
        Rational gamma_base;
        LogExpression gamma_exponent;

        /// alpha as a rational; throws InfeasibleSize for huge exponents.
        auto alpha(unsigned long n) const -> Rational;
    };

    /// Requires 0 < delta4 < 1/n^2, k >= 1, h >= 1.
    auto multicolor_schedule(unsigned long n, unsigned k, unsigned h, const Rational & delta4) -> MulticolorSchedule;

    /// alpha_{k,h}^2 alpha_{k,1} = alpha_{k,h+1}, on exponents.
    auto multicolor_recursion_holds(unsigned long n, unsigned k, unsigned h) -> bool;

    /// gamma_{1,h} <= gamma_h with d = n - 1 and delta4 = delta2, i.e. the
    /// k = 1 schedule is implied by the single-colour one.
    auto multicolor_gamma_implied(unsigned long n, unsigned h, const Rational & delta) -> bool;

    struct LabeledParameters
    {
        Integer L, Q;
        /// log2 of the multinomial (Qn; n, ..., n), which bounds k from above
        double log2_k_bound = 0;
        Rational epsilon;
        double log2_beta_inverse_bound = 0;
        double log2_log2_n_estimate = 0;
    };

    /// Requires n >= 3, m >= 2, q >= 2.
    auto labeled_parameters(unsigned long n, unsigned long m, unsigned long q) -> LabeledParameters;

    struct SparseParameters
    {
        Rational alpha, gamma, delta;
    };

    /// (n^-2, delta1^(d+1) / (n - d), delta1); requires 0 < delta1 < 1/n, 1 <= d <= n - 1.
    auto greedy_parameters(unsigned long n, unsigned long d, const Rational & delta1) -> SparseParameters;
}

#endif
