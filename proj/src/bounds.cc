/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <eorders/bounds.hh>
#include <eorders/core.hh>

#include <mpfr.h>

#include <cmath>
#include <cstdio>
#include <stdexcept>

using std::optional;
using std::pair;
using std::string;

namespace eorders
{
    namespace
    {
        auto exact_log2(unsigned long x) -> optional<unsigned>
        {
            if (x == 0 || (x & (x - 1)) != 0)
                return std::nullopt;
            unsigned result = 0;
            while (x > 1) {
                x >>= 1;
                ++result;
            }
            return result;
        }

        auto ceil_log2(unsigned long t) -> unsigned
        {
            unsigned h = 0;
            while ((1ul << h) < t)
                ++h;
            return h;
        }

        class Mpfr
        {
            public:
                mpfr_t value;

                explicit Mpfr(unsigned bits) { mpfr_init2(value, bits); }
                ~Mpfr() { mpfr_clear(value); }
                Mpfr(const Mpfr &) = delete;
                auto operator= (const Mpfr &) -> Mpfr & = delete;
        };

        /// The product, rounded in direction rnd. Every factor is positive.
        auto evaluate(const LogExpression & e, unsigned bits, mpfr_rnd_t rnd) -> double
        {
            Mpfr acc(bits), term(bits);
            mpfr_set_q(acc.value, e.coefficient().get_mpq_t(), rnd);
            for (auto & [base, power] : e.factors()) {
                mpfr_set_ui(term.value, base, rnd);
                mpfr_log2(term.value, term.value, rnd);
                mpfr_pow_ui(term.value, term.value, power, rnd);
                mpfr_mul(acc.value, acc.value, term.value, rnd);
            }
            return mpfr_get_d(acc.value, rnd);
        }
    }

    LogExpression::LogExpression(Rational coefficient) :
        _coefficient(std::move(coefficient))
    {
    }

    auto LogExpression::times_log(unsigned long base, unsigned power) -> LogExpression &
    {
        if (base < 2)
            throw PreconditionViolation("log factors need base >= 2");
        if (power == 0)
            return *this;
        if (auto k = exact_log2(base))
            _coefficient *= pow(Rational(*k), power);
        else
            _factors.emplace_back(base, power);
        return *this;
    }

    auto LogExpression::exact() const -> optional<Rational>
    {
        if (_factors.empty())
            return _coefficient;
        return std::nullopt;
    }

    auto LogExpression::enclosure(unsigned bits) const -> pair<double, double>
    {
        if (auto e = exact()) {
            Mpfr v(bits);
            mpfr_set_q(v.value, e->get_mpq_t(), MPFR_RNDD);
            double lo = mpfr_get_d(v.value, MPFR_RNDD);
            mpfr_set_q(v.value, e->get_mpq_t(), MPFR_RNDU);
            return {lo, mpfr_get_d(v.value, MPFR_RNDU)};
        }
        return {evaluate(*this, bits, MPFR_RNDD), evaluate(*this, bits, MPFR_RNDU)};
    }

    auto LogExpression::to_string() const -> string
    {
        if (auto e = exact())
            return eorders::to_string(*e);
        auto [lo, hi] = enclosure();
        char buffer[96];
        std::snprintf(buffer, sizeof(buffer), "%.12g..%.12g", lo, hi);
        return buffer;
    }

    auto definitely_less(const LogExpression & a, const LogExpression & b) -> optional<bool>
    {
        auto ea = a.exact(), eb = b.exact();
        if (ea && eb)
            return *ea < *eb;
        auto [alo, ahi] = a.enclosure();
        auto [blo, bhi] = b.enclosure();
        if (ahi < blo)
            return true;
        if (bhi <= alo)
            return false;
        return std::nullopt;
    }

    namespace
    {
        auto require(bool ok, const char * message) -> void
        {
            if (! ok)
                throw PreconditionViolation(message);
        }
    }

    auto bound_two_color(unsigned long n) -> LogExpression
    {
        require(n >= 2, "n must be at least 2");
        LogExpression e(Rational(100) * Rational(n) * Rational(n));
        e.times_log(n, 2);
        return e;
    }

    auto bound_multicolor(unsigned long n, unsigned long q) -> LogExpression
    {
        require(n >= 2 && q >= 2, "need n >= 2 and q >= 2");
        LogExpression e(pow(Rational(8), q + 1) * pow(Rational(n), 2 * q - 2));
        e.times_log(n, q);
        return e;
    }

    auto bound_degenerate(unsigned long n, unsigned long d) -> LogExpression
    {
        require(n >= 2 && d >= 1, "need n >= 2 and d >= 1");
        LogExpression e(Rational(600) * pow(Rational(d), 3));
        e.times_log(d + 1).times_log(n);
        return e;
    }

    auto bound_weak(unsigned long n) -> LogExpression
    {
        require(n >= 4, "n must be at least 4");
        LogExpression e(Rational(180) * pow(Rational(n), 3));
        e.times_log(n, 2);
        return e;
    }

    auto power(const Rational & x, long e) -> Rational
    {
        if (e >= 0)
            return pow(x, e);
        if (x == 0)
            throw PreconditionViolation("zero to a negative power");
        return 1 / pow(x, -e);
    }

    auto sparse_schedule(unsigned long n, unsigned long d, const Rational & delta2, unsigned h) -> pair<Rational, Rational>
    {
        require(delta2 > 0 && delta2 * Rational(n) < 1, "delta2 must lie in (0, 1/n)");
        require(d >= 1 && d + 1 <= n, "need 1 <= d <= n - 1");
        require(h < 40, "h too large");
        Rational alpha = 1 / pow(Rational(n), (1ul << (h + 1)) - 2);
        Rational base = delta2 / (Rational(Integer(1) << (h + 2)) * Rational(n - d));
        return {alpha, pow(base, h * (d + 1))};
    }

    auto complete_pattern_schedule_holds(unsigned long n, unsigned long t, const Rational & delta2) -> bool
    {
        require(n >= 2 && t >= 1, "need n >= 2 and t >= 1");
        unsigned h = ceil_log2(t);
        auto [alpha, gamma] = sparse_schedule(n, n - 1, delta2, h);
        Rational alpha_claim = 1 / pow(Rational(n), 4 * t - 2);
        Rational gamma_claim = pow(delta2 / Rational(8 * t), n * h);
        return alpha >= alpha_claim && gamma >= gamma_claim;
    }

    auto MulticolorSchedule::alpha(unsigned long n) const -> Rational
    {
        if (alpha_exponent > 1 << 16)
            throw InfeasibleSize("alpha exponent " + eorders::to_string(alpha_exponent) + " too large to expand");
        return 1 / pow(Rational(n), alpha_exponent.get_ui());
    }

    auto multicolor_schedule(unsigned long n, unsigned k, unsigned h, const Rational & delta4) -> MulticolorSchedule
    {
        require(n >= 2, "n must be at least 2");
        require(delta4 > 0 && delta4 * Rational(n) * Rational(n) < 1, "delta4 must lie in (0, 1/n^2)");
        require(k >= 1 && h >= 1 && h < 60, "need k >= 1 and 1 <= h < 60");

        MulticolorSchedule s;
        Integer nk;
        mpz_ui_pow_ui(nk.get_mpz_t(), n, k - 1);
        s.alpha_exponent = (Integer(1) << k) * nk * ((Integer(1) << h) - 1);

        s.gamma_base = delta4 / Rational(Integer(1) << (2 * h));
        // h n (4 n log2 n)^(k - 1)
        LogExpression e(Rational(h) * Rational(n) * pow(Rational(4 * n), k - 1));
        e.times_log(n, k - 1);
        s.gamma_exponent = e;
        return s;
    }

    auto multicolor_recursion_holds(unsigned long n, unsigned k, unsigned h) -> bool
    {
        Rational delta = Rational(1, 2 * n * n);
        auto a = multicolor_schedule(n, k, h, delta);
        auto one = multicolor_schedule(n, k, 1, delta);
        auto next = multicolor_schedule(n, k, h + 1, delta);
        return 2 * a.alpha_exponent + one.alpha_exponent == next.alpha_exponent;
    }

    auto multicolor_gamma_implied(unsigned long n, unsigned h, const Rational & delta) -> bool
    {
        auto s = multicolor_schedule(n, 1, h, delta);
        auto [alpha, gamma] = sparse_schedule(n, n - 1, delta, h);
        (void) alpha;
        auto exponent = s.gamma_exponent.exact();
        return pow(s.gamma_base, exponent->get_num().get_ui()) <= gamma;
    }

    auto labeled_parameters(unsigned long n, unsigned long m, unsigned long q) -> LabeledParameters
    {
        require(n >= 3 && m >= 2 && q >= 2, "need n >= 3, m >= 2, q >= 2");
        LabeledParameters p;
        p.L = Integer(q) * Integer(m - 1) + 1;
        Integer binom;
        mpz_bin_uiui(binom.get_mpz_t(), p.L.get_ui(), m);
        p.Q = Integer(q) * binom;
        if (p.Q * Integer(n) > Integer(1) << 24)
            throw InfeasibleSize("Qn too large for the multinomial");

        unsigned long qn = p.Q.get_ui() * n;
        // (Qn)! / (n!)^Q
        Integer top, bottom;
        mpz_fac_ui(top.get_mpz_t(), qn);
        mpz_fac_ui(bottom.get_mpz_t(), n);
        mpz_pow_ui(bottom.get_mpz_t(), bottom.get_mpz_t(), p.Q.get_ui());
        Integer multinomial = top / bottom;

        p.epsilon = pow(Rational(1) / Rational(8 * q * p.L.get_ui()), n);

        Mpfr log_k(256), log_inv_eps(256), t(256), u(256);
        mpfr_set_z(log_k.value, multinomial.get_mpz_t(), MPFR_RNDU);
        mpfr_log2(log_k.value, log_k.value, MPFR_RNDU);
        p.log2_k_bound = mpfr_get_d(log_k.value, MPFR_RNDU);

        // log2(1/eps) = n log2(8 q L)
        mpfr_set_ui(log_inv_eps.value, 8 * q * p.L.get_ui(), MPFR_RNDU);
        mpfr_log2(log_inv_eps.value, log_inv_eps.value, MPFR_RNDU);
        mpfr_mul_ui(log_inv_eps.value, log_inv_eps.value, n, MPFR_RNDU);

        // beta = k^-1 eps^(k^2 eps^-5): log2(1/beta) = log2 k + k^2 eps^-5 log2(1/eps),
        // evaluated as 2^(2 log2 k + 5 log2(1/eps)) log2(1/eps)
        mpfr_mul_ui(t.value, log_k.value, 2, MPFR_RNDU);
        mpfr_mul_ui(u.value, log_inv_eps.value, 5, MPFR_RNDU);
        mpfr_add(t.value, t.value, u.value, MPFR_RNDU);
        mpfr_ui_pow(t.value, 2, t.value, MPFR_RNDU);
        mpfr_mul(t.value, t.value, log_inv_eps.value, MPFR_RNDU);
        mpfr_add(t.value, t.value, log_k.value, MPFR_RNDU);
        p.log2_beta_inverse_bound = mpfr_get_d(t.value, MPFR_RNDU);

        // N = 32 L beta^-2: log2 N = 5 + log2 L + 2 log2(1/beta)
        mpfr_mul_ui(t.value, t.value, 2, MPFR_RNDU);
        mpfr_set_z(u.value, p.L.get_mpz_t(), MPFR_RNDU);
        mpfr_log2(u.value, u.value, MPFR_RNDU);
        mpfr_add(t.value, t.value, u.value, MPFR_RNDU);
        mpfr_add_ui(t.value, t.value, 5, MPFR_RNDU);
        mpfr_log2(t.value, t.value, MPFR_RNDU);
        p.log2_log2_n_estimate = mpfr_get_d(t.value, MPFR_RNDU);
        return p;
    }

    auto greedy_parameters(unsigned long n, unsigned long d, const Rational & delta1) -> SparseParameters
    {
        require(delta1 > 0 && delta1 * Rational(n) < 1, "delta1 must lie in (0, 1/n)");
        require(d >= 1 && d + 1 <= n, "need 1 <= d <= n - 1");
        return {1 / Rational(n * n), pow(delta1, d + 1) / Rational(n - d), delta1};
    }
}
