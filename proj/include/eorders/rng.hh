/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef EORDERS_RNG_HH
#define EORDERS_RNG_HH 1

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace eorders
{
    /**
     * The seeded generator, fixed as "eorders-rng-v1": std::mt19937_64 seeded
     * with splitmix64(seed) mixed with splitmix64(stream). Bounded draws use
     * rejection sampling rather than std::uniform_int_distribution, whose
     * output is implementation defined, so every sequence is identical on
     * every platform.
     */
    class Rng
    {
        private:
            std::mt19937_64 _engine;

        public:
            explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

            auto next() -> std::uint64_t;

            /// Uniform in [0, bound). bound must be positive.
            auto below(std::uint64_t bound) -> std::uint64_t;

            /// Uniform in [lo, hi].
            auto between(std::uint64_t lo, std::uint64_t hi) -> std::uint64_t;

            template <typename T_>
            auto shuffle(std::span<T_> items) -> void
            {
                for (std::size_t i = items.size() ; i > 1 ; --i) {
                    std::size_t j = below(i);
                    std::swap(items[i - 1], items[j]);
                }
            }

            /// A uniformly random k-subset of {0, ..., n - 1}, sorted.
            auto sample(std::uint64_t n, std::uint64_t k) -> std::vector<std::uint64_t>;
    };

    auto splitmix64(std::uint64_t x) -> std::uint64_t;
}

#endif
