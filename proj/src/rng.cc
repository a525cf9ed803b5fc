/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <eorders/rng.hh>

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace eorders
{
    auto splitmix64(std::uint64_t x) -> std::uint64_t
    {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    Rng::Rng(std::uint64_t seed, std::uint64_t stream) :
        _engine(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL))
    {
    }

    auto Rng::next() -> std::uint64_t
    {
        return _engine();
    }

    auto Rng::below(std::uint64_t bound) -> std::uint64_t
    {
        if (bound == 0)
            throw std::invalid_argument("Rng::below: zero bound");
        // reject the top partial block so every residue is equally likely
        std::uint64_t limit = -bound % bound;
        for (;;) {
            std::uint64_t x = _engine();
            if (x >= limit)
                return x % bound;
        }
    }

    auto Rng::between(std::uint64_t lo, std::uint64_t hi) -> std::uint64_t
    {
        if (hi < lo)
            throw std::invalid_argument("Rng::between: empty range");
        if (lo == 0 && hi == ~std::uint64_t(0))
            return next();
        return lo + below(hi - lo + 1);
    }

    auto Rng::sample(std::uint64_t n, std::uint64_t k) -> std::vector<std::uint64_t>
    {
        if (k > n)
            throw std::invalid_argument("Rng::sample: k > n");

        std::vector<std::uint64_t> result;
        result.reserve(k);
        if (k * 4 >= n) {
            std::vector<std::uint64_t> all(n);
            for (std::uint64_t i = 0 ; i < n ; ++i)
                all[i] = i;
            // partial Fisher-Yates on the prefix
            for (std::uint64_t i = 0 ; i < k ; ++i) {
                std::uint64_t j = i + below(n - i);
                std::swap(all[i], all[j]);
            }
            result.assign(all.begin(), all.begin() + k);
        }
        else {
            // Floyd's algorithm
            std::unordered_set<std::uint64_t> chosen;
            for (std::uint64_t j = n - k ; j < n ; ++j) {
                std::uint64_t t = below(j + 1);
                if (! chosen.insert(t).second)
                    chosen.insert(j);
            }
            result.assign(chosen.begin(), chosen.end());
        }
        std::sort(result.begin(), result.end());
        return result;
    }
}
