/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <eorders/regularity.hh>
#include <eorders/rng.hh>

#include <algorithm>
#include <atomic>
#include <numeric>
#include <set>
#include <thread>

using std::vector;

namespace eorders
{
    auto to_string(CheckMode m) -> const char *
    {
        return m == CheckMode::exact ? "exact" : "sampled";
    }

    auto generate_random_host(Vertex n, std::uint64_t seed) -> EdgeOrderedGraph
    {
        if (n < 2)
            throw PreconditionViolation("generate_random_host: need at least 2 vertices");
        std::uint64_t m = pairs(n);
        vector<Rank> labels(m);
        std::iota(labels.begin(), labels.end(), Rank(1));
        Rng rng(seed);
        rng.shuffle(std::span<Rank>(labels));

        vector<Edge> edges;
        edges.reserve(m);
        std::size_t i = 0;
        for (Vertex u = 0 ; u < n ; ++u)
            for (Vertex v = u + 1 ; v < n ; ++v)
                edges.push_back({u, v, labels[i++]});
        return EdgeOrderedGraph(n, std::move(edges));
    }

    namespace
    {
        auto boundary_size(const Rational & epsilon, std::size_t size) -> std::size_t
        {
            Integer s = ceil(epsilon * Rational(Integer(static_cast<unsigned long>(size))));
            return std::max<std::size_t>(1, s.get_ui());
        }

        auto pick(const VertexSet & from, const vector<std::uint64_t> & positions) -> VertexSet
        {
            VertexSet result;
            for (auto p : positions)
                result.push_back(from[p]);
            return result;
        }

        auto check_pair_inputs(const VertexSet & x, const VertexSet & y, const Rational & epsilon) -> void
        {
            if (x.empty() || y.empty())
                throw PreconditionViolation("regularity: X and Y must be nonempty");
            if (! disjoint(x, y))
                throw PreconditionViolation("regularity: X and Y must be disjoint");
            if (epsilon <= 0)
                throw PreconditionViolation("regularity: epsilon must be positive");
        }
    }

    auto pair_regularity_check(const Graph & f, const VertexSet & x, const VertexSet & y, const Rational & alpha,
            const Rational & epsilon, CheckMode mode, std::uint64_t samples, std::uint64_t seed) -> RegularityReport
    {
        check_pair_inputs(x, y, epsilon);
        RegularityReport report;
        report.epsilon = epsilon;
        report.mode = mode;
        std::size_t sx = boundary_size(epsilon, x.size()), sy = boundary_size(epsilon, y.size());

        if (mode == CheckMode::sampled) {
            bool have = false;
            for (std::uint64_t k = 0 ; k < samples ; ++k) {
                if (sx > x.size() || sy > y.size())
                    break;
                Rng rng(seed, k);
                auto xs = pick(x, rng.sample(x.size(), sx));
                auto ys = pick(y, rng.sample(y.size(), sy));
                Rational deviation = abs_diff(density(f, xs, ys), alpha);
                ++report.samples;
                if (deviation >= epsilon)
                    ++report.violations;
                if (! have || deviation > report.worst_deviation) {
                    have = true;
                    report.worst_deviation = deviation;
                    report.witness_x = xs;
                    report.witness_y = ys;
                }
            }
            return report;
        }

        if (x.size() > max_exact_side || y.size() > max_exact_side)
            throw InfeasibleSize("exact regularity check needs |X|, |Y| <= " + std::to_string(max_exact_side));
        if (sx > x.size() || sy > y.size())
            return report;

        vector<std::uint32_t> row(x.size(), 0);
        for (std::size_t i = 0 ; i < x.size() ; ++i)
            for (std::size_t j = 0 ; j < y.size() ; ++j)
                if (f.adjacent(x[i], y[j]))
                    row[i] |= 1u << j;

        // For a fixed X', the extreme densities over |Y'| >= sy are reached
        // by the sy columns of largest and of smallest degree.
        bool have = false;
        vector<std::pair<unsigned, std::size_t>> degrees(y.size());
        for (std::uint32_t mask = 1 ; mask < (1u << x.size()) ; ++mask) {
            std::size_t size = std::size_t(__builtin_popcount(mask));
            if (size < sx)
                continue;
            ++report.samples;
            for (std::size_t j = 0 ; j < y.size() ; ++j) {
                unsigned d = 0;
                for (std::size_t i = 0 ; i < x.size() ; ++i)
                    if ((mask >> i) & 1u)
                        d += (row[i] >> j) & 1u;
                degrees[j] = {d, j};
            }
            std::stable_sort(degrees.begin(), degrees.end(), [] (auto & a, auto & b) { return a.first < b.first; });
            std::uint64_t low = 0, high = 0;
            for (std::size_t k = 0 ; k < sy ; ++k) {
                low += degrees[k].first;
                high += degrees[y.size() - 1 - k].first;
            }
            Rational over = density(high, size, sy) - alpha;
            Rational under = alpha - density(low, size, sy);
            bool top = over >= under;
            Rational deviation = top ? over : under;
            if (deviation >= epsilon)
                ++report.violations;
            if (! have || deviation > report.worst_deviation) {
                have = true;
                report.worst_deviation = deviation;
                report.witness_x.clear();
                for (std::size_t i = 0 ; i < x.size() ; ++i)
                    if ((mask >> i) & 1u)
                        report.witness_x.push_back(x[i]);
                report.witness_y.clear();
                for (std::size_t k = 0 ; k < sy ; ++k)
                    report.witness_y.push_back(y[degrees[top ? y.size() - 1 - k : k].second]);
                std::sort(report.witness_y.begin(), report.witness_y.end());
            }
        }
        if (report.worst_deviation < 0)
            report.worst_deviation = 0;
        return report;
    }

    namespace
    {
        struct HostSample
        {
            Interval interval;
            VertexSet x, y;
        };

        auto draw_host_sample(Vertex n, std::uint64_t m, const Rational & epsilon, std::size_t set_size,
                std::uint64_t seed, std::uint64_t k) -> HostSample
        {
            Rng rng(seed, k);
            HostSample s;
            std::uint64_t min_length = ceil(epsilon * Rational(Integer(static_cast<unsigned long>(m)))).get_ui();
            min_length = std::clamp<std::uint64_t>(min_length, 1, m);
            std::uint64_t length = rng.between(min_length, m);
            s.interval.lo = Rank(rng.between(1, m - length + 1));
            s.interval.hi = Rank(s.interval.lo + length - 1);

            auto both = rng.sample(n, 2 * set_size);
            rng.shuffle(std::span<std::uint64_t>(both));
            VertexSet big_x(both.begin(), both.begin() + set_size), big_y(both.begin() + set_size, both.end());
            std::sort(big_x.begin(), big_x.end());
            std::sort(big_y.begin(), big_y.end());

            std::size_t sub = boundary_size(epsilon, set_size);
            s.x = pick(big_x, rng.sample(set_size, sub));
            s.y = pick(big_y, rng.sample(set_size, sub));
            return s;
        }
    }

    auto check_host_regularity(const EdgeOrderedGraph & g, const Rational & epsilon, std::uint64_t samples,
            std::uint64_t seed, unsigned workers) -> RegularityReport
    {
        if (epsilon <= 0 || epsilon >= 1)
            throw PreconditionViolation("check_host_regularity: epsilon must lie in (0, 1)");
        Vertex n = g.vertex_count();
        std::size_t set_size = boundary_size(epsilon, n);
        if (n < 2 || 2 * set_size > n)
            throw PreconditionViolation("check_host_regularity: two disjoint sets of size ceil(epsilon N) do not fit");
        if (n > 8192)
            throw InfeasibleSize("check_host_regularity: host too large for the dense rank table");

        RankMatrix ranks(g);
        std::uint64_t m = pairs(n);

        vector<std::uint64_t> counts(samples);
        vector<std::uint64_t> lengths(samples);
        std::atomic<std::uint64_t> next{0};
        auto work = [&] () {
            for (;;) {
                std::uint64_t k = next.fetch_add(1);
                if (k >= samples)
                    return;
                auto s = draw_host_sample(n, m, epsilon, set_size, seed, k);
                std::uint64_t e = 0;
                for (Vertex a : s.x) {
                    auto row = ranks.row(a);
                    for (Vertex b : s.y)
                        e += s.interval.contains(row[b]);
                }
                counts[k] = e;
                lengths[k] = s.interval.length();
            }
        };
        unsigned w = std::max(1u, workers);
        if (w == 1)
            work();
        else {
            vector<std::thread> threads;
            for (unsigned i = 0 ; i < w ; ++i)
                threads.emplace_back(work);
            for (auto & t : threads)
                t.join();
        }

        RegularityReport report;
        report.epsilon = epsilon;
        report.mode = CheckMode::sampled;
        report.samples = samples;
        std::size_t sub = boundary_size(epsilon, set_size);
        std::uint64_t worst = samples;
        for (std::uint64_t k = 0 ; k < samples ; ++k) {
            Rational alpha(Integer(static_cast<unsigned long>(lengths[k])), Integer(static_cast<unsigned long>(m)));
            alpha.canonicalize();
            Rational deviation = abs_diff(density(counts[k], sub, sub), alpha);
            if (deviation >= epsilon)
                ++report.violations;
            if (worst == samples || deviation > report.worst_deviation) {
                worst = k;
                report.worst_deviation = deviation;
            }
        }
        if (worst < samples) {
            auto s = draw_host_sample(n, m, epsilon, set_size, seed, worst);
            report.witness_interval = s.interval;
            report.witness_x = s.x;
            report.witness_y = s.y;
        }
        return report;
    }

    auto degree_outliers(const Graph & f, const VertexSet & x, const VertexSet & y, const Rational & alpha,
            const Rational & epsilon) -> VertexSet
    {
        Rational size(Integer(static_cast<unsigned long>(y.size())));
        Rational lo = (alpha - epsilon) * size, hi = (alpha + epsilon) * size;
        VertexSet result;
        for (Vertex v : x) {
            Rational d(Integer(static_cast<unsigned long>(degree(f, v, y))));
            if (d < lo || d > hi)
                result.push_back(v);
        }
        return result;
    }

    auto codegree_outliers(const Graph & f, const VertexSet & x, const VertexSet & y, const VertexSet & z,
            const Rational & alpha, const Rational & epsilon) -> std::uint64_t
    {
        if (! (alpha > 0 && alpha < Rational(1, 2)))
            throw PreconditionViolation("codegree_outliers: alpha must lie in (0, 1/2)");
        if (! (epsilon > 0 && epsilon < alpha / 5))
            throw PreconditionViolation("codegree_outliers: epsilon must lie in (0, alpha/5)");

        Rational size(Integer(static_cast<unsigned long>(z.size())));
        Rational lo = (alpha * alpha - 2 * epsilon) * size, hi = (alpha * alpha + 2 * epsilon) * size;
        std::uint64_t result = 0;
        for (Vertex a : x)
            for (Vertex b : y) {
                Rational d(Integer(static_cast<unsigned long>(codegree(f, a, b, z))));
                if (d < lo || d > hi)
                    ++result;
            }
        return result;
    }

    auto generate_labeled_host(Vertex n, std::uint32_t label_count, std::uint64_t seed) -> EdgeLabeledGraph
    {
        if (n < 2 || label_count < 1)
            throw PreconditionViolation("generate_labeled_host: need N >= 2 and L >= 1");
        Rng rng(seed);
        EdgeLabeledGraph g{n, label_count, {}};
        g.edges.reserve(pairs(n));
        for (Vertex u = 0 ; u < n ; ++u)
            for (Vertex v = u + 1 ; v < n ; ++v)
                g.edges.push_back({u, v, std::uint32_t(1 + rng.below(label_count))});
        return g;
    }

    auto label_density(const EdgeLabeledGraph & g, std::uint32_t label, const VertexSet & u, const VertexSet & w) -> Rational
    {
        if (u.empty() || w.empty())
            throw PreconditionViolation("label_density: sets must be nonempty");
        if (! disjoint(u, w))
            throw PreconditionViolation("label_density: sets overlap");
        Membership in_u(g.n, u), in_w(g.n, w);
        std::uint64_t e = 0;
        for (auto & edge : g.edges)
            if (edge.label == label && ((in_u.contains(edge.u) && in_w.contains(edge.v)) || (in_u.contains(edge.v) && in_w.contains(edge.u))))
                ++e;
        return density(e, u.size(), w.size());
    }

    auto sample_label_densities(const EdgeLabeledGraph & g, std::size_t set_size, std::uint64_t samples,
            std::uint64_t seed) -> LabelDensityReport
    {
        if (set_size < 1 || 2 * set_size > g.n)
            throw PreconditionViolation("sample_label_densities: sets do not fit");
        if (g.n > 8192)
            throw InfeasibleSize("sample_label_densities: host too large");

        vector<std::uint32_t> labels(std::size_t(g.n) * g.n, 0);
        for (auto & e : g.edges)
            labels[std::size_t(e.u) * g.n + e.v] = labels[std::size_t(e.v) * g.n + e.u] = e.label;

        LabelDensityReport report;
        vector<std::uint64_t> counts(g.label_count + 1);
        for (std::uint64_t k = 0 ; k < samples ; ++k) {
            Rng rng(seed, k);
            auto both = rng.sample(g.n, 2 * set_size);
            rng.shuffle(std::span<std::uint64_t>(both));
            std::fill(counts.begin(), counts.end(), 0);
            for (std::size_t i = 0 ; i < set_size ; ++i)
                for (std::size_t j = set_size ; j < 2 * set_size ; ++j)
                    ++counts[labels[both[i] * g.n + both[j]]];
            for (std::uint32_t l = 1 ; l <= g.label_count ; ++l) {
                Rational d = density(counts[l], set_size, set_size);
                if (report.minimum_label == 0 || d < report.minimum) {
                    report.minimum = d;
                    report.minimum_label = l;
                }
            }
            ++report.samples;
        }
        return report;
    }

    auto check_cylinder_partition(const CylinderPartition & partition) -> void
    {
        std::size_t k = partition.parts.size();
        if (k == 0)
            throw PreconditionViolation("cylinder partition: no parts");
        for (std::size_t i = 0 ; i < k ; ++i)
            for (std::size_t j = i + 1 ; j < k ; ++j)
                if (! disjoint(partition.parts[i], partition.parts[j]))
                    throw PreconditionViolation("cylinder partition: parts overlap");

        Integer total = 0, product = 1;
        for (auto & p : partition.parts)
            product *= static_cast<unsigned long>(p.size());
        for (auto & cell : partition.cells) {
            if (cell.size() != k)
                throw PreconditionViolation("cylinder partition: cell has the wrong number of sides");
            Integer volume = 1;
            for (std::size_t i = 0 ; i < k ; ++i) {
                if (cell[i].empty())
                    throw PreconditionViolation("cylinder partition: empty cell side");
                if (! std::includes(partition.parts[i].begin(), partition.parts[i].end(), cell[i].begin(), cell[i].end()))
                    throw PreconditionViolation("cylinder partition: cell side outside its part");
                volume *= static_cast<unsigned long>(cell[i].size());
            }
            total += volume;
        }
        for (std::size_t a = 0 ; a < partition.cells.size() ; ++a)
            for (std::size_t b = a + 1 ; b < partition.cells.size() ; ++b) {
                bool apart = false;
                for (std::size_t i = 0 ; i < k && ! apart ; ++i)
                    apart = disjoint(partition.cells[a][i], partition.cells[b][i]);
                if (! apart)
                    throw PreconditionViolation("cylinder partition: cells overlap");
            }
        if (total != product)
            throw PreconditionViolation("cylinder partition: cells do not cover the product");
    }

    auto cylinder_potential(const vector<Graph> & colours, const CylinderPartition & partition) -> Rational
    {
        check_cylinder_partition(partition);
        std::set<std::pair<Vertex, Vertex>> seen;
        for (auto & f : colours)
            for (Vertex v = 0 ; v < f.vertex_count() ; ++v)
                for (Vertex u : f.neighbours(v))
                    if (v < u && ! seen.emplace(v, u).second)
                        throw PreconditionViolation("cylinder_potential: colour classes share an edge");

        Integer product = 1;
        for (auto & p : partition.parts)
            product *= static_cast<unsigned long>(p.size());

        Rational value = 0;
        std::size_t k = partition.parts.size();
        for (auto & cell : partition.cells) {
            Integer volume = 1;
            for (auto & side : cell)
                volume *= static_cast<unsigned long>(side.size());
            Rational inner = 0;
            for (std::size_t i = 0 ; i < k ; ++i)
                for (std::size_t j = i + 1 ; j < k ; ++j)
                    for (auto & f : colours) {
                        Rational d = density(f, cell[i], cell[j]);
                        inner += d * d;
                    }
            Rational weight(volume, product);
            weight.canonicalize();
            value += weight * inner;
        }
        return value;
    }
}
