/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <eorders/arrows.hh>

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

using std::optional;
using std::vector;

namespace eorders
{
    auto to_string(ArrowStatus s) -> const char *
    {
        switch (s) {
            case ArrowStatus::arrows:           return "arrows";
            case ArrowStatus::not_arrows:       return "not-arrows";
            case ArrowStatus::budget_exhausted: return "budget-exhausted";
        }
        return "?";
    }

    namespace
    {
        // Smallest prefix giving at least this many blocks.
        constexpr std::uint64_t target_blocks = 64;

        auto power(std::uint64_t base, std::uint64_t exponent, std::uint64_t cap) -> std::uint64_t
        {
            std::uint64_t result = 1;
            for (std::uint64_t i = 0 ; i < exponent ; ++i) {
                if (result > cap / base)
                    return cap + 1;
                result *= base;
            }
            return result;
        }

        struct BlockResult
        {
            std::uint64_t work = 0;
            bool exhausted = false;
            optional<vector<std::uint8_t>> bad;
        };

        struct Problem
        {
            vector<Edge> edges;
            Vertex n;
            unsigned q;
            vector<PatternPlan> plans;
            std::size_t fixed;
            std::size_t prefix;
            std::uint64_t node_limit;

            auto prefix_colours(std::uint64_t block) const -> vector<std::uint8_t>
            {
                vector<std::uint8_t> colours(edges.size(), 1);
                for (std::size_t i = fixed + prefix ; i-- > fixed ; ) {
                    colours[i] = std::uint8_t(block % q + 1);
                    block /= q;
                }
                return colours;
            }

            auto contains_some_target(const vector<std::uint8_t> & colours, vector<RankMatrix> & classes) const -> bool
            {
                for (auto & c : classes)
                    c = RankMatrix(n);
                for (std::size_t i = 0 ; i < edges.size() ; ++i)
                    classes[colours[i] - 1].set(edges[i].u, edges[i].v, Rank(i + 1));
                for (unsigned c = 0 ; c < q ; ++c)
                    if (plans[c].find(classes[c]).status == SearchStatus::found)
                        return true;
                return false;
            }

            auto enumerate_block(std::uint64_t block) const -> BlockResult
            {
                BlockResult result;
                auto colours = prefix_colours(block);
                vector<RankMatrix> classes(q);
                std::size_t free_from = fixed + prefix;
                for (;;) {
                    ++result.work;
                    if (! contains_some_target(colours, classes)) {
                        result.bad = colours;
                        return result;
                    }
                    // next colouring in lexicographic order
                    std::size_t i = edges.size();
                    while (i > free_from && colours[i - 1] == q) {
                        colours[i - 1] = 1;
                        --i;
                    }
                    if (i == free_from)
                        return result;
                    ++colours[i - 1];
                }
            }

            struct Backtracker
            {
                const Problem & p;
                vector<std::uint8_t> colours;
                vector<RankMatrix> classes;
                std::uint64_t nodes = 0;
                bool exhausted = false;

                auto search(std::size_t pos) -> bool
                {
                    if (pos == p.edges.size())
                        return true;

                    unsigned lo = 1, hi = p.q;
                    if (pos < p.fixed + p.prefix)
                        lo = hi = colours[pos];

                    auto & e = p.edges[pos];
                    for (unsigned c = lo ; c <= hi ; ++c) {
                        if (p.node_limit && nodes >= p.node_limit) {
                            exhausted = true;
                            return false;
                        }
                        ++nodes;
                        colours[pos] = std::uint8_t(c);
                        classes[c - 1].set(e.u, e.v, Rank(pos + 1));
                        bool completes = p.plans[c - 1].find_through(classes[c - 1], e.u, e.v).status == SearchStatus::found;
                        if (! completes && search(pos + 1))
                            return true;
                        classes[c - 1].set(e.u, e.v, 0);
                        if (exhausted)
                            return false;
                    }
                    return false;
                }
            };

            auto backtrack_block(std::uint64_t block) const -> BlockResult
            {
                Backtracker b{*this, prefix_colours(block), vector<RankMatrix>(q, RankMatrix(n))};
                BlockResult result;
                if (b.search(0))
                    result.bad = b.colours;
                result.work = b.nodes;
                result.exhausted = b.exhausted;
                return result;
            }
        };

        auto all_identical(const vector<EdgeOrderedGraph> & targets) -> bool
        {
            for (auto & t : targets)
                if (! are_equivalent(t, targets.front()))
                    return false;
            return true;
        }
    }

    auto arrows(const EdgeOrderedGraph & host, const vector<EdgeOrderedGraph> & targets, const ArrowOptions & options) -> ArrowVerdict
    {
        if (targets.empty() || targets.size() > 255)
            throw PreconditionViolation("arrows: need between 1 and 255 targets");
        if (auto bad = validate(host))
            throw PreconditionViolation("arrows: host: " + *bad);
        for (auto & t : targets)
            if (auto bad = validate(t))
                throw PreconditionViolation("arrows: target: " + *bad);
        if (host.vertex_count() > max_dense_host_vertices)
            throw InfeasibleSize("arrows: host too large");

        unsigned q = unsigned(targets.size());
        ArrowVerdict verdict;

        // An edgeless target small enough to fit is in every colour class.
        for (auto & t : targets)
            if (t.edge_count() == 0 && t.vertex_count() <= host.vertex_count()) {
                verdict.status = ArrowStatus::arrows;
                return verdict;
            }

        std::size_t m = host.edge_count();
        Problem p{host.edges_by_rank(), host.vertex_count(), q, {}, 0, 0, options.node_limit};
        for (auto & t : targets)
            p.plans.emplace_back(t);

        verdict.symmetry_reduced = options.symmetry_reduction && q > 1 && m > 0 && all_identical(targets);
        p.fixed = verdict.symmetry_reduced ? 1 : 0;
        while (p.fixed + p.prefix < m && power(q, p.prefix, target_blocks) < target_blocks)
            ++p.prefix;
        std::uint64_t blocks = power(q, p.prefix, target_blocks);

        std::uint64_t space = power(q, m - p.fixed, options.max_colorings);
        bool enumerate = options.mode == ArrowMode::enumerate
            || (options.mode == ArrowMode::automatic && space <= options.max_colorings);
        verdict.mode_used = enumerate ? ArrowMode::enumerate : ArrowMode::backtrack;
        if (enumerate && space > options.max_colorings)
            return verdict;

        vector<BlockResult> results(blocks);
        std::atomic<std::uint64_t> next{0}, decided{blocks};
        auto work = [&] () {
            for (;;) {
                std::uint64_t k = next.fetch_add(1);
                if (k >= blocks || k > decided.load())
                    return;
                results[k] = enumerate ? p.enumerate_block(k) : p.backtrack_block(k);
                if (results[k].bad || results[k].exhausted) {
                    std::uint64_t seen = decided.load();
                    while (k < seen && ! decided.compare_exchange_weak(seen, k))
                        ;
                }
            }
        };

        unsigned workers = std::max(1u, options.workers);
        if (workers == 1)
            work();
        else {
            vector<std::thread> threads;
            for (unsigned i = 0 ; i < workers ; ++i)
                threads.emplace_back(work);
            for (auto & t : threads)
                t.join();
        }

        // Walk blocks in order so the verdict and the work count do not
        // depend on scheduling.
        for (std::uint64_t k = 0 ; k < blocks ; ++k) {
            verdict.work += results[k].work;
            if (results[k].bad) {
                Coloring certificate{q, *results[k].bad};
                if (! verify_certificate(host, targets, certificate))
                    throw std::logic_error("arrows: certificate failed re-verification");
                verdict.status = ArrowStatus::not_arrows;
                verdict.certificate = std::move(certificate);
                return verdict;
            }
            if (results[k].exhausted || (options.node_limit && ! enumerate && verdict.work > options.node_limit)) {
                verdict.status = ArrowStatus::budget_exhausted;
                return verdict;
            }
        }
        verdict.status = ArrowStatus::arrows;
        return verdict;
    }

    auto non_arrow_certificate(const EdgeOrderedGraph & host, const vector<EdgeOrderedGraph> & targets,
            const ArrowOptions & options) -> optional<Coloring>
    {
        ArrowOptions o = options;
        o.mode = ArrowMode::backtrack;
        auto verdict = arrows(host, targets, o);
        if (verdict.status == ArrowStatus::budget_exhausted)
            throw BudgetExhausted("non_arrow_certificate: node limit reached");
        return verdict.certificate;
    }

    auto verify_certificate(const EdgeOrderedGraph & host, const vector<EdgeOrderedGraph> & targets, const Coloring & coloring) -> bool
    {
        if (coloring.q != targets.size() || validate(coloring, host.edge_count()))
            return false;
        for (unsigned c = 1 ; c <= coloring.q ; ++c)
            if (find_monochromatic_copy(host, coloring, targets[c - 1], c).status != SearchStatus::none)
                return false;
        return true;
    }

    auto lex_complete(Vertex n) -> EdgeOrderedGraph
    {
        VertexOrderedGraph g{n, {}};
        for (Vertex u = 0 ; u < n ; ++u)
            for (Vertex v = u + 1 ; v < n ; ++v)
                g.edges.emplace_back(u, v);
        return lex_order(g);
    }

    namespace
    {
        // Edge sequences of K_n in which vertices first appear in id order;
        // every canonical form is one of these.
        struct OrderingGenerator
        {
            Vertex n;
            vector<std::uint8_t> used;
            vector<Edge> sequence;
            vector<EdgeOrderedGraph> & out;

            auto search(Vertex seen) -> void
            {
                std::size_t m = pairs(n);
                if (sequence.size() == m) {
                    EdgeOrderedGraph g(n, sequence);
                    if (canonical_form(g) == g)
                        out.push_back(std::move(g));
                    return;
                }
                Rank r = Rank(sequence.size() + 1);
                for (Vertex a = 0 ; a < n ; ++a)
                    for (Vertex b = a + 1 ; b < n ; ++b) {
                        bool allowed = (b < seen) || (a < seen && b == seen) || (a == seen && b == seen + 1);
                        if (! allowed || used[a * n + b])
                            continue;
                        used[a * n + b] = 1;
                        sequence.push_back({a, b, r});
                        search(std::max<Vertex>(seen, b + 1));
                        sequence.pop_back();
                        used[a * n + b] = 0;
                    }
            }
        };
    }

    auto complete_orderings(Vertex n) -> vector<EdgeOrderedGraph>
    {
        if (n > max_exhaustive_host_vertices)
            throw InfeasibleSize("complete_orderings: K_" + std::to_string(n) + " has too many orderings to enumerate (limit "
                    + std::to_string(max_exhaustive_host_vertices) + " vertices)");
        vector<EdgeOrderedGraph> out;
        OrderingGenerator gen{n, vector<std::uint8_t>(std::size_t(n) * n, 0), {}, out};
        gen.search(0);
        return out;
    }

    auto ramsey_search(const EdgeOrderedGraph & pattern, unsigned q, Vertex n_max, HostStrategy strategy,
            const ArrowOptions & options) -> RamseyResult
    {
        if (q < 1 || q > 255)
            throw PreconditionViolation("ramsey_search: q must be in [1, 255]");
        if (auto bad = validate(pattern))
            throw PreconditionViolation("ramsey_search: pattern: " + *bad);

        vector<EdgeOrderedGraph> targets(q, pattern);
        RamseyResult result;
        // Every smaller host has been ruled out so far.
        bool exact = true;
        for (Vertex n = pattern.vertex_count() ; n <= n_max ; ++n) {
            auto lex = lex_complete(n);
            auto verdict = arrows(lex, targets, options);
            ++result.orderings_tested;
            if (verdict.status == ArrowStatus::budget_exhausted) {
                result.status = RamseyStatus::budget_exhausted;
                result.n = n;
                return result;
            }
            if (verdict.status == ArrowStatus::arrows) {
                result.status = RamseyStatus::found;
                result.n = n;
                result.host = lex;
                result.upper_bound = ! exact;
                return result;
            }

            if (strategy == HostStrategy::lex_only) {
                exact = false;
                continue;
            }

            for (auto & host : complete_orderings(n)) {
                if (host == canonical_form(lex))
                    continue;
                auto v = arrows(host, targets, options);
                ++result.orderings_tested;
                if (v.status == ArrowStatus::budget_exhausted) {
                    result.status = RamseyStatus::budget_exhausted;
                    result.n = n;
                    return result;
                }
                if (v.status == ArrowStatus::arrows) {
                    result.status = RamseyStatus::found;
                    result.n = n;
                    result.host = host;
                    result.upper_bound = false;
                    return result;
                }
            }
        }
        result.status = RamseyStatus::not_found;
        result.n = n_max;
        return result;
    }

    auto verify_composition(const EdgeOrderedGraph & f, const EdgeOrderedGraph & g, const EdgeOrderedGraph & h,
            unsigned r, unsigned s, const ArrowOptions & options) -> CompositionReport
    {
        if (r < 1 || s < 1 || r * s > 255)
            throw PreconditionViolation("verify_composition: need r, s >= 1 and rs <= 255");
        CompositionReport report;
        report.f_to_g = arrows(f, vector<EdgeOrderedGraph>(s, g), options).status;
        report.g_to_h = arrows(g, vector<EdgeOrderedGraph>(r, h), options).status;
        report.f_to_h = arrows(f, vector<EdgeOrderedGraph>(r * s, h), options).status;
        report.hypotheses_hold = report.f_to_g == ArrowStatus::arrows && report.g_to_h == ArrowStatus::arrows;
        report.all_verified = report.hypotheses_hold && report.f_to_h == ArrowStatus::arrows;
        return report;
    }
}
