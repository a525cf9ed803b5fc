/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <eorders/acceptance.hh>
#include <eorders/arrows.hh>
#include <eorders/bounds.hh>
#include <eorders/cli.hh>
#include <eorders/containment.hh>
#include <eorders/core.hh>
#include <eorders/embedding.hh>
#include <eorders/pipeline.hh>
#include <eorders/regularity.hh>
#include <eorders/rng.hh>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using std::string;
using std::vector;

namespace eorders
{
    namespace
    {
        using Clock = std::chrono::steady_clock;

        struct Outcome
        {
            bool pass = false;
            string detail;
        };

        auto seconds_since(Clock::time_point start) -> double
        {
            return std::chrono::duration<double>(Clock::now() - start).count();
        }

        auto fixed(double x, int digits = 2) -> string
        {
            std::ostringstream s;
            s.setf(std::ios::fixed);
            s.precision(digits);
            s << x;
            return s.str();
        }

        auto two_five_cycles(const EdgeOrderedGraph & k5) -> Coloring
        {
            Coloring c;
            c.q = 2;
            c.colors.assign(k5.edge_count(), 2);
            for (auto & e : k5.edges()) {
                auto gap = (e.v + 5 - e.u) % 5;
                if (gap == 1 || gap == 4)
                    c.colors[e.label - 1] = 1;
            }
            return c;
        }

        auto criterion_ramsey() -> Outcome
        {
            auto triangle = lex_complete(3);
            vector<EdgeOrderedGraph> targets{triangle, triangle};

            auto r = ramsey_search(triangle, 2, 8, HostStrategy::exhaustive);
            bool ramsey_ok = r.status == RamseyStatus::found && r.n == 6 && ! r.upper_bound;

            ArrowOptions full;
            full.mode = ArrowMode::enumerate;
            full.symmetry_reduction = false;
            auto start = Clock::now();
            auto k6 = arrows(lex_complete(6), targets, full);
            double elapsed = seconds_since(start);
            bool k6_ok = k6.status == ArrowStatus::arrows && k6.work == (std::uint64_t(1) << 15) && elapsed < 5.0;

            auto k5 = lex_complete(5);
            auto c = two_five_cycles(k5);
            bool k5_ok = verify_certificate(k5, targets, c);
            std::uint64_t orderings = 0;
            for (auto & host : complete_orderings(5)) {
                ++orderings;
                k5_ok = k5_ok && verify_certificate(host, targets, two_five_cycles(host));
            }

            return {ramsey_ok && k6_ok && k5_ok, "ramsey=" + std::to_string(r.n) + " k6_colorings=" + std::to_string(k6.work)
                + " k6_seconds=" + fixed(elapsed) + " k5_certified=" + (k5_ok ? "yes" : "no") + " k5_orderings="
                + std::to_string(orderings)};
        }

        auto criterion_classes() -> Outcome
        {
            auto c2 = count_equivalence_classes(2), c3 = count_equivalence_classes(3), c4 = count_equivalence_classes(4);
            return {c2 == 1 && c3 == 1 && c4 == 30, "n2=" + std::to_string(c2) + " n3=" + std::to_string(c3)
                + " n4=" + std::to_string(c4)};
        }

        auto criterion_partition() -> Outcome
        {
            Rng rng(20240601, 3);
            std::uint64_t bad = 0, checked = 0;
            for (int k = 0 ; k < 10000 ; ++k) {
                auto length = rng.between(1, 2000);
                auto m = rng.between(1, length);
                Rank lo = Rank(rng.between(1, 5000));
                Interval interval{lo, Rank(lo + length - 1)};
                auto blocks = equitable_blocks(interval, m);
                ++checked;
                bool ok = blocks.size() == m && blocks.front().lo == interval.lo && blocks.back().hi == interval.hi;
                std::uint64_t smallest = length, largest = 0;
                for (std::size_t j = 0 ; ok && j < blocks.size() ; ++j) {
                    ok = ! blocks[j].empty() && (j == 0 || blocks[j].lo == blocks[j - 1].hi + 1);
                    smallest = std::min(smallest, blocks[j].length());
                    largest = std::max(largest, blocks[j].length());
                }
                ok = ok && largest - smallest <= 1 && smallest >= length / m;
                bad += ! ok;
            }
            return {bad == 0, "pairs=" + std::to_string(checked) + " failures=" + std::to_string(bad)};
        }

        auto criterion_filter() -> Outcome
        {
            const vector<Rational> cs{Rational(1), Rational(3, 2), Rational(2), Rational(3), Rational(5)};
            std::uint64_t bad = 0;
            for (std::uint64_t k = 0 ; k < 1000 ; ++k) {
                Rng rng(77, k);
                auto a = rng.between(1, 30), b = rng.between(1, 30);
                auto p = rng.between(0, 100);
                Graph f(Vertex(a + b));
                for (Vertex x = 0 ; x < a ; ++x)
                    for (Vertex y = 0 ; y < b ; ++y)
                        if (rng.below(100) < p)
                            f.add_edge(x, Vertex(a + y));
                VertexSet xs, ys;
                for (Vertex x = 0 ; x < a ; ++x)
                    xs.push_back(x);
                for (Vertex y = 0 ; y < b ; ++y)
                    ys.push_back(Vertex(a + y));
                Rational delta = density(f, xs, ys) + Rational(1 + rng.below(4), 20);
                auto c = cs[rng.below(cs.size())];
                auto kept = degree_filter(f, xs, ys, c, delta);
                bool ok = Rational(kept.size()) >= (1 - 1 / c) * Rational(a);
                for (auto x : xs) {
                    bool below = Rational(degree(f, x, ys)) < c * delta * Rational(b);
                    ok = ok && below == std::binary_search(kept.begin(), kept.end(), x);
                }
                bad += ! ok;
            }
            return {bad == 0, "instances=1000 failures=" + std::to_string(bad)};
        }

        // Every injective map with v_i in X_i whose pattern edges land in their blocks.
        auto exhaustive_interval_copy(const RankedAdjacency & g1, const IntervalPartition & jp, const vector<VertexSet> & parts)
            -> bool
        {
            std::size_t n = parts.size();
            vector<Vertex> map(n);
            std::function<bool (std::size_t)> extend = [&] (std::size_t i) -> bool {
                if (i == n)
                    return true;
                for (auto v : parts[i]) {
                    bool ok = true;
                    for (std::size_t j = 0 ; ok && j < i ; ++j) {
                        ok = map[j] != v;
                        for (auto & e : jp.pattern_edges)
                            if (ok && ((e.u == j && e.v == i) || (e.u == i && e.v == j))) {
                                auto r = g1.rank(map[j], v);
                                ok = r != 0 && jp.block(e.u, e.v).contains(r);
                            }
                    }
                    if (ok) {
                        map[i] = v;
                        if (extend(i + 1))
                            return true;
                    }
                }
                return false;
            };
            return extend(0);
        }

        auto random_pattern(Rng & rng, Vertex n) -> EdgeOrderedGraph
        {
            vector<std::pair<Vertex, Vertex>> pairs_list;
            for (Vertex u = 0 ; u < n ; ++u)
                for (Vertex v = u + 1 ; v < n ; ++v)
                    if (rng.below(3) != 0 || (u == 0 && v == 1))
                        pairs_list.push_back({u, v});
            rng.shuffle(std::span(pairs_list));
            vector<Edge> edges;
            for (std::size_t k = 0 ; k < pairs_list.size() ; ++k)
                edges.push_back(Edge{pairs_list[k].first, pairs_list[k].second, Rank(k + 1)});
            return EdgeOrderedGraph(n, edges);
        }

        auto criterion_greedy() -> Outcome
        {
            std::uint64_t bad = 0, embedded = 0, witnesses = 0, confirmed_none = 0;
            for (std::uint64_t k = 0 ; k < 1000 ; ++k) {
                Rng rng(4242, k);
                Vertex n = Vertex(rng.between(2, 4));
                auto pattern = random_pattern(rng, n);
                Vertex big_n = Vertex(rng.between(3 * n, 24));
                auto host = generate_random_host(big_n, rng.next());
                auto keep = rng.between(20, 95);
                vector<Edge> kept;
                for (auto & e : host.edges())
                    if (rng.below(100) < keep)
                        kept.push_back(e);
                RankedAdjacency g1(big_n, kept);

                auto m = host.edge_count();
                auto length = rng.between(n * n, m);
                Rank lo = Rank(rng.between(1, m - length + 1));
                Interval interval{lo, Rank(lo + length - 1)};

                vector<Vertex> order(big_n);
                for (Vertex v = 0 ; v < big_n ; ++v)
                    order[v] = v;
                rng.shuffle(std::span(order));
                std::size_t per = big_n / n;
                vector<VertexSet> parts;
                std::size_t union_size = 0;
                for (Vertex i = 0 ; i < n ; ++i) {
                    parts.push_back(make_vertex_set(vector<Vertex>(order.begin() + i * per, order.begin() + (i + 1) * per)));
                    union_size += per;
                }
                Rational delta1(1, n + rng.between(1, 4));

                auto outcome = greedy_embed(g1, pattern, interval, parts, delta1);
                auto & jp = outcome.partition;
                bool ok = true;
                if (outcome.embedded()) {
                    ++embedded;
                    ok = verify_interval_embedding(g1, jp, parts, outcome.embedding());
                }
                else {
                    ++witnesses;
                    auto & w = outcome.witness();
                    ok = ! verify_witness(g1, w, delta1).has_value();
                    if (! exhaustive_interval_copy(g1, jp, parts)) {
                        ++confirmed_none;
                        auto d = degeneracy_order(pattern).degeneracy;
                        Rational gamma = pow(delta1, d + 1) / Rational(n - d);
                        bool inside = std::any_of(jp.blocks.begin(), jp.blocks.end(),
                                [&] (const Interval & j) { return j == w.interval; });
                        auto [a, b] = *w.origin;
                        ok = ok && inside && w.sets.size() == 2
                            && Rational(w.interval.length()) * Rational(n * n) >= Rational(interval.length())
                            && std::includes(parts[a].begin(), parts[a].end(), w.sets[0].begin(), w.sets[0].end())
                            && std::includes(parts[b].begin(), parts[b].end(), w.sets[1].begin(), w.sets[1].end())
                            && disjoint(w.sets[0], w.sets[1])
                            && Rational(w.sets[0].size()) >= gamma * Rational(union_size)
                            && Rational(w.sets[1].size()) >= gamma * Rational(union_size)
                            && w.max_density() < delta1
                            && g1.density(w.sets[0], w.sets[1], w.interval) == w.densities[0][1];
                    }
                }
                bad += ! ok;
            }
            return {bad == 0, "instances=1000 embeddings=" + std::to_string(embedded) + " witnesses=" + std::to_string(witnesses)
                + " confirmed_no_copy=" + std::to_string(confirmed_none) + " failures=" + std::to_string(bad)};
        }

        // Pairs are complete with parameter p_ij in (1 - eps, 1), or have one
        // edge dropped; exact certification separates the two.
        auto criterion_counting() -> Outcome
        {
            std::uint64_t draws = 0, certified = 0, violations = 0;
            for (std::uint64_t k = 0 ; k < 1000 && certified < 100 ; ++k) {
                ++draws;
                Rng rng(8080, k);
                std::size_t n = rng.between(3, 4);
                Rational p(rng.between(5, 45), 100);
                Rational eps = pow(p / 4, n) * Rational(rng.between(1, 4), 4);
                vector<VertexSet> parts;
                vector<std::uint64_t> sizes;
                Vertex next = 0;
                for (std::size_t i = 0 ; i < n ; ++i) {
                    auto s = rng.between(1, 14);
                    VertexSet part;
                    for (std::size_t a = 0 ; a < s ; ++a)
                        part.push_back(next++);
                    parts.push_back(part);
                    sizes.push_back(s);
                }
                MultipartiteInstance f(parts);
                vector<vector<Rational>> p_pairs(n, vector<Rational>(n, Rational(0)));
                bool broken = rng.below(4) == 0;
                for (std::size_t i = 0 ; i < n ; ++i)
                    for (std::size_t j = i + 1 ; j < n ; ++j) {
                        p_pairs[i][j] = 1 - eps * Rational(rng.between(1, 99), 100);
                        for (std::size_t a = 0 ; a < sizes[i] ; ++a)
                            for (std::size_t b = 0 ; b < sizes[j] ; ++b)
                                if (! (broken && i == 0 && j == 1 && a == 0 && b == 0))
                                    f.add_edge(i, a, j, b);
                    }

                bool all_regular = true;
                for (std::size_t i = 0 ; i < n && all_regular ; ++i)
                    for (std::size_t j = i + 1 ; j < n && all_regular ; ++j) {
                        VertexSet x, y;
                        for (std::size_t a = 0 ; a < sizes[i] ; ++a)
                            x.push_back(Vertex(a));
                        for (std::size_t b = 0 ; b < sizes[j] ; ++b)
                            y.push_back(Vertex(sizes[i] + b));
                        auto r = pair_regularity_check(f.pair_graph(i, j), x, y, p_pairs[i][j], eps, CheckMode::exact, 0, 0);
                        all_regular = r.certified();
                    }
                if (! all_regular)
                    continue;
                ++certified;
                auto [lo, hi] = counting_bounds(p, p_pairs, sizes, eps);
                Rational count(count_spanning_cliques(f));
                violations += ! (lo <= count && count <= hi);
            }
            return {violations == 0 && certified == 100, "draws=" + std::to_string(draws) + " certified="
                + std::to_string(certified) + " violations=" + std::to_string(violations)};
        }

        auto criterion_codegree() -> Outcome
        {
            std::uint64_t attempts = 0, certified = 0, violations = 0;
            for (std::uint64_t k = 0 ; k < 400 ; ++k) {
                Rng rng(5150, k);
                Rational alpha(rng.between(4, 40), 100);
                Rational eps = alpha / 5 * Rational(rng.between(50, 99), 100);
                std::size_t a = rng.between(1, 14), b = rng.between(1, 14), c = rng.between(1, 14);
                VertexSet x, y, z;
                for (std::size_t i = 0 ; i < a ; ++i)
                    x.push_back(Vertex(i));
                for (std::size_t i = 0 ; i < b ; ++i)
                    y.push_back(Vertex(a + i));
                for (std::size_t i = 0 ; i < c ; ++i)
                    z.push_back(Vertex(a + b + i));
                Graph f(Vertex(a + b + c));
                auto percent = std::uint64_t(floor(alpha * 100).get_ui());
                for (auto u : z) {
                    for (auto v : x)
                        if (rng.below(100) < percent)
                            f.add_edge(u, v);
                    for (auto v : y)
                        if (rng.below(100) < percent)
                            f.add_edge(u, v);
                }
                ++attempts;
                auto rx = pair_regularity_check(f, x, z, alpha, eps, CheckMode::exact, 0, 0);
                auto ry = pair_regularity_check(f, y, z, alpha, eps, CheckMode::exact, 0, 0);
                if (! rx.certified() || ! ry.certified())
                    continue;
                ++certified;
                auto count = codegree_outliers(f, x, y, z, alpha, eps);
                violations += Rational(count) > 4 * eps / alpha * Rational(a * b);
            }
            string detail = "attempts=" + std::to_string(attempts) + " certified=" + std::to_string(certified)
                + " violations=" + std::to_string(violations);
            if (certified == 0)
                detail += " [vacuous: no pair of size <= 14 is certifiable at these parameters]";
            return {violations == 0, detail};
        }

        auto criterion_pipeline() -> Outcome
        {
            auto start = Clock::now();
            auto toy = make_toy_instance(31337);
            PipelineOptions o;
            o.parts = toy.parts;
            o.interval = toy.interval;
            o.seed = 1;
            auto r = run_pipeline(toy.host, toy.pattern, toy.coloring, o);
            double elapsed = seconds_since(start);
            bool ok = r.hypotheses_hold && r.copy && r.copy_verified && r.copy_colour.has_value()
                && ! o.red_colors.count(*r.copy_colour) && verify_copy(toy.host, toy.pattern, *r.copy) && elapsed < 60.0
                && r.alpha == Rational(3, 10);
            return {ok, string("alpha=") + to_string(r.alpha) + " hypotheses=" + (r.hypotheses_hold ? "yes" : "no")
                + " copy=" + (r.copy ? "found" : "none") + " verified=" + (r.copy_verified ? "yes" : "no")
                + " colour=" + (r.copy_colour ? std::to_string(*r.copy_colour) : string("mixed"))
                + " regular_certified=" + (r.regularity_certified ? "yes" : "no") + " seconds=" + fixed(elapsed)};
        }

        auto criterion_bounds() -> Outcome
        {
            auto b12 = bound_two_color(4).exact(), b14 = bound_multicolor(4, 2).exact();
            auto b15 = bound_degenerate(4, 1).exact(), b48 = bound_weak(4).exact();
            bool ok = b12 && *b12 == 6400 && b14 && *b14 == 32768 && b15 && *b15 == 1200 && b48 && *b48 == 46080;
            auto [alpha0, gamma0] = sparse_schedule(4, 1, Rational(1, 100), 0);
            ok = ok && alpha0 == 1 && gamma0 == 1;
            unsigned recursions = 0;
            for (unsigned long n = 2 ; n <= 8 ; ++n)
                for (unsigned k = 1 ; k <= 4 ; ++k)
                    for (unsigned h = 1 ; h <= 6 ; ++h) {
                        ok = ok && multicolor_recursion_holds(n, k, h);
                        ++recursions;
                    }
            auto show = [] (const std::optional<Rational> & v) { return v ? to_string(*v) : string("inexact"); };
            return {ok, "two_color=" + show(b12) + " multicolor=" + show(b14) + " degenerate=" + show(b15) + " weak=" + show(b48)
                + " base=(" + to_string(alpha0) + "," + to_string(gamma0) + ") recursions=" + std::to_string(recursions)};
        }

        auto criterion_regularity() -> Outcome
        {
            auto start = Clock::now();
            auto host = generate_random_host(4096, 2718);
            auto r = check_host_regularity(host, Rational(1, 2), 1000, 2718, 1);
            auto labeled = generate_labeled_host(200, 4, 1618);
            auto l = sample_label_densities(labeled, 25, 1000, 1618);
            bool ok = r.samples == 1000 && r.violations == 0 && l.samples == 1000 && l.minimum >= Rational(1, 8);
            return {ok, "host_samples=" + std::to_string(r.samples) + " host_violations=" + std::to_string(r.violations)
                + " worst_deviation=" + fixed(r.worst_deviation.get_d(), 4) + " label_min=" + to_string(l.minimum)
                + " seconds=" + fixed(seconds_since(start))};
        }

        auto criterion_determinism(const string & fixtures) -> Outcome
        {
            namespace fs = std::filesystem;
            auto dir = fs::path(fixtures).parent_path();
            std::uint64_t cases = 0, differing = 0;
            if (fs::is_directory(dir)) {
                vector<fs::path> files;
                for (auto & entry : fs::directory_iterator(dir))
                    if (entry.path().extension() == ".args")
                        files.push_back(entry.path());
                std::sort(files.begin(), files.end());
                for (auto & file : files) {
                    vector<string> args;
                    std::ifstream f(file);
                    for (string line ; std::getline(f, line) ; ) {
                        if (line.empty())
                            continue;
                        for (size_t at ; (at = line.find("{fixtures}")) != string::npos ; )
                            line.replace(at, 10, fixtures);
                        args.push_back(line);
                    }
                    if (! args.empty() && args.front() == "selftest")
                        continue;
                    ++cases;
                    differing += golden_output(args) != golden_output(args);
                }
            }

            auto triangle = lex_complete(3);
            vector<EdgeOrderedGraph> targets{triangle, triangle};
            auto host = lex_complete(6);
            bool workers_ok = true;
            std::optional<ArrowVerdict> first;
            for (unsigned w : {1u, 2u, 8u}) {
                ArrowOptions o;
                o.mode = ArrowMode::enumerate;
                o.symmetry_reduction = false;
                o.workers = w;
                auto v = arrows(host, targets, o);
                if (! first)
                    first = v;
                else
                    workers_ok = workers_ok && v.status == first->status && v.work == first->work
                        && v.certificate == first->certificate;
            }
            auto k5 = lex_complete(5);
            std::optional<ArrowVerdict> k5_first;
            for (unsigned w : {1u, 2u, 8u}) {
                ArrowOptions o;
                o.mode = ArrowMode::enumerate;
                o.symmetry_reduction = false;
                o.workers = w;
                auto v = arrows(k5, targets, o);
                if (! k5_first)
                    k5_first = v;
                else
                    workers_ok = workers_ok && v.status == k5_first->status && v.work == k5_first->work
                        && v.certificate == k5_first->certificate;
            }

            return {cases > 0 && differing == 0 && workers_ok, "subcommand_cases=" + std::to_string(cases) + " differing="
                + std::to_string(differing) + " workers_1_2_8=" + (workers_ok ? "identical" : "differ")};
        }
    }

    auto acceptance_criteria() -> const vector<Criterion> &
    {
        static const vector<Criterion> criteria{
            {1, "arrows", "triangle Ramsey number and K6/K5 arrowing"},
            {2, "core", "equivalence-class counts"},
            {3, "partition", "equitable partition sweep"},
            {4, "filter", "degree filter"},
            {5, "greedy", "greedy embed-or-witness dichotomy"},
            {6, "counting", "counting sandwich"},
            {7, "codegree", "codegree outlier bound"},
            {8, "pipeline", "toy pipeline end to end"},
            {9, "bounds", "bound calculators"},
            {10, "regularity", "regularity statistics"},
            {11, "determinism", "determinism and worker independence"}
        };
        return criteria;
    }

    auto run_acceptance(const string & filter, const string & fixtures, std::ostream & out) -> int
    {
        int failures = 0;
        for (auto & c : acceptance_criteria()) {
            if (! filter.empty() && filter != c.tag && filter != std::to_string(c.number))
                continue;
            Outcome o;
            try {
                switch (c.number) {
                    case 1: o = criterion_ramsey(); break;
                    case 2: o = criterion_classes(); break;
                    case 3: o = criterion_partition(); break;
                    case 4: o = criterion_filter(); break;
                    case 5: o = criterion_greedy(); break;
                    case 6: o = criterion_counting(); break;
                    case 7: o = criterion_codegree(); break;
                    case 8: o = criterion_pipeline(); break;
                    case 9: o = criterion_bounds(); break;
                    case 10: o = criterion_regularity(); break;
                    case 11: o = criterion_determinism(fixtures); break;
                }
            }
            catch (const std::exception & e) {
                o = Outcome{false, string("exception: ") + e.what()};
            }
            out << (o.pass ? "PASS" : "FAIL") << " " << c.number << " " << c.tag << ": " << c.title << " (" << o.detail << ")\n";
            failures += ! o.pass;
        }
        return failures;
    }
}
