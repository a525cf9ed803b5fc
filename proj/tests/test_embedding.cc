/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include "oracles.hh"

#include <eorders/arrows.hh>
#include <eorders/bounds.hh>
#include <eorders/containment.hh>
#include <eorders/embedding.hh>
#include <eorders/regularity.hh>

#include <doctest.h>

using namespace eorders;
using std::vector;

namespace
{
    auto range(Vertex lo, Vertex hi) -> VertexSet
    {
        VertexSet s;
        for (Vertex v = lo ; v < hi ; ++v)
            s.push_back(v);
        return s;
    }

    auto sets_of(const SparseOutcome & o) -> const SparseWitness &
    {
        REQUIRE(std::holds_alternative<SparseWitness>(o));
        return std::get<SparseWitness>(o);
    }

    // Bipartite between even and odd vertices, so triangle-free.
    auto bipartite_red(Vertex n, unsigned percent, std::uint64_t seed) -> RankedAdjacency
    {
        auto host = generate_random_host(n, seed);
        Rng rng(seed, 1);
        vector<Edge> kept;
        for (auto & e : host.edges())
            if ((e.u + e.v) % 2 == 1 && rng.below(100) < percent)
                kept.push_back(e);
        return RankedAdjacency(n, kept);
    }

    auto brute_cliques(const MultipartiteInstance & f) -> std::uint64_t
    {
        auto & p = f.parts();
        std::uint64_t count = 0;
        for (std::size_t a = 0 ; a < p[0].size() ; ++a)
            for (std::size_t b = 0 ; b < p[1].size() ; ++b)
                for (std::size_t c = 0 ; c < p[2].size() ; ++c)
                    count += f.adjacent(0, a, 1, b) && f.adjacent(0, a, 2, c) && f.adjacent(1, b, 2, c);
        return count;
    }
}

TEST_SUITE("embedding")
{
    TEST_CASE("equitable partition examples")
    {
        auto k3 = lex_complete(3);
        auto a = equitable_interval_partition(Interval{1, 10}, k3);
        REQUIRE(a.blocks.size() == 3);
        CHECK(a.blocks[0] == Interval{1, 3});
        CHECK(a.blocks[1] == Interval{4, 6});
        CHECK(a.blocks[2] == Interval{7, 10});
        auto b = equitable_interval_partition(Interval{1, 6}, k3);
        CHECK(b.blocks[0] == Interval{1, 2});
        CHECK(b.blocks[1] == Interval{3, 4});
        CHECK(b.blocks[2] == Interval{5, 6});
        CHECK(equitable_interval_partition(Interval{5, 9}, lex_complete(2)).blocks[0] == Interval{5, 9});
        CHECK_THROWS_AS(equitable_interval_partition(Interval{1, 2}, k3), PreconditionViolation);

        EdgeOrderedGraph shuffled(3, {Edge{1, 2, 1}, Edge{0, 2, 2}, Edge{0, 1, 3}});
        auto c = equitable_interval_partition(Interval{1, 9}, shuffled);
        CHECK(c.block(1, 2) == Interval{1, 3});
        CHECK(c.block(0, 1) == Interval{7, 9});
    }

    TEST_CASE("equitable partition sweep")
    {
        for (std::uint64_t length = 1 ; length <= 400 ; ++length)
            for (std::uint64_t m = 1 ; m <= length ; ++m) {
                auto blocks = equitable_blocks(Interval{1, Rank(length)}, m);
                REQUIRE(blocks.size() == m);
                Rank next = 1;
                for (std::size_t j = 0 ; j < m ; ++j) {
                    // floor(length j / m) - floor(length (j - 1) / m)
                    std::uint64_t expected = length * (j + 1) / m - length * j / m;
                    REQUIRE(blocks[j].lo == next);
                    REQUIRE(blocks[j].length() == expected);
                    REQUIRE(blocks[j].length() >= length / m);
                    next = blocks[j].hi + 1;
                }
                REQUIRE(next == length + 1);
            }
    }

    TEST_CASE("degree filter examples")
    {
        Graph none(4);
        CHECK(degree_filter(none, VertexSet{0, 1}, VertexSet{2, 3}, Rational(2), Rational(1, 10)) == VertexSet{0, 1});

        Graph f(4);
        f.add_edge(0, 2);
        f.add_edge(0, 3);
        CHECK(degree_filter(f, VertexSet{0, 1}, VertexSet{2, 3}, Rational(2), Rational(1, 2)) == VertexSet{1});

        Graph uniform(6);
        uniform.add_edge(0, 2);
        uniform.add_edge(1, 3);
        CHECK(degree_filter(uniform, VertexSet{0, 1}, VertexSet{2, 3, 4, 5}, Rational(2), Rational(1, 4))
                == VertexSet{0, 1});

        CHECK_THROWS_AS(degree_filter(f, VertexSet{0, 1}, VertexSet{2, 3}, Rational(2), Rational(1, 4)),
                PreconditionViolation);
        CHECK_THROWS_AS(degree_filter(none, VertexSet{0, 1}, VertexSet{2, 3}, Rational(2), Rational(0)),
                PreconditionViolation);
        CHECK_THROWS_AS(degree_filter(none, VertexSet{0, 1}, VertexSet{2, 3}, Rational(1, 2), Rational(1, 4)),
                PreconditionViolation);
    }

    TEST_CASE("greedy embedding examples")
    {
        auto edge = lex_complete(2);
        EdgeOrderedGraph g(2, {Edge{0, 1, 5}});
        auto o = greedy_embed(RankedAdjacency(g.vertex_count(), g.edges()), edge, Interval{1, 9}, {VertexSet{0},
                VertexSet{1}}, Rational(1, 4));
        REQUIRE(o.embedded());
        CHECK(o.embedding() == EmbeddingMap{0, 1});

        RankedAdjacency empty(9, {});
        auto w = greedy_embed(empty, lex_complete(3), Interval{1, 9}, {range(0, 3), range(3, 6), range(6, 9)},
                Rational(1, 4));
        REQUIRE(! w.embedded());
        CHECK(w.witness().max_density() == 0);
        CHECK(! verify_witness(empty, w.witness(), Rational(1, 4)));

        CHECK_THROWS_AS(greedy_embed(empty, lex_complete(3), Interval{1, 8}, {range(0, 3), range(3, 6), range(6, 9)},
                    Rational(1, 4)), PreconditionViolation);
        CHECK_THROWS_AS(greedy_embed(empty, lex_complete(3), Interval{1, 9}, {range(0, 3), range(3, 6), range(6, 9)},
                    Rational(1, 3)), PreconditionViolation);
    }

    TEST_CASE("greedy dichotomy with exhaustive oracle on lex K3")
    {
        auto k3 = lex_complete(3);
        int witnesses = 0;
        for (std::uint64_t s = 0 ; s < 150 ; ++s) {
            Rng rng(606, s);
            Vertex n = Vertex(rng.between(9, 15));
            auto host = generate_random_host(n, s);
            auto keep = rng.between(10, 90);
            vector<Edge> kept;
            for (auto & e : host.edges())
                if (rng.below(100) < keep)
                    kept.push_back(e);
            RankedAdjacency g1(n, kept);
            auto t = oracle::rank_table(host);
            Interval interval{1, Rank(host.edge_count())};
            Vertex per = n / 3;
            vector<VertexSet> parts{range(0, per), range(per, 2 * per), range(2 * per, 3 * per)};
            auto o = greedy_embed(g1, k3, interval, parts, Rational(1, 4));
            auto & jp = o.partition;

            bool exists = false;
            for (auto a : parts[0])
                for (auto b : parts[1])
                    for (auto c : parts[2]) {
                        auto ab = g1.rank(a, b), ac = g1.rank(a, c), bc = g1.rank(b, c);
                        exists = exists || (ab && ac && bc && jp.block(0, 1).contains(ab) && jp.block(0, 2).contains(ac)
                                && jp.block(1, 2).contains(bc));
                    }
            if (o.embedded())
                CHECK(verify_interval_embedding(g1, jp, parts, o.embedding()));
            else {
                ++witnesses;
                CHECK(! verify_witness(g1, o.witness(), Rational(1, 4)));
                CHECK(o.witness().densities[0][1] == g1.density(o.witness().sets[0], o.witness().sets[1], o.witness().interval));
            }
            if (! exists)
                CHECK(! o.embedded());
        }
        CHECK(witnesses > 0);
    }

    TEST_CASE("greedy trace keeps claim invariants")
    {
        auto k4 = lex_complete(4);
        auto host = generate_random_host(24, 9);
        RankedAdjacency g1(host);
        vector<VertexSet> parts{range(0, 6), range(6, 12), range(12, 18), range(18, 24)};
        Rational delta1(1, 5);
        auto o = greedy_embed(g1, k4, Interval{1, Rank(host.edge_count())}, parts, delta1, true);
        REQUIRE(! o.trace.empty());
        for (auto & state : o.trace)
            for (std::size_t i = 0 ; i < state.candidates.size() ; ++i)
                if (! state.candidates[i].empty())
                    CHECK(Rational(state.candidates[i].size()) >= pow(delta1, state.back_degree[i] + 1) * 24);
        if (o.embedded())
            CHECK(verify_interval_embedding(g1, o.partition, parts, o.embedding()));
    }

    TEST_CASE("amplification")
    {
        RankedAdjacency empty(40, {});
        auto edge = lex_complete(2);
        auto one = amplify_sparse(empty, Interval{1, 200}, range(0, 40), greedy_oracle(empty, edge, Rational(1, 16)),
                trivial_oracle(), 1, Rational(1, 4));
        auto & w1 = sets_of(one);
        CHECK(w1.sets.size() == 2);
        CHECK(w1.max_density() == 0);

        auto g1 = bipartite_red(120, 30, 12);
        auto k3 = lex_complete(3);
        Rational delta(1, 4);
        auto two = amplify_sparse(g1, Interval{1, 7140}, range(0, 120), greedy_oracle(g1, k3, delta / 8),
                greedy_oracle(g1, k3, delta), 2, delta);
        auto & w2 = sets_of(two);
        CHECK(w2.sets.size() == 4);
        CHECK(w2.max_density() < delta);
        for (std::size_t i = 0 ; i < 4 ; ++i)
            for (std::size_t j = i + 1 ; j < 4 ; ++j) {
                CHECK(disjoint(w2.sets[i], w2.sets[j]));
                CHECK(g1.density(w2.sets[i], w2.sets[j], w2.interval) == w2.densities[i][j]);
                CHECK(g1.density(w2.sets[i], w2.sets[j], w2.interval) < delta);
            }
    }

    TEST_CASE("iterated sparseness")
    {
        RankedAdjacency small(12, {});
        auto edge = lex_complete(2);
        auto zero = sets_of(iterate_sparse(small, Interval{1, 30}, range(0, 12), 0, Rational(1, 4), edge));
        CHECK(zero.interval == Interval{1, 30});
        CHECK(zero.sets == vector<VertexSet>{range(0, 12)});

        RankedAdjacency empty(400, {});
        Rational delta2(49, 100);
        auto h1 = sets_of(iterate_sparse(empty, Interval{1, 100}, range(0, 400), 1, delta2, edge));
        auto direct = sets_of(amplify_sparse(empty, Interval{1, 100}, range(0, 400),
                    greedy_oracle(empty, edge, delta2 / 4), trivial_oracle(), 1, delta2));
        CHECK(h1.interval == direct.interval);
        CHECK(h1.sets == direct.sets);

        CHECK_THROWS_AS(iterate_sparse(empty, Interval{1, 100}, range(0, 400), 2, delta2, edge), InfeasibleSize);

        auto [alpha2, gamma2] = sparse_schedule(2, 1, delta2, 2);
        Vertex big = Vertex(ceil(1 / gamma2).get_ui());
        RankedAdjacency huge(big, {});
        vector<Vertex> all(big);
        for (Vertex v = 0 ; v < big ; ++v)
            all[v] = v;
        Rank length = Rank(ceil(1 / alpha2).get_ui() * 4);
        auto h2 = sets_of(iterate_sparse(huge, Interval{1, length}, all, 2, delta2, edge));
        CHECK(h2.sets.size() == 4);
        CHECK(h2.max_density() == 0);
    }

    TEST_CASE("equalised subsets")
    {
        RankedAdjacency empty(30, {});
        auto r = equalize_subsets(empty, Interval{1, 10}, {range(0, 10), range(10, 20), range(20, 30)}, 5,
                Rational(1, 10), 3, 1);
        CHECK(r.attempts == 1);
        for (auto & s : r.sets)
            CHECK(s.size() == 5);

        auto host = generate_random_host(40, 5);
        RankedAdjacency full(host);
        Interval all{1, Rank(host.edge_count())};
        vector<VertexSet> two{range(0, 20), range(20, 40)};
        CHECK(equalize_subsets(full, all, two, 4, Rational(1, 2), 9, 1).attempts == 1);

        auto g1 = bipartite_red(60, 20, 21);
        vector<VertexSet> three{range(0, 20), range(20, 40), range(40, 60)};
        Rational top = 0;
        for (std::size_t i = 0 ; i < 3 ; ++i)
            for (std::size_t j = i + 1 ; j < 3 ; ++j)
                top = std::max(top, g1.density(three[i], three[j], all));
        Rational delta = top + Rational(1, 1000);
        int ok = 0;
        for (std::uint64_t s = 0 ; s < 1000 ; ++s) {
            try {
                equalize_subsets(g1, all, three, 6, delta, s, 1);
                ++ok;
            }
            catch (const BudgetExhausted &) {
            }
        }
        CHECK(Rational(ok, 1000) >= 1 - Rational(3, 9));
    }

    TEST_CASE("product graph")
    {
        auto host = generate_random_host(8, 3);
        auto edge = lex_complete(2);
        Interval all{1, Rank(host.edge_count())};
        auto jp = equitable_interval_partition(all, edge);
        auto f = build_product_graph(host, nullptr, {range(0, 4), range(4, 8)}, jp, {});
        CHECK(f.edge_count(0, 1) == 16);
        CHECK(f.red_count(0, 1) == 0);
        CHECK(f.density(0, 1) == 1);

        auto t = oracle::rank_table(host);
        Rank top = 0;
        for (Vertex a = 0 ; a < 2 ; ++a)
            for (Vertex b = 2 ; b < 4 ; ++b)
                top = std::max(top, t[a][b]);
        auto low = equitable_interval_partition(Interval{top + 1 <= all.hi ? top + 1 : all.hi, all.hi}, edge);
        if (top < all.hi) {
            auto g = build_product_graph(host, nullptr, {range(0, 2), range(2, 4)}, low, {});
            CHECK(g.density(0, 1) == 0);
        }
    }

    TEST_CASE("spanning cliques")
    {
        vector<VertexSet> parts{range(0, 3), range(3, 7), range(7, 9)};
        MultipartiteInstance complete(parts);
        for (std::size_t i = 0 ; i < 3 ; ++i)
            for (std::size_t j = i + 1 ; j < 3 ; ++j)
                for (std::size_t a = 0 ; a < parts[i].size() ; ++a)
                    for (std::size_t b = 0 ; b < parts[j].size() ; ++b)
                        complete.add_edge(i, a, j, b);
        CHECK(count_spanning_cliques(complete) == 24);
        CHECK(find_red_free_clique(complete));

        MultipartiteInstance gap(parts);
        for (std::size_t a = 0 ; a < 3 ; ++a)
            for (std::size_t b = 0 ; b < 4 ; ++b)
                gap.add_edge(0, a, 1, b);
        CHECK(count_spanning_cliques(gap) == 0);

        MultipartiteInstance red(parts);
        for (std::size_t i = 0 ; i < 3 ; ++i)
            for (std::size_t j = i + 1 ; j < 3 ; ++j)
                for (std::size_t a = 0 ; a < parts[i].size() ; ++a)
                    for (std::size_t b = 0 ; b < parts[j].size() ; ++b)
                        red.add_edge(i, a, j, b, true);
        CHECK(! find_red_free_clique(red));

        for (std::uint64_t s = 0 ; s < 50 ; ++s) {
            Rng rng(707, s);
            vector<VertexSet> six{range(0, 6), range(6, 12), range(12, 18)};
            MultipartiteInstance f(six);
            for (std::size_t i = 0 ; i < 3 ; ++i)
                for (std::size_t j = i + 1 ; j < 3 ; ++j)
                    for (std::size_t a = 0 ; a < 6 ; ++a)
                        for (std::size_t b = 0 ; b < 6 ; ++b)
                            if (rng.below(2))
                                f.add_edge(i, a, j, b, rng.below(5) == 0);
            auto expected = brute_cliques(f);
            CHECK(count_spanning_cliques(f) == expected);
            CHECK(count_spanning_cliques(f, {}, 3) == expected);
            auto census = clique_census(f, Rational(1, 4), Rational(1, 100));
            CHECK(census.total == expected);
            CHECK(census.red_free + census.through_red_normal + census.through_red_non_normal >= census.total);
        }
        CHECK_THROWS_AS(count_spanning_cliques(complete, SearchBudget{2, 0.0}), BudgetExhausted);
    }

    TEST_CASE("census preconditions")
    {
        vector<VertexSet> parts{range(0, 2), range(2, 4), range(4, 6)};
        MultipartiteInstance f(parts);
        for (std::size_t i = 0 ; i < 3 ; ++i)
            for (std::size_t j = i + 1 ; j < 3 ; ++j)
                for (std::size_t a = 0 ; a < 2 ; ++a)
                    for (std::size_t b = 0 ; b < 2 ; ++b)
                        f.add_edge(i, a, j, b);
        auto c = clique_census(f, Rational(1, 4), Rational(1, 100));
        CHECK(c.through_red_normal == 0);
        CHECK(c.red_free == c.total);
        CHECK_THROWS_AS(clique_census(f, Rational(1), Rational(1, 100)), PreconditionViolation);
    }

    TEST_CASE("counting bounds")
    {
        auto one = counting_bounds(Rational(1, 4), {{Rational(0)}}, {7}, Rational(1, 100));
        CHECK(one.first == 7);
        CHECK(one.second == 7);

        Rational p(2, 5);
        for (std::size_t n = 2 ; n <= 4 ; ++n) {
            vector<vector<Rational>> pp(n, vector<Rational>(n, Rational(1, 2)));
            vector<std::uint64_t> sizes(n, 3);
            auto [lo, hi] = counting_bounds(p, pp, sizes, pow(p / 4, n));
            Rational base = pow(Rational(3), n) * pow(Rational(1, 2), n * (n - 1) / 2);
            Rational spread = 4 * Rational(long(n)) * pow(Rational(1, 4), n);
            CHECK(lo == (1 - spread) * base);
            CHECK(hi == (1 + spread) * base);
        }
        CHECK_THROWS_AS(counting_bounds(Rational(1, 2), {{0, 1}, {0, 0}}, {2, 2}, Rational(1, 1000)), PreconditionViolation);
    }

    TEST_CASE("pull-back of red-free cliques")
    {
        for (std::uint64_t s = 0 ; s < 30 ; ++s) {
            auto host = generate_random_host(15, s);
            auto k3 = lex_complete(3);
            Interval all{1, Rank(host.edge_count())};
            auto jp = equitable_interval_partition(all, k3);
            Coloring c;
            c.q = 2;
            Rng rng(808, s);
            for (std::size_t r = 0 ; r < host.edge_count() ; ++r)
                c.colors.push_back(std::uint8_t(1 + (rng.below(10) == 0)));
            vector<VertexSet> parts{range(0, 5), range(5, 10), range(10, 15)};
            auto f = build_product_graph(host, &c, parts, jp, {2});
            auto clique = find_red_free_clique(f);
            if (! clique)
                continue;
            CHECK(verify_pull_back(host, &c, jp, {2}, *clique));
            CHECK(verify_copy(host, k3, *clique));
        }
    }
}
