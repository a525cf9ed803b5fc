/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include "oracles.hh"

#include <eorders/core.hh>
#include <eorders/io.hh>
#include <eorders/rational.hh>
#include <eorders/rng.hh>

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace eorders;
using std::vector;

namespace
{
    auto triangle(Rank ab, Rank bc, Rank ca) -> EdgeOrderedGraph
    {
        return EdgeOrderedGraph(3, {Edge{0, 1, ab}, Edge{1, 2, bc}, Edge{0, 2, ca}});
    }

    // All vertex bijections, edge ranks must agree exactly.
    auto brute_equivalent(const EdgeOrderedGraph & a, const EdgeOrderedGraph & b) -> bool
    {
        if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count())
            return false;
        auto tb = oracle::rank_table(b);
        vector<Vertex> perm(a.vertex_count());
        std::iota(perm.begin(), perm.end(), 0u);
        do {
            bool ok = true;
            for (auto & e : a.edges())
                ok = ok && tb[perm[e.u]][perm[e.v]] == e.label;
            if (ok)
                return true;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return false;
    }

    auto brute_degeneracy(const Graph & g) -> unsigned
    {
        vector<Vertex> perm(g.vertex_count());
        std::iota(perm.begin(), perm.end(), 0u);
        unsigned best = g.vertex_count();
        do
            best = std::min(best, back_degree(g, perm));
        while (std::next_permutation(perm.begin(), perm.end()));
        return best;
    }
}

TEST_SUITE("core")
{
    TEST_CASE("validate")
    {
        CHECK(! validate(triangle(1, 2, 3)));
        auto repeated = validate(triangle(1, 1, 3));
        REQUIRE(repeated);
        CHECK(repeated->find("labels not a permutation") != std::string::npos);
        auto loop = validate(EdgeOrderedGraph(2, {Edge{0, 0, 1}}));
        REQUIRE(loop);
        CHECK(loop->find("self-loop") != std::string::npos);
    }

    TEST_CASE("equivalence examples")
    {
        CHECK(are_equivalent(triangle(1, 2, 3), triangle(2, 3, 1)));
        CHECK(canonical_form(triangle(1, 2, 3)) == canonical_form(triangle(2, 3, 1)));
        EdgeOrderedGraph star_a(4, {Edge{0, 1, 1}, Edge{0, 2, 2}, Edge{0, 3, 3}});
        EdgeOrderedGraph star_b(4, {Edge{0, 1, 3}, Edge{0, 2, 1}, Edge{0, 3, 2}});
        CHECK(are_equivalent(star_a, star_b));
        EdgeOrderedGraph path_a(3, {Edge{0, 1, 1}, Edge{1, 2, 2}});
        EdgeOrderedGraph path_b(3, {Edge{0, 1, 2}, Edge{1, 2, 1}});
        CHECK(are_equivalent(path_a, path_b));
        EdgeOrderedGraph empty(4, {});
        CHECK(canonical_form(empty) == empty);
    }

    TEST_CASE("canonical form agrees with brute-force bijections")
    {
        Rng rng(101);
        for (int k = 0 ; k < 300 ; ++k) {
            Vertex n = Vertex(rng.between(2, 5));
            auto a = oracle::random_ordered(rng, n, 60);
            auto b = oracle::random_ordered(rng, n, 60);
            if (rng.below(3) == 0) {
                vector<Vertex> perm(n);
                std::iota(perm.begin(), perm.end(), 0u);
                rng.shuffle(std::span(perm));
                vector<Edge> moved;
                for (auto & e : a.edges())
                    moved.push_back(Edge{perm[e.u], perm[e.v], e.label});
                b = EdgeOrderedGraph(n, moved);
            }
            bool truth = brute_equivalent(a, b);
            CHECK(are_equivalent(a, b) == truth);
            CHECK((canonical_form(a) == canonical_form(b)) == truth);
            CHECK(canonical_form(canonical_form(a)) == canonical_form(a));
            CHECK(are_equivalent(a, a));
        }
    }

    TEST_CASE("class counts match the orbit oracle")
    {
        auto o3 = oracle::orbit_count(3), o4 = oracle::orbit_count(4);
        CHECK(o3 == 1);
        CHECK(o4 == 30);
        CHECK(count_equivalence_classes(2) == 1);
        CHECK(count_equivalence_classes(3) == o3);
        CHECK(count_equivalence_classes(4) == o4);
        CHECK_THROWS_AS(count_equivalence_classes(6), InfeasibleSize);
        CHECK_THROWS_AS(count_equivalence_classes(1), PreconditionViolation);
    }

    TEST_CASE("lex order")
    {
        VertexOrderedGraph k4{4, {{2, 3}, {0, 1}, {1, 3}, {0, 2}, {1, 2}, {0, 3}}};
        auto g = lex_order(k4);
        auto t = oracle::rank_table(g);
        CHECK(t[0][1] == 1);
        CHECK(t[0][2] == 2);
        CHECK(t[0][3] == 3);
        CHECK(t[1][2] == 4);
        CHECK(t[1][3] == 5);
        CHECK(t[2][3] == 6);
    }

    TEST_CASE("degeneracy is optimal on small graphs")
    {
        Rng rng(202);
        for (int k = 0 ; k < 120 ; ++k) {
            Vertex n = Vertex(rng.between(1, 7));
            auto g = underlying_graph(oracle::random_ordered(rng, n, unsigned(rng.between(0, 100))));
            auto d = degeneracy_order(g);
            CHECK(back_degree(g, d.order) <= d.degeneracy);
            CHECK(d.degeneracy == brute_degeneracy(g));
        }
        CHECK(degeneracy_order(EdgeOrderedGraph(5, {})).degeneracy == 0);
        CHECK(degeneracy_order(lex_order(VertexOrderedGraph{5, {{0, 1}, {0, 2}, {2, 3}, {2, 4}}})).degeneracy == 1);
    }

    TEST_CASE("restriction and densities")
    {
        auto k3 = lex_order(VertexOrderedGraph{3, {{0, 1}, {0, 2}, {1, 2}}});
        auto g = restrict(k3, Interval{1, 2});
        CHECK(g.adjacent(0, 1));
        CHECK(g.adjacent(0, 2));
        CHECK(! g.adjacent(1, 2));
        CHECK(density(g, VertexSet{0}, VertexSet{1}) == 1);
        CHECK(interval_fraction(Interval{1, 3}, 3) == 1);
        CHECK_THROWS_AS(restrict(k3, Interval{3, 2}), PreconditionViolation);
        CHECK_THROWS_AS(restrict(k3, Interval{1, 4}), PreconditionViolation);

        RankedAdjacency adj(k3);
        CHECK(adj.density(VertexSet{0}, VertexSet{1, 2}, Interval{1, 2}) == 1);
        CHECK(adj.density(VertexSet{1}, VertexSet{2}, Interval{1, 2}) == 0);
    }

    TEST_CASE("text formats")
    {
        auto text = std::string("eog 3 3\n1 2 1\n1 3 2\n2 3 3\n");
        auto g = decode_eog(text);
        CHECK(g == lex_order(VertexOrderedGraph{3, {{0, 1}, {0, 2}, {1, 2}}}));
        CHECK(encode(g) == text);
        CHECK_THROWS_AS(decode_eog("eog 2 1\n1 2 0\n"), ParseError);
        try {
            decode_eog("eog 3 2\n1 2 1\n2 3 x\n");
            FAIL("no parse error");
        }
        catch (const ParseError & e) {
            CHECK(e.line() == 3);
        }
        CHECK(decode_eog("# comment\neog 2 1\n1 2 40\n") == EdgeOrderedGraph(2, {Edge{0, 1, 1}}));

        auto c = decode_coloring("col 3 2\n1 1\n2 2\n3 1\n");
        CHECK(encode(c) == "col 3 2\n1 1\n2 2\n3 1\n");
        auto l = decode_elg("elg 3 2 4\n1 2 4\n2 3 1\n");
        CHECK(decode_elg(encode(l)) == l);
        auto v = decode_vog("vog 3 1\n1 3\n");
        CHECK(decode_vog(encode(v)) == v);
        auto parts = decode_parts("1 2\n3\n", 3);
        CHECK(encode_parts(parts) == "1 2\n3\n");
        CHECK_THROWS_AS(decode_parts("1 2\n2\n", 3), ParseError);
    }

    TEST_CASE("rationals and thresholds")
    {
        CHECK(parse_rational("3/6") == Rational(1, 2));
        CHECK(parse_rational("0.25") == Rational(1, 4));
        CHECK_THROWS(parse_rational("1/0"));
        CHECK(strict_threshold(Rational(5, 2)) == 3);
        CHECK(strict_threshold(Rational(3)) == 3);
    }

    TEST_CASE("rng is reproducible and versioned")
    {
        Rng a(7, 1), b(7, 1), c(7, 2);
        auto x = a.next();
        CHECK(x == b.next());
        CHECK(x != c.next());
        auto s = Rng(9).sample(10, 4);
        CHECK(s.size() == 4);
        CHECK(std::is_sorted(s.begin(), s.end()));
    }
}
