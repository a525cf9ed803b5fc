/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include "oracles.hh"

#include <eorders/arrows.hh>
#include <eorders/containment.hh>
#include <eorders/core.hh>

#include <doctest.h>

using namespace eorders;
using std::vector;

TEST_SUITE("containment")
{
    TEST_CASE("lex K3 inside lex K4")
    {
        auto r = find_copy(lex_complete(4), lex_complete(3));
        REQUIRE(r.status == SearchStatus::found);
        CHECK(verify_copy(lex_complete(4), lex_complete(3), r.map));
    }

    TEST_CASE("single edge pattern")
    {
        auto edge = lex_complete(2);
        CHECK(find_copy(EdgeOrderedGraph(4, {}), edge).status == SearchStatus::none);
        CHECK(find_copy(EdgeOrderedGraph(4, {Edge{2, 3, 1}}), edge).status == SearchStatus::found);
    }

    TEST_CASE("every triangle ordering is found")
    {
        EdgeOrderedGraph cyc(3, {Edge{0, 1, 1}, Edge{1, 2, 2}, Edge{0, 2, 3}});
        CHECK(find_copy(cyc, lex_complete(3)).status == SearchStatus::found);
    }

    TEST_CASE("agrees with brute force over injective maps")
    {
        Rng rng(303);
        for (int k = 0 ; k < 400 ; ++k) {
            auto host = oracle::random_ordered(rng, Vertex(rng.between(2, 8)), unsigned(rng.between(30, 100)));
            auto pattern = oracle::random_ordered(rng, Vertex(rng.between(2, 4)), 70);
            auto r = find_copy(host, pattern);
            REQUIRE(r.status != SearchStatus::budget_exhausted);
            CHECK((r.status == SearchStatus::found) == oracle::contains(host, pattern));
            if (r.status == SearchStatus::found)
                CHECK(verify_copy(host, pattern, r.map));
        }
    }

    TEST_CASE("budget is a distinct verdict")
    {
        auto r = find_copy(lex_complete(9), lex_complete(5), SearchBudget{3, 0.0});
        CHECK(r.status == SearchStatus::budget_exhausted);
    }

    TEST_CASE("rank relabelling by an increasing map")
    {
        Rng rng(304);
        for (int k = 0 ; k < 50 ; ++k) {
            auto host = oracle::random_ordered(rng, 7, 70);
            auto pattern = oracle::random_ordered(rng, 3, 100);
            RankMatrix spread(host.vertex_count());
            for (auto & e : host.edges())
                spread.set(e.u, e.v, 3 * e.label + 5);
            CHECK(find_copy(spread, pattern).status == find_copy(host, pattern).status);
        }
    }

    TEST_CASE("labeled containment")
    {
        EdgeLabeledGraph host{2, 5, {LabeledEdge{0, 1, 5}}};
        CHECK(find_copy_labeled(host, EdgeLabeledGraph{2, 5, {LabeledEdge{0, 1, 5}}}).status == SearchStatus::found);
        CHECK(find_copy_labeled(host, EdgeLabeledGraph{2, 5, {LabeledEdge{0, 1, 4}}}).status == SearchStatus::none);
        EdgeLabeledGraph k4{4, 1, {}};
        for (Vertex u = 0 ; u < 4 ; ++u)
            for (Vertex v = u + 1 ; v < 4 ; ++v)
                k4.edges.push_back(LabeledEdge{u, v, 1});
        EdgeLabeledGraph k3{3, 1, {LabeledEdge{0, 1, 1}, LabeledEdge{0, 2, 1}, LabeledEdge{1, 2, 1}}};
        auto r = find_copy_labeled(k4, k3);
        REQUIRE(r.status == SearchStatus::found);
        CHECK(verify_copy_labeled(k4, k3, r.map));
    }

    TEST_CASE("monochromatic copies against triangle enumeration")
    {
        auto k6 = lex_complete(6);
        Coloring c;
        c.q = 2;
        c.colors.assign(k6.edge_count(), 2);
        for (auto & e : k6.edges())
            if ((e.u < 3 && e.v < 3) || (e.u >= 2 && e.v >= 2 && e.u < 5 && e.v < 5))
                c.colors[e.label - 1] = 1;
        auto t = oracle::rank_table(k6);
        for (unsigned colour = 1 ; colour <= 2 ; ++colour) {
            bool expected = false;
            for (Vertex a = 0 ; a < 6 ; ++a)
                for (Vertex b = a + 1 ; b < 6 ; ++b)
                    for (Vertex d = b + 1 ; d < 6 ; ++d)
                        expected = expected || (c.color(t[a][b]) == colour && c.color(t[a][d]) == colour
                                && c.color(t[b][d]) == colour);
            auto r = find_monochromatic_copy(k6, c, lex_complete(3), colour);
            CHECK((r.status == SearchStatus::found) == expected);
        }

        Coloring red;
        red.q = 2;
        red.colors.assign(k6.edge_count(), 1);
        CHECK(find_monochromatic_copy(k6, red, lex_complete(3), 1).status == SearchStatus::found);
        CHECK(find_monochromatic_copy(k6, red, lex_complete(3), 2).status == SearchStatus::none);
    }
}
