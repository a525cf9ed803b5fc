/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include "oracles.hh"

#include <eorders/arrows.hh>
#include <eorders/containment.hh>

#include <doctest.h>

using namespace eorders;
using std::vector;

namespace
{
    // Every colouring, independently of the library: does each contain a
    // target in its colour?
    auto brute_arrows(const EdgeOrderedGraph & host, const vector<EdgeOrderedGraph> & targets) -> bool
    {
        auto q = unsigned(targets.size());
        auto m = host.edge_count();
        Coloring c;
        c.q = q;
        c.colors.assign(m, 1);
        while (true) {
            bool hit = false;
            for (unsigned colour = 1 ; colour <= q && ! hit ; ++colour) {
                vector<Edge> kept;
                for (auto & e : host.edges())
                    if (c.color(e.label) == colour)
                        kept.push_back(e);
                std::sort(kept.begin(), kept.end(), [] (auto & a, auto & b) { return a.label < b.label; });
                for (std::size_t k = 0 ; k < kept.size() ; ++k)
                    kept[k].label = Rank(k + 1);
                hit = oracle::contains(EdgeOrderedGraph(host.vertex_count(), kept), targets[colour - 1]);
            }
            if (! hit)
                return false;
            std::size_t k = 0;
            while (k < m && c.colors[k] == q)
                c.colors[k++] = 1;
            if (k == m)
                return true;
            ++c.colors[k];
        }
    }

    auto triangles() -> vector<EdgeOrderedGraph>
    {
        return {lex_complete(3), lex_complete(3)};
    }
}

TEST_SUITE("arrows")
{
    TEST_CASE("single edge")
    {
        auto edge = lex_complete(2);
        CHECK(arrows(edge, {edge, edge}).status == ArrowStatus::arrows);
        CHECK(! non_arrow_certificate(edge, {edge, edge}));
    }

    TEST_CASE("lex K6 arrows the triangle by full enumeration")
    {
        ArrowOptions o;
        o.mode = ArrowMode::enumerate;
        o.symmetry_reduction = false;
        auto v = arrows(lex_complete(6), triangles(), o);
        CHECK(v.status == ArrowStatus::arrows);
        CHECK(v.work == 32768);
        CHECK(! v.certificate);
        CHECK(! non_arrow_certificate(lex_complete(6), triangles()));
    }

    TEST_CASE("K5 is beaten by two five-cycles")
    {
        auto k5 = lex_complete(5);
        auto v = arrows(k5, triangles());
        REQUIRE(v.status == ArrowStatus::not_arrows);
        REQUIRE(v.certificate);
        CHECK(verify_certificate(k5, triangles(), *v.certificate));
        auto back = non_arrow_certificate(k5, triangles());
        REQUIRE(back);
        CHECK(verify_certificate(k5, triangles(), *back));
    }

    TEST_CASE("enumeration, backtracking and brute force agree")
    {
        Rng rng(404);
        for (int k = 0 ; k < 40 ; ++k) {
            auto host = oracle::random_ordered(rng, Vertex(rng.between(3, 6)), 70);
            if (host.edge_count() > 11 || host.edge_count() == 0)
                continue;
            vector<EdgeOrderedGraph> targets{oracle::random_ordered(rng, 3, 100), oracle::random_ordered(rng, 3, 70)};
            if (targets[1].edge_count() == 0)
                continue;
            bool truth = brute_arrows(host, targets);
            ArrowOptions e, b;
            e.mode = ArrowMode::enumerate;
            b.mode = ArrowMode::backtrack;
            auto ve = arrows(host, targets, e), vb = arrows(host, targets, b);
            CHECK((ve.status == ArrowStatus::arrows) == truth);
            CHECK((vb.status == ArrowStatus::arrows) == truth);
            if (ve.certificate)
                CHECK(verify_certificate(host, targets, *ve.certificate));
            if (vb.certificate)
                CHECK(verify_certificate(host, targets, *vb.certificate));
        }
    }

    TEST_CASE("symmetry reduction matches the unreduced search")
    {
        for (Vertex n = 3 ; n <= 5 ; ++n) {
            ArrowOptions plain, reduced;
            plain.mode = reduced.mode = ArrowMode::enumerate;
            plain.symmetry_reduction = false;
            auto a = arrows(lex_complete(n), triangles(), plain), b = arrows(lex_complete(n), triangles(), reduced);
            CHECK(a.status == b.status);
            CHECK(b.symmetry_reduced);
        }
    }

    TEST_CASE("worker count does not change the verdict or certificate")
    {
        for (Vertex n : {5u, 6u}) {
            vector<ArrowVerdict> verdicts;
            for (unsigned w : {1u, 2u, 8u}) {
                ArrowOptions o;
                o.mode = ArrowMode::enumerate;
                o.symmetry_reduction = false;
                o.workers = w;
                verdicts.push_back(arrows(lex_complete(n), triangles(), o));
            }
            for (auto & v : verdicts) {
                CHECK(v.status == verdicts[0].status);
                CHECK(v.work == verdicts[0].work);
                CHECK(v.certificate == verdicts[0].certificate);
            }
        }
    }

    TEST_CASE("budget verdicts")
    {
        ArrowOptions o;
        o.mode = ArrowMode::enumerate;
        o.max_colorings = 100;
        CHECK(arrows(lex_complete(6), triangles(), o).status == ArrowStatus::budget_exhausted);
        ArrowOptions b;
        b.mode = ArrowMode::backtrack;
        b.node_limit = 5;
        CHECK(arrows(lex_complete(6), triangles(), b).status == ArrowStatus::budget_exhausted);
    }

    TEST_CASE("Ramsey numbers")
    {
        auto edge = ramsey_search(lex_complete(2), 2, 4, HostStrategy::exhaustive);
        CHECK(edge.status == RamseyStatus::found);
        CHECK(edge.n == 2);

        EdgeOrderedGraph p3a(3, {Edge{0, 1, 1}, Edge{1, 2, 2}}), p3b(3, {Edge{0, 1, 2}, Edge{1, 2, 1}});
        CHECK(are_equivalent(p3a, p3b));
        for (auto & p : {p3a, p3b}) {
            auto r = ramsey_search(p, 2, 5, HostStrategy::exhaustive);
            CHECK(r.status == RamseyStatus::found);
            CHECK(r.n == 3);
        }

        auto tri = ramsey_search(lex_complete(3), 2, 7, HostStrategy::exhaustive);
        CHECK(tri.status == RamseyStatus::found);
        CHECK(tri.n == 6);
        CHECK(! tri.upper_bound);

        auto lex = ramsey_search(lex_complete(3), 2, 7, HostStrategy::lex_only);
        CHECK(lex.n == 6);
        CHECK(lex.upper_bound);

        CHECK(complete_orderings(3).size() == 1);
        CHECK(complete_orderings(4).size() == 30);
    }

    TEST_CASE("composition harness")
    {
        auto edge = lex_complete(2);
        auto r = verify_composition(edge, edge, edge, 1, 1);
        CHECK(r.hypotheses_hold);
        CHECK(r.all_verified);
        auto k3 = lex_complete(3);
        auto same = verify_composition(k3, k3, k3, 1, 1);
        CHECK(same.all_verified);
        auto fail = verify_composition(lex_complete(6), k3, k3, 2, 2);
        CHECK(! fail.hypotheses_hold);
    }
}
