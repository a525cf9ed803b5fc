/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include "oracles.hh"

#include <eorders/regularity.hh>

#include <doctest.h>

#include <algorithm>

using namespace eorders;
using std::vector;

namespace
{
    auto complete_bipartite(std::size_t a, std::size_t b) -> Graph
    {
        Graph f(Vertex(a + b));
        for (Vertex x = 0 ; x < a ; ++x)
            for (Vertex y = 0 ; y < b ; ++y)
                f.add_edge(x, Vertex(a + y));
        return f;
    }

    auto range(Vertex lo, Vertex hi) -> VertexSet
    {
        VertexSet s;
        for (Vertex v = lo ; v < hi ; ++v)
            s.push_back(v);
        return s;
    }

    auto random_bipartite(Rng & rng, std::size_t a, std::size_t b, unsigned percent) -> Graph
    {
        Graph f(Vertex(a + b));
        for (Vertex x = 0 ; x < a ; ++x)
            for (Vertex y = 0 ; y < b ; ++y)
                if (rng.below(100) < percent)
                    f.add_edge(x, Vertex(a + y));
        return f;
    }

    auto subset(const VertexSet & s, unsigned mask) -> VertexSet
    {
        VertexSet r;
        for (std::size_t i = 0 ; i < s.size() ; ++i)
            if ((mask >> i) & 1u)
                r.push_back(s[i]);
        return r;
    }

    struct Brute
    {
        std::uint64_t examined = 0, violations = 0;
    };

    // Every X' and every Y' of admissible size.
    auto brute_regularity(const Graph & f, const VertexSet & x, const VertexSet & y, const Rational & alpha,
            const Rational & eps) -> Brute
    {
        Brute b;
        for (unsigned mx = 1 ; mx < (1u << x.size()) ; ++mx) {
            auto xs = subset(x, mx);
            if (Rational(xs.size()) < eps * Rational(x.size()))
                continue;
            ++b.examined;
            bool bad = false;
            for (unsigned my = 1 ; my < (1u << y.size()) && ! bad ; ++my) {
                auto ys = subset(y, my);
                if (Rational(ys.size()) < eps * Rational(y.size()))
                    continue;
                bad = abs_diff(density(f, xs, ys), alpha) >= eps;
            }
            b.violations += bad;
        }
        return b;
    }
}

TEST_SUITE("regularity")
{
    TEST_CASE("random host generation")
    {
        auto two = generate_random_host(2, 1);
        CHECK(two == EdgeOrderedGraph(2, {Edge{0, 1, 1}}));
        CHECK(generate_random_host(20, 5) == generate_random_host(20, 5));
        CHECK(! validate(generate_random_host(20, 5)));

        int low = 0;
        for (std::uint64_t s = 0 ; s < 10000 ; ++s) {
            auto g = generate_random_host(30, s);
            low += g.edges()[0].label <= 435 / 2;
        }
        CHECK(std::abs(low / 10000.0 - 0.5) < 0.02);
    }

    TEST_CASE("pair check examples")
    {
        auto full = complete_bipartite(5, 5);
        auto x = range(0, 5), y = range(5, 10);
        auto r = pair_regularity_check(full, x, y, Rational(1), Rational(1, 10), CheckMode::exact);
        CHECK(r.certified());
        CHECK(r.worst_deviation == 0);

        Graph empty(10);
        auto e = pair_regularity_check(empty, x, y, Rational(1, 2), Rational(1, 10), CheckMode::exact);
        CHECK(e.violations > 0);
        CHECK(e.worst_deviation == Rational(1, 2));
        CHECK(std::includes(x.begin(), x.end(), e.witness_x.begin(), e.witness_x.end()));
        CHECK(std::includes(y.begin(), y.end(), e.witness_y.begin(), e.witness_y.end()));
        CHECK(Rational(e.witness_x.size()) >= Rational(1, 10) * 5);
        CHECK(Rational(e.witness_y.size()) >= Rational(1, 10) * 5);
        CHECK(density(empty, e.witness_x, e.witness_y) == 0);

        CHECK_THROWS_AS(pair_regularity_check(empty, range(0, 17), VertexSet{17}, Rational(1, 2), Rational(1, 2),
                    CheckMode::exact), InfeasibleSize);
        auto sampled = pair_regularity_check(full, x, y, Rational(1), Rational(1, 10), CheckMode::sampled, 20, 3);
        CHECK(! sampled.certified());
        CHECK(sampled.violations == 0);
    }

    TEST_CASE("exact mode matches full subset enumeration")
    {
        Rng rng(505);
        for (int k = 0 ; k < 150 ; ++k) {
            auto a = rng.between(1, 7), b = rng.between(1, 7);
            auto f = random_bipartite(rng, a, b, unsigned(rng.between(0, 100)));
            auto x = range(0, Vertex(a)), y = range(Vertex(a), Vertex(a + b));
            Rational alpha(rng.between(0, 10), 10), eps(rng.between(1, 9), 10);
            auto r = pair_regularity_check(f, x, y, alpha, eps, CheckMode::exact);
            auto o = brute_regularity(f, x, y, alpha, eps);
            CHECK(r.samples == o.examined);
            CHECK(r.violations == o.violations);
        }
        Rng big(506);
        auto f = random_bipartite(big, 12, 12, 50);
        auto x = range(0, 12), y = range(12, 24);
        auto r = pair_regularity_check(f, x, y, Rational(1, 2), Rational(1, 3), CheckMode::exact);
        auto o = brute_regularity(f, x, y, Rational(1, 2), Rational(1, 3));
        CHECK(r.violations == o.violations);
    }

    TEST_CASE("inheritance and widening")
    {
        Rng rng(507);
        int certified = 0;
        for (int k = 0 ; k < 300 ; ++k) {
            auto a = rng.between(2, 6), b = rng.between(2, 6);
            auto f = random_bipartite(rng, a, b, unsigned(rng.between(40, 100)));
            auto x = range(0, Vertex(a)), y = range(Vertex(a), Vertex(a + b));
            Rational alpha = density(f, x, y), eps(rng.between(3, 9), 10);
            if (! pair_regularity_check(f, x, y, alpha, eps, CheckMode::exact).certified())
                continue;
            ++certified;
            Rational shift(rng.between(0, 3), 20);
            Rational moved = alpha >= shift ? Rational(alpha - shift) : Rational(alpha + shift);
            if (eps + shift < 1)
                CHECK(pair_regularity_check(f, x, y, moved, eps + shift, CheckMode::exact).certified());
            auto xs = subset(x, unsigned(rng.between(1, (1u << a) - 1)));
            auto ys = subset(y, unsigned(rng.between(1, (1u << b) - 1)));
            Rational ratio = std::max(Rational(x.size()) / Rational(xs.size()), Rational(y.size()) / Rational(ys.size()));
            if (eps * ratio < 1)
                CHECK(pair_regularity_check(f, xs, ys, alpha, eps * ratio, CheckMode::exact).certified());
        }
        CHECK(certified > 0);
    }

    TEST_CASE("host regularity")
    {
        CHECK_THROWS_AS(check_host_regularity(generate_random_host(10, 1), Rational(1), 10, 1), PreconditionViolation);

        // The lowest ranks all sit inside the first half of the vertices.
        Vertex n = 16;
        vector<Edge> edges;
        Rank inside = 1, outside = Rank(pairs(n / 2) + 1);
        for (Vertex u = 0 ; u < n ; ++u)
            for (Vertex v = u + 1 ; v < n ; ++v)
                edges.push_back(Edge{u, v, v < n / 2 ? inside++ : outside++});
        auto adversarial = check_host_regularity(EdgeOrderedGraph(n, edges), Rational(1, 4), 2000, 9);
        CHECK(adversarial.violations > 0);
        CHECK(adversarial.witness_interval);

        auto a = check_host_regularity(generate_random_host(40, 3), Rational(1, 2), 200, 4, 1);
        auto b = check_host_regularity(generate_random_host(40, 3), Rational(1, 2), 200, 4, 3);
        CHECK(a.violations == b.violations);
        CHECK(a.worst_deviation == b.worst_deviation);
    }

    TEST_CASE("degree outliers")
    {
        auto x = range(0, 4), y = range(4, 8);
        CHECK(degree_outliers(complete_bipartite(4, 4), x, y, Rational(1), Rational(1, 10)).empty());
        CHECK(degree_outliers(Graph(8), x, y, Rational(1, 2), Rational(1, 10)) == x);

        Rng rng(508);
        for (int k = 0 ; k < 200 ; ++k) {
            auto f = random_bipartite(rng, 6, 6, 50);
            auto xs = range(0, 6), ys = range(6, 12);
            Rational alpha = density(f, xs, ys), eps(rng.between(2, 6), 10);
            if (pair_regularity_check(f, xs, ys, alpha, eps, CheckMode::exact).certified())
                CHECK(Rational(degree_outliers(f, xs, ys, alpha, eps).size()) <= 2 * eps * 6);
        }
    }

    TEST_CASE("codegree outliers")
    {
        auto x = range(0, 3), y = range(3, 6), z = range(6, 10);
        CHECK(codegree_outliers(Graph(10), x, y, z, Rational(2, 5), Rational(1, 20)) == 9);
        CHECK_THROWS_AS(codegree_outliers(Graph(10), x, y, z, Rational(9, 10), Rational(1, 20)), PreconditionViolation);
        CHECK_THROWS_AS(codegree_outliers(Graph(10), x, y, z, Rational(2, 5), Rational(1, 10)), PreconditionViolation);
    }

    TEST_CASE("codegree hypotheses cannot be certified at small sizes")
    {
        // Certification needs every boundary box to have density within eps
        // of alpha. Here boundary sides have at most two vertices, and no
        // density e / (sa sb) is close enough.
        for (long num = 1 ; num <= 400 ; ++num)
            for (long j = 1 ; j <= 10 ; ++j) {
                Rational alpha(num, 1000), eps = alpha / 5 * Rational(j, 10);
                for (unsigned long a = 1 ; a <= 14 ; ++a)
                    for (unsigned long b = 1 ; b <= 14 ; ++b) {
                        auto sa = std::max<unsigned long>(1, ceil(eps * Rational(long(a))).get_ui());
                        auto sb = std::max<unsigned long>(1, ceil(eps * Rational(long(b))).get_ui());
                        REQUIRE(sa <= 2);
                        REQUIRE(sb <= 2);
                        bool allowed = false;
                        for (unsigned long e = 0 ; e <= sa * sb ; ++e)
                            allowed = allowed || abs_diff(Rational(long(e), long(sa * sb)), alpha) < eps;
                        CHECK(! allowed);
                    }
            }

        Rng rng(509);
        for (int k = 0 ; k < 100 ; ++k) {
            Rational alpha(rng.between(4, 40), 100), eps = alpha / 5;
            auto a = rng.between(1, 14), c = rng.between(1, 14);
            auto f = random_bipartite(rng, a, c, unsigned(rng.between(0, 100)));
            CHECK(! pair_regularity_check(f, range(0, Vertex(a)), range(Vertex(a), Vertex(a + c)), alpha, eps,
                        CheckMode::exact).certified());
        }
    }

    TEST_CASE("labeled hosts")
    {
        auto one = generate_labeled_host(10, 1, 3);
        for (auto & e : one.edges)
            CHECK(e.label == 1);
        CHECK(generate_labeled_host(30, 4, 7) == generate_labeled_host(30, 4, 7));

        auto g = generate_labeled_host(200, 4, 11);
        vector<long> counts(5, 0);
        for (auto & e : g.edges)
            ++counts[e.label];
        for (int l = 1 ; l <= 4 ; ++l)
            CHECK(std::abs(counts[l] - 4975) <= 183);

        CHECK(label_density(one, 1, range(0, 3), range(3, 6)) == 1);
        CHECK(label_density(one, 2, range(0, 3), range(3, 6)) == 0);
        CHECK_THROWS_AS(label_density(one, 1, range(0, 3), range(2, 6)), PreconditionViolation);

        auto r = sample_label_densities(g, 25, 1000, 5);
        CHECK(r.samples == 1000);
        CHECK(r.minimum >= Rational(1, 8));
    }

    TEST_CASE("cylinder potential")
    {
        Rng rng(510);
        auto f = random_bipartite(rng, 4, 5, 50);
        CylinderPartition trivial{{range(0, 4), range(4, 9)}, {{range(0, 4), range(4, 9)}}};
        Rational d = density(f, range(0, 4), range(4, 9));
        CHECK(cylinder_potential({f}, trivial) == d * d);

        CylinderPartition split{{range(0, 4), range(4, 9)},
            {{VertexSet{0, 1}, range(4, 9)}, {VertexSet{2, 3}, range(4, 9)}}};
        CHECK(cylinder_potential({f}, split) >= cylinder_potential({f}, trivial));
        CylinderPartition swapped{split.parts, {split.cells[1], split.cells[0]}};
        CHECK(cylinder_potential({f}, swapped) == cylinder_potential({f}, split));

        Graph complement(9);
        for (Vertex x = 0 ; x < 4 ; ++x)
            for (Vertex y = 4 ; y < 9 ; ++y)
                if (! f.adjacent(x, y))
                    complement.add_edge(x, y);
        auto two = cylinder_potential({f, complement}, split);
        CHECK(two == cylinder_potential({complement, f}, split));
        CHECK(two >= 0);
        CHECK(two <= 1);

        CylinderPartition broken{{range(0, 4), range(4, 9)}, {{VertexSet{0, 1}, range(4, 9)}}};
        CHECK_THROWS_AS(check_cylinder_partition(broken), PreconditionViolation);
    }
}
