/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <eorders/core.hh>

#include <algorithm>
#include <numeric>
#include <set>

using std::optional;
using std::pair;
using std::span;
using std::string;
using std::vector;

namespace eorders
{
    EdgeOrderedGraph::EdgeOrderedGraph(Vertex n, vector<Edge> edges) :
        _n(n),
        _edges(std::move(edges))
    {
    }

    auto EdgeOrderedGraph::edges_by_rank() const -> vector<Edge>
    {
        vector<Edge> result(_edges.begin(), _edges.end());
        for (auto & e : result)
            if (e.u > e.v)
                std::swap(e.u, e.v);
        std::sort(result.begin(), result.end(), [] (const Edge & a, const Edge & b) { return a.label < b.label; });
        return result;
    }

    auto to_string(const Interval & interval) -> string
    {
        return "[" + std::to_string(interval.lo) + "," + std::to_string(interval.hi) + "]";
    }

    auto check_interval(const Interval & interval, std::uint64_t m) -> void
    {
        if (interval.lo < 1 || interval.hi < interval.lo || interval.hi > m)
            throw PreconditionViolation("interval " + to_string(interval) + " is not a nonempty subrange of [1,"
                    + std::to_string(m) + "]");
    }

    Graph::Graph(Vertex n) :
        _n(n),
        _adj(n)
    {
    }

    Graph::Graph(Vertex n, span<const pair<Vertex, Vertex>> edges) :
        _n(n),
        _adj(n)
    {
        for (auto [u, v] : edges) {
            if (u >= n || v >= n || u == v)
                throw PreconditionViolation("Graph: bad edge");
            _adj[u].push_back(v);
            _adj[v].push_back(u);
        }
        for (auto & a : _adj) {
            std::sort(a.begin(), a.end());
            a.erase(std::unique(a.begin(), a.end()), a.end());
        }
    }

    auto Graph::edge_count() const -> std::uint64_t
    {
        std::uint64_t total = 0;
        for (auto & a : _adj)
            total += a.size();
        return total / 2;
    }

    auto Graph::adjacent(Vertex u, Vertex v) const -> bool
    {
        return std::binary_search(_adj[u].begin(), _adj[u].end(), v);
    }

    auto Graph::add_edge(Vertex u, Vertex v) -> void
    {
        if (u >= _n || v >= _n || u == v)
            throw PreconditionViolation("Graph::add_edge: bad edge");
        auto put = [] (vector<Vertex> & a, Vertex x) {
            auto it = std::lower_bound(a.begin(), a.end(), x);
            if (it == a.end() || *it != x)
                a.insert(it, x);
        };
        put(_adj[u], v);
        put(_adj[v], u);
    }

    Membership::Membership(Vertex n, span<const Vertex> set) :
        _in(n, 0)
    {
        for (Vertex v : set)
            if (v < n)
                _in[v] = 1;
    }

    auto make_vertex_set(vector<Vertex> vertices) -> VertexSet
    {
        std::sort(vertices.begin(), vertices.end());
        vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
        return vertices;
    }

    auto disjoint(const VertexSet & a, const VertexSet & b) -> bool
    {
        auto i = a.begin();
        auto j = b.begin();
        while (i != a.end() && j != b.end()) {
            if (*i == *j)
                return false;
            if (*i < *j)
                ++i;
            else
                ++j;
        }
        return true;
    }

    auto degree(const Graph & f, Vertex v, const VertexSet & x) -> std::uint64_t
    {
        std::uint64_t result = 0;
        for (Vertex u : f.neighbours(v))
            if (std::binary_search(x.begin(), x.end(), u))
                ++result;
        return result;
    }

    auto codegree(const Graph & f, Vertex v, Vertex w, const VertexSet & x) -> std::uint64_t
    {
        std::uint64_t result = 0;
        for (Vertex u : x)
            if (f.adjacent(v, u) && f.adjacent(w, u))
                ++result;
        return result;
    }

    auto edges_between(const Graph & f, const VertexSet & v, const VertexSet & w) -> std::uint64_t
    {
        Membership in_w(f.vertex_count(), w);
        std::uint64_t result = 0;
        for (Vertex a : v)
            for (Vertex b : f.neighbours(a))
                if (in_w.contains(b))
                    ++result;
        return result;
    }

    auto density(const Graph & f, const VertexSet & v, const VertexSet & w) -> Rational
    {
        return density(edges_between(f, v, w), v.size(), w.size());
    }

    namespace
    {
        template <typename Edges_>
        auto check_endpoints(Vertex n, const Edges_ & edges) -> optional<string>
        {
            std::set<pair<Vertex, Vertex>> seen;
            for (auto & e : edges) {
                if (e.u >= n || e.v >= n)
                    return "vertex out of range";
                if (e.u == e.v)
                    return "self-loop";
            }
            for (auto & e : edges)
                if (! seen.emplace(std::min(e.u, e.v), std::max(e.u, e.v)).second)
                    return "duplicate edge";
            return std::nullopt;
        }
    }

    auto validate(const EdgeOrderedGraph & g) -> optional<string>
    {
        if (auto bad = check_endpoints(g.vertex_count(), g.edges()))
            return bad;

        vector<bool> seen(g.edge_count() + 1, false);
        for (auto & e : g.edges()) {
            if (e.label < 1 || e.label > g.edge_count() || seen[e.label])
                return "labels not a permutation";
            seen[e.label] = true;
        }
        return std::nullopt;
    }

    auto validate(const EdgeLabeledGraph & g) -> optional<string>
    {
        if (g.label_count < 1)
            return "label universe empty";
        if (auto bad = check_endpoints(g.n, g.edges))
            return bad;
        for (auto & e : g.edges)
            if (e.label < 1 || e.label > g.label_count)
                return "label out of range";
        return std::nullopt;
    }

    auto validate(const VertexOrderedGraph & g) -> optional<string>
    {
        struct E { Vertex u, v; };
        vector<E> edges;
        for (auto [u, v] : g.edges)
            edges.push_back({u, v});
        return check_endpoints(g.n, edges);
    }

    auto validate(const Coloring & c, std::size_t m) -> optional<string>
    {
        if (c.q < 1 || c.q > 255)
            return "colour count out of range";
        if (c.colors.size() != m)
            return "colouring does not cover every edge";
        for (auto x : c.colors)
            if (x < 1 || x > c.q)
                return "colour out of range";
        return std::nullopt;
    }

    auto underlying_graph(const EdgeOrderedGraph & g) -> Graph
    {
        vector<pair<Vertex, Vertex>> pairs;
        pairs.reserve(g.edge_count());
        for (auto & e : g.edges())
            pairs.emplace_back(e.u, e.v);
        return Graph(g.vertex_count(), pairs);
    }

    auto underlying_graph(const EdgeLabeledGraph & g) -> Graph
    {
        vector<pair<Vertex, Vertex>> pairs;
        for (auto & e : g.edges)
            pairs.emplace_back(e.u, e.v);
        return Graph(g.n, pairs);
    }

    namespace
    {
        constexpr int unmapped = -1;

        struct EquivalenceSearch
        {
            const vector<Edge> & a;
            const vector<Edge> & b;
            vector<int> forward, backward;

            auto bind(Vertex x, Vertex y, vector<pair<Vertex, Vertex>> & undo) -> bool
            {
                if (forward[x] == unmapped && backward[y] == unmapped) {
                    forward[x] = int(y);
                    backward[y] = int(x);
                    undo.emplace_back(x, y);
                    return true;
                }
                return forward[x] == int(y);
            }

            auto release(vector<pair<Vertex, Vertex>> & undo) -> void
            {
                for (auto [x, y] : undo) {
                    forward[x] = unmapped;
                    backward[y] = unmapped;
                }
                undo.clear();
            }

            auto search(std::size_t pos) -> bool
            {
                if (pos == a.size())
                    return true;

                auto & ea = a[pos];
                auto & eb = b[pos];
                for (int orientation = 0 ; orientation < 2 ; ++orientation) {
                    Vertex y1 = orientation == 0 ? eb.u : eb.v;
                    Vertex y2 = orientation == 0 ? eb.v : eb.u;
                    vector<pair<Vertex, Vertex>> undo;
                    if (bind(ea.u, y1, undo) && bind(ea.v, y2, undo) && search(pos + 1))
                        return true;
                    release(undo);
                }
                return false;
            }
        };

        struct CanonicalSearch
        {
            const vector<Edge> & edges;
            vector<int> map;
            Vertex next_id = 0;
            vector<pair<Vertex, Vertex>> current, best;
            bool have_best = false;

            // Sign of current[0..pos) + p against best[0..pos].
            auto compare_prefix(std::size_t pos, const pair<Vertex, Vertex> & p) const -> int
            {
                for (std::size_t i = 0 ; i < pos ; ++i)
                    if (current[i] != best[i])
                        return current[i] < best[i] ? -1 : 1;
                return p < best[pos] ? -1 : p == best[pos] ? 0 : 1;
            }

            auto search(std::size_t pos) -> void
            {
                if (pos == edges.size()) {
                    if (! have_best || current < best) {
                        best = current;
                        have_best = true;
                    }
                    return;
                }

                auto & e = edges[pos];
                auto descend = [&] (pair<Vertex, Vertex> p) {
                    if (have_best && compare_prefix(pos, p) > 0)
                        return;
                    current[pos] = p;
                    search(pos + 1);
                };

                bool mu = map[e.u] != unmapped, mv = map[e.v] != unmapped;
                if (mu && mv) {
                    Vertex x = Vertex(map[e.u]), y = Vertex(map[e.v]);
                    descend({std::min(x, y), std::max(x, y)});
                }
                else if (mu || mv) {
                    Vertex fresh = mu ? e.v : e.u;
                    Vertex known = Vertex(map[mu ? e.u : e.v]);
                    map[fresh] = int(next_id++);
                    descend({known, next_id - 1});
                    --next_id;
                    map[fresh] = unmapped;
                }
                else {
                    for (int orientation = 0 ; orientation < 2 ; ++orientation) {
                        Vertex first = orientation == 0 ? e.u : e.v;
                        Vertex second = orientation == 0 ? e.v : e.u;
                        map[first] = int(next_id);
                        map[second] = int(next_id + 1);
                        next_id += 2;
                        descend({next_id - 2, next_id - 1});
                        next_id -= 2;
                        map[first] = unmapped;
                        map[second] = unmapped;
                    }
                }
            }
        };
    }

    auto are_equivalent(const EdgeOrderedGraph & a, const EdgeOrderedGraph & b) -> bool
    {
        if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count())
            return false;

        auto ea = a.edges_by_rank();
        auto eb = b.edges_by_rank();
        EquivalenceSearch search{ea, eb, vector<int>(a.vertex_count(), unmapped), vector<int>(b.vertex_count(), unmapped)};
        return search.search(0);
    }

    auto canonical_form(const EdgeOrderedGraph & h) -> EdgeOrderedGraph
    {
        auto edges = h.edges_by_rank();
        CanonicalSearch search{edges, vector<int>(h.vertex_count(), unmapped), 0, vector<pair<Vertex, Vertex>>(edges.size()), {}, false};
        search.search(0);

        vector<Edge> result;
        result.reserve(edges.size());
        for (std::size_t i = 0 ; i < search.best.size() ; ++i)
            result.push_back({search.best[i].first, search.best[i].second, Rank(i + 1)});
        return EdgeOrderedGraph(h.vertex_count(), std::move(result));
    }

    auto count_equivalence_classes(unsigned n) -> std::uint64_t
    {
        if (n < 2)
            throw PreconditionViolation("count_equivalence_classes: n must be at least 2");
        if (n > max_class_count_vertices)
            throw InfeasibleSize("count_equivalence_classes: n = " + std::to_string(n) + " exceeds the supported maximum of "
                    + std::to_string(max_class_count_vertices));

        // Burnside: a vertex permutation fixes an edge-ordering exactly when
        // it fixes every edge setwise, and then it fixes all m! of them.
        vector<unsigned> sigma(n);
        std::iota(sigma.begin(), sigma.end(), 0u);
        std::uint64_t group_order = 0, edge_trivial = 0;
        do {
            ++group_order;
            bool trivial = true;
            for (unsigned i = 0 ; i < n && trivial ; ++i)
                for (unsigned j = i + 1 ; j < n && trivial ; ++j)
                    trivial = (sigma[i] == i && sigma[j] == j) || (sigma[i] == j && sigma[j] == i);
            if (trivial)
                ++edge_trivial;
        } while (std::next_permutation(sigma.begin(), sigma.end()));

        std::uint64_t m_factorial = 1;
        for (std::uint64_t k = 2 ; k <= pairs(n) ; ++k)
            m_factorial *= k;
        return m_factorial * edge_trivial / group_order;
    }

    auto lex_order(const VertexOrderedGraph & g) -> EdgeOrderedGraph
    {
        vector<pair<Vertex, Vertex>> sorted;
        for (auto [u, v] : g.edges)
            sorted.emplace_back(std::min(u, v), std::max(u, v));
        std::sort(sorted.begin(), sorted.end());

        vector<Edge> edges;
        for (std::size_t i = 0 ; i < sorted.size() ; ++i)
            edges.push_back({sorted[i].first, sorted[i].second, Rank(i + 1)});
        return EdgeOrderedGraph(g.n, std::move(edges));
    }

    auto degeneracy_order(const Graph & g) -> DegeneracyOrder
    {
        Vertex n = g.vertex_count();
        vector<std::size_t> deg(n);
        vector<bool> removed(n, false);
        for (Vertex v = 0 ; v < n ; ++v)
            deg[v] = g.degree(v);

        DegeneracyOrder result;
        vector<Vertex> removal;
        removal.reserve(n);
        for (Vertex step = 0 ; step < n ; ++step) {
            Vertex best = n;
            for (Vertex v = 0 ; v < n ; ++v)
                if (! removed[v] && (best == n || deg[v] < deg[best]))
                    best = v;
            result.degeneracy = std::max<unsigned>(result.degeneracy, unsigned(deg[best]));
            removed[best] = true;
            removal.push_back(best);
            for (Vertex u : g.neighbours(best))
                if (! removed[u])
                    --deg[u];
        }

        // the vertex removed last comes first
        result.order.assign(removal.rbegin(), removal.rend());
        return result;
    }

    auto degeneracy_order(const EdgeOrderedGraph & g) -> DegeneracyOrder
    {
        return degeneracy_order(underlying_graph(g));
    }

    auto back_degree(const Graph & g, span<const Vertex> order) -> unsigned
    {
        vector<std::size_t> position(g.vertex_count());
        for (std::size_t i = 0 ; i < order.size() ; ++i)
            position[order[i]] = i;
        unsigned worst = 0;
        for (Vertex v : order) {
            unsigned back = 0;
            for (Vertex u : g.neighbours(v))
                if (position[u] < position[v])
                    ++back;
            worst = std::max(worst, back);
        }
        return worst;
    }

    auto restrict(const EdgeOrderedGraph & g, const Interval & interval) -> Graph
    {
        check_interval(interval, std::max<std::uint64_t>(g.edge_count(), 1));
        if (interval.hi > g.edge_count())
            throw PreconditionViolation("restrict: interval beyond the last rank");
        vector<pair<Vertex, Vertex>> kept;
        for (auto & e : g.edges())
            if (interval.contains(e.label))
                kept.emplace_back(e.u, e.v);
        return Graph(g.vertex_count(), kept);
    }

    auto pairs(std::uint64_t n) -> std::uint64_t
    {
        return n * (n - (n > 0 ? 1 : 0)) / 2;
    }

    auto interval_fraction(const Interval & interval, Vertex n) -> Rational
    {
        Rational r(Integer(static_cast<unsigned long>(interval.length())), Integer(static_cast<unsigned long>(pairs(n))));
        r.canonicalize();
        return r;
    }

    RankedAdjacency::RankedAdjacency(const EdgeOrderedGraph & g) :
        RankedAdjacency(g.vertex_count(), g.edges())
    {
    }

    RankedAdjacency::RankedAdjacency(Vertex n, span<const Edge> edges) :
        _n(n),
        _adj(n)
    {
        for (auto & e : edges) {
            _adj[e.u].emplace_back(e.v, e.label);
            _adj[e.v].emplace_back(e.u, e.label);
        }
        for (auto & a : _adj)
            std::sort(a.begin(), a.end());
    }

    auto RankedAdjacency::rank(Vertex u, Vertex v) const -> Rank
    {
        auto & a = _adj[u];
        auto it = std::lower_bound(a.begin(), a.end(), pair<Vertex, Rank>{v, 0});
        return (it != a.end() && it->first == v) ? it->second : 0;
    }

    auto RankedAdjacency::degree(Vertex v, const Membership & x, const Interval & i) const -> std::uint64_t
    {
        std::uint64_t result = 0;
        for (auto [u, r] : _adj[v])
            if (i.contains(r) && x.contains(u))
                ++result;
        return result;
    }

    auto RankedAdjacency::edges_between(const VertexSet & v, const VertexSet & w, const Interval & i) const -> std::uint64_t
    {
        Membership in_w(_n, w);
        std::uint64_t result = 0;
        for (Vertex a : v)
            result += degree(a, in_w, i);
        return result;
    }

    auto RankedAdjacency::density(const VertexSet & v, const VertexSet & w, const Interval & i) const -> Rational
    {
        return eorders::density(edges_between(v, w, i), v.size(), w.size());
    }

    RankMatrix::RankMatrix(Vertex n) :
        _n(n),
        _ranks(std::size_t(n) * n, 0)
    {
    }

    RankMatrix::RankMatrix(const EdgeOrderedGraph & g) :
        RankMatrix(g.vertex_count())
    {
        for (auto & e : g.edges())
            set(e.u, e.v, e.label);
    }
}
