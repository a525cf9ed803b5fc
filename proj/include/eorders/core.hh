/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef EORDERS_CORE_HH
#define EORDERS_CORE_HH 1

#include <eorders/rational.hh>

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace eorders
{
    /// Vertices are 0-based internally; the text formats are 1-based.
    using Vertex = std::uint32_t;

    /// Edge ranks start at 1. Zero means "no edge" wherever a rank is looked up.
    using Rank = std::uint32_t;

    /// Sorted, duplicate-free.
    using VertexSet = std::vector<Vertex>;

    /// Pattern vertex -> host vertex, injective.
    using EmbeddingMap = std::vector<Vertex>;

    class InfeasibleSize : public std::runtime_error
    {
        public:
            using std::runtime_error::runtime_error;
    };

    class PreconditionViolation : public std::invalid_argument
    {
        public:
            using std::invalid_argument::invalid_argument;
    };

    /// Raised where the return type cannot carry a budget verdict.
    class BudgetExhausted : public std::runtime_error
    {
        public:
            using std::runtime_error::runtime_error;
    };

    struct Edge
    {
        Vertex u;
        Vertex v;
        Rank label;

        auto operator== (const Edge &) const -> bool = default;
    };

    /**
     * A graph with a linear order on its edges, stored as a rank labelling.
     * Construction never throws; validate() reports the first broken
     * invariant, and the decoders only ever produce valid graphs.
     */
    class EdgeOrderedGraph
    {
        private:
            Vertex _n = 0;
            std::vector<Edge> _edges;

        public:
            EdgeOrderedGraph() = default;
            EdgeOrderedGraph(Vertex n, std::vector<Edge> edges);

            auto vertex_count() const -> Vertex { return _n; }
            auto edge_count() const -> std::size_t { return _edges.size(); }
            auto edges() const -> std::span<const Edge> { return _edges; }

            /// Edges sorted by rank, endpoints with u < v.
            auto edges_by_rank() const -> std::vector<Edge>;

            auto operator== (const EdgeOrderedGraph &) const -> bool = default;
    };

    struct LabeledEdge
    {
        Vertex u;
        Vertex v;
        std::uint32_t label;

        auto operator== (const LabeledEdge &) const -> bool = default;
    };

    /// Edges carry labels from [1, L]; labels may repeat.
    struct EdgeLabeledGraph
    {
        Vertex n = 0;
        std::uint32_t label_count = 1;
        std::vector<LabeledEdge> edges;

        auto operator== (const EdgeLabeledGraph &) const -> bool = default;
    };

    /// The vertex order is 0, 1, ..., n - 1.
    struct VertexOrderedGraph
    {
        Vertex n = 0;
        std::vector<std::pair<Vertex, Vertex>> edges;

        auto operator== (const VertexOrderedGraph &) const -> bool = default;
    };

    /// One colour in [1, q] per edge rank; colors[r - 1] colours rank r.
    struct Coloring
    {
        unsigned q = 1;
        std::vector<std::uint8_t> colors;

        auto color(Rank r) const -> unsigned { return colors[r - 1]; }
        auto operator== (const Coloring &) const -> bool = default;
    };

    auto validate(const Coloring & c, std::size_t m) -> std::optional<std::string>;

    /// A nonempty range of consecutive ranks, inclusive at both ends.
    struct Interval
    {
        Rank lo = 1;
        Rank hi = 0;

        auto length() const -> std::uint64_t { return hi >= lo ? std::uint64_t(hi) - lo + 1 : 0; }
        auto contains(Rank r) const -> bool { return r >= lo && r <= hi; }
        auto contains(const Interval & other) const -> bool { return other.lo >= lo && other.hi <= hi; }
        auto empty() const -> bool { return hi < lo; }

        auto operator== (const Interval &) const -> bool = default;
    };

    auto to_string(const Interval &) -> std::string;

    /// Checks 1 <= lo <= hi <= m and throws PreconditionViolation otherwise.
    auto check_interval(const Interval & interval, std::uint64_t m) -> void;

    /**
     * An unordered simple graph with sorted adjacency lists. Plays the role
     * of the unordered F and of G_I.
     */
    class Graph
    {
        private:
            Vertex _n = 0;
            std::vector<std::vector<Vertex>> _adj;

        public:
            Graph() = default;
            explicit Graph(Vertex n);
            Graph(Vertex n, std::span<const std::pair<Vertex, Vertex>> edges);

            auto vertex_count() const -> Vertex { return _n; }
            auto edge_count() const -> std::uint64_t;
            auto neighbours(Vertex v) const -> std::span<const Vertex> { return _adj[v]; }
            auto adjacent(Vertex u, Vertex v) const -> bool;
            auto degree(Vertex v) const -> std::size_t { return _adj[v].size(); }

            /// Adds uv if absent. Linear in the degrees; use the bulk
            /// constructor for large graphs.
            auto add_edge(Vertex u, Vertex v) -> void;
    };

    /// Set membership over [0, n) for the density accessors.
    class Membership
    {
        private:
            std::vector<std::uint8_t> _in;

        public:
            Membership(Vertex n, std::span<const Vertex> set);
            auto contains(Vertex v) const -> bool { return v < _in.size() && _in[v]; }
    };

    auto make_vertex_set(std::vector<Vertex> vertices) -> VertexSet;
    auto disjoint(const VertexSet & a, const VertexSet & b) -> bool;

    // deg(v, X), deg(v, w, X), e(V, W) and d(V, W) for unordered graphs
    auto degree(const Graph & f, Vertex v, const VertexSet & x) -> std::uint64_t;
    auto codegree(const Graph & f, Vertex v, Vertex w, const VertexSet & x) -> std::uint64_t;
    auto edges_between(const Graph & f, const VertexSet & v, const VertexSet & w) -> std::uint64_t;
    auto density(const Graph & f, const VertexSet & v, const VertexSet & w) -> Rational;

    auto validate(const EdgeOrderedGraph & g) -> std::optional<std::string>;
    auto validate(const EdgeLabeledGraph & g) -> std::optional<std::string>;
    auto validate(const VertexOrderedGraph & g) -> std::optional<std::string>;

    auto underlying_graph(const EdgeOrderedGraph & g) -> Graph;
    auto underlying_graph(const EdgeLabeledGraph & g) -> Graph;

    /// Is there a vertex bijection carrying edges to edges with equal ranks?
    /// Inputs must be valid.
    auto are_equivalent(const EdgeOrderedGraph & a, const EdgeOrderedGraph & b) -> bool;

    /// The relabelling with the lexicographically least rank-ordered edge
    /// list; equal for two graphs exactly when they are equivalent.
    auto canonical_form(const EdgeOrderedGraph & h) -> EdgeOrderedGraph;

    /// Largest n accepted by count_equivalence_classes.
    inline constexpr unsigned max_class_count_vertices = 5;

    /// Equivalence classes of edge-orderings of K_n, for 2 <= n <= 5.
    auto count_equivalence_classes(unsigned n) -> std::uint64_t;

    auto lex_order(const VertexOrderedGraph & g) -> EdgeOrderedGraph;

    struct DegeneracyOrder
    {
        unsigned degeneracy = 0;
        /// Every vertex has at most `degeneracy` neighbours earlier in this order.
        std::vector<Vertex> order;
    };

    /// Repeated minimum-degree removal, ties to the smallest id.
    auto degeneracy_order(const Graph & g) -> DegeneracyOrder;
    auto degeneracy_order(const EdgeOrderedGraph & g) -> DegeneracyOrder;

    /// Largest back-degree of `order` in g.
    auto back_degree(const Graph & g, std::span<const Vertex> order) -> unsigned;

    /// G_I: the edges whose rank lies in I.
    auto restrict(const EdgeOrderedGraph & g, const Interval & interval) -> Graph;

    /// alpha_I = |I| / C(n, 2).
    auto interval_fraction(const Interval & interval, Vertex n) -> Rational;

    auto pairs(std::uint64_t n) -> std::uint64_t;

    /**
     * Per-vertex (neighbour, rank) lists, sorted by neighbour, for
     * interval-restricted degree and density queries on an edge-ordered
     * graph without materialising G_I. Works for sparse hosts with many
     * vertices.
     */
    class RankedAdjacency
    {
        private:
            Vertex _n = 0;
            std::vector<std::vector<std::pair<Vertex, Rank>>> _adj;

        public:
            RankedAdjacency() = default;
            explicit RankedAdjacency(const EdgeOrderedGraph & g);

            /// Ranks need only be distinct and positive, e.g. one colour
            /// class of a larger host.
            RankedAdjacency(Vertex n, std::span<const Edge> edges);

            auto vertex_count() const -> Vertex { return _n; }
            auto neighbours(Vertex v) const -> std::span<const std::pair<Vertex, Rank>> { return _adj[v]; }

            /// Zero when uv is not an edge.
            auto rank(Vertex u, Vertex v) const -> Rank;

            auto degree(Vertex v, const Membership & x, const Interval & i) const -> std::uint64_t;
            auto edges_between(const VertexSet & v, const VertexSet & w, const Interval & i) const -> std::uint64_t;
            auto density(const VertexSet & v, const VertexSet & w, const Interval & i) const -> Rational;
    };

    /**
     * Dense N x N rank table. Ranks may be any distinct positive integers
     * (colour classes keep their original ranks), zero for non-edges.
     */
    class RankMatrix
    {
        private:
            Vertex _n = 0;
            std::vector<Rank> _ranks;

        public:
            RankMatrix() = default;
            explicit RankMatrix(Vertex n);
            explicit RankMatrix(const EdgeOrderedGraph & g);

            auto vertex_count() const -> Vertex { return _n; }
            auto rank(Vertex u, Vertex v) const -> Rank { return _ranks[std::size_t(u) * _n + v]; }
            auto set(Vertex u, Vertex v, Rank r) -> void
            {
                _ranks[std::size_t(u) * _n + v] = r;
                _ranks[std::size_t(v) * _n + u] = r;
            }
            auto row(Vertex u) const -> std::span<const Rank> { return {_ranks.data() + std::size_t(u) * _n, _n}; }
    };
}

#endif
