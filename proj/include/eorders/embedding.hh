/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef EORDERS_EMBEDDING_HH
#define EORDERS_EMBEDDING_HH 1

#include <eorders/containment.hh>
#include <eorders/core.hh>

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace eorders
{
    /// Consecutive blocks of sizes differing by at most one, in order.
    /// Needs 1 <= m <= |I|.
    auto equitable_blocks(const Interval & interval, std::uint64_t m) -> std::vector<Interval>;

    struct IntervalPartition
    {
        Interval source;

        /// Pattern edges by rank, u < v; blocks[j] belongs to pattern_edges[j].
        std::vector<Edge> pattern_edges;
        std::vector<Interval> blocks;

        /// Throws PreconditionViolation if uv is not a pattern edge.
        auto block(Vertex u, Vertex v) const -> const Interval &;
    };

    auto equitable_interval_partition(const Interval & interval, const EdgeOrderedGraph & pattern) -> IntervalPartition;

    struct SparseWitness
    {
        Interval interval;
        std::vector<VertexSet> sets;

        /// densities[i][j] = d_I'(W_i, W_j); zero on the diagonal.
        std::vector<std::vector<Rational>> densities;

        /// Pattern vertices (t, i) whose step produced a greedy witness.
        std::optional<std::pair<Vertex, Vertex>> origin;

        auto max_density() const -> Rational;
    };

    /// Computes the density table.
    auto make_witness(const RankedAdjacency & g1, const Interval & interval, std::vector<VertexSet> sets,
            std::optional<std::pair<Vertex, Vertex>> origin = std::nullopt) -> SparseWitness;

    /// Recomputes everything from g1: sets disjoint and nonempty, stored
    /// densities exact, all below delta. Returns the first problem found.
    auto verify_witness(const RankedAdjacency & g1, const SparseWitness & witness, const Rational & delta)
        -> std::optional<std::string>;

    /// Snapshot after step t of the greedy procedure, indexed by position in
    /// the degeneracy order.
    struct EmbeddingState
    {
        unsigned step = 0;
        std::vector<Vertex> placed;
        /// candidates[i] is X_{t,i}; empty for placed positions.
        std::vector<VertexSet> candidates;
        /// back_degree[i] is D(t, i), the neighbours of i among positions <= t.
        std::vector<unsigned> back_degree;
    };

    struct EmbedOutcome
    {
        std::variant<EmbeddingMap, SparseWitness> result;
        std::vector<Vertex> order;
        IntervalPartition partition;
        std::vector<EmbeddingState> trace;

        auto embedded() const -> bool { return std::holds_alternative<EmbeddingMap>(result); }
        auto embedding() const -> const EmbeddingMap & { return std::get<EmbeddingMap>(result); }
        auto witness() const -> const SparseWitness & { return std::get<SparseWitness>(result); }
    };

    /**
     * Places the pattern vertices in degeneracy order, keeping for every
     * unplaced vertex the candidates joined to each placed neighbour in
     * the right block of I. Either finishes, or some step finds a large set
     * of candidates with low degree into a later candidate set, which is
     * returned as a two-set witness. parts[v] is X_v for pattern vertex v.
     */
    auto greedy_embed(const RankedAdjacency & g1, const EdgeOrderedGraph & pattern, const Interval & interval,
            const std::vector<VertexSet> & parts, const Rational & delta1, bool record_trace = false) -> EmbedOutcome;
    auto greedy_embed(const EdgeOrderedGraph & g1, const EdgeOrderedGraph & pattern, const Interval & interval,
            const std::vector<VertexSet> & parts, const Rational & delta1, bool record_trace = false) -> EmbedOutcome;

    /// v in X_v and every pattern edge lands on a g1 edge ranked inside its block.
    auto verify_interval_embedding(const RankedAdjacency & g1, const IntervalPartition & partition,
            const std::vector<VertexSet> & parts, const EmbeddingMap & map) -> bool;

    /// { x in X : deg(x, Y) < c delta |Y| }. Requires d(X, Y) <= delta and c >= 1.
    auto degree_filter(const Graph & f, const VertexSet & x, const VertexSet & y, const Rational & c,
            const Rational & delta) -> VertexSet;

    /// The same inside G_I.
    auto degree_filter(const RankedAdjacency & g, const Interval & interval, const VertexSet & x, const VertexSet & y,
            const Rational & c, const Rational & delta) -> VertexSet;

    struct PatternFound
    {
        EmbeddingMap map;
    };

    using SparseOutcome = std::variant<SparseWitness, PatternFound>;

    /// Given (I, X), either sets inside X with a subinterval, or a copy.
    using SparseOracle = std::function<auto (const Interval &, const VertexSet &) -> SparseOutcome>;

    /// Splits X into |V(H)| consecutive parts of near equal size and runs
    /// greedy_embed. Throws InfeasibleSize when a part falls below delta1|X|.
    auto greedy_oracle(const RankedAdjacency & g1, const EdgeOrderedGraph & pattern, const Rational & delta1)
        -> SparseOracle;

    /// (I, X) itself as a one-set witness.
    auto trivial_oracle() -> SparseOracle;

    /**
     * One doubling step: two-set witness (I1, W_Y, W_Z); filter W_Y against
     * W_Z; t sets inside what is left; filter W_Z against each of them; t
     * more sets inside that. The 2t sets are re-verified below delta.
     * two_set must work at delta / (4t), t_set at delta.
     */
    auto amplify_sparse(const RankedAdjacency & g1, const Interval & interval, const VertexSet & x,
            const SparseOracle & two_set, const SparseOracle & t_set, unsigned t, const Rational & delta) -> SparseOutcome;

    /// 2^h sets with pairwise densities below delta2, or a copy of pattern.
    /// Throws InfeasibleSize up front when gamma_h |X| < 1 or |I| < 1 / alpha_h.
    auto iterate_sparse(const RankedAdjacency & g1, const Interval & interval, const VertexSet & x, unsigned h,
            const Rational & delta2, const EdgeOrderedGraph & pattern) -> SparseOutcome;

    struct EqualizeResult
    {
        std::vector<VertexSet> sets;
        unsigned attempts = 0;
    };

    /// Random s-subsets X_i of W_i with d_I(X_i, X_j) < n^2 delta for every
    /// pair. Attempt a uses stream a. Throws BudgetExhausted after `retries`.
    auto equalize_subsets(const RankedAdjacency & g, const Interval & interval, const std::vector<VertexSet> & sets,
            std::size_t s, const Rational & delta, std::uint64_t seed, unsigned retries) -> EqualizeResult;

    class BitMatrix
    {
        private:
            std::size_t _rows = 0, _cols = 0, _words = 0;
            std::vector<std::uint64_t> _bits;

        public:
            BitMatrix() = default;
            BitMatrix(std::size_t rows, std::size_t cols);

            auto rows() const -> std::size_t { return _rows; }
            auto cols() const -> std::size_t { return _cols; }
            auto words() const -> std::size_t { return _words; }
            auto set(std::size_t r, std::size_t c) -> void { _bits[r * _words + c / 64] |= std::uint64_t(1) << (c % 64); }
            auto test(std::size_t r, std::size_t c) const -> bool { return (_bits[r * _words + c / 64] >> (c % 64)) & 1; }
            auto row(std::size_t r) const -> const std::uint64_t * { return _bits.data() + r * _words; }
            auto count() const -> std::uint64_t;
    };

    /**
     * An n-partite graph on parts W_1..W_n, stored per ordered pair of parts
     * as bit matrices over local indices. Red edges are a subset.
     */
    class MultipartiteInstance
    {
        private:
            std::vector<VertexSet> _parts;
            std::vector<BitMatrix> _edges, _red;

            auto index(std::size_t i, std::size_t j) const -> std::size_t { return i * _parts.size() + j; }

        public:
            MultipartiteInstance() = default;
            explicit MultipartiteInstance(std::vector<VertexSet> parts);

            auto part_count() const -> std::size_t { return _parts.size(); }
            auto parts() const -> const std::vector<VertexSet> & { return _parts; }

            /// a and b are local indices into parts i and j, i != j.
            auto add_edge(std::size_t i, std::size_t a, std::size_t j, std::size_t b, bool red = false) -> void;
            auto adjacent(std::size_t i, std::size_t a, std::size_t j, std::size_t b) const -> bool { return _edges[index(i, j)].test(a, b); }
            auto red(std::size_t i, std::size_t a, std::size_t j, std::size_t b) const -> bool { return _red[index(i, j)].test(a, b); }
            auto edges(std::size_t i, std::size_t j) const -> const BitMatrix & { return _edges[index(i, j)]; }
            auto red_edges(std::size_t i, std::size_t j) const -> const BitMatrix & { return _red[index(i, j)]; }

            auto edge_count(std::size_t i, std::size_t j) const -> std::uint64_t { return _edges[index(i, j)].count(); }
            auto red_count(std::size_t i, std::size_t j) const -> std::uint64_t { return _red[index(i, j)].count(); }

            /// p_{i,j}
            auto density(std::size_t i, std::size_t j) const -> Rational;
            auto red_density(std::size_t i, std::size_t j) const -> Rational;

            /// The pair (i, j) as a plain graph on vertices 0..|W_i|+|W_j|-1,
            /// W_i first, for the regularity checker.
            auto pair_graph(std::size_t i, std::size_t j) const -> Graph;
    };

    /**
     * Between W_i and W_j, the edges of g with rank in the block of pattern
     * edge ij. Pairs that are not pattern edges are complete and never red.
     * With no colouring nothing is red.
     */
    auto build_product_graph(const EdgeOrderedGraph & g, const Coloring * coloring, const std::vector<VertexSet> & parts,
            const IntervalPartition & jp, const std::set<unsigned> & red_colors) -> MultipartiteInstance;

    /// Exact count; the first part's vertices are split over workers.
    /// Throws BudgetExhausted past the node limit.
    auto count_spanning_cliques(const MultipartiteInstance & f, const SearchBudget & budget = {}, unsigned workers = 1)
        -> std::uint64_t;

    /**
     * (1 -+ 4 eps n / p^n) prod |W_i| prod p_ij, with p_pairs[i][j] read for
     * i < j. Requires 0 < p < 1/2, p < p_ij < 1, 0 < eps <= (p/4)^n. For
     * n = 1 both ends are |W_1|.
     */
    auto counting_bounds(const Rational & p, const std::vector<std::vector<Rational>> & p_pairs,
            const std::vector<std::uint64_t> & sizes, const Rational & epsilon) -> std::pair<Rational, Rational>;

    /// Host vertices, one per part, least in part order; nullopt if none.
    auto find_red_free_clique(const MultipartiteInstance & f, const SearchBudget & budget = {})
        -> std::optional<std::vector<Vertex>>;

    struct CliqueCensus
    {
        std::uint64_t total = 0;
        std::uint64_t red_free = 0;
        std::uint64_t through_red_normal = 0;
        std::uint64_t through_non_normal = 0;
        std::uint64_t through_red_non_normal = 0;
        std::uint64_t normal_edges = 0;
        std::uint64_t non_normal_edges = 0;

        /// M = alpha^C(n,2) prod |W_i| and the window (1 -+ 4 eps n / alpha^n) M.
        Rational model;
        Rational lower, upper;

        /// Per-case bounds from the accounting: C(n,2) 4 delta3 M / alpha
        /// for red normal edges, C(n,2) 8 eps n alpha^{-(2n-2)} M for non-normal.
        Rational delta3;
        Rational red_normal_bound, non_normal_bound;
    };

    /// An edge w_i w_j is normal when codeg(w_i, w_j, W_k) lies in the closed
    /// range (alpha^2 -+ 2 eps)|W_k| for every other k. Requires 0 < alpha < 1/n.
    auto clique_census(const MultipartiteInstance & f, const Rational & alpha, const Rational & epsilon,
            const SearchBudget & budget = {}) -> CliqueCensus;

    /// Edges exist with ranks in their blocks, and every colour lies outside
    /// the red set. Monochromacy is checked separately.
    auto verify_pull_back(const EdgeOrderedGraph & g, const Coloring * coloring, const IntervalPartition & jp,
            const std::set<unsigned> & red_colors, const EmbeddingMap & map) -> bool;

    auto monochromatic(const EdgeOrderedGraph & g, const Coloring & coloring, const EdgeOrderedGraph & pattern,
            const EmbeddingMap & map) -> std::optional<unsigned>;
}

#endif
