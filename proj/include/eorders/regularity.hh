/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef EORDERS_REGULARITY_HH
#define EORDERS_REGULARITY_HH 1

#include <eorders/core.hh>

#include <cstdint>
#include <optional>
#include <vector>

namespace eorders
{
    enum class CheckMode
    {
        exact,
        sampled
    };

    auto to_string(CheckMode) -> const char *;

    /**
     * Exact mode examines every X' of admissible size and reports as
     * "samples" the number of X' examined; violations then counts the X'
     * for which some admissible Y' breaks the window. Sampled mode only
     * ever gives evidence.
     */
    struct RegularityReport
    {
        Rational epsilon;
        CheckMode mode = CheckMode::sampled;
        std::uint64_t samples = 0;
        std::uint64_t violations = 0;
        Rational worst_deviation = 0;

        /// Where the worst deviation was seen. The interval is only set by
        /// the host check.
        std::optional<Interval> witness_interval;
        VertexSet witness_x, witness_y;

        auto certified() const -> bool { return mode == CheckMode::exact && violations == 0; }
    };

    /// Complete graph, labels a uniformly random permutation (edges listed
    /// in lexicographic order).
    auto generate_random_host(Vertex n, std::uint64_t seed) -> EdgeOrderedGraph;

    /// Exact mode needs |X|, |Y| <= this.
    inline constexpr std::size_t max_exact_side = 16;

    /// Is |d(X', Y') - alpha| < epsilon for all X' of size >= epsilon|X| and
    /// Y' of size >= epsilon|Y|?
    auto pair_regularity_check(const Graph & f, const VertexSet & x, const VertexSet & y, const Rational & alpha,
            const Rational & epsilon, CheckMode mode, std::uint64_t samples = 0, std::uint64_t seed = 0) -> RegularityReport;

    /**
     * Sample k draws an interval I with |I| >= epsilon C(N,2), disjoint X, Y
     * of size ceil(epsilon N), and boundary subsets X' and Y' of size
     * ceil(epsilon |X|), then tests |d_I(X', Y') - alpha_I| < epsilon. Each
     * sample uses its own stream (seed, k), so the report does not depend
     * on the worker count. Requires 0 < epsilon < 1.
     */
    auto check_host_regularity(const EdgeOrderedGraph & g, const Rational & epsilon, std::uint64_t samples,
            std::uint64_t seed, unsigned workers = 1) -> RegularityReport;

    /// x in X with deg(x, Y) outside the closed range [(alpha - epsilon)|Y|, (alpha + epsilon)|Y|].
    auto degree_outliers(const Graph & f, const VertexSet & x, const VertexSet & y, const Rational & alpha,
            const Rational & epsilon) -> VertexSet;

    /// Pairs (x, y) with codeg(x, y, Z) outside the closed range (alpha^2 +- 2 epsilon)|Z|.
    /// Requires 0 < alpha < 1/2 and 0 < epsilon < alpha/5.
    auto codegree_outliers(const Graph & f, const VertexSet & x, const VertexSet & y, const VertexSet & z,
            const Rational & alpha, const Rational & epsilon) -> std::uint64_t;

    /// Complete graph with independent uniform labels in [1, L].
    auto generate_labeled_host(Vertex n, std::uint32_t label_count, std::uint64_t seed) -> EdgeLabeledGraph;

    /// e_l(U, W) / (|U||W|). U and W must be disjoint and nonempty.
    auto label_density(const EdgeLabeledGraph & g, std::uint32_t label, const VertexSet & u, const VertexSet & w) -> Rational;

    struct LabelDensityReport
    {
        std::uint64_t samples = 0;
        Rational minimum = 1;
        std::uint32_t minimum_label = 0;
    };

    /// Smallest label density over all labels and `samples` random disjoint
    /// pairs of sets of the given size.
    auto sample_label_densities(const EdgeLabeledGraph & g, std::size_t set_size, std::uint64_t samples,
            std::uint64_t seed) -> LabelDensityReport;

    struct CylinderPartition
    {
        std::vector<VertexSet> parts;
        /// cells[c][i] is the side of cell c inside parts[i].
        std::vector<std::vector<VertexSet>> cells;
    };

    /// Throws PreconditionViolation unless the cells partition the product.
    auto check_cylinder_partition(const CylinderPartition & partition) -> void;

    /// Weighted sum over cells of the squared colour densities between
    /// every pair of sides. Colour classes must be edge-disjoint.
    auto cylinder_potential(const std::vector<Graph> & colours, const CylinderPartition & partition) -> Rational;
}

#endif
