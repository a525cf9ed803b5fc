/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef EORDERS_CONTAINMENT_HH
#define EORDERS_CONTAINMENT_HH 1

#include <eorders/core.hh>

#include <cstdint>
#include <vector>

namespace eorders
{
    struct SearchBudget
    {
        /// Search nodes allowed; zero means unlimited.
        std::uint64_t node_limit = 0;

        /// Advisory only, never consulted by the search.
        double time_hint = 0.0;
    };

    enum class SearchStatus
    {
        found,
        none,
        budget_exhausted
    };

    auto to_string(SearchStatus) -> const char *;

    struct SearchResult
    {
        SearchStatus status = SearchStatus::none;
        EmbeddingMap map;
        std::uint64_t nodes = 0;
    };

    /**
     * Precomputed search order for one pattern. Pattern vertices are placed
     * in degeneracy order; each placement checks its back edges against the
     * rank window left by the already matched edges.
     */
    class PatternPlan
    {
        public:
            struct Step
            {
                Vertex vertex;
                /// (earlier pattern vertex, pattern rank of the connecting edge)
                std::vector<std::pair<Vertex, Rank>> back;
            };

        private:
            EdgeOrderedGraph _pattern;
            std::vector<Step> _steps;
            std::vector<Step> _anchored_steps;
            Edge _top;

        public:
            explicit PatternPlan(const EdgeOrderedGraph & pattern);

            auto pattern() const -> const EdgeOrderedGraph & { return _pattern; }
            auto steps() const -> const std::vector<Step> & { return _steps; }

            /// Host ranks may be any distinct positive values; zero is a non-edge.
            auto find(const RankMatrix & host, const SearchBudget & budget = {}) const -> SearchResult;

            /**
             * Copies in which the pattern's highest-ranked edge lands on host
             * edge xy. Used when xy carries the largest rank present in host,
             * so any new copy must use it that way.
             */
            auto find_through(const RankMatrix & host, Vertex x, Vertex y, const SearchBudget & budget = {}) const -> SearchResult;
    };

    auto find_copy(const RankMatrix & host, const EdgeOrderedGraph & pattern, const SearchBudget & budget = {}) -> SearchResult;
    auto find_copy(const EdgeOrderedGraph & host, const EdgeOrderedGraph & pattern, const SearchBudget & budget = {}) -> SearchResult;

    /// Labels must match exactly.
    auto find_copy_labeled(const EdgeLabeledGraph & host, const EdgeLabeledGraph & pattern, const SearchBudget & budget = {}) -> SearchResult;

    /// The colour class of `color` keeps its original ranks.
    auto colour_class(const EdgeOrderedGraph & host, const Coloring & coloring, unsigned color) -> RankMatrix;

    auto find_monochromatic_copy(const EdgeOrderedGraph & host, const Coloring & coloring, const EdgeOrderedGraph & pattern,
            unsigned color, const SearchBudget & budget = {}) -> SearchResult;

    /// Independent check: injective, edges present, host ranks increase with pattern ranks.
    auto verify_copy(const RankMatrix & host, const EdgeOrderedGraph & pattern, const EmbeddingMap & map) -> bool;
    auto verify_copy(const EdgeOrderedGraph & host, const EdgeOrderedGraph & pattern, const EmbeddingMap & map) -> bool;
    auto verify_copy_labeled(const EdgeLabeledGraph & host, const EdgeLabeledGraph & pattern, const EmbeddingMap & map) -> bool;

    /// Dense hosts only; larger hosts are rejected with InfeasibleSize.
    inline constexpr Vertex max_dense_host_vertices = 8192;
}

#endif
