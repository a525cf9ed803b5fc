/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef EORDERS_ARROWS_HH
#define EORDERS_ARROWS_HH 1

#include <eorders/containment.hh>
#include <eorders/core.hh>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace eorders
{
    enum class ArrowMode
    {
        enumerate,
        backtrack,
        automatic
    };

    struct ArrowOptions
    {
        ArrowMode mode = ArrowMode::automatic;
        unsigned workers = 1;

        /// Enumeration is refused (budget verdict) above this many colourings;
        /// automatic mode switches to backtracking instead.
        std::uint64_t max_colorings = std::uint64_t(1) << 24;

        /// Backtracking nodes, zero for unlimited.
        std::uint64_t node_limit = 0;

        /// Fix the colour of rank 1 when every target is the same pattern.
        bool symmetry_reduction = true;
    };

    enum class ArrowStatus
    {
        arrows,
        not_arrows,
        budget_exhausted
    };

    auto to_string(ArrowStatus) -> const char *;

    struct ArrowVerdict
    {
        ArrowStatus status = ArrowStatus::budget_exhausted;

        /// The lexicographically least colouring avoiding every target,
        /// present exactly when status is not_arrows.
        std::optional<Coloring> certificate;

        /// Colourings tested (enumeration) or search nodes (backtracking),
        /// counted over prefix blocks up to the deciding one, so the value
        /// does not depend on the worker count.
        std::uint64_t work = 0;

        ArrowMode mode_used = ArrowMode::enumerate;
        bool symmetry_reduced = false;
    };

    /// Does every |targets|-colouring of host contain a copy of targets[c]
    /// in some colour c?
    auto arrows(const EdgeOrderedGraph & host, const std::vector<EdgeOrderedGraph> & targets,
            const ArrowOptions & options = {}) -> ArrowVerdict;

    /// Backtracking search for a bad colouring; nullopt means none exists.
    /// Throws BudgetExhausted when the node limit cuts the search off.
    auto non_arrow_certificate(const EdgeOrderedGraph & host, const std::vector<EdgeOrderedGraph> & targets,
            const ArrowOptions & options = {}) -> std::optional<Coloring>;

    /// Independent re-check by containment: no colour class holds its target.
    auto verify_certificate(const EdgeOrderedGraph & host, const std::vector<EdgeOrderedGraph> & targets,
            const Coloring & coloring) -> bool;

    enum class HostStrategy
    {
        lex_only,
        exhaustive
    };

    /// Host sizes up to this many vertices can have all orderings enumerated.
    inline constexpr Vertex max_exhaustive_host_vertices = 5;

    enum class RamseyStatus
    {
        found,
        not_found,
        budget_exhausted
    };

    struct RamseyResult
    {
        RamseyStatus status = RamseyStatus::not_found;
        Vertex n = 0;
        /// Set when N is only known to be an upper bound.
        bool upper_bound = false;
        EdgeOrderedGraph host;
        std::uint64_t orderings_tested = 0;
    };

    auto lex_complete(Vertex n) -> EdgeOrderedGraph;

    /// Canonical representatives of every edge-ordering of K_n, n <= 5.
    auto complete_orderings(Vertex n) -> std::vector<EdgeOrderedGraph>;

    auto ramsey_search(const EdgeOrderedGraph & pattern, unsigned q, Vertex n_max, HostStrategy strategy,
            const ArrowOptions & options = {}) -> RamseyResult;

    struct CompositionReport
    {
        ArrowStatus f_to_g;     // F -> G with s colours
        ArrowStatus g_to_h;     // G -> H with r colours
        ArrowStatus f_to_h;     // F -> H with rs colours
        bool hypotheses_hold = false;
        bool all_verified = false;
    };

    auto verify_composition(const EdgeOrderedGraph & f, const EdgeOrderedGraph & g, const EdgeOrderedGraph & h,
            unsigned r, unsigned s, const ArrowOptions & options = {}) -> CompositionReport;
}

#endif
