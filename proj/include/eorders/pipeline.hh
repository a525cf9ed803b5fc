/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef EORDERS_PIPELINE_HH
#define EORDERS_PIPELINE_HH 1

#include <eorders/containment.hh>
#include <eorders/core.hh>
#include <eorders/embedding.hh>

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace eorders
{
    struct PipelineOptions
    {
        std::set<unsigned> red_colors{1};

        /// Sparse sets W_1..W_n and their interval. Without them the sets
        /// are searched for in the red subgraph, which only succeeds for
        /// astronomically large hosts.
        std::optional<std::vector<VertexSet>> parts;
        std::optional<Interval> interval;

        /// Default alpha^(2n+1) / 10.
        std::optional<Rational> epsilon;

        /// For the sparse search; default n^(-6n).
        std::optional<Rational> delta2;

        SearchBudget budget;
        std::optional<std::uint64_t> seed;
        std::uint64_t samples = 200;
    };

    struct PipelineStage
    {
        std::string name;
        bool ok = false;
        std::string detail;
    };

    struct PipelineReport
    {
        std::vector<PipelineStage> stages;

        Interval interval;
        std::vector<VertexSet> parts;
        Rational alpha, epsilon, delta3;

        bool hypotheses_hold = false;
        bool regularity_certified = false;
        std::optional<CliqueCensus> census;

        /// Set when the sparse search met a red copy instead.
        std::optional<EmbeddingMap> red_copy;

        std::optional<EmbeddingMap> copy;
        std::optional<unsigned> copy_colour;
        bool copy_verified = false;
    };

    struct ToyInstance
    {
        EdgeOrderedGraph host;
        EdgeOrderedGraph pattern;
        Coloring coloring;
        std::vector<VertexSet> parts;
        Interval interval;
    };

    /**
     * Random K_60, pattern lex K_3, parts of 20, interval [1, 1593] so every
     * block has 531 ranks and alpha = 3/10. Colour 1 (red) goes to edges
     * inside parts, to ranks above the interval, and to one product edge
     * per pair of parts; everything else is colour 2.
     */
    auto make_toy_instance(std::uint64_t seed) -> ToyInstance;

    /// Part sizes above max_exact_side need a seed for sampled regularity.
    auto run_pipeline(const EdgeOrderedGraph & g, const EdgeOrderedGraph & pattern, const Coloring & coloring,
            const PipelineOptions & options) -> PipelineReport;
}

#endif
