/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <eorders/containment.hh>
#include <eorders/pipeline.hh>
#include <eorders/arrows.hh>
#include <eorders/regularity.hh>

#include <algorithm>
#include <sstream>

using std::string;
using std::vector;

namespace eorders
{
    namespace
    {
        auto set_list(const vector<VertexSet> & parts) -> string
        {
            string result;
            for (auto & p : parts)
                result += (result.empty() ? "" : ",") + std::to_string(p.size());
            return result;
        }

        auto ceil_log2(unsigned long t) -> unsigned
        {
            unsigned h = 0;
            while ((1ul << h) < t)
                ++h;
            return h;
        }
    }

    auto run_pipeline(const EdgeOrderedGraph & g, const EdgeOrderedGraph & pattern, const Coloring & coloring,
            const PipelineOptions & options) -> PipelineReport
    {
        if (auto bad = validate(g))
            throw PreconditionViolation("host: " + *bad);
        if (auto bad = validate(pattern))
            throw PreconditionViolation("pattern: " + *bad);
        if (auto bad = validate(coloring, g.edge_count()))
            throw PreconditionViolation("colouring: " + *bad);
        if (pattern.edge_count() == 0)
            throw PreconditionViolation("pattern has no edges");

        PipelineReport report;
        Vertex n = pattern.vertex_count();
        auto stage = [&] (string name, bool ok, string detail) {
            report.stages.push_back(PipelineStage{std::move(name), ok, std::move(detail)});
        };

        vector<Edge> red_edges;
        for (auto & e : g.edges())
            if (options.red_colors.count(coloring.color(e.label)))
                red_edges.push_back(e);
        RankedAdjacency g1(g.vertex_count(), red_edges);
        stage("red-subgraph", true, "edges=" + std::to_string(red_edges.size()));

        Interval full{1, Rank(g.edge_count())};
        report.interval = options.interval.value_or(full);
        check_interval(report.interval, g.edge_count());

        if (options.parts) {
            report.parts = *options.parts;
            if (report.parts.size() != n)
                throw PreconditionViolation("need one part per pattern vertex");
            auto w = make_witness(g1, report.interval, report.parts);
            for (size_t i = 0 ; i < n ; ++i)
                for (size_t j = i + 1 ; j < n ; ++j)
                    if (! disjoint(report.parts[i], report.parts[j]))
                        throw PreconditionViolation("parts are not disjoint");
            stage("sparse", true, "source=given interval=" + to_string(report.interval) + " sizes=" + set_list(report.parts)
                    + " max_red_density=" + to_string(w.max_density()));
        }
        else {
            Rational delta2 = options.delta2.value_or(1 / pow(Rational(n), 6 * n));
            VertexSet all(g.vertex_count());
            for (Vertex v = 0 ; v < g.vertex_count() ; ++v)
                all[v] = v;
            auto outcome = iterate_sparse(g1, full, all, ceil_log2(n), delta2, pattern);
            if (auto found = std::get_if<PatternFound>(&outcome)) {
                report.red_copy = found->map;
                stage("sparse", false, "red copy of the pattern found");
                return report;
            }
            auto & w = std::get<SparseWitness>(outcome);
            report.interval = w.interval;
            report.parts.assign(w.sets.begin(), w.sets.begin() + n);
            stage("sparse", true, "source=search interval=" + to_string(report.interval) + " sizes=" + set_list(report.parts)
                    + " max_red_density=" + to_string(w.max_density()));
        }

        auto jp = equitable_interval_partition(report.interval, pattern);
        auto first = std::find_if(jp.pattern_edges.begin(), jp.pattern_edges.end(),
                [] (const Edge & e) { return e.u == 0 && e.v == 1; });
        auto & alpha_block = first != jp.pattern_edges.end() ? jp.blocks[first - jp.pattern_edges.begin()] : jp.blocks[0];
        report.alpha = Rational(alpha_block.length()) / Rational(pairs(g.vertex_count()));
        report.epsilon = options.epsilon.value_or(pow(report.alpha, 2 * n + 1) / 10);
        {
            std::ostringstream s;
            s << "blocks=";
            for (size_t j = 0 ; j < jp.blocks.size() ; ++j)
                s << (j ? "," : "") << to_string(jp.blocks[j]);
            s << " alpha=" << to_string(report.alpha) << " epsilon=" << to_string(report.epsilon);
            stage("partition", true, s.str());
        }

        auto f = build_product_graph(g, &coloring, report.parts, jp, options.red_colors);
        report.delta3 = 0;
        {
            std::ostringstream s;
            for (size_t i = 0 ; i < n ; ++i)
                for (size_t j = i + 1 ; j < n ; ++j) {
                    report.delta3 = std::max(report.delta3, f.red_density(i, j));
                    s << (s.tellp() ? " " : "") << "p" << i + 1 << "," << j + 1 << "=" << to_string(f.density(i, j))
                        << "/red=" << to_string(f.red_density(i, j));
                }
            stage("product", true, s.str());
        }

        {
            bool all_exact = true;
            uint64_t violations = 0;
            Rational worst = 0;
            for (size_t i = 0 ; i < n ; ++i)
                for (size_t j = i + 1 ; j < n ; ++j) {
                    auto a = report.parts[i].size(), b = report.parts[j].size();
                    VertexSet x(a), y(b);
                    for (size_t k = 0 ; k < a ; ++k)
                        x[k] = Vertex(k);
                    for (size_t k = 0 ; k < b ; ++k)
                        y[k] = Vertex(a + k);
                    bool exact = a <= max_exact_side && b <= max_exact_side;
                    if (! exact && ! options.seed)
                        throw PreconditionViolation("parts larger than " + std::to_string(max_exact_side)
                                + " need a seed for sampled regularity");
                    auto r = pair_regularity_check(f.pair_graph(i, j), x, y, report.alpha, report.epsilon,
                            exact ? CheckMode::exact : CheckMode::sampled, options.samples,
                            options.seed.value_or(0) + i * n + j);
                    all_exact = all_exact && exact;
                    violations += r.violations;
                    worst = std::max(worst, r.worst_deviation);
                }
            report.regularity_certified = all_exact && violations == 0;
            stage("regularity", report.regularity_certified, string("mode=") + (all_exact ? "exact" : "sampled")
                    + " violations=" + std::to_string(violations) + " worst_deviation=" + to_string(worst));
        }

        bool alpha_ok = report.alpha * Rational(n) < 1;
        bool delta_ok = report.delta3 * 8 * Rational(n) * Rational(n) < report.alpha;
        bool eps_ok = report.epsilon * 8 < pow(report.alpha, 2 * n + 1);
        report.hypotheses_hold = alpha_ok && delta_ok && eps_ok;
        stage("hypotheses", report.hypotheses_hold, string("alpha<1/n=") + (alpha_ok ? "yes" : "no")
                + " delta3<alpha/(8n^2)=" + (delta_ok ? "yes" : "no") + " epsilon<alpha^(2n+1)/8=" + (eps_ok ? "yes" : "no")
                + " delta3=" + to_string(report.delta3));

        if (alpha_ok) {
            report.census = clique_census(f, report.alpha, report.epsilon, options.budget);
            auto & c = *report.census;
            bool consistent = c.red_free + c.through_red_normal + c.through_red_non_normal >= c.total;
            stage("census", consistent, "total=" + std::to_string(c.total) + " red_free=" + std::to_string(c.red_free)
                    + " red_normal=" + std::to_string(c.through_red_normal) + " non_normal="
                    + std::to_string(c.through_non_normal) + " lower=" + to_string(floor(c.lower))
                    + " model=" + to_string(floor(c.model)));
        }
        else
            stage("census", false, "skipped: alpha is not below 1/n");

        auto clique = find_red_free_clique(f, options.budget);
        if (! clique) {
            stage("red-free-clique", false, "none");
            return report;
        }
        report.copy = *clique;
        report.copy_verified = verify_pull_back(g, &coloring, jp, options.red_colors, *report.copy)
            && verify_copy(g, pattern, *report.copy);
        report.copy_colour = monochromatic(g, coloring, pattern, *report.copy);
        string map;
        for (size_t i = 0 ; i < n ; ++i)
            map += (i ? "," : "") + std::to_string((*report.copy)[i] + 1);
        stage("red-free-clique", report.copy_verified, "vertices=" + map + " colour="
                + (report.copy_colour ? std::to_string(*report.copy_colour) : string("mixed")));
        return report;
    }

    auto make_toy_instance(std::uint64_t seed) -> ToyInstance
    {
        ToyInstance toy;
        toy.host = generate_random_host(60, seed);
        toy.pattern = lex_complete(3);
        toy.interval = Interval{1, 1593};
        for (Vertex i = 0 ; i < 3 ; ++i) {
            VertexSet part;
            for (Vertex v = 20 * i ; v < 20 * (i + 1) ; ++v)
                part.push_back(v);
            toy.parts.push_back(part);
        }

        auto jp = equitable_interval_partition(toy.interval, toy.pattern);
        toy.coloring.q = 2;
        toy.coloring.colors.assign(toy.host.edge_count(), 2);
        vector<bool> pair_done(3, false);
        for (auto & e : toy.host.edges_by_rank()) {
            Vertex a = e.u / 20, b = e.v / 20;
            bool red = a == b || ! toy.interval.contains(e.label);
            if (a != b) {
                auto k = std::min(a, b) + std::max(a, b) - 1;
                if (! pair_done[k] && jp.block(std::min(a, b), std::max(a, b)).contains(e.label)) {
                    pair_done[k] = true;
                    red = true;
                }
            }
            if (red)
                toy.coloring.colors[e.label - 1] = 1;
        }
        return toy;
    }
}
