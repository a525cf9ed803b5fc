/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <eorders/acceptance.hh>
#include <eorders/arrows.hh>
#include <eorders/bounds.hh>
#include <eorders/cli.hh>
#include <eorders/containment.hh>
#include <eorders/core.hh>
#include <eorders/embedding.hh>
#include <eorders/io.hh>
#include <eorders/pipeline.hh>
#include <eorders/regularity.hh>
#include <eorders/rng.hh>

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using std::optional;
using std::ostream;
using std::string;
using std::vector;

namespace eorders
{
    namespace
    {
        class UsageError : public std::runtime_error
        {
            public:
                using std::runtime_error::runtime_error;
        };

        auto load_eog(const string & path) -> EdgeOrderedGraph
        {
            return decode_eog(read_file(path));
        }

        auto rational_arg(const string & text, const string & flag) -> Rational
        {
            try {
                return parse_rational(text);
            }
            catch (const std::invalid_argument & e) {
                throw ParseError(0, flag + ": " + e.what());
            }
        }

        auto interval_arg(const string & text) -> Interval
        {
            auto colon = text.find(':');
            if (colon == string::npos)
                throw ParseError(0, "--interval: expected LO:HI, got '" + text + "'");
            try {
                size_t used_lo = 0, used_hi = 0;
                auto lo = std::stoul(text.substr(0, colon), &used_lo);
                auto hi = std::stoul(text.substr(colon + 1), &used_hi);
                if (used_lo != colon || used_hi != text.size() - colon - 1)
                    throw std::invalid_argument("trailing characters");
                return Interval{Rank(lo), Rank(hi)};
            }
            catch (const std::logic_error &) {
                throw ParseError(0, "--interval: expected LO:HI, got '" + text + "'");
            }
        }

        auto need(bool ok, const string & message) -> void
        {
            if (! ok)
                throw UsageError(message);
        }

        auto print_map(ostream & out, const EmbeddingMap & map) -> void
        {
            for (size_t v = 0 ; v < map.size() ; ++v)
                out << v + 1 << " " << map[v] + 1 << "\n";
        }

        auto print_set(ostream & out, const VertexSet & s) -> void
        {
            for (size_t k = 0 ; k < s.size() ; ++k)
                out << (k ? " " : "") << s[k] + 1;
        }

        auto print_witness(ostream & out, const SparseWitness & w) -> void
        {
            out << "witness\n";
            out << "interval " << to_string(w.interval) << "\n";
            for (size_t i = 0 ; i < w.sets.size() ; ++i) {
                out << "set " << i + 1 << ":";
                if (! w.sets[i].empty())
                    out << " ";
                print_set(out, w.sets[i]);
                out << "\n";
            }
            for (size_t i = 0 ; i < w.sets.size() ; ++i)
                for (size_t j = i + 1 ; j < w.sets.size() ; ++j)
                    out << "density " << i + 1 << " " << j + 1 << " " << to_string(w.densities[i][j]) << "\n";
        }

        auto mode_arg(const string & mode) -> ArrowMode
        {
            if (mode == "enumerate" || mode == "enum")
                return ArrowMode::enumerate;
            if (mode == "backtrack")
                return ArrowMode::backtrack;
            return ArrowMode::automatic;
        }

        auto mode_name(ArrowMode mode) -> const char *
        {
            switch (mode) {
                case ArrowMode::enumerate: return "enumerate";
                case ArrowMode::backtrack: return "backtrack";
                case ArrowMode::automatic: return "auto";
            }
            return "auto";
        }

        auto write_text(const string & path, const string & text) -> void
        {
            std::ofstream f(path, std::ios::binary);
            if (! f)
                throw ParseError(0, "cannot write '" + path + "'");
            f << text;
        }

        auto named_pattern(const string & name) -> EdgeOrderedGraph
        {
            if (name == "triangle")
                return lex_complete(3);
            if (name == "edge")
                return lex_complete(2);
            return load_eog(name);
        }

        struct ArrowFlags
        {
            string mode = "auto";
            unsigned workers = 1;
            std::uint64_t max_colorings = std::uint64_t(1) << 24;
            std::uint64_t node_limit = 0;
            bool no_symmetry = false;

            auto add(CLI::App * app) -> void
            {
                app->add_option("--mode", mode, "enumerate (enum), backtrack or auto")
                    ->check(CLI::IsMember({"enumerate", "enum", "backtrack", "auto"}));
                app->add_option("--workers", workers, "worker threads")->check(CLI::Range(1u, 256u));
                app->add_option("--max-colorings", max_colorings, "enumeration limit");
                app->add_option("--node-limit", node_limit, "backtracking node limit, 0 for none");
                app->add_flag("--no-symmetry", no_symmetry, "do not fix the colour of rank 1");
            }

            auto options() const -> ArrowOptions
            {
                ArrowOptions o;
                o.mode = mode_arg(mode);
                o.workers = workers;
                o.max_colorings = max_colorings;
                o.node_limit = node_limit;
                o.symmetry_reduction = ! no_symmetry;
                return o;
            }
        };

        auto status_exit(ArrowStatus s) -> int
        {
            switch (s) {
                case ArrowStatus::arrows: return exit_code::ok;
                case ArrowStatus::not_arrows: return exit_code::negative;
                case ArrowStatus::budget_exhausted: return exit_code::budget;
            }
            return exit_code::budget;
        }

        auto search_exit(SearchStatus s) -> int
        {
            switch (s) {
                case SearchStatus::found: return exit_code::ok;
                case SearchStatus::none: return exit_code::negative;
                case SearchStatus::budget_exhausted: return exit_code::budget;
            }
            return exit_code::budget;
        }

        auto run(const vector<string> & args, ostream & out, ostream & err) -> int
        {
            CLI::App app{"Edge-ordered Ramsey toolkit", "eorders"};
            app.require_subcommand(1);

            // gen
            auto * gen = app.add_subcommand("gen", "generate hosts, colourings and the toy pipeline instance");
            string gen_kind, gen_out;
            unsigned long gen_n = 0, gen_m = 0, gen_labels = 2, gen_q = 2;
            optional<std::uint64_t> seed_gen;
            gen->add_option("--kind", gen_kind, "random, labeled, lex, coloring or toy; default random, or labeled with --labels")
                ->check(CLI::IsMember({"random", "labeled", "lex", "coloring", "toy"}));
            gen->add_option("--n", gen_n, "vertices");
            gen->add_option("--m", gen_m, "edges to colour");
            gen->add_option("--labels", gen_labels, "label universe size");
            gen->add_option("--q", gen_q, "colours");
            gen->add_option("--seed", seed_gen, "random seed");
            gen->add_option("--out", gen_out, "output file (prefix for toy)");

            // find
            auto * find = app.add_subcommand("find", "find an order-preserving copy");
            string find_host, find_pattern, find_coloring;
            unsigned find_color = 0;
            std::uint64_t find_limit = 0;
            bool find_labeled = false;
            find->add_option("--host", find_host, "host .eog, or .elg with --labeled")->required();
            find->add_option("--pattern", find_pattern, "pattern .eog, or .elg with --labeled")->required();
            find->add_flag("--labeled", find_labeled, "match edge labels exactly");
            find->add_option("--coloring", find_coloring, "host colouring .col");
            find->add_option("--color", find_color, "colour class to search");
            find->add_option("--node-limit,--budget", find_limit, "search node limit, 0 for none");

            // arrows
            auto * arr = app.add_subcommand("arrows", "decide host -> (targets) for colourings");
            string arr_host;
            vector<string> arr_targets;
            optional<unsigned> arr_q;
            ArrowFlags arr_flags;
            arr->add_option("--host", arr_host, "host .eog")->required();
            arr->add_option("--target", arr_targets, "target .eog, one per colour")->required();
            arr->add_option("--q", arr_q, "colours")->check(CLI::Range(1u, 255u));
            arr_flags.add(arr);

            // ramsey
            auto * ram = app.add_subcommand("ramsey", "smallest complete host that arrows the pattern");
            string ram_pattern, ram_strategy = "exhaustive";
            unsigned ram_q = 2;
            unsigned ram_nmax = 8;
            ArrowFlags ram_flags;
            ram->add_option("--pattern", ram_pattern, "triangle, edge or a .eog file")->required();
            ram->add_option("--q", ram_q, "colours")->check(CLI::Range(1u, 255u));
            ram->add_option("--n-max,--nmax", ram_nmax, "largest host size tried");
            ram->add_option("--strategy,--hosts", ram_strategy, "lex, or exhaustive (all)")
                ->check(CLI::IsMember({"lex", "exhaustive", "all"}));
            ram_flags.add(ram);

            // check-regular
            auto * reg = app.add_subcommand("check-regular", "regularity statistics");
            string reg_host, reg_labeled, reg_parts, reg_eps, reg_alpha, reg_interval;
            std::uint64_t reg_samples = 1000;
            optional<std::uint64_t> reg_seed;
            unsigned reg_workers = 1;
            std::size_t reg_set_size = 0;
            bool reg_exact = false;
            reg->add_option("--host", reg_host, "host .eog");
            reg->add_option("--labeled", reg_labeled, "labeled host .elg");
            reg->add_option("--parts", reg_parts, "two parts for a pair check");
            reg->add_option("--interval", reg_interval, "LO:HI for the pair check");
            reg->add_option("--alpha", reg_alpha, "pair density target");
            reg->add_option("--epsilon", reg_eps, "epsilon");
            reg->add_option("--samples", reg_samples, "samples");
            reg->add_option("--seed", reg_seed, "random seed");
            reg->add_option("--workers", reg_workers, "worker threads")->check(CLI::Range(1u, 256u));
            reg->add_option("--set-size", reg_set_size, "set size for label densities");
            reg->add_flag("--exact", reg_exact, "certify the pair exactly");

            // embed
            auto * emb = app.add_subcommand("embed", "greedy embedding or sparse witness");
            string emb_host, emb_pattern, emb_interval, emb_parts, emb_delta;
            bool emb_trace = false;
            optional<unsigned> emb_levels;
            emb->add_option("--host", emb_host, "host .eog")->required();
            emb->add_option("--pattern", emb_pattern, "pattern .eog")->required();
            emb->add_option("--interval", emb_interval, "LO:HI")->required();
            emb->add_option("--parts", emb_parts, "one part per pattern vertex")->required();
            emb->add_option("--delta", emb_delta, "delta1, or delta2 with --levels")->required();
            emb->add_flag("--trace", emb_trace, "print the candidate sets after each step");
            emb->add_option("--levels", emb_levels, "iterate the amplification this many times over the union of the parts");

            // pipeline
            auto * pip = app.add_subcommand("pipeline", "product graph, census and red-free clique");
            string pip_host, pip_pattern, pip_coloring, pip_parts, pip_interval, pip_eps, pip_delta;
            vector<unsigned> pip_red{1};
            optional<std::uint64_t> pip_seed;
            std::uint64_t pip_samples = 200, pip_limit = 0;
            pip->add_option("--host", pip_host, "host .eog")->required();
            pip->add_option("--pattern", pip_pattern, "pattern .eog")->required();
            pip->add_option("--coloring", pip_coloring, "colouring .col")->required();
            pip->add_option("--red", pip_red, "red colours");
            pip->add_option("--parts", pip_parts, "sparse sets, one per pattern vertex");
            pip->add_option("--interval", pip_interval, "LO:HI for the sparse sets");
            pip->add_option("--epsilon", pip_eps, "regularity epsilon");
            pip->add_option("--delta", pip_delta, "delta2 for the sparse search");
            pip->add_option("--seed", pip_seed, "seed for sampled regularity");
            pip->add_option("--samples", pip_samples, "regularity samples per pair");
            pip->add_option("--node-limit", pip_limit, "clique search node limit");

            // bounds
            auto * bnd = app.add_subcommand("bounds", "closed-form bounds and schedules");
            bnd->set_help_flag("--help", "Print this help message and exit");
            string bnd_theorem, bnd_schedule, bnd_delta;
            unsigned long bnd_n = 0, bnd_q = 2, bnd_d = 1, bnd_m = 2;
            unsigned bnd_h = 0, bnd_k = 1;
            auto * theorem_opt = bnd->add_option("--theorem", bnd_theorem, "1.2, 1.4, 1.5, 1.6 or weak")
                ->check(CLI::IsMember({"1.2", "1.4", "1.5", "1.6", "weak"}));
            auto * schedule_opt = bnd->add_option("--schedule", bnd_schedule, "sparse, multicolor or greedy")
                ->check(CLI::IsMember({"sparse", "multicolor", "greedy"}));
            theorem_opt->excludes(schedule_opt);
            bnd->add_option("--n", bnd_n, "pattern vertices")->required();
            bnd->add_option("--q", bnd_q, "colours");
            bnd->add_option("--d", bnd_d, "degeneracy");
            bnd->add_option("--m", bnd_m, "pattern edges");
            bnd->add_option("--h", bnd_h, "iteration level");
            bnd->add_option("--k", bnd_k, "colour level");
            bnd->add_option("--delta", bnd_delta, "delta for schedules");

            // count-classes
            auto * cnt = app.add_subcommand("count-classes", "equivalence classes of orderings of K_n");
            unsigned cnt_n = 0;
            cnt->add_option("--n", cnt_n, "vertices")->required();

            // selftest
            auto * st = app.add_subcommand("selftest", "acceptance suite and golden files");
            string st_filter, st_golden = EORDERS_GOLDEN_DIR;
            st->add_option("--filter", st_filter, "criterion number, tag, golden or golden:NAME");
            st->add_option("--golden-dir", st_golden, "golden directory");

            try {
                app.parse(vector<string>(args.rbegin(), args.rend()));
            }
            catch (const CLI::CallForHelp &) {
                out << app.help();
                return exit_code::ok;
            }
            catch (const CLI::CallForAllHelp &) {
                out << app.help("", CLI::AppFormatMode::All);
                return exit_code::ok;
            }
            catch (const CLI::ParseError & e) {
                err << "eorders: " << e.what() << "\n";
                return exit_code::usage;
            }

            if (*gen) {
                if (gen_kind.empty())
                    gen_kind = gen->count("--labels") ? "labeled" : "random";
                if (gen_kind == "lex") {
                    need(gen_n >= 1, "gen lex needs --n");
                    auto text = encode(lex_complete(Vertex(gen_n)));
                    gen_out.empty() ? void(out << text) : write_text(gen_out, text);
                    return exit_code::ok;
                }
                need(seed_gen.has_value(), "gen --kind " + gen_kind + " needs --seed");
                if (gen_kind == "random") {
                    need(gen_n >= 1, "gen random needs --n");
                    need(gen_n <= 8192, "gen random: --n at most 8192");
                    auto text = encode(generate_random_host(Vertex(gen_n), *seed_gen));
                    gen_out.empty() ? void(out << text) : write_text(gen_out, text);
                }
                else if (gen_kind == "labeled") {
                    need(gen_n >= 1 && gen_labels >= 1, "gen labeled needs --n and --labels");
                    auto text = encode(generate_labeled_host(Vertex(gen_n), std::uint32_t(gen_labels), *seed_gen));
                    gen_out.empty() ? void(out << text) : write_text(gen_out, text);
                }
                else if (gen_kind == "coloring") {
                    need(gen_q >= 1 && gen_q <= 255, "gen coloring: --q must lie in [1, 255]");
                    Rng rng(*seed_gen);
                    Coloring c;
                    c.q = unsigned(gen_q);
                    for (unsigned long r = 0 ; r < gen_m ; ++r)
                        c.colors.push_back(std::uint8_t(1 + rng.below(gen_q)));
                    auto text = encode(c);
                    gen_out.empty() ? void(out << text) : write_text(gen_out, text);
                }
                else {
                    need(! gen_out.empty(), "gen toy needs --out PREFIX");
                    auto toy = make_toy_instance(*seed_gen);
                    write_text(gen_out + ".eog", encode(toy.host));
                    write_text(gen_out + "-pattern.eog", encode(toy.pattern));
                    write_text(gen_out + ".col", encode(toy.coloring));
                    write_text(gen_out + ".parts", encode_parts(toy.parts));
                    out << "interval=" << toy.interval.lo << ":" << toy.interval.hi << "\n";
                }
                return exit_code::ok;
            }

            if (*find && find_labeled) {
                need(find_coloring.empty(), "find --labeled does not take --coloring");
                auto host = decode_elg(read_file(find_host));
                auto pattern = decode_elg(read_file(find_pattern));
                auto r = find_copy_labeled(host, pattern, SearchBudget{find_limit, 0.0});
                out << to_string(r.status) << "\n";
                if (r.status == SearchStatus::found)
                    print_map(out, r.map);
                out << "#= status=" << to_string(r.status) << " nodes=" << r.nodes << "\n";
                return search_exit(r.status);
            }

            if (*find) {
                auto host = load_eog(find_host);
                auto pattern = load_eog(find_pattern);
                SearchBudget budget{find_limit, 0.0};
                SearchResult r;
                if (! find_coloring.empty()) {
                    need(find_color >= 1, "find --coloring needs --color");
                    auto c = decode_coloring(read_file(find_coloring));
                    need(find_color <= c.q, "find: --color exceeds the colour count");
                    if (auto bad = validate(c, host.edge_count()))
                        throw ParseError(0, find_coloring + ": " + *bad);
                    r = find_monochromatic_copy(host, c, pattern, find_color, budget);
                }
                else
                    r = find_copy(host, pattern, budget);
                out << to_string(r.status) << "\n";
                if (r.status == SearchStatus::found)
                    print_map(out, r.map);
                out << "#= status=" << to_string(r.status) << " nodes=" << r.nodes << "\n";
                return search_exit(r.status);
            }

            if (*arr) {
                auto host = load_eog(arr_host);
                vector<EdgeOrderedGraph> targets;
                for (auto & t : arr_targets)
                    targets.push_back(load_eog(t));
                if (arr_q) {
                    if (targets.size() == 1)
                        targets.assign(*arr_q, targets.front());
                    need(targets.size() == *arr_q, "arrows: --q must equal the number of targets");
                }
                auto v = arrows(host, targets, arr_flags.options());
                out << to_string(v.status) << "\n";
                if (v.certificate)
                    out << encode(*v.certificate);
                out << "#= status=" << to_string(v.status) << " mode=" << mode_name(v.mode_used) << " work=" << v.work
                    << " symmetry=" << (v.symmetry_reduced ? "true" : "false") << "\n";
                return status_exit(v.status);
            }

            if (*ram) {
                auto pattern = named_pattern(ram_pattern);
                auto r = ramsey_search(pattern, ram_q, Vertex(ram_nmax),
                        ram_strategy == "lex" ? HostStrategy::lex_only : HostStrategy::exhaustive, ram_flags.options());
                const char * status = r.status == RamseyStatus::found ? "found"
                    : r.status == RamseyStatus::not_found ? "not-found" : "budget-exhausted";
                if (r.status == RamseyStatus::found)
                    out << r.n << "\n";
                else
                    out << status << "\n";
                out << "#= status=" << status << " n=" << r.n << " upper_bound=" << (r.upper_bound ? "true" : "false")
                    << " orderings=" << r.orderings_tested << "\n";
                return r.status == RamseyStatus::found ? exit_code::ok
                    : r.status == RamseyStatus::not_found ? exit_code::negative : exit_code::budget;
            }

            if (*reg) {
                if (! reg_labeled.empty()) {
                    need(reg_seed.has_value(), "check-regular needs --seed");
                    auto g = decode_elg(read_file(reg_labeled));
                    std::size_t size = reg_set_size ? reg_set_size : std::max<std::size_t>(1, g.n / 8);
                    auto r = sample_label_densities(g, size, reg_samples, *reg_seed);
                    Rational floor_value(1, 2 * g.label_count);
                    out << "samples=" << r.samples << " set_size=" << size << " min_label_density="
                        << to_string(r.minimum) << " label=" << r.minimum_label << "\n";
                    out << "#= above_half_share=" << (r.minimum >= floor_value ? "true" : "false") << "\n";
                    return exit_code::ok;
                }
                need(! reg_host.empty(), "check-regular needs --host or --labeled");
                need(! reg_eps.empty(), "check-regular needs --epsilon");
                auto g = load_eog(reg_host);
                Rational eps = rational_arg(reg_eps, "--epsilon");
                RegularityReport r;
                if (! reg_parts.empty()) {
                    auto parts = decode_parts(read_file(reg_parts), g.vertex_count());
                    need(parts.size() == 2, "check-regular --parts needs exactly two parts");
                    need(! reg_alpha.empty(), "check-regular --parts needs --alpha");
                    Interval interval = reg_interval.empty() ? Interval{1, Rank(g.edge_count())} : interval_arg(reg_interval);
                    check_interval(interval, g.edge_count());
                    need(reg_exact || reg_seed.has_value(), "sampled pair check needs --seed");
                    r = pair_regularity_check(restrict(g, interval), parts[0], parts[1], rational_arg(reg_alpha, "--alpha"),
                            eps, reg_exact ? CheckMode::exact : CheckMode::sampled, reg_samples, reg_seed.value_or(0));
                }
                else {
                    if (reg_exact)
                        throw InfeasibleSize("exact certification covers single pairs only; give --parts");
                    need(reg_seed.has_value(), "check-regular needs --seed");
                    r = check_host_regularity(g, eps, reg_samples, *reg_seed, reg_workers);
                }
                out << "samples=" << r.samples << " violations=" << r.violations << " worst_deviation="
                    << to_string(r.worst_deviation) << "\n";
                if (r.witness_interval)
                    out << "worst_interval=" << to_string(*r.witness_interval) << "\n";
                out << "#= mode=" << to_string(r.mode) << " certified=" << (r.certified() ? "true" : "false") << "\n";
                return exit_code::ok;
            }

            if (*emb) {
                auto host = load_eog(emb_host);
                auto pattern = load_eog(emb_pattern);
                auto interval = interval_arg(emb_interval);
                check_interval(interval, host.edge_count());
                auto parts = decode_parts(read_file(emb_parts), host.vertex_count());
                Rational delta = rational_arg(emb_delta, "--delta");
                RankedAdjacency adj(host);
                if (emb_levels) {
                    vector<Vertex> all;
                    for (auto & p : parts)
                        all.insert(all.end(), p.begin(), p.end());
                    auto outcome = iterate_sparse(adj, interval, make_vertex_set(all), *emb_levels, delta, pattern);
                    if (auto found = std::get_if<PatternFound>(&outcome)) {
                        out << "embedding\n";
                        print_map(out, found->map);
                        out << "#= outcome=embedding\n";
                    }
                    else {
                        auto & w = std::get<SparseWitness>(outcome);
                        print_witness(out, w);
                        out << "#= outcome=witness sets=" << w.sets.size() << " max_density=" << to_string(w.max_density()) << "\n";
                    }
                    return exit_code::ok;
                }
                need(parts.size() == pattern.vertex_count(), "embed: need one part per pattern vertex");
                auto outcome = greedy_embed(adj, pattern, interval, parts, delta, emb_trace);
                if (emb_trace)
                    for (auto & s : outcome.trace) {
                        out << "step " << s.step << " placed=";
                        for (size_t k = 0 ; k < s.placed.size() ; ++k)
                            out << (k ? "," : "") << s.placed[k] + 1;
                        out << " sizes=";
                        for (size_t k = 0 ; k < s.candidates.size() ; ++k)
                            out << (k ? "," : "") << s.candidates[k].size();
                        out << "\n";
                    }
                if (outcome.embedded()) {
                    out << "embedding\n";
                    print_map(out, outcome.embedding());
                    out << "#= outcome=embedding\n";
                }
                else {
                    auto & w = outcome.witness();
                    print_witness(out, w);
                    out << "#= outcome=witness origin=" << w.origin->first + 1 << "," << w.origin->second + 1
                        << " max_density=" << to_string(w.max_density()) << "\n";
                }
                return exit_code::ok;
            }

            if (*pip) {
                auto host = load_eog(pip_host);
                auto pattern = load_eog(pip_pattern);
                auto coloring = decode_coloring(read_file(pip_coloring));
                if (auto bad = validate(coloring, host.edge_count()))
                    throw ParseError(0, pip_coloring + ": " + *bad);
                PipelineOptions o;
                o.red_colors = std::set<unsigned>(pip_red.begin(), pip_red.end());
                if (! pip_parts.empty())
                    o.parts = decode_parts(read_file(pip_parts), host.vertex_count());
                if (! pip_interval.empty())
                    o.interval = interval_arg(pip_interval);
                if (! pip_eps.empty())
                    o.epsilon = rational_arg(pip_eps, "--epsilon");
                if (! pip_delta.empty())
                    o.delta2 = rational_arg(pip_delta, "--delta");
                o.seed = pip_seed;
                o.samples = pip_samples;
                o.budget.node_limit = pip_limit;
                auto r = run_pipeline(host, pattern, coloring, o);
                for (auto & s : r.stages)
                    out << "stage " << s.name << " " << (s.ok ? "ok" : "fail") << " " << s.detail << "\n";
                if (r.red_copy) {
                    out << "red-copy\n";
                    print_map(out, *r.red_copy);
                }
                if (r.copy) {
                    out << "copy\n";
                    print_map(out, *r.copy);
                }
                out << "#= copy=" << (r.copy ? "found" : "none") << " verified=" << (r.copy_verified ? "true" : "false")
                    << " colour=" << (r.copy_colour ? std::to_string(*r.copy_colour) : string("none"))
                    << " hypotheses=" << (r.hypotheses_hold ? "true" : "false")
                    << " regular=" << (r.regularity_certified ? "true" : "false") << "\n";
                return r.copy && r.copy_verified ? exit_code::ok : exit_code::negative;
            }

            if (*bnd) {
                if (! bnd_schedule.empty()) {
                    need(! bnd_delta.empty(), "bounds --schedule needs --delta");
                    Rational delta = rational_arg(bnd_delta, "--delta");
                    if (bnd_schedule == "sparse") {
                        auto [alpha, gamma] = sparse_schedule(bnd_n, bnd_d, delta, bnd_h);
                        out << "alpha=" << to_string(alpha) << "\ngamma=" << to_string(gamma) << "\n";
                    }
                    else if (bnd_schedule == "greedy") {
                        auto p = greedy_parameters(bnd_n, bnd_d, delta);
                        out << "alpha=" << to_string(p.alpha) << "\ngamma=" << to_string(p.gamma) << "\ndelta="
                            << to_string(p.delta) << "\n";
                    }
                    else {
                        auto s = multicolor_schedule(bnd_n, bnd_k, bnd_h, delta);
                        out << "alpha=" << bnd_n << "^-" << to_string(s.alpha_exponent) << "\ngamma=(" << to_string(s.gamma_base)
                            << ")^" << s.gamma_exponent.to_string() << "\n";
                    }
                    out << "#= schedule=" << bnd_schedule << " n=" << bnd_n << "\n";
                    return exit_code::ok;
                }
                need(! bnd_theorem.empty(), "bounds needs --theorem or --schedule");
                if (bnd_theorem == "1.6") {
                    auto p = labeled_parameters(bnd_n, bnd_m, bnd_q);
                    out << "L=" << to_string(p.L) << "\nQ=" << to_string(p.Q) << "\nepsilon=" << to_string(p.epsilon) << "\n";
                    char buffer[160];
                    std::snprintf(buffer, sizeof(buffer), "log2k<=%.12g\nlog2beta_inv<=%.12g\nlog2log2N<=%.12g\n",
                            p.log2_k_bound, p.log2_beta_inverse_bound, p.log2_log2_n_estimate);
                    out << buffer;
                    out << "#= theorem=1.6 n=" << bnd_n << " m=" << bnd_m << " q=" << bnd_q << "\n";
                    return exit_code::ok;
                }
                LogExpression e = bnd_theorem == "1.2" ? bound_two_color(bnd_n)
                    : bnd_theorem == "1.4" ? bound_multicolor(bnd_n, bnd_q)
                    : bnd_theorem == "1.5" ? bound_degenerate(bnd_n, bnd_d)
                    : bound_weak(bnd_n);
                out << "log2N=" << e.to_string() << "\n";
                out << "#= theorem=" << bnd_theorem << " n=" << bnd_n << " exact=" << (e.exact() ? "true" : "false") << "\n";
                return exit_code::ok;
            }

            if (*cnt) {
                out << count_equivalence_classes(cnt_n) << "\n";
                return exit_code::ok;
            }

            if (*st) {
                int failures = 0;
                bool golden_only = st_filter == "golden" || st_filter.rfind("golden:", 0) == 0;
                if (! golden_only)
                    failures += run_acceptance(st_filter, st_golden + "/fixtures", out);
                bool criterion_only = ! st_filter.empty() && ! golden_only;
                if (! criterion_only)
                    failures += run_golden(st_golden, st_filter.rfind("golden:", 0) == 0 ? st_filter.substr(7) : "", out);
                out << "#= failures=" << failures << "\n";
                return failures == 0 ? exit_code::ok : exit_code::negative;
            }

            return exit_code::usage;
        }
    }

    auto dispatch(const vector<string> & args, ostream & out, ostream & err) -> int
    {
        try {
            return run(args, out, err);
        }
        catch (const UsageError & e) {
            err << "eorders: " << e.what() << "\n";
            return exit_code::usage;
        }
        catch (const PreconditionViolation & e) {
            err << "eorders: " << e.what() << "\n";
            return exit_code::usage;
        }
        catch (const ParseError & e) {
            err << "eorders: " << e.what() << "\n";
            return exit_code::parse;
        }
        catch (const InfeasibleSize & e) {
            err << "eorders: infeasible: " << e.what() << "\n";
            return exit_code::infeasible;
        }
        catch (const BudgetExhausted & e) {
            err << "eorders: budget: " << e.what() << "\n";
            return exit_code::budget;
        }
    }

    auto golden_output(const vector<string> & args) -> string
    {
        std::ostringstream out, err;
        int code = dispatch(args, out, err);
        return out.str() + "exit=" + std::to_string(code) + "\n";
    }

    auto run_golden(const string & dir, const string & filter, ostream & out) -> int
    {
        namespace fs = std::filesystem;
        vector<fs::path> cases;
        if (fs::is_directory(dir))
            for (auto & entry : fs::directory_iterator(dir))
                if (entry.path().extension() == ".args")
                    cases.push_back(entry.path());
        std::sort(cases.begin(), cases.end());

        int failures = 0;
        for (auto & c : cases) {
            auto name = c.stem().string();
            if (! filter.empty() && filter != name)
                continue;
            vector<string> args;
            {
                std::ifstream f(c);
                for (string line ; std::getline(f, line) ; ) {
                    if (line.empty())
                        continue;
                    for (size_t at ; (at = line.find("{fixtures}")) != string::npos ; )
                        line.replace(at, 10, dir + "/fixtures");
                    args.push_back(line);
                }
            }
            string expected;
            {
                std::ifstream f(fs::path(dir) / (name + ".out"), std::ios::binary);
                std::ostringstream s;
                s << f.rdbuf();
                expected = s.str();
            }
            bool ok = ! expected.empty() && golden_output(args) == expected;
            out << (ok ? "PASS" : "FAIL") << " golden:" << name << "\n";
            failures += ! ok;
        }
        return failures;
    }
}
