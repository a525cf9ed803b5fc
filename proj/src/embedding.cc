/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <eorders/bounds.hh>
#include <eorders/embedding.hh>
#include <eorders/rng.hh>

#include <algorithm>
#include <atomic>
#include <bit>
#include <stdexcept>
#include <thread>

using std::optional;
using std::pair;
using std::set;
using std::size_t;
using std::string;
using std::uint64_t;
using std::vector;

namespace eorders
{
    auto equitable_blocks(const Interval & interval, uint64_t m) -> vector<Interval>
    {
        if (interval.empty())
            throw PreconditionViolation("empty interval");
        if (m == 0 || interval.length() < m)
            throw PreconditionViolation("interval " + to_string(interval) + " too small for "
                    + std::to_string(m) + " blocks");

        // I = [a + 1, a'], block j = [a + 1 + floor((a' - a)(j - 1) / m), a + floor((a' - a) j / m)]
        uint64_t a = uint64_t(interval.lo) - 1, len = interval.length();
        vector<Interval> result;
        result.reserve(m);
        for (uint64_t j = 1 ; j <= m ; ++j)
            result.push_back(Interval{Rank(a + 1 + (len * (j - 1)) / m), Rank(a + (len * j) / m)});
        return result;
    }

    auto IntervalPartition::block(Vertex u, Vertex v) const -> const Interval &
    {
        if (u > v)
            std::swap(u, v);
        for (size_t j = 0 ; j < pattern_edges.size() ; ++j)
            if (pattern_edges[j].u == u && pattern_edges[j].v == v)
                return blocks[j];
        throw PreconditionViolation("not a pattern edge");
    }

    auto equitable_interval_partition(const Interval & interval, const EdgeOrderedGraph & pattern) -> IntervalPartition
    {
        IntervalPartition result;
        result.source = interval;
        result.pattern_edges = pattern.edges_by_rank();
        result.blocks = equitable_blocks(interval, result.pattern_edges.size());
        return result;
    }

    auto SparseWitness::max_density() const -> Rational
    {
        Rational result = 0;
        for (auto & row : densities)
            for (auto & d : row)
                if (d > result)
                    result = d;
        return result;
    }

    auto make_witness(const RankedAdjacency & g1, const Interval & interval, vector<VertexSet> sets,
            optional<pair<Vertex, Vertex>> origin) -> SparseWitness
    {
        SparseWitness result;
        result.interval = interval;
        result.origin = origin;
        result.densities.assign(sets.size(), vector<Rational>(sets.size(), Rational(0)));
        for (size_t i = 0 ; i < sets.size() ; ++i)
            for (size_t j = i + 1 ; j < sets.size() ; ++j)
                result.densities[i][j] = result.densities[j][i] = g1.density(sets[i], sets[j], interval);
        result.sets = std::move(sets);
        return result;
    }

    auto verify_witness(const RankedAdjacency & g1, const SparseWitness & witness, const Rational & delta) -> optional<string>
    {
        auto t = witness.sets.size();
        if (t == 0)
            return "no sets";
        if (witness.interval.empty())
            return "empty interval";
        if (witness.densities.size() != t)
            return "density table has the wrong shape";
        for (size_t i = 0 ; i < t ; ++i) {
            auto & s = witness.sets[i];
            if (s.empty())
                return "set " + std::to_string(i + 1) + " is empty";
            if (! std::is_sorted(s.begin(), s.end()) || std::adjacent_find(s.begin(), s.end()) != s.end())
                return "set " + std::to_string(i + 1) + " is not a sorted set";
            if (s.back() >= g1.vertex_count())
                return "set " + std::to_string(i + 1) + " has a vertex out of range";
            if (witness.densities[i].size() != t)
                return "density table has the wrong shape";
        }
        for (size_t i = 0 ; i < t ; ++i)
            for (size_t j = i + 1 ; j < t ; ++j) {
                auto tag = std::to_string(i + 1) + "," + std::to_string(j + 1);
                if (! disjoint(witness.sets[i], witness.sets[j]))
                    return "sets " + tag + " overlap";
                Rational d = g1.density(witness.sets[i], witness.sets[j], witness.interval);
                if (d != witness.densities[i][j] || d != witness.densities[j][i])
                    return "stored density for " + tag + " is wrong";
                if (! (d < delta))
                    return "density " + to_string(d) + " for " + tag + " is not below " + to_string(delta);
            }
        return std::nullopt;
    }

    namespace
    {
        auto filter(const VertexSet & x, auto keep) -> VertexSet
        {
            VertexSet result;
            for (Vertex v : x)
                if (keep(v))
                    result.push_back(v);
            return result;
        }

        auto check_parts(const vector<VertexSet> & parts, Vertex host_n) -> VertexSet
        {
            vector<Vertex> all;
            for (auto & p : parts) {
                if (! std::is_sorted(p.begin(), p.end()) || std::adjacent_find(p.begin(), p.end()) != p.end())
                    throw PreconditionViolation("parts must be sorted sets");
                for (Vertex v : p) {
                    if (v >= host_n)
                        throw PreconditionViolation("part vertex out of range");
                    all.push_back(v);
                }
            }
            auto size = all.size();
            auto x = make_vertex_set(std::move(all));
            if (x.size() != size)
                throw PreconditionViolation("parts are not disjoint");
            return x;
        }
    }

    auto greedy_embed(const RankedAdjacency & g1, const EdgeOrderedGraph & pattern, const Interval & interval,
            const vector<VertexSet> & parts, const Rational & delta1, bool record_trace) -> EmbedOutcome
    {
        Vertex n = pattern.vertex_count();
        if (pattern.edge_count() == 0)
            throw PreconditionViolation("pattern has no edges");
        if (delta1 <= 0 || delta1 * n >= 1)
            throw PreconditionViolation("delta1 must lie in (0, 1/n)");
        if (interval.empty() || interval.length() < uint64_t(n) * n)
            throw PreconditionViolation("interval shorter than n^2");
        if (parts.size() != n)
            throw PreconditionViolation("need one part per pattern vertex");
        auto x = check_parts(parts, g1.vertex_count());
        for (auto & p : parts)
            if (p.empty() || Rational(p.size()) < delta1 * Rational(x.size()))
                throw PreconditionViolation("a part is smaller than delta1 |X|");

        EmbedOutcome outcome;
        outcome.order = degeneracy_order(pattern).order;
        outcome.partition = equitable_interval_partition(interval, pattern);

        vector<Vertex> position(n);
        for (Vertex p = 0 ; p < n ; ++p)
            position[outcome.order[p]] = p;

        // block[s][t] for positions s < t joined in the pattern
        vector<vector<optional<Interval>>> block(n, vector<optional<Interval>>(n));
        for (size_t j = 0 ; j < outcome.partition.pattern_edges.size() ; ++j) {
            auto & e = outcome.partition.pattern_edges[j];
            auto s = position[e.u], t = position[e.v];
            block[s][t] = block[t][s] = outcome.partition.blocks[j];
        }

        EmbeddingState state;
        state.placed.clear();
        state.back_degree.assign(n, 0);
        for (Vertex p = 0 ; p < n ; ++p)
            state.candidates.push_back(parts[outcome.order[p]]);
        if (record_trace)
            outcome.trace.push_back(state);

        for (Vertex t = 0 ; t < n ; ++t) {
            auto & here = state.candidates[t];
            vector<Vertex> forward;
            for (Vertex i = t + 1 ; i < n ; ++i)
                if (block[t][i])
                    forward.push_back(i);

            vector<uint8_t> low(g1.vertex_count(), 0);
            for (Vertex i : forward) {
                auto & there = state.candidates[i];
                Membership in_there(g1.vertex_count(), there);
                Integer threshold = strict_threshold(delta1 * Rational(there.size()));
                VertexSet low_set = filter(here, [&] (Vertex v) {
                        return Integer(static_cast<unsigned long>(g1.degree(v, in_there, *block[t][i]))) < threshold; });

                uint64_t remaining = n - 1 - t;
                if (low_set.size() * remaining >= here.size()) {
                    outcome.result = make_witness(g1, *block[t][i], {low_set, there},
                            pair{outcome.order[t], outcome.order[i]});
                    return outcome;
                }
                for (Vertex v : low_set)
                    low[v] = 1;
            }

            auto chosen = std::find_if(here.begin(), here.end(), [&] (Vertex v) { return ! low[v]; });
            if (chosen == here.end())
                throw std::logic_error("greedy_embed: no admissible vertex although no step failed");
            Vertex v = *chosen;

            for (Vertex i : forward) {
                auto & there = state.candidates[i];
                Interval j = *block[t][i];
                there = filter(there, [&] (Vertex w) { return j.contains(g1.rank(v, w)); });
                ++state.back_degree[i];
            }
            state.placed.push_back(v);
            here.clear();
            state.step = t + 1;
            if (record_trace)
                outcome.trace.push_back(state);
        }

        EmbeddingMap map(n);
        for (Vertex p = 0 ; p < n ; ++p)
            map[outcome.order[p]] = state.placed[p];
        outcome.result = std::move(map);
        return outcome;
    }

    auto greedy_embed(const EdgeOrderedGraph & g1, const EdgeOrderedGraph & pattern, const Interval & interval,
            const vector<VertexSet> & parts, const Rational & delta1, bool record_trace) -> EmbedOutcome
    {
        return greedy_embed(RankedAdjacency(g1), pattern, interval, parts, delta1, record_trace);
    }

    auto verify_interval_embedding(const RankedAdjacency & g1, const IntervalPartition & partition,
            const vector<VertexSet> & parts, const EmbeddingMap & map) -> bool
    {
        if (map.size() != parts.size())
            return false;
        for (size_t v = 0 ; v < map.size() ; ++v) {
            if (! std::binary_search(parts[v].begin(), parts[v].end(), map[v]))
                return false;
            for (size_t w = v + 1 ; w < map.size() ; ++w)
                if (map[v] == map[w])
                    return false;
        }
        for (size_t j = 0 ; j < partition.pattern_edges.size() ; ++j) {
            auto & e = partition.pattern_edges[j];
            if (e.u >= map.size() || e.v >= map.size())
                return false;
            if (! partition.blocks[j].contains(g1.rank(map[e.u], map[e.v])))
                return false;
        }
        return true;
    }

    namespace
    {
        auto check_filter_arguments(const Rational & c, const Rational & delta, const Rational & d) -> void
        {
            if (c < 1)
                throw PreconditionViolation("degree filter needs c >= 1");
            if (delta <= 0)
                throw PreconditionViolation("degree filter needs delta > 0");
            if (d > delta)
                throw PreconditionViolation("density " + to_string(d) + " exceeds " + to_string(delta));
        }

        auto check_filter_result(const VertexSet & kept, const VertexSet & x, const Rational & c) -> void
        {
            if (Rational(kept.size()) < (1 - 1 / c) * Rational(x.size()))
                throw std::logic_error("degree filter kept fewer vertices than guaranteed");
        }
    }

    auto degree_filter(const Graph & f, const VertexSet & x, const VertexSet & y, const Rational & c,
            const Rational & delta) -> VertexSet
    {
        check_filter_arguments(c, delta, density(f, x, y));
        Integer threshold = strict_threshold(c * delta * Rational(y.size()));
        auto kept = filter(x, [&] (Vertex v) {
                return Integer(static_cast<unsigned long>(degree(f, v, y))) < threshold; });
        check_filter_result(kept, x, c);
        return kept;
    }

    auto degree_filter(const RankedAdjacency & g, const Interval & interval, const VertexSet & x, const VertexSet & y,
            const Rational & c, const Rational & delta) -> VertexSet
    {
        check_filter_arguments(c, delta, g.density(x, y, interval));
        Membership in_y(g.vertex_count(), y);
        Integer threshold = strict_threshold(c * delta * Rational(y.size()));
        auto kept = filter(x, [&] (Vertex v) {
                return Integer(static_cast<unsigned long>(g.degree(v, in_y, interval))) < threshold; });
        check_filter_result(kept, x, c);
        return kept;
    }

    auto greedy_oracle(const RankedAdjacency & g1, const EdgeOrderedGraph & pattern, const Rational & delta1) -> SparseOracle
    {
        return [&g1, pattern, delta1] (const Interval & interval, const VertexSet & x) -> SparseOutcome {
            Vertex n = pattern.vertex_count();
            vector<VertexSet> parts(n);
            for (Vertex i = 0 ; i < n ; ++i) {
                size_t lo = x.size() * i / n, hi = x.size() * (i + 1) / n;
                parts[i].assign(x.begin() + lo, x.begin() + hi);
                if (parts[i].empty() || Rational(parts[i].size()) < delta1 * Rational(x.size()))
                    throw InfeasibleSize("a set of " + std::to_string(x.size()) + " vertices is too small to split into "
                            + std::to_string(n) + " parts of at least delta1 |X|");
            }
            auto outcome = greedy_embed(g1, pattern, interval, parts, delta1);
            if (outcome.embedded())
                return PatternFound{outcome.embedding()};
            return outcome.witness();
        };
    }

    auto trivial_oracle() -> SparseOracle
    {
        return [] (const Interval & interval, const VertexSet & x) -> SparseOutcome {
            SparseWitness w;
            w.interval = interval;
            w.sets = {x};
            w.densities = {{Rational(0)}};
            return w;
        };
    }


    namespace
    {
        auto subset(const VertexSet & a, const VertexSet & b) -> bool
        {
            return std::includes(b.begin(), b.end(), a.begin(), a.end());
        }

        auto checked_witness(const RankedAdjacency & g1, const SparseOutcome & outcome, size_t t, const Interval & inside,
                const VertexSet & x, const Rational & delta, const char * what) -> const SparseWitness &
        {
            auto & w = std::get<SparseWitness>(outcome);
            if (w.sets.size() != t || ! inside.contains(w.interval))
                throw std::logic_error(string(what) + " returned a malformed witness");
            for (auto & s : w.sets)
                if (! subset(s, x))
                    throw std::logic_error(string(what) + " returned sets outside its input");
            if (auto problem = verify_witness(g1, w, delta))
                throw std::logic_error(string(what) + ": " + *problem);
            return w;
        }

        auto intersect(const VertexSet & a, const VertexSet & b) -> VertexSet
        {
            VertexSet result;
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(result));
            return result;
        }
    }

    auto amplify_sparse(const RankedAdjacency & g1, const Interval & interval, const VertexSet & x,
            const SparseOracle & two_set, const SparseOracle & t_set, unsigned t, const Rational & delta) -> SparseOutcome
    {
        if (t == 0 || delta <= 0)
            throw PreconditionViolation("amplify_sparse needs t >= 1 and delta > 0");
        Rational delta_small = delta / (4 * t);

        auto first = two_set(interval, x);
        if (std::holds_alternative<PatternFound>(first))
            return first;
        auto & pair_witness = checked_witness(g1, first, 2, interval, x, delta_small, "two-set oracle");
        Interval i1 = pair_witness.interval;
        auto & w_y = pair_witness.sets[0];
        auto & w_z = pair_witness.sets[1];

        auto w_y_kept = degree_filter(g1, i1, w_y, w_z, Rational(2), delta_small);
        auto second = t_set(i1, w_y_kept);
        if (std::holds_alternative<PatternFound>(second))
            return second;
        auto & y_witness = checked_witness(g1, second, t, i1, w_y_kept, delta, "t-set oracle");
        Interval i2 = y_witness.interval;

        VertexSet w_z_kept = w_z;
        for (auto & y : y_witness.sets)
            w_z_kept = intersect(w_z_kept, degree_filter(g1, i2, w_z, y, Rational(2 * t), 2 * delta_small));
        if (2 * w_z_kept.size() < w_z.size())
            throw std::logic_error("amplify_sparse: filtered set smaller than half");

        auto third = t_set(i2, w_z_kept);
        if (std::holds_alternative<PatternFound>(third))
            return third;
        auto & z_witness = checked_witness(g1, third, t, i2, w_z_kept, delta, "t-set oracle");

        vector<VertexSet> sets = y_witness.sets;
        sets.insert(sets.end(), z_witness.sets.begin(), z_witness.sets.end());
        auto result = make_witness(g1, z_witness.interval, std::move(sets));
        if (auto problem = verify_witness(g1, result, delta))
            throw std::logic_error("amplify_sparse: " + *problem);
        return result;
    }

    auto iterate_sparse(const RankedAdjacency & g1, const Interval & interval, const VertexSet & x, unsigned h,
            const Rational & delta2, const EdgeOrderedGraph & pattern) -> SparseOutcome
    {
        Vertex n = pattern.vertex_count();
        if (pattern.edge_count() == 0)
            throw PreconditionViolation("pattern has no edges");
        if (delta2 <= 0 || delta2 * n >= 1)
            throw PreconditionViolation("delta2 must lie in (0, 1/n)");
        if (interval.empty())
            throw PreconditionViolation("empty interval");
        if (x.empty() || ! std::is_sorted(x.begin(), x.end()) || x.back() >= g1.vertex_count())
            throw PreconditionViolation("X must be a nonempty sorted set of host vertices");

        unsigned d = degeneracy_order(pattern).degeneracy;
        auto [alpha_h, gamma_h] = sparse_schedule(n, d, delta2, h);
        if (Rational(interval.length()) * alpha_h < 1)
            throw InfeasibleSize("|I| = " + std::to_string(interval.length()) + " is below 1/alpha_h with alpha_h = "
                    + to_string(alpha_h));
        if (gamma_h * Rational(x.size()) < 1)
            throw InfeasibleSize("gamma_h = " + to_string(gamma_h) + " gives gamma_h |X| < 1 for |X| = "
                    + std::to_string(x.size()));

        std::function<auto (unsigned, const Interval &, const VertexSet &) -> SparseOutcome> level;
        level = [&] (unsigned l, const Interval & i, const VertexSet & s) -> SparseOutcome {
            if (l == 0)
                return trivial_oracle()(i, s);
            unsigned t = 1u << (l - 1);
            Rational delta1 = delta2 / Rational(Integer(1) << (l + 1));
            auto t_set = [&level, l] (const Interval & j, const VertexSet & y) { return level(l - 1, j, y); };
            return amplify_sparse(g1, i, s, greedy_oracle(g1, pattern, delta1), t_set, t, delta2);
        };

        auto result = level(h, interval, x);
        if (auto w = std::get_if<SparseWitness>(&result)) {
            if (w->sets.size() != (size_t(1) << h))
                throw std::logic_error("iterate_sparse: wrong number of sets");
            if (auto problem = verify_witness(g1, *w, delta2))
                throw std::logic_error("iterate_sparse: " + *problem);
            if (Rational(w->interval.length()) < alpha_h * Rational(interval.length()))
                throw std::logic_error("iterate_sparse: interval shorter than alpha_h |I|");
            for (auto & s : w->sets)
                if (Rational(s.size()) < gamma_h * Rational(x.size()))
                    throw std::logic_error("iterate_sparse: set smaller than gamma_h |X|");
        }
        return result;
    }

    auto equalize_subsets(const RankedAdjacency & g, const Interval & interval, const vector<VertexSet> & sets,
            size_t s, const Rational & delta, uint64_t seed, unsigned retries) -> EqualizeResult
    {
        if (sets.empty() || s == 0)
            throw PreconditionViolation("need at least one set and s >= 1");
        for (auto & w : sets)
            if (w.size() < s)
                throw PreconditionViolation("target size exceeds a set");
        Rational cap = Rational(sets.size() * sets.size()) * delta;

        for (unsigned attempt = 0 ; attempt < retries ; ++attempt) {
            Rng rng(seed, attempt);
            EqualizeResult result;
            result.attempts = attempt + 1;
            for (auto & w : sets) {
                VertexSet chosen;
                for (auto k : rng.sample(w.size(), s))
                    chosen.push_back(w[k]);
                result.sets.push_back(std::move(chosen));
            }
            bool ok = true;
            for (size_t i = 0 ; i < sets.size() && ok ; ++i)
                for (size_t j = i + 1 ; j < sets.size() && ok ; ++j)
                    ok = g.density(result.sets[i], result.sets[j], interval) < cap;
            if (ok)
                return result;
        }
        throw BudgetExhausted("equalize_subsets: " + std::to_string(retries) + " draws all broke the density cap");
    }

    BitMatrix::BitMatrix(size_t rows, size_t cols) :
        _rows(rows),
        _cols(cols),
        _words((cols + 63) / 64),
        _bits(rows * _words, 0)
    {
    }

    auto BitMatrix::count() const -> uint64_t
    {
        uint64_t result = 0;
        for (auto w : _bits)
            result += std::popcount(w);
        return result;
    }

    MultipartiteInstance::MultipartiteInstance(vector<VertexSet> parts) :
        _parts(std::move(parts))
    {
        auto n = _parts.size();
        _edges.resize(n * n);
        _red.resize(n * n);
        for (size_t i = 0 ; i < n ; ++i)
            for (size_t j = 0 ; j < n ; ++j)
                if (i != j) {
                    _edges[index(i, j)] = BitMatrix(_parts[i].size(), _parts[j].size());
                    _red[index(i, j)] = BitMatrix(_parts[i].size(), _parts[j].size());
                }
    }

    auto MultipartiteInstance::add_edge(size_t i, size_t a, size_t j, size_t b, bool red) -> void
    {
        if (i == j)
            throw PreconditionViolation("no edges inside a part");
        _edges[index(i, j)].set(a, b);
        _edges[index(j, i)].set(b, a);
        if (red) {
            _red[index(i, j)].set(a, b);
            _red[index(j, i)].set(b, a);
        }
    }

    auto MultipartiteInstance::density(size_t i, size_t j) const -> Rational
    {
        return eorders::density(edge_count(i, j), _parts[i].size(), _parts[j].size());
    }

    auto MultipartiteInstance::red_density(size_t i, size_t j) const -> Rational
    {
        return eorders::density(red_count(i, j), _parts[i].size(), _parts[j].size());
    }

    auto MultipartiteInstance::pair_graph(size_t i, size_t j) const -> Graph
    {
        auto & m = _edges[index(i, j)];
        vector<pair<Vertex, Vertex>> edges;
        for (size_t a = 0 ; a < m.rows() ; ++a)
            for (size_t b = 0 ; b < m.cols() ; ++b)
                if (m.test(a, b))
                    edges.emplace_back(Vertex(a), Vertex(m.rows() + b));
        return Graph(Vertex(m.rows() + m.cols()), edges);
    }

    auto build_product_graph(const EdgeOrderedGraph & g, const Coloring * coloring, const vector<VertexSet> & parts,
            const IntervalPartition & jp, const set<unsigned> & red_colors) -> MultipartiteInstance
    {
        check_parts(parts, g.vertex_count());
        if (coloring)
            if (auto problem = validate(*coloring, g.edge_count()))
                throw PreconditionViolation("colouring: " + *problem);
        auto n = parts.size();
        for (auto & e : jp.pattern_edges)
            if (e.v >= n)
                throw PreconditionViolation("partition names a pattern vertex without a part");

        RankedAdjacency adj(g);
        MultipartiteInstance f(parts);
        for (size_t i = 0 ; i < n ; ++i)
            for (size_t j = i + 1 ; j < n ; ++j) {
                optional<Interval> block;
                for (size_t k = 0 ; k < jp.pattern_edges.size() ; ++k)
                    if (jp.pattern_edges[k].u == i && jp.pattern_edges[k].v == j)
                        block = jp.blocks[k];
                for (size_t a = 0 ; a < parts[i].size() ; ++a)
                    for (size_t b = 0 ; b < parts[j].size() ; ++b) {
                        if (! block) {
                            f.add_edge(i, a, j, b);
                            continue;
                        }
                        Rank r = adj.rank(parts[i][a], parts[j][b]);
                        if (r != 0 && block->contains(r))
                            f.add_edge(i, a, j, b, coloring && red_colors.count(coloring->color(r)));
                    }
            }
        return f;
    }

    namespace
    {
        /**
         * Backtracking over parts in order, carrying for every later part the
         * bitset of vertices joined to everything chosen so far.
         */
        class CliqueWalk
        {
            private:
                const MultipartiteInstance & _f;
                bool _avoid_red;
                std::uint64_t _limit;
                std::atomic<uint64_t> & _nodes;
                std::atomic<bool> & _abort;
                size_t _n;
                // _cands[k][j] for j >= k, as words
                vector<vector<vector<uint64_t>>> _cands;
                vector<size_t> _chosen;

                auto tick() -> bool
                {
                    auto nodes = _nodes.fetch_add(1, std::memory_order_relaxed) + 1;
                    if (_limit != 0 && nodes > _limit)
                        _abort = true;
                    return ! _abort;
                }

                auto descend(size_t k, size_t w) -> void
                {
                    for (size_t j = k + 1 ; j < _n ; ++j) {
                        auto & out = _cands[k + 1][j];
                        auto & in = _cands[k][j];
                        auto adj = _f.edges(k, j).row(w);
                        auto red = _f.red_edges(k, j).row(w);
                        for (size_t x = 0 ; x < out.size() ; ++x)
                            out[x] = in[x] & adj[x] & (_avoid_red ? ~red[x] : ~uint64_t(0));
                    }
                }

                template <typename Visit_>
                auto walk(size_t k, Visit_ & visit) -> bool
                {
                    auto & cand = _cands[k][k];
                    for (size_t x = 0 ; x < cand.size() ; ++x)
                        for (uint64_t word = cand[x] ; word ; word &= word - 1) {
                            size_t w = x * 64 + std::countr_zero(word);
                            _chosen[k] = w;
                            if (k + 1 == _n) {
                                if (! visit(_chosen))
                                    return false;
                                continue;
                            }
                            if (! tick())
                                return false;
                            descend(k, w);
                            if (! walk(k + 1, visit))
                                return false;
                        }
                    return true;
                }

            public:
                CliqueWalk(const MultipartiteInstance & f, bool avoid_red, uint64_t limit, std::atomic<uint64_t> & nodes,
                        std::atomic<bool> & abort) :
                    _f(f), _avoid_red(avoid_red), _limit(limit), _nodes(nodes), _abort(abort), _n(f.part_count()),
                    _cands(_n), _chosen(_n)
                {
                    for (size_t k = 0 ; k < _n ; ++k)
                        for (size_t j = 0 ; j < _n ; ++j)
                            _cands[k].emplace_back(j >= k ? (f.parts()[j].size() + 63) / 64 : 0, 0);
                    for (size_t j = 0 ; j < _n ; ++j) {
                        auto & c = _cands[0][j];
                        for (size_t b = 0 ; b < f.parts()[j].size() ; ++b)
                            c[b / 64] |= uint64_t(1) << (b % 64);
                    }
                }

                /// Cliques whose first vertex has local index first; visit
                /// returns false to stop. Returns false when stopped.
                template <typename Visit_>
                auto from(size_t first, Visit_ visit) -> bool
                {
                    _chosen[0] = first;
                    if (_n == 1)
                        return visit(_chosen);
                    if (! tick())
                        return false;
                    descend(0, first);
                    return walk(1, visit);
                }

                /// Number of cliques through first, counting the last part by popcount.
                auto count_from(size_t first) -> optional<uint64_t>
                {
                    if (_n == 1)
                        return 1;
                    uint64_t total = 0;
                    auto last = _n - 1;
                    std::function<auto (size_t) -> bool> go = [&] (size_t k) -> bool {
                        if (k == last) {
                            for (auto word : _cands[k][k])
                                total += std::popcount(word);
                            return true;
                        }
                        auto & cand = _cands[k][k];
                        for (size_t x = 0 ; x < cand.size() ; ++x)
                            for (uint64_t word = cand[x] ; word ; word &= word - 1) {
                                size_t w = x * 64 + std::countr_zero(word);
                                if (! tick())
                                    return false;
                                descend(k, w);
                                if (! go(k + 1))
                                    return false;
                            }
                        return true;
                    };
                    if (! tick())
                        return std::nullopt;
                    descend(0, first);
                    if (! go(1))
                        return std::nullopt;
                    return total;
                }
        };

        auto check_instance(const MultipartiteInstance & f) -> void
        {
            if (f.part_count() == 0)
                throw PreconditionViolation("no parts");
        }
    }

    auto count_spanning_cliques(const MultipartiteInstance & f, const SearchBudget & budget, unsigned workers) -> uint64_t
    {
        check_instance(f);
        auto first_size = f.parts()[0].size();
        std::atomic<uint64_t> nodes{0}, total{0};
        std::atomic<bool> abort{false};
        std::atomic<size_t> next{0};

        auto work = [&] {
            CliqueWalk walk(f, false, budget.node_limit, nodes, abort);
            for (size_t v ; ! abort && (v = next.fetch_add(1)) < first_size ; ) {
                auto c = walk.count_from(v);
                if (! c)
                    return;
                total += *c;
            }
        };

        workers = std::max(1u, workers);
        if (workers == 1)
            work();
        else {
            vector<std::jthread> threads;
            for (unsigned w = 0 ; w < workers ; ++w)
                threads.emplace_back(work);
        }
        if (abort)
            throw BudgetExhausted("clique count exceeded " + std::to_string(budget.node_limit) + " nodes");
        return total;
    }

    auto counting_bounds(const Rational & p, const vector<vector<Rational>> & p_pairs, const vector<uint64_t> & sizes,
            const Rational & epsilon) -> pair<Rational, Rational>
    {
        auto n = sizes.size();
        if (n == 0)
            throw PreconditionViolation("no parts");
        if (p <= 0 || p * 2 >= 1)
            throw PreconditionViolation("p must lie in (0, 1/2)");
        if (epsilon <= 0 || epsilon > pow(p / 4, n))
            throw PreconditionViolation("epsilon must lie in (0, (p/4)^n]");
        if (n == 1)
            return {Rational(sizes[0]), Rational(sizes[0])};
        if (p_pairs.size() != n)
            throw PreconditionViolation("p_pairs must be n x n");

        Rational base = 1;
        for (auto s : sizes)
            base *= Rational(s);
        for (size_t i = 0 ; i < n ; ++i) {
            if (p_pairs[i].size() != n)
                throw PreconditionViolation("p_pairs must be n x n");
            for (size_t j = i + 1 ; j < n ; ++j) {
                if (p_pairs[i][j] <= p || p_pairs[i][j] >= 1)
                    throw PreconditionViolation("every p_ij must lie in (p, 1)");
                base *= p_pairs[i][j];
            }
        }
        Rational spread = 4 * epsilon * Rational(n) / pow(p, n);
        return {(1 - spread) * base, (1 + spread) * base};
    }

    auto find_red_free_clique(const MultipartiteInstance & f, const SearchBudget & budget) -> optional<vector<Vertex>>
    {
        check_instance(f);
        std::atomic<uint64_t> nodes{0};
        std::atomic<bool> abort{false};
        CliqueWalk walk(f, true, budget.node_limit, nodes, abort);
        optional<vector<Vertex>> result;
        for (size_t v = 0 ; v < f.parts()[0].size() && ! result && ! abort ; ++v)
            walk.from(v, [&] (const vector<size_t> & clique) {
                    vector<Vertex> hosts;
                    for (size_t k = 0 ; k < clique.size() ; ++k)
                        hosts.push_back(f.parts()[k][clique[k]]);
                    result = hosts;
                    return false;
                    });
        if (! result && abort)
            throw BudgetExhausted("red-free clique search exceeded " + std::to_string(budget.node_limit) + " nodes");
        return result;
    }

    auto clique_census(const MultipartiteInstance & f, const Rational & alpha, const Rational & epsilon,
            const SearchBudget & budget) -> CliqueCensus
    {
        check_instance(f);
        auto n = f.part_count();
        if (alpha <= 0 || alpha * Rational(n) >= 1)
            throw PreconditionViolation("alpha must lie in (0, 1/n)");
        if (epsilon <= 0)
            throw PreconditionViolation("epsilon must be positive");

        CliqueCensus census;
        Rational a2 = alpha * alpha;

        // normal[i][j] over local indices, i < j
        vector<vector<BitMatrix>> normal(n, vector<BitMatrix>(n));
        for (size_t i = 0 ; i < n ; ++i)
            for (size_t j = i + 1 ; j < n ; ++j) {
                auto & m = f.edges(i, j);
                normal[i][j] = BitMatrix(m.rows(), m.cols());
                for (size_t a = 0 ; a < m.rows() ; ++a)
                    for (size_t b = 0 ; b < m.cols() ; ++b) {
                        if (! m.test(a, b))
                            continue;
                        bool ok = true;
                        for (size_t k = 0 ; k < n && ok ; ++k) {
                            if (k == i || k == j)
                                continue;
                            auto ra = f.edges(i, k).row(a), rb = f.edges(j, k).row(b);
                            uint64_t codeg = 0;
                            for (size_t x = 0 ; x < f.edges(i, k).words() ; ++x)
                                codeg += std::popcount(ra[x] & rb[x]);
                            Rational size(f.parts()[k].size());
                            Rational c(codeg);
                            ok = c >= (a2 - 2 * epsilon) * size && c <= (a2 + 2 * epsilon) * size;
                        }
                        if (ok) {
                            normal[i][j].set(a, b);
                            ++census.normal_edges;
                        }
                        else
                            ++census.non_normal_edges;
                    }
            }

        std::atomic<uint64_t> nodes{0};
        std::atomic<bool> abort{false};
        CliqueWalk walk(f, false, budget.node_limit, nodes, abort);
        for (size_t v = 0 ; v < f.parts()[0].size() && ! abort ; ++v)
            walk.from(v, [&] (const vector<size_t> & c) {
                    bool red = false, red_normal = false, non_normal = false, red_non_normal = false;
                    for (size_t i = 0 ; i < n ; ++i)
                        for (size_t j = i + 1 ; j < n ; ++j) {
                            bool is_red = f.red(i, c[i], j, c[j]), is_normal = normal[i][j].test(c[i], c[j]);
                            red = red || is_red;
                            red_normal = red_normal || (is_red && is_normal);
                            non_normal = non_normal || ! is_normal;
                            red_non_normal = red_non_normal || (is_red && ! is_normal);
                        }
                    ++census.total;
                    census.red_free += ! red;
                    census.through_red_normal += red_normal;
                    census.through_non_normal += non_normal;
                    census.through_red_non_normal += red_non_normal;
                    return true;
                    });
        if (abort)
            throw BudgetExhausted("clique census exceeded " + std::to_string(budget.node_limit) + " nodes");

        Rational pair_count(pairs(n));
        census.model = pow(alpha, pairs(n));
        for (auto & p : f.parts())
            census.model *= Rational(p.size());
        Rational spread = 4 * epsilon * Rational(n) / pow(alpha, n);
        census.lower = (1 - spread) * census.model;
        census.upper = (1 + spread) * census.model;
        census.delta3 = 0;
        for (size_t i = 0 ; i < n ; ++i)
            for (size_t j = i + 1 ; j < n ; ++j)
                census.delta3 = std::max(census.delta3, f.red_density(i, j));
        census.red_normal_bound = pair_count * 4 * census.delta3 * census.model / alpha;
        census.non_normal_bound = pair_count * 8 * epsilon * Rational(n) * census.model / pow(alpha, 2 * n - 2);
        return census;
    }

    auto verify_pull_back(const EdgeOrderedGraph & g, const Coloring * coloring, const IntervalPartition & jp,
            const set<unsigned> & red_colors, const EmbeddingMap & map) -> bool
    {
        for (size_t v = 0 ; v < map.size() ; ++v) {
            if (map[v] >= g.vertex_count())
                return false;
            for (size_t w = v + 1 ; w < map.size() ; ++w)
                if (map[v] == map[w])
                    return false;
        }
        RankedAdjacency adj(g);
        Rank previous = 0;
        for (size_t j = 0 ; j < jp.pattern_edges.size() ; ++j) {
            auto & e = jp.pattern_edges[j];
            if (e.u >= map.size() || e.v >= map.size())
                return false;
            Rank r = adj.rank(map[e.u], map[e.v]);
            if (r == 0 || ! jp.blocks[j].contains(r) || r <= previous)
                return false;
            previous = r;
            if (coloring && red_colors.count(coloring->color(r)))
                return false;
        }
        return true;
    }

    auto monochromatic(const EdgeOrderedGraph & g, const Coloring & coloring, const EdgeOrderedGraph & pattern,
            const EmbeddingMap & map) -> optional<unsigned>
    {
        RankedAdjacency adj(g);
        optional<unsigned> colour;
        for (auto & e : pattern.edges()) {
            Rank r = adj.rank(map[e.u], map[e.v]);
            if (r == 0)
                return std::nullopt;
            unsigned c = coloring.color(r);
            if (colour && *colour != c)
                return std::nullopt;
            colour = c;
        }
        return colour;
    }
}
