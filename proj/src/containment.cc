/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <eorders/containment.hh>

#include <algorithm>
#include <limits>

using std::pair;
using std::vector;

namespace eorders
{
    auto to_string(SearchStatus s) -> const char *
    {
        switch (s) {
            case SearchStatus::found:            return "found";
            case SearchStatus::none:             return "none";
            case SearchStatus::budget_exhausted: return "budget-exhausted";
        }
        return "?";
    }

    namespace
    {
        constexpr Vertex unassigned = std::numeric_limits<Vertex>::max();

        auto make_steps(const EdgeOrderedGraph & pattern, const vector<Vertex> & order) -> vector<PatternPlan::Step>
        {
            vector<std::size_t> position(pattern.vertex_count());
            for (std::size_t i = 0 ; i < order.size() ; ++i)
                position[order[i]] = i;

            vector<PatternPlan::Step> steps;
            for (Vertex v : order)
                steps.push_back({v, {}});
            for (auto & e : pattern.edges()) {
                auto [early, late] = std::minmax(e.u, e.v, [&] (Vertex a, Vertex b) { return position[a] < position[b]; });
                steps[position[late]].back.emplace_back(early, e.label);
            }
            for (auto & s : steps)
                std::sort(s.back.begin(), s.back.end(), [] (auto & a, auto & b) { return a.second < b.second; });
            return steps;
        }

        // The anchor pair first, then whichever vertex has most placed
        // neighbours, smallest id on ties.
        auto anchored_order(const EdgeOrderedGraph & pattern, const Edge & top) -> vector<Vertex>
        {
            Graph g = underlying_graph(pattern);
            vector<bool> placed(pattern.vertex_count(), false);
            vector<unsigned> links(pattern.vertex_count(), 0);
            vector<Vertex> order;
            auto place = [&] (Vertex v) {
                placed[v] = true;
                order.push_back(v);
                for (Vertex u : g.neighbours(v))
                    ++links[u];
            };
            place(top.u);
            place(top.v);
            while (order.size() < pattern.vertex_count()) {
                Vertex best = unassigned;
                for (Vertex v = 0 ; v < pattern.vertex_count() ; ++v)
                    if (! placed[v] && (best == unassigned || links[v] > links[best]))
                        best = v;
                place(best);
            }
            return order;
        }

        struct OrderedSearch
        {
            const RankMatrix & host;
            const vector<PatternPlan::Step> & steps;
            std::uint64_t node_limit;

            vector<Vertex> map;
            vector<std::uint8_t> used;
            vector<Rank> host_rank;
            std::uint64_t nodes = 0;
            bool exhausted = false;

            OrderedSearch(const RankMatrix & h, const vector<PatternPlan::Step> & s, Vertex pattern_n, std::size_t m, std::uint64_t limit) :
                host(h), steps(s), node_limit(limit),
                map(pattern_n, unassigned), used(h.vertex_count(), 0), host_rank(m + 2, 0)
            {
            }

            // Host rank r for pattern rank p must sit strictly between its
            // matched neighbours in pattern order, with room for the
            // unmatched ranks in between.
            auto fits(Rank p, Rank r) const -> bool
            {
                std::size_t m = host_rank.size() - 2;
                Rank below_p = 0, below_r = 0;
                for (std::size_t q = p ; q-- > 1 ; )
                    if (host_rank[q]) {
                        below_p = Rank(q);
                        below_r = host_rank[q];
                        break;
                    }
                if (below_r >= r || r - below_r < p - below_p)
                    return false;
                for (std::size_t q = p + 1 ; q <= m ; ++q)
                    if (host_rank[q])
                        return host_rank[q] > r && host_rank[q] - r >= q - p;
                return true;
            }

            auto try_place(const PatternPlan::Step & step, Vertex c) -> bool
            {
                std::size_t done = 0;
                bool ok = true;
                for (auto [w, p] : step.back) {
                    Rank r = host.rank(map[w], c);
                    if (r == 0 || ! fits(p, r)) {
                        ok = false;
                        break;
                    }
                    host_rank[p] = r;
                    ++done;
                }
                if (! ok)
                    for (std::size_t i = 0 ; i < done ; ++i)
                        host_rank[step.back[i].second] = 0;
                return ok;
            }

            auto unplace(const PatternPlan::Step & step) -> void
            {
                for (auto & b : step.back)
                    host_rank[b.second] = 0;
            }

            auto search(std::size_t pos) -> bool
            {
                if (pos == steps.size())
                    return true;
                if (node_limit && nodes >= node_limit) {
                    exhausted = true;
                    return false;
                }
                ++nodes;

                auto & step = steps[pos];
                for (Vertex c = 0 ; c < host.vertex_count() ; ++c) {
                    if (used[c] || ! try_place(step, c))
                        continue;
                    map[step.vertex] = c;
                    used[c] = 1;
                    if (search(pos + 1))
                        return true;
                    used[c] = 0;
                    map[step.vertex] = unassigned;
                    unplace(step);
                    if (exhausted)
                        return false;
                }
                return false;
            }

            auto result(bool found) const -> SearchResult
            {
                SearchResult r;
                r.nodes = nodes;
                if (found) {
                    r.status = SearchStatus::found;
                    r.map = map;
                }
                else
                    r.status = exhausted ? SearchStatus::budget_exhausted : SearchStatus::none;
                return r;
            }
        };

        auto dense(const EdgeOrderedGraph & host) -> RankMatrix
        {
            if (host.vertex_count() > max_dense_host_vertices)
                throw InfeasibleSize("host has " + std::to_string(host.vertex_count()) + " vertices, more than the "
                        + std::to_string(max_dense_host_vertices) + " supported by the dense search");
            return RankMatrix(host);
        }
    }

    PatternPlan::PatternPlan(const EdgeOrderedGraph & pattern) :
        _pattern(pattern),
        _top{0, 0, 0}
    {
        _steps = make_steps(pattern, degeneracy_order(pattern).order);
        for (auto & e : pattern.edges())
            if (e.label > _top.label)
                _top = e;
        if (_top.label != 0)
            _anchored_steps = make_steps(pattern, anchored_order(pattern, _top));
    }

    auto PatternPlan::find(const RankMatrix & host, const SearchBudget & budget) const -> SearchResult
    {
        if (_pattern.vertex_count() > host.vertex_count())
            return SearchResult{};
        OrderedSearch s(host, _steps, _pattern.vertex_count(), _pattern.edge_count(), budget.node_limit);
        bool found = s.search(0);
        return s.result(found);
    }

    auto PatternPlan::find_through(const RankMatrix & host, Vertex x, Vertex y, const SearchBudget & budget) const -> SearchResult
    {
        Rank r = host.rank(x, y);
        if (_top.label == 0 || r == 0 || _pattern.vertex_count() > host.vertex_count())
            return SearchResult{};

        OrderedSearch s(host, _anchored_steps, _pattern.vertex_count(), _pattern.edge_count(), budget.node_limit);
        for (int orientation = 0 ; orientation < 2 ; ++orientation) {
            Vertex a = orientation == 0 ? x : y, b = orientation == 0 ? y : x;
            s.map[_top.u] = a;
            s.map[_top.v] = b;
            s.used[a] = s.used[b] = 1;
            if (s.fits(_top.label, r)) {
                s.host_rank[_top.label] = r;
                if (s.search(2))
                    return s.result(true);
                s.host_rank[_top.label] = 0;
            }
            s.used[a] = s.used[b] = 0;
            s.map[_top.u] = s.map[_top.v] = unassigned;
            if (s.exhausted)
                break;
        }
        return s.result(false);
    }

    auto find_copy(const RankMatrix & host, const EdgeOrderedGraph & pattern, const SearchBudget & budget) -> SearchResult
    {
        return PatternPlan(pattern).find(host, budget);
    }

    auto find_copy(const EdgeOrderedGraph & host, const EdgeOrderedGraph & pattern, const SearchBudget & budget) -> SearchResult
    {
        return find_copy(dense(host), pattern, budget);
    }

    namespace
    {
        struct LabeledSearch
        {
            Vertex host_n;
            const vector<std::uint32_t> & labels;
            const vector<PatternPlan::Step> & steps;
            std::uint64_t node_limit;
            vector<Vertex> map;
            vector<std::uint8_t> used;
            std::uint64_t nodes = 0;
            bool exhausted = false;

            auto search(std::size_t pos) -> bool
            {
                if (pos == steps.size())
                    return true;
                if (node_limit && nodes >= node_limit) {
                    exhausted = true;
                    return false;
                }
                ++nodes;

                auto & step = steps[pos];
                for (Vertex c = 0 ; c < host_n ; ++c) {
                    if (used[c])
                        continue;
                    bool ok = true;
                    for (auto [w, label] : step.back)
                        if (labels[std::size_t(map[w]) * host_n + c] != label) {
                            ok = false;
                            break;
                        }
                    if (! ok)
                        continue;
                    map[step.vertex] = c;
                    used[c] = 1;
                    if (search(pos + 1))
                        return true;
                    used[c] = 0;
                    map[step.vertex] = unassigned;
                    if (exhausted)
                        return false;
                }
                return false;
            }
        };
    }

    auto find_copy_labeled(const EdgeLabeledGraph & host, const EdgeLabeledGraph & pattern, const SearchBudget & budget) -> SearchResult
    {
        if (pattern.n > host.n)
            return SearchResult{};
        if (host.n > max_dense_host_vertices)
            throw InfeasibleSize("labeled host too large for the dense search");

        vector<std::uint32_t> labels(std::size_t(host.n) * host.n, 0);
        for (auto & e : host.edges)
            labels[std::size_t(e.u) * host.n + e.v] = labels[std::size_t(e.v) * host.n + e.u] = e.label;

        // The plan only needs the structure; the step's rank slot carries the label.
        vector<Edge> structure;
        for (std::size_t i = 0 ; i < pattern.edges.size() ; ++i)
            structure.push_back({pattern.edges[i].u, pattern.edges[i].v, Rank(i + 1)});
        EdgeOrderedGraph shape(pattern.n, structure);
        auto steps = make_steps(shape, degeneracy_order(shape).order);
        for (auto & s : steps)
            for (auto & b : s.back)
                b.second = pattern.edges[b.second - 1].label;

        LabeledSearch s{host.n, labels, steps, budget.node_limit, vector<Vertex>(pattern.n, unassigned), vector<std::uint8_t>(host.n, 0)};
        bool found = s.search(0);

        SearchResult r;
        r.nodes = s.nodes;
        if (found) {
            r.status = SearchStatus::found;
            r.map = s.map;
        }
        else
            r.status = s.exhausted ? SearchStatus::budget_exhausted : SearchStatus::none;
        return r;
    }

    auto colour_class(const EdgeOrderedGraph & host, const Coloring & coloring, unsigned color) -> RankMatrix
    {
        if (host.vertex_count() > max_dense_host_vertices)
            throw InfeasibleSize("host too large for the dense search");
        if (auto bad = validate(coloring, host.edge_count()))
            throw PreconditionViolation("colouring: " + *bad);
        RankMatrix result(host.vertex_count());
        for (auto & e : host.edges())
            if (coloring.color(e.label) == color)
                result.set(e.u, e.v, e.label);
        return result;
    }

    auto find_monochromatic_copy(const EdgeOrderedGraph & host, const Coloring & coloring, const EdgeOrderedGraph & pattern,
            unsigned color, const SearchBudget & budget) -> SearchResult
    {
        return find_copy(colour_class(host, coloring, color), pattern, budget);
    }

    auto verify_copy(const RankMatrix & host, const EdgeOrderedGraph & pattern, const EmbeddingMap & map) -> bool
    {
        if (map.size() != pattern.vertex_count())
            return false;
        vector<Vertex> image(map);
        std::sort(image.begin(), image.end());
        if (std::adjacent_find(image.begin(), image.end()) != image.end())
            return false;
        if (! image.empty() && image.back() >= host.vertex_count())
            return false;

        Rank previous = 0;
        for (auto & e : pattern.edges_by_rank()) {
            Rank r = host.rank(map[e.u], map[e.v]);
            if (r == 0 || r <= previous)
                return false;
            previous = r;
        }
        return true;
    }

    auto verify_copy(const EdgeOrderedGraph & host, const EdgeOrderedGraph & pattern, const EmbeddingMap & map) -> bool
    {
        RankedAdjacency adj(host);
        if (map.size() != pattern.vertex_count())
            return false;
        vector<Vertex> image(map);
        std::sort(image.begin(), image.end());
        if (std::adjacent_find(image.begin(), image.end()) != image.end())
            return false;
        if (! image.empty() && image.back() >= host.vertex_count())
            return false;

        Rank previous = 0;
        for (auto & e : pattern.edges_by_rank()) {
            Rank r = adj.rank(map[e.u], map[e.v]);
            if (r == 0 || r <= previous)
                return false;
            previous = r;
        }
        return true;
    }

    auto verify_copy_labeled(const EdgeLabeledGraph & host, const EdgeLabeledGraph & pattern, const EmbeddingMap & map) -> bool
    {
        if (map.size() != pattern.n)
            return false;
        vector<Vertex> image(map);
        std::sort(image.begin(), image.end());
        if (std::adjacent_find(image.begin(), image.end()) != image.end())
            return false;
        if (! image.empty() && image.back() >= host.n)
            return false;

        vector<pair<pair<Vertex, Vertex>, std::uint32_t>> host_edges;
        for (auto & e : host.edges)
            host_edges.push_back({{std::min(e.u, e.v), std::max(e.u, e.v)}, e.label});
        std::sort(host_edges.begin(), host_edges.end());
        for (auto & e : pattern.edges) {
            Vertex a = map[e.u], b = map[e.v];
            pair<Vertex, Vertex> key{std::min(a, b), std::max(a, b)};
            auto it = std::lower_bound(host_edges.begin(), host_edges.end(), pair<pair<Vertex, Vertex>, std::uint32_t>{key, 0});
            if (it == host_edges.end() || it->first != key || it->second != e.label)
                return false;
        }
        return true;
    }
}
