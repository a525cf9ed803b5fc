/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <eorders/io.hh>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

using std::string;
using std::string_view;
using std::vector;

namespace eorders
{
    ParseError::ParseError(std::size_t line, const string & message) :
        std::runtime_error(line ? "line " + std::to_string(line) + ": " + message : message),
        _line(line)
    {
    }

    namespace
    {
        struct Line
        {
            std::size_t number;
            vector<string_view> fields;
        };

        auto tokenise(string_view text) -> vector<Line>
        {
            vector<Line> result;
            std::size_t number = 0;
            while (! text.empty()) {
                auto end = text.find('\n');
                string_view line = text.substr(0, end);
                text = end == string_view::npos ? string_view{} : text.substr(end + 1);
                ++number;

                if (auto hash = line.find('#'); hash != string_view::npos)
                    line = line.substr(0, hash);

                Line parsed{number, {}};
                std::size_t pos = 0;
                while (pos < line.size()) {
                    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r'))
                        ++pos;
                    std::size_t start = pos;
                    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '\r')
                        ++pos;
                    if (pos > start)
                        parsed.fields.push_back(line.substr(start, pos - start));
                }
                if (! parsed.fields.empty())
                    result.push_back(std::move(parsed));
            }
            return result;
        }

        auto number(const Line & line, std::size_t index, std::uint64_t lo, std::uint64_t hi, const char * what) -> std::uint64_t
        {
            auto field = line.fields[index];
            std::uint64_t value = 0;
            auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
            if (ec != std::errc{} || ptr != field.data() + field.size())
                throw ParseError(line.number, string(what) + " '" + string(field) + "' is not a non-negative integer");
            if (value < lo || value > hi)
                throw ParseError(line.number, string(what) + " " + std::to_string(value) + " out of range ["
                        + std::to_string(lo) + ", " + std::to_string(hi) + "]");
            return value;
        }

        auto header(const vector<Line> & lines, string_view tag, std::size_t fields) -> const Line &
        {
            if (lines.empty())
                throw ParseError(0, "empty input, expected '" + string(tag) + "' header");
            auto & h = lines.front();
            if (h.fields[0] != tag || h.fields.size() != fields)
                throw ParseError(h.number, "expected header '" + string(tag) + "' with " + std::to_string(fields - 1) + " fields");
            return h;
        }

        auto body(const vector<Line> & lines, std::uint64_t m, std::size_t fields) -> void
        {
            if (lines.size() - 1 != m)
                throw ParseError(lines.size() > m + 1 ? lines[m + 1].number : lines.back().number,
                        "expected " + std::to_string(m) + " body lines, found " + std::to_string(lines.size() - 1));
            for (std::size_t i = 1 ; i < lines.size() ; ++i)
                if (lines[i].fields.size() != fields)
                    throw ParseError(lines[i].number, "expected " + std::to_string(fields) + " fields");
        }

        constexpr std::uint64_t max_vertices = 1u << 30;
        constexpr std::uint64_t max_label = 0xffffffffu;

        auto check_pairs(const vector<Line> & lines, const vector<std::pair<Vertex, Vertex>> & pairs) -> void
        {
            vector<std::pair<std::pair<Vertex, Vertex>, std::size_t>> seen;
            for (std::size_t i = 0 ; i < pairs.size() ; ++i) {
                auto [u, v] = pairs[i];
                if (u == v)
                    throw ParseError(lines[i + 1].number, "self-loop");
                seen.push_back({{std::min(u, v), std::max(u, v)}, lines[i + 1].number});
            }
            std::sort(seen.begin(), seen.end());
            for (std::size_t i = 1 ; i < seen.size() ; ++i)
                if (seen[i].first == seen[i - 1].first)
                    throw ParseError(std::max(seen[i].second, seen[i - 1].second), "duplicate edge");
        }
    }

    auto decode_eog(string_view text) -> EdgeOrderedGraph
    {
        auto lines = tokenise(text);
        auto & h = header(lines, "eog", 3);
        auto n = number(h, 1, 0, max_vertices, "vertex count");
        auto m = number(h, 2, 0, pairs(n), "edge count");
        body(lines, m, 3);

        vector<Edge> edges;
        vector<std::pair<Vertex, Vertex>> ends;
        for (std::size_t i = 1 ; i < lines.size() ; ++i) {
            Vertex u = Vertex(number(lines[i], 0, 1, n, "vertex") - 1);
            Vertex v = Vertex(number(lines[i], 1, 1, n, "vertex") - 1);
            Rank label = Rank(number(lines[i], 2, 1, max_label, "label"));
            edges.push_back({u, v, label});
            ends.emplace_back(u, v);
        }
        check_pairs(lines, ends);

        vector<std::pair<Rank, std::size_t>> order;
        for (std::size_t i = 0 ; i < edges.size() ; ++i)
            order.emplace_back(edges[i].label, i);
        std::sort(order.begin(), order.end());
        for (std::size_t i = 0 ; i < order.size() ; ++i) {
            if (i > 0 && order[i].first == order[i - 1].first)
                throw ParseError(lines[std::max(order[i].second, order[i - 1].second) + 1].number, "repeated label");
            edges[order[i].second].label = Rank(i + 1);
        }
        return EdgeOrderedGraph(Vertex(n), std::move(edges));
    }

    auto decode_elg(string_view text) -> EdgeLabeledGraph
    {
        auto lines = tokenise(text);
        auto & h = header(lines, "elg", 4);
        EdgeLabeledGraph g;
        g.n = Vertex(number(h, 1, 0, max_vertices, "vertex count"));
        auto m = number(h, 2, 0, pairs(g.n), "edge count");
        g.label_count = std::uint32_t(number(h, 3, 1, max_label, "label count"));
        body(lines, m, 3);

        vector<std::pair<Vertex, Vertex>> ends;
        for (std::size_t i = 1 ; i < lines.size() ; ++i) {
            Vertex u = Vertex(number(lines[i], 0, 1, g.n, "vertex") - 1);
            Vertex v = Vertex(number(lines[i], 1, 1, g.n, "vertex") - 1);
            auto label = std::uint32_t(number(lines[i], 2, 1, g.label_count, "label"));
            g.edges.push_back({u, v, label});
            ends.emplace_back(u, v);
        }
        check_pairs(lines, ends);
        return g;
    }

    auto decode_vog(string_view text) -> VertexOrderedGraph
    {
        auto lines = tokenise(text);
        auto & h = header(lines, "vog", 3);
        VertexOrderedGraph g;
        g.n = Vertex(number(h, 1, 0, max_vertices, "vertex count"));
        auto m = number(h, 2, 0, pairs(g.n), "edge count");
        body(lines, m, 2);

        for (std::size_t i = 1 ; i < lines.size() ; ++i) {
            Vertex u = Vertex(number(lines[i], 0, 1, g.n, "vertex") - 1);
            Vertex v = Vertex(number(lines[i], 1, 1, g.n, "vertex") - 1);
            g.edges.emplace_back(u, v);
        }
        check_pairs(lines, g.edges);
        return g;
    }

    auto decode_coloring(string_view text) -> Coloring
    {
        auto lines = tokenise(text);
        auto & h = header(lines, "col", 3);
        auto m = number(h, 1, 0, max_label, "edge count");
        Coloring c;
        c.q = unsigned(number(h, 2, 1, 255, "colour count"));
        body(lines, m, 2);

        c.colors.assign(m, 0);
        for (std::size_t i = 1 ; i < lines.size() ; ++i) {
            auto r = number(lines[i], 0, 1, m, "rank");
            auto colour = number(lines[i], 1, 1, c.q, "colour");
            if (c.colors[r - 1] != 0)
                throw ParseError(lines[i].number, "rank " + std::to_string(r) + " coloured twice");
            c.colors[r - 1] = std::uint8_t(colour);
        }
        return c;
    }

    auto decode_parts(string_view text, Vertex n) -> vector<VertexSet>
    {
        auto lines = tokenise(text);
        vector<VertexSet> parts;
        vector<std::size_t> owner(n, 0);
        for (auto & line : lines) {
            VertexSet part;
            for (std::size_t i = 0 ; i < line.fields.size() ; ++i) {
                Vertex v = Vertex(number(line, i, 1, n, "vertex") - 1);
                if (owner[v])
                    throw ParseError(line.number, "vertex " + std::to_string(v + 1) + " appears in two parts or twice");
                owner[v] = line.number;
                part.push_back(v);
            }
            std::sort(part.begin(), part.end());
            parts.push_back(std::move(part));
        }
        return parts;
    }

    auto encode(const EdgeOrderedGraph & g) -> string
    {
        std::ostringstream out;
        out << "eog " << g.vertex_count() << ' ' << g.edge_count() << '\n';
        for (auto & e : g.edges())
            out << e.u + 1 << ' ' << e.v + 1 << ' ' << e.label << '\n';
        return out.str();
    }

    auto encode(const EdgeLabeledGraph & g) -> string
    {
        std::ostringstream out;
        out << "elg " << g.n << ' ' << g.edges.size() << ' ' << g.label_count << '\n';
        for (auto & e : g.edges)
            out << e.u + 1 << ' ' << e.v + 1 << ' ' << e.label << '\n';
        return out.str();
    }

    auto encode(const VertexOrderedGraph & g) -> string
    {
        std::ostringstream out;
        out << "vog " << g.n << ' ' << g.edges.size() << '\n';
        for (auto [u, v] : g.edges)
            out << u + 1 << ' ' << v + 1 << '\n';
        return out.str();
    }

    auto encode(const Coloring & c) -> string
    {
        std::ostringstream out;
        out << "col " << c.colors.size() << ' ' << c.q << '\n';
        for (std::size_t r = 0 ; r < c.colors.size() ; ++r)
            out << r + 1 << ' ' << unsigned(c.colors[r]) << '\n';
        return out.str();
    }

    auto encode_parts(const vector<VertexSet> & parts) -> string
    {
        std::ostringstream out;
        for (auto & part : parts) {
            for (std::size_t i = 0 ; i < part.size() ; ++i)
                out << (i ? " " : "") << part[i] + 1;
            out << '\n';
        }
        return out.str();
    }

    auto read_file(const string & path) -> string
    {
        std::ifstream in(path, std::ios::binary);
        if (! in)
            throw ParseError(0, "cannot open '" + path + "'");
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    }
}
