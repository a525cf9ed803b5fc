/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef EORDERS_IO_HH
#define EORDERS_IO_HH 1

#include <eorders/core.hh>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace eorders
{
    class ParseError : public std::runtime_error
    {
        private:
            std::size_t _line;

        public:
            ParseError(std::size_t line, const std::string & message);

            /// 1-based; zero when the problem is not tied to a line.
            auto line() const -> std::size_t { return _line; }
    };

    /**
     * Line-based text formats. Vertex ids are 1-based on disk, '#' starts a
     * comment, blank lines are skipped. Decoders only return valid objects.
     *
     *   eog <n> <m>      then m lines  <u> <v> <label>
     *   elg <n> <m> <L>  then m lines  <u> <v> <label>
     *   vog <n> <m>      then m lines  <u> <v>
     *   col <m> <q>      then m lines  <rank> <colour>
     *
     * eog labels may be any distinct positive integers and are normalised
     * to ranks 1..m preserving their order.
     */
    auto decode_eog(std::string_view text) -> EdgeOrderedGraph;
    auto decode_elg(std::string_view text) -> EdgeLabeledGraph;
    auto decode_vog(std::string_view text) -> VertexOrderedGraph;
    auto decode_coloring(std::string_view text) -> Coloring;

    /// One part per line, space-separated vertex ids. Returns 0-based sets.
    auto decode_parts(std::string_view text, Vertex n) -> std::vector<VertexSet>;

    auto encode(const EdgeOrderedGraph & g) -> std::string;
    auto encode(const EdgeLabeledGraph & g) -> std::string;
    auto encode(const VertexOrderedGraph & g) -> std::string;
    auto encode(const Coloring & c) -> std::string;
    auto encode_parts(const std::vector<VertexSet> & parts) -> std::string;

    /// Reads a whole file; throws ParseError(0, ...) if it cannot be opened.
    auto read_file(const std::string & path) -> std::string;
}

#endif
