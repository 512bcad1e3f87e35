#pragma once

#include "semilap/graph.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace semilap {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace io {

// 17 significant digits: enough for double round-trips through text.
std::string format_double(double v);

// Edge list, one "x y weight" per line. '#' starts a comment, blank lines are
// skipped. Vertex ids are nonnegative integers; the vertex set is 0..max id.
WeightedGraph read_edge_list(std::istream& in);
WeightedGraph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const WeightedGraph& g);
void write_edge_list_file(const std::string& path, const WeightedGraph& g);

// Vertex function, one "x value" per line, same comment rules. Ids must lie
// in [0, vertex_count); duplicates are errors. With require_all, every id
// must appear; otherwise missing ids default to 0.
VertexFunction read_vertex_function(std::istream& in, int vertex_count, bool require_all = true);
VertexFunction read_vertex_function_file(const std::string& path, int vertex_count, bool require_all = true);
void write_vertex_function(std::ostream& out, const VertexFunction& u);
void write_vertex_function_file(const std::string& path, const VertexFunction& u);

// FNV-1a 64-bit digest of a file's bytes, as 16 hex characters. Used to pin
// inputs inside run manifests.
std::string file_digest(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace io
}  // namespace semilap
