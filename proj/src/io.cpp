#include "semilap/io.hpp"

#include <cctype>
#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace semilap::io {

namespace {

struct Token {
    const char* begin;
    const char* end;
};

// splits a line at '#' and whitespace
std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> tokens;
    const char* p = line.data();
    const char* stop = p + line.size();
    while (p < stop && *p != '#') {
        while (p < stop && *p != '#' && std::isspace(static_cast<unsigned char>(*p))) {
            ++p;
        }
        if (p >= stop || *p == '#') {
            break;
        }
        const char* begin = p;
        while (p < stop && *p != '#' && !std::isspace(static_cast<unsigned char>(*p))) {
            ++p;
        }
        tokens.push_back({begin, p});
    }
    return tokens;
}

[[noreturn]] void fail(const std::string& what, long line_number) {
    throw ParseError("line " + std::to_string(line_number) + ": " + what);
}

VertexId parse_vertex(const Token& t, long line_number) {
    VertexId v = 0;
    auto [ptr, ec] = std::from_chars(t.begin, t.end, v);
    if (ec != std::errc{} || ptr != t.end || v < 0) {
        fail("expected a nonnegative vertex id, got '" + std::string(t.begin, t.end) + "'", line_number);
    }
    return v;
}

double parse_real(const Token& t, long line_number) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(t.begin, t.end, v);
    if (ec != std::errc{} || ptr != t.end) {
        fail("expected a number, got '" + std::string(t.begin, t.end) + "'", line_number);
    }
    return v;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path);
    }
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw ParseError("cannot write " + path);
    }
    return out;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

WeightedGraph read_edge_list(std::istream& in) {
    WeightedGraph::Builder builder;
    std::string line;
    long line_number = 0;
    bool any = false;
    while (std::getline(in, line)) {
        ++line_number;
        auto tokens = tokenize(line);
        if (tokens.empty()) {
            continue;
        }
        if (tokens.size() != 3) {
            fail("expected 'x y weight'", line_number);
        }
        VertexId x = parse_vertex(tokens[0], line_number);
        VertexId y = parse_vertex(tokens[1], line_number);
        double w = parse_real(tokens[2], line_number);
        builder.add_edge(x, y, w);
        any = true;
    }
    if (!any) {
        throw ParseError("edge list is empty");
    }
    return std::move(builder).finalize();
}

WeightedGraph read_edge_list_file(const std::string& path) {
    auto in = open_input(path);
    try {
        return read_edge_list(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_edge_list(std::ostream& out, const WeightedGraph& g) {
    for (VertexId x = 0; x < g.vertex_count(); ++x) {
        auto nbr = g.neighbors(x);
        auto wts = g.neighbor_weights(x);
        for (std::size_t i = 0; i < nbr.size(); ++i) {
            if (x < nbr[i]) {
                out << x << ' ' << nbr[i] << ' ' << format_double(wts[i]) << '\n';
            }
        }
    }
}

void write_edge_list_file(const std::string& path, const WeightedGraph& g) {
    auto out = open_output(path);
    write_edge_list(out, g);
}

VertexFunction read_vertex_function(std::istream& in, int vertex_count, bool require_all) {
    VertexFunction u = VertexFunction::Zero(vertex_count);
    std::vector<char> seen(static_cast<std::size_t>(vertex_count), 0);
    std::string line;
    long line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        auto tokens = tokenize(line);
        if (tokens.empty()) {
            continue;
        }
        if (tokens.size() != 2) {
            fail("expected 'x value'", line_number);
        }
        VertexId x = parse_vertex(tokens[0], line_number);
        if (x >= vertex_count) {
            fail("vertex " + std::to_string(x) + " outside [0," + std::to_string(vertex_count) + ")", line_number);
        }
        if (seen[static_cast<std::size_t>(x)]) {
            fail("duplicate value for vertex " + std::to_string(x), line_number);
        }
        seen[static_cast<std::size_t>(x)] = 1;
        u[x] = parse_real(tokens[1], line_number);
    }
    if (require_all) {
        for (int v = 0; v < vertex_count; ++v) {
            if (!seen[static_cast<std::size_t>(v)]) {
                throw ParseError("no value for vertex " + std::to_string(v));
            }
        }
    }
    return u;
}

VertexFunction read_vertex_function_file(const std::string& path, int vertex_count, bool require_all) {
    auto in = open_input(path);
    try {
        return read_vertex_function(in, vertex_count, require_all);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_vertex_function(std::ostream& out, const VertexFunction& u) {
    for (Eigen::Index x = 0; x < u.size(); ++x) {
        out << x << ' ' << format_double(u[x]) << '\n';
    }
}

void write_vertex_function_file(const std::string& path, const VertexFunction& u) {
    auto out = open_output(path);
    write_vertex_function(out, u);
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open " + path);
    }
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    char chunk[4096];
    while (in.read(chunk, sizeof(chunk)) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            hash ^= static_cast<unsigned char>(chunk[i]);
            hash *= 0x100000001b3ULL;
        }
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, hash);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open " + path);
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ParseError("cannot write " + path);
    }
    out << content;
}

}  // namespace semilap::io
