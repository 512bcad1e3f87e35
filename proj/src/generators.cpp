#include "semilap/generators.hpp"

#include "semilap/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace semilap {

namespace {

void check_branching(int branching) {
    if (branching < 2) {
        throw std::domain_error("tree branching number must be at least 2");
    }
}

void check_layer(int n, int depth, const char* what) {
    if (n < 0 || n > depth) {
        throw std::out_of_range(std::string(what) + ": layer " + std::to_string(n) + " outside [0," +
                                std::to_string(depth) + "]");
    }
}

}  // namespace

RadialTreeModel::RadialTreeModel(int branching, std::vector<double> reduced_weights)
    : branching_(branching), w_(std::move(reduced_weights)) {
    check_branching(branching_);
    if (w_.empty()) {
        throw std::domain_error("radial model needs at least one layer weight");
    }
    prefix_.resize(w_.size());
    double sum = 0.0;
    for (std::size_t n = 0; n < w_.size(); ++n) {
        if (!std::isfinite(w_[n]) || w_[n] <= 0.0) {
            throw std::domain_error("radial model weight w_" + std::to_string(n) + " must be positive");
        }
        sum += w_[n];
        prefix_[n] = sum;
    }
}

double RadialTreeModel::reduced_weight(int n) const {
    check_layer(n, depth(), "reduced_weight");
    return w_[static_cast<std::size_t>(n)];
}

double RadialTreeModel::edge_weight(int n) const {
    check_layer(n, depth(), "edge_weight");
    return w_[static_cast<std::size_t>(n)] * std::pow(static_cast<double>(branching_ - 1), -n);
}

double RadialTreeModel::log_layer_size(int n) const {
    check_layer(n, depth(), "log_layer_size");
    if (n == 0) {
        return 0.0;
    }
    return std::log(static_cast<double>(branching_)) + (n - 1) * std::log(static_cast<double>(branching_ - 1));
}

double RadialTreeModel::layer_size(int n) const {
    return std::exp(log_layer_size(n));
}

double RadialTreeModel::layer_measure(int n) const {
    check_layer(n, depth(), "layer_measure");
    if (n == 0) {
        return branching_ * w_[0];
    }
    return branching_ * (w_[static_cast<std::size_t>(n) - 1] + w_[static_cast<std::size_t>(n)]);
}

double RadialTreeModel::ball_volume(int n) const {
    check_layer(n, depth(), "ball_volume");
    return branching_ * (2.0 * prefix_[static_cast<std::size_t>(n)] - w_[static_cast<std::size_t>(n)]);
}

WeightedGraph make_path(int edge_count, double weight) {
    if (edge_count < 1) {
        throw std::domain_error("path needs at least one edge");
    }
    WeightedGraph::Builder builder(edge_count + 1);
    for (int i = 0; i < edge_count; ++i) {
        builder.add_edge(i, i + 1, weight);
    }
    return std::move(builder).finalize();
}

std::vector<std::int64_t> tree_layer_offsets(int branching, int depth) {
    check_branching(branching);
    if (depth < 0) {
        throw std::domain_error("tree depth must be nonnegative");
    }
    std::vector<std::int64_t> offsets(static_cast<std::size_t>(depth) + 2, 0);
    std::int64_t layer = 1;
    for (int n = 0; n <= depth; ++n) {
        offsets[static_cast<std::size_t>(n) + 1] = offsets[static_cast<std::size_t>(n)] + layer;
        layer = (n == 0) ? branching : layer * (branching - 1);
    }
    return offsets;
}

WeightedGraph make_tree(int branching, int depth, const std::function<double(int)>& level_weight,
                        std::int64_t vertex_budget) {
    check_branching(branching);
    if (depth < 1) {
        throw std::domain_error("tree depth must be at least 1");
    }
    std::int64_t total = 1;
    std::int64_t layer = 1;
    for (int n = 1; n <= depth; ++n) {
        layer *= (n == 1) ? branching : (branching - 1);
        total += layer;
        if (total > vertex_budget) {
            throw std::domain_error("tree would have more than " + std::to_string(vertex_budget) +
                                    " vertices (depth " + std::to_string(depth) + ", branching " +
                                    std::to_string(branching) + ")");
        }
    }

    auto offsets = tree_layer_offsets(branching, depth);
    WeightedGraph::Builder builder(static_cast<int>(total));
    for (int n = 0; n < depth; ++n) {
        const double w = level_weight(n);
        if (!std::isfinite(w) || w <= 0.0) {
            throw std::domain_error("level weight at depth " + std::to_string(n) + " must be positive");
        }
        const std::int64_t layer_begin = offsets[static_cast<std::size_t>(n)];
        const std::int64_t layer_end = offsets[static_cast<std::size_t>(n) + 1];
        const std::int64_t child_begin = offsets[static_cast<std::size_t>(n) + 1];
        const int fanout = (n == 0) ? branching : branching - 1;
        for (std::int64_t v = layer_begin; v < layer_end; ++v) {
            const std::int64_t local = v - layer_begin;
            for (int c = 0; c < fanout; ++c) {
                builder.add_edge(static_cast<VertexId>(v), static_cast<VertexId>(child_begin + local * fanout + c), w);
            }
        }
    }
    return std::move(builder).finalize();
}

std::pair<WeightedGraph, VertexFunction> radial_to_explicit(const RadialTreeModel& model,
                                                            const std::vector<double>& radial_values,
                                                            int depth,
                                                            std::int64_t vertex_budget) {
    if (depth < 1 || depth > model.depth()) {
        throw std::domain_error("radial_to_explicit: depth must lie in [1," + std::to_string(model.depth()) + "]");
    }
    if (static_cast<int>(radial_values.size()) < depth + 1) {
        throw std::domain_error("radial_to_explicit: radial values must cover layers 0.." + std::to_string(depth));
    }
    WeightedGraph g = make_tree(model.branching(), depth, [&](int n) { return model.edge_weight(n); }, vertex_budget);
    auto offsets = tree_layer_offsets(model.branching(), depth);
    VertexFunction u(g.vertex_count());
    for (int n = 0; n <= depth; ++n) {
        for (std::int64_t v = offsets[static_cast<std::size_t>(n)]; v < offsets[static_cast<std::size_t>(n) + 1]; ++v) {
            u[static_cast<Eigen::Index>(v)] = radial_values[static_cast<std::size_t>(n)];
        }
    }
    return {std::move(g), std::move(u)};
}

void write_radial_model(std::ostream& out, const RadialTreeModel& model, const std::string& header) {
    if (!header.empty()) {
        std::istringstream lines(header);
        std::string line;
        while (std::getline(lines, line)) {
            out << "# " << line << '\n';
        }
    }
    out << "# n w_n layer_log_size\n";
    for (int n = 0; n <= model.depth(); ++n) {
        out << n << ' ' << io::format_double(model.reduced_weight(n)) << ' '
            << io::format_double(model.log_layer_size(n)) << '\n';
    }
}

RadialTreeModel read_radial_model(std::istream& in) {
    std::vector<double> weights;
    double log_n1 = 0.0;
    std::string line;
    long line_number = 0;
    long next_layer = 0;
    while (std::getline(in, line)) {
        ++line_number;
        std::string_view view(line);
        if (auto hash = view.find('#'); hash != std::string_view::npos) {
            view = view.substr(0, hash);
        }
        std::istringstream fields{std::string(view)};
        long n = 0;
        double w = 0.0;
        double log_size = 0.0;
        if (!(fields >> n)) {
            continue;  // blank or comment-only line
        }
        if (!(fields >> w >> log_size) || n != next_layer) {
            throw ParseError("line " + std::to_string(line_number) + ": expected row '" +
                             std::to_string(next_layer) + " w_n layer_log_size'");
        }
        if (n == 1) {
            log_n1 = log_size;
        }
        weights.push_back(w);
        ++next_layer;
    }
    if (weights.size() < 2) {
        throw ParseError("radial model table needs at least layers 0 and 1");
    }
    const int branching = static_cast<int>(std::lround(std::exp(log_n1)));
    return RadialTreeModel(branching, std::move(weights));
}

}  // namespace semilap
