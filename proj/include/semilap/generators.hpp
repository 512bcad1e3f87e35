#pragma once

#include "semilap/graph.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <utility>
#include <vector>

namespace semilap {

// Radial data of a rooted homogeneous tree with branching number N: layer n
// holds |D_n| vertices (1, N, N(N-1), ...), and every edge between layers n
// and n+1 carries the same weight mu_n. Stored in reduced form
// w_n = (N-1)^n mu_n, which keeps all layer quantities polynomially sized.
// Layer sizes are kept as logarithms since |D_n| overflows quickly.
class RadialTreeModel {
public:
    RadialTreeModel(int branching, std::vector<double> reduced_weights);

    int branching() const noexcept { return branching_; }
    int depth() const noexcept { return static_cast<int>(w_.size()) - 1; }

    double reduced_weight(int n) const;  // w_n
    double edge_weight(int n) const;     // mu_n = w_n / (N-1)^n
    double log_layer_size(int n) const;  // ln |D_n|
    double layer_size(int n) const;      // exp of the above; overflows to inf when deep
    double layer_measure(int n) const;   // mu(D_n) = N w_0 at n=0, N (w_{n-1} + w_n) for n >= 1
    double ball_volume(int n) const;     // mu(B(o,n)) = N (2 sum_{k<=n} w_k - w_n)

private:
    int branching_;
    std::vector<double> w_;
    std::vector<double> prefix_;  // prefix_[n] = sum_{k<=n} w_k
};

// Path 0-1-...-edge_count with constant edge weight.
WeightedGraph make_path(int edge_count, double weight = 1.0);

// Rooted truncation of the N-homogeneous tree: root 0 with N children, every
// other non-rim vertex with N-1 children, cut after `depth` layers.
// level_weight(n) is the weight of all edges between layers n and n+1.
// Vertex ids are breadth-first: layer n occupies a contiguous block starting
// at tree_layer_offsets(N, depth)[n]. Throws std::domain_error when the
// vertex count would exceed vertex_budget.
WeightedGraph make_tree(int branching, int depth, const std::function<double(int)>& level_weight,
                        std::int64_t vertex_budget = 1000000);

// offsets[n] = id of the first vertex in layer n; offsets[depth+1] = total.
std::vector<std::int64_t> tree_layer_offsets(int branching, int depth);

// Explicit truncation of the model together with the layer-constant lift of
// radial_values (radial_values[n] on layer n; must cover 0..depth).
std::pair<WeightedGraph, VertexFunction> radial_to_explicit(const RadialTreeModel& model,
                                                            const std::vector<double>& radial_values,
                                                            int depth,
                                                            std::int64_t vertex_budget = 1000000);

// Text table "n w_n layer_log_size", one row per layer, preceded by
// '#'-prefixed header lines (the caller supplies the header text).
void write_radial_model(std::ostream& out, const RadialTreeModel& model, const std::string& header = "");
RadialTreeModel read_radial_model(std::istream& in);

}  // namespace semilap
