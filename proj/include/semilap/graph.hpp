#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace semilap {

using VertexId = int;

// Values of a function V -> R, indexed by vertex id.
using VertexFunction = Eigen::VectorXd;

// Undirected graph with positive symmetric edge weights mu_xy and the induced
// vertex measure mu(x) = sum of weights incident to x. Immutable once built;
// construct through Builder.
class WeightedGraph {
public:
    class Builder {
    public:
        Builder() = default;
        explicit Builder(int vertex_count_hint);

        // Declares mu_xy = weight. Each unordered edge should be declared
        // once; a repeated declaration is accepted when the weight agrees and
        // recorded as a defect when it does not (first declaration wins).
        // Self-loops and nonpositive or non-finite weights are recorded as
        // defects and skipped. Negative ids throw std::invalid_argument.
        Builder& add_edge(VertexId x, VertexId y, double weight);

        // Ensures vertex v exists even if no edge touches it.
        Builder& require_vertex(VertexId v);

        WeightedGraph finalize() &&;

    private:
        struct RawEdge {
            VertexId x;
            VertexId y;
            double w;
        };
        std::vector<RawEdge> edges_;
        std::vector<std::string> defects_;
        int min_vertex_count_ = 0;
    };

    int vertex_count() const noexcept { return vertex_count_; }
    std::int64_t edge_count() const noexcept { return edge_count_; }

    int degree(VertexId x) const;
    std::span<const VertexId> neighbors(VertexId x) const;
    std::span<const double> neighbor_weights(VertexId x) const;
    bool has_edge(VertexId x, VertexId y) const;
    double edge_weight(VertexId x, VertexId y) const;  // 0 when not adjacent

    double vertex_measure(VertexId x) const;
    const VertexFunction& vertex_measures() const noexcept { return measure_; }
    double total_measure() const noexcept { return total_measure_; }

    // Problems recorded while building (asymmetric declarations, self-loops,
    // bad weights). validate() folds these into its report.
    const std::vector<std::string>& construction_defects() const noexcept { return defects_; }

    void check_vertex(VertexId x) const;  // throws std::out_of_range

private:
    WeightedGraph() = default;

    int vertex_count_ = 0;
    std::int64_t edge_count_ = 0;
    std::vector<std::int64_t> offsets_{0};
    std::vector<VertexId> adjacency_;
    std::vector<double> weights_;
    VertexFunction measure_;
    double total_measure_ = 0.0;
    std::vector<std::string> defects_;
};

// Full structural check. Empty result iff weights are symmetric positive with
// no self-loops, every vertex has an incident edge, and the graph is
// connected. Each violation names the offending vertex or edge.
std::vector<std::string> validate(const WeightedGraph& g);

// BFS hop distances from origin; -1 marks unreachable vertices.
Eigen::VectorXi distances_from(const WeightedGraph& g, VertexId origin);

// Hop distance, or nullopt when y is unreachable from x.
std::optional<int> graph_distance(const WeightedGraph& g, VertexId x, VertexId y);

// Vertices within hop distance `radius` of origin, ascending id.
std::vector<VertexId> ball(const WeightedGraph& g, VertexId origin, int radius);

// mu(B(origin, r)) for r = 0..max_radius. Entries stop growing once the ball
// swallows the component of origin.
VertexFunction volume_profile(const WeightedGraph& g, VertexId origin, int max_radius);

double ball_volume(const WeightedGraph& g, VertexId origin, int radius);

// p0_star = max over directed edges (x,y) of mu(x)/mu_xy, the constant of the
// bounded measure-ratio condition (often written (p0)). Always >= 1 on a
// graph with at least one edge; equals 1 only when every vertex has a single
// incident edge. Returns 0 on an edgeless graph.
double measure_ratio_bound(const WeightedGraph& g);

}  // namespace semilap
