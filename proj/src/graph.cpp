#include "semilap/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>

namespace semilap {

namespace {

std::string edge_name(VertexId x, VertexId y) {
    std::ostringstream os;
    os << "(" << x << "," << y << ")";
    return os.str();
}

}  // namespace

WeightedGraph::Builder::Builder(int vertex_count_hint) {
    if (vertex_count_hint > 0) {
        edges_.reserve(static_cast<std::size_t>(vertex_count_hint));
        min_vertex_count_ = vertex_count_hint;
    }
}

WeightedGraph::Builder& WeightedGraph::Builder::add_edge(VertexId x, VertexId y, double weight) {
    if (x < 0 || y < 0) {
        throw std::invalid_argument("add_edge: vertex ids must be nonnegative");
    }
    min_vertex_count_ = std::max(min_vertex_count_, std::max(x, y) + 1);
    if (x == y) {
        defects_.push_back("self-loop at vertex " + std::to_string(x));
        return *this;
    }
    if (!std::isfinite(weight) || weight <= 0.0) {
        defects_.push_back("nonpositive weight on edge " + edge_name(x, y));
        return *this;
    }
    edges_.push_back({x, y, weight});
    return *this;
}

WeightedGraph::Builder& WeightedGraph::Builder::require_vertex(VertexId v) {
    if (v < 0) {
        throw std::invalid_argument("require_vertex: vertex ids must be nonnegative");
    }
    min_vertex_count_ = std::max(min_vertex_count_, v + 1);
    return *this;
}

WeightedGraph WeightedGraph::Builder::finalize() && {
    WeightedGraph g;
    g.vertex_count_ = min_vertex_count_;
    g.defects_ = std::move(defects_);

    std::map<std::pair<VertexId, VertexId>, double> canonical;
    for (const RawEdge& e : edges_) {
        auto key = std::minmax(e.x, e.y);
        auto [it, inserted] = canonical.emplace(key, e.w);
        if (!inserted && it->second != e.w) {
            std::ostringstream os;
            os << "asymmetric weight on edge " << edge_name(key.first, key.second) << ": " << it->second
               << " vs " << e.w;
            g.defects_.push_back(os.str());
        }
    }

    const int n = g.vertex_count_;
    std::vector<std::int64_t> deg(static_cast<std::size_t>(n), 0);
    for (const auto& [key, w] : canonical) {
        ++deg[static_cast<std::size_t>(key.first)];
        ++deg[static_cast<std::size_t>(key.second)];
    }
    g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int v = 0; v < n; ++v) {
        g.offsets_[static_cast<std::size_t>(v) + 1] = g.offsets_[static_cast<std::size_t>(v)] + deg[static_cast<std::size_t>(v)];
    }
    g.adjacency_.resize(static_cast<std::size_t>(g.offsets_.back()));
    g.weights_.resize(g.adjacency_.size());

    std::vector<std::int64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    auto place = [&](VertexId from, VertexId to, double w) {
        auto slot = static_cast<std::size_t>(cursor[static_cast<std::size_t>(from)]++);
        g.adjacency_[slot] = to;
        g.weights_[slot] = w;
    };
    // map iteration is ordered, so each adjacency list comes out sorted by id
    for (const auto& [key, w] : canonical) {
        place(key.first, key.second, w);
        place(key.second, key.first, w);
    }

    g.edge_count_ = static_cast<std::int64_t>(canonical.size());
    g.measure_ = VertexFunction::Zero(n);
    for (int v = 0; v < n; ++v) {
        double m = 0.0;
        for (std::int64_t i = g.offsets_[static_cast<std::size_t>(v)]; i < g.offsets_[static_cast<std::size_t>(v) + 1]; ++i) {
            m += g.weights_[static_cast<std::size_t>(i)];
        }
        g.measure_[v] = m;
    }
    g.total_measure_ = g.measure_.sum();
    return g;
}

void WeightedGraph::check_vertex(VertexId x) const {
    if (x < 0 || x >= vertex_count_) {
        throw std::out_of_range("vertex " + std::to_string(x) + " outside [0," + std::to_string(vertex_count_) + ")");
    }
}

int WeightedGraph::degree(VertexId x) const {
    check_vertex(x);
    return static_cast<int>(offsets_[static_cast<std::size_t>(x) + 1] - offsets_[static_cast<std::size_t>(x)]);
}

std::span<const VertexId> WeightedGraph::neighbors(VertexId x) const {
    check_vertex(x);
    auto begin = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(x)]);
    auto end = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(x) + 1]);
    return {adjacency_.data() + begin, end - begin};
}

std::span<const double> WeightedGraph::neighbor_weights(VertexId x) const {
    check_vertex(x);
    auto begin = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(x)]);
    auto end = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(x) + 1]);
    return {weights_.data() + begin, end - begin};
}

bool WeightedGraph::has_edge(VertexId x, VertexId y) const {
    return edge_weight(x, y) != 0.0;
}

double WeightedGraph::edge_weight(VertexId x, VertexId y) const {
    check_vertex(x);
    check_vertex(y);
    auto nbr = neighbors(x);
    auto it = std::lower_bound(nbr.begin(), nbr.end(), y);
    if (it == nbr.end() || *it != y) {
        return 0.0;
    }
    return neighbor_weights(x)[static_cast<std::size_t>(it - nbr.begin())];
}

double WeightedGraph::vertex_measure(VertexId x) const {
    check_vertex(x);
    return measure_[x];
}

std::vector<std::string> validate(const WeightedGraph& g) {
    std::vector<std::string> problems = g.construction_defects();
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (g.degree(v) == 0) {
            problems.push_back("vertex " + std::to_string(v) + " has no incident edge");
        }
    }
    if (g.vertex_count() > 0) {
        Eigen::VectorXi dist = distances_from(g, 0);
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            if (dist[v] < 0) {
                problems.push_back("graph disconnected: vertex " + std::to_string(v) + " unreachable from vertex 0");
                break;
            }
        }
    }
    return problems;
}

Eigen::VectorXi distances_from(const WeightedGraph& g, VertexId origin) {
    g.check_vertex(origin);
    Eigen::VectorXi dist = Eigen::VectorXi::Constant(g.vertex_count(), -1);
    std::deque<VertexId> queue;
    dist[origin] = 0;
    queue.push_back(origin);
    while (!queue.empty()) {
        VertexId x = queue.front();
        queue.pop_front();
        for (VertexId y : g.neighbors(x)) {
            if (dist[y] < 0) {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    return dist;
}

std::optional<int> graph_distance(const WeightedGraph& g, VertexId x, VertexId y) {
    g.check_vertex(y);
    Eigen::VectorXi dist = distances_from(g, x);
    if (dist[y] < 0) {
        return std::nullopt;
    }
    return dist[y];
}

std::vector<VertexId> ball(const WeightedGraph& g, VertexId origin, int radius) {
    if (radius < 0) {
        throw std::invalid_argument("ball: radius must be nonnegative");
    }
    Eigen::VectorXi dist = distances_from(g, origin);
    std::vector<VertexId> result;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (dist[v] >= 0 && dist[v] <= radius) {
            result.push_back(v);
        }
    }
    return result;
}

VertexFunction volume_profile(const WeightedGraph& g, VertexId origin, int max_radius) {
    if (max_radius < 0) {
        throw std::invalid_argument("volume_profile: max_radius must be nonnegative");
    }
    Eigen::VectorXi dist = distances_from(g, origin);
    VertexFunction volumes = VertexFunction::Zero(max_radius + 1);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (dist[v] >= 0 && dist[v] <= max_radius) {
            volumes[dist[v]] += g.vertex_measure(v);
        }
    }
    for (int r = 1; r <= max_radius; ++r) {
        volumes[r] += volumes[r - 1];
    }
    return volumes;
}

double ball_volume(const WeightedGraph& g, VertexId origin, int radius) {
    if (radius < 0) {
        throw std::invalid_argument("ball_volume: radius must be nonnegative");
    }
    Eigen::VectorXi dist = distances_from(g, origin);
    double total = 0.0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (dist[v] >= 0 && dist[v] <= radius) {
            total += g.vertex_measure(v);
        }
    }
    return total;
}

double measure_ratio_bound(const WeightedGraph& g) {
    double p0_star = 0.0;
    for (VertexId x = 0; x < g.vertex_count(); ++x) {
        const double mx = g.vertex_measure(x);
        for (double w : g.neighbor_weights(x)) {
            p0_star = std::max(p0_star, mx / w);
        }
    }
    return p0_star;
}

}  // namespace semilap
