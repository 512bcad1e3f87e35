#include "semilap/operators.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace semilap {

namespace {

void check_size(const WeightedGraph& g, const VertexFunction& u, const char* what) {
    if (u.size() != g.vertex_count()) {
        throw std::invalid_argument(std::string(what) + ": function has " + std::to_string(u.size()) +
                                    " values for " + std::to_string(g.vertex_count()) + " vertices");
    }
}

void check_nonnegative(const VertexFunction& u, const char* what) {
    for (Eigen::Index x = 0; x < u.size(); ++x) {
        if (!(u[x] >= 0.0)) {
            throw std::domain_error(std::string(what) + ": u(" + std::to_string(x) + ") = " +
                                    std::to_string(u[x]) + " is not nonnegative");
        }
    }
}

double power(double base, double sigma) {
    return base == 0.0 ? 0.0 : std::pow(base, sigma);
}

}  // namespace

InteriorMask InteriorMask::all(const WeightedGraph& g) {
    return InteriorMask(std::vector<std::uint8_t>(static_cast<std::size_t>(g.vertex_count()), 1));
}

InteriorMask InteriorMask::from_boundary(const WeightedGraph& g, std::span<const VertexId> boundary) {
    std::vector<std::uint8_t> flags(static_cast<std::size_t>(g.vertex_count()), 1);
    for (VertexId v : boundary) {
        g.check_vertex(v);
        flags[static_cast<std::size_t>(v)] = 0;
    }
    return InteriorMask(std::move(flags));
}

InteriorMask InteriorMask::full_degree(const WeightedGraph& g, int ambient_degree) {
    std::vector<std::uint8_t> flags(static_cast<std::size_t>(g.vertex_count()), 0);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        flags[static_cast<std::size_t>(v)] = (g.degree(v) == ambient_degree) ? 1 : 0;
    }
    return InteriorMask(std::move(flags));
}

InteriorMask InteriorMask::within_radius(const WeightedGraph& g, VertexId origin, int radius) {
    Eigen::VectorXi dist = distances_from(g, origin);
    std::vector<std::uint8_t> flags(static_cast<std::size_t>(g.vertex_count()), 0);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        flags[static_cast<std::size_t>(v)] = (dist[v] >= 0 && dist[v] <= radius) ? 1 : 0;
    }
    return InteriorMask(std::move(flags));
}

int InteriorMask::interior_count() const {
    int count = 0;
    for (auto f : flags_) {
        count += f;
    }
    return count;
}

std::vector<VertexId> InteriorMask::boundary_vertices() const {
    std::vector<VertexId> result;
    for (std::size_t v = 0; v < flags_.size(); ++v) {
        if (!flags_[v]) {
            result.push_back(static_cast<VertexId>(v));
        }
    }
    return result;
}

VertexFunction laplacian(const WeightedGraph& g, const VertexFunction& u) {
    check_size(g, u, "laplacian");
    VertexFunction result(g.vertex_count());
    for (VertexId x = 0; x < g.vertex_count(); ++x) {
        auto nbr = g.neighbors(x);
        auto wts = g.neighbor_weights(x);
        double acc = 0.0;
        for (std::size_t i = 0; i < nbr.size(); ++i) {
            acc += wts[i] * (u[nbr[i]] - u[x]);
        }
        result[x] = nbr.empty() ? 0.0 : acc / g.vertex_measure(x);
    }
    return result;
}

VertexFunction residual(const WeightedGraph& g, const VertexFunction& u, double sigma) {
    check_size(g, u, "residual");
    if (!(sigma > 0.0)) {
        throw std::domain_error("residual: sigma must be positive");
    }
    check_nonnegative(u, "residual");
    VertexFunction result = laplacian(g, u);
    for (Eigen::Index x = 0; x < result.size(); ++x) {
        result[x] += power(u[x], sigma);
    }
    return result;
}

std::string InequalityReport::summary() const {
    std::ostringstream os;
    os << "interior vertices: " << interior_count << ", tolerance: " << tolerance << "\n";
    if (passed()) {
        os << "no interior violation; max interior residual " << max_interior_residual;
        if (worst_interior_vertex >= 0) {
            os << " at vertex " << worst_interior_vertex;
        }
        os << "\n";
    } else {
        os << violations.size() << " interior violation(s); worst residual " << max_interior_residual
           << " at vertex " << worst_interior_vertex << "\n";
        const std::size_t shown = std::min<std::size_t>(violations.size(), 20);
        for (std::size_t i = 0; i < shown; ++i) {
            os << "  vertex " << violations[i] << ": residual " << residuals[violations[i]] << "\n";
        }
        if (shown < violations.size()) {
            os << "  ... " << (violations.size() - shown) << " more\n";
        }
    }
    if (boundary_positive_count > 0) {
        os << "boundary vertices with positive residual: " << boundary_positive_count
           << " (not counted as violations), max " << max_boundary_residual << "\n";
    }
    return os.str();
}

InequalityReport check_inequality(const WeightedGraph& g, const VertexFunction& u, double sigma,
                                  const InteriorMask& mask, double tolerance) {
    if (mask.size() != g.vertex_count()) {
        throw std::invalid_argument("check_inequality: mask size does not match graph");
    }
    InequalityReport report;
    report.sigma = sigma;
    report.tolerance = tolerance;
    report.residuals = residual(g, u, sigma);
    report.max_interior_residual = -std::numeric_limits<double>::infinity();
    report.max_boundary_residual = -std::numeric_limits<double>::infinity();
    for (VertexId x = 0; x < g.vertex_count(); ++x) {
        const double r = report.residuals[x];
        if (mask.is_interior(x)) {
            ++report.interior_count;
            if (r > report.max_interior_residual) {
                report.max_interior_residual = r;
                report.worst_interior_vertex = x;
            }
            if (r > tolerance) {
                report.violations.push_back(x);
            }
        } else {
            report.max_boundary_residual = std::max(report.max_boundary_residual, r);
            if (r > tolerance) {
                ++report.boundary_positive_count;
            }
        }
    }
    return report;
}

std::pair<double, double> green_pairing(const WeightedGraph& g, const VertexFunction& u,
                                        const VertexFunction& psi) {
    check_size(g, u, "green_pairing");
    check_size(g, psi, "green_pairing");
    const VertexFunction lap = laplacian(g, u);
    double lhs = 0.0;
    for (VertexId x = 0; x < g.vertex_count(); ++x) {
        lhs += g.vertex_measure(x) * psi[x] * lap[x];
    }
    double rhs = 0.0;
    for (VertexId x = 0; x < g.vertex_count(); ++x) {
        auto nbr = g.neighbors(x);
        auto wts = g.neighbor_weights(x);
        for (std::size_t i = 0; i < nbr.size(); ++i) {
            rhs += wts[i] * (u[nbr[i]] - u[x]) * (psi[nbr[i]] - psi[x]);
        }
    }
    rhs *= -0.5;
    return {lhs, rhs};
}

double weak_form(const WeightedGraph& g, const VertexFunction& u, const VertexFunction& psi,
                 double sigma, const InteriorMask& mask) {
    check_size(g, u, "weak_form");
    check_size(g, psi, "weak_form");
    if (mask.size() != g.vertex_count()) {
        throw std::invalid_argument("weak_form: mask size does not match graph");
    }
    for (VertexId x = 0; x < g.vertex_count(); ++x) {
        if (!mask.is_interior(x) && psi[x] != 0.0) {
            throw std::domain_error("weak_form: test function is nonzero at boundary vertex " +
                                    std::to_string(x));
        }
    }
    const VertexFunction r = residual(g, u, sigma);
    double value = 0.0;
    for (VertexId x = 0; x < g.vertex_count(); ++x) {
        value += g.vertex_measure(x) * psi[x] * r[x];
    }
    return value;
}

}  // namespace semilap
