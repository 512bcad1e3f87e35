#pragma once

#include "semilap/graph.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace semilap {

// Splits the vertex set into interior (where pointwise statements are
// asserted) and boundary (where truncation artifacts live).
class InteriorMask {
public:
    static InteriorMask all(const WeightedGraph& g);
    static InteriorMask from_boundary(const WeightedGraph& g, std::span<const VertexId> boundary);
    // interior = vertices whose degree equals ambient_degree; on a tree
    // truncation this peels exactly the rim.
    static InteriorMask full_degree(const WeightedGraph& g, int ambient_degree);
    // interior = B(origin, radius).
    static InteriorMask within_radius(const WeightedGraph& g, VertexId origin, int radius);

    bool is_interior(VertexId x) const { return flags_[static_cast<std::size_t>(x)] != 0; }
    int size() const { return static_cast<int>(flags_.size()); }
    int interior_count() const;
    std::vector<VertexId> boundary_vertices() const;

private:
    explicit InteriorMask(std::vector<std::uint8_t> flags) : flags_(std::move(flags)) {}
    std::vector<std::uint8_t> flags_;
};

// Delta u(x) = (1/mu(x)) sum_{y~x} mu_xy (u(y) - u(x)), the P - I generator
// of the mu-random walk.
VertexFunction laplacian(const WeightedGraph& g, const VertexFunction& u);

// Delta u + u^sigma with the convention 0^sigma = 0. Requires u >= 0 and
// sigma > 0; negative entries throw std::domain_error.
VertexFunction residual(const WeightedGraph& g, const VertexFunction& u, double sigma);

struct InequalityReport {
    double sigma = 0.0;
    double tolerance = 0.0;
    int interior_count = 0;
    VertexFunction residuals;               // all vertices
    std::vector<VertexId> violations;       // interior vertices with residual > tolerance
    double max_interior_residual = 0.0;     // -inf when there is no interior
    VertexId worst_interior_vertex = -1;
    double max_boundary_residual = 0.0;     // -inf when there is no boundary
    long boundary_positive_count = 0;

    bool passed() const { return violations.empty(); }
    std::string summary() const;
};

// Checks Delta u + u^sigma <= tolerance at every interior vertex; boundary
// residuals are recorded separately and never count as violations.
InequalityReport check_inequality(const WeightedGraph& g, const VertexFunction& u, double sigma,
                                  const InteriorMask& mask, double tolerance = 0.0);

// Both sides of the summation-by-parts identity
//   sum_x mu(x) psi(x) Delta u(x) = -(1/2) sum_{x,y} mu_xy (u(y)-u(x))(psi(y)-psi(x)).
// Returned as (lhs, rhs); they agree up to rounding.
std::pair<double, double> green_pairing(const WeightedGraph& g, const VertexFunction& u,
                                        const VertexFunction& psi);

// <Delta u + u^sigma, psi>_mu = sum_x mu(x) psi(x) (Delta u(x) + u(x)^sigma).
// psi must vanish on the boundary (test functions are interior-supported);
// a nonzero boundary value throws std::domain_error.
double weak_form(const WeightedGraph& g, const VertexFunction& u, const VertexFunction& psi,
                 double sigma, const InteriorMask& mask);

}  // namespace semilap
