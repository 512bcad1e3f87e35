#pragma once

#include "semilap/generators.hpp"
#include "semilap/graph.hpp"
#include "semilap/operators.hpp"
#include "semilap/series.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace semilap {

// Dichotomy check for nonnegative supersolutions: u is either identically
// zero (on the interior component) or strictly positive.
struct ZeroPropagationResult {
    enum class Verdict { IdenticallyZeroOnComponent, StrictlyPositive, HypothesisViolation };

    Verdict verdict = Verdict::StrictlyPositive;
    // interior vertex where u = 0 but a neighbor is positive; the residual
    // there is positive, so the input was not a supersolution
    std::optional<VertexId> witness;
    std::string description;
};

ZeroPropagationResult zero_propagation(const WeightedGraph& g, const VertexFunction& u, double sigma,
                                       const InteriorMask& mask);

// Checks the bounds forced on nonzero solutions under the bounded
// measure-ratio condition: u < 1 at interior vertices, and
// 1/p0 <= u(x)/u(y) <= p0 across every edge with an interior endpoint.
struct BoundsCheckResult {
    bool pass = true;
    std::optional<VertexId> witness_vertex;                    // interior vertex with u >= 1 or u <= 0
    std::optional<std::pair<VertexId, VertexId>> witness_edge; // edge violating the ratio bound
    std::string description;
};

BoundsCheckResult check_solution_bounds(const WeightedGraph& g, const VertexFunction& u, double sigma,
                                        double p0, const InteriorMask& mask);

// Steepest-descent chain x_{i+1} = argmin_{y ~ x_i} u(y) (ties to the
// smallest id), recorded against the geometric bound
// u(x_0) (1 - u(x_0)^{sigma-1})^i that drives the sublinear Liouville
// argument. The trace records facts; it never asserts.
struct DescentTrace {
    std::vector<VertexId> chain;               // x_0 .. x_k
    VertexFunction values;                     // u(x_i)
    VertexFunction bounds;                     // u(x_0)(1 - u(x_0)^{sigma-1})^i
    std::vector<std::uint8_t> step_bound_ok;   // u(x_{i+1}) <= u(x_i) - u(x_i)^sigma, per step
    int first_bound_below_one = -1;            // smallest i with bounds[i] < 1
    bool exited_interior = false;              // chain hit the boundary before `steps`

    std::string to_csv() const;                // "step,vertex,value,bound"
};

// Requires 0 < sigma < 1 (the sublinear regime), u > 0 on visited vertices,
// and an interior start. The chain stops early when it leaves the interior.
DescentTrace descent_sequence(const WeightedGraph& g, const VertexFunction& u, VertexId x0, int steps,
                              double sigma, const InteriorMask& mask);

// Dyadic ramp: 1 on d(o,x) <= 2^k, linearly down to 0 across
// 2^k < d(o,x) < 2^{k+1}, 0 beyond. Unreachable vertices get 0.
VertexFunction build_h(const WeightedGraph& g, VertexId origin, int k);

// Averaged cutoff phi_i = (1/i) sum_{k=i-1}^{2i-2} h_k: equals 1 on
// B(o, 2^{i-1}), vanishes outside B(o, 2^{2i-1}), and has gradients bounded
// by c/(i 2^k) on the band 2^k <= d < 2^{k+1}.
struct CutoffFamily {
    VertexId origin = 0;
    int index = 1;                       // i
    std::vector<VertexFunction> rungs;   // h_{i-1} .. h_{2i-2}
    VertexFunction phi;
    // measured c: max over edges of |grad phi| * i * 2^k, where k is the
    // dyadic band of the endpoint closer to the origin
    double gradient_constant = 0.0;

    int inner_radius() const { return 1 << (index - 1); }
    int outer_radius() const { return 1 << (2 * index - 1); }
};

// Refuses (std::domain_error) unless B(origin, 2^{2i-1}) lies strictly inside
// the interior, so that phi_i is a genuine compactly supported test function
// of the truncation.
CutoffFamily build_phi(const WeightedGraph& g, VertexId origin, int index, const InteriorMask& mask);

// sum over ordered adjacent pairs (x,y) of mu_xy |phi(y) - phi(x)|^q.
double cutoff_gradient_sum(const WeightedGraph& g, const VertexFunction& phi, double q);

// Partial sums of sum_n n^{2 sigma - 1} / mu(B(o,n))^{sigma - 1}, the series
// whose divergence is conjectured to characterize nonexistence. Terms run
// n = 1..n_max.
SeriesDiagnostic conjecture_series(const WeightedGraph& g, VertexId origin, double sigma, long n_max);

// Same series on a radial tree model (ball volumes in closed form), usable
// far beyond explicit truncation sizes.
SeriesDiagnostic conjecture_series_radial(const RadialTreeModel& model, double sigma, long n_max);

}  // namespace semilap
