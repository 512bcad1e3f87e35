#pragma once

#include "semilap/graph.hpp"
#include "semilap/operators.hpp"

#include <functional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace semilap {

// Boundary-value problem for Delta u + u^sigma = 0 on the interior, with
// prescribed nonnegative values on the boundary.
struct DirichletProblem {
    DirichletProblem(const WeightedGraph& graph, InteriorMask mask, VertexFunction boundary_values,
                     double sigma);

    const WeightedGraph* graph;
    InteriorMask mask;
    VertexFunction boundary_values;  // read at boundary vertices only
    double sigma;

    double tolerance = 1e-10;     // absolute, on the max interior residual
    long max_iterations = 200000;
    double divergence_cap = 1e3;  // interior equation solutions satisfy u <= 1 for sigma > 1
    double theta = 0.5;           // initial damping; halved on oscillation
};

struct SolveReport {
    bool converged = false;
    long iterations = 0;
    double residual_norm = 0.0;  // max |Delta u + u^sigma| over the interior
    double theta_final = 0.0;
    std::string status;          // "converged", "budget-exhausted" or "diverged"
};

// Damped Jacobi fixed point u <- (1-theta) u + theta max(0, Pu + u^sigma)
// with Pu(x) = sum_y mu_xy u(y) / mu(x); boundary entries stay fixed. The
// contract is the residual postcondition, not the iteration path: status
// "converged" means max |Delta u + u^sigma| <= tolerance on the interior.
// `initial` must be nonnegative and equal to boundary_values on the boundary.
std::pair<VertexFunction, SolveReport> dirichlet_solve(const DirichletProblem& problem,
                                                       const VertexFunction& initial);

// One ball of an exhaustion: the graph, its root, the interior mask, and the
// prescribed boundary values.
using BallFamily = std::function<std::tuple<WeightedGraph, VertexId, InteriorMask, VertexFunction>(long)>;

struct ExhaustionRow {
    long radius = 0;
    double u_root = 0.0;
    double u_max = 0.0;
    double residual_norm = 0.0;
    long iterations = 0;
    std::string status;
};

// Solves the family at each radius (interior initialized to zero) and
// records per-radius summaries. Solver failures land in `status`; they do
// not abort the probe. No claim beyond the recorded numbers is made.
std::vector<ExhaustionRow> exhaustion_probe(const BallFamily& family, const std::vector<long>& radii,
                                            double sigma, double tolerance = 1e-10,
                                            long max_iterations = 200000);

// CSV "radius,u_root,u_max,residual_norm,iterations,status".
std::string exhaustion_csv(const std::vector<ExhaustionRow>& rows);

}  // namespace semilap
