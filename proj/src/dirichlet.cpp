#include "semilap/dirichlet.hpp"

#include "semilap/io.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace semilap {

namespace {

double interior_residual_norm(const WeightedGraph& g, const InteriorMask& mask, const VertexFunction& u,
                              double sigma) {
    double norm = 0.0;
    for (VertexId x = 0; x < g.vertex_count(); ++x) {
        if (!mask.is_interior(x)) {
            continue;
        }
        auto nbr = g.neighbors(x);
        auto wts = g.neighbor_weights(x);
        double acc = 0.0;
        for (std::size_t i = 0; i < nbr.size(); ++i) {
            acc += wts[i] * (u[nbr[i]] - u[x]);
        }
        const double lap = nbr.empty() ? 0.0 : acc / g.vertex_measure(x);
        const double power = u[x] == 0.0 ? 0.0 : std::pow(u[x], sigma);
        norm = std::max(norm, std::abs(lap + power));
    }
    return norm;
}

}  // namespace

DirichletProblem::DirichletProblem(const WeightedGraph& graph, InteriorMask mask,
                                   VertexFunction boundary_values, double sigma)
    : graph(&graph), mask(std::move(mask)), boundary_values(std::move(boundary_values)), sigma(sigma) {
    if (this->mask.size() != graph.vertex_count()) {
        throw std::invalid_argument("DirichletProblem: mask size does not match graph");
    }
    if (this->boundary_values.size() != graph.vertex_count()) {
        throw std::invalid_argument("DirichletProblem: boundary values must be a full vertex function");
    }
    if (!(sigma > 0.0)) {
        throw std::domain_error("DirichletProblem: sigma must be positive");
    }
    for (VertexId x = 0; x < graph.vertex_count(); ++x) {
        if (!this->mask.is_interior(x) && !(this->boundary_values[x] >= 0.0)) {
            throw std::domain_error("DirichletProblem: boundary value at vertex " + std::to_string(x) +
                                    " must be nonnegative");
        }
    }
}

std::pair<VertexFunction, SolveReport> dirichlet_solve(const DirichletProblem& problem,
                                                       const VertexFunction& initial) {
    const WeightedGraph& g = *problem.graph;
    if (initial.size() != g.vertex_count()) {
        throw std::invalid_argument("dirichlet_solve: initial guess size does not match graph");
    }
    for (VertexId x = 0; x < g.vertex_count(); ++x) {
        if (!(initial[x] >= 0.0)) {
            throw std::domain_error("dirichlet_solve: initial guess must be nonnegative");
        }
        if (!problem.mask.is_interior(x) && initial[x] != problem.boundary_values[x]) {
            throw std::invalid_argument("dirichlet_solve: initial guess disagrees with boundary values at vertex " +
                                        std::to_string(x));
        }
    }

    VertexFunction u = initial;
    VertexFunction next = u;
    SolveReport report;
    double theta = problem.theta;
    double previous_norm = std::numeric_limits<double>::infinity();
    int rises = 0;

    double norm = interior_residual_norm(g, problem.mask, u, problem.sigma);
    while (report.iterations < problem.max_iterations) {
        if (norm <= problem.tolerance) {
            report.converged = true;
            break;
        }
        for (VertexId x = 0; x < g.vertex_count(); ++x) {
            if (!problem.mask.is_interior(x)) {
                next[x] = problem.boundary_values[x];
                continue;
            }
            auto nbr = g.neighbors(x);
            auto wts = g.neighbor_weights(x);
            double acc = 0.0;
            for (std::size_t i = 0; i < nbr.size(); ++i) {
                acc += wts[i] * u[nbr[i]];
            }
            const double mean = nbr.empty() ? 0.0 : acc / g.vertex_measure(x);
            const double power = u[x] == 0.0 ? 0.0 : std::pow(u[x], problem.sigma);
            const double candidate = std::max(0.0, mean + power);
            next[x] = (1.0 - theta) * u[x] + theta * candidate;
        }
        u.swap(next);
        ++report.iterations;

        norm = interior_residual_norm(g, problem.mask, u, problem.sigma);
        if (norm > previous_norm) {
            if (++rises >= 2) {
                theta = std::max(theta / 2.0, 1.0 / 1024.0);
                rises = 0;
            }
        } else {
            rises = 0;
        }
        previous_norm = norm;

        if (u.maxCoeff() > problem.divergence_cap) {
            report.residual_norm = norm;
            report.theta_final = theta;
            report.status = "diverged";
            return {std::move(u), report};
        }
    }

    report.residual_norm = norm;
    report.theta_final = theta;
    if (report.converged) {
        report.status = "converged";
    } else {
        report.status = "budget-exhausted";
    }
    return {std::move(u), report};
}

std::vector<ExhaustionRow> exhaustion_probe(const BallFamily& family, const std::vector<long>& radii,
                                            double sigma, double tolerance, long max_iterations) {
    std::vector<ExhaustionRow> rows;
    rows.reserve(radii.size());
    for (long radius : radii) {
        ExhaustionRow row;
        row.radius = radius;
        try {
            auto [graph, root, mask, boundary] = family(radius);
            DirichletProblem problem(graph, std::move(mask), std::move(boundary), sigma);
            problem.tolerance = tolerance;
            problem.max_iterations = max_iterations;
            VertexFunction initial = VertexFunction::Zero(graph.vertex_count());
            for (VertexId x = 0; x < graph.vertex_count(); ++x) {
                if (!problem.mask.is_interior(x)) {
                    initial[x] = problem.boundary_values[x];
                }
            }
            auto [u, report] = dirichlet_solve(problem, initial);
            row.u_root = u[root];
            row.u_max = u.maxCoeff();
            row.residual_norm = report.residual_norm;
            row.iterations = report.iterations;
            row.status = report.status;
        } catch (const std::exception& e) {
            row.status = std::string("error: ") + e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string exhaustion_csv(const std::vector<ExhaustionRow>& rows) {
    std::ostringstream os;
    os << "radius,u_root,u_max,residual_norm,iterations,status\n";
    for (const ExhaustionRow& row : rows) {
        os << row.radius << ',' << io::format_double(row.u_root) << ',' << io::format_double(row.u_max)
           << ',' << io::format_double(row.residual_norm) << ',' << row.iterations << ',' << row.status
           << '\n';
    }
    return os.str();
}

}  // namespace semilap
