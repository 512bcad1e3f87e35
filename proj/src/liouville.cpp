#include "semilap/liouville.hpp"

#include "semilap/io.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace semilap {

namespace {

void check_mask(const WeightedGraph& g, const InteriorMask& mask, const char* what) {
    if (mask.size() != g.vertex_count()) {
        throw std::invalid_argument(std::string(what) + ": mask size does not match graph");
    }
}

void check_sigma_positive(double sigma, const char* what) {
    if (!(sigma > 0.0)) {
        throw std::domain_error(std::string(what) + ": sigma must be positive");
    }
}

}  // namespace

ZeroPropagationResult zero_propagation(const WeightedGraph& g, const VertexFunction& u, double sigma,
                                       const InteriorMask& mask) {
    check_mask(g, mask, "zero_propagation");
    check_sigma_positive(sigma, "zero_propagation");
    if (u.size() != g.vertex_count()) {
        throw std::invalid_argument("zero_propagation: function size does not match graph");
    }

    ZeroPropagationResult result;
    bool found_zero = false;
    for (VertexId x = 0; x < g.vertex_count(); ++x) {
        if (!mask.is_interior(x) || u[x] != 0.0) {
            continue;
        }
        found_zero = true;
        for (VertexId y : g.neighbors(x)) {
            if (u[y] > 0.0) {
                // Delta u(x) + u(x)^sigma = (1/mu) sum mu_xy u(y) > 0
                result.verdict = ZeroPropagationResult::Verdict::HypothesisViolation;
                result.witness = x;
                std::ostringstream os;
                os << "u(" << x << ") = 0 but u(" << y << ") = " << u[y]
                   << " > 0, so the residual at " << x << " is positive";
                result.description = os.str();
                return result;
            }
        }
    }
    if (found_zero) {
        result.verdict = ZeroPropagationResult::Verdict::IdenticallyZeroOnComponent;
        result.description = "u vanishes on its interior component: every interior zero has only zero neighbors";
    } else {
        result.verdict = ZeroPropagationResult::Verdict::StrictlyPositive;
        result.description = "u is strictly positive on the interior";
    }
    return result;
}

BoundsCheckResult check_solution_bounds(const WeightedGraph& g, const VertexFunction& u, double sigma,
                                        double p0, const InteriorMask& mask) {
    check_mask(g, mask, "check_solution_bounds");
    if (!(sigma > 1.0)) {
        throw std::domain_error("check_solution_bounds: requires sigma > 1");
    }
    if (!(p0 >= 1.0)) {
        throw std::domain_error("check_solution_bounds: p0 must be at least 1");
    }
    if (u.size() != g.vertex_count()) {
        throw std::invalid_argument("check_solution_bounds: function size does not match graph");
    }

    BoundsCheckResult result;
    for (VertexId x = 0; x < g.vertex_count(); ++x) {
        if (!mask.is_interior(x)) {
            continue;
        }
        if (!(u[x] > 0.0) || u[x] >= 1.0) {
            result.pass = false;
            result.witness_vertex = x;
            std::ostringstream os;
            os << "interior vertex " << x << " has u = " << u[x] << ", outside (0,1)";
            result.description = os.str();
            return result;
        }
    }
    for (VertexId x = 0; x < g.vertex_count(); ++x) {
        for (VertexId y : g.neighbors(x)) {
            if (!mask.is_interior(x) && !mask.is_interior(y)) {
                continue;
            }
            if (!(u[y] > 0.0)) {
                continue;  // caught above when the zero endpoint is interior
            }
            const double ratio = u[x] / u[y];
            if (ratio < 1.0 / p0 || ratio > p0) {
                result.pass = false;
                result.witness_edge = {x, y};
                std::ostringstream os;
                os << "edge (" << x << "," << y << ") has value ratio " << ratio << " outside [1/"
                   << p0 << "," << p0 << "]";
                result.description = os.str();
                return result;
            }
        }
    }
    result.description = "interior values lie in (0,1) and neighbor ratios respect the measure-ratio bound";
    return result;
}

std::string DescentTrace::to_csv() const {
    std::ostringstream os;
    os << "step,vertex,value,bound\n";
    for (std::size_t i = 0; i < chain.size(); ++i) {
        os << i << ',' << chain[i] << ',' << io::format_double(values[static_cast<Eigen::Index>(i)])
           << ',' << io::format_double(bounds[static_cast<Eigen::Index>(i)]) << '\n';
    }
    return os.str();
}

DescentTrace descent_sequence(const WeightedGraph& g, const VertexFunction& u, VertexId x0, int steps,
                              double sigma, const InteriorMask& mask) {
    check_mask(g, mask, "descent_sequence");
    if (u.size() != g.vertex_count()) {
        throw std::invalid_argument("descent_sequence: function size does not match graph");
    }
    if (!(sigma > 0.0) || !(sigma < 1.0)) {
        throw std::domain_error("descent_sequence: requires 0 < sigma < 1");
    }
    g.check_vertex(x0);
    if (!mask.is_interior(x0)) {
        throw std::domain_error("descent_sequence: start vertex must be interior");
    }
    if (steps < 0) {
        throw std::invalid_argument("descent_sequence: steps must be nonnegative");
    }
    if (!(u[x0] > 0.0)) {
        throw std::domain_error("descent_sequence: u must be positive at the start vertex");
    }

    DescentTrace trace;
    trace.chain.push_back(x0);
    const double u0 = u[x0];
    const double factor = 1.0 - std::pow(u0, sigma - 1.0);

    VertexId x = x0;
    for (int i = 0; i < steps; ++i) {
        if (!mask.is_interior(x)) {
            trace.exited_interior = true;
            break;
        }
        auto nbr = g.neighbors(x);
        if (nbr.empty()) {
            trace.exited_interior = true;
            break;
        }
        VertexId best = nbr[0];
        for (VertexId y : nbr) {
            if (u[y] < u[best]) {
                best = y;  // neighbors are sorted by id, so ties keep the smallest
            }
        }
        if (!(u[best] > 0.0)) {
            throw std::domain_error("descent_sequence: u must stay positive along the chain (vertex " +
                                    std::to_string(best) + ")");
        }
        const double ux = u[x];
        trace.step_bound_ok.push_back(u[best] <= ux - std::pow(ux, sigma) ? 1 : 0);
        trace.chain.push_back(best);
        x = best;
    }

    const auto length = static_cast<Eigen::Index>(trace.chain.size());
    trace.values.resize(length);
    trace.bounds.resize(length);
    for (Eigen::Index i = 0; i < length; ++i) {
        trace.values[i] = u[trace.chain[static_cast<std::size_t>(i)]];
        trace.bounds[i] = u0 * std::pow(factor, static_cast<double>(i));
        if (trace.first_bound_below_one < 0 && trace.bounds[i] < 1.0) {
            trace.first_bound_below_one = static_cast<int>(i);
        }
    }
    return trace;
}

VertexFunction build_h(const WeightedGraph& g, VertexId origin, int k) {
    if (k < 0) {
        throw std::domain_error("build_h: k must be nonnegative");
    }
    if (k > 30) {
        throw std::domain_error("build_h: 2^(k+1) overflows the distance range");
    }
    const Eigen::VectorXi dist = distances_from(g, origin);
    const double scale = static_cast<double>(1 << k);
    VertexFunction h = VertexFunction::Zero(g.vertex_count());
    for (VertexId x = 0; x < g.vertex_count(); ++x) {
        if (dist[x] < 0) {
            continue;
        }
        const double d = dist[x];
        if (d <= scale) {
            h[x] = 1.0;
        } else if (d < 2.0 * scale) {
            h[x] = 2.0 - d / scale;
        }
    }
    return h;
}

CutoffFamily build_phi(const WeightedGraph& g, VertexId origin, int index, const InteriorMask& mask) {
    check_mask(g, mask, "build_phi");
    if (index < 1) {
        throw std::domain_error("build_phi: index must be at least 1");
    }
    if (2 * index - 1 > 30) {
        throw std::domain_error("build_phi: support radius overflows the distance range");
    }

    CutoffFamily family;
    family.origin = origin;
    family.index = index;

    const Eigen::VectorXi dist = distances_from(g, origin);
    const int support = family.outer_radius();
    for (VertexId x = 0; x < g.vertex_count(); ++x) {
        if (dist[x] >= 0 && dist[x] <= support && !mask.is_interior(x)) {
            throw std::domain_error("build_phi: B(o," + std::to_string(support) +
                                    ") touches boundary vertex " + std::to_string(x) +
                                    "; the cutoff would not be compactly supported in the interior");
        }
    }

    family.phi = VertexFunction::Zero(g.vertex_count());
    for (int k = index - 1; k <= 2 * index - 2; ++k) {
        family.rungs.push_back(build_h(g, origin, k));
        family.phi += family.rungs.back();
    }
    family.phi /= static_cast<double>(index);

    double c = 0.0;
    for (VertexId x = 0; x < g.vertex_count(); ++x) {
        if (dist[x] < 0) {
            continue;
        }
        for (VertexId y : g.neighbors(x)) {
            const double grad = std::abs(family.phi[y] - family.phi[x]);
            if (grad == 0.0) {
                continue;
            }
            const int d = std::min(dist[x], dist[y] < 0 ? dist[x] : dist[y]);
            int band = 0;
            while ((2 << band) <= d) {
                ++band;  // band k: 2^k <= d < 2^{k+1}
            }
            c = std::max(c, grad * index * static_cast<double>(1 << band));
        }
    }
    family.gradient_constant = c;
    return family;
}

double cutoff_gradient_sum(const WeightedGraph& g, const VertexFunction& phi, double q) {
    if (!(q > 0.0)) {
        throw std::domain_error("cutoff_gradient_sum: exponent must be positive");
    }
    if (phi.size() != g.vertex_count()) {
        throw std::invalid_argument("cutoff_gradient_sum: function size does not match graph");
    }
    double sum = 0.0;
    for (VertexId x = 0; x < g.vertex_count(); ++x) {
        auto nbr = g.neighbors(x);
        auto wts = g.neighbor_weights(x);
        for (std::size_t i = 0; i < nbr.size(); ++i) {
            const double grad = std::abs(phi[nbr[i]] - phi[x]);
            if (grad > 0.0) {
                sum += wts[i] * std::pow(grad, q);
            }
        }
    }
    return sum;
}

SeriesDiagnostic conjecture_series(const WeightedGraph& g, VertexId origin, double sigma, long n_max) {
    if (!(sigma > 1.0)) {
        throw std::domain_error("conjecture_series: requires sigma > 1");
    }
    if (n_max < 1) {
        throw std::invalid_argument("conjecture_series: n_max must be at least 1");
    }
    if (n_max > static_cast<long>(g.vertex_count())) {
        n_max = g.vertex_count();  // balls saturate; longer tails only echo the rim
    }
    const VertexFunction volumes = volume_profile(g, origin, static_cast<int>(n_max));
    if (volumes[0] <= 0.0) {
        throw std::domain_error("conjecture_series: origin has zero measure");
    }
    std::vector<double> terms(static_cast<std::size_t>(n_max));
    for (long n = 1; n <= n_max; ++n) {
        terms[static_cast<std::size_t>(n - 1)] =
            std::pow(static_cast<double>(n), 2.0 * sigma - 1.0) /
            std::pow(volumes[static_cast<Eigen::Index>(n)], sigma - 1.0);
    }
    return diagnose_series(std::move(terms), 1);
}

SeriesDiagnostic conjecture_series_radial(const RadialTreeModel& model, double sigma, long n_max) {
    if (!(sigma > 1.0)) {
        throw std::domain_error("conjecture_series_radial: requires sigma > 1");
    }
    if (n_max < 1 || n_max > model.depth()) {
        throw std::invalid_argument("conjecture_series_radial: n_max must lie in [1, depth]");
    }
    std::vector<double> terms(static_cast<std::size_t>(n_max));
    for (long n = 1; n <= n_max; ++n) {
        terms[static_cast<std::size_t>(n - 1)] =
            std::pow(static_cast<double>(n), 2.0 * sigma - 1.0) /
            std::pow(model.ball_volume(static_cast<int>(n)), sigma - 1.0);
    }
    return diagnose_series(std::move(terms), 1);
}

}  // namespace semilap
