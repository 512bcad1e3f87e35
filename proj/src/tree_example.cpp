#include "semilap/tree_example.hpp"

#include "semilap/io.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace semilap {

namespace {

// published high-precision values must agree with the 2x-precision
// recomputation to 30 significant digits
const Real100 kGuardRel("1e-30");

Real50 guarded_kernel(long m, double sigma, double epsilon, const char* what) {
    const Real50 value50 = radial::threshold_kernel<Real50>(Real50(m), Real50(sigma), Real50(epsilon));
    const Real100 value100 = radial::threshold_kernel<Real100>(Real100(m), Real100(sigma), Real100(epsilon));
    const Real100 diff = abs(Real100(value50) - value100);
    Real100 scale = abs(value100);
    if (scale < 1) {
        scale = 1;
    }
    if (diff > kGuardRel * scale) {
        std::ostringstream os;
        os << what << ": 50-digit and 100-digit evaluations disagree at argument " << m
           << " (relative gap " << diff / scale << "); precision budget insufficient";
        throw PrecisionError(os.str());
    }
    return value50;
}

double residual_noise_floor(long n, const ExampleParams& params) {
    // the double residual combines O(1)-many terms of size u_n
    return 64.0 * DBL_EPSILON * u_layer(n, params);
}

// high-precision residual sign via the threshold equivalence
bool residual_nonpositive_highprec(long n, const ExampleParams& params) {
    if (n == 0) {
        const Real50 p(params.p());
        const Real50 delta(params.delta);
        const Real50 u0 = radial::layer_value<Real50>(0, params.n0, p, delta);
        const Real50 u1 = radial::layer_value<Real50>(1, params.n0, p, delta);
        return u1 - u0 + pow(u0, Real50(params.sigma)) <= 0;
    }
    const Real50 threshold = guarded_kernel(n + params.n0, params.sigma, params.epsilon, "residual check");
    return pow(Real50(params.delta), Real50(params.sigma) - 1) <= threshold;
}

std::string fmt25(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.25g", v);
    return buf;
}

std::string fmt25(const Real50& v) {
    std::ostringstream os;
    os << std::setprecision(25) << v;
    return os.str();
}

struct ThresholdSweep {
    bool passed = true;           // min stayed >= target (when a target is enforced)
    double min_threshold = 0.0;   // high-precision value at the argmin, as double
    long argmin = 0;
};

// Double-precision screen of T(n + n0) over n = 1..horizon with escalation
// to the guarded evaluator whenever the rounding envelope reaches `target`
// (pass -inf to only locate the minimum).
ThresholdSweep sweep_threshold(double sigma, double epsilon, long n0, long horizon, double target) {
    ThresholdSweep sweep;
    double min_screen = std::numeric_limits<double>::infinity();
    for (long n = 1; n <= horizon; ++n) {
        const double m = static_cast<double>(n + n0);
        const double t = radial::threshold_kernel<double>(m, sigma, epsilon);
        if (t < min_screen) {
            min_screen = t;
            sweep.argmin = n;
        }
        if (t - threshold_double_error_bound(m) < target) {
            const Real50 exact = guarded_kernel(n + n0, sigma, epsilon, "calibration sweep");
            if (exact < Real50(target)) {
                sweep.passed = false;
                sweep.argmin = n;
                sweep.min_threshold = exact.convert_to<double>();
                return sweep;
            }
        }
    }
    sweep.min_threshold =
        guarded_kernel(sweep.argmin + n0, sigma, epsilon, "calibration sweep").convert_to<double>();
    return sweep;
}

struct ResidualSweep {
    double tightest = -std::numeric_limits<double>::infinity();
    long tightest_at = 0;
    bool violation = false;
    long violation_at = 0;
};

ResidualSweep sweep_residuals(const ExampleParams& params, long horizon) {
    ResidualSweep sweep;
    for (long n = 0; n <= horizon; ++n) {
        const double r = radial_residual(n, params);
        if (r > sweep.tightest) {
            sweep.tightest = r;
            sweep.tightest_at = n;
        }
        // escalate when double cannot certify the sign
        if (r > -residual_noise_floor(n, params) && !residual_nonpositive_highprec(n, params)) {
            sweep.violation = true;
            sweep.violation_at = n;
            return sweep;
        }
    }
    return sweep;
}

bool threshold_rising(double sigma, double epsilon, long n0, long horizon) {
    const Real50 at_horizon = guarded_kernel(horizon + n0, sigma, epsilon, "calibration trend");
    const Real50 before_horizon = guarded_kernel(horizon - 1 + n0, sigma, epsilon, "calibration trend");
    return at_horizon >= before_horizon;
}

CalibrationResult build_result(const ExampleParams& params, long horizon, const ThresholdSweep& thresholds,
                               const ResidualSweep& residuals) {
    CalibrationResult result{.params = params};
    result.delta0_value = delta0(params.sigma, params.n0);
    const double target = params.p() * params.epsilon / 2.0;
    result.delta_cap = std::pow(target, params.p());
    result.horizon_checked = horizon;
    result.tightest_residual = residuals.tightest;
    result.tightest_residual_at = residuals.tightest_at;
    result.min_margin = -residuals.tightest;
    result.min_threshold = thresholds.min_threshold;
    result.min_threshold_at = thresholds.argmin;
    result.threshold_target = target;
    result.threshold_rising_at_horizon =
        threshold_rising(params.sigma, params.epsilon, params.n0, horizon);
    return result;
}

}  // namespace

ExampleParams::ExampleParams(double sigma, double epsilon, int branching, long n0, double delta)
    : sigma(sigma), epsilon(epsilon), branching(branching), n0(n0), delta(delta) {
    if (!(sigma > 1.0)) {
        throw std::domain_error("ExampleParams: sigma must exceed 1");
    }
    if (!(epsilon > 0.0)) {
        throw std::domain_error("ExampleParams: epsilon must be positive");
    }
    if (branching < 2) {
        throw std::domain_error("ExampleParams: branching number must be at least 2");
    }
    if (n0 < 2) {
        throw std::domain_error("ExampleParams: n0 must be at least 2");
    }
    if (!(delta > 0.0)) {
        throw std::domain_error("ExampleParams: delta must be positive");
    }
}

double u_layer(long n, const ExampleParams& params) {
    if (n < 0) {
        throw std::domain_error("u_layer: layer must be nonnegative");
    }
    return radial::layer_value<double>(n, params.n0, params.p(), params.delta);
}

double reduced_weight(long n, const ExampleParams& params) {
    if (n < 0) {
        throw std::domain_error("reduced_weight: layer must be nonnegative");
    }
    return radial::reduced_weight<double>(n, params.n0, params.p(), params.epsilon);
}

double radial_residual(long n, const ExampleParams& params) {
    if (n < 0) {
        throw std::domain_error("radial_residual: layer must be nonnegative");
    }
    const double sigma = params.sigma;
    if (n == 0) {
        const double u0 = u_layer(0, params);
        const double u1 = u_layer(1, params);
        return u1 - u0 + std::pow(u0, sigma);
    }
    const double w_prev = reduced_weight(n - 1, params);
    const double w_here = reduced_weight(n, params);
    const double u_prev = u_layer(n - 1, params);
    const double u_here = u_layer(n, params);
    const double u_next = u_layer(n + 1, params);
    return (w_prev * u_prev + w_here * u_next) / (w_prev + w_here) - u_here + std::pow(u_here, sigma);
}

double delta0(double sigma, long n0) {
    if (!(sigma > 1.0)) {
        throw std::domain_error("delta0: sigma must exceed 1");
    }
    if (n0 < 2) {
        throw std::domain_error("delta0: n0 must be at least 2");
    }
    const double p = 1.0 / (sigma - 1.0);
    const double a0 = std::pow(static_cast<double>(n0), 2.0 * p) * std::pow(std::log(static_cast<double>(n0)), p);
    const double a1 =
        std::pow(static_cast<double>(n0 + 1), 2.0 * p) * std::pow(std::log(static_cast<double>(n0 + 1)), p);
    return a0 * std::pow((a1 - a0) / a1, p);
}

Real50 residual_threshold(long n, double sigma, double epsilon, long n0) {
    if (n < 1) {
        throw std::domain_error("residual_threshold: layer must be at least 1");
    }
    if (!(sigma > 1.0) || !(epsilon > 0.0) || n0 < 2) {
        throw std::domain_error("residual_threshold: requires sigma > 1, epsilon > 0, n0 >= 2");
    }
    return guarded_kernel(n + n0, sigma, epsilon, "residual_threshold");
}

Real50 residual_threshold(long n, const ExampleParams& params) {
    return residual_threshold(n, params.sigma, params.epsilon, params.n0);
}

Real50 limit_expression(long n, double sigma, double epsilon) {
    if (n < 3) {
        throw std::domain_error("limit_expression: argument must be at least 3");
    }
    if (!(sigma > 1.0) || !(epsilon > 0.0)) {
        throw std::domain_error("limit_expression: requires sigma > 1 and epsilon > 0");
    }
    return guarded_kernel(n, sigma, epsilon, "limit_expression");
}

double threshold_double_error_bound(double m) {
    return 64.0 * DBL_EPSILON * m * m * std::log(m);
}

std::string CalibrationResult::certificate() const {
    std::ostringstream os;
    os << "radial supersolution certificate\n";
    os << "sigma = " << fmt25(params.sigma) << "\n";
    os << "epsilon = " << fmt25(params.epsilon) << "\n";
    os << "branching = " << params.branching << "\n";
    os << "n0 = " << params.n0 << "\n";
    os << "delta = " << fmt25(params.delta) << "\n";
    os << "delta0 = " << fmt25(delta0_value) << "\n";
    os << "delta_cap = " << fmt25(delta_cap) << "\n";
    os << "delta_power = " << fmt25(std::pow(params.delta, params.sigma - 1.0)) << "\n";
    os << "threshold_target = " << fmt25(threshold_target) << "\n";
    os << "horizon = " << horizon_checked << "\n";
    os << "min_threshold = " << fmt25(min_threshold) << " at n = " << min_threshold_at << "\n";
    os << "threshold rising at horizon = " << (threshold_rising_at_horizon ? "yes" : "no") << "\n";
    os << "tightest_residual = " << fmt25(tightest_residual) << " at n = " << tightest_residual_at << "\n";
    os << "min_margin = " << fmt25(min_margin) << "\n";
    os << "residuals nonpositive for 0 <= n <= " << horizon_checked << "\n";
    return os.str();
}

CalibrationError::CalibrationError(const std::string& message, long best_n0, double best_min_threshold,
                                   double target)
    : std::runtime_error(message),
      best_n0(best_n0),
      best_min_threshold(best_min_threshold),
      threshold_target(target) {}

CalibrationResult calibrate(double sigma, double epsilon, int branching, long horizon, long n0_cap) {
    if (!(sigma > 1.0) || !(epsilon > 0.0)) {
        throw std::domain_error("calibrate: requires sigma > 1 and epsilon > 0");
    }
    if (branching < 2) {
        throw std::domain_error("calibrate: branching number must be at least 2");
    }
    if (horizon < 1000) {
        throw std::domain_error("calibrate: horizon must be at least 1000");
    }
    const double p = 1.0 / (sigma - 1.0);
    const double target = p * epsilon / 2.0;

    long best_n0 = -1;
    double best_min = -std::numeric_limits<double>::infinity();
    for (long n0 = 2; n0 <= n0_cap; ++n0) {
        ThresholdSweep thresholds = sweep_threshold(sigma, epsilon, n0, horizon, target);
        if (!thresholds.passed) {
            if (thresholds.min_threshold > best_min) {
                best_min = thresholds.min_threshold;
                best_n0 = n0;
            }
            continue;
        }
        double delta = std::pow(target, p);
        const double d0 = delta0(sigma, n0);
        if (d0 < delta) {
            // keep delta <= delta0 strictly so the root-layer residual is
            // certain; one ulp is invisible at 17 digits
            delta = std::nextafter(d0, 0.0);
        }
        ExampleParams params(sigma, epsilon, branching, n0, delta);
        ResidualSweep residuals = sweep_residuals(params, horizon);
        if (residuals.violation) {
            std::ostringstream os;
            os << "calibrate: residual positive at n = " << residuals.violation_at << " for n0 = " << n0
               << " despite threshold margin";
            throw CalibrationError(os.str(), n0, thresholds.min_threshold, target);
        }
        return build_result(params, horizon, thresholds, residuals);
    }
    std::ostringstream os;
    os << "calibrate: no n0 <= " << n0_cap << " keeps the threshold above " << target
       << " through horizon " << horizon << "; best min threshold " << best_min << " at n0 = " << best_n0;
    throw CalibrationError(os.str(), best_n0, best_min, target);
}

CalibrationResult verify_example(const ExampleParams& params, long horizon) {
    if (horizon < 1) {
        throw std::domain_error("verify_example: horizon must be at least 1");
    }
    ThresholdSweep thresholds =
        sweep_threshold(params.sigma, params.epsilon, params.n0, horizon,
                        -std::numeric_limits<double>::infinity());
    ResidualSweep residuals = sweep_residuals(params, horizon);
    if (residuals.violation) {
        std::ostringstream os;
        os << "verify_example: residual positive at n = " << residuals.violation_at << " (delta = "
           << io::format_double(params.delta) << ", n0 = " << params.n0 << ")";
        throw CalibrationError(os.str(), params.n0, thresholds.min_threshold,
                               params.p() * params.epsilon / 2.0);
    }
    return build_result(params, horizon, thresholds, residuals);
}

RadialTreeModel make_radial_model(const ExampleParams& params, int depth) {
    if (depth < 1) {
        throw std::domain_error("make_radial_model: depth must be at least 1");
    }
    std::vector<double> weights(static_cast<std::size_t>(depth) + 1);
    for (int n = 0; n <= depth; ++n) {
        weights[static_cast<std::size_t>(n)] = reduced_weight(n, params);
    }
    return RadialTreeModel(params.branching, std::move(weights));
}

std::vector<double> layer_values(const ExampleParams& params, int depth) {
    if (depth < 0) {
        throw std::domain_error("layer_values: depth must be nonnegative");
    }
    std::vector<double> values(static_cast<std::size_t>(depth) + 1);
    for (int n = 0; n <= depth; ++n) {
        values[static_cast<std::size_t>(n)] = u_layer(n, params);
    }
    return values;
}

std::vector<double> volume_ratio_profile(const ExampleParams& params, long n_max) {
    if (n_max < 2) {
        throw std::domain_error("volume_ratio_profile: n_max must be at least 2");
    }
    std::vector<double> ratios(static_cast<std::size_t>(n_max) + 1,
                               std::numeric_limits<double>::quiet_NaN());
    const double p = params.p();
    double prefix = reduced_weight(0, params) + reduced_weight(1, params);
    for (long n = 2; n <= n_max; ++n) {
        const double w_n = reduced_weight(n, params);
        prefix += w_n;
        const double volume = params.branching * (2.0 * prefix - w_n);
        const double x = static_cast<double>(n);
        const double normalizer = std::pow(x, 2.0 * p + 2.0) * std::pow(std::log(x), p + params.epsilon);
        ratios[static_cast<std::size_t>(n)] = volume / normalizer;
    }
    return ratios;
}

}  // namespace semilap
