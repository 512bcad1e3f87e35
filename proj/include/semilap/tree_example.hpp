#pragma once

#include "semilap/generators.hpp"
#include "semilap/highprec.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace semilap {

// Parameters of the radial supersolution family on the N-homogeneous tree:
//   w_n = (n+n0)^{2p+1} (ln(n+n0))^{p+eps}   (reduced edge weights)
//   u_n = delta / ((n+n0)^{2p} (ln(n+n0))^p) (layer values)
// with p = 1/(sigma-1). The weights give ball volumes
// ~ n^{2 sigma/(sigma-1)} (ln n)^{1/(sigma-1)+eps}, one log power above the
// critical growth rate, and a calibrated (n0, delta) makes u a positive
// solution of Delta u + u^sigma <= 0 in the radial sense.
struct ExampleParams {
    double sigma;
    double epsilon;
    int branching;  // N
    long n0;
    double delta;

    ExampleParams(double sigma, double epsilon, int branching, long n0, double delta);

    double p() const { return 1.0 / (sigma - 1.0); }
};

namespace radial {

// shared scalar kernels; S is double, Real50 or Real100
template <class S>
S reduced_weight(long n, long n0, const S& p, const S& eps) {
    using std::log;
    using std::pow;
    const S m = S(n) + S(n0);
    return pow(m, 2 * p + 1) * pow(log(m), p + eps);
}

template <class S>
S layer_value(long n, long n0, const S& p, const S& delta) {
    using std::log;
    using std::pow;
    const S m = S(n) + S(n0);
    return delta / (pow(m, 2 * p) * pow(log(m), p));
}

// The normalized residual-threshold kernel at radius argument m:
//   T(m) = m^2 ln m - m^{2p+2} (ln m)^{p+1} *
//          [ w(m)/((m+1)^{2p} (ln(m+1))^p) + (m-1)(ln(m-1))^eps ]
//          / [ w(m) + w(m-1) ]
// where w(t) = t^{2p+1} (ln t)^{p+eps}. The layer residual with offset n0
// satisfies residual(n) <= 0 iff delta^{sigma-1} <= T(n + n0), and
// T(m) -> p*eps as m -> infinity. The bracketed difference cancels to
// O(1) against terms of size m^2 ln m, hence the high-precision evaluation.
template <class S>
S threshold_kernel(const S& m, const S& sigma, const S& eps) {
    using std::log;
    using std::pow;
    const S one(1);
    const S p = one / (sigma - one);
    const S log_m = log(m);
    const S log_prev = log(m - one);
    const S log_next = log(m + one);
    const S w_m = pow(m, 2 * p + 1) * pow(log_m, p + eps);
    const S w_prev = pow(m - one, 2 * p + 1) * pow(log_prev, p + eps);
    const S numerator = w_m / (pow(m + one, 2 * p) * pow(log_next, p)) + (m - one) * pow(log_prev, eps);
    return m * m * log_m - pow(m, 2 * p + 2) * pow(log_m, p + 1) * numerator / (w_m + w_prev);
}

}  // namespace radial

// u_n; strictly decreasing in n, linear in delta.
double u_layer(long n, const ExampleParams& params);

// w_n in double precision.
double reduced_weight(long n, const ExampleParams& params);

// Radial residual of u at layer n:
//   n = 0: u_1 - u_0 + u_0^sigma
//   n >= 1: (w_{n-1} u_{n-1} + w_n u_{n+1})/(w_{n-1} + w_n) - u_n + u_n^sigma
// (the reduced form; the common factor (N-1)^{n-1} cancels exactly, so the
// value is independent of the branching number).
double radial_residual(long n, const ExampleParams& params);

// Largest delta for which the root-layer residual is nonpositive:
//   delta0 = A_0 ((A_1 - A_0)/A_1)^{1/(sigma-1)},
// with A_k = (n0+k)^{2p} (ln(n0+k))^p. Choosing delta = delta0 makes
// radial_residual(0) vanish.
double delta0(double sigma, long n0);

// T(n + n0) evaluated at 50 decimal digits with a 100-digit recomputation
// guard: residual(n) <= 0 iff delta^{sigma-1} <= threshold. Pre: n >= 1.
Real50 residual_threshold(long n, double sigma, double epsilon, long n0);
Real50 residual_threshold(long n, const ExampleParams& params);

// The threshold kernel at raw argument n (no offset), the quantity whose
// limit is p*eps. Pre: n >= 3. Same precision contract.
Real50 limit_expression(long n, double sigma, double epsilon);

// exact double-precision rounding envelope for the double evaluation of
// threshold_kernel at argument m (used to screen sweeps before escalating
// to the guarded high-precision path)
double threshold_double_error_bound(double m);

struct CalibrationResult {
    ExampleParams params;        // with the chosen n0 and delta
    double delta0_value = 0.0;   // root-layer bound at the chosen n0
    double delta_cap = 0.0;      // (p eps / 2)^{1/(sigma-1)}
    long horizon_checked = 0;
    // residual sweep: worst (largest) residual over 0..horizon and where;
    // min_margin = -tightest_residual is the distance to violation
    double tightest_residual = 0.0;
    long tightest_residual_at = 0;
    double min_margin = 0.0;
    // threshold sweep over 1..horizon (guarded high-precision at the argmin)
    double min_threshold = 0.0;
    long min_threshold_at = 0;
    double threshold_target = 0.0;  // p eps / 2
    // kernel nondecreasing across the last swept step; false means the
    // horizon stops short of the kernel's dip and says nothing beyond it
    bool threshold_rising_at_horizon = false;

    // structured text block, 25 significant digits
    std::string certificate() const;
};

struct CalibrationError : std::runtime_error {
    CalibrationError(const std::string& message, long best_n0, double best_min_threshold, double target);
    long best_n0;
    double best_min_threshold;
    double threshold_target;
};

// Searches n0 = 2, 3, ... for the smallest offset whose threshold stays
// >= p*eps/2 over 1..horizon and is nondecreasing at the horizon, sets
// delta = min(delta0, (p*eps/2)^{1/(sigma-1)}), and verifies the residual
// sweep 0..horizon. Throws CalibrationError when n0 exceeds n0_cap.
CalibrationResult calibrate(double sigma, double epsilon, int branching, long horizon, long n0_cap = 64);

// Verifies a user-supplied (n0, delta) pair the same way calibrate verifies
// its own choice; returns the certificate (throws CalibrationError when the
// residual sweep finds a violation).
CalibrationResult verify_example(const ExampleParams& params, long horizon);

// Radial model of the weighted tree, layers 0..depth.
RadialTreeModel make_radial_model(const ExampleParams& params, int depth);

// u_layer values 0..depth, ready for radial_to_explicit.
std::vector<double> layer_values(const ExampleParams& params, int depth);

// ratios mu(B(o,n)) / (n^{2 sigma/(sigma-1)} (ln n)^{1/(sigma-1)+eps}) for
// n = 2..n_max; entries 0 and 1 of the returned vector are NaN placeholders.
std::vector<double> volume_ratio_profile(const ExampleParams& params, long n_max);

}  // namespace semilap
