#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <ctime>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "semilap/generators.hpp"
#include "semilap/graph.hpp"
#include "semilap/highprec.hpp"
#include "semilap/io.hpp"
#include "semilap/operators.hpp"
#include "semilap/recurrence.hpp"
#include "semilap/tree_example.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

// 0 success/verified, 1 verified-false, 2 input error, 3 domain error,
// 4 numeric guard tripped
enum ExitCode : int {
    kOk = 0,
    kVerifiedFalse = 1,
    kInputError = 2,
    kDomainError = 3,
    kNumericGuard = 4,
};

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// '#'-prefixed block embedded at the top of every output file. The CSV body
// below it is a pure function of the recorded command, parameters, input
// digests, and seed; only the timestamp varies between equal reruns.
class RunManifest {
public:
    explicit RunManifest(std::string command) : command_(std::move(command)) {}

    void param(const std::string& key, const std::string& value) {
        lines_.push_back("param " + key + " = " + value);
    }
    void param(const std::string& key, double value) { param(key, semilap::io::format_double(value)); }
    void param(const std::string& key, long value) { param(key, std::to_string(value)); }
    void param(const std::string& key, int value) { param(key, std::to_string(value)); }
    void input(const std::string& label, const std::string& path) {
        lines_.push_back("input " + label + " = " + path + " digest " + semilap::io::file_digest(path));
    }
    void seed(std::uint64_t s) { lines_.push_back("seed = " + std::to_string(s)); }
    void note(const std::string& text) { lines_.push_back(text); }

    std::string render() const {
        std::ostringstream os;
        os << "# command = " << command_ << "\n";
        os << "# version = " << kVersion << "\n";
        os << "# timestamp = " << utc_timestamp() << "\n";
        for (const auto& line : lines_) {
            os << "# " << line << "\n";
        }
        return os.str();
    }

private:
    std::string command_;
    std::vector<std::string> lines_;
};

void write_or_print(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
    } else {
        semilap::io::write_file(path, content);
    }
}

std::string fmt(double v) { return semilap::io::format_double(v); }

struct CheckArgs {
    std::string graph_file;
    std::string solution_file;
    double sigma = 2.0;
    double tol = 0.0;
    std::vector<int> boundary;
    int interior_degree = 0;
    std::string report_file;
};

int run_check(const CheckArgs& a) {
    const auto g = semilap::io::read_edge_list_file(a.graph_file);
    const auto u = semilap::io::read_vertex_function_file(a.solution_file, g.vertex_count());

    semilap::InteriorMask mask = semilap::InteriorMask::all(g);
    if (!a.boundary.empty()) {
        mask = semilap::InteriorMask::from_boundary(g, a.boundary);
    } else if (a.interior_degree > 0) {
        mask = semilap::InteriorMask::full_degree(g, a.interior_degree);
    }
    const auto report = semilap::check_inequality(g, u, a.sigma, mask, a.tol);

    RunManifest manifest("semilap check");
    manifest.input("graph", a.graph_file);
    manifest.input("solution", a.solution_file);
    manifest.param("sigma", a.sigma);
    manifest.param("tol", a.tol);
    if (!a.boundary.empty()) {
        manifest.param("boundary-size", static_cast<long>(a.boundary.size()));
    } else if (a.interior_degree > 0) {
        manifest.param("interior-degree", a.interior_degree);
    }

    write_or_print(a.report_file, manifest.render() + report.summary() + "\n");
    if (!a.report_file.empty()) {
        std::cout << report.summary() << "\n";
    }
    return report.passed() ? kOk : kVerifiedFalse;
}

struct TreeExampleArgs {
    double sigma = 2.0;
    double epsilon = 0.5;
    int branching = 3;
    long horizon = 100000;
    long n0 = -1;
    double delta = -1.0;
    bool has_n0 = false;
    bool has_delta = false;
    long stride = 0;
    std::string out;
    std::string certificate_file;
};

int run_tree_example(const TreeExampleArgs& a) {
    if (a.has_n0 != a.has_delta) {
        std::cerr << "tree-example: --n0 and --delta must be supplied together\n";
        return kInputError;
    }
    const semilap::CalibrationResult result =
        a.has_n0 ? semilap::verify_example(
                       semilap::ExampleParams(a.sigma, a.epsilon, a.branching, a.n0, a.delta), a.horizon)
                 : semilap::calibrate(a.sigma, a.epsilon, a.branching, a.horizon);

    RunManifest manifest("semilap tree-example");
    manifest.param("sigma", a.sigma);
    manifest.param("epsilon", a.epsilon);
    manifest.param("branching", a.branching);
    manifest.param("horizon", a.horizon);
    manifest.param("n0", result.params.n0);
    manifest.param("delta", result.params.delta);
    manifest.note(a.has_n0 ? "mode = verify supplied parameters" : "mode = calibrate");

    write_or_print(a.certificate_file, manifest.render() + result.certificate());
    if (!a.certificate_file.empty()) {
        std::cout << "certificate written to " << a.certificate_file << "\n";
    }

    if (!a.out.empty()) {
        const long stride = a.stride > 0 ? a.stride : std::max(1L, a.horizon / 1000);
        manifest.param("stride", stride);
        const auto ratios = semilap::volume_ratio_profile(result.params, a.horizon);
        std::ostringstream csv;
        csv << "n,u_n,w_n,residual,residual_threshold,volume_ratio\n";
        for (long n = 0; n <= a.horizon; n += stride) {
            csv << n << "," << fmt(semilap::u_layer(n, result.params)) << ","
                << fmt(semilap::reduced_weight(n, result.params)) << ","
                << fmt(semilap::radial_residual(n, result.params)) << ",";
            if (n >= 1) {
                csv << fmt(semilap::residual_threshold(n, result.params).convert_to<double>());
            }
            csv << ",";
            if (n >= 2) {
                csv << fmt(ratios[static_cast<std::size_t>(n)]);
            }
            csv << "\n";
        }
        semilap::io::write_file(a.out, manifest.render() + csv.str());
        std::cout << "profile written to " << a.out << "\n";
    }

    std::cout << "verified: residuals nonpositive for 0 <= n <= " << result.horizon_checked
              << " (n0 = " << result.params.n0 << ", delta = " << fmt(result.params.delta)
              << ", min margin = " << fmt(result.min_margin) << ")\n";
    return kOk;
}

struct VolumeArgs {
    std::string graph_file;
    int root = 0;
    double sigma = 2.0;
    double epsilon = 0.5;
    int branching = 3;
    long n0 = -1;
    double delta = -1.0;
    bool has_n0 = false;
    bool has_delta = false;
    long n_max = 100;
    std::string out;
};

int run_volume(const VolumeArgs& a) {
    if (!(a.sigma > 1.0)) {
        throw std::domain_error("volume: the growth exponent needs sigma > 1");
    }
    RunManifest manifest("semilap volume");
    manifest.param("sigma", a.sigma);
    manifest.param("n-max", a.n_max);

    std::ostringstream csv;
    csv << "n,volume,ratio\n";
    const double p = 1.0 / (a.sigma - 1.0);
    if (!a.graph_file.empty()) {
        // explicit graph: ball volumes against the critical rate
        // n^{2 sigma/(sigma-1)} (ln n)^{1/(sigma-1)}
        const auto g = semilap::io::read_edge_list_file(a.graph_file);
        manifest.input("graph", a.graph_file);
        manifest.param("root", a.root);
        manifest.note("normalizer = n^(2 sigma/(sigma-1)) (ln n)^(1/(sigma-1))");
        const auto profile = semilap::volume_profile(g, a.root, static_cast<int>(a.n_max));
        for (long n = 2; n <= a.n_max; ++n) {
            const double volume = profile[n];
            const double rate = std::pow(static_cast<double>(n), 2.0 * (p + 1.0)) *
                                std::pow(std::log(static_cast<double>(n)), p);
            csv << n << "," << fmt(volume) << "," << fmt(volume / rate) << "\n";
        }
    } else {
        // radial tree model: the profile divides by the model's own
        // log-corrected rate, so a bounded band means critical-plus-epsilon
        if (a.has_n0 != a.has_delta) {
            std::cerr << "volume: --n0 and --delta must be supplied together\n";
            return kInputError;
        }
        const semilap::ExampleParams params =
            a.has_n0 ? semilap::ExampleParams(a.sigma, a.epsilon, a.branching, a.n0, a.delta)
                     : semilap::calibrate(a.sigma, a.epsilon, a.branching, std::max(a.n_max, 1000L)).params;
        manifest.param("epsilon", params.epsilon);
        manifest.param("branching", params.branching);
        manifest.param("n0", params.n0);
        manifest.param("delta", params.delta);
        manifest.note("normalizer = n^(2p+2) (ln n)^(p+epsilon), p = 1/(sigma-1)");
        const auto model = semilap::make_radial_model(params, static_cast<int>(a.n_max));
        const auto ratios = semilap::volume_ratio_profile(params, a.n_max);
        for (long n = 2; n <= a.n_max; ++n) {
            csv << n << "," << fmt(model.ball_volume(static_cast<int>(n))) << ","
                << fmt(ratios[static_cast<std::size_t>(n)]) << "\n";
        }
    }
    write_or_print(a.out, manifest.render() + csv.str());
    return kOk;
}

struct RecurrenceArgs {
    std::string graph_file;
    int root = 0;
    long n_max = 30;
    long steps = 1000;
    long walks = 10000;
    std::uint64_t seed = 0;
    int threads = 1;
    std::vector<int> censor;
    std::string out_prefix = "recurrence";
};

int run_recurrence(const RecurrenceArgs& a) {
    const auto g = semilap::io::read_edge_list_file(a.graph_file);

    const auto nash = semilap::nash_williams_partial(g, a.root, a.n_max);
    semilap::WalkConfig cfg;
    cfg.root = a.root;
    cfg.steps = a.steps;
    cfg.walks = a.walks;
    cfg.seed = a.seed;
    cfg.censor = a.censor;
    cfg.threads = a.threads;
    const auto estimate = semilap::simulate_return(g, cfg);

    RunManifest nash_manifest("semilap recurrence (partial sums)");
    nash_manifest.input("graph", a.graph_file);
    nash_manifest.param("root", a.root);
    nash_manifest.param("n-max", a.n_max);
    nash_manifest.note("trend = " + nash.trend_name());
    semilap::io::write_file(a.out_prefix + "_nash.csv", nash_manifest.render() + nash.to_csv("n"));

    RunManifest walk_manifest("semilap recurrence (return estimates)");
    walk_manifest.input("graph", a.graph_file);
    walk_manifest.param("root", a.root);
    walk_manifest.param("steps", a.steps);
    walk_manifest.param("walks", a.walks);
    walk_manifest.param("threads", a.threads);
    walk_manifest.param("censor-size", static_cast<long>(a.censor.size()));
    walk_manifest.seed(a.seed);
    semilap::io::write_file(a.out_prefix + "_return.csv", walk_manifest.render() + estimate.to_csv());

    std::cout << "partial-sum trend: " << nash.trend_name()
              << (nash.trend == semilap::SeriesDiagnostic::Trend::Divergent
                      ? " (recurrent by the partial-sum criterion)"
                      : "")
              << "\n";
    std::cout << "return fraction = " << fmt(estimate.return_fraction) << " +- "
              << fmt(estimate.halfwidth) << " (" << estimate.returned << "/" << estimate.walks
              << " returned, " << estimate.censored << " censored)\n";
    std::cout << "wrote " << a.out_prefix << "_nash.csv and " << a.out_prefix << "_return.csv\n";
    return kOk;
}

struct LimitArgs {
    double sigma = 2.0;
    double epsilon = 0.5;
    std::vector<std::string> n_tokens;
    std::string out;
};

int run_limit(const LimitArgs& a) {
    std::vector<long> ns;
    for (const auto& token : a.n_tokens) {
        if (token.empty()) {
            continue;
        }
        std::size_t used = 0;
        long n = 0;
        try {
            n = std::stol(token, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != token.size()) {
            std::cerr << "limit: bad depth '" << token << "'\n";
            return kInputError;
        }
        ns.push_back(n);
    }
    if (ns.empty()) {
        std::cerr << "limit: the n-list is empty\n";
        return kInputError;
    }
    const double target = a.epsilon / (a.sigma - 1.0);

    RunManifest manifest("semilap limit");
    manifest.param("sigma", a.sigma);
    manifest.param("epsilon", a.epsilon);
    manifest.param("target", target);

    std::ostringstream csv;
    csv << "n,value,abs_error_to_p_epsilon\n";
    for (const long n : ns) {
        const semilap::Real50 value = semilap::limit_expression(n, a.sigma, a.epsilon);
        const semilap::Real50 err = abs(value - semilap::Real50(target));
        csv << n << "," << fmt(value.convert_to<double>()) << "," << fmt(err.convert_to<double>())
            << "\n";
    }
    write_or_print(a.out, manifest.render() + csv.str());
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "semilap: checks the discrete inequality (Laplacian u) + u^sigma <= 0 on weighted "
        "graphs, builds the log-corrected radial tree supersolution, and probes volume "
        "growth and walk recurrence"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "key = value lines under a [subcommand] section; flags override file values");

    CheckArgs check;
    auto* cmd_check = app.add_subcommand("check", "verify a candidate solution from files");
    cmd_check->fallthrough();
    cmd_check->add_option("--graph", check.graph_file, "edge-list file")->required();
    cmd_check->add_option("--solution", check.solution_file, "vertex-function file")->required();
    cmd_check->add_option("--sigma", check.sigma, "exponent sigma")->required();
    cmd_check->add_option("--tol", check.tol, "residual tolerance (default 0)");
    cmd_check->add_option("--boundary", check.boundary, "vertex ids excluded from the check")
        ->delimiter(',');
    cmd_check->add_option("--interior-degree", check.interior_degree,
                          "treat exactly-this-degree vertices as interior");
    cmd_check->add_option("--report", check.report_file, "write the report here (default stdout)");

    TreeExampleArgs tree;
    auto* cmd_tree = app.add_subcommand(
        "tree-example", "calibrate or verify the radial supersolution on the homogeneous tree");
    cmd_tree->fallthrough();
    cmd_tree->add_option("--sigma", tree.sigma, "exponent sigma > 1")->required();
    cmd_tree->add_option("--epsilon", tree.epsilon, "extra log power epsilon > 0")->required();
    cmd_tree->add_option("--branching", tree.branching, "tree degree N >= 2");
    cmd_tree->add_option("--horizon", tree.horizon, "verify residuals for 0 <= n <= horizon");
    auto* opt_n0 = cmd_tree->add_option("--n0", tree.n0, "index shift (with --delta: skip calibration)");
    auto* opt_delta = cmd_tree->add_option("--delta", tree.delta, "amplitude (with --n0)");
    cmd_tree->add_option("--out", tree.out, "write the per-layer CSV here");
    cmd_tree->add_option("--certificate", tree.certificate_file,
                         "write the certificate here (default stdout)");
    cmd_tree->add_option("--stride", tree.stride, "CSV row thinning (default horizon/1000)");

    VolumeArgs volume;
    auto* cmd_volume =
        app.add_subcommand("volume", "ball volume profile against the critical growth rate");
    cmd_volume->fallthrough();
    auto* opt_vgraph = cmd_volume->add_option("--graph", volume.graph_file, "edge-list file");
    cmd_volume->add_option("--root", volume.root, "ball center (graph mode)");
    cmd_volume->add_option("--sigma", volume.sigma, "exponent sigma > 1")->required();
    auto* opt_veps = cmd_volume->add_option("--epsilon", volume.epsilon, "tree-model log power");
    cmd_volume->add_option("--branching", volume.branching, "tree-model degree");
    auto* opt_vn0 = cmd_volume->add_option("--n0", volume.n0, "tree-model index shift");
    auto* opt_vdelta = cmd_volume->add_option("--delta", volume.delta, "tree-model amplitude");
    cmd_volume->add_option("--n-max", volume.n_max, "largest radius")->required();
    cmd_volume->add_option("--out", volume.out, "write the CSV here (default stdout)");
    opt_vgraph->excludes(opt_veps);

    RecurrenceArgs recurrence;
    auto* cmd_recurrence = app.add_subcommand(
        "recurrence", "partial-sum criterion and Monte-Carlo return estimates");
    cmd_recurrence->fallthrough();
    cmd_recurrence->add_option("--graph", recurrence.graph_file, "edge-list file")->required();
    cmd_recurrence->add_option("--root", recurrence.root, "walk start vertex");
    cmd_recurrence->add_option("--n-max", recurrence.n_max, "partial-sum depth");
    cmd_recurrence->add_option("--steps", recurrence.steps, "walk horizon");
    cmd_recurrence->add_option("--walks", recurrence.walks, "number of walks");
    cmd_recurrence->add_option("--seed", recurrence.seed, "stream seed")->required();
    cmd_recurrence->add_option("--threads", recurrence.threads, "worker threads (output-invariant)");
    cmd_recurrence->add_option("--censor", recurrence.censor,
                               "vertex ids that absorb and censor a walk")
        ->delimiter(',');
    cmd_recurrence->add_option("--out-prefix", recurrence.out_prefix,
                               "writes <prefix>_nash.csv and <prefix>_return.csv");

    LimitArgs limit;
    auto* cmd_limit = app.add_subcommand(
        "limit", "high-precision evaluation of the threshold expression against p*epsilon");
    cmd_limit->fallthrough();
    cmd_limit->add_option("--sigma", limit.sigma, "exponent sigma > 1")->required();
    cmd_limit->add_option("--epsilon", limit.epsilon, "log power epsilon > 0")->required();
    cmd_limit->add_option("--n", limit.n_tokens, "comma-separated depths (each >= 3)")->delimiter(',');
    cmd_limit->add_option("--out", limit.out, "write the CSV here (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try {
        tree.has_n0 = opt_n0->count() > 0;
        tree.has_delta = opt_delta->count() > 0;
        volume.has_n0 = opt_vn0->count() > 0;
        volume.has_delta = opt_vdelta->count() > 0;
        if (cmd_check->parsed()) {
            return run_check(check);
        }
        if (cmd_tree->parsed()) {
            return run_tree_example(tree);
        }
        if (cmd_volume->parsed()) {
            return run_volume(volume);
        }
        if (cmd_recurrence->parsed()) {
            return run_recurrence(recurrence);
        }
        if (cmd_limit->parsed()) {
            return run_limit(limit);
        }
        return kInputError;
    } catch (const semilap::CalibrationError& e) {
        std::cerr << e.what() << "\n";
        return kVerifiedFalse;
    } catch (const semilap::PrecisionError& e) {
        std::cerr << e.what() << "\n";
        return kNumericGuard;
    } catch (const semilap::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kInputError;
    } catch (const std::domain_error& e) {
        std::cerr << e.what() << "\n";
        return kDomainError;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kDomainError;
    }
}
