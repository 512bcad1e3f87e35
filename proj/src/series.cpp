#include "semilap/series.hpp"

#include "semilap/io.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace semilap {

namespace {

// least-squares slope of y against x
double fitted_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0.0;
    double sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) {
        return 0.0;
    }
    return sxy / sxx;
}

// Half-width of the slope band around -1 routed through the log-power
// refinement. A term sequence c/(n (ln n)^q) has finite-n slope about
// -1 - q/ln n, which is 0.1..0.25 away from -1 for the q and n this tool
// meets, so the band must be generous; polynomially off-critical series
// survive the rerouting because their refined exponent runs to +-infinity
// on the correct side.
constexpr double kBertrandGate = 0.3;

// refinement verdict margin: exponent above -1 - margin reads divergent
constexpr double kSlopeMargin = 0.1;

}  // namespace

std::string SeriesDiagnostic::trend_name() const {
    switch (trend) {
        case Trend::Divergent:
            return "divergent";
        case Trend::Convergent:
            return "convergent";
        default:
            return "inconclusive";
    }
}

std::string SeriesDiagnostic::describe() const {
    std::ostringstream os;
    os << "terms " << first_index << ".." << (first_index + static_cast<long>(terms.size()) - 1)
       << ", partial sum " << (partial_sums.empty() ? 0.0 : partial_sums.back()) << ", log-log slope "
       << loglog_slope;
    if (bertrand_used) {
        os << ", log-power exponent " << bertrand_exponent;
    }
    os << ", trend: " << trend_name();
    return os.str();
}

std::string SeriesDiagnostic::to_csv(const std::string& index_name) const {
    std::ostringstream os;
    os << index_name << ",term,partial_sum\n";
    for (std::size_t i = 0; i < terms.size(); ++i) {
        os << (first_index + static_cast<long>(i)) << ',' << io::format_double(terms[i]) << ','
           << io::format_double(partial_sums[i]) << '\n';
    }
    return os.str();
}

SeriesDiagnostic diagnose_series(std::vector<double> terms, long first_index) {
    if (first_index < 1) {
        throw std::invalid_argument("diagnose_series: series must start at index >= 1");
    }
    SeriesDiagnostic diag;
    diag.first_index = first_index;
    diag.terms = std::move(terms);
    diag.partial_sums.resize(diag.terms.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < diag.terms.size(); ++i) {
        sum += diag.terms[i];
        diag.partial_sums[i] = sum;
    }

    const long last = first_index + static_cast<long>(diag.terms.size()) - 1;
    // tail window: upper half of the index range, clear of ln ln singularities
    const long tail_begin = std::max<long>(3, first_index + (last - first_index) / 2);
    std::vector<double> log_n;
    std::vector<double> log_term;
    std::vector<double> log_log_n;
    std::vector<double> log_n_term;
    for (long n = tail_begin; n <= last; ++n) {
        const double term = diag.terms[static_cast<std::size_t>(n - first_index)];
        if (term <= 0.0) {
            continue;
        }
        log_n.push_back(std::log(static_cast<double>(n)));
        log_term.push_back(std::log(term));
        log_log_n.push_back(std::log(std::log(static_cast<double>(n))));
        log_n_term.push_back(std::log(static_cast<double>(n) * term));
    }
    if (log_n.size() < 8) {
        diag.trend = SeriesDiagnostic::Trend::Inconclusive;
        return diag;
    }
    diag.loglog_slope = fitted_slope(log_n, log_term);
    if (diag.loglog_slope > -1.0 + kBertrandGate) {
        diag.trend = SeriesDiagnostic::Trend::Divergent;
    } else if (diag.loglog_slope < -1.0 - kBertrandGate) {
        diag.trend = SeriesDiagnostic::Trend::Convergent;
    } else {
        diag.bertrand_used = true;
        diag.bertrand_exponent = fitted_slope(log_log_n, log_n_term);
        diag.trend = (diag.bertrand_exponent > -1.0 - kSlopeMargin) ? SeriesDiagnostic::Trend::Divergent
                                                                    : SeriesDiagnostic::Trend::Convergent;
    }
    return diag;
}

}  // namespace semilap
