#pragma once

#include <string>
#include <vector>

namespace semilap {

// Partial sums of a positive series together with a divergence-trend
// diagnostic. Divergence is never decidable from finitely many terms, so the
// verdict is a trend label, not a theorem.
//
// The primary diagnostic fits the log-log slope s of term_n against n over
// the tail half of the data: s clearly above -1 reads divergent, clearly
// below reads convergent. Slopes within 0.3 of -1 land in the log-corrected
// regime (terms ~ 1/(n (ln n)^q), divergent iff q <= 1); there the slope of
// log(n * term_n) against log(ln n) estimates -q and decides the label with
// a 0.1 margin around -1. Fewer than 8 tail points is inconclusive.
struct SeriesDiagnostic {
    enum class Trend { Divergent, Convergent, Inconclusive };

    long first_index = 1;              // n of terms.front()
    std::vector<double> terms;
    std::vector<double> partial_sums;  // running sums of terms
    double loglog_slope = 0.0;
    double bertrand_exponent = 0.0;    // meaningful only when bertrand_used
    bool bertrand_used = false;
    Trend trend = Trend::Inconclusive;

    std::string trend_name() const;
    std::string describe() const;
    // CSV rows "<index_name>,term,partial_sum", no header comments.
    std::string to_csv(const std::string& index_name) const;
};

// Builds the diagnostic from raw terms (term_n for n = first_index, ...).
SeriesDiagnostic diagnose_series(std::vector<double> terms, long first_index);

}  // namespace semilap
