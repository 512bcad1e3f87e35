#include "semilap/recurrence.hpp"

#include "semilap/io.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

namespace semilap {

namespace {

// murmur3 finalizer, used to decorrelate walk indices before seeding
std::uint64_t fmix64(std::uint64_t k) {
    k ^= k >> 33;
    k *= 0xff51afd7ed558ccdULL;
    k ^= k >> 33;
    k *= 0xc4ceb9fe1a85ec53ULL;
    k ^= k >> 33;
    return k;
}

struct WalkTally {
    long returned = 0;
    long censored = 0;
};

}  // namespace

SplitMix64 walk_stream(std::uint64_t seed, std::uint64_t k) {
    return SplitMix64(seed ^ fmix64(k + 0x632be59bd9b4e019ULL));
}

std::string ReturnEstimate::to_csv() const {
    std::ostringstream os;
    os << "horizon,return_fraction,halfwidth,censored\n";
    os << steps << ',' << io::format_double(return_fraction) << ',' << io::format_double(halfwidth)
       << ',' << censored << '\n';
    return os.str();
}

ReturnEstimate simulate_return(const WeightedGraph& g, const WalkConfig& cfg) {
    g.check_vertex(cfg.root);
    if (cfg.steps < 1 || cfg.walks < 1) {
        throw std::invalid_argument("simulate_return: steps and walks must be at least 1");
    }
    if (cfg.threads < 1) {
        throw std::invalid_argument("simulate_return: thread count must be at least 1");
    }
    if (g.degree(cfg.root) == 0) {
        throw std::domain_error("simulate_return: root has no incident edge");
    }

    std::vector<std::uint8_t> censored_vertex(static_cast<std::size_t>(g.vertex_count()), 0);
    for (VertexId v : cfg.censor) {
        g.check_vertex(v);
        censored_vertex[static_cast<std::size_t>(v)] = 1;
    }

    auto run_walk = [&](std::uint64_t k, WalkTally& tally) {
        SplitMix64 rng = walk_stream(cfg.seed, k);
        VertexId x = cfg.root;
        for (long step = 0; step < cfg.steps; ++step) {
            const double target = rng.uniform01() * g.vertex_measure(x);
            auto nbr = g.neighbors(x);
            auto wts = g.neighbor_weights(x);
            double cumulative = 0.0;
            VertexId y = nbr.back();
            for (std::size_t i = 0; i < nbr.size(); ++i) {
                cumulative += wts[i];
                if (target < cumulative) {
                    y = nbr[i];
                    break;
                }
            }
            if (y == cfg.root) {
                ++tally.returned;
                return;
            }
            if (censored_vertex[static_cast<std::size_t>(y)]) {
                ++tally.censored;
                return;
            }
            x = y;
        }
    };

    WalkTally total;
    if (cfg.threads == 1) {
        for (long k = 0; k < cfg.walks; ++k) {
            run_walk(static_cast<std::uint64_t>(k), total);
        }
    } else {
        const int threads = cfg.threads;
        std::vector<WalkTally> tallies(static_cast<std::size_t>(threads));
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                // strided split: tallies are integer counts, so any partition
                // of the walk indices yields the same totals
                for (long k = t; k < cfg.walks; k += threads) {
                    run_walk(static_cast<std::uint64_t>(k), tallies[static_cast<std::size_t>(t)]);
                }
            });
        }
        for (auto& th : pool) {
            th.join();
        }
        for (const auto& tally : tallies) {
            total.returned += tally.returned;
            total.censored += tally.censored;
        }
    }

    ReturnEstimate estimate;
    estimate.returned = total.returned;
    estimate.censored = total.censored;
    estimate.walks = cfg.walks;
    estimate.steps = cfg.steps;
    estimate.return_fraction = static_cast<double>(total.returned) / static_cast<double>(cfg.walks);
    const double p = estimate.return_fraction;
    estimate.halfwidth = 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(cfg.walks));
    return estimate;
}

SeriesDiagnostic nash_williams_partial(const WeightedGraph& g, VertexId origin, long n_max) {
    if (n_max < 1) {
        throw std::invalid_argument("nash_williams_partial: n_max must be at least 1");
    }
    if (n_max > static_cast<long>(g.vertex_count())) {
        n_max = g.vertex_count();
    }
    const VertexFunction volumes = volume_profile(g, origin, static_cast<int>(n_max));
    if (volumes[0] <= 0.0) {
        throw std::domain_error("nash_williams_partial: origin has zero measure");
    }
    std::vector<double> terms(static_cast<std::size_t>(n_max));
    for (long n = 1; n <= n_max; ++n) {
        terms[static_cast<std::size_t>(n - 1)] = static_cast<double>(n) / volumes[static_cast<Eigen::Index>(n)];
    }
    return diagnose_series(std::move(terms), 1);
}

}  // namespace semilap
