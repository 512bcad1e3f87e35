#pragma once

#include "semilap/graph.hpp"
#include "semilap/series.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace semilap {

// Configuration for Monte-Carlo return estimation of the mu-random walk with
// kernel P(x,y) = mu_xy / mu(x).
struct WalkConfig {
    VertexId root = 0;
    long steps = 1;            // horizon per walk
    long walks = 1;            // independent walks
    std::uint64_t seed = 0;
    // absorbing truncation rim: stepping onto one of these vertices censors
    // the walk (counted as no return, tallied separately)
    std::vector<VertexId> censor;
    int threads = 1;
};

struct ReturnEstimate {
    double return_fraction = 0.0;  // walks that revisited the root within the horizon
    double halfwidth = 0.0;        // 95% normal-approximation interval halfwidth
    long returned = 0;
    long censored = 0;
    long walks = 0;
    long steps = 0;

    std::string to_csv() const;  // "horizon,return_fraction,halfwidth,censored"
};

// Deterministic given (graph, cfg): walk k draws from a substream that
// depends only on (seed, k), so results are bit-identical across thread
// counts, and return counts are nondecreasing in `steps` for a fixed seed
// (longer horizons replay the same trajectories further).
ReturnEstimate simulate_return(const WeightedGraph& g, const WalkConfig& cfg);

// Partial sums of sum_n n / mu(B(o,n)): divergence is sufficient for
// recurrence. Terms run n = 1..n_max; on a truncation, radii beyond the rim
// only echo the saturated ball volume, so n_max is clamped to vertex count.
SeriesDiagnostic nash_williams_partial(const WeightedGraph& g, VertexId origin, long n_max);

// splitmix64: the per-walk substream generator
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// stream for walk k under the given seed; pure function of (seed, k)
SplitMix64 walk_stream(std::uint64_t seed, std::uint64_t k);

}  // namespace semilap
