#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "cyclurn/gamma.hpp"
#include "cyclurn/rng.hpp"
#include "cyclurn/spectral.hpp"

namespace cyclurn {

struct UrnConfig {
    int m = 2;
    int initial_type = 0;
    long long steps = 0;
    std::uint64_t seed = 0;
    std::vector<long long> checkpoints; // sorted, within [0, steps]

    void validate() const; // throws std::invalid_argument on violation
};

// Ball counts per type after `time` steps; total is time + 1.
struct Composition {
    std::vector<long long> counts;
    long long time = 0;
    int initial_type = 0;

    long long total() const {
        long long s = 0;
        for (long long c : counts) s += c;
        return s;
    }
};

Composition initial_composition(int m, int initial_type);

// One urn transition: the ball at position `draw_index` in the cumulative
// count order is drawn (types scanned from 0), and a ball of the successor
// type is added. draw_index must lie in [0, time+1).
Composition step(const Composition& state, long long draw_index);

struct Snapshot {
    long long time = 0;
    Composition comp;
    std::vector<cd> u;          // u_k(R_n), k = 0..m-1, maintained incrementally
    std::vector<cd> gamma_prod; // prod_{s=1..n} (s + omega^k)/s, k = 0..m-1
};

struct TrajectoryRecord {
    UrnConfig config;
    std::vector<Snapshot> snapshots; // at the requested checkpoint times
    Snapshot final_state;            // always at time = steps
};

// Sequential simulation. Per step: O(m) to locate the drawn type plus O(m)
// updates of the complex projections u_k and the running Gamma-ratio
// products. Fixed seed gives a bit-identical record.
TrajectoryRecord simulate(const UrnConfig& config);

// Distributional shift to initial type j: counts rotate by j positions and
// every u_k picks up the factor omega^{kj}. The input must have been
// simulated with initial type 0.
TrajectoryRecord shift_initial_type(const TrajectoryRecord& traj, int j);

// Recompute all u_k directly from counts (O(m^2)); used to validate the
// incrementally maintained projections.
std::vector<cd> recompute_projections(const SpectralBasis& basis, const Composition& comp);

} // namespace cyclurn
