#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "cyclurn/residual.hpp"
#include "cyclurn/rng.hpp"
#include "cyclurn/spectral.hpp"
#include "cyclurn/urn.hpp"

namespace cyclurn {

// Replicate r always uses the generator seeded with derive_seed(seed, r)
// and writes into its own output slot, so Serial and Parallel produce
// bit-identical results and the thread count never changes output.
enum class ExecutionPolicy { Serial, Parallel };

template <class Fn>
void for_each_replicate(int reps, ExecutionPolicy policy, Fn&& fn) {
    if (policy == ExecutionPolicy::Serial) {
        for (int r = 0; r < reps; ++r) fn(r);
        return;
    }
#pragma omp parallel for schedule(dynamic, 1)
    for (int r = 0; r < reps; ++r) fn(r);
}

// One row of Z_n per replicate, with the large-index proxies taken at
// horizon = ceil(horizon_mult * n) on the same trajectory (horizon = n when
// there is no large index).
struct ResidualEnsemble {
    int m = 0;
    long long n = 0;
    long long horizon = 0;
    int reps = 0;
    std::uint64_t seed = 0;
    Eigen::MatrixXd Z;          // reps x (m-1)
    Eigen::MatrixXcd proxies;   // reps x r
};

ResidualEnsemble run_residual_ensemble(const SpectralBasis& basis, long long n, int reps,
                                       std::uint64_t seed, double horizon_mult,
                                       ExecutionPolicy policy = ExecutionPolicy::Parallel);

// M_{k,t} along a grid of times plus at a common horizon, per replicate.
struct CouplingEnsemble {
    int m = 0;
    int k = 0;
    std::vector<long long> grid;
    long long horizon = 0;
    int reps = 0;
    std::uint64_t seed = 0;
    Eigen::MatrixXcd M;         // reps x grid.size()
    Eigen::VectorXcd M_horizon; // reps
};

CouplingEnsemble run_coupling_ensemble(const SpectralBasis& basis, int k,
                                       const std::vector<long long>& grid, long long horizon,
                                       int reps, std::uint64_t seed,
                                       ExecutionPolicy policy = ExecutionPolicy::Parallel);

} // namespace cyclurn
