#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "cyclurn/exact_dist.hpp"
#include "cyclurn/rng.hpp"
#include "cyclurn/spectral.hpp"
#include "cyclurn/urn.hpp"

namespace cyclurn {

// g_k(u) = (u^{omega^k} + omega^k (1-u)^{omega^k} - 1) / Gamma(1+omega^k),
// with u^{omega^k} = exp(omega^k log u) and one-sided limits at u in {0,1}.
// Requires lambda_k > 0 so the boundary powers vanish.
cd g_k(double u, int k, const SpectralBasis& basis);

struct SplitSample {
    long long n = 0;
    double U = 0.0;
    long long I = 0; // left subtree size, Binomial(n-1, U) given U
    long long J = 0; // n - 1 - I
};

SplitSample split_sample(long long n, Xoshiro256pp& rng);

struct BstSplit {
    SplitSample split;
    Composition left;  // urn of size I started from type 0
    Composition right; // urn of size J started from type 1
    Composition sum;
};

// Simulates the two independent subtree urns of the embedding and their
// recombination; the law of `sum` matches the direct urn law.
BstSplit bst_split_check(long long n, int m, Xoshiro256pp& rng);

// Exact law of the split recombination R_I^{[0]} + A^t R_J^{[0]'} with I
// uniform on {0..n-1}, built from the exact urn laws of the subtrees.
// Subject to the same state-space guards as exact_distribution.
ExactDistribution split_composition_law(int m, long long n);

// Pool iteration of the distributional fixed point for Xi_k: generation 0
// is the constant 0; each member of generation d combines two independent
// draws from generation d-1. Returns generation `depth`. Deterministic for
// a fixed seed regardless of thread count.
std::vector<cd> sample_xi(int k, int depth, int pool_size, std::uint64_t seed,
                          const SpectralBasis& basis);

// One more generation applied to an existing pool (fixed-point consistency
// checks).
std::vector<cd> iterate_xi_pool(const std::vector<cd>& pool, int k, std::uint64_t seed,
                                const SpectralBasis& basis);

// Moment estimates for Xi_k from independent replica pools. Within one pool
// the members are dependent (each generation resamples the previous one),
// so standard errors come from the spread across replicas. The finite-depth
// second-moment deficit is geometric with ratio q = 2/(2 lambda_k + 1) and
// is corrected exactly via s_depth = s_inf (1 - q^depth).
struct XiMomentEstimate {
    cd mean{0.0, 0.0};
    double mean_se = 0.0;
    double second_abs = 0.0; // depth-corrected estimate of E|Xi_k|^2
    double second_abs_se = 0.0;
    double depth_correction = 1.0;
    int replicas = 0;
};

XiMomentEstimate estimate_xi_moments(int k, int depth, int replicas, int pool_each,
                                     std::uint64_t seed, const SpectralBasis& basis);

} // namespace cyclurn
