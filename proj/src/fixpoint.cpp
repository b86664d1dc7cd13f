#include "cyclurn/fixpoint.hpp"

#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cyclurn {

cd g_k(double u, int k, const SpectralBasis& basis) {
    if (u < 0.0 || u > 1.0) throw std::invalid_argument("g_k: u must lie in [0,1]");
    const cd w = basis.omega(k);
    if (!(w.real() > 0.0)) throw std::invalid_argument("g_k: requires lambda_k > 0");
    const cd pow_u = (u == 0.0) ? cd{0.0, 0.0} : std::exp(w * std::log(u));
    const cd pow_1mu = (u == 1.0) ? cd{0.0, 0.0} : std::exp(w * std::log1p(-u));
    return (pow_u + w * pow_1mu - 1.0) / gamma_fn(1.0 + w);
}

SplitSample split_sample(long long n, Xoshiro256pp& rng) {
    if (n < 1) throw std::invalid_argument("split_sample: n must be >= 1");
    SplitSample s;
    s.n = n;
    s.U = rng.uniform_open01();
    long long count = 0;
    for (long long i = 0; i < n - 1; ++i) {
        if (rng.uniform01() < s.U) ++count;
    }
    s.I = count;
    s.J = n - 1 - s.I;
    return s;
}

BstSplit bst_split_check(long long n, int m, Xoshiro256pp& rng) {
    BstSplit out;
    out.split = split_sample(n, rng);

    UrnConfig left_cfg;
    left_cfg.m = m;
    left_cfg.steps = out.split.I;
    left_cfg.seed = rng.next();
    out.left = simulate(left_cfg).final_state.comp;

    UrnConfig right_cfg;
    right_cfg.m = m;
    right_cfg.steps = out.split.J;
    right_cfg.seed = rng.next();
    TrajectoryRecord right_type0 = simulate(right_cfg);
    out.right = shift_initial_type(right_type0, 1 % m).final_state.comp;

    out.sum.counts.assign(static_cast<std::size_t>(m), 0);
    for (int t = 0; t < m; ++t) {
        out.sum.counts[static_cast<std::size_t>(t)] =
            out.left.counts[static_cast<std::size_t>(t)] + out.right.counts[static_cast<std::size_t>(t)];
    }
    out.sum.time = n;
    out.sum.initial_type = 0;
    return out;
}

ExactDistribution split_composition_law(int m, long long n) {
    if (n < 1) throw std::invalid_argument("split_composition_law: n must be >= 1");
    std::vector<ExactDistribution> sub;
    sub.reserve(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i) {
        sub.push_back(exact_distribution(m, i));
    }
    ExactDistribution out;
    out.m = m;
    out.n = n;
    const Rational inv_n(1, n);
    for (long long i = 0; i < n; ++i) {
        const ExactDistribution& left = sub[static_cast<std::size_t>(i)];
        const ExactDistribution& right = sub[static_cast<std::size_t>(n - 1 - i)];
        for (const auto& [lc, lp] : left.law) {
            for (const auto& [rc, rp] : right.law) {
                // right subtree starts from type 1: rotate its counts by one
                std::vector<long long> total = lc;
                for (int t = 0; t < m; ++t) {
                    total[static_cast<std::size_t>((t + 1) % m)] += rc[static_cast<std::size_t>(t)];
                }
                out.law[total] += inv_n * lp * rp;
            }
        }
    }
    Rational mass(0);
    for (const auto& [c, p] : out.law) mass += p;
    if (mass != Rational(1)) {
        throw std::logic_error("split_composition_law: probabilities do not sum to 1");
    }
    return out;
}

namespace {

void advance_generation(const std::vector<cd>& prev, std::vector<cd>& next, int k, int gen,
                        std::uint64_t seed, const SpectralBasis& basis) {
    const cd w = basis.omega(k);
    const auto size = static_cast<long long>(next.size());
    const auto pool = static_cast<std::uint64_t>(prev.size());
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < size; ++i) {
        Xoshiro256pp rng(derive_seed(seed, static_cast<std::uint64_t>(gen) * static_cast<std::uint64_t>(size) +
                                               static_cast<std::uint64_t>(i)));
        const double u = rng.uniform_open01();
        const cd xi0 = prev[static_cast<std::size_t>(rng.below(pool))];
        const cd xi1 = prev[static_cast<std::size_t>(rng.below(pool))];
        next[static_cast<std::size_t>(i)] =
            std::exp(w * std::log(u)) * xi0 + w * std::exp(w * std::log1p(-u)) * xi1 + g_k(u, k, basis);
    }
}

} // namespace

std::vector<cd> sample_xi(int k, int depth, int pool_size, std::uint64_t seed,
                          const SpectralBasis& basis) {
    if (!(basis.lambdas[static_cast<std::size_t>(k)] > 0.5) || k == 0) {
        throw std::invalid_argument("sample_xi: requires lambda_k > 1/2 with k >= 1");
    }
    if (depth < 1) throw std::invalid_argument("sample_xi: depth must be >= 1");
    if (pool_size < 2) throw std::invalid_argument("sample_xi: pool_size must be >= 2");
    std::vector<cd> prev(static_cast<std::size_t>(pool_size), cd{0.0, 0.0});
    std::vector<cd> next(static_cast<std::size_t>(pool_size));
    for (int gen = 1; gen <= depth; ++gen) {
        advance_generation(prev, next, k, gen, seed, basis);
        prev.swap(next);
    }
    return prev;
}

std::vector<cd> iterate_xi_pool(const std::vector<cd>& pool, int k, std::uint64_t seed,
                                const SpectralBasis& basis) {
    std::vector<cd> next(pool.size());
    advance_generation(pool, next, k, 1, seed, basis);
    return next;
}

XiMomentEstimate estimate_xi_moments(int k, int depth, int replicas, int pool_each,
                                     std::uint64_t seed, const SpectralBasis& basis) {
    if (replicas < 2) throw std::invalid_argument("estimate_xi_moments: need >= 2 replicas");
    const double q = 2.0 / (2.0 * basis.lambdas[static_cast<std::size_t>(k)] + 1.0);
    const double correction = 1.0 / (1.0 - std::pow(q, depth));

    std::vector<cd> means(static_cast<std::size_t>(replicas));
    std::vector<double> seconds(static_cast<std::size_t>(replicas));
    for (int rep = 0; rep < replicas; ++rep) {
        const std::vector<cd> pool =
            sample_xi(k, depth, pool_each, derive_seed(seed, 0xF1A0 + static_cast<std::uint64_t>(rep)), basis);
        cd mean{0.0, 0.0};
        double a2 = 0.0;
        for (const cd& x : pool) {
            mean += x;
            a2 += std::norm(x);
        }
        means[static_cast<std::size_t>(rep)] = mean / static_cast<double>(pool.size());
        seconds[static_cast<std::size_t>(rep)] = correction * a2 / static_cast<double>(pool.size());
    }

    XiMomentEstimate est;
    est.replicas = replicas;
    est.depth_correction = correction;
    for (int rep = 0; rep < replicas; ++rep) {
        est.mean += means[static_cast<std::size_t>(rep)];
        est.second_abs += seconds[static_cast<std::size_t>(rep)];
    }
    est.mean /= static_cast<double>(replicas);
    est.second_abs /= static_cast<double>(replicas);
    double var_mean = 0.0, var_second = 0.0;
    for (int rep = 0; rep < replicas; ++rep) {
        var_mean += std::norm(means[static_cast<std::size_t>(rep)] - est.mean);
        var_second += (seconds[static_cast<std::size_t>(rep)] - est.second_abs) *
                      (seconds[static_cast<std::size_t>(rep)] - est.second_abs);
    }
    est.mean_se = std::sqrt(var_mean / (replicas - 1) / replicas);
    est.second_abs_se = std::sqrt(var_second / (replicas - 1) / replicas);
    return est;
}

} // namespace cyclurn
