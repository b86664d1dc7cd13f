#include "cyclurn/ensemble.hpp"

#include <cmath>
#include <stdexcept>

namespace cyclurn {

ResidualEnsemble run_residual_ensemble(const SpectralBasis& basis, long long n, int reps,
                                       std::uint64_t seed, double horizon_mult,
                                       ExecutionPolicy policy) {
    if (reps < 1) throw std::invalid_argument("run_residual_ensemble: reps must be >= 1");
    if (horizon_mult < 1.0) {
        throw std::invalid_argument("run_residual_ensemble: horizon multiplier must be >= 1");
    }
    const int m = basis.m;
    ResidualEnsemble out;
    out.m = m;
    out.n = n;
    out.reps = reps;
    out.seed = seed;
    out.horizon = (basis.r > 0)
                      ? static_cast<long long>(std::ceil(horizon_mult * static_cast<double>(n)))
                      : n;
    out.Z.resize(reps, residual_dim(m));
    out.proxies.resize(reps, basis.r);

    UrnConfig base;
    base.m = m;
    base.steps = out.horizon;
    base.checkpoints = {n};

    for_each_replicate(reps, policy, [&](int rep) {
        UrnConfig cfg = base;
        cfg.seed = derive_seed(seed, static_cast<std::uint64_t>(rep));
        const TrajectoryRecord traj = simulate(cfg);
        std::vector<cd> prox(static_cast<std::size_t>(basis.r));
        for (int k = 1; k <= basis.r; ++k) {
            prox[static_cast<std::size_t>(k - 1)] = xi_proxy(traj, k, basis).value;
            out.proxies(rep, k - 1) = prox[static_cast<std::size_t>(k - 1)];
        }
        const ResidualVector z = assemble_Z(traj.snapshots.front(), 0, prox, basis);
        out.Z.row(rep) = z.coords.transpose();
    });
    return out;
}

CouplingEnsemble run_coupling_ensemble(const SpectralBasis& basis, int k,
                                       const std::vector<long long>& grid, long long horizon,
                                       int reps, std::uint64_t seed, ExecutionPolicy policy) {
    if (grid.empty()) throw std::invalid_argument("run_coupling_ensemble: empty grid");
    if (horizon < grid.back()) {
        throw std::invalid_argument("run_coupling_ensemble: horizon must cover the grid");
    }
    const int m = basis.m;
    CouplingEnsemble out;
    out.m = m;
    out.k = k;
    out.grid = grid;
    out.horizon = horizon;
    out.reps = reps;
    out.seed = seed;
    out.M.resize(reps, static_cast<Eigen::Index>(grid.size()));
    out.M_horizon.resize(reps);

    UrnConfig base;
    base.m = m;
    base.steps = horizon;
    base.checkpoints = grid;

    for_each_replicate(reps, policy, [&](int rep) {
        UrnConfig cfg = base;
        cfg.seed = derive_seed(seed, static_cast<std::uint64_t>(rep));
        const TrajectoryRecord traj = simulate(cfg);
        for (std::size_t g = 0; g < grid.size(); ++g) {
            out.M(rep, static_cast<Eigen::Index>(g)) =
                martingale_value(traj.snapshots[g], k, basis, 0);
        }
        out.M_horizon(rep) = martingale_value(traj.final_state, k, basis, 0);
    });
    return out;
}

} // namespace cyclurn
