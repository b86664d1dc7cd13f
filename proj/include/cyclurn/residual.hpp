#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "cyclurn/moments.hpp"
#include "cyclurn/spectral.hpp"
#include "cyclurn/urn.hpp"

namespace cyclurn {

// M_{k,n}: the Gamma-ratio-normalized centered eigencoordinate, read off a
// snapshot. Zero at n = 0 by convention.
cd martingale_value(const Snapshot& snap, int k, const SpectralBasis& basis, int initial_type);

struct MartingalePath {
    int k = 0;
    std::vector<long long> times;
    std::vector<cd> values;
};

// Values of M_{k,.} at all checkpoint times of the trajectory plus its
// final time.
MartingalePath martingale_path(const TrajectoryRecord& traj, int k, const SpectralBasis& basis);

struct XiProxy {
    int k = 0;
    cd value{0.0, 0.0};
    long long horizon = 0;
};

// Coupled stand-in for the martingale limit: M_{k,N} at the trajectory's
// final time N. The coupling bias E|M_{k,N} - Xi_k|^2 is quantified by
// residual_second_moment at N. Requires lambda_k > 1/2.
XiProxy xi_proxy(const TrajectoryRecord& traj, int k, const SpectralBasis& basis);

struct ResidualVector {
    long long n = 0;
    Eigen::VectorXd coords; // dimension m-1
};

// Assemble Z_n from a snapshot at time n. `proxies` must hold one value per
// large index k = 1..r (in that order). Large coordinates subtract
// n^{omega^k} times the proxy; critical coordinates (6 | m) carry the extra
// 1/sqrt(log n); the scalar coordinate (even m) is u_{m/2}/sqrt(n).
ResidualVector assemble_Z(const Snapshot& snap, int initial_type, const std::vector<cd>& proxies,
                          const SpectralBasis& basis);

struct NormalizerState {
    Eigen::MatrixXd Sigma_n;
    bool below_n0 = false; // covariance not usable yet: Sigma_n = Id
};

// Sigma_n = M_m^{1/2} Cov(Z_n)^{-1/2}; falls back to the identity (with the
// below_n0 flag) when the covariance is ill-conditioned.
NormalizerState normalizer(const Eigen::MatrixXd& cov_Zn, const Eigen::MatrixXd& M_m,
                           double cond_limit = 1e8);

// sigma_n (F_n^(1) + F_n^(2)): the error term of the recursive residual
// decomposition, for a realized split (I_n, U) and independent limit
// proxies for the two subtrees (one per large index k = 1..r).
Eigen::VectorXd error_term_bn(long long I_n, double U, const std::vector<cd>& proxies0,
                              const std::vector<cd>& proxies1, long long n,
                              const SpectralBasis& basis);

// G_{k,n}(l): the deterministic mean-recombination defect appearing in
// F_n^(1).
cd G_kn(int k, long long n, long long l, const SpectralBasis& basis);

// Semi-analytic covariance of Z_n when each large coordinate uses the
// coupled proxy M_{k,N}. Exact up to Gamma-function evaluation; the
// difference to M_m is the documented finite-n + proxy bias used by the
// covariance verdicts.
Eigen::MatrixXd predicted_cov_Z(const SpectralBasis& basis, long long n, long long horizon);

// Limit E|Xi_k|^2 computed from the moment formulas at a large reference
// time plus the coupling-residual tail.
double xi_abs_second_moment(const SpectralBasis& basis, int k, long long reference_n = 1'000'000);

// E|M_{k,n}|^2 from the moment formulas.
double martingale_abs_second_moment(const SpectralBasis& basis, int k, long long n);

} // namespace cyclurn
