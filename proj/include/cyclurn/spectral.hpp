#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "cyclurn/gamma.hpp"

namespace cyclurn {

enum class ProjectionClass { Large, Critical, Small };

// Eigen-structure of the cyclic replacement matrix for a fixed number of
// types m: unit roots omega^k, eigenvalue real/imaginary parts, the
// eigenvector basis v_k and its dual forms u_k. Immutable after
// construction; safe to share across threads.
struct SpectralBasis {
    int m = 0;
    std::vector<cd> omega_powers;      // omega^k, k = 0..m-1
    std::vector<double> lambdas;       // Re(omega^k) = cos(2 pi k / m)
    std::vector<double> mus;           // Im(omega^k) = sin(2 pi k / m)
    Eigen::MatrixXcd eigvecs;          // column k holds v_k, entry t = omega^{-kt}/m
    int r = 0;                         // floor((m-1)/6): count of large indices in 1..m/2
    bool critical_flag = false;        // true iff 6 | m
    std::vector<ProjectionClass> classes;

    // omega^k for any integer k (reduced mod m).
    cd omega(long long k) const {
        long long red = k % m;
        if (red < 0) red += m;
        return omega_powers[static_cast<std::size_t>(red)];
    }

    bool is_critical_index(int k) const {
        return critical_flag && (k == m / 6 || k == 5 * m / 6);
    }

    // Dual form u_k(w) = sum_t omega^{kt} w_t. Linear (no conjugation of
    // the argument), so that u_k(v_l) = delta_{kl} holds on the complex
    // eigenvectors; on real vectors this coincides with the conjugated
    // variant.
    cd dual_form(int k, const Eigen::VectorXd& w) const;
    cd dual_form(int k, const Eigen::VectorXcd& w) const;

    // All u_k(w) at once for an integer count vector, k = 0..m-1.
    std::vector<cd> projections(const std::vector<long long>& counts) const;
};

// Covariance-related deterministic targets: the limit covariance of the
// normalized composition residual (sigma_m), the residual-vector limit
// covariance (M_m, diagonal), and the rotation matrix D appearing in the
// recursive decomposition. D satisfies D M_m D^t = M_m and D D^t = Id.
struct CovarianceTarget {
    Eigen::MatrixXd sigma_m;
    Eigen::MatrixXd M_m;
    int rank_sigma = 0;
    Eigen::MatrixXd D;
};

SpectralBasis build_basis(int m);

// The m x m replacement matrix: row i has a single 1 in column (i+1) mod m.
Eigen::MatrixXi replacement_matrix(int m);

CovarianceTarget sigma_matrix(const SpectralBasis& basis);

// Diagonal of M_m as a full matrix. Blocks (1/2)/|2 lambda_k - 1| Id_2 per
// eigenspace pair, (1/2) Id_2 for the critical pair when 6 | m, and a final
// scalar 1/3 when m is even.
Eigen::MatrixXd limit_covariance(const SpectralBasis& basis);

Eigen::MatrixXd rotation_matrix_D(const SpectralBasis& basis);

// Diagonal entries of sigma_n: 1/sqrt(n) everywhere, with an extra
// 1/sqrt(log n) on the two coordinates of eigenspace m/6 when 6 | m.
// sigma_0 = sigma_1 = Id.
Eigen::VectorXd sigma_n_scaling(const SpectralBasis& basis, long long n);

// Number of (Re, Im) coordinate pairs in the residual vector: ceil(m/2)-1.
inline int num_pairs(int m) { return (m + 1) / 2 - 1; }
inline int residual_dim(int m) { return m - 1; }

// Zero-based coordinate offset of eigenspace k (1 <= k <= m/2) in the
// residual vector layout: pairs (Re, Im) for k = 1..ceil(m/2)-1, then a
// single scalar coordinate for k = m/2 when m is even.
inline int coord_offset(int /*m*/, int k) { return 2 * (k - 1); }

} // namespace cyclurn
