#include "cyclurn/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>

namespace cyclurn {

namespace {

constexpr double kPi = 3.14159265358979323846;

// omega^k with exact values at the twelfth-of-circle points, so that the
// critical eigenvalues land on 1/2 exactly and the m/2 root on -1 exactly.
cd unit_root(int k, int m) {
    const long long twelve = 12LL * k;
    if (twelve % m == 0) {
        static const double h = 0.5;
        static const double s3 = std::sqrt(3.0) / 2.0;
        static const double cos12[12] = {1.0, s3, h, 0.0, -h, -s3, -1.0, -s3, -h, 0.0, h, s3};
        static const double sin12[12] = {0.0, h, s3, 1.0, s3, h, 0.0, -h, -s3, -1.0, -s3, -h};
        const int idx = static_cast<int>(twelve / m);
        return {cos12[idx], sin12[idx]};
    }
    if ((8LL * k) % m == 0) {
        // odd multiples of pi/4 (even ones were handled above)
        const double d = std::sqrt(0.5);
        static const double cos8[8] = {1.0, 0.0, -1.0, 0.0, 1.0, 0.0, -1.0, 0.0};
        static const double sin8[8] = {0.0, 1.0, 0.0, -1.0, 0.0, 1.0, 0.0, -1.0};
        const int idx = static_cast<int>((8LL * k) / m);
        if (idx % 2 == 0) return {cos8[idx], sin8[idx]};
        const double c[8] = {1.0, d, 0.0, -d, -1.0, -d, 0.0, d};
        const double s[8] = {0.0, d, 1.0, d, 0.0, -d, -1.0, -d};
        return {c[idx], s[idx]};
    }
    const double angle = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(m);
    return {std::cos(angle), std::sin(angle)};
}

} // namespace

cd SpectralBasis::dual_form(int k, const Eigen::VectorXd& w) const {
    cd acc{0.0, 0.0};
    for (int t = 0; t < m; ++t) {
        acc += omega(static_cast<long long>(k) * t) * w[t];
    }
    return acc;
}

cd SpectralBasis::dual_form(int k, const Eigen::VectorXcd& w) const {
    cd acc{0.0, 0.0};
    for (int t = 0; t < m; ++t) {
        acc += omega(static_cast<long long>(k) * t) * w[t];
    }
    return acc;
}

std::vector<cd> SpectralBasis::projections(const std::vector<long long>& counts) const {
    std::vector<cd> u(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        cd acc{0.0, 0.0};
        for (int t = 0; t < m; ++t) {
            acc += omega(static_cast<long long>(k) * t) * static_cast<double>(counts[static_cast<std::size_t>(t)]);
        }
        u[static_cast<std::size_t>(k)] = acc;
    }
    return u;
}

SpectralBasis build_basis(int m) {
    if (m < 2) {
        throw std::invalid_argument("build_basis: m must be >= 2");
    }
    SpectralBasis b;
    b.m = m;
    b.r = (m - 1) / 6;
    b.critical_flag = (m % 6 == 0);
    b.omega_powers.resize(static_cast<std::size_t>(m));
    b.lambdas.resize(static_cast<std::size_t>(m));
    b.mus.resize(static_cast<std::size_t>(m));
    b.classes.resize(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        const cd w = unit_root(k, m);
        b.omega_powers[static_cast<std::size_t>(k)] = w;
        b.lambdas[static_cast<std::size_t>(k)] = w.real();
        b.mus[static_cast<std::size_t>(k)] = w.imag();
        if (b.is_critical_index(k)) {
            b.classes[static_cast<std::size_t>(k)] = ProjectionClass::Critical;
        } else if (w.real() > 0.5) {
            b.classes[static_cast<std::size_t>(k)] = ProjectionClass::Large;
        } else {
            b.classes[static_cast<std::size_t>(k)] = ProjectionClass::Small;
        }
    }
    b.eigvecs.resize(m, m);
    const double inv_m = 1.0 / static_cast<double>(m);
    for (int k = 0; k < m; ++k) {
        for (int t = 0; t < m; ++t) {
            // v_k[t] = omega^{-kt} / m
            b.eigvecs(t, k) = b.omega(-static_cast<long long>(k) * t) * inv_m;
        }
    }
    return b;
}

Eigen::MatrixXi replacement_matrix(int m) {
    if (m < 2) {
        throw std::invalid_argument("replacement_matrix: m must be >= 2");
    }
    Eigen::MatrixXi a = Eigen::MatrixXi::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        a(i, (i + 1) % m) = 1;
    }
    return a;
}

CovarianceTarget sigma_matrix(const SpectralBasis& basis) {
    const int m = basis.m;
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(m, m);
    if (basis.critical_flag) {
        for (int k : {m / 6, 5 * m / 6}) {
            const Eigen::VectorXcd v = basis.eigvecs.col(k);
            acc += v * v.adjoint();
        }
    } else {
        for (int k = 1; k < m; ++k) {
            const Eigen::VectorXcd v = basis.eigvecs.col(k);
            acc += v * v.adjoint() / std::abs(2.0 * basis.lambdas[static_cast<std::size_t>(k)] - 1.0);
        }
    }
    const double max_imag = acc.imag().cwiseAbs().maxCoeff();
    if (max_imag >= 1e-12) {
        throw std::runtime_error("sigma_matrix: imaginary residue above 1e-12");
    }
    CovarianceTarget target;
    target.sigma_m = acc.real();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(target.sigma_m);
    const Eigen::VectorXd sv = svd.singularValues();
    const double cut = 1e-8 * sv(0);
    target.rank_sigma = 0;
    for (int i = 0; i < sv.size(); ++i) {
        if (sv(i) > cut) ++target.rank_sigma;
    }
    target.M_m = limit_covariance(basis);
    target.D = rotation_matrix_D(basis);
    return target;
}

Eigen::MatrixXd limit_covariance(const SpectralBasis& basis) {
    const int m = basis.m;
    Eigen::VectorXd diag(residual_dim(m));
    for (int k = 1; k <= num_pairs(m); ++k) {
        const double entry = basis.is_critical_index(k)
                                 ? 0.5
                                 : 0.5 / std::abs(2.0 * basis.lambdas[static_cast<std::size_t>(k)] - 1.0);
        diag(coord_offset(m, k)) = entry;
        diag(coord_offset(m, k) + 1) = entry;
    }
    if (m % 2 == 0) {
        diag(m - 2) = 1.0 / 3.0;
    }
    return diag.asDiagonal();
}

Eigen::MatrixXd rotation_matrix_D(const SpectralBasis& basis) {
    const int m = basis.m;
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(residual_dim(m), residual_dim(m));
    for (int k = 1; k <= num_pairs(m); ++k) {
        const double c = basis.lambdas[static_cast<std::size_t>(k)];
        const double s = basis.mus[static_cast<std::size_t>(k)];
        const int off = coord_offset(m, k);
        d(off, off) = c;
        d(off, off + 1) = -s;
        d(off + 1, off) = s;
        d(off + 1, off + 1) = c;
    }
    if (m % 2 == 0) {
        d(m - 2, m - 2) = -1.0;
    }
    return d;
}

Eigen::VectorXd sigma_n_scaling(const SpectralBasis& basis, long long n) {
    if (n < 0) {
        throw std::invalid_argument("sigma_n_scaling: n must be >= 0");
    }
    const int m = basis.m;
    Eigen::VectorXd diag = Eigen::VectorXd::Ones(residual_dim(m));
    if (n < 2) {
        return diag;
    }
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    diag *= inv_sqrt_n;
    if (basis.critical_flag) {
        const double extra = 1.0 / std::sqrt(std::log(static_cast<double>(n)));
        const int off = coord_offset(m, m / 6);
        diag(off) *= extra;
        diag(off + 1) *= extra;
    }
    return diag;
}

} // namespace cyclurn
