#include "cyclurn/residual.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "cyclurn/fixpoint.hpp"

namespace cyclurn {

cd martingale_value(const Snapshot& snap, int k, const SpectralBasis& basis, int initial_type) {
    const int m = basis.m;
    const long long n = snap.time;
    if (n == 0) return {0.0, 0.0};
    const int kk = ((k % m) + m) % m;
    if (kk == 0) return {0.0, 0.0};
    const cd u = snap.u[static_cast<std::size_t>(kk)];
    const cd shift = basis.omega(static_cast<long long>(kk) * initial_type);
    if (2 * kk == m) {
        // Gamma(n+1)/Gamma(n) = n and E[u_{m/2}] = 0 for n >= 1.
        return static_cast<double>(n) * u;
    }
    const cd p = snap.gamma_prod[static_cast<std::size_t>(kk)];
    return (u - shift * p) / (p * gamma_fn(1.0 + basis.omega(kk)));
}

MartingalePath martingale_path(const TrajectoryRecord& traj, int k, const SpectralBasis& basis) {
    MartingalePath path;
    path.k = k;
    for (const Snapshot& s : traj.snapshots) {
        path.times.push_back(s.time);
        path.values.push_back(martingale_value(s, k, basis, traj.config.initial_type));
    }
    if (traj.snapshots.empty() || traj.snapshots.back().time != traj.final_state.time) {
        path.times.push_back(traj.final_state.time);
        path.values.push_back(martingale_value(traj.final_state, k, basis, traj.config.initial_type));
    }
    return path;
}

XiProxy xi_proxy(const TrajectoryRecord& traj, int k, const SpectralBasis& basis) {
    if (!(basis.lambdas[static_cast<std::size_t>(k)] > 0.5) || k == 0) {
        throw std::invalid_argument("xi_proxy: requires lambda_k > 1/2 with k >= 1");
    }
    XiProxy proxy;
    proxy.k = k;
    proxy.horizon = traj.final_state.time;
    proxy.value = martingale_value(traj.final_state, k, basis, traj.config.initial_type);
    return proxy;
}

ResidualVector assemble_Z(const Snapshot& snap, int initial_type, const std::vector<cd>& proxies,
                          const SpectralBasis& basis) {
    const int m = basis.m;
    const long long n = snap.time;
    if (n < 1) throw std::invalid_argument("assemble_Z: n must be >= 1");
    if (static_cast<int>(proxies.size()) != basis.r) {
        throw std::logic_error("assemble_Z: need one proxy per large index k = 1..r");
    }
    ResidualVector z;
    z.n = n;
    z.coords.resize(residual_dim(m));
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    const double crit_scale =
        (n >= 2) ? 1.0 / std::sqrt(static_cast<double>(n) * std::log(static_cast<double>(n)))
                 : inv_sqrt_n;
    for (int k = 1; k <= num_pairs(m); ++k) {
        const cd shift = basis.omega(static_cast<long long>(k) * initial_type);
        cd y = snap.u[static_cast<std::size_t>(k)] - shift * snap.gamma_prod[static_cast<std::size_t>(k)];
        double scale = inv_sqrt_n;
        if (k <= basis.r) {
            y -= cpow(static_cast<double>(n), basis.omega(k)) * proxies[static_cast<std::size_t>(k - 1)];
        } else if (basis.is_critical_index(k)) {
            scale = crit_scale;
        }
        z.coords(coord_offset(m, k)) = y.real() * scale;
        z.coords(coord_offset(m, k) + 1) = y.imag() * scale;
    }
    if (m % 2 == 0) {
        z.coords(m - 2) = snap.u[static_cast<std::size_t>(m / 2)].real() * inv_sqrt_n;
    }
    return z;
}

NormalizerState normalizer(const Eigen::MatrixXd& cov_Zn, const Eigen::MatrixXd& M_m,
                           double cond_limit) {
    if (cov_Zn.rows() != cov_Zn.cols() || ((cov_Zn - cov_Zn.transpose()).cwiseAbs().maxCoeff() >
                                           1e-10 * (1.0 + cov_Zn.cwiseAbs().maxCoeff()))) {
        throw std::logic_error("normalizer: covariance must be symmetric");
    }
    const auto dim = cov_Zn.rows();
    NormalizerState state;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_cov(0.5 * (cov_Zn + cov_Zn.transpose()));
    Eigen::VectorXd ev = es_cov.eigenvalues().cwiseMax(0.0);
    const double ev_max = ev.maxCoeff();
    const double ev_min = ev.minCoeff();
    if (ev_min <= 0.0 || ev_max / ev_min >= cond_limit) {
        state.Sigma_n = Eigen::MatrixXd::Identity(dim, dim);
        state.below_n0 = true;
        return state;
    }
    const Eigen::MatrixXd cov_inv_sqrt =
        es_cov.eigenvectors() * ev.cwiseSqrt().cwiseInverse().asDiagonal() * es_cov.eigenvectors().transpose();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_m(0.5 * (M_m + M_m.transpose()));
    const Eigen::MatrixXd m_sqrt =
        es_m.eigenvectors() * es_m.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
        es_m.eigenvectors().transpose();

    state.Sigma_n = m_sqrt * cov_inv_sqrt;
    state.below_n0 = false;
    return state;
}

cd G_kn(int k, long long n, long long l, const SpectralBasis& basis) {
    const int m = basis.m;
    return mean_u(m, l, k) + basis.omega(k) * mean_u(m, n - 1 - l, k) - mean_u(m, n, k);
}

Eigen::VectorXd error_term_bn(long long I_n, double U, const std::vector<cd>& proxies0,
                              const std::vector<cd>& proxies1, long long n,
                              const SpectralBasis& basis) {
    const int m = basis.m;
    if (n < 1 || I_n < 0 || I_n > n - 1) {
        throw std::invalid_argument("error_term_bn: need 0 <= I_n <= n-1");
    }
    if (!(U > 0.0 && U < 1.0)) {
        throw std::invalid_argument("error_term_bn: need U in (0,1)");
    }
    if (static_cast<int>(proxies0.size()) != basis.r || static_cast<int>(proxies1.size()) != basis.r) {
        throw std::logic_error("error_term_bn: need one proxy per large index for both subtrees");
    }
    const long long J_n = n - 1 - I_n;
    const double nn = static_cast<double>(n);

    Eigen::VectorXd f = Eigen::VectorXd::Zero(residual_dim(m));
    for (int k = 1; k <= num_pairs(m); ++k) {
        cd entry = G_kn(k, n, I_n, basis);
        if (k <= basis.r) {
            const cd w = basis.omega(k);
            entry -= cpow(nn, w) * g_k(U, k, basis);
            const cd f2 = (cpow(static_cast<double>(I_n), w) - cpow(nn * U, w)) *
                              proxies0[static_cast<std::size_t>(k - 1)] +
                          (cpow(static_cast<double>(J_n), w) - cpow(nn * (1.0 - U), w)) * w *
                              proxies1[static_cast<std::size_t>(k - 1)];
            entry += f2;
        }
        f(coord_offset(m, k)) = entry.real();
        f(coord_offset(m, k) + 1) = entry.imag();
    }
    return sigma_n_scaling(basis, n).cwiseProduct(f);
}

namespace {

// E[D_k D_l](t) with D_k = u_k(R_t) - E[u_k(R_t)].
cd centered_bilinear(int m, long long t, int k, int l) {
    return second_moment_u(m, t, k, l) - mean_u(m, t, k) * mean_u(m, t, l);
}

} // namespace

Eigen::MatrixXd predicted_cov_Z(const SpectralBasis& basis, long long n, long long horizon) {
    const int m = basis.m;
    if (n < 2) throw std::invalid_argument("predicted_cov_Z: n must be >= 2");
    if (horizon < n) throw std::invalid_argument("predicted_cov_Z: horizon must be >= n");

    // Complex variable index set: pairs 1..K plus the scalar m/2 for even m.
    std::vector<int> ks;
    for (int k = 1; k <= num_pairs(m); ++k) ks.push_back(k);
    if (m % 2 == 0) ks.push_back(m / 2);

    const double nn = static_cast<double>(n);
    std::vector<cd> h(static_cast<std::size_t>(m / 2) + 1, cd{0.0, 0.0});
    std::vector<cd> c_n(static_cast<std::size_t>(m / 2) + 1, cd{0.0, 0.0});
    std::vector<cd> c_h(static_cast<std::size_t>(m / 2) + 1, cd{0.0, 0.0});
    for (int k = 1; k <= basis.r; ++k) {
        h[static_cast<std::size_t>(k)] = cpow(nn, basis.omega(k));
        c_n[static_cast<std::size_t>(k)] = martingale_normalizer(basis, n, k);
        c_h[static_cast<std::size_t>(k)] = martingale_normalizer(basis, horizon, k);
    }

    std::vector<double> scale(static_cast<std::size_t>(m / 2) + 1, 1.0 / std::sqrt(nn));
    if (basis.critical_flag) {
        scale[static_cast<std::size_t>(m / 6)] = 1.0 / std::sqrt(nn * std::log(nn));
    }

    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(residual_dim(m), residual_dim(m));
    for (std::size_t ia = 0; ia < ks.size(); ++ia) {
        for (std::size_t ib = ia; ib < ks.size(); ++ib) {
            const int a = ks[ia];
            const int b = ks[ib];
            const cd ha = h[static_cast<std::size_t>(a)];
            const cd hb = h[static_cast<std::size_t>(b)];

            // bilinear E[Y_a Y_b] and sesquilinear E[Y_a conj(Y_b)]
            const cd s_n = centered_bilinear(m, n, a, b);
            const cd c_nn = centered_bilinear(m, n, a, (m - b) % m);
            cd e_bil = s_n;
            cd e_ses = c_nn;
            if (hb != cd{0.0, 0.0}) {
                e_bil -= hb * c_n[static_cast<std::size_t>(b)] * s_n;
                e_ses -= std::conj(hb * c_n[static_cast<std::size_t>(b)]) * c_nn;
            }
            if (ha != cd{0.0, 0.0}) {
                e_bil -= ha * c_n[static_cast<std::size_t>(a)] * s_n;
                e_ses -= ha * c_n[static_cast<std::size_t>(a)] * c_nn;
            }
            if (ha != cd{0.0, 0.0} && hb != cd{0.0, 0.0}) {
                const cd s_h = centered_bilinear(m, horizon, a, b);
                const cd c_hh = centered_bilinear(m, horizon, a, (m - b) % m);
                e_bil += ha * hb * c_h[static_cast<std::size_t>(a)] * c_h[static_cast<std::size_t>(b)] * s_h;
                e_ses += ha * std::conj(hb) * c_h[static_cast<std::size_t>(a)] *
                         std::conj(c_h[static_cast<std::size_t>(b)]) * c_hh;
            }

            const double ss = scale[static_cast<std::size_t>(a)] * scale[static_cast<std::size_t>(b)];
            const double re_re = 0.5 * (e_ses + e_bil).real() * ss;
            const double im_im = 0.5 * (e_ses - e_bil).real() * ss;
            const double re_im = 0.5 * (e_bil.imag() - e_ses.imag()) * ss;
            const double im_re = 0.5 * (e_bil.imag() + e_ses.imag()) * ss;

            const bool a_scalar = (2 * a == m);
            const bool b_scalar = (2 * b == m);
            const int oa = a_scalar ? (m - 2) : coord_offset(m, a);
            const int ob = b_scalar ? (m - 2) : coord_offset(m, b);
            if (!a_scalar && !b_scalar) {
                cov(oa, ob) = re_re;
                cov(oa, ob + 1) = re_im;
                cov(oa + 1, ob) = im_re;
                cov(oa + 1, ob + 1) = im_im;
                if (ia != ib) {
                    cov(ob, oa) = re_re;
                    cov(ob, oa + 1) = im_re;
                    cov(ob + 1, oa) = re_im;
                    cov(ob + 1, oa + 1) = im_im;
                }
            } else if (!a_scalar && b_scalar) {
                cov(oa, ob) = re_re;
                cov(oa + 1, ob) = im_re;
                cov(ob, oa) = re_re;
                cov(ob, oa + 1) = im_re;
            } else {
                cov(oa, ob) = re_re;
            }
        }
    }
    return cov;
}

double martingale_abs_second_moment(const SpectralBasis& basis, int k, long long n) {
    const int m = basis.m;
    const cd c = martingale_normalizer(basis, n, k);
    const cd centered = centered_bilinear(m, n, k, (m - k) % m);
    return std::norm(c) * centered.real();
}

double xi_abs_second_moment(const SpectralBasis& basis, int k, long long reference_n) {
    const double at_ref = martingale_abs_second_moment(basis, k, reference_n);
    const ResidualMoment tail = residual_second_moment(basis.m, k, reference_n);
    return at_ref + tail.abs_sq;
}

} // namespace cyclurn
