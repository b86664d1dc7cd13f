#include "cyclurn/moments.hpp"

#include <cmath>
#include <stdexcept>

namespace cyclurn {

namespace {

// Below this the mean product is evaluated by the literal telescoping
// product; above it the log-gamma route is used.
constexpr long long kProductCutoff = 4096;

int mod_m(long long k, int m) {
    long long red = k % m;
    if (red < 0) red += m;
    return static_cast<int>(red);
}

} // namespace

cd mean_u(int m, long long n, int k) {
    if (m < 2) throw std::invalid_argument("mean_u: m must be >= 2");
    if (n < 0) throw std::invalid_argument("mean_u: n must be >= 0");
    const int kk = mod_m(k, m);
    if (kk == 0) return {static_cast<double>(n + 1), 0.0};
    if (2 * kk == m) {
        // omega^k = -1: the product carries the factor (1-1)/1 = 0.
        return (n == 0) ? cd{1.0, 0.0} : cd{0.0, 0.0};
    }
    const SpectralBasis basis = build_basis(m);
    const cd w = basis.omega(kk);
    if (n <= kProductCutoff) {
        cd p{1.0, 0.0};
        for (long long s = 1; s <= n; ++s) {
            p *= (static_cast<double>(s) + w) / static_cast<double>(s);
        }
        return p;
    }
    const double nn = static_cast<double>(n);
    return std::exp(log_gamma(cd{nn + 1.0, 0.0} + w) - log_gamma(cd{nn + 1.0, 0.0}) -
                    log_gamma(cd{1.0, 0.0} + w));
}

cd second_moment_u(int m, long long n, int k, int l) {
    if (m < 2) throw std::invalid_argument("second_moment_u: m must be >= 2");
    if (n < 0) throw std::invalid_argument("second_moment_u: n must be >= 0");
    const SpectralBasis basis = build_basis(m);
    const cd wk = basis.omega(k);
    const cd wl = basis.omega(l);
    const cd wsum = wk + wl;
    const cd wprod = basis.omega(static_cast<long long>(k) + l);

    cd second{1.0, 0.0};      // E[u_k u_l] at time t
    cd mean_kl{1.0, 0.0};     // E[u_{k+l}] at time t
    for (long long t = 1; t <= n; ++t) {
        const double inv = 1.0 / static_cast<double>(t);
        second = (1.0 + wsum * inv) * second + wprod * inv * mean_kl;
        mean_kl *= (static_cast<double>(t) + wprod) * inv;
    }
    return second;
}

std::vector<cd> second_moment_sweep(int m, long long n_max, int k, int l) {
    const SpectralBasis basis = build_basis(m);
    const cd wsum = basis.omega(k) + basis.omega(l);
    const cd wprod = basis.omega(static_cast<long long>(k) + l);
    std::vector<cd> out(static_cast<std::size_t>(n_max) + 1);
    cd second{1.0, 0.0};
    cd mean_kl{1.0, 0.0};
    out[0] = second;
    for (long long t = 1; t <= n_max; ++t) {
        const double inv = 1.0 / static_cast<double>(t);
        second = (1.0 + wsum * inv) * second + wprod * inv * mean_kl;
        mean_kl *= (static_cast<double>(t) + wprod) * inv;
        out[static_cast<std::size_t>(t)] = second;
    }
    return out;
}

cd second_moment_u_product(int m, long long n, int k, int l) {
    const SpectralBasis basis = build_basis(m);
    const cd wk = basis.omega(k);
    const cd wl = basis.omega(l);
    const cd wsum = wk + wl;
    const cd wprod = basis.omega(static_cast<long long>(k) + l);

    // suffix[s] = prod_{t=s+1..n} (t + wsum)/t
    std::vector<cd> suffix(static_cast<std::size_t>(n) + 1);
    suffix[static_cast<std::size_t>(n)] = {1.0, 0.0};
    for (long long s = n - 1; s >= 0; --s) {
        const double t = static_cast<double>(s + 1);
        suffix[static_cast<std::size_t>(s)] = suffix[static_cast<std::size_t>(s + 1)] * ((t + wsum) / t);
    }
    cd total = suffix[0];
    cd prefix{1.0, 0.0}; // prod_{t=1..s-1} (t + wprod)/t
    for (long long s = 1; s <= n; ++s) {
        total += wprod / static_cast<double>(s) * prefix * suffix[static_cast<std::size_t>(s)];
        prefix *= (static_cast<double>(s) + wprod) / static_cast<double>(s);
    }
    return total;
}

double closed_forms(int m, long long n, ClosedFormCase which) {
    switch (which) {
        case ClosedFormCase::U0:
            return static_cast<double>(n + 1) * static_cast<double>(n + 1);
        case ClosedFormCase::Half:
            if (m % 2 != 0) throw std::invalid_argument("closed_forms: half case needs 2 | m");
            return static_cast<double>(n + 1) / 3.0;
        case ClosedFormCase::Third:
            if (m % 3 != 0) throw std::invalid_argument("closed_forms: third case needs 3 | m");
            return static_cast<double>(n + 1) / 2.0;
        case ClosedFormCase::Sixth:
            if (m % 6 != 0) throw std::invalid_argument("closed_forms: sixth case needs 6 | m");
            return static_cast<double>(n + 1) * harmonic(n + 1);
    }
    throw std::invalid_argument("closed_forms: unknown case");
}

MixedRealMoments mixed_real_moments(int m, long long n, int k, int l) {
    const cd skl = second_moment_u(m, n, k, l);
    const cd sk_ml = second_moment_u(m, n, k, mod_m(static_cast<long long>(m) - l, m));
    const cd smk_l = second_moment_u(m, n, mod_m(static_cast<long long>(m) - k, m), l);
    MixedRealMoments out;
    out.re_re = 0.5 * (skl + sk_ml).real();
    out.im_im = 0.5 * (sk_ml - skl).real();
    out.re_im = 0.5 * (skl + smk_l).imag();
    return out;
}

MeanExpansion mean_expansion(const SpectralBasis& basis, long long n) {
    const int m = basis.m;
    MeanExpansion out;
    out.remainder_tag = basis.critical_flag ? "O(sqrt(n))" : "o(sqrt(n))";
    out.value = Eigen::VectorXd::Constant(m, static_cast<double>(n + 1) / m);
    for (int k = 1; k <= basis.r; ++k) {
        const cd w = basis.omega(k);
        const cd xi_scale = 2.0 / gamma_fn(1.0 + w);
        const cd npow = (n == 0) ? cd{0.0, 0.0} : cpow(static_cast<double>(n), w);
        const Eigen::VectorXcd xi_k = xi_scale * basis.eigvecs.col(k);
        out.xi.push_back(xi_k);
        out.terms.push_back((npow * xi_k.array()).real());
        out.value += out.terms.back();
    }
    return out;
}

Eigen::VectorXd exact_mean_vector(const SpectralBasis& basis, long long n) {
    const int m = basis.m;
    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(m);
    for (int k = 0; k < m; ++k) {
        acc += mean_u(m, n, k) * basis.eigvecs.col(k);
    }
    return acc.real();
}

ResidualMoment residual_second_moment(int m, int k, long long n, double tol) {
    const SpectralBasis basis = build_basis(m);
    const int kk = mod_m(k, m);
    const double lambda = basis.lambdas[static_cast<std::size_t>(kk)];
    if (!(lambda > 0.5) || kk == 0) {
        throw std::invalid_argument("residual_second_moment: requires 1/2 < lambda_k < 1");
    }
    if (n < 1) throw std::invalid_argument("residual_second_moment: n must be >= 1");

    const cd w = basis.omega(kk);
    const cd w2 = basis.omega(2LL * kk);
    const double two_lambda = 2.0 * lambda;
    const double gamma_2l = std::tgamma(two_lambda);

    const double nn = static_cast<double>(n);
    // g(z) = Gamma(z+2)/Gamma(z+2+omega^k), started at z = n
    cd g = std::exp(log_gamma(cd{nn + 2.0, 0.0}) - log_gamma(cd{nn + 2.0, 0.0} + w));
    // rho(z) = Gamma(z+1+2 lambda)/Gamma(z+1)
    double rho = std::exp(std::lgamma(nn + 1.0 + two_lambda) - std::lgamma(nn + 1.0));
    // q(z) = E[u_{2k}(R_z)], e2(z) = E[u_k(R_z)^2]
    cd q = mean_u(m, n, 2 * kk);
    cd e2 = second_moment_u(m, n, kk, kk);

    double acc_abs = 0.0;
    cd acc_bil{0.0, 0.0};
    double last_abs = 0.0;
    cd last_bil{0.0, 0.0};
    long long z = n;
    const long long z_cap = n + 50'000'000LL;
    while (true) {
        const double zp1 = static_cast<double>(z + 1);
        const double second_abs = (rho / gamma_2l - zp1) / (two_lambda - 1.0);
        const double g2 = std::norm(g);
        last_abs = g2 * (1.0 - second_abs / (zp1 * zp1));
        const cd gg = g * g;
        last_bil = gg * (w2 / zp1 * q - w2 / (zp1 * zp1) * e2);
        acc_abs += last_abs;
        acc_bil += last_bil;
        if (last_abs < tol * acc_abs || z >= z_cap) break;

        // advance all running quantities from z to z+1
        g *= (zp1 + 1.0) / (zp1 + 1.0 + w);
        rho *= (zp1 + two_lambda) / zp1;
        const double inv = 1.0 / zp1;
        e2 = (1.0 + 2.0 * w * inv) * e2 + w2 * inv * q;
        q *= (zp1 + w2) * inv;
        ++z;
    }

    ResidualMoment out;
    const double zz = static_cast<double>(z);
    out.abs_sq = acc_abs + last_abs * zz / (two_lambda - 1.0);
    out.bilinear = acc_bil + last_bil * zz;
    out.abs_sq_asym = std::pow(nn, 1.0 - two_lambda) / (two_lambda - 1.0);
    const cd w_neg = basis.omega(-static_cast<long long>(kk));
    out.bilinear_asym = (1.0 / nn) / ((1.0 - 2.0 * w_neg) * gamma_fn(2.0 * w));
    out.truncated_at = z;
    return out;
}

cd martingale_normalizer(const SpectralBasis& basis, long long n, int k) {
    const int m = basis.m;
    const int kk = mod_m(k, m);
    if (n == 0) return {1.0, 0.0};
    if (kk == 0) return {1.0 / static_cast<double>(n + 1), 0.0};
    if (2 * kk == m) return {static_cast<double>(n), 0.0}; // Gamma(n+1)/Gamma(n)
    const cd w = basis.omega(kk);
    const cd p = mean_u(m, n, kk); // Gamma(n+1+w)/(Gamma(n+1) Gamma(1+w))
    return 1.0 / (p * gamma_fn(1.0 + w));
}

double harmonic(long long n) {
    double h = 0.0;
    for (long long t = n; t >= 1; --t) h += 1.0 / static_cast<double>(t);
    return h;
}

MomentTable build_moment_table(int m, long long n) {
    MomentTable table;
    table.m = m;
    table.n = n;
    table.mean.resize(static_cast<std::size_t>(m));
    table.second.resize(m, m);
    for (int k = 0; k < m; ++k) {
        table.mean[static_cast<std::size_t>(k)] = mean_u(m, n, k);
        for (int l = 0; l < m; ++l) {
            table.second(k, l) = second_moment_u(m, n, k, l);
        }
    }
    return table;
}

} // namespace cyclurn
