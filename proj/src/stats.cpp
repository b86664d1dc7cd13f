#include "cyclurn/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cyclurn {

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

} // namespace

EnsembleSummary build_summary(const Eigen::MatrixXd& samples, int m, long long n,
                              std::uint64_t seed, int jackknife_blocks) {
    const auto reps = static_cast<int>(samples.rows());
    const auto dim = static_cast<int>(samples.cols());
    if (reps < 100) throw std::invalid_argument("build_summary: reps must be >= 100");

    EnsembleSummary s;
    s.m = m;
    s.n = n;
    s.reps = reps;
    s.seed = seed;
    s.mean = samples.colwise().mean();
    const Eigen::MatrixXd centered = samples.rowwise() - s.mean.transpose();
    s.cov = centered.transpose() * centered / static_cast<double>(reps - 1);

    // Delete-one-block jackknife for the covariance entries.
    const int blocks = std::min(jackknife_blocks, reps);
    Eigen::MatrixXd sum_sq = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::MatrixXd sum_est = Eigen::MatrixXd::Zero(dim, dim);
    std::vector<Eigen::MatrixXd> block_est;
    block_est.reserve(static_cast<std::size_t>(blocks));
    for (int b = 0; b < blocks; ++b) {
        const int lo = static_cast<int>(static_cast<long long>(b) * reps / blocks);
        const int hi = static_cast<int>(static_cast<long long>(b + 1) * reps / blocks);
        const int keep = reps - (hi - lo);
        Eigen::MatrixXd rest(keep, dim);
        rest.topRows(lo) = samples.topRows(lo);
        rest.bottomRows(reps - hi) = samples.bottomRows(reps - hi);
        const Eigen::VectorXd mu = rest.colwise().mean();
        const Eigen::MatrixXd c = rest.rowwise() - mu.transpose();
        block_est.push_back(c.transpose() * c / static_cast<double>(keep - 1));
        sum_est += block_est.back();
    }
    const Eigen::MatrixXd mean_est = sum_est / static_cast<double>(blocks);
    for (const auto& est : block_est) {
        sum_sq += (est - mean_est).cwiseProduct(est - mean_est);
    }
    s.se_cov = (sum_sq * static_cast<double>(blocks - 1) / static_cast<double>(blocks)).cwiseSqrt();

    s.skewness.resize(dim);
    s.excess_kurtosis.resize(dim);
    s.ks_stat.resize(dim);
    for (int j = 0; j < dim; ++j) {
        const Eigen::VectorXd col = centered.col(j);
        const double var = col.squaredNorm() / static_cast<double>(reps);
        const double sd = std::sqrt(var);
        const double m3 = col.array().cube().mean();
        const double m4 = col.array().pow(4).mean();
        s.skewness(j) = m3 / (var * sd);
        s.excess_kurtosis(j) = m4 / (var * var) - 3.0;

        std::vector<double> vals(static_cast<std::size_t>(reps));
        for (int i = 0; i < reps; ++i) vals[static_cast<std::size_t>(i)] = samples(i, j);
        s.ks_stat(j) = ks_statistic_fitted_normal(std::move(vals));
    }
    return s;
}

VerdictReport covariance_verdict(const EnsembleSummary& summary, const Eigen::MatrixXd& target,
                                 const Eigen::MatrixXd& bias_allowance) {
    if (summary.reps < 1000) {
        throw std::invalid_argument("covariance_verdict: reps must be >= 1000");
    }
    if (target.rows() != summary.cov.rows() || target.cols() != summary.cov.cols() ||
        bias_allowance.rows() != summary.cov.rows() || bias_allowance.cols() != summary.cov.cols()) {
        throw std::logic_error("covariance_verdict: dimension mismatch");
    }
    VerdictReport report;
    for (int i = 0; i < target.rows(); ++i) {
        for (int j = i; j < target.cols(); ++j) {
            report.add("cov[" + std::to_string(i) + "," + std::to_string(j) + "]",
                       summary.cov(i, j), target(i, j),
                       3.0 * summary.se_cov(i, j) + bias_allowance(i, j));
        }
    }
    return report;
}

VerdictReport normality_verdict(const EnsembleSummary& summary, double margin) {
    const double reps = summary.reps;
    const double skew_band = 3.0 * std::sqrt(6.0 / reps) * margin;
    const double kurt_band = 3.0 * std::sqrt(24.0 / reps) * margin;
    const double ks_band = ks_threshold_999(summary.reps);
    VerdictReport report;
    for (int j = 0; j < summary.skewness.size(); ++j) {
        const std::string c = std::to_string(j);
        report.add("skewness[" + c + "]", summary.skewness(j), 0.0, skew_band);
        report.add("ex_kurtosis[" + c + "]", summary.excess_kurtosis(j), 0.0, kurt_band);
        report.add("ks[" + c + "]", summary.ks_stat(j), 0.0, ks_band);
    }
    return report;
}

RateFit rate_fit(int k, const std::vector<double>& grid, const std::vector<double>& values) {
    if (grid.size() < 4) throw std::invalid_argument("rate_fit: need at least 4 grid points");
    if (grid.size() != values.size()) throw std::invalid_argument("rate_fit: size mismatch");
    const auto g = static_cast<int>(grid.size());
    RateFit fit;
    fit.k = k;
    fit.grid = grid;
    fit.values = values;

    double sx = 0.0, sy = 0.0;
    for (int i = 0; i < g; ++i) {
        if (values[static_cast<std::size_t>(i)] <= 0.0) {
            throw std::invalid_argument("rate_fit: values must be positive");
        }
        sx += std::log(grid[static_cast<std::size_t>(i)]);
        sy += std::log(values[static_cast<std::size_t>(i)]);
    }
    const double mx = sx / g;
    const double my = sy / g;
    double sxx = 0.0, sxy = 0.0;
    for (int i = 0; i < g; ++i) {
        const double dx = std::log(grid[static_cast<std::size_t>(i)]) - mx;
        const double dy = std::log(values[static_cast<std::size_t>(i)]) - my;
        sxx += dx * dx;
        sxy += dx * dy;
    }
    fit.slope = sxy / sxx;
    double rss = 0.0;
    for (int i = 0; i < g; ++i) {
        const double dx = std::log(grid[static_cast<std::size_t>(i)]) - mx;
        const double dy = std::log(values[static_cast<std::size_t>(i)]) - my;
        const double resid = dy - fit.slope * dx;
        rss += resid * resid;
    }
    fit.slope_se = (g > 2) ? std::sqrt(rss / (g - 2) / sxx) : 0.0;
    return fit;
}

bool rate_verdict(const RateFit& fit, double target_slope) {
    return std::abs(fit.slope - target_slope) <= std::max(2.0 * fit.slope_se, 0.05);
}

bool trend_verdict(const std::vector<double>& values) {
    if (values.size() < 3) throw std::invalid_argument("trend_verdict: need >= 3 grid points");
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (!(values[i] < values[i - 1])) return false;
    }
    return values.back() < values.front() / 2.0;
}

double ks_statistic_fitted_normal(std::vector<double> samples) {
    const auto n = static_cast<double>(samples.size());
    double mu = 0.0;
    for (double v : samples) mu += v;
    mu /= n;
    double var = 0.0;
    for (double v : samples) var += (v - mu) * (v - mu);
    var /= n;
    const double sd = std::sqrt(var);
    std::sort(samples.begin(), samples.end());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = normal_cdf((samples[i] - mu) / sd);
        const double lo = static_cast<double>(i) / n;
        const double hi = static_cast<double>(i + 1) / n;
        d = std::max({d, std::abs(f - lo), std::abs(f - hi)});
    }
    return d;
}

double ks_threshold_999(int n) {
    // K(c) = 0.999 at c = 1.9495 (dominant term of the Kolmogorov series).
    return 1.94947461216 / std::sqrt(static_cast<double>(n));
}

double chi2_quantile(double p, int df) {
    if (df < 1) throw std::invalid_argument("chi2_quantile: df must be >= 1");
    // Wilson-Hilferty; z for the handful of levels used here.
    double z;
    if (p >= 0.9989 && p <= 0.9991) {
        z = 3.090232306167813;
    } else if (p >= 0.989 && p <= 0.991) {
        z = 2.3263478740408408;
    } else if (p >= 0.949 && p <= 0.951) {
        z = 1.6448536269514722;
    } else {
        throw std::invalid_argument("chi2_quantile: unsupported level");
    }
    const double d = static_cast<double>(df);
    const double t = 1.0 - 2.0 / (9.0 * d) + z * std::sqrt(2.0 / (9.0 * d));
    return d * t * t * t;
}

std::pair<double, int> two_sample_chi2(const std::vector<long long>& counts_a,
                                       const std::vector<long long>& counts_b,
                                       long long min_cell) {
    if (counts_a.size() != counts_b.size()) {
        throw std::invalid_argument("two_sample_chi2: cell count mismatch");
    }
    long long na = 0, nb = 0;
    for (std::size_t i = 0; i < counts_a.size(); ++i) {
        na += counts_a[i];
        nb += counts_b[i];
    }
    const double ra = std::sqrt(static_cast<double>(nb) / static_cast<double>(na));
    const double rb = 1.0 / ra;
    double stat = 0.0;
    int cells = 0;
    long long pool_a = 0, pool_b = 0;
    for (std::size_t i = 0; i < counts_a.size(); ++i) {
        const long long tot = counts_a[i] + counts_b[i];
        if (tot == 0) continue;
        if (tot < min_cell) {
            pool_a += counts_a[i];
            pool_b += counts_b[i];
            continue;
        }
        const double d = ra * static_cast<double>(counts_a[i]) - rb * static_cast<double>(counts_b[i]);
        stat += d * d / static_cast<double>(tot);
        ++cells;
    }
    if (pool_a + pool_b > 0) {
        const double d = ra * static_cast<double>(pool_a) - rb * static_cast<double>(pool_b);
        stat += d * d / static_cast<double>(pool_a + pool_b);
        ++cells;
    }
    return {stat, std::max(1, cells - 1)};
}

} // namespace cyclurn
