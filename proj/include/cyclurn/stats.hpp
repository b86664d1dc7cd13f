#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cyclurn {

struct EnsembleSummary {
    int m = 0;
    long long n = 0;
    int reps = 0;
    std::uint64_t seed = 0;
    Eigen::VectorXd mean;
    Eigen::MatrixXd cov;
    Eigen::MatrixXd se_cov;          // entrywise jackknife SEs over replicate blocks
    Eigen::VectorXd skewness;        // standardized third moments per coordinate
    Eigen::VectorXd excess_kurtosis; // standardized fourth moments - 3
    Eigen::VectorXd ks_stat;         // KS distance to the fitted normal per coordinate
};

// samples: reps x dim matrix of residual vectors.
EnsembleSummary build_summary(const Eigen::MatrixXd& samples, int m, long long n,
                              std::uint64_t seed, int jackknife_blocks = 100);

struct VerdictEntry {
    std::string label;
    double observed = 0.0;
    double target = 0.0;
    double band = 0.0;
    bool pass = false;
};

struct VerdictReport {
    bool pass = true;
    std::vector<VerdictEntry> entries;

    void add(std::string label, double observed, double target, double band) {
        const bool ok = std::abs(observed - target) <= band;
        entries.push_back({std::move(label), observed, target, band, ok});
        pass = pass && ok;
    }
    std::vector<const VerdictEntry*> failures() const {
        std::vector<const VerdictEntry*> out;
        for (const auto& e : entries) {
            if (!e.pass) out.push_back(&e);
        }
        return out;
    }
};

// Per-entry test |emp_cov - target| <= 3*se + bias_allowance. The allowance
// carries the documented systematic deviation (finite-n drift and coupling
// proxy bias); the 3*se band carries the Monte Carlo noise.
VerdictReport covariance_verdict(const EnsembleSummary& summary, const Eigen::MatrixXd& target,
                                 const Eigen::MatrixXd& bias_allowance);

// Skewness/kurtosis within 3 * sqrt(6/reps resp. 24/reps) * margin (margin 2
// absorbs finite-n drift) and per-coordinate KS below the 0.999 quantile.
VerdictReport normality_verdict(const EnsembleSummary& summary, double margin = 2.0);

struct RateFit {
    int k = 0;
    std::vector<double> grid;   // times
    std::vector<double> values; // coupled second moments
    double slope = 0.0;
    double slope_se = 0.0;
};

// Least-squares slope of log(values) against log(grid).
RateFit rate_fit(int k, const std::vector<double>& grid, const std::vector<double>& values);

// |slope - target| <= max(2 * slope_se, 0.05)
bool rate_verdict(const RateFit& fit, double target_slope);

// Strictly decreasing across the grid and final value below half the first.
bool trend_verdict(const std::vector<double>& values);

// Kolmogorov-Smirnov distance of the sample to the normal fitted by moments.
double ks_statistic_fitted_normal(std::vector<double> samples);

// 0.999 quantile of the limiting KS distribution, scaled by 1/sqrt(n).
double ks_threshold_999(int n);

// Wilson-Hilferty approximation of the chi-square quantile.
double chi2_quantile(double p, int df);

// Two-sample chi-square homogeneity statistic over shared support cells;
// cells with combined count below min_cell are pooled into the last cell.
// Returns (statistic, degrees of freedom).
std::pair<double, int> two_sample_chi2(const std::vector<long long>& counts_a,
                                       const std::vector<long long>& counts_b,
                                       long long min_cell = 10);

} // namespace cyclurn
