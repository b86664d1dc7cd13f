#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cyclurn/spectral.hpp"

namespace cyclurn {

// E[u_k(R_n)] for the urn started from one ball of type 0. Equals the
// running product prod_{s=1..n} (s + omega^k)/s, which vanishes for
// k = m/2 and n >= 1 and telescopes to n+1 for k = 0.
cd mean_u(int m, long long n, int k);

// E[u_k(R_n) u_l(R_n)] via the one-step conditional recursion, O(n).
cd second_moment_u(int m, long long n, int k, int l);

// Same quantity via the explicit double-product form; independent route
// used for cross-checking, O(n) time and memory.
cd second_moment_u_product(int m, long long n, int k, int l);

// E[u_k u_l] at every time 0..n_max in one forward sweep.
std::vector<cd> second_moment_sweep(int m, long long n_max, int k, int l);

enum class ClosedFormCase { U0, Half, Third, Sixth };

// Closed forms for the special second moments: (n+1)^2, (n+1)/3 (valid for
// n >= 2), (n+1)/2 and (n+1) H_{n+1}. Throws when m lacks the divisor the
// case requires.
double closed_forms(int m, long long n, ClosedFormCase which);

struct MixedRealMoments {
    double re_re = 0.0;
    double im_im = 0.0;
    double re_im = 0.0;
};

// E[Re u_k Re u_l], E[Im u_k Im u_l], E[Re u_k Im u_l] from the complex
// second moments.
MixedRealMoments mixed_real_moments(int m, long long n, int k, int l);

struct MeanExpansion {
    Eigen::VectorXd value;              // drift + periodic terms
    std::vector<Eigen::VectorXcd> xi;   // xi_k = 2 v_k / Gamma(1+omega^k), k = 1..r
    std::vector<Eigen::VectorXd> terms; // Re(n^{omega^k} xi_k), k = 1..r
    std::string remainder_tag;          // "o(sqrt(n))" or "O(sqrt(n))"
};

MeanExpansion mean_expansion(const SpectralBasis& basis, long long n);

// Exact E[R_n] assembled from the mean projections.
Eigen::VectorXd exact_mean_vector(const SpectralBasis& basis, long long n);

struct ResidualMoment {
    double abs_sq = 0.0;       // E|M_{k,n} - Xi_k|^2 (truncated series + tail)
    cd bilinear{0.0, 0.0};     // E[(M_{k,n} - Xi_k)^2]
    double abs_sq_asym = 0.0;  // n^{1-2 lambda_k} / (2 lambda_k - 1)
    cd bilinear_asym{0.0, 0.0}; // n^{-1} / ((1 - 2 omega^{-k}) Gamma(2 omega^k))
    long long truncated_at = 0;
};

// Second moments of the martingale coupling residual for a large index
// (lambda_k > 1/2), via the telescoping increment series.
ResidualMoment residual_second_moment(int m, int k, long long n, double tol = 1e-7);

// Gamma-ratio normalizer Gamma(n+1)/Gamma(n+1+omega^k); the k = m/2 case
// reduces to n and k = 0 to 1/(n+1).
cd martingale_normalizer(const SpectralBasis& basis, long long n, int k);

double harmonic(long long n);

struct MomentTable {
    int m = 0;
    long long n = 0;
    std::vector<cd> mean;     // E[u_k], k = 0..m-1
    Eigen::MatrixXcd second;  // E[u_k u_l]
};

MomentTable build_moment_table(int m, long long n);

} // namespace cyclurn
