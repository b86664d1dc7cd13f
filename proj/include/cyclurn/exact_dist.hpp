#pragma once

#include <map>
#include <vector>

#include <boost/rational.hpp>

#include "cyclurn/spectral.hpp"

namespace cyclurn {

using Rational = boost::rational<long long>;

// Exact law of the composition vector after n steps, starting from one
// ball of type 0. Keys are count vectors (summing to n+1), values exact
// probabilities summing to exactly 1.
struct ExactDistribution {
    int m = 0;
    long long n = 0;
    std::map<std::vector<long long>, Rational> law;
};

// Forward DP over composition states in exact rational arithmetic. The
// default guards keep state counts and denominators tractable (path
// denominators divide n!, so 64-bit numerators suffice up to n = 14).
ExactDistribution exact_distribution(int m, long long n, long long n_max = 14, int m_max = 8);

// Expectations over the law, rationals converted to double at the end.
cd expect_u(const ExactDistribution& dist, const SpectralBasis& basis, int k);
cd expect_uu(const ExactDistribution& dist, const SpectralBasis& basis, int k, int l);

} // namespace cyclurn
