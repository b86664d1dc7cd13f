#include "cyclurn/exact_dist.hpp"

#include <stdexcept>

namespace cyclurn {

ExactDistribution exact_distribution(int m, long long n, long long n_max, int m_max) {
    if (m < 2) throw std::invalid_argument("exact_distribution: m must be >= 2");
    if (n < 0) throw std::invalid_argument("exact_distribution: n must be >= 0");
    if (m > m_max || n > n_max) {
        throw std::runtime_error("exact_distribution: state-space guard exceeded (m <= " +
                                 std::to_string(m_max) + ", n <= " + std::to_string(n_max) + ")");
    }
    ExactDistribution dist;
    dist.m = m;
    dist.n = n;

    std::vector<long long> start(static_cast<std::size_t>(m), 0);
    start[0] = 1;
    std::map<std::vector<long long>, Rational> current;
    current[start] = Rational(1);

    for (long long t = 0; t < n; ++t) {
        std::map<std::vector<long long>, Rational> next;
        const Rational inv_total(1, t + 1);
        for (const auto& [state, p] : current) {
            for (int j = 0; j < m; ++j) {
                const long long c = state[static_cast<std::size_t>(j)];
                if (c == 0) continue;
                std::vector<long long> succ = state;
                succ[static_cast<std::size_t>((j + 1) % m)] += 1;
                next[succ] += p * Rational(c) * inv_total;
            }
        }
        current = std::move(next);
    }

    Rational mass(0);
    for (const auto& [state, p] : current) mass += p;
    if (mass != Rational(1)) {
        throw std::logic_error("exact_distribution: probabilities do not sum to 1");
    }
    dist.law = std::move(current);
    return dist;
}

cd expect_u(const ExactDistribution& dist, const SpectralBasis& basis, int k) {
    cd acc{0.0, 0.0};
    for (const auto& [state, p] : dist.law) {
        const double w = boost::rational_cast<double>(p);
        cd u{0.0, 0.0};
        for (int t = 0; t < dist.m; ++t) {
            u += basis.omega(static_cast<long long>(k) * t) * static_cast<double>(state[static_cast<std::size_t>(t)]);
        }
        acc += w * u;
    }
    return acc;
}

cd expect_uu(const ExactDistribution& dist, const SpectralBasis& basis, int k, int l) {
    cd acc{0.0, 0.0};
    for (const auto& [state, p] : dist.law) {
        const double w = boost::rational_cast<double>(p);
        cd uk{0.0, 0.0};
        cd ul{0.0, 0.0};
        for (int t = 0; t < dist.m; ++t) {
            const auto c = static_cast<double>(state[static_cast<std::size_t>(t)]);
            uk += basis.omega(static_cast<long long>(k) * t) * c;
            ul += basis.omega(static_cast<long long>(l) * t) * c;
        }
        acc += w * (uk * ul);
    }
    return acc;
}

} // namespace cyclurn
