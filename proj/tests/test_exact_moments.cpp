#include <doctest.h>

#include <cmath>

#include "cyclurn/exact_dist.hpp"
#include "cyclurn/moments.hpp"
#include "cyclurn/residual.hpp"
#include "cyclurn/rng.hpp"

using namespace cyclurn;

TEST_CASE("exact distribution: hand-enumerated laws") {
    const ExactDistribution d32 = exact_distribution(3, 2);
    CHECK(d32.law.size() == 2);
    CHECK(d32.law.at({1, 2, 0}) == Rational(1, 2));
    CHECK(d32.law.at({1, 1, 1}) == Rational(1, 2));

    // n = 1 is a point mass for every m
    for (int m : {2, 4, 7}) {
        const ExactDistribution d = exact_distribution(m, 1);
        CHECK(d.law.size() == 1);
        std::vector<long long> e01(m, 0);
        e01[0] = e01[1] = 1;
        CHECK(d.law.at(e01) == Rational(1));
    }

    CHECK_THROWS_AS(exact_distribution(9, 3), std::runtime_error);
    CHECK_THROWS_AS(exact_distribution(4, 15), std::runtime_error);
}

TEST_CASE("u_1 law for the Friedman urn at n = 3") {
    const ExactDistribution d = exact_distribution(2, 3);
    const SpectralBasis b = build_basis(2);
    // u_1 takes values -2, 0, 2 with probabilities 1/6, 2/3, 1/6
    Rational p_minus2(0), p_zero(0), p_plus2(0);
    for (const auto& [state, p] : d.law) {
        const long long u1 = state[0] - state[1];
        if (u1 == -2) p_minus2 += p;
        if (u1 == 0) p_zero += p;
        if (u1 == 2) p_plus2 += p;
    }
    CHECK(p_minus2 == Rational(1, 6));
    CHECK(p_zero == Rational(2, 3));
    CHECK(p_plus2 == Rational(1, 6));
    CHECK(std::abs(expect_uu(d, b, 1, 1) - cd{4.0 / 3.0, 0.0}) < 1e-14);
}

TEST_CASE("mean projections: pinned values") {
    CHECK(mean_u(5, 9, 0) == cd{10.0, 0.0});
    for (long long n : {1LL, 2LL, 7LL}) {
        CHECK(mean_u(4, n, 2) == cd{0.0, 0.0}); // k = m/2
    }
    CHECK(mean_u(4, 0, 2) == cd{1.0, 0.0});

    // m=3, k=1, n=2: (1+w)(2+w)/2 = i sqrt(3)/2
    const cd got = mean_u(3, 2, 1);
    CHECK(std::abs(got - cd{0.0, std::sqrt(3.0) / 2.0}) < 1e-14);

    // product and log-gamma routes agree across the cutoff
    for (int k : {1, 2, 3}) {
        const cd small = mean_u(7, 4096, k);
        cd prod{1.0, 0.0};
        const SpectralBasis b = build_basis(7);
        for (long long s = 1; s <= 5000; ++s) prod *= (static_cast<double>(s) + b.omega(k)) / static_cast<double>(s);
        const cd large = mean_u(7, 5000, k);
        CHECK(std::abs(large - prod) < 1e-10 * std::abs(prod));
        CHECK(std::abs(small) > 0.0);
    }
}

TEST_CASE("second moments: pinned values and oracle equivalence") {
    CHECK(std::abs(second_moment_u(2, 1, 1, 1)) < 1e-15);
    CHECK(std::abs(second_moment_u(2, 2, 1, 1) - cd{1.0, 0.0}) < 1e-14);
    CHECK(std::abs(second_moment_u(2, 3, 1, 1) - cd{4.0 / 3.0, 0.0}) < 1e-14);
    CHECK(std::abs(second_moment_u(3, 2, 1, 2) - cd{1.5, 0.0}) < 1e-14);
    CHECK(std::abs(second_moment_u(6, 10, 0, 0) - cd{121.0, 0.0}) < 1e-11);

    for (int m : {2, 3, 5}) {
        const SpectralBasis basis = build_basis(m);
        for (long long n = 0; n <= 8; ++n) {
            const ExactDistribution dist = exact_distribution(m, n);
            for (int k = 0; k < m; ++k) {
                CHECK(std::abs(mean_u(m, n, k) - expect_u(dist, basis, k)) < 1e-10);
                for (int l = 0; l < m; ++l) {
                    CHECK(std::abs(second_moment_u(m, n, k, l) - expect_uu(dist, basis, k, l)) < 1e-10);
                }
            }
        }
    }
}

TEST_CASE("recursion agrees with the double-product form") {
    Xoshiro256pp rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        const int m = 2 + static_cast<int>(rng.below(11));
        const int k = static_cast<int>(rng.below(static_cast<std::uint64_t>(m)));
        const int l = static_cast<int>(rng.below(static_cast<std::uint64_t>(m)));
        const long long n = 1 + static_cast<long long>(rng.below(400));
        const cd a = second_moment_u(m, n, k, l);
        const cd b = second_moment_u_product(m, n, k, l);
        CHECK(std::abs(a - b) < 1e-10 * (1.0 + std::abs(a)));
    }
}

TEST_CASE("conjugation symmetry of second moments") {
    Xoshiro256pp rng(8);
    for (int trial = 0; trial < 30; ++trial) {
        const int m = 2 + static_cast<int>(rng.below(11));
        const int k = static_cast<int>(rng.below(static_cast<std::uint64_t>(m)));
        const int l = static_cast<int>(rng.below(static_cast<std::uint64_t>(m)));
        const long long n = static_cast<long long>(rng.below(200));
        const cd a = second_moment_u(m, n, k, l);
        const cd b = second_moment_u(m, n, (m - k) % m, (m - l) % m);
        CHECK(std::abs(a - std::conj(b)) < 1e-10 * (1.0 + std::abs(a)));
    }
}

TEST_CASE("closed forms") {
    CHECK(closed_forms(6, 1, ClosedFormCase::Sixth) == 3.0);
    CHECK(closed_forms(2, 2, ClosedFormCase::Half) == 1.0);
    CHECK(closed_forms(3, 2, ClosedFormCase::Third) == 1.5);
    CHECK(closed_forms(5, 9, ClosedFormCase::U0) == 100.0);
    CHECK_THROWS_AS(closed_forms(5, 3, ClosedFormCase::Half), std::invalid_argument);
    CHECK_THROWS_AS(closed_forms(4, 3, ClosedFormCase::Third), std::invalid_argument);
    CHECK_THROWS_AS(closed_forms(4, 3, ClosedFormCase::Sixth), std::invalid_argument);

    // the sixth-case closed form against the recursion on its first values
    const cd direct = second_moment_u(6, 1, 1, 5);
    CHECK(std::abs(direct - cd{3.0, 0.0}) < 1e-14);

    // documented n = 1 deviation of the half case
    CHECK(std::abs(second_moment_u(2, 1, 1, 1)) < 1e-15);
    CHECK(closed_forms(2, 1, ClosedFormCase::Half) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("mixed real moments") {
    const MixedRealMoments m00 = mixed_real_moments(5, 3, 0, 0);
    CHECK(m00.re_re == doctest::Approx(16.0));
    CHECK(std::abs(m00.im_im) < 1e-12);
    CHECK(std::abs(m00.re_im) < 1e-12);

    const MixedRealMoments m2 = mixed_real_moments(2, 2, 1, 1);
    CHECK(m2.re_re == doctest::Approx(1.0));
    CHECK(std::abs(m2.im_im) < 1e-12);
    CHECK(std::abs(m2.re_im) < 1e-12);

    // |u_1|^2 = Re^2 + Im^2 must match the oracle value 3/2
    const MixedRealMoments m3 = mixed_real_moments(3, 2, 1, 1);
    CHECK(m3.re_re + m3.im_im == doctest::Approx(1.5));
}

TEST_CASE("Parseval identity for the dual forms") {
    Xoshiro256pp rng(11);
    for (int m : {3, 8, 17}) {
        const SpectralBasis b = build_basis(m);
        std::vector<long long> w(m);
        for (int t = 0; t < m; ++t) w[t] = static_cast<long long>(rng.below(50));
        const std::vector<cd> u = b.projections(w);
        double lhs = 0.0;
        double norm2 = 0.0;
        for (int k = 0; k < m; ++k) lhs += std::norm(u[k]);
        for (int t = 0; t < m; ++t) norm2 += static_cast<double>(w[t] * w[t]);
        CHECK(lhs == doctest::Approx(m * norm2).epsilon(1e-12));
    }
}

TEST_CASE("mean expansion") {
    const SpectralBasis b7 = build_basis(7);
    for (long long n : {100LL, 1000LL}) {
        const MeanExpansion e = mean_expansion(b7, n);
        CHECK(e.remainder_tag == "o(sqrt(n))");
        CHECK(std::abs(e.value.sum() - static_cast<double>(n + 1)) < 1e-9 * (n + 1));
    }
    const Eigen::VectorXd exact = exact_mean_vector(b7, 1000);
    CHECK(std::abs(exact.sum() - 1001.0) < 1e-8 * 1001.0);
    const double r1 = (exact_mean_vector(b7, 100) - mean_expansion(b7, 100).value).norm() / 10.0;
    const double r2 = (exact_mean_vector(b7, 1000) - mean_expansion(b7, 1000).value).norm() /
                      std::sqrt(1000.0);
    CHECK(r2 < r1);

    CHECK(mean_expansion(build_basis(12), 100).remainder_tag == "O(sqrt(n))");
}

TEST_CASE("coupling residual series") {
    CHECK_THROWS_AS(residual_second_moment(4, 1, 100), std::invalid_argument);

    // monotone decreasing tail of a positive series
    const double v100 = residual_second_moment(7, 1, 100).abs_sq;
    const double v200 = residual_second_moment(7, 1, 200).abs_sq;
    const double v400 = residual_second_moment(7, 1, 400).abs_sq;
    CHECK(v100 > v200);
    CHECK(v200 > v400);
    CHECK(v400 > 0.0);

    // series over asymptote near 1 at n = 1e4
    const ResidualMoment rm = residual_second_moment(7, 1, 10'000);
    CHECK(rm.abs_sq / rm.abs_sq_asym > 0.95);
    CHECK(rm.abs_sq / rm.abs_sq_asym < 1.05);
    // bilinear part follows its n^{-1} asymptote loosely at large n
    CHECK(std::abs(rm.bilinear) < 10.0 * std::abs(rm.bilinear_asym));
    CHECK(std::abs(rm.bilinear) > 0.1 * std::abs(rm.bilinear_asym));

    // m = 13, k = 2 sits just above the critical line and still converges
    const ResidualMoment slow = residual_second_moment(13, 2, 100);
    CHECK(slow.abs_sq > 0.0);
}

TEST_CASE("E|M_n|^2 + E|M_n - Xi|^2 is constant in n") {
    const SpectralBasis b = build_basis(7);
    const double level3 = martingale_abs_second_moment(b, 1, 1000) +
                          residual_second_moment(7, 1, 1000).abs_sq;
    const double level4 = martingale_abs_second_moment(b, 1, 10'000) +
                          residual_second_moment(7, 1, 10'000).abs_sq;
    CHECK(level3 == doctest::Approx(level4).epsilon(0.01));
    CHECK(level3 == doctest::Approx(xi_abs_second_moment(b, 1)).epsilon(0.01));
}

TEST_CASE("martingale normalizer") {
    const SpectralBasis b4 = build_basis(4);
    CHECK(martingale_normalizer(b4, 9, 0) == cd{0.1, 0.0});
    CHECK(martingale_normalizer(b4, 7, 2) == cd{7.0, 0.0});
    const SpectralBasis b7 = build_basis(7);
    for (int k : {1, 2, 3}) {
        const cd c = martingale_normalizer(b7, 50, k);
        const cd p = mean_u(7, 50, k);
        CHECK(std::abs(c * p * gamma_fn(1.0 + b7.omega(k)) - 1.0) < 1e-12);
    }
}
