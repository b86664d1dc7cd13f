#include <doctest.h>

#include <cmath>

#include "cyclurn/rng.hpp"
#include "cyclurn/spectral.hpp"

using namespace cyclurn;

TEST_CASE("basis invariants for m = 2..32") {
    for (int m = 2; m <= 32; ++m) {
        const SpectralBasis b = build_basis(m);
        for (int k = 0; k < m; ++k) {
            CHECK(std::abs(std::abs(b.omega(k)) - 1.0) < 1e-14);
            CHECK(std::abs(b.lambdas[k] * b.lambdas[k] + b.mus[k] * b.mus[k] - 1.0) < 1e-14);
        }
        // duality u_k(v_l) = delta_{kl}
        for (int k = 0; k < m; ++k) {
            for (int l = 0; l < m; ++l) {
                const cd d = b.dual_form(k, Eigen::VectorXcd(b.eigvecs.col(l)));
                CHECK(std::abs(d - (k == l ? 1.0 : 0.0)) < 1e-12);
            }
        }
        // large/critical/small classification by lambda - 1/2 for k >= 1
        const int r = b.r;
        for (int k = 1; k < m; ++k) {
            const bool large = (k <= r) || (k >= m - r);
            CHECK((b.lambdas[k] > 0.5) == large);
            if (b.is_critical_index(k)) CHECK(b.lambdas[k] == 0.5);
        }
    }
}

TEST_CASE("spectral reassembly of integer vectors") {
    Xoshiro256pp rng(42);
    for (int m : {2, 3, 7, 12, 25, 32}) {
        const SpectralBasis b = build_basis(m);
        Eigen::VectorXd w(m);
        for (int t = 0; t < m; ++t) w(t) = static_cast<double>(rng.below(1000));
        Eigen::VectorXcd rebuilt = Eigen::VectorXcd::Zero(m);
        for (int k = 0; k < m; ++k) {
            rebuilt += b.dual_form(k, w) * b.eigvecs.col(k);
        }
        CHECK((rebuilt - w.cast<cd>()).norm() < 1e-10);
    }
}

TEST_CASE("build_basis pinned examples") {
    CHECK_THROWS_AS(build_basis(1), std::invalid_argument);

    const SpectralBasis b4 = build_basis(4);
    CHECK(b4.omega(1) == cd{0.0, 1.0});
    CHECK(b4.lambdas[1] == 0.0);
    CHECK(b4.mus[1] == 1.0);
    const Eigen::VectorXcd v1 = b4.eigvecs.col(1);
    CHECK(std::abs(v1(0) - cd{0.25, 0.0}) < 1e-15);
    CHECK(std::abs(v1(1) - cd{0.0, -0.25}) < 1e-15);
    CHECK(std::abs(v1(2) - cd{-0.25, 0.0}) < 1e-15);
    CHECK(std::abs(v1(3) - cd{0.0, 0.25}) < 1e-15);

    const SpectralBasis b6 = build_basis(6);
    CHECK(b6.lambdas[1] == 0.5);
    CHECK(b6.classes[1] == ProjectionClass::Critical);

    const SpectralBasis b12 = build_basis(12);
    CHECK(b12.r == 1);
    CHECK(b12.is_critical_index(2));
    CHECK(b12.is_critical_index(10));
    CHECK(!b12.is_critical_index(1));
}

TEST_CASE("replacement matrix and eigen relation") {
    const Eigen::MatrixXi a2 = replacement_matrix(2);
    CHECK(a2(0, 1) == 1);
    CHECK(a2(1, 0) == 1);
    CHECK(a2(0, 0) == 0);

    const Eigen::MatrixXi a3 = replacement_matrix(3);
    CHECK(a3(2, 0) == 1); // wrap-around row

    const SpectralBasis b = build_basis(7);
    const Eigen::MatrixXcd at = replacement_matrix(7).cast<cd>().transpose();
    const Eigen::VectorXcd lhs = at * b.eigvecs.col(1);
    const Eigen::VectorXcd rhs = b.omega(1) * b.eigvecs.col(1);
    CHECK((lhs - rhs).norm() < 1e-12);
}

TEST_CASE("sigma matrix: frozen m=2 value, ranks, kernel") {
    const CovarianceTarget t2 = sigma_matrix(build_basis(2));
    CHECK(std::abs(t2.sigma_m(0, 0) - 1.0 / 12.0) < 1e-15);
    CHECK(std::abs(t2.sigma_m(0, 1) + 1.0 / 12.0) < 1e-15);
    CHECK(t2.rank_sigma == 1);

    CHECK(sigma_matrix(build_basis(7)).rank_sigma == 6);
    CHECK(sigma_matrix(build_basis(12)).rank_sigma == 2);

    for (int m : {3, 5, 7, 11}) {
        const CovarianceTarget t = sigma_matrix(build_basis(m));
        CHECK((t.sigma_m * Eigen::VectorXd::Ones(m)).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("m sigma is the weighted projector sum") {
    // m*Sigma^(m) = sum_k pi_k / |2 lambda_k - 1|: its spectrum consists of
    // the weights (and one zero), and the unweighted projector sum is the
    // idempotent Id - J/m.
    for (int m : {2, 3, 5, 7}) {
        const SpectralBasis b = build_basis(m);
        const CovarianceTarget t = sigma_matrix(b);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(static_cast<double>(m) * t.sigma_m);
        std::vector<double> expected = {0.0};
        for (int k = 1; k < m; ++k) expected.push_back(1.0 / std::abs(2.0 * b.lambdas[k] - 1.0));
        std::sort(expected.begin(), expected.end());
        for (int i = 0; i < m; ++i) {
            CHECK(std::abs(es.eigenvalues()(i) - expected[static_cast<std::size_t>(i)]) < 1e-9);
        }

        const Eigen::MatrixXd proj = Eigen::MatrixXd::Identity(m, m) -
                                      Eigen::MatrixXd::Constant(m, m, 1.0 / m);
        Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(m, m);
        for (int k = 1; k < m; ++k) {
            sum += static_cast<double>(m) * b.eigvecs.col(k) * b.eigvecs.col(k).adjoint();
        }
        CHECK((sum.real() - proj).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((proj * proj - proj).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("limit covariance M_m") {
    const Eigen::MatrixXd m2 = limit_covariance(build_basis(2));
    CHECK(m2.rows() == 1);
    CHECK(std::abs(m2(0, 0) - 1.0 / 3.0) < 1e-15);

    const Eigen::MatrixXd m6 = limit_covariance(build_basis(6));
    const double expected6[] = {0.5, 0.5, 0.25, 0.25, 1.0 / 3.0};
    for (int i = 0; i < 5; ++i) {
        CHECK(std::abs(m6(i, i) - expected6[i]) < 1e-12);
    }
    CHECK(std::abs(m6.sum() - m6.trace()) < 1e-15); // diagonal

    const SpectralBasis b7 = build_basis(7);
    const Eigen::MatrixXd m7 = limit_covariance(b7);
    for (int k = 1; k <= 3; ++k) {
        const double expected = 0.5 / std::abs(2.0 * b7.lambdas[k] - 1.0);
        CHECK(std::abs(m7(2 * k - 2, 2 * k - 2) - expected) < 1e-12);
    }
}

TEST_CASE("rotation matrix D") {
    const Eigen::MatrixXd d4 = rotation_matrix_D(build_basis(4));
    CHECK(d4.rows() == 3);
    CHECK(std::abs(d4(0, 1) + 1.0) < 1e-15);
    CHECK(std::abs(d4(1, 0) - 1.0) < 1e-15);
    CHECK(std::abs(d4(0, 0)) < 1e-15);
    CHECK(std::abs(d4(2, 2) + 1.0) < 1e-15);

    const Eigen::MatrixXd d2 = rotation_matrix_D(build_basis(2));
    CHECK(d2.rows() == 1);
    CHECK(d2(0, 0) == -1.0);

    for (int m : {5, 12}) {
        const SpectralBasis b = build_basis(m);
        const Eigen::MatrixXd d = rotation_matrix_D(b);
        const Eigen::MatrixXd mm = limit_covariance(b);
        CHECK((d * d.transpose() - Eigen::MatrixXd::Identity(m - 1, m - 1)).cwiseAbs().maxCoeff() <
              1e-12);
        CHECK((d * mm * d.transpose() - mm).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("sigma_n scaling") {
    const SpectralBasis b7 = build_basis(7);
    const Eigen::VectorXd s = sigma_n_scaling(b7, 100);
    CHECK(s.size() == 6);
    for (int i = 0; i < 6; ++i) CHECK(std::abs(s(i) - 0.1) < 1e-15);

    const SpectralBasis b12 = build_basis(12);
    const Eigen::VectorXd s12 = sigma_n_scaling(b12, 7);
    const double base = 1.0 / std::sqrt(7.0);
    const double crit = base / std::sqrt(std::log(7.0));
    for (int i = 0; i < 11; ++i) {
        const double expected = (i == 2 || i == 3) ? crit : base;
        CHECK(std::abs(s12(i) - expected) < 1e-15);
    }

    CHECK((sigma_n_scaling(b12, 0).array() == 1.0).all());
    CHECK((sigma_n_scaling(b12, 1).array() == 1.0).all());
    CHECK_THROWS_AS(sigma_n_scaling(b12, -1), std::invalid_argument);
}
