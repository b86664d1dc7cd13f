#include <doctest.h>

#include <boost/rational.hpp>
#include <cmath>

#include "cyclurn/moments.hpp"
#include "cyclurn/urn.hpp"

using namespace cyclurn;

TEST_CASE("single-step rule") {
    Composition r0 = initial_composition(3, 0);
    const Composition r1 = step(r0, 0);
    CHECK(r1.counts == std::vector<long long>{1, 1, 0});
    CHECK(r1.time == 1);

    Composition s;
    s.counts = {1, 1, 0};
    s.time = 1;
    const Composition after = step(s, 1); // the type-1 ball
    CHECK(after.counts == std::vector<long long>{1, 1, 1});

    // both possible draws at n=1 give the two-step law {(1,2,0), (1,1,1)}
    const Composition a = step(s, 0);
    CHECK(a.counts == std::vector<long long>{1, 2, 0});

    CHECK_THROWS_AS(step(s, 2), std::logic_error);
    CHECK_THROWS_AS(step(s, -1), std::logic_error);
}

TEST_CASE("config validation") {
    UrnConfig cfg;
    cfg.m = 1;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.m = 3;
    cfg.initial_type = 3;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.initial_type = 0;
    cfg.steps = 5;
    cfg.checkpoints = {2, 7};
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.checkpoints = {3, 2};
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("zero steps") {
    UrnConfig cfg;
    cfg.m = 5;
    cfg.initial_type = 3;
    cfg.steps = 0;
    const TrajectoryRecord rec = simulate(cfg);
    CHECK(rec.final_state.comp.counts == std::vector<long long>{0, 0, 0, 1, 0});
    const SpectralBasis b = build_basis(5);
    for (int k = 0; k < 5; ++k) {
        CHECK(std::abs(rec.final_state.u[k] - b.omega(3LL * k)) < 1e-15);
        CHECK(rec.final_state.gamma_prod[k] == cd{1.0, 0.0});
    }
}

TEST_CASE("conservation and determinism") {
    UrnConfig cfg;
    cfg.m = 5;
    cfg.steps = 2000;
    cfg.seed = 99;
    cfg.checkpoints = {0, 1, 500, 2000};
    const TrajectoryRecord a = simulate(cfg);
    const TrajectoryRecord b = simulate(cfg);
    for (const Snapshot& s : a.snapshots) {
        CHECK(s.comp.total() == s.time + 1);
    }
    CHECK(a.final_state.comp.counts == b.final_state.comp.counts);
    for (int k = 0; k < 5; ++k) {
        CHECK(a.final_state.u[k] == b.final_state.u[k]);
        CHECK(a.final_state.gamma_prod[k] == b.final_state.gamma_prod[k]);
    }
}

TEST_CASE("incremental projections match recomputation at n = 1e6") {
    UrnConfig cfg;
    cfg.m = 7;
    cfg.steps = 1'000'000;
    cfg.seed = 2024;
    const TrajectoryRecord rec = simulate(cfg);
    const SpectralBasis basis = build_basis(7);
    const std::vector<cd> direct = recompute_projections(basis, rec.final_state.comp);
    for (int k = 0; k < 7; ++k) {
        const double scale = std::max(1.0, std::abs(direct[k]));
        CHECK(std::abs(rec.final_state.u[k] - direct[k]) < 1e-9 * scale);
    }
    // u_0 is the ball count itself
    CHECK(rec.final_state.u[0].real() == static_cast<double>(cfg.steps + 1));
    CHECK(rec.final_state.u[0].imag() == 0.0);
    // running gamma products against the closed form
    for (int k = 0; k < 7; ++k) {
        const cd expected = mean_u(7, cfg.steps, k);
        CHECK(std::abs(rec.final_state.gamma_prod[k] - expected) < 1e-8 * std::abs(expected));
    }
}

TEST_CASE("running product at k = 0 telescopes to n+1") {
    UrnConfig cfg;
    cfg.m = 4;
    cfg.steps = 10'000;
    cfg.seed = 5;
    const TrajectoryRecord rec = simulate(cfg);
    CHECK(std::abs(rec.final_state.gamma_prod[0].real() - static_cast<double>(cfg.steps + 1)) <
          1e-10 * static_cast<double>(cfg.steps + 1));
    CHECK(rec.final_state.gamma_prod[0].imag() == 0.0);
}

TEST_CASE("one-step conditional mean is (Id + A^t/(n+1)) R_n, exactly") {
    using Rat = boost::rational<long long>;
    const int m = 4;
    Composition state;
    state.counts = {3, 1, 0, 2};
    state.time = 5;
    std::vector<Rat> avg(m, Rat(0));
    const Rat inv(1, state.time + 1);
    for (long long d = 0; d < state.time + 1; ++d) {
        const Composition next = step(state, d);
        for (int t = 0; t < m; ++t) avg[t] += Rat(next.counts[t]) * inv;
    }
    // expected: R + A^t R/(n+1), i.e. coordinate i gains R_{i-1}/(n+1)
    for (int i = 0; i < m; ++i) {
        const Rat expected = Rat(state.counts[i]) + Rat(state.counts[(i + m - 1) % m]) * inv;
        CHECK(avg[i] == expected);
    }
}

TEST_CASE("shift of the initial type") {
    UrnConfig cfg;
    cfg.m = 3;
    cfg.steps = 40;
    cfg.seed = 12;
    const TrajectoryRecord rec = simulate(cfg);
    const TrajectoryRecord same = shift_initial_type(rec, 0);
    CHECK(same.final_state.comp.counts == rec.final_state.comp.counts);

    TrajectoryRecord manual = rec;
    manual.final_state.comp.counts = {1, 2, 0};
    const TrajectoryRecord shifted = shift_initial_type(manual, 1);
    CHECK(shifted.final_state.comp.counts == std::vector<long long>{0, 1, 2});
    CHECK(shifted.config.initial_type == 1);

    CHECK_THROWS_AS(shift_initial_type(shifted, 1), std::invalid_argument);
}

TEST_CASE("shift rotates every projection by omega^{kj}") {
    const int m = 5;
    const SpectralBasis basis = build_basis(m);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        UrnConfig cfg;
        cfg.m = m;
        cfg.steps = 60;
        cfg.seed = seed;
        const TrajectoryRecord rec = simulate(cfg);
        for (int j : {1, 3}) {
            const TrajectoryRecord shifted = shift_initial_type(rec, j);
            const std::vector<cd> direct = recompute_projections(basis, shifted.final_state.comp);
            for (int k = 0; k < m; ++k) {
                const cd expected = basis.omega(static_cast<long long>(k) * j) * rec.final_state.u[k];
                CHECK(std::abs(shifted.final_state.u[k] - expected) < 1e-12 * (1.0 + std::abs(expected)));
                CHECK(std::abs(direct[k] - expected) < 1e-9 * (1.0 + std::abs(expected)));
            }
        }
    }
}
