#include "cyclurn/urn.hpp"

#include <algorithm>
#include <stdexcept>

namespace cyclurn {

void UrnConfig::validate() const {
    if (m < 2) throw std::invalid_argument("UrnConfig: m must be >= 2");
    if (initial_type < 0 || initial_type >= m) {
        throw std::invalid_argument("UrnConfig: initial_type must lie in [0, m)");
    }
    if (steps < 0) throw std::invalid_argument("UrnConfig: steps must be >= 0");
    if (!std::is_sorted(checkpoints.begin(), checkpoints.end())) {
        throw std::invalid_argument("UrnConfig: checkpoints must be sorted");
    }
    for (long long t : checkpoints) {
        if (t < 0 || t > steps) {
            throw std::invalid_argument("UrnConfig: checkpoints must lie in [0, steps]");
        }
    }
}

Composition initial_composition(int m, int initial_type) {
    Composition c;
    c.counts.assign(static_cast<std::size_t>(m), 0);
    c.counts[static_cast<std::size_t>(initial_type)] = 1;
    c.time = 0;
    c.initial_type = initial_type;
    return c;
}

Composition step(const Composition& state, long long draw_index) {
    const auto m = static_cast<int>(state.counts.size());
    if (draw_index < 0 || draw_index >= state.time + 1) {
        throw std::logic_error("step: draw index out of range");
    }
    int type = 0;
    long long cum = state.counts[0];
    while (draw_index >= cum) {
        ++type;
        cum += state.counts[static_cast<std::size_t>(type)];
    }
    Composition next = state;
    next.counts[static_cast<std::size_t>((type + 1) % m)] += 1;
    next.time += 1;
    return next;
}

namespace {

Snapshot make_snapshot(int m, long long time, const std::vector<long long>& counts,
                       int initial_type, const std::vector<double>& u_re,
                       const std::vector<double>& u_im, const std::vector<cd>& gamma) {
    Snapshot s;
    s.time = time;
    s.comp.counts = counts;
    s.comp.time = time;
    s.comp.initial_type = initial_type;
    s.u.resize(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        s.u[static_cast<std::size_t>(k)] = {u_re[static_cast<std::size_t>(k)], u_im[static_cast<std::size_t>(k)]};
    }
    s.gamma_prod = gamma;
    return s;
}

} // namespace

TrajectoryRecord simulate(const UrnConfig& config) {
    config.validate();
    const int m = config.m;

    TrajectoryRecord rec;
    rec.config = config;

    std::vector<long long> counts(static_cast<std::size_t>(m), 0);
    counts[static_cast<std::size_t>(config.initial_type)] = 1;

    // Root-of-unity table indexed by the type of the newly added ball:
    // row j holds omega^{k*j} for k = 0..m-1, split into re/im planes.
    SpectralBasis basis = build_basis(m);
    std::vector<double> w_re(static_cast<std::size_t>(m) * m);
    std::vector<double> w_im(static_cast<std::size_t>(m) * m);
    for (int j = 0; j < m; ++j) {
        for (int k = 0; k < m; ++k) {
            const cd w = basis.omega(static_cast<long long>(k) * j);
            w_re[static_cast<std::size_t>(j) * m + k] = w.real();
            w_im[static_cast<std::size_t>(j) * m + k] = w.imag();
        }
    }

    std::vector<double> u_re(static_cast<std::size_t>(m));
    std::vector<double> u_im(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        const cd w0 = basis.omega(static_cast<long long>(k) * config.initial_type);
        u_re[static_cast<std::size_t>(k)] = w0.real();
        u_im[static_cast<std::size_t>(k)] = w0.imag();
    }
    std::vector<cd> gamma(static_cast<std::size_t>(m), cd{1.0, 0.0});

    Xoshiro256pp rng(config.seed);

    std::size_t next_cp = 0;
    auto flush_checkpoints = [&](long long t) {
        while (next_cp < config.checkpoints.size() && config.checkpoints[next_cp] == t) {
            rec.snapshots.push_back(make_snapshot(m, t, counts, config.initial_type, u_re, u_im, gamma));
            ++next_cp;
        }
    };
    flush_checkpoints(0);

    for (long long t = 1; t <= config.steps; ++t) {
        const auto total = static_cast<std::uint64_t>(t); // balls before this step
        const auto draw = static_cast<long long>(rng.below(total));

        int type = 0;
        long long cum = counts[0];
        while (draw >= cum) {
            ++type;
            cum += counts[static_cast<std::size_t>(type)];
        }
        const int added = (type + 1 == m) ? 0 : type + 1;
        counts[static_cast<std::size_t>(added)] += 1;

        const double* row_re = &w_re[static_cast<std::size_t>(added) * m];
        const double* row_im = &w_im[static_cast<std::size_t>(added) * m];
        for (int k = 0; k < m; ++k) {
            u_re[static_cast<std::size_t>(k)] += row_re[k];
            u_im[static_cast<std::size_t>(k)] += row_im[k];
        }

        const double inv = 1.0 / static_cast<double>(t);
        for (int k = 0; k < m; ++k) {
            const cd factor{1.0 + basis.lambdas[static_cast<std::size_t>(k)] * inv,
                            basis.mus[static_cast<std::size_t>(k)] * inv};
            gamma[static_cast<std::size_t>(k)] *= factor;
        }

        flush_checkpoints(t);
    }

    rec.final_state = make_snapshot(m, config.steps, counts, config.initial_type, u_re, u_im, gamma);
    return rec;
}

TrajectoryRecord shift_initial_type(const TrajectoryRecord& traj, int j) {
    const int m = traj.config.m;
    if (traj.config.initial_type != 0) {
        throw std::invalid_argument("shift_initial_type: input must start from type 0");
    }
    if (j < 0 || j >= m) {
        throw std::invalid_argument("shift_initial_type: j must lie in [0, m)");
    }
    SpectralBasis basis = build_basis(m);
    auto shift_snapshot = [&](const Snapshot& s) {
        Snapshot out = s;
        for (int t = 0; t < m; ++t) {
            out.comp.counts[static_cast<std::size_t>((t + j) % m)] = s.comp.counts[static_cast<std::size_t>(t)];
        }
        out.comp.initial_type = j;
        for (int k = 0; k < m; ++k) {
            out.u[static_cast<std::size_t>(k)] = s.u[static_cast<std::size_t>(k)] * basis.omega(static_cast<long long>(k) * j);
        }
        return out;
    };
    TrajectoryRecord out;
    out.config = traj.config;
    out.config.initial_type = j;
    out.snapshots.reserve(traj.snapshots.size());
    for (const Snapshot& s : traj.snapshots) {
        out.snapshots.push_back(shift_snapshot(s));
    }
    out.final_state = shift_snapshot(traj.final_state);
    return out;
}

std::vector<cd> recompute_projections(const SpectralBasis& basis, const Composition& comp) {
    return basis.projections(comp.counts);
}

} // namespace cyclurn
