#include "qlga/dynamics.hpp"
#include "qlga/errors.hpp"
#include "qlga/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace qlga {

double state_norm(const State& state) { return state.norm(); }

double region_probability(const State& state, int from, int to) {
    const int n = static_cast<int>(state.size()) / 2;
    if (from < 0 || to > n - 1 || from > to)
        throw Error(Errc::BadRange, "region [" + std::to_string(from) + ", " + std::to_string(to) +
                                        "] outside lattice of " + std::to_string(n) + " sites");
    double p = 0.0;
    for (int x = from; x <= to; ++x)
        p += std::norm(state[2 * x]) + std::norm(state[2 * x + 1]);
    return p;
}

double probability_centroid(const State& state) {
    const int n = static_cast<int>(state.size()) / 2;
    double total = 0.0, weighted = 0.0;
    for (int x = 0; x < n; ++x) {
        const double p = std::norm(state[2 * x]) + std::norm(state[2 * x + 1]);
        total += p;
        weighted += p * x;
    }
    return weighted / total;
}

State binomial_packet(const PacketSpec& spec, const RuleParams& params, int size,
                      const std::vector<int>& corner_mask) {
    if (spec.width < 0 || spec.width % 2 != 0)
        throw Error(Errc::InvalidArgument, "packet width must be even and nonnegative");
    const int half = spec.width / 2;
    if (spec.center - half < 0 || spec.center + half > size - 1)
        throw Error(Errc::OutOfRange, "packet support [" + std::to_string(spec.center - half) + ", " +
                                          std::to_string(spec.center + half) + "] outside lattice of " +
                                          std::to_string(size) + " sites");

    const PlaneWave wave = planewave_spinor(Complex(spec.k0, 0.0), spec.epsilon, params);

    State state = State::Zero(2 * size);
    // sqrt-binomial envelope, scaled so the central coefficient is 1; the
    // overall normalization happens at the end anyway.
    const double log_center = std::lgamma(spec.width + 1.0) - 2.0 * std::lgamma(half + 1.0);
    for (int j = 0; j <= spec.width; ++j) {
        const int x = spec.center - half + j;
        const double log_choose = std::lgamma(spec.width + 1.0) - std::lgamma(j + 1.0) -
                                  std::lgamma(spec.width - j + 1.0);
        const double envelope = std::exp(0.5 * (log_choose - log_center));
        const Complex phase = std::polar(envelope, spec.k0 * x);
        state[2 * x] = phase * wave.unit_spinor[0];
        state[2 * x + 1] = phase * wave.unit_spinor[1];
    }
    for (int c : corner_mask) state[c] = Complex(0.0, 0.0);

    const double nrm = state.norm();
    if (nrm == 0.0) throw Error(Errc::ZeroSpinor, "packet has zero norm after corner projection");
    state /= nrm;
    return state;
}

State binomial_packet(const PacketSpec& spec, const LatticeConfig& config) {
    std::vector<int> mask;
    if (!config.periodic && !(config.left.kind == BoundaryKind::Periodic &&
                              config.right.kind == BoundaryKind::Periodic)) {
        if (config.left.kind == BoundaryKind::TypeII) mask.push_back(0);
        if (config.right.kind == BoundaryKind::TypeII) mask.push_back(2 * config.size - 1);
    }
    return binomial_packet(spec, config.segment_at(spec.center).params, config.size, mask);
}

namespace {

TrajectoryFrame make_frame(int t, const State& state, bool keep_amplitudes) {
    const int n = static_cast<int>(state.size()) / 2;
    TrajectoryFrame frame;
    frame.t = t;
    frame.p_minus.resize(static_cast<std::size_t>(n));
    frame.p_plus.resize(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) {
        frame.p_minus[static_cast<std::size_t>(x)] = std::norm(state[2 * x]);
        frame.p_plus[static_cast<std::size_t>(x)] = std::norm(state[2 * x + 1]);
    }
    frame.norm = state.norm();
    if (keep_amplitudes) frame.amplitudes = state;
    return frame;
}

} // namespace

Trajectory evolve(const GlobalOperator& op, const State& initial, int steps, int stride,
                  bool record_amplitudes) {
    if (initial.size() != 2 * op.size)
        throw Error(Errc::LengthMismatch, "state has " + std::to_string(initial.size()) +
                                              " amplitudes, operator expects " +
                                              std::to_string(2 * op.size));
    if (steps < 0) throw Error(Errc::InvalidArgument, "negative step count");

    Trajectory traj;
    traj.size = op.size;
    traj.frames.push_back(make_frame(0, initial, record_amplitudes));

    State state = initial;
    for (int t = 1; t <= steps; ++t) {
        state = qlga::step(op, state);
        const bool due = (stride > 0 && t % stride == 0) || t == steps;
        if (due) traj.frames.push_back(make_frame(t, state, record_amplitudes));
    }
    return traj;
}

} // namespace qlga
