#pragma once

// One-particle states, binomial wave packets, and recorded time evolution.

#include "qlga/lattice.hpp"

#include <Eigen/Core>
#include <vector>

namespace qlga {

// A state is the 2N-component amplitude vector, site-major:
// index 2x = left mover at x, 2x+1 = right mover at x.
using State = Eigen::VectorXcd;

double state_norm(const State& state);

// Probability in both components summed over sites from..to (inclusive).
double region_probability(const State& state, int from, int to);

// Probability-weighted mean position.
double probability_centroid(const State& state);

// Binomial wave packet: a plane wave e^{i k0 x} with the local rule's unit
// spinor, modulated by sqrt(binomial(width, x - x0 + width/2)) on the window
// |x - x0| <= width/2 and normalized to total probability 1.  Amplitudes on
// masked corner states are forced to zero before normalization so Type II
// lattices evolve entirely inside the physical subspace.
struct PacketSpec {
    double k0 = 0.0;
    int center = 0;
    int width = 0; // even, >= 0
    int epsilon = +1;
};

State binomial_packet(const PacketSpec& spec, const RuleParams& params, int size,
                      const std::vector<int>& corner_mask = {});

// Convenience: picks the rule parameters of the segment containing the packet
// center and the operator's corner mask from the config.
State binomial_packet(const PacketSpec& spec, const LatticeConfig& config);

// Recorded trajectory.  Probabilities only by default (what the spacetime
// plots need); amplitudes are kept when requested, mainly for tests.
struct TrajectoryFrame {
    int t = 0;
    std::vector<double> p_minus;
    std::vector<double> p_plus;
    double norm = 0.0;
    State amplitudes; // empty unless recorded
};

struct Trajectory {
    int size = 0;
    std::vector<TrajectoryFrame> frames;
};

// Applies the operator `steps` times, recording at t = 0, stride, 2*stride,
// ... and always at the final step.  stride <= 0 records only t = 0 and the
// final step.
Trajectory evolve(const GlobalOperator& op, const State& initial, int steps, int stride,
                  bool record_amplitudes = false);

} // namespace qlga
