#pragma once

// Local weight matrices for the one-particle quantum lattice-gas automaton
// in one dimension.
//
// The state at a site is a two component complex vector
// (psi_{-1}, psi_{+1}) = (left mover, right mover), and one timestep is
//
//   psi(t+1, x) = w_{-1} psi(t, x-1) + w_0 psi(t, x) + w_{+1} psi(t, x+1),
//
// with 2x2 complex weight blocks w_i.  The homogeneous rule is parameterized
// by an advection coupling rho and a mass angle theta:
//
//   w_{-1} = cos(rho) [ 0  i sin(theta) ;  0  cos(theta) ]
//   w_{+1} = cos(rho) [ cos(theta)  0   ;  i sin(theta)  0 ]
//   w_0    = sin(rho) [ sin(theta)  -i cos(theta) ; -i cos(theta)  sin(theta) ]
//
// This header also provides the boundary and junction blocks consistent with
// global unitarity: terminating or changing rho at fixed theta (Type I),
// terminating or changing theta at fixed rho (Type II), and the combined /
// Type III variants that change both.  Row/column index 0 is the left mover,
// index 1 the right mover.  All angles are radians.

#include <Eigen/Core>
#include <complex>

namespace qlga {

using Complex = std::complex<double>;
using WeightBlock = Eigen::Matrix2cd;

// Angle pair (rho, theta) of the homogeneous rule.
struct RuleParams {
    double rho = 0.0;
    double theta = 0.0;

    friend bool operator==(const RuleParams&, const RuleParams&) = default;
};

// The three bulk blocks (w_minus, w_zero, w_plus).
struct BulkWeights {
    WeightBlock minus;
    WeightBlock zero;
    WeightBlock plus;
};

BulkWeights bulk_weights(const RuleParams& p);

// Terminating blocks for a left boundary at x = 0.  Each boundary row is
// (b_zero at column 0, b_plus at column 1); the right-boundary row is the
// parity reflection, see parity_reflect_boundary().
struct BoundaryRow {
    WeightBlock zero;
    WeightBlock plus;
};

// Type I boundary: w0_bar with the sin(rho) of the first column replaced by
// the free phase e^{i upsilon}.  The second column coincides with w_0's.
WeightBlock type1_boundary_w0(const RuleParams& p, double upsilon);

inline BoundaryRow type1_boundary_row(const RuleParams& p, double upsilon) {
    return {type1_boundary_w0(p, upsilon), bulk_weights(p).plus};
}

// Type I junction block w0_hat(rho_left, theta, rho_right): column 0 (left
// mover) scaled by sin(rho_left), column 1 (right mover) by sin(rho_right).
// theta must be common to both sides for the global rule to stay unitary.
WeightBlock type1_junction_w0(double rho_left, double theta, double rho_right);

// Type II boundary: the theta' -> pi/2 limit of a Type II inhomogeneity with
// an overall phase e^{i zeta}.  b_zero = e^{i zeta} sin(rho) I and
// b_plus = e^{i zeta} cos(rho) [0 0; i 0].  The inward-moving corner state
// decouples: it is an exact eigenvector with eigenvalue e^{i zeta} sin(rho),
// so the full matrix is unitary only on the corner's complement.
BoundaryRow type2_boundary_row(const RuleParams& p, double zeta);

// Type III boundary: terminates the lattice while changing both angles, with
// a boundary mass angle theta_prime and two free phases upsilon, zeta.
// Returns the row blocks plus b_minus, the w_minus block of row 1 (equal to
// the bulk w_{-1}(rho, theta) once the gauge phases are fixed to zero).
struct Type3BoundaryBlocks {
    WeightBlock zero;
    WeightBlock plus;
    WeightBlock minus;
};

Type3BoundaryBlocks type3_boundary_row(const RuleParams& p, double theta_prime,
                                       double upsilon, double zeta);

// Adjacent Type I + Type II inhomogeneity changing (rho', theta') on the left
// to (rho, theta) on the right.  The affected row j carries
// (w_{-1}(left), hat_zero, hat_plus) and row j+1 starts the plain right-side
// rule (hat_minus coincides with the right bulk w_{-1}).
struct JunctionBlocks {
    WeightBlock hat_minus;
    WeightBlock hat_zero;
    WeightBlock hat_plus;
};

JunctionBlocks combined_junction_blocks(const RuleParams& left, const RuleParams& right);

// Conjugation by P = [0 1; 1 0]; swaps the mover components.  Involution.
WeightBlock parity_transform(const WeightBlock& block);

// Mirrors a left-boundary row recipe into the right-boundary one: the stencil
// offsets flip, so the reflected row at x = N-1 is
// (P b_plus P at column N-2, P b_zero P at column N-1).
struct ReflectedBoundaryRow {
    WeightBlock minus; // P b_plus P
    WeightBlock zero;  // P b_zero P
};

ReflectedBoundaryRow parity_reflect_boundary(const BoundaryRow& row);

} // namespace qlga
