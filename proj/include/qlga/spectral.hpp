#pragma once

// Dispersion, plane waves, boundary reflection amplitudes, eigenfunction
// assembly near each boundary type, quantization conditions on finite
// lattices, trapped modes, and full numeric spectra.
//
// Conventions: a plane wave psi(x) = psi(0) e^{ikx} on the epsilon branch
// evolves by one step into e^{-i epsilon omega} psi, with omega in [0, pi]
// the principal solution of
//
//   cos(omega) = cos(k) cos(theta) cos(rho) + sin(theta) sin(rho).
//
// Eigenvalues of the global operator are written lambda = e^{-i omega} with
// omega = -arg(lambda) in (-pi, pi].

#include "qlga/dynamics.hpp"
#include "qlga/lattice.hpp"
#include "qlga/weights.hpp"

#include <Eigen/Core>
#include <array>
#include <vector>

namespace qlga {

double dispersion_omega(double k, const RuleParams& p);

// Analytic continuation used for complex wavenumbers (trapped modes).
Complex dispersion_omega_complex(const Complex& k, const RuleParams& p);

// d omega / dk on the epsilon = +1 branch.
double group_velocity(double k, const RuleParams& p);

// Attainable |omega| interval for real k.  Equals (|theta - rho|,
// pi - (theta + rho)) on the canonical wedge 0 <= rho <= theta <= pi/2 and is
// computed from the extrema of the dispersion argument in general.
struct BandRange {
    double omega_min;
    double omega_max;
    bool contains(double abs_omega, double tol = 1e-9) const {
        return abs_omega >= omega_min - tol && abs_omega <= omega_max + tol;
    }
};

BandRange band_range(const RuleParams& p);

// Plane wave data at wavenumber k (possibly complex) on branch epsilon.
// `spinor` is the unnormalized eigenvector of
// D(k) = w_{-1} e^{-ik} + w_0 + w_{+1} e^{ik}; `unit_spinor` its
// normalization.  Throws ZeroSpinor when both components vanish.
struct PlaneWave {
    Complex k;
    int epsilon = +1;
    Complex omega;
    Eigen::Vector2cd spinor;
    Eigen::Vector2cd unit_spinor;

    Complex eigenvalue() const; // e^{-i epsilon omega}
};

PlaneWave planewave_spinor(const Complex& k, int epsilon, const RuleParams& p);

// D(k) itself, mainly for oracle checks.
Eigen::Matrix2cd transfer_matrix(const Complex& k, const RuleParams& p);

// Reflection amplitude A of the -k wave in an eigenfunction
// psi^(k) + A psi^(-k) meeting the given left-boundary condition, and the
// right-boundary counterpart carrying the e^{-2ik(N-1)} prefactor.
// DenominatorNearZero is raised when the defining quotient degenerates.
Complex reflection_type1(double k, int epsilon, const RuleParams& p, double upsilon);
Complex reflection_type1_right(double k, int epsilon, const RuleParams& p, double upsilon, int size);
Complex reflection_type2(double k, int epsilon, const RuleParams& p, double zeta);

// An assembled one-boundary eigenfunction sampled on `sites` lattice sites,
// unit normalized.  residual = max over rows 0..sites-2 of
// |U psi - e^{-i eps omega} psi| for the one-boundary operator (row sites-1
// would reach past the sample window and is excluded).
struct BoundaryEigenfunction {
    double omega = 0.0; // signed: epsilon * principal omega
    Complex reflection;
    State state;
    double residual = 0.0;
};

BoundaryEigenfunction assemble_type1_eigenfunction(double k, int epsilon, const RuleParams& p,
                                                   double upsilon, int sites = 12);
BoundaryEigenfunction assemble_type2_eigenfunction(double k, int epsilon, const RuleParams& p,
                                                   double zeta, int sites = 12);

// Type III boundaries determine the pair (A, psi_{-1}(0)) through two
// simultaneous linear equations; SingularSystem is raised when the system's
// condition number exceeds 1e12.
struct Type3Eigenfunction {
    Complex reflection;
    Complex psi_minus_at_0;
    BoundaryEigenfunction assembled;
};

Type3Eigenfunction eigenfunction_type3(double k, int epsilon, const RuleParams& p,
                                       double theta_prime, double upsilon, double zeta,
                                       int sites = 12);

// The N-1 wavenumbers quantized by two Type I boundaries with rho = 0,
// upsilon = 0: the interior roots in (0, pi) of tan(Nk) = sin(k) cot(theta),
// found by bisection between consecutive poles at (n + 1/2) pi / N and
// Newton-polished.  The endpoints k = 0, pi solve the condition identically
// but are excluded: the incident and reflected waves coincide there and the
// combination vanishes.
std::vector<double> quantization_roots(int size, double theta);

double quantization_omega(double k, double theta); // omega at rho = 0

// General quantization for two equal Type I boundaries: interior k where the
// left and right reflection constraints agree, located by scanning the phase
// mismatch arg(A_left / A_right) on a grid and bisecting its zero crossings.
// Endpoint roots (k = 0, pi) are outside the scan window.
std::vector<double> quantization_roots_general(int size, const RuleParams& p, double upsilon,
                                               int grid = 4096);

// The two candidate trapped-mode wavenumbers e^{ik} = -tan(theta) +-
// sec(theta).  `omega` is the verified dispersion frequency at rho = 0
// (0 for the + root, pi for the - root); `decays_rightward` marks
// |e^{ik}| < 1, i.e. a mode localized at a left boundary.
struct TrappedRoot {
    Complex e_ik;
    Complex k;
    double omega = 0.0;
    double abs_e_ik = 0.0;
    bool decays_rightward = false;
    bool band_edge_degenerate = false;
};

std::array<TrappedRoot, 2> trapped_wavenumbers(double theta);

// Full dense spectrum of a global operator.
enum class ModeClass { InBand, Trapped, Corner };

const char* mode_class_name(ModeClass c);

struct EigenPair {
    Complex lambda;
    double omega = 0.0; // -arg(lambda)
    double modulus = 0.0;
    double residual = 0.0; // max |U v - lambda v|
    ModeClass classification = ModeClass::InBand;
    Eigen::VectorXcd vector;
};

struct SpectralResult {
    std::vector<EigenPair> pairs; // sorted by omega
    double max_residual = 0.0;
};

SpectralResult full_spectrum(const GlobalOperator& op, int cap = kDefaultDenseCap);

// Parameter sweep reproducing the spectra-vs-boundary-parameter scatter
// plots: the chosen parameter is set to the same value on both boundaries for
// every grid entry.  Points are solved independently (possibly concurrently)
// and returned in grid order.
enum class SweepParam { Upsilon, Zeta, ThetaPrime };

const char* sweep_param_name(SweepParam p);

struct SweepPoint {
    double value = 0.0;
    SpectralResult spectrum;
};

std::vector<SweepPoint> boundary_sweep(const LatticeConfig& base, SweepParam param,
                                       const std::vector<double>& grid,
                                       int cap = kDefaultDenseCap);

} // namespace qlga
