#include "qlga/spectral.hpp"
#include "qlga/errors.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <mutex>
#include <thread>

namespace qlga {

namespace {
constexpr Complex kI{0.0, 1.0};
constexpr double kPi = 3.14159265358979323846;

double clamp_unit(double x) { return std::max(-1.0, std::min(1.0, x)); }
} // namespace

double dispersion_omega(double k, const RuleParams& p) {
    const double c = std::cos(k) * std::cos(p.theta) * std::cos(p.rho) +
                     std::sin(p.theta) * std::sin(p.rho);
    return std::acos(clamp_unit(c));
}

Complex dispersion_omega_complex(const Complex& k, const RuleParams& p) {
    const Complex c = std::cos(k) * std::cos(p.theta) * std::cos(p.rho) +
                      std::sin(p.theta) * std::sin(p.rho);
    return std::acos(c);
}

double group_velocity(double k, const RuleParams& p) {
    const double omega = dispersion_omega(k, p);
    const double s = std::sin(omega);
    if (s == 0.0) return 0.0; // band edge
    return std::cos(p.theta) * std::cos(p.rho) * std::sin(k) / s;
}

BandRange band_range(const RuleParams& p) {
    const double a = std::cos(p.theta) * std::cos(p.rho);
    const double b = std::sin(p.theta) * std::sin(p.rho);
    // cos(omega) ranges over [b - |a|, b + |a|] as cos(k) sweeps [-1, 1].
    const double omega_min = std::acos(clamp_unit(b + std::abs(a)));
    const double omega_max = std::acos(clamp_unit(b - std::abs(a)));
    return {omega_min, omega_max};
}

Eigen::Matrix2cd transfer_matrix(const Complex& k, const RuleParams& p) {
    const auto w = bulk_weights(p);
    const Complex e_plus = std::exp(kI * k);
    const Complex e_minus = std::exp(-kI * k);
    return w.minus * e_minus + w.zero + w.plus * e_plus;
}

Complex PlaneWave::eigenvalue() const {
    return std::exp(-kI * static_cast<double>(epsilon) * omega);
}

PlaneWave planewave_spinor(const Complex& k, int epsilon, const RuleParams& p) {
    if (epsilon != 1 && epsilon != -1)
        throw Error(Errc::InvalidArgument, "epsilon must be +1 or -1");

    PlaneWave wave;
    wave.k = k;
    wave.epsilon = epsilon;
    wave.omega = dispersion_omega_complex(k, p);

    const double cr = std::cos(p.rho), sr = std::sin(p.rho);
    const double ct = std::cos(p.theta), st = std::sin(p.theta);
    const Complex e_minus = std::exp(-kI * k);
    const Complex e_plus = std::exp(kI * k);
    const Complex lambda = std::exp(-kI * static_cast<double>(epsilon) * wave.omega);

    wave.spinor[0] = kI * sr * ct - kI * e_minus * cr * st;
    wave.spinor[1] = sr * st + e_plus * cr * ct - lambda;

    const double norm = wave.spinor.norm();
    if (norm < 1e-14)
        throw Error(Errc::ZeroSpinor, "plane-wave spinor vanishes at k = (" +
                                          std::to_string(k.real()) + ", " + std::to_string(k.imag()) +
                                          "), epsilon = " + std::to_string(epsilon));
    wave.unit_spinor = wave.spinor / norm;
    return wave;
}

namespace {

Complex checked_ratio(const Complex& num, const Complex& den, const char* context) {
    if (std::abs(den) < 1e-13)
        throw Error(Errc::DenominatorNearZero, std::string(context) + " (|denominator| = " +
                                                   std::to_string(std::abs(den)) + ")");
    return num / den;
}

} // namespace

Complex reflection_type1(double k, int epsilon, const RuleParams& p, double upsilon) {
    const auto inc = planewave_spinor(Complex(k, 0.0), epsilon, p);
    const auto ref = planewave_spinor(Complex(-k, 0.0), epsilon, p);
    const Complex eiu = std::polar(1.0, upsilon);
    const double cr = std::cos(p.rho), sr = std::sin(p.rho);

    const Complex num = (eiu - sr) * inc.spinor[0] - kI * std::exp(-kI * k) * cr * inc.spinor[1];
    const Complex den = (eiu - sr) * ref.spinor[0] - kI * std::exp(kI * k) * cr * ref.spinor[1];
    return -checked_ratio(num, den, "Type I reflection");
}

Complex reflection_type1_right(double k, int epsilon, const RuleParams& p, double upsilon,
                               int size) {
    const auto inc = planewave_spinor(Complex(k, 0.0), epsilon, p);
    const auto ref = planewave_spinor(Complex(-k, 0.0), epsilon, p);
    const Complex eiu = std::polar(1.0, upsilon);
    const double cr = std::cos(p.rho), sr = std::sin(p.rho);

    // From the parity-reflected boundary row at x = N-1, the eigenfunction
    // constraint reads (e^{i ups} - sin rho) psi_{+1}(N-1) = i cos rho
    // psi_{-1}(N); collecting the e^{+-ikx} factors puts e^{+2ik(N-1)} in
    // front.  (Verified against dense spectra; see the tests.)
    const Complex num = (eiu - sr) * inc.spinor[1] - kI * std::exp(kI * k) * cr * inc.spinor[0];
    const Complex den = (eiu - sr) * ref.spinor[1] - kI * std::exp(-kI * k) * cr * ref.spinor[0];
    const Complex prefactor = std::exp(2.0 * kI * k * static_cast<double>(size - 1));
    return -prefactor * checked_ratio(num, den, "Type I right-boundary reflection");
}

Complex reflection_type2(double k, int epsilon, const RuleParams& p, double zeta) {
    const auto inc = planewave_spinor(Complex(k, 0.0), epsilon, p);
    const auto ref = planewave_spinor(Complex(-k, 0.0), epsilon, p);
    const Complex eiz = std::polar(1.0, zeta);
    const double cr = std::cos(p.rho), sr = std::sin(p.rho);
    const Complex lambda = inc.eigenvalue();

    const Complex num =
        (eiz * sr - lambda) * inc.spinor[1] + kI * std::exp(kI * (zeta + k)) * cr * inc.spinor[0];
    const Complex den =
        (eiz * sr - lambda) * ref.spinor[1] + kI * std::exp(kI * (zeta - k)) * cr * ref.spinor[0];
    return -checked_ratio(num, den, "Type II reflection");
}

namespace {

// One-boundary operator rows for residual checks: row 0 is the boundary row,
// the rest bulk.  Returns max_x |(U psi)(x) - lambda psi(x)| over rows
// 0..sites-2.
double one_boundary_residual(const BoundaryRow& boundary, const RuleParams& p,
                             const Complex& lambda, const State& psi) {
    const int n = static_cast<int>(psi.size()) / 2;
    const auto bulk = bulk_weights(p);

    double worst = 0.0;
    for (int x = 0; x + 1 < n; ++x) {
        Eigen::Vector2cd lhs = Eigen::Vector2cd::Zero();
        const Eigen::Vector2cd here(psi[2 * x], psi[2 * x + 1]);
        const Eigen::Vector2cd right(psi[2 * (x + 1)], psi[2 * (x + 1) + 1]);
        if (x == 0) {
            lhs = boundary.zero * here + boundary.plus * right;
        } else {
            const Eigen::Vector2cd left(psi[2 * (x - 1)], psi[2 * (x - 1) + 1]);
            lhs = bulk.minus * left + bulk.zero * here + bulk.plus * right;
        }
        const Eigen::Vector2cd diff = lhs - lambda * here;
        worst = std::max({worst, std::abs(diff[0]), std::abs(diff[1])});
    }
    return worst;
}

State eigenfunction_from_amplitudes(const Complex& k, const PlaneWave& inc, const PlaneWave& ref,
                                    const Complex& a, int sites) {
    State psi(2 * sites);
    for (int x = 0; x < sites; ++x) {
        const Complex f = std::exp(kI * k * static_cast<double>(x));
        const Complex g = std::exp(-kI * k * static_cast<double>(x));
        psi[2 * x] = inc.spinor[0] * f + a * ref.spinor[0] * g;
        psi[2 * x + 1] = inc.spinor[1] * f + a * ref.spinor[1] * g;
    }
    return psi;
}

} // namespace

BoundaryEigenfunction assemble_type1_eigenfunction(double k, int epsilon, const RuleParams& p,
                                                   double upsilon, int sites) {
    const auto inc = planewave_spinor(Complex(k, 0.0), epsilon, p);
    const auto ref = planewave_spinor(Complex(-k, 0.0), epsilon, p);
    const Complex a = reflection_type1(k, epsilon, p, upsilon);

    State psi = eigenfunction_from_amplitudes(Complex(k, 0.0), inc, ref, a, sites);
    psi /= psi.norm();

    BoundaryEigenfunction fn;
    fn.omega = epsilon * dispersion_omega(k, p);
    fn.reflection = a;
    fn.state = psi;
    fn.residual = one_boundary_residual(type1_boundary_row(p, upsilon), p, inc.eigenvalue(), psi);
    return fn;
}

BoundaryEigenfunction assemble_type2_eigenfunction(double k, int epsilon, const RuleParams& p,
                                                   double zeta, int sites) {
    const auto inc = planewave_spinor(Complex(k, 0.0), epsilon, p);
    const auto ref = planewave_spinor(Complex(-k, 0.0), epsilon, p);
    const Complex a = reflection_type2(k, epsilon, p, zeta);

    State psi = eigenfunction_from_amplitudes(Complex(k, 0.0), inc, ref, a, sites);
    // At the boundary the left-moving amplitude vanishes identically and the
    // right-moving one keeps the plane-wave combination.
    psi[0] = Complex(0.0, 0.0);
    psi /= psi.norm();

    BoundaryEigenfunction fn;
    fn.omega = epsilon * dispersion_omega(k, p);
    fn.reflection = a;
    fn.state = psi;
    fn.residual = one_boundary_residual(type2_boundary_row(p, zeta), p, inc.eigenvalue(), psi);
    return fn;
}

Type3Eigenfunction eigenfunction_type3(double k, int epsilon, const RuleParams& p,
                                       double theta_prime, double upsilon, double zeta,
                                       int sites) {
    const auto inc = planewave_spinor(Complex(k, 0.0), epsilon, p);
    const auto ref = planewave_spinor(Complex(-k, 0.0), epsilon, p);
    const Complex lambda = inc.eigenvalue();
    const auto t3 = type3_boundary_row(p, theta_prime, upsilon, zeta);
    const Eigen::Matrix2cd b0 = t3.zero;
    const Eigen::Matrix2cd b1 = t3.plus;

    // Unknowns m = psi_{-1}(0) and A, from the boundary row applied to the
    // ansatz psi(x >= 1) = psi^(k) + A psi^(-k), psi_{+1}(0) from the same
    // combination:
    //   b0 psi(0) + b1 psi(1) = lambda psi(0).
    const Complex u1 = inc.spinor[1];
    const Complex v1 = ref.spinor[1];
    const Eigen::Vector2cd w = inc.spinor * std::exp(kI * Complex(k, 0.0));
    const Eigen::Vector2cd z = ref.spinor * std::exp(-kI * Complex(k, 0.0));

    Eigen::Matrix2cd m;
    Eigen::Vector2cd rhs;
    m(0, 0) = b0(0, 0) - lambda;
    m(0, 1) = b0(0, 1) * v1 + b1(0, 0) * z[0] + b1(0, 1) * z[1];
    rhs[0] = -(b0(0, 1) * u1 + b1(0, 0) * w[0] + b1(0, 1) * w[1]);
    m(1, 0) = b0(1, 0);
    m(1, 1) = b0(1, 1) * v1 + b1(1, 0) * z[0] + b1(1, 1) * z[1] - lambda * v1;
    rhs[1] = -(b0(1, 1) * u1 + b1(1, 0) * w[0] + b1(1, 1) * w[1] - lambda * u1);

    const Eigen::JacobiSVD<Eigen::Matrix2cd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const double smin = svd.singularValues().minCoeff();
    const double smax = svd.singularValues().maxCoeff();
    if (smin <= 0.0 || smax / smin > 1e12)
        throw Error(Errc::SingularSystem, "Type III boundary system is singular (cond = " +
                                              std::to_string(smax / std::max(smin, 1e-300)) + ")");
    const Eigen::Vector2cd sol = svd.solve(rhs);
    const Complex psi_minus_0 = sol[0];
    const Complex a = sol[1];

    State psi = eigenfunction_from_amplitudes(Complex(k, 0.0), inc, ref, a, sites);
    psi[0] = psi_minus_0;
    psi[1] = u1 + a * v1;
    psi /= psi.norm();

    Type3Eigenfunction out;
    out.reflection = a;
    out.psi_minus_at_0 = psi_minus_0;
    out.assembled.omega = epsilon * dispersion_omega(k, p);
    out.assembled.reflection = a;
    out.assembled.state = psi;
    out.assembled.residual = one_boundary_residual({t3.zero, t3.plus}, p, lambda, psi);
    return out;
}

namespace {

// Quantization function in pole-free form: g(k) = 0 exactly where
// tan(Nk) - sin(k) cot(theta) = 0 (the poles of tan map to g = +-sin theta
// != 0).  Equating the left- and right-boundary reflection constraints and
// eliminating omega through the dispersion relation gives
//   e^{2ikN} (sin theta - i sin k cos theta) = sin theta + i sin k cos theta,
// whose real solutions are exactly these k.
struct QuantizationFn {
    int m; // N
    double sin_theta, cos_theta;

    double g(double k) const {
        return std::sin(m * k) * sin_theta - std::sin(k) * cos_theta * std::cos(m * k);
    }
    double dg(double k) const {
        return m * std::cos(m * k) * sin_theta -
               cos_theta * (std::cos(k) * std::cos(m * k) - m * std::sin(k) * std::sin(m * k));
    }
    double tan_form(double k) const {
        return std::tan(m * k) - std::sin(k) * (cos_theta / sin_theta);
    }
};

double bisect_and_polish(const QuantizationFn& fn, double lo, double hi) {
    double flo = fn.g(lo);
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = fn.g(mid);
        if ((flo <= 0.0) == (fmid <= 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    double k = 0.5 * (lo + hi);
    for (int it = 0; it < 8; ++it) {
        const double d = fn.dg(k);
        if (d == 0.0) break;
        const double step = fn.g(k) / d;
        k -= step;
        if (std::abs(step) < 1e-16) break;
    }
    return k;
}

} // namespace

std::vector<double> quantization_roots(int size, double theta) {
    if (size < 3) throw Error(Errc::InvalidArgument, "quantization condition needs N >= 3");
    QuantizationFn fn{size, std::sin(theta), std::cos(theta)};

    // The endpoints k = 0 and pi satisfy the condition identically but carry
    // no eigenfunction: there psi^(k) = psi^(-k) and the reflection
    // coefficient is exactly -1, so the combined wave vanishes.  The genuine
    // roots are the N-1 interior ones, bracketed by the poles of tan(Nk) at
    // (n + 1/2) pi / N.
    std::vector<double> cuts{0.0};
    for (int n = 0;; ++n) {
        const double pole = (n + 0.5) * kPi / fn.m;
        if (pole >= kPi) break;
        cuts.push_back(pole);
    }
    cuts.push_back(kPi);

    std::vector<double> roots;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const int subdiv = 8;
        const double width = cuts[i + 1] - cuts[i];
        double prev = cuts[i] + width * 1e-9;
        double fprev = fn.g(prev);
        for (int s = 1; s <= subdiv; ++s) {
            const double next = cuts[i] + width * (s == subdiv ? 1.0 - 1e-9 : s / double(subdiv));
            const double fnext = fn.g(next);
            if ((fprev <= 0.0) != (fnext <= 0.0)) {
                const double root = bisect_and_polish(fn, prev, next);
                if (root > 1e-9 && root < kPi - 1e-9) roots.push_back(root);
            }
            prev = next;
            fprev = fnext;
        }
    }

    std::sort(roots.begin(), roots.end());
    std::vector<double> unique_roots;
    for (double r : roots) {
        if (unique_roots.empty() || r - unique_roots.back() > 1e-9) unique_roots.push_back(r);
    }
    return unique_roots;
}

double quantization_omega(double k, double theta) {
    return std::acos(clamp_unit(std::cos(k) * std::cos(theta)));
}

std::vector<double> quantization_roots_general(int size, const RuleParams& p, double upsilon,
                                               int grid) {
    if (size < 3) throw Error(Errc::InvalidArgument, "quantization scan needs N >= 3");
    const double margin = 1e-4;

    auto mismatch = [&](double k) -> double {
        const Complex al = reflection_type1(k, +1, p, upsilon);
        const Complex ar = reflection_type1_right(k, +1, p, upsilon, size);
        return std::arg(al / ar);
    };

    std::vector<double> roots;
    double prev_k = margin;
    double prev_d;
    try {
        prev_d = mismatch(prev_k);
    } catch (const Error&) {
        prev_d = 0.0;
    }
    for (int i = 1; i <= grid; ++i) {
        const double k = margin + (kPi - 2 * margin) * i / double(grid);
        double d;
        try {
            d = mismatch(k);
        } catch (const Error&) {
            prev_k = k;
            continue;
        }
        // A sign change of the wrapped phase counts only when it does not
        // pass through +-pi.
        if ((prev_d <= 0.0) != (d <= 0.0) && std::abs(prev_d) + std::abs(d) < kPi) {
            double lo = prev_k, hi = k, dlo = prev_d;
            for (int it = 0; it < 100 && hi - lo > 1e-14; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double dm = mismatch(mid);
                if ((dlo <= 0.0) == (dm <= 0.0)) {
                    lo = mid;
                    dlo = dm;
                } else {
                    hi = mid;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        prev_k = k;
        prev_d = d;
    }
    return roots;
}

std::array<TrappedRoot, 2> trapped_wavenumbers(double theta) {
    const double ct = std::cos(theta);
    if (std::abs(ct) < 1e-15)
        throw Error(Errc::InvalidArgument, "trapped-mode roots need cos(theta) != 0");
    const double tt = std::tan(theta), sec = 1.0 / ct;

    std::array<TrappedRoot, 2> out;
    const double candidates[2] = {-tt + sec, -tt - sec};
    for (int i = 0; i < 2; ++i) {
        const double r = candidates[i];
        TrappedRoot root;
        root.e_ik = Complex(r, 0.0);
        root.abs_e_ik = std::abs(r);
        // k from e^{ik} without logs near branch cuts: real positive r gives
        // pure imaginary k, negative r adds the pi real part.
        root.k = (r > 0.0) ? Complex(0.0, -std::log(r)) : Complex(kPi, -std::log(-r));
        const double cos_k = 0.5 * (r + 1.0 / r);
        root.omega = std::acos(clamp_unit(cos_k * ct));
        root.decays_rightward = root.abs_e_ik < 1.0;
        root.band_edge_degenerate = std::abs(root.abs_e_ik - 1.0) < 1e-12;
        out[static_cast<std::size_t>(i)] = root;
    }
    return out;
}

const char* mode_class_name(ModeClass c) {
    switch (c) {
        case ModeClass::InBand: return "in-band";
        case ModeClass::Trapped: return "trapped";
        case ModeClass::Corner: return "corner";
    }
    return "?";
}

SpectralResult full_spectrum(const GlobalOperator& op, int cap) {
    const Eigen::MatrixXcd u = dense(op, cap);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(u, /*computeEigenvectors=*/true);
    if (solver.info() != Eigen::Success) {
        std::ofstream dump("qlga_eigen_failure.txt");
        dump << u << "\n";
        throw Error(Errc::ConvergenceFailure,
                    "dense eigensolver did not converge; matrix dumped to qlga_eigen_failure.txt");
    }

    std::vector<BandRange> bands;
    for (const auto& p : op.segment_params) bands.push_back(band_range(p));

    SpectralResult result;
    const int dim = op.dim();
    for (int i = 0; i < dim; ++i) {
        EigenPair pair;
        pair.lambda = solver.eigenvalues()[i];
        pair.omega = -std::arg(pair.lambda);
        pair.modulus = std::abs(pair.lambda);
        pair.vector = solver.eigenvectors().col(i);
        pair.residual = (u * pair.vector - pair.lambda * pair.vector).cwiseAbs().maxCoeff();
        result.max_residual = std::max(result.max_residual, pair.residual);

        // Equal phases on both walls make the two corner eigenvalues
        // degenerate, so the solver may hand back mixtures; classify by the
        // total weight on the masked states.
        double corner_weight = 0.0;
        for (int c : op.corner_mask) corner_weight += std::norm(pair.vector[c]);
        if (corner_weight > 0.98) {
            pair.classification = ModeClass::Corner;
        } else {
            bool in_band = false;
            for (const auto& band : bands)
                if (band.contains(std::abs(pair.omega))) in_band = true;
            pair.classification = in_band ? ModeClass::InBand : ModeClass::Trapped;
        }
        result.pairs.push_back(std::move(pair));
    }

    std::stable_sort(result.pairs.begin(), result.pairs.end(), [](const EigenPair& a, const EigenPair& b) {
        if (a.omega != b.omega) return a.omega < b.omega;
        return a.modulus < b.modulus;
    });
    return result;
}

const char* sweep_param_name(SweepParam p) {
    switch (p) {
        case SweepParam::Upsilon: return "upsilon";
        case SweepParam::Zeta: return "zeta";
        case SweepParam::ThetaPrime: return "theta_prime";
    }
    return "?";
}

namespace {

LatticeConfig with_sweep_value(LatticeConfig config, SweepParam param, double value) {
    auto set = [&](BoundarySpec& b) {
        switch (param) {
            case SweepParam::Upsilon: b.upsilon = value; break;
            case SweepParam::Zeta: b.zeta = value; break;
            case SweepParam::ThetaPrime: b.theta_prime = value; break;
        }
    };
    set(config.left);
    set(config.right);
    return config;
}

} // namespace

std::vector<SweepPoint> boundary_sweep(const LatticeConfig& base, SweepParam param,
                                       const std::vector<double>& grid, int cap) {
    std::vector<SweepPoint> points(grid.size());

    // Grid points are independent eigenproblems; solve them on a few worker
    // threads and merge by index so the output order never depends on timing.
    const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers = std::min({grid.size(), hw, std::size_t{8}});
    std::mutex error_mutex;
    std::exception_ptr first_error = nullptr;
    std::vector<std::thread> pool;

    auto run_chunk = [&](std::size_t worker) {
        for (std::size_t i = worker; i < grid.size(); i += workers) {
            try {
                const LatticeConfig config = with_sweep_value(base, param, grid[i]);
                const auto issues = validate_config(config);
                if (!issues.empty())
                    throw Error(Errc::InvalidArgument,
                                "sweep value " + std::to_string(grid[i]) + ": " + issues.front().detail);
                points[i].value = grid[i];
                points[i].spectrum = full_spectrum(assemble_operator(config), cap);
                // Eigenvectors are rarely needed downstream of a sweep and
                // dominate memory on fine grids.
                for (auto& pair : points[i].spectrum.pairs) pair.vector.resize(0);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    if (workers <= 1) {
        run_chunk(0);
    } else {
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run_chunk, w);
        for (auto& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);
    return points;
}

} // namespace qlga
