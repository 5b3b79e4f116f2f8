#include "doctest.h"

#include "qlga/errors.hpp"
#include "qlga/spectral.hpp"
#include "test_helpers.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

using namespace qlga;
using qlga::test::AngleGen;
using qlga::test::boundary;
using qlga::test::bounded_homogeneous;
using qlga::test::homogeneous_periodic;

namespace {

constexpr double kPi = 3.14159265358979323846;
const Complex kI{0.0, 1.0};

double in_band_k(AngleGen& gen) { return gen.uniform(0.25, kPi - 0.25); }

} // namespace

TEST_CASE("dispersion: closed-form values") {
    CHECK(dispersion_omega(0.0, {0.2, 0.9}) == doctest::Approx(0.7).epsilon(1e-14));
    CHECK(dispersion_omega(kPi / 4, {0.0, kPi / 4}) == doctest::Approx(kPi / 3).epsilon(1e-14));
    // rho = pi/2: flat band at pi/2 - theta regardless of k.
    for (double k : {0.0, 0.4, 2.2}) {
        CHECK(dispersion_omega(k, {kPi / 2, 0.3}) ==
              doctest::Approx(kPi / 2 - 0.3).epsilon(1e-13));
    }
}

TEST_CASE("dispersion: even in k, principal value in [0, pi]") {
    AngleGen gen(3001);
    for (int i = 0; i < 50; ++i) {
        const RuleParams p{gen.any_angle(), gen.any_angle()};
        const double k = gen.uniform(-kPi, kPi);
        const double w1 = dispersion_omega(k, p);
        const double w2 = dispersion_omega(-k, p);
        CHECK(w1 == doctest::Approx(w2).epsilon(1e-14));
        CHECK(w1 >= 0.0);
        CHECK(w1 <= kPi);
    }
}

TEST_CASE("band range: canonical wedge formula and edge cases") {
    const auto b1 = band_range({0.0, kPi / 4});
    CHECK(b1.omega_min == doctest::Approx(kPi / 4).epsilon(1e-14));
    CHECK(b1.omega_max == doctest::Approx(3 * kPi / 4).epsilon(1e-14));

    const auto b2 = band_range({0.6, 0.6}); // gapless when rho = theta
    CHECK(b2.omega_min == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(b2.omega_max == doctest::Approx(kPi - 1.2).epsilon(1e-14));

    const auto b3 = band_range({kPi / 4, kPi / 3});
    CHECK(b3.omega_min == doctest::Approx(kPi / 12).epsilon(1e-13));
    CHECK(b3.omega_max == doctest::Approx(5 * kPi / 12).epsilon(1e-13));

    // Outside the wedge the extrema still bound every attainable omega.
    AngleGen gen(3002);
    for (int i = 0; i < 20; ++i) {
        const RuleParams p{gen.any_angle(), gen.any_angle()};
        const auto b = band_range(p);
        for (int j = 0; j < 32; ++j) {
            const double w = dispersion_omega(gen.uniform(-kPi, kPi), p);
            CHECK(w >= b.omega_min - 1e-12);
            CHECK(w <= b.omega_max + 1e-12);
        }
    }
}

TEST_CASE("plane-wave spinor: massless decoupled case is a pure right mover") {
    const auto wave = planewave_spinor(Complex(0.9, 0.0), +1, {0.0, 0.0});
    CHECK(std::abs(wave.spinor[0]) < 1e-15);
    CHECK(std::abs(wave.spinor[1]) > 0.1);
    CHECK(wave.omega.real() == doctest::Approx(0.9).epsilon(1e-14));
}

TEST_CASE("plane-wave spinor: worked values at rho = 0, theta = pi/4, k = pi/2") {
    const auto wave = planewave_spinor(Complex(kPi / 2, 0.0), +1, {0.0, kPi / 4});
    CHECK(wave.omega.real() == doctest::Approx(kPi / 2).epsilon(1e-14));
    const double r2 = std::sqrt(0.5);
    CHECK(std::abs(wave.spinor[0] - Complex(-r2, 0.0)) < 1e-14);
    CHECK(std::abs(wave.spinor[1] - Complex(0.0, 1.0 + r2)) < 1e-14);
}

TEST_CASE("plane-wave spinor: eigenvector of the one-step symbol for random real k") {
    AngleGen gen(3003);
    for (int i = 0; i < 100; ++i) {
        const RuleParams p{gen.canonical_angle(), gen.canonical_angle()};
        const double k = gen.uniform(-kPi, kPi);
        const int eps = gen.uniform_int(0, 1) ? 1 : -1;
        PlaneWave wave;
        try {
            wave = planewave_spinor(Complex(k, 0.0), eps, p);
        } catch (const Error& e) {
            CHECK(e.code() == Errc::ZeroSpinor); // degenerate sample
            continue;
        }
        const Eigen::Vector2cd lhs = transfer_matrix(wave.k, p) * wave.unit_spinor;
        const Eigen::Vector2cd rhs = wave.eigenvalue() * wave.unit_spinor;
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("plane-wave spinor: degenerate massless k = 0 reports ZeroSpinor") {
    CHECK_THROWS_AS((void)planewave_spinor(Complex(0.0, 0.0), +1, {0.0, 0.0}), Error);
}

TEST_CASE("Type I reflection: the rho = 0, upsilon = 0 closed form") {
    AngleGen gen(3004);
    for (int i = 0; i < 20; ++i) {
        const double theta = gen.uniform(0.1, kPi / 2 - 0.1);
        const double k = in_band_k(gen);
        const RuleParams p{0.0, theta};
        const Complex a = reflection_type1(k, +1, p, 0.0);

        // A = -e^{-2ik} (e^{ik} cos t - lam + sin t) / (e^{-ik} cos t - lam + sin t)
        const Complex lambda = std::exp(-kI * dispersion_omega(k, p));
        const Complex num = std::exp(kI * k) * std::cos(theta) - lambda + std::sin(theta);
        const Complex den = std::exp(-kI * k) * std::cos(theta) - lambda + std::sin(theta);
        const Complex expected = -std::exp(-2.0 * kI * k) * num / den;
        CHECK(std::abs(a - expected) < 1e-13);
    }
}

TEST_CASE("Type I reflection: worked value at k = pi/2, theta = pi/4") {
    const Complex a = reflection_type1(kPi / 2, +1, {0.0, kPi / 4}, 0.0);
    const double x = 1.0 + std::sqrt(0.5); // 1.7071...
    CHECK(std::abs(a - Complex(x, x)) < 1e-14);
    CHECK(std::abs(a) == doctest::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("Type I reflection: norm identity |A| ||psi(-k)|| = ||psi(k)||") {
    AngleGen gen(3005);
    for (int i = 0; i < 20; ++i) {
        const RuleParams p{gen.uniform(0.0, 1.2), gen.uniform(0.1, 1.4)};
        const double upsilon = gen.any_angle();
        const double k = in_band_k(gen);
        const int eps = gen.uniform_int(0, 1) ? 1 : -1;
        const Complex a = reflection_type1(k, eps, p, upsilon);
        const auto inc = planewave_spinor(Complex(k, 0.0), eps, p);
        const auto ref = planewave_spinor(Complex(-k, 0.0), eps, p);
        CHECK(std::abs(a) * ref.spinor.norm() ==
              doctest::Approx(inc.spinor.norm()).epsilon(1e-9));
    }
}

TEST_CASE("Type I reflection: degenerate denominator is reported") {
    // rho = pi/2 with upsilon = 0: the flat-band case leaves nothing to
    // reflect and the defining quotient degenerates.
    CHECK_THROWS_AS((void)reflection_type1(1.0, +1, {kPi / 2, 0.7}, 0.0), Error);
}

TEST_CASE("right-boundary reflection: lattice-size dependence is a pure phase") {
    const RuleParams p{0.3, 1.0};
    const double k = 1.234, upsilon = 0.8;
    const Complex a16 = reflection_type1_right(k, +1, p, upsilon, 16);
    const Complex a21 = reflection_type1_right(k, +1, p, upsilon, 21);
    CHECK(std::abs(a21 / a16 - std::exp(2.0 * kI * k * 5.0)) < 1e-12);
}

TEST_CASE("right-boundary reflection: rho = 0, upsilon = 0 closed form") {
    AngleGen gen(3006);
    const int n = 10;
    for (int i = 0; i < 20; ++i) {
        const double theta = gen.uniform(0.1, kPi / 2 - 0.1);
        const double k = in_band_k(gen);
        const RuleParams p{0.0, theta};
        const Complex a = reflection_type1_right(k, +1, p, 0.0, n);

        const Complex lambda = std::exp(-kI * dispersion_omega(k, p));
        const Complex num = std::exp(kI * k) * std::cos(theta) - lambda - std::sin(theta);
        const Complex den = std::exp(-kI * k) * std::cos(theta) - lambda - std::sin(theta);
        const Complex expected =
            -std::exp(2.0 * kI * k * static_cast<double>(n - 1)) * num / den;
        CHECK(std::abs(a - expected) < 1e-12);
    }
}

TEST_CASE("quantization roots: left and right reflections agree at every root") {
    const RuleParams p{0.0, kPi / 4};
    const auto roots = quantization_roots(16, kPi / 4);
    REQUIRE(roots.size() == 15);
    for (const double k : roots) {
        const Complex al = reflection_type1(k, +1, p, 0.0);
        const Complex ar = reflection_type1_right(k, +1, p, 0.0, 16);
        CHECK(std::abs(al - ar) < 1e-9);
    }
}

TEST_CASE("quantization roots: theta = pi/2 gives the equally spaced interior set") {
    const int n = 16;
    const auto roots = quantization_roots(n, kPi / 2);
    REQUIRE(roots.size() == static_cast<std::size_t>(n - 1));
    for (int i = 1; i <= n - 1; ++i)
        CHECK(roots[static_cast<std::size_t>(i - 1)] ==
              doctest::Approx(i * kPi / n).epsilon(1e-12));
}

TEST_CASE("quantization roots: counts are N-1 whenever the trapped doublet exists") {
    AngleGen gen(3007);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = gen.uniform_int(3, 40);
        const double theta = gen.uniform(0.35, kPi / 2);
        CHECK(quantization_roots(n, theta).size() == static_cast<std::size_t>(n - 1));
    }
}

TEST_CASE("quantization roots: real and trapped modes always fill the full spectrum") {
    // Weak binding (cot(theta) on the order of N or more) pulls the trapped
    // doublet into the band as an extra pair of real roots; in every regime
    // 2 * roots + (below-band modes) = 2N.
    AngleGen gen(3014);
    for (int trial = 0; trial < 8; ++trial) {
        const int n = gen.uniform_int(4, 24);
        const double theta = gen.uniform(0.03, kPi / 2 - 0.05);
        const auto roots = quantization_roots(n, theta);

        const auto config = bounded_homogeneous(n, {0.0, theta}, boundary(BoundaryKind::TypeI, 0.0),
                                                boundary(BoundaryKind::TypeI, 0.0));
        const auto spectrum = full_spectrum(assemble_operator(config));
        int below = 0;
        for (const auto& pair : spectrum.pairs)
            if (std::abs(pair.omega) < theta - 1e-12) ++below;
        CHECK(2 * static_cast<int>(roots.size()) + below == 2 * n);

        double worst = 0.0;
        for (const double k : roots) {
            const double omega = quantization_omega(k, theta);
            double best = 1e9;
            for (const auto& pair : spectrum.pairs)
                best = std::min(best, std::abs(std::abs(pair.omega) - omega));
            worst = std::max(worst, best);
        }
        CHECK(worst < 1e-9);
    }
}

TEST_CASE("quantization roots: each root's omega matches a dense eigenfrequency") {
    const double theta = kPi / 4;
    const auto config = bounded_homogeneous(16, {0.0, theta}, boundary(BoundaryKind::TypeI, 0.0),
                                            boundary(BoundaryKind::TypeI, 0.0));
    const auto spectrum = full_spectrum(assemble_operator(config));
    for (const double k : quantization_roots(16, theta)) {
        const double omega = quantization_omega(k, theta);
        double best = 1e9;
        for (const auto& pair : spectrum.pairs)
            best = std::min(best, std::abs(std::abs(pair.omega) - omega));
        CHECK(best < 1e-6);
    }
}

TEST_CASE("general quantization scan: reproduces the closed form and general dense spectra") {
    const auto closed = quantization_roots(16, kPi / 4);
    const auto scanned = quantization_roots_general(16, {0.0, kPi / 4}, 0.0);
    REQUIRE(scanned.size() == closed.size());
    for (std::size_t i = 0; i < closed.size(); ++i)
        CHECK(scanned[i] == doctest::Approx(closed[i]).epsilon(1e-10));

    // No closed form here: rho != 0 and a nonzero boundary phase.
    const RuleParams p{0.5, 1.0};
    const double upsilon = 0.8;
    const auto roots = quantization_roots_general(16, p, upsilon);
    CHECK(!roots.empty());
    const auto config = bounded_homogeneous(16, p, boundary(BoundaryKind::TypeI, upsilon),
                                            boundary(BoundaryKind::TypeI, upsilon));
    const auto spectrum = full_spectrum(assemble_operator(config));
    for (const double k : roots) {
        const double omega = dispersion_omega(k, p);
        double best = 1e9;
        for (const auto& pair : spectrum.pairs)
            best = std::min(best, std::abs(std::abs(pair.omega) - omega));
        CHECK(best < 1e-6);
    }
}

TEST_CASE("Type II reflection: rho = 0 reduction") {
    AngleGen gen(3008);
    for (int i = 0; i < 20; ++i) {
        const double theta = gen.uniform(0.1, kPi / 2 - 0.1);
        const double zeta = gen.any_angle();
        const double k = in_band_k(gen);
        const RuleParams p{0.0, theta};
        const Complex a = reflection_type2(k, +1, p, zeta);

        const auto inc = planewave_spinor(Complex(k, 0.0), +1, p);
        const auto ref = planewave_spinor(Complex(-k, 0.0), +1, p);
        const Complex lambda = inc.eigenvalue();
        const Complex num =
            -lambda * inc.spinor[1] + kI * std::polar(1.0, zeta + k) * inc.spinor[0];
        const Complex den =
            -lambda * ref.spinor[1] + kI * std::polar(1.0, zeta - k) * ref.spinor[0];
        CHECK(std::abs(a + num / den) < 1e-13);
    }
}

TEST_CASE("Type II reflection: norm identity") {
    AngleGen gen(3009);
    for (int i = 0; i < 20; ++i) {
        const RuleParams p{gen.uniform(0.0, 1.2), gen.uniform(0.1, 1.4)};
        const double zeta = gen.any_angle();
        const double k = in_band_k(gen);
        const Complex a = reflection_type2(k, +1, p, zeta);
        const auto inc = planewave_spinor(Complex(k, 0.0), +1, p);
        const auto ref = planewave_spinor(Complex(-k, 0.0), +1, p);
        CHECK(std::abs(a) * ref.spinor.norm() ==
              doctest::Approx(inc.spinor.norm()).epsilon(1e-9));
    }
}

TEST_CASE("assembled eigenfunctions satisfy the one-boundary operator row by row") {
    AngleGen gen(3010);
    for (int i = 0; i < 10; ++i) {
        const RuleParams p{gen.uniform(0.0, 1.2), gen.uniform(0.2, 1.4)};
        const double k = in_band_k(gen);
        const int eps = gen.uniform_int(0, 1) ? 1 : -1;

        const auto f1 = assemble_type1_eigenfunction(k, eps, p, gen.any_angle());
        CHECK(f1.residual <= 1e-10);

        const auto f2 = assemble_type2_eigenfunction(k, eps, p, gen.any_angle());
        CHECK(f2.residual <= 1e-10);
        CHECK(std::abs(f2.state[0]) == 0.0); // no inward mover on the corner
    }
}

TEST_CASE("Type III eigenfunction: theta' = pi/2 reduces to the corner-free Type II solution") {
    AngleGen gen(3011);
    for (int i = 0; i < 10; ++i) {
        const RuleParams p{gen.uniform(0.0, 1.2), gen.uniform(0.2, 1.4)};
        const double k = in_band_k(gen);
        const double upsilon = gen.any_angle(), zeta = gen.any_angle();
        const auto t3 = eigenfunction_type3(k, +1, p, kPi / 2, upsilon, zeta);
        CHECK(std::abs(t3.psi_minus_at_0) < 1e-12);
        CHECK(std::abs(t3.reflection - reflection_type2(k, +1, p, zeta)) < 1e-10);
        CHECK(t3.assembled.residual <= 1e-10);
    }
}

TEST_CASE("Type III eigenfunction: hard-wall boundary over random in-band k") {
    AngleGen gen(3012);
    const RuleParams p{0.0, kPi / 4};
    for (int i = 0; i < 10; ++i) {
        const double k = in_band_k(gen);
        const auto t3 = eigenfunction_type3(k, +1, p, 0.0, 0.0, 0.0);
        CHECK(t3.assembled.residual <= 1e-8);
    }
}

TEST_CASE("Type III eigenfunction: matches the dense eigenvector at an eigenfrequency") {
    const RuleParams p{kPi / 4, kPi / 3};
    const double theta_prime = 0.4, upsilon = 0.0, zeta = 0.0;
    const int n = 24;
    const auto config = bounded_homogeneous(
        n, p, boundary(BoundaryKind::TypeIII, upsilon, zeta, theta_prime),
        boundary(BoundaryKind::TypeIII, upsilon, zeta, theta_prime));
    const auto spectrum = full_spectrum(assemble_operator(config));

    // Pick the in-band eigenpair closest to band center and invert the
    // dispersion relation for its wavenumber.
    const auto band = band_range(p);
    const double target = 0.5 * (band.omega_min + band.omega_max);
    const EigenPair* pick = nullptr;
    for (const auto& pair : spectrum.pairs) {
        if (pair.classification != ModeClass::InBand || pair.omega < 0) continue;
        if (!pick || std::abs(pair.omega - target) < std::abs(pick->omega - target)) pick = &pair;
    }
    REQUIRE(pick != nullptr);
    const double cos_k = (std::cos(pick->omega) - std::sin(p.theta) * std::sin(p.rho)) /
                         (std::cos(p.theta) * std::cos(p.rho));
    const double k = std::acos(cos_k);

    // At a true eigen-wavenumber the one-boundary assembly reproduces the
    // dense eigenvector up to a global phase everywhere the left wall and the
    // interior govern.  The last site is excluded: its outgoing right mover
    // is never touched by interior rows (the hop blocks are rank 1), so only
    // the right wall fixes it.
    const auto t3 = eigenfunction_type3(k, +1, p, theta_prime, upsilon, zeta, n);
    Eigen::VectorXcd a = t3.assembled.state.head(2 * (n - 1));
    Eigen::VectorXcd v = pick->vector.head(2 * (n - 1));
    a /= a.norm();
    v /= v.norm();
    const Complex overlap = a.dot(v);
    CHECK(std::abs(overlap) > 1.0 - 1e-6);
    const Eigen::VectorXcd aligned = (overlap / std::abs(overlap)) * a;
    CHECK((v - aligned).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("trapped wavenumbers: values, frequencies, and decay sides") {
    const auto roots = trapped_wavenumbers(kPi / 4);
    CHECK(roots[0].e_ik.real() == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-14));
    CHECK(roots[1].e_ik.real() == doctest::Approx(-(std::sqrt(2.0) + 1.0)).epsilon(1e-14));
    // The positive root satisfies the dispersion relation with omega = 0, the
    // negative one with omega = pi.
    CHECK(roots[0].omega == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(roots[1].omega == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(roots[0].decays_rightward);
    CHECK(!roots[1].decays_rightward);
    CHECK(!roots[0].band_edge_degenerate);

    // e^{ik} solves the defining quadratic, and the dispersion relation
    // closes as a polynomial identity in e^{ik} (compared through cosines:
    // acos is sqrt-sensitive exactly at these branch points).
    for (const auto& root : roots) {
        const Complex e = root.e_ik;
        CHECK(std::abs(std::sin(kPi / 4) + 0.5 * (e - 1.0 / e) * std::cos(kPi / 4)) < 1e-14);
        const Complex cos_k = 0.5 * (e + 1.0 / e);
        const Complex lhs = std::cos(Complex(root.omega, 0.0));
        CHECK(std::abs(lhs - cos_k * std::cos(kPi / 4)) < 1e-12);
    }

    const auto degenerate = trapped_wavenumbers(0.0);
    CHECK(degenerate[0].band_edge_degenerate);
    CHECK(degenerate[0].e_ik.real() == doctest::Approx(1.0));
    CHECK(degenerate[1].e_ik.real() == doctest::Approx(-1.0));
}

TEST_CASE("full spectrum: on-site rotation gives two flat bands of multiplicity N") {
    const double theta = 0.7;
    const int n = 6;
    const auto spectrum =
        full_spectrum(assemble_operator(homogeneous_periodic(n, {kPi / 2, theta})));
    int lower = 0, upper = 0;
    for (const auto& pair : spectrum.pairs) {
        if (std::abs(pair.omega - (kPi / 2 - theta)) < 1e-10) ++upper;
        if (std::abs(pair.omega + (kPi / 2 - theta)) < 1e-10) ++lower;
    }
    CHECK(lower == n);
    CHECK(upper == n);
}

TEST_CASE("full spectrum: homogeneous periodic case matches the Fourier prediction") {
    AngleGen gen(3013);
    for (const int n : {4, 8, 16}) {
        const RuleParams p{gen.canonical_angle(), gen.canonical_angle()};
        const auto spectrum = full_spectrum(assemble_operator(homogeneous_periodic(n, p)));

        std::vector<Complex> predicted;
        for (int m = 0; m < n; ++m) {
            const double omega = dispersion_omega(2 * kPi * m / n, p);
            predicted.push_back(std::exp(-kI * omega));
            predicted.push_back(std::exp(kI * omega));
        }
        std::vector<bool> used(predicted.size(), false);
        for (const auto& pair : spectrum.pairs) {
            double best = 1e9;
            std::size_t arg = 0;
            for (std::size_t j = 0; j < predicted.size(); ++j) {
                if (used[j]) continue;
                const double d = std::abs(pair.lambda - predicted[j]);
                if (d < best) {
                    best = d;
                    arg = j;
                }
            }
            used[arg] = true;
            CHECK(best < 1e-10);
        }
    }
}

TEST_CASE("full spectrum: residuals, unit moduli, and the trapped doublet at upsilon = 0") {
    const auto config = bounded_homogeneous(16, {0.0, kPi / 4}, boundary(BoundaryKind::TypeI, 0.0),
                                            boundary(BoundaryKind::TypeI, 0.0));
    const auto spectrum = full_spectrum(assemble_operator(config));
    CHECK(spectrum.max_residual <= 1e-8);
    int trapped = 0;
    for (const auto& pair : spectrum.pairs) {
        CHECK(std::abs(pair.modulus - 1.0) <= 1e-10);
        if (pair.classification == ModeClass::Trapped) {
            ++trapped;
            CHECK(std::abs(pair.omega) < 0.01); // the finely split near-zero pair
        }
    }
    CHECK(trapped == 2);
}

TEST_CASE("full spectrum: Type II corner modes carry |lambda| = sin(rho)") {
    const double rho = 0.4, zeta = 2.2;
    const auto config = bounded_homogeneous(12, {rho, 1.0}, boundary(BoundaryKind::TypeII, 0, zeta),
                                            boundary(BoundaryKind::TypeII, 0, zeta));
    const auto spectrum = full_spectrum(assemble_operator(config));
    int corner = 0, zero_on_corners = 0;
    for (const auto& pair : spectrum.pairs) {
        if (pair.classification == ModeClass::Corner) {
            ++corner;
            CHECK(std::abs(pair.modulus - std::sin(rho)) <= 1e-10);
        } else {
            CHECK(std::abs(pair.modulus - 1.0) <= 1e-10);
            const double corner_amp = std::abs(pair.vector[0]) + std::abs(pair.vector[23]);
            if (corner_amp < 1e-10) ++zero_on_corners;
        }
    }
    CHECK(corner == 2);
    CHECK(zero_on_corners == 2 * 12 - 2);
}

TEST_CASE("trapped-mode envelope decays at the rate set by the trapped wavenumber") {
    const auto config = bounded_homogeneous(32, {0.0, kPi / 4}, boundary(BoundaryKind::TypeI, 0.0),
                                            boundary(BoundaryKind::TypeI, 0.0));
    const auto spectrum = full_spectrum(assemble_operator(config));
    const double expected = trapped_wavenumbers(kPi / 4)[0].abs_e_ik; // sqrt(2) - 1
    int checked = 0;
    for (const auto& pair : spectrum.pairs) {
        if (pair.classification != ModeClass::Trapped) continue;
        ++checked;
        // Geometric fit of the amplitude envelope on the left half, where the
        // left-wall lump dominates the doublet.
        double log_sum = 0.0;
        int count = 0;
        for (int x = 2; x <= 9; ++x) {
            const double a1 =
                std::sqrt(std::norm(pair.vector[2 * x]) + std::norm(pair.vector[2 * x + 1]));
            const double a2 = std::sqrt(std::norm(pair.vector[2 * (x + 1)]) +
                                        std::norm(pair.vector[2 * (x + 1) + 1]));
            log_sum += std::log(a2 / a1);
            ++count;
        }
        const double ratio = std::exp(log_sum / count);
        CHECK(std::abs(ratio - expected) / expected < 0.05);
    }
    CHECK(checked == 2);
}

TEST_CASE("boundary sweep: single point reproduces the plain spectrum") {
    auto config = bounded_homogeneous(8, {0.3, 0.9}, boundary(BoundaryKind::TypeI, 0.0),
                                      boundary(BoundaryKind::TypeI, 0.0));
    const auto points = boundary_sweep(config, SweepParam::Upsilon, {0.0});
    REQUIRE(points.size() == 1);
    const auto direct = full_spectrum(assemble_operator(config));
    REQUIRE(points[0].spectrum.pairs.size() == direct.pairs.size());
    for (std::size_t i = 0; i < direct.pairs.size(); ++i)
        CHECK(std::abs(points[0].spectrum.pairs[i].lambda - direct.pairs[i].lambda) < 1e-12);
}

TEST_CASE("boundary sweep: results are deterministic in grid order") {
    auto config = bounded_homogeneous(8, {kPi / 4, kPi / 3}, boundary(BoundaryKind::TypeII, 0, 0),
                                      boundary(BoundaryKind::TypeII, 0, 0));
    std::vector<double> grid;
    for (int i = 0; i < 12; ++i) grid.push_back(2 * kPi * i / 12);
    const auto run1 = boundary_sweep(config, SweepParam::Zeta, grid);
    const auto run2 = boundary_sweep(config, SweepParam::Zeta, grid);
    REQUIRE(run1.size() == run2.size());
    for (std::size_t i = 0; i < run1.size(); ++i) {
        CHECK(run1[i].value == run2[i].value);
        REQUIRE(run1[i].spectrum.pairs.size() == run2[i].spectrum.pairs.size());
        for (std::size_t j = 0; j < run1[i].spectrum.pairs.size(); ++j)
            CHECK(run1[i].spectrum.pairs[j].lambda == run2[i].spectrum.pairs[j].lambda);
    }
}

TEST_CASE("boundary sweep: sweeping upsilon on a Type II boundary is rejected") {
    auto config = bounded_homogeneous(8, {0.3, 0.9}, boundary(BoundaryKind::TypeII, 0, 0),
                                      boundary(BoundaryKind::TypeII, 0, 0));
    CHECK_THROWS_AS((void)boundary_sweep(config, SweepParam::Upsilon, {0.0, 1.0}), Error);
}
