// qlga: batch driver for one-dimensional quantum lattice-gas simulations.
//
// Subcommands: validate, evolve, spectrum, sweep, dispersion, roots,
// reflection.  All outputs are deterministic: identical inputs give
// byte-identical files.  Exit codes: 0 success, 1 input/validation error,
// 2 numerical failure.

#include "CLI11.hpp"

#include "qlga/config_io.hpp"
#include "qlga/dynamics.hpp"
#include "qlga/errors.hpp"
#include "qlga/lattice.hpp"
#include "qlga/output.hpp"
#include "qlga/spectral.hpp"

#include <complex>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNumerical = 2;

int exit_code_for(const qlga::Error& e) {
    switch (e.code()) {
        case qlga::Errc::ConvergenceFailure:
        case qlga::Errc::DenominatorNearZero:
        case qlga::Errc::SingularSystem:
        case qlga::Errc::ZeroSpinor:
            return kExitNumerical;
        default:
            return kExitInput;
    }
}

std::string out_path(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

struct PacketArgs {
    double k0 = 0.0;
    int center = 0;
    int width = 0;
    int epsilon = +1;
};

PacketArgs parse_packet(const std::string& text) {
    PacketArgs p;
    char sep1, sep2, sep3;
    std::istringstream in(text);
    if (!(in >> p.k0 >> sep1 >> p.center >> sep2 >> p.width >> sep3 >> p.epsilon) || sep1 != ',' ||
        sep2 != ',' || sep3 != ',' || !(p.epsilon == 1 || p.epsilon == -1)) {
        throw qlga::Error(qlga::Errc::InvalidArgument,
                          "--packet expects k0,x0,width,epsilon (epsilon = +-1): got \"" + text + "\"");
    }
    return p;
}

struct GridArgs {
    double from = 0.0;
    double to = 0.0;
    int count = 0;
};

GridArgs parse_grid(const std::string& text) {
    GridArgs g;
    char sep1, sep2;
    std::istringstream in(text);
    if (!(in >> g.from >> sep1 >> g.to >> sep2 >> g.count) || sep1 != ':' || sep2 != ':' ||
        g.count < 1) {
        throw qlga::Error(qlga::Errc::InvalidArgument,
                          "--grid expects a:b:n with n >= 1: got \"" + text + "\"");
    }
    return g;
}

qlga::LatticeConfig load_valid_config(const std::string& path) {
    qlga::LatticeConfig config = qlga::load_config(path);
    const auto issues = qlga::validate_config(config);
    if (!issues.empty()) {
        std::ostringstream msg;
        msg << "config " << path << " failed validation:";
        for (const auto& issue : issues)
            msg << "\n  " << qlga::config_issue_name(issue.code) << ": " << issue.detail;
        throw qlga::Error(qlga::Errc::InvalidArgument, msg.str());
    }
    return config;
}

int cmd_validate(const std::string& config_path) {
    qlga::LatticeConfig config = qlga::load_config(config_path);
    const auto issues = qlga::validate_config(config);
    if (!issues.empty()) {
        for (const auto& issue : issues)
            std::cout << "violation: " << qlga::config_issue_name(issue.code) << ": " << issue.detail
                      << "\n";
        return kExitInput;
    }

    const auto op = qlga::assemble_operator(config);
    const auto report = qlga::unitarity_report(op);
    std::cout << "valid: N = " << config.size << ", " << (op.periodic ? "periodic" : "bounded")
              << "\n";
    std::cout << "unitarity residual (full space): " << qlga::format_double(report.full_residual)
              << "\n";
    if (!report.corners.empty()) {
        std::cout << "unitarity residual (corner complement): "
                  << qlga::format_double(report.physical_residual) << "\n";
        for (const auto& corner : report.corners) {
            std::cout << "corner state " << corner.index << " -> amplitude ("
                      << qlga::format_double(corner.mapped_amplitude.real()) << ", "
                      << qlga::format_double(corner.mapped_amplitude.imag()) << "), modulus "
                      << qlga::format_double(std::abs(corner.mapped_amplitude)) << ", leak "
                      << qlga::format_double(corner.off_corner_leak) << "\n";
        }
    }
    if (!report.physical_ok()) {
        std::cout << "FAIL: residual above 1e-12 on the physical subspace\n";
        return kExitNumerical;
    }
    return kExitOk;
}

int cmd_evolve(const std::string& config_path, const std::string& packet_text, int steps,
               int stride, const std::string& out_dir, bool heatmap, bool amplitudes) {
    const auto config = load_valid_config(config_path);
    const auto op = qlga::assemble_operator(config);
    const PacketArgs packet = parse_packet(packet_text);
    const qlga::State initial =
        qlga::binomial_packet({packet.k0, packet.center, packet.width, packet.epsilon}, config);

    const auto traj = qlga::evolve(op, initial, steps, stride, amplitudes);
    qlga::write_file_atomic(out_path(out_dir, "trajectory.csv"), qlga::trajectory_csv(traj));
    if (amplitudes)
        qlga::write_file_atomic(out_path(out_dir, "amplitudes.csv"),
                                qlga::trajectory_amplitude_csv(traj));
    if (heatmap) {
        double clip = 0.0;
        qlga::write_file_atomic(out_path(out_dir, "heatmap.pgm"),
                                qlga::trajectory_pgm(traj, 0.0, &clip));
        qlga::write_file_atomic(out_path(out_dir, "heatmap_scale.txt"),
                                qlga::pgm_scale_sidecar(traj, clip));
    }
    std::cout << "wrote " << traj.frames.size() << " frames for " << config.size << " sites to "
              << out_dir << "\n";
    return kExitOk;
}

int cmd_spectrum(const std::string& config_path, const std::string& out_dir) {
    const auto config = load_valid_config(config_path);
    const auto spectrum = qlga::full_spectrum(qlga::assemble_operator(config));
    std::vector<qlga::SweepPoint> points(1);
    points[0].value = 0.0;
    points[0].spectrum = spectrum;
    qlga::write_file_atomic(out_path(out_dir, "spectrum.csv"), qlga::spectrum_csv(points));
    std::cout << "wrote " << spectrum.pairs.size() << " eigenpairs, max residual "
              << qlga::format_double(spectrum.max_residual) << "\n";
    return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& param_name,
              const std::string& grid_text, const std::string& out_dir) {
    const auto config = load_valid_config(config_path);
    qlga::SweepParam param;
    if (param_name == "upsilon") param = qlga::SweepParam::Upsilon;
    else if (param_name == "zeta") param = qlga::SweepParam::Zeta;
    else if (param_name == "theta_prime") param = qlga::SweepParam::ThetaPrime;
    else
        throw qlga::Error(qlga::Errc::InvalidArgument,
                          "--param must be upsilon, zeta, or theta_prime: got \"" + param_name + "\"");

    const GridArgs grid = parse_grid(grid_text);
    std::vector<double> values;
    for (int i = 0; i < grid.count; ++i)
        values.push_back(grid.from + (grid.to - grid.from) * i / static_cast<double>(grid.count));

    const auto points = qlga::boundary_sweep(config, param, values);
    qlga::write_file_atomic(out_path(out_dir, "sweep.csv"), qlga::spectrum_csv(points));
    std::cout << "wrote " << points.size() << " sweep points\n";
    return kExitOk;
}

int cmd_dispersion(double rho, double theta, double kmin, double kmax, int n,
                   const std::optional<std::string>& out_dir) {
    if (n < 1) throw qlga::Error(qlga::Errc::InvalidArgument, "--n must be at least 1");
    std::vector<double> ks;
    for (int i = 0; i < n; ++i)
        ks.push_back(n == 1 ? kmin : kmin + (kmax - kmin) * i / static_cast<double>(n - 1));
    const std::string csv = qlga::dispersion_csv(ks, {rho, theta});
    if (out_dir) qlga::write_file_atomic(out_path(*out_dir, "dispersion.csv"), csv);
    else std::cout << csv;
    return kExitOk;
}

int cmd_roots(int size, double theta, const std::optional<std::string>& out_dir) {
    const auto roots = qlga::quantization_roots(size, theta);
    const std::string csv = qlga::roots_csv(roots, theta);
    if (out_dir) qlga::write_file_atomic(out_path(*out_dir, "roots.csv"), csv);
    else std::cout << csv;
    return kExitOk;
}

int cmd_reflection(const std::string& type, double k, int epsilon, double rho, double theta,
                   double upsilon, double zeta, int size) {
    std::complex<double> a;
    if (type == "I") a = qlga::reflection_type1(k, epsilon, {rho, theta}, upsilon);
    else if (type == "I_right") a = qlga::reflection_type1_right(k, epsilon, {rho, theta}, upsilon, size);
    else if (type == "II") a = qlga::reflection_type2(k, epsilon, {rho, theta}, zeta);
    else
        throw qlga::Error(qlga::Errc::InvalidArgument,
                          "--type must be I, I_right, or II: got \"" + type + "\"");
    std::cout << "re_a,im_a,abs_a\n"
              << qlga::format_double(a.real()) << ',' << qlga::format_double(a.imag()) << ','
              << qlga::format_double(std::abs(a)) << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"One-particle quantum lattice-gas automata: evolution and spectra"};
    app.require_subcommand(1);

    // Accepted everywhere for scripting symmetry; the tool never draws random
    // numbers, so there is nothing to seed.
    bool seedless = false;
    app.add_flag("--seedless", seedless, "assert that no RNG is involved (always true)");

    std::string config_path, out_dir = ".", packet_text, param_name, grid_text, type;
    int steps = 0, stride = 1, size = 16, epsilon = 1, n = 64;
    double rho = 0.0, theta = 0.0, kmin = 0.0, kmax = 3.14159265358979323846;
    double k = 0.0, upsilon = 0.0, zeta = 0.0;
    bool heatmap = false, amplitudes = false;

    auto* validate = app.add_subcommand("validate", "validate a config and report unitarity");
    validate->add_option("--config", config_path, "lattice config JSON")->required();

    auto* evolve = app.add_subcommand("evolve", "evolve a binomial wave packet");
    evolve->add_option("--config", config_path)->required();
    evolve->add_option("--packet", packet_text, "k0,x0,width,epsilon")->required();
    evolve->add_option("--steps", steps, "number of timesteps")->required();
    evolve->add_option("--stride", stride, "recording stride (default 1)");
    evolve->add_option("--out", out_dir, "output directory");
    evolve->add_flag("--heatmap", heatmap, "also write a P5 graymap of p_total");
    evolve->add_flag("--amplitudes", amplitudes, "also dump complex amplitudes");

    auto* spectrum = app.add_subcommand("spectrum", "dense spectrum of the assembled operator");
    spectrum->add_option("--config", config_path)->required();
    spectrum->add_option("--out", out_dir);

    auto* sweep = app.add_subcommand("sweep", "spectra over a boundary-parameter grid");
    sweep->add_option("--config", config_path)->required();
    sweep->add_option("--param", param_name, "upsilon | zeta | theta_prime")->required();
    sweep->add_option("--grid", grid_text, "a:b:n, n values evenly spaced in [a, b)")->required();
    sweep->add_option("--out", out_dir);

    auto* dispersion = app.add_subcommand("dispersion", "omega(k) table");
    dispersion->add_option("--rho", rho)->required();
    dispersion->add_option("--theta", theta)->required();
    dispersion->add_option("--kmin", kmin);
    dispersion->add_option("--kmax", kmax);
    dispersion->add_option("--n", n, "sample count, endpoints included");
    bool dispersion_to_file = false;
    dispersion->add_flag("--to-file", dispersion_to_file, "write dispersion.csv under --out");
    dispersion->add_option("--out", out_dir);

    auto* roots = app.add_subcommand("roots", "quantization roots for rho = 0, upsilon = 0");
    roots->add_option("--N", size, "lattice size")->required();
    roots->add_option("--theta", theta)->required();
    bool roots_to_file = false;
    roots->add_flag("--to-file", roots_to_file, "write roots.csv under --out");
    roots->add_option("--out", out_dir);

    auto* reflection = app.add_subcommand("reflection", "boundary reflection amplitude");
    reflection->add_option("--type", type, "I | I_right | II")->required();
    reflection->add_option("--k", k)->required();
    reflection->add_option("--epsilon", epsilon, "+1 or -1");
    reflection->add_option("--rho", rho)->required();
    reflection->add_option("--theta", theta)->required();
    reflection->add_option("--upsilon", upsilon);
    reflection->add_option("--zeta", zeta);
    reflection->add_option("--N", size, "lattice size (I_right only)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (validate->parsed()) return cmd_validate(config_path);
        if (evolve->parsed())
            return cmd_evolve(config_path, packet_text, steps, stride, out_dir, heatmap, amplitudes);
        if (spectrum->parsed()) return cmd_spectrum(config_path, out_dir);
        if (sweep->parsed()) return cmd_sweep(config_path, param_name, grid_text, out_dir);
        if (dispersion->parsed())
            return cmd_dispersion(rho, theta, kmin, kmax, n,
                                  dispersion_to_file ? std::optional<std::string>(out_dir)
                                                     : std::nullopt);
        if (roots->parsed())
            return cmd_roots(size, theta,
                             roots_to_file ? std::optional<std::string>(out_dir) : std::nullopt);
        if (reflection->parsed())
            return cmd_reflection(type, k, epsilon, rho, theta, upsilon, zeta, size);
    } catch (const qlga::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
