#include "qlga/output.hpp"
#include "qlga/errors.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace qlga {

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(Errc::InvalidArgument, "cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw Error(Errc::InvalidArgument, "short write to " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::string trajectory_csv(const Trajectory& traj) {
    std::ostringstream out;
    out << "t,x,p_minus,p_plus,p_total\n";
    for (const auto& frame : traj.frames) {
        for (int x = 0; x < traj.size; ++x) {
            const double pm = frame.p_minus[static_cast<std::size_t>(x)];
            const double pp = frame.p_plus[static_cast<std::size_t>(x)];
            out << frame.t << ',' << x << ',' << format_double(pm) << ',' << format_double(pp)
                << ',' << format_double(pm + pp) << '\n';
        }
    }
    return out.str();
}

std::string trajectory_amplitude_csv(const Trajectory& traj) {
    std::ostringstream out;
    out << "t,x,re_minus,im_minus,re_plus,im_plus\n";
    for (const auto& frame : traj.frames) {
        if (frame.amplitudes.size() != 2 * traj.size)
            throw Error(Errc::InvalidArgument, "trajectory was recorded without amplitudes");
        for (int x = 0; x < traj.size; ++x) {
            const Complex lm = frame.amplitudes[2 * x];
            const Complex rm = frame.amplitudes[2 * x + 1];
            out << frame.t << ',' << x << ',' << format_double(lm.real()) << ','
                << format_double(lm.imag()) << ',' << format_double(rm.real()) << ','
                << format_double(rm.imag()) << '\n';
        }
    }
    return out.str();
}

std::string spectrum_csv(const std::vector<SweepPoint>& points) {
    std::ostringstream out;
    out << "param,index,re_lambda,im_lambda,omega,modulus,classification\n";
    for (const auto& point : points) {
        int index = 0;
        for (const auto& pair : point.spectrum.pairs) {
            out << format_double(point.value) << ',' << index++ << ','
                << format_double(pair.lambda.real()) << ',' << format_double(pair.lambda.imag())
                << ',' << format_double(pair.omega) << ',' << format_double(pair.modulus) << ','
                << mode_class_name(pair.classification) << '\n';
        }
    }
    return out.str();
}

std::string roots_csv(const std::vector<double>& roots, double theta) {
    std::ostringstream out;
    out << "index,k,omega\n";
    for (std::size_t i = 0; i < roots.size(); ++i) {
        out << i << ',' << format_double(roots[i]) << ','
            << format_double(quantization_omega(roots[i], theta)) << '\n';
    }
    return out.str();
}

std::string dispersion_csv(const std::vector<double>& ks, const RuleParams& params) {
    std::ostringstream out;
    out << "k,omega\n";
    for (double k : ks)
        out << format_double(k) << ',' << format_double(dispersion_omega(k, params)) << '\n';
    return out.str();
}

namespace {

double trajectory_max_p(const Trajectory& traj) {
    double max_p = 0.0;
    for (const auto& frame : traj.frames)
        for (int x = 0; x < traj.size; ++x)
            max_p = std::max(max_p, frame.p_minus[static_cast<std::size_t>(x)] +
                                        frame.p_plus[static_cast<std::size_t>(x)]);
    return max_p;
}

} // namespace

std::string trajectory_pgm(const Trajectory& traj, double clip, double* clip_out) {
    const double scale = clip > 0.0 ? clip : trajectory_max_p(traj);
    if (clip_out) *clip_out = scale;

    std::ostringstream out;
    out << "P5\n" << traj.size << ' ' << traj.frames.size() << "\n255\n";
    for (const auto& frame : traj.frames) {
        for (int x = 0; x < traj.size; ++x) {
            const double p = frame.p_minus[static_cast<std::size_t>(x)] +
                             frame.p_plus[static_cast<std::size_t>(x)];
            const double clipped = scale > 0.0 ? std::min(p, scale) / scale : 0.0;
            out.put(static_cast<char>(static_cast<unsigned char>(std::lround(255.0 * clipped))));
        }
    }
    return out.str();
}

std::string pgm_scale_sidecar(const Trajectory& traj, double clip) {
    std::ostringstream out;
    out << "format: P5, one byte per pixel\n"
        << "rows: recorded timesteps, top row t = " << traj.frames.front().t
        << ", bottom row t = " << traj.frames.back().t << "\n"
        << "columns: lattice sites 0.." << traj.size - 1 << "\n"
        << "pixel = round(255 * min(p_total, clip) / clip)\n"
        << "clip: " << format_double(clip) << "\n";
    return out.str();
}

} // namespace qlga
