#pragma once

// Deterministic file output: CSV with 17 significant digits, binary P5
// graymaps for spacetime probability plots, and atomic writes (temp file +
// rename) so partially written results never appear under the final name.

#include "qlga/dynamics.hpp"
#include "qlga/spectral.hpp"

#include <string>
#include <vector>

namespace qlga {

// %.17g formatting shared by every emitter.
std::string format_double(double value);

void write_file_atomic(const std::string& path, const std::string& content);

// Trajectory CSV: header t,x,p_minus,p_plus,p_total with rows in (t, x)
// lexicographic order.
std::string trajectory_csv(const Trajectory& traj);

// Amplitude CSV (test flag): t,x,re_minus,im_minus,re_plus,im_plus.
std::string trajectory_amplitude_csv(const Trajectory& traj);

// Spectrum CSV: param,index,re_lambda,im_lambda,omega,modulus,classification.
// A plain spectrum is emitted as a single sweep point with param = value.
std::string spectrum_csv(const std::vector<SweepPoint>& points);

// Roots CSV: index,k,omega.
std::string roots_csv(const std::vector<double>& roots, double theta);

// Dispersion CSV: k,omega.
std::string dispersion_csv(const std::vector<double>& ks, const RuleParams& params);

// 8-bit binary P5 graymap of the trajectory, rows = recorded frames (time
// increasing downward), columns = sites, intensity = round(255 * min(p,
// clip) / clip).  Returns the image bytes; the clip value used is written to
// *clip_out (max p_total over the trajectory unless a positive clip is
// given).
std::string trajectory_pgm(const Trajectory& traj, double clip, double* clip_out);

// Sidecar text describing the intensity scale of a graymap.
std::string pgm_scale_sidecar(const Trajectory& traj, double clip);

} // namespace qlga
