#include "qlga/lattice.hpp"
#include "qlga/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qlga {

namespace {

constexpr double kAngleTol = 1e-12;

bool params_equal(const RuleParams& a, const RuleParams& b) {
    return std::abs(a.rho - b.rho) <= kAngleTol && std::abs(a.theta - b.theta) <= kAngleTol;
}

std::string describe_site(const Junction& j) {
    std::ostringstream os;
    os << junction_kind_name(j.kind) << " junction at site " << j.site;
    return os.str();
}

} // namespace

const char* boundary_kind_name(BoundaryKind k) {
    switch (k) {
        case BoundaryKind::Periodic: return "periodic";
        case BoundaryKind::TypeI: return "typeI";
        case BoundaryKind::TypeII: return "typeII";
        case BoundaryKind::TypeIII: return "typeIII";
    }
    return "?";
}

const char* junction_kind_name(JunctionKind k) {
    switch (k) {
        case JunctionKind::TypeI: return "typeI";
        case JunctionKind::TypeII: return "typeII";
        case JunctionKind::Combined: return "combined";
    }
    return "?";
}

const char* config_issue_name(ConfigIssueCode c) {
    switch (c) {
        case ConfigIssueCode::SizeTooSmall: return "SizeTooSmall";
        case ConfigIssueCode::GapInSegments: return "GapInSegments";
        case ConfigIssueCode::OverlapInSegments: return "OverlapInSegments";
        case ConfigIssueCode::ThetaMismatchAtTypeI: return "ThetaMismatchAtTypeI";
        case ConfigIssueCode::RhoMismatchAtTypeII: return "RhoMismatchAtTypeII";
        case ConfigIssueCode::BoundaryParamMismatch: return "BoundaryParamMismatch";
        case ConfigIssueCode::JunctionPlacement: return "JunctionPlacement";
        case ConfigIssueCode::MissingJunction: return "MissingJunction";
    }
    return "?";
}

const Segment& LatticeConfig::segment_at(int site) const {
    for (const auto& s : segments) {
        if (site >= s.from && site <= s.to) return s;
    }
    throw Error(Errc::OutOfRange, "site " + std::to_string(site) + " not covered by any segment");
}

namespace {

void check_boundary_params(const BoundarySpec& b, const char* side,
                           std::vector<ConfigIssue>& issues) {
    auto reject = [&](const char* param) {
        issues.push_back({ConfigIssueCode::BoundaryParamMismatch,
                          std::string(param) + " supplied to a " + boundary_kind_name(b.kind) +
                              " boundary (" + side + ")"});
    };
    const bool has_u = b.upsilon.has_value();
    const bool has_z = b.zeta.has_value();
    const bool has_tp = b.theta_prime.has_value();
    switch (b.kind) {
        case BoundaryKind::Periodic:
            if (has_u) reject("upsilon");
            if (has_z) reject("zeta");
            if (has_tp) reject("theta_prime");
            break;
        case BoundaryKind::TypeI:
            if (has_z) reject("zeta");
            if (has_tp) reject("theta_prime");
            break;
        case BoundaryKind::TypeII:
            if (has_u) reject("upsilon");
            if (has_tp) reject("theta_prime");
            break;
        case BoundaryKind::TypeIII:
            break;
    }
}

} // namespace

std::vector<ConfigIssue> validate_config(const LatticeConfig& config) {
    std::vector<ConfigIssue> issues;
    const int n = config.size;

    const bool left_periodic = config.left.kind == BoundaryKind::Periodic;
    const bool right_periodic = config.right.kind == BoundaryKind::Periodic;
    const bool periodic = config.periodic || (left_periodic && right_periodic);
    if (left_periodic != right_periodic) {
        issues.push_back({ConfigIssueCode::BoundaryParamMismatch,
                          "periodic must be requested on both sides or neither"});
    }

    if (periodic ? n < 3 : n < 2) {
        issues.push_back({ConfigIssueCode::SizeTooSmall,
                          "size " + std::to_string(n) + (periodic ? " < 3 (periodic wrap blocks would collide)"
                                                                  : " < 2 (two boundaries need two sites)")});
        return issues;
    }

    check_boundary_params(config.left, "left", issues);
    check_boundary_params(config.right, "right", issues);

    // Segment tiling of [0, N-1].
    if (config.segments.empty()) {
        issues.push_back({ConfigIssueCode::GapInSegments, "no segments"});
        return issues;
    }
    std::vector<Segment> segs = config.segments;
    std::sort(segs.begin(), segs.end(), [](const Segment& a, const Segment& b) { return a.from < b.from; });
    if (segs.front().from != 0)
        issues.push_back({ConfigIssueCode::GapInSegments, "first segment starts at " + std::to_string(segs.front().from)});
    if (segs.back().to != n - 1)
        issues.push_back({ConfigIssueCode::GapInSegments, "last segment ends at " + std::to_string(segs.back().to)});
    for (std::size_t i = 0; i < segs.size(); ++i) {
        if (segs[i].to < segs[i].from)
            issues.push_back({ConfigIssueCode::GapInSegments, "segment " + std::to_string(i) + " is empty"});
        if (segs[i].to - segs[i].from + 1 < 2)
            issues.push_back({ConfigIssueCode::SizeTooSmall,
                              "segment at site " + std::to_string(segs[i].from) + " spans fewer than 2 sites"});
        if (i + 1 < segs.size()) {
            const int expect = segs[i].to + 1;
            if (segs[i + 1].from > expect)
                issues.push_back({ConfigIssueCode::GapInSegments,
                                  "gap between sites " + std::to_string(segs[i].to) + " and " +
                                      std::to_string(segs[i + 1].from)});
            else if (segs[i + 1].from < expect)
                issues.push_back({ConfigIssueCode::OverlapInSegments,
                                  "segments overlap at site " + std::to_string(segs[i + 1].from)});
        }
    }
    if (!issues.empty()) return issues; // junction matching needs a clean tiling

    // Junction <-> split matching.  Split i sits between segment i and i+1;
    // on periodic lattices the seam between the last and first segment is one
    // more split, mandatory only when the parameters differ across it.
    struct Split {
        int first_right_site; // site just right of the split (mod N on the seam)
        RuleParams left, right;
        bool seam;
        int junction = -1;
    };
    std::vector<Split> splits;
    for (std::size_t i = 0; i + 1 < segs.size(); ++i)
        splits.push_back({segs[i + 1].from, segs[i].params, segs[i + 1].params, false});
    if (periodic)
        splits.push_back({0, segs.back().params, segs.front().params, true});

    std::vector<bool> used(config.junctions.size(), false);
    for (auto& split : splits) {
        for (std::size_t j = 0; j < config.junctions.size(); ++j) {
            if (used[j]) continue;
            const Junction& junc = config.junctions[j];
            const int s = split.first_right_site;
            const int hat_site = split.seam ? n - 1 : s - 1;
            bool match = false;
            if (junc.kind == JunctionKind::TypeI) {
                match = junc.site == hat_site || junc.site == (split.seam ? 0 : s);
            } else {
                match = junc.site == hat_site;
            }
            if (match) {
                split.junction = static_cast<int>(j);
                used[j] = true;
                break;
            }
        }
        if (split.junction < 0) {
            const bool needed = !split.seam || !params_equal(split.left, split.right);
            if (needed)
                issues.push_back({ConfigIssueCode::MissingJunction,
                                  std::string("no junction declared at the ") +
                                      (split.seam ? "periodic seam" : "segment split before site " +
                                                                          std::to_string(split.first_right_site))});
        }
    }
    for (std::size_t j = 0; j < config.junctions.size(); ++j) {
        if (!used[j])
            issues.push_back({ConfigIssueCode::JunctionPlacement,
                              describe_site(config.junctions[j]) + " does not sit at any segment split"});
    }

    // Per-junction checks: angle continuity and interior placement.
    for (const auto& split : splits) {
        if (split.junction < 0) continue;
        const Junction& junc = config.junctions[static_cast<std::size_t>(split.junction)];
        if (junc.kind == JunctionKind::TypeI &&
            std::abs(split.left.theta - split.right.theta) > kAngleTol) {
            issues.push_back({ConfigIssueCode::ThetaMismatchAtTypeI,
                              describe_site(junc) + ": theta changes across a Type I junction"});
        }
        if (junc.kind == JunctionKind::TypeII &&
            std::abs(split.left.rho - split.right.rho) > kAngleTol) {
            issues.push_back({ConfigIssueCode::RhoMismatchAtTypeII,
                              describe_site(junc) + ": rho changes across a Type II junction"});
        }
        if (!periodic) {
            const bool needs_interior_row =
                junc.kind == JunctionKind::TypeI || junc.kind == JunctionKind::Combined;
            const int lo = needs_interior_row ? 1 : 0;
            if (junc.site < lo || junc.site > n - 2)
                issues.push_back({ConfigIssueCode::JunctionPlacement,
                                  describe_site(junc) + " is not interior to the lattice"});
        }
    }

    return issues;
}

namespace {

BoundaryRow make_left_boundary(const RuleParams& p, const BoundarySpec& spec) {
    switch (spec.kind) {
        case BoundaryKind::TypeI:
            return type1_boundary_row(p, spec.upsilon.value_or(0.0));
        case BoundaryKind::TypeII:
            return type2_boundary_row(p, spec.zeta.value_or(0.0));
        case BoundaryKind::TypeIII: {
            const auto t3 = type3_boundary_row(p, spec.theta_prime.value_or(0.0),
                                               spec.upsilon.value_or(0.0), spec.zeta.value_or(0.0));
            return {t3.zero, t3.plus};
        }
        case BoundaryKind::Periodic:
            break;
    }
    throw Error(Errc::InvalidArgument, "periodic side has no boundary row");
}

} // namespace

GlobalOperator assemble_operator(const LatticeConfig& config) {
    const auto issues = validate_config(config);
    if (!issues.empty()) {
        throw Error(Errc::InvalidArgument, "config invalid: " +
                                               std::string(config_issue_name(issues.front().code)) + " (" +
                                               issues.front().detail + ")");
    }

    const int n = config.size;
    const bool periodic =
        config.left.kind == BoundaryKind::Periodic && config.right.kind == BoundaryKind::Periodic;

    GlobalOperator op;
    op.size = n;
    op.periodic = periodic;
    op.rows.resize(static_cast<std::size_t>(n));
    for (const auto& s : config.segments) op.segment_params.push_back(s.params);

    // Bulk rows from segment membership.
    for (int x = 0; x < n; ++x) {
        const auto w = bulk_weights(config.segment_at(x).params);
        op.rows[static_cast<std::size_t>(x)] = {w.minus, w.zero, w.plus};
    }

    // Junction rows.  The primed (left) side of a junction at the periodic
    // seam is the segment ending at N-1, the unprimed side the one at 0.
    std::vector<Segment> segs = config.segments;
    std::sort(segs.begin(), segs.end(), [](const Segment& a, const Segment& b) { return a.from < b.from; });
    for (const auto& junc : config.junctions) {
        const bool seam = periodic && (junc.site == n - 1 || (junc.kind == JunctionKind::TypeI && junc.site == 0));
        RuleParams left, right;
        if (seam) {
            left = segs.back().params;
            right = segs.front().params;
        } else {
            // The split is at the junction site or just right of it; for
            // Type I the site may belong to either side.
            int split = junc.site + 1;
            if (junc.kind == JunctionKind::TypeI) {
                for (const auto& s : segs)
                    if (s.from == junc.site) split = junc.site;
            }
            left = config.segment_at(split - 1).params;
            right = config.segment_at(split).params;
        }

        auto& row = op.rows[static_cast<std::size_t>(junc.site)];
        switch (junc.kind) {
            case JunctionKind::TypeI:
                row.minus = bulk_weights(left).minus;
                row.zero = type1_junction_w0(left.rho, left.theta, right.rho);
                row.plus = bulk_weights(right).plus;
                break;
            case JunctionKind::TypeII:
                // Hatted blocks coincide with the bulk weights on each side;
                // the rows around the bond are already correct.
                break;
            case JunctionKind::Combined: {
                const auto blocks = combined_junction_blocks(left, right);
                row.minus = bulk_weights(left).minus;
                row.zero = blocks.hat_zero;
                row.plus = blocks.hat_plus;
                break;
            }
        }
    }

    // Boundary rows.
    if (!periodic) {
        const RuleParams first = config.segment_at(0).params;
        const RuleParams last = config.segment_at(n - 1).params;

        const BoundaryRow lrow = make_left_boundary(first, config.left);
        op.rows[0].minus = WeightBlock::Zero();
        op.rows[0].zero = lrow.zero;
        op.rows[0].plus = lrow.plus;

        const ReflectedBoundaryRow rrow = parity_reflect_boundary(make_left_boundary(last, config.right));
        op.rows[static_cast<std::size_t>(n - 1)].minus = rrow.minus;
        op.rows[static_cast<std::size_t>(n - 1)].zero = rrow.zero;
        op.rows[static_cast<std::size_t>(n - 1)].plus = WeightBlock::Zero();

        if (config.left.kind == BoundaryKind::TypeII) op.corner_mask.push_back(0);
        if (config.right.kind == BoundaryKind::TypeII) op.corner_mask.push_back(2 * n - 1);
    }

    return op;
}

Eigen::VectorXcd step(const GlobalOperator& op, const Eigen::VectorXcd& state) {
    const int n = op.size;
    if (state.size() != 2 * n)
        throw Error(Errc::LengthMismatch, "state has " + std::to_string(state.size()) +
                                              " amplitudes, operator expects " + std::to_string(2 * n));

    Eigen::VectorXcd out(2 * n);
    auto block_times = [&](const WeightBlock& m, int site, Complex& r0, Complex& r1) {
        const Complex v0 = state[2 * site];
        const Complex v1 = state[2 * site + 1];
        r0 = m(0, 0) * v0 + m(0, 1) * v1;
        r1 = m(1, 0) * v0 + m(1, 1) * v1;
    };

    for (int x = 0; x < n; ++x) {
        const BlockRow& row = op.rows[static_cast<std::size_t>(x)];
        Complex z0, z1;
        block_times(row.zero, x, z0, z1);

        const bool has_minus = op.periodic || x > 0;
        const bool has_plus = op.periodic || x < n - 1;
        // Hop terms are summed first and symmetrically so that parity-mirrored
        // configurations evolve to bit-identical mirrored states.
        Complex h0{0.0, 0.0}, h1{0.0, 0.0};
        if (has_minus && has_plus) {
            Complex m0, m1, p0, p1;
            block_times(row.minus, (x - 1 + n) % n, m0, m1);
            block_times(row.plus, (x + 1) % n, p0, p1);
            h0 = m0 + p0;
            h1 = m1 + p1;
        } else if (has_minus) {
            block_times(row.minus, x - 1, h0, h1);
        } else if (has_plus) {
            block_times(row.plus, x + 1, h0, h1);
        }
        out[2 * x] = z0 + h0;
        out[2 * x + 1] = z1 + h1;
    }
    return out;
}

Eigen::MatrixXcd dense(const GlobalOperator& op, int cap) {
    const int n = op.size;
    if (n > cap)
        throw Error(Errc::CapExceeded, "lattice size " + std::to_string(n) +
                                           " exceeds dense cap " + std::to_string(cap));

    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    auto put = [&](int row_site, int col_site, const WeightBlock& b) {
        u.block<2, 2>(2 * row_site, 2 * col_site) = b;
    };
    for (int x = 0; x < n; ++x) {
        const BlockRow& row = op.rows[static_cast<std::size_t>(x)];
        put(x, x, row.zero);
        if (op.periodic || x > 0) put(x, (x - 1 + n) % n, row.minus);
        if (op.periodic || x < n - 1) put(x, (x + 1) % n, row.plus);
    }
    return u;
}

UnitarityReport unitarity_report(const GlobalOperator& op, int cap) {
    const Eigen::MatrixXcd u = dense(op, cap);
    const int dim = static_cast<int>(u.rows());
    const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(dim, dim);
    const Eigen::MatrixXcd gram = u.adjoint() * u - eye;
    const Eigen::MatrixXcd gram_t = u * u.adjoint() - eye;

    UnitarityReport report;
    report.full_residual = std::max(gram.cwiseAbs().maxCoeff(), gram_t.cwiseAbs().maxCoeff());

    if (op.corner_mask.empty()) {
        report.physical_residual = report.full_residual;
        return report;
    }

    std::vector<int> keep;
    keep.reserve(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) {
        if (std::find(op.corner_mask.begin(), op.corner_mask.end(), i) == op.corner_mask.end())
            keep.push_back(i);
    }
    const int m = static_cast<int>(keep.size());
    Eigen::MatrixXcd v(m, m);
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) v(r, c) = u(keep[static_cast<std::size_t>(r)], keep[static_cast<std::size_t>(c)]);
    const Eigen::MatrixXcd eye_m = Eigen::MatrixXcd::Identity(m, m);
    report.physical_residual = std::max((v.adjoint() * v - eye_m).cwiseAbs().maxCoeff(),
                                        (v * v.adjoint() - eye_m).cwiseAbs().maxCoeff());

    for (int c : op.corner_mask) {
        CornerReport cr;
        cr.index = c;
        cr.mapped_amplitude = u(c, c);
        double leak = 0.0;
        for (int i = 0; i < dim; ++i) {
            if (i == c) continue;
            leak = std::max(leak, std::abs(u(i, c)));
            leak = std::max(leak, std::abs(u(c, i)));
        }
        cr.off_corner_leak = leak;
        report.corners.push_back(cr);
    }
    return report;
}

} // namespace qlga
