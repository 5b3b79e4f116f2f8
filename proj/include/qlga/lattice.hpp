#pragma once

// Lattice configurations and the assembled global evolution operator.
//
// A configuration is a lattice size N, segments tiling [0, N-1] each with its
// own rule parameters, junctions between adjacent segments, and either
// periodic wrap-around or one boundary condition per end.  Assembly produces
// the block-tridiagonal operator row by row; storage stays per-site so that
// stepping is O(N), with dense materialization available for eigen-solvers.

#include "qlga/weights.hpp"

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qlga {

enum class BoundaryKind { Periodic, TypeI, TypeII, TypeIII };
enum class JunctionKind { TypeI, TypeII, Combined };

const char* boundary_kind_name(BoundaryKind k);
const char* junction_kind_name(JunctionKind k);

struct BoundarySpec {
    BoundaryKind kind = BoundaryKind::Periodic;
    // Only the parameters relevant to the kind may be supplied:
    // upsilon for Type I/III, zeta for Type II/III, theta_prime for Type III.
    std::optional<double> upsilon;
    std::optional<double> zeta;
    std::optional<double> theta_prime;
};

struct Segment {
    int from = 0;
    int to = 0; // inclusive
    RuleParams params;
};

// Junction site semantics.  Type I: `site` is the row carrying w0_hat; the
// segment split must be adjacent to it (the site may belong to either side,
// since its left mover follows the left rule and its right mover the right
// rule).  Type II: `site` is the left site of the bond the inhomogeneity
// crosses, and the split is exactly between site and site+1.  Combined: as
// Type II, with row `site` carrying the hatted blocks.  On periodic lattices
// a junction at site N-1 sits on the wrap-around seam.
struct Junction {
    JunctionKind kind = JunctionKind::TypeI;
    int site = 0;
};

struct LatticeConfig {
    int size = 0;
    bool periodic = false;
    BoundarySpec left;  // ignored when periodic
    BoundarySpec right; // ignored when periodic
    std::vector<Segment> segments;
    std::vector<Junction> junctions;

    const Segment& segment_at(int site) const;
};

enum class ConfigIssueCode {
    SizeTooSmall,
    GapInSegments,
    OverlapInSegments,
    ThetaMismatchAtTypeI,
    RhoMismatchAtTypeII,
    BoundaryParamMismatch,
    JunctionPlacement,
    MissingJunction,
};

const char* config_issue_name(ConfigIssueCode c);

struct ConfigIssue {
    ConfigIssueCode code;
    std::string detail;
};

// Semantic validation; an empty list means the config is valid.  Angle
// equality at junctions is checked to 1e-12.
std::vector<ConfigIssue> validate_config(const LatticeConfig& config);

// One row of the block-tridiagonal operator.  For bounded lattices the minus
// block of row 0 and the plus block of row N-1 are unused (kept zero).
struct BlockRow {
    WeightBlock minus = WeightBlock::Zero();
    WeightBlock zero = WeightBlock::Zero();
    WeightBlock plus = WeightBlock::Zero();
};

struct GlobalOperator {
    int size = 0;
    bool periodic = false;
    std::vector<BlockRow> rows;
    // Flat basis indices (2*site + component) of decoupled Type II corner
    // states; empty unless a boundary is Type II.  Index 0 is the left-mover
    // corner at site 0, 2N-1 the right-mover corner at site N-1.
    std::vector<int> corner_mask;
    // Rule parameters of the segments the operator was assembled from, kept
    // for band classification of its spectrum.
    std::vector<RuleParams> segment_params;

    int dim() const { return 2 * size; }
};

// Requires a valid config (throws Errc::InvalidArgument otherwise).
GlobalOperator assemble_operator(const LatticeConfig& config);

// One evolution step, O(N).  state.size() must equal 2N.
Eigen::VectorXcd step(const GlobalOperator& op, const Eigen::VectorXcd& state);

// Dense 2N x 2N materialization; refuses sizes above `cap` (CapExceeded).
constexpr int kDefaultDenseCap = 512;
Eigen::MatrixXcd dense(const GlobalOperator& op, int cap = kDefaultDenseCap);

// Unitarity diagnostics.  Reports residuals, never throws: for Type II
// boundaries the full matrix is expected to fail with the defect confined to
// the masked corner states.
struct CornerReport {
    int index = 0;             // flat basis index
    Complex mapped_amplitude;  // <corner| U |corner>; modulus sin(rho)
    double off_corner_leak = 0.0; // residual coupling between corner and rest
};

struct UnitarityReport {
    double full_residual = 0.0;     // max entrywise |U*U - I|, |UU* - I|, full space
    double physical_residual = 0.0; // same restricted to the corner complement
    std::vector<CornerReport> corners;
    bool physical_ok(double tol = 1e-12) const { return physical_residual <= tol; }
};

UnitarityReport unitarity_report(const GlobalOperator& op, int cap = kDefaultDenseCap);

} // namespace qlga
