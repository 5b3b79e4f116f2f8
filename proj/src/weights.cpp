#include "qlga/weights.hpp"
#include "qlga/errors.hpp"

#include <cmath>

namespace qlga {

namespace {
constexpr Complex kI{0.0, 1.0};
}

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::LengthMismatch: return "LengthMismatch";
        case Errc::CapExceeded: return "CapExceeded";
        case Errc::OutOfRange: return "OutOfRange";
        case Errc::BadRange: return "BadRange";
        case Errc::ZeroSpinor: return "ZeroSpinor";
        case Errc::DenominatorNearZero: return "DenominatorNearZero";
        case Errc::SingularSystem: return "SingularSystem";
        case Errc::ConvergenceFailure: return "ConvergenceFailure";
        case Errc::InvalidArgument: return "InvalidArgument";
    }
    return "UnknownError";
}

BulkWeights bulk_weights(const RuleParams& p) {
    const double cr = std::cos(p.rho), sr = std::sin(p.rho);
    const double ct = std::cos(p.theta), st = std::sin(p.theta);

    BulkWeights w;
    w.minus << 0.0, kI * st,
               0.0, ct;
    w.minus *= cr;

    w.plus << ct, 0.0,
              kI * st, 0.0;
    w.plus *= cr;

    w.zero << st, -kI * ct,
              -kI * ct, st;
    w.zero *= sr;
    return w;
}

WeightBlock type1_boundary_w0(const RuleParams& p, double upsilon) {
    const double sr = std::sin(p.rho);
    const double ct = std::cos(p.theta), st = std::sin(p.theta);
    const Complex eiu = std::polar(1.0, upsilon);

    WeightBlock b;
    b << eiu * st, -kI * ct * sr,
         -kI * eiu * ct, st * sr;
    return b;
}

WeightBlock type1_junction_w0(double rho_left, double theta, double rho_right) {
    const double sl = std::sin(rho_left), sr = std::sin(rho_right);
    const double ct = std::cos(theta), st = std::sin(theta);

    WeightBlock b;
    b << st * sl, -kI * ct * sr,
         -kI * ct * sl, st * sr;
    return b;
}

BoundaryRow type2_boundary_row(const RuleParams& p, double zeta) {
    const double cr = std::cos(p.rho), sr = std::sin(p.rho);
    const Complex eiz = std::polar(1.0, zeta);

    BoundaryRow row;
    row.zero = eiz * sr * WeightBlock::Identity();
    row.plus << 0.0, 0.0,
                kI, 0.0;
    row.plus *= eiz * cr;
    return row;
}

Type3BoundaryBlocks type3_boundary_row(const RuleParams& p, double theta_prime,
                                       double upsilon, double zeta) {
    const double cr = std::cos(p.rho), sr = std::sin(p.rho);
    const double ctp = std::cos(theta_prime), stp = std::sin(theta_prime);
    const Complex eiu = std::polar(1.0, upsilon);
    const Complex eiz = std::polar(1.0, zeta);

    Type3BoundaryBlocks b;
    b.zero << eiu * stp, -kI * eiz * ctp * sr,
              -kI * eiu * ctp, eiz * stp * sr;

    b.plus << ctp, 0.0,
              kI * stp, 0.0;
    b.plus *= eiz * cr;

    b.minus = bulk_weights(p).minus;
    return b;
}

JunctionBlocks combined_junction_blocks(const RuleParams& left, const RuleParams& right) {
    JunctionBlocks j;
    j.hat_minus = bulk_weights(right).minus;
    j.hat_plus = bulk_weights({right.rho, left.theta}).plus;
    j.hat_zero = type1_junction_w0(left.rho, left.theta, right.rho);
    return j;
}

WeightBlock parity_transform(const WeightBlock& block) {
    WeightBlock out;
    out << block(1, 1), block(1, 0),
           block(0, 1), block(0, 0);
    return out;
}

ReflectedBoundaryRow parity_reflect_boundary(const BoundaryRow& row) {
    return {parity_transform(row.plus), parity_transform(row.zero)};
}

} // namespace qlga
