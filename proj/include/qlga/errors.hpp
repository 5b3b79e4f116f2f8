#pragma once

#include <stdexcept>
#include <string>

namespace qlga {

// Runtime failure categories used across the library.  Validation problems in
// lattice configurations are reported separately (see lattice.hpp); Error is
// for contract violations and numerical breakdowns during computation.
enum class Errc {
    LengthMismatch,
    CapExceeded,
    OutOfRange,
    BadRange,
    ZeroSpinor,
    DenominatorNearZero,
    SingularSystem,
    ConvergenceFailure,
    InvalidArgument,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace qlga
