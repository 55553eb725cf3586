#ifndef ISOVEC_CLI_HPP
#define ISOVEC_CLI_HPP

#include <cstdint>
#include <string>

#include "isovec/solver.hpp"

namespace isovec::cli {

enum ExitCode : int
{
    ok = 0,
    failure = 1, // selftest failure or internal error
    anisotropic = 2,
    parse_error = 3,
    resource_limit = 4,
};

struct Options
{
    SolverOptions solver;
    std::int64_t height = 50; // brute-force budget for selftest
    bool json = true;
};

struct Outcome
{
    int exit_code = ok;
    std::string output;
};

/// Input is a form document {"coefficients": ["1", "-2/3", ...], "label": ...}
/// or a JSON array of them (processed in order; the exit code is the largest).
Outcome cmd_solve(std::string const & input, Options const & opts);

/// {"coefficients": [...], "vector": [...]} -> {"valid": bool}
Outcome cmd_verify(std::string const & input, Options const & opts);

/// Per place of the support and inf: local isotropy, Hasse invariant and
/// the local square class of the determinant.
Outcome cmd_local(std::string const & input, Options const & opts);

enum class Scale
{
    tiny,
    standard,
};

/// Oracle cross-checks. With `inject_fault` every Hilbert symbol is negated
/// for the duration of the run, which must make it fail.
Outcome cmd_selftest(Scale scale, bool inject_fault, Options const & opts);

} // namespace isovec::cli

#endif
