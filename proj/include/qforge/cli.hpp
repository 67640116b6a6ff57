#pragma once

// Command-line frontend. Exit codes: 0 ok, 1 verification failed, 2 bad
// input, 3 unsupported scheme/target pairing, 4 simulation contract violation.

#include <iosfwd>
#include <string>
#include <vector>

#include "qforge/error.hpp"
#include "qforge/families.hpp"

namespace qforge {

enum ExitCode : int {
    kExitOk = 0,
    kExitVerifyFailed = 1,
    kExitBadInput = 2,
    kExitUnsupported = 3,
    kExitSimulation = 4,
};

int exit_code_for(ErrorCode code);

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "werner:0.5", "bell:0.4,0.3,0.2,0.1", "collins-gisin:0.8,0.3", ... Throws
/// InvalidArgument on an unknown name or wrong parameter count.
FamilyParams parse_family_spec(const std::string& spec);
FamilyParams make_family(const std::string& name, const std::vector<double>& params);
bool is_family_name(const std::string& name);

}  // namespace qforge
