#ifndef VSEQ_COMMANDS_HPP
#define VSEQ_COMMANDS_HPP

#include "vseq/problem.hpp"
#include "vseq/report.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vseq {

struct CommandOptions {
    std::string field_name;                 // --field
    std::optional<int> ansatz_degree;       // --ansatz-degree
    std::optional<int> quad_nodes;          // --quad-nodes
    std::optional<double> tolerance;        // --tolerance
};

struct CommandResult {
    Report report;
    /// 0: assertions pass, 1: an assertion failed, 2: error.
    int exit_code = 0;
};

std::vector<std::string> command_names();

/// Dispatches one batch command against a parsed problem. Engine errors are
/// rendered into the report with exit code 2 rather than thrown.
CommandResult run_command(const std::string& cmd, const ProblemFile& pf,
                          const CommandOptions& opt = {});

/// Corpus-based property sweep of the symbolic kernel; used by `selftest`.
Report run_selftest();

} // namespace vseq

#endif
