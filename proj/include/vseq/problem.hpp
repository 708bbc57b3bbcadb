#ifndef VSEQ_PROBLEM_HPP
#define VSEQ_PROBLEM_HPP

#include "vseq/variational.hpp"
#include "vseq/vectorfield.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vseq {

/// Parse failure with a source location.
struct ParseError : EngineError {
    int line;
    int column;
    ParseError(int l, int c, const std::string& msg)
        : EngineError(std::to_string(l) + ":" + std::to_string(c) + ": " + msg),
          line(l),
          column(c) {}
};

/// Parsed problem definition: chart system, per-chart data, named vector
/// fields and solver options. The problem block declares the coordinate
/// names before any expression uses them.
struct ProblemFile {
    JetSpace space{1, 1};
    int declared_order = 1;
    std::string cover_name; // empty: single chart

    /// Lagrangian per chart name; single-chart problems use the key "".
    std::map<std::string, Lagrangian> lagrangians;
    std::map<std::string, std::vector<Rational>> centers;
    std::optional<SourceForm> source;
    std::vector<std::pair<std::string, VectorField>> vector_fields;

    int quad_nodes = 64;
    double tolerance = 1e-8;
    AnsatzSpec ansatz;

    const VectorField* find_field(const std::string& name) const;
};

ProblemFile parse_problem(const std::string& text);

/// Canonical form: print(parse(text)) reparses to a structurally equal
/// problem.
std::string print_problem(const ProblemFile& pf);

/// Expression parser against an existing space (used by tests and tools).
Expr parse_expression(const JetSpace& space, const std::string& text);

} // namespace vseq

#endif
