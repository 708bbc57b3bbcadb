#ifndef VSEQ_LINSOLVE_HPP
#define VSEQ_LINSOLVE_HPP

#include "vseq/rational.hpp"

#include <map>
#include <optional>
#include <vector>

namespace vseq {

/// Sparse exact linear system over the rationals. Rows are discovered on the
/// fly (one per interned key), columns are the unknowns. solve() returns any
/// particular solution with free unknowns set to zero, or nothing when the
/// system is inconsistent.
class LinearSystem {
public:
    explicit LinearSystem(int unknowns) : cols_(unknowns) {}

    void add(int row, int col, const Rational& v);
    void add_rhs(int row, const Rational& v);
    int unknowns() const { return cols_; }

    std::optional<std::vector<Rational>> solve() const;

private:
    int cols_;
    std::map<int, std::map<int, Rational>> rows_;
    std::map<int, Rational> rhs_;
};

} // namespace vseq

#endif
