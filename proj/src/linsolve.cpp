#include "vseq/linsolve.hpp"

namespace vseq {

void LinearSystem::add(int row, int col, const Rational& v) {
    if (is_zero(v)) return;
    auto& r = rows_[row];
    r[col] += v;
    if (is_zero(r[col])) r.erase(col);
}

void LinearSystem::add_rhs(int row, const Rational& v) {
    if (is_zero(v)) return;
    rhs_[row] += v;
    if (is_zero(rhs_[row])) rhs_.erase(row);
}

std::optional<std::vector<Rational>> LinearSystem::solve() const {
    struct PivotRow {
        int col;
        std::map<int, Rational> coeffs; // normalized, pivot coefficient 1
        Rational rhs;
    };
    std::vector<PivotRow> pivots;
    std::map<int, int> pivot_of_col;

    std::vector<int> keys;
    for (const auto& [k, _] : rows_) keys.push_back(k);
    for (const auto& [k, _] : rhs_)
        if (!rows_.count(k)) keys.push_back(k);

    for (int key : keys) {
        std::map<int, Rational> row;
        if (auto it = rows_.find(key); it != rows_.end()) row = it->second;
        Rational b = 0;
        if (auto it = rhs_.find(key); it != rhs_.end()) b = it->second;

        // reduce against existing pivots; eliminating one pivot column can
        // reintroduce columns of later pivots only, so the restart terminates
        for (auto it = row.begin(); it != row.end();) {
            auto p = pivot_of_col.find(it->first);
            if (p == pivot_of_col.end()) {
                ++it;
                continue;
            }
            const PivotRow& pr = pivots[p->second];
            Rational f = it->second;
            for (const auto& [c, v] : pr.coeffs) {
                row[c] -= f * v;
                if (is_zero(row[c])) row.erase(c);
            }
            b -= f * pr.rhs;
            it = row.begin();
        }

        if (row.empty()) {
            if (!is_zero(b)) return std::nullopt; // 0 = nonzero
            continue;
        }
        PivotRow pr;
        pr.col = row.begin()->first;
        Rational inv = 1 / row.begin()->second;
        for (const auto& [c, v] : row) pr.coeffs[c] = v * inv;
        pr.rhs = b * inv;
        pivot_of_col[pr.col] = static_cast<int>(pivots.size());
        pivots.push_back(std::move(pr));
    }

    std::vector<Rational> x(cols_, Rational(0));
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
        Rational v = it->rhs;
        for (const auto& [c, coeff] : it->coeffs)
            if (c != it->col) v -= coeff * x[c];
        x[it->col] = v;
    }
    return x;
}

} // namespace vseq
