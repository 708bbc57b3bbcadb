#include "vseq/jetspace.hpp"

#include <algorithm>

namespace vseq {

MultiIndex::MultiIndex(std::vector<std::uint8_t> dirs) : dirs_(std::move(dirs)) {
    std::sort(dirs_.begin(), dirs_.end());
}

MultiIndex MultiIndex::extended(int mu) const {
    auto d = dirs_;
    d.insert(std::upper_bound(d.begin(), d.end(), static_cast<std::uint8_t>(mu)),
             static_cast<std::uint8_t>(mu));
    MultiIndex out;
    out.dirs_ = std::move(d);
    return out;
}

MultiIndex MultiIndex::reduced(int mu) const {
    auto d = dirs_;
    auto it = std::find(d.begin(), d.end(), static_cast<std::uint8_t>(mu));
    if (it == d.end()) throw EngineError("MultiIndex::reduced: direction not present");
    d.erase(it);
    MultiIndex out;
    out.dirs_ = std::move(d);
    return out;
}

bool MultiIndex::contains(int mu) const {
    return std::find(dirs_.begin(), dirs_.end(), static_cast<std::uint8_t>(mu)) != dirs_.end();
}

bool MultiIndex::contains_all(const MultiIndex& sub) const {
    auto rest = dirs_;
    for (auto d : sub.dirs_) {
        auto it = std::find(rest.begin(), rest.end(), d);
        if (it == rest.end()) return false;
        rest.erase(it);
    }
    return true;
}

MultiIndex MultiIndex::minus(const MultiIndex& sub) const {
    auto rest = dirs_;
    for (auto d : sub.dirs_) {
        auto it = std::find(rest.begin(), rest.end(), d);
        if (it == rest.end()) throw EngineError("MultiIndex::minus: not a sub-multiset");
        rest.erase(it);
    }
    MultiIndex out;
    out.dirs_ = std::move(rest);
    return out;
}

JetSpace::JetSpace(int n, int m, int max_order) : n_(n), m_(m), max_order_(max_order) {
    if (n < 1 || m < 1) throw DimensionMismatch("JetSpace needs n >= 1 and m >= 1");
    if (max_order < 0) throw EngineError("negative jet order cap");
    base_names_.resize(n);
    field_names_.resize(m);
    for (int mu = 0; mu < n; ++mu) base_names_[mu] = "x" + std::to_string(mu);
    for (int a = 0; a < m; ++a) field_names_[a] = "u" + std::to_string(a);
}

JetSpace JetSpace::lifted(int new_max_order) const {
    JetSpace s = *this;
    s.max_order_ = std::max(max_order_, new_max_order);
    return s;
}

void JetSpace::set_base_name(int mu, std::string name) { base_names_.at(mu) = std::move(name); }
void JetSpace::set_field_name(int a, std::string name) { field_names_.at(a) = std::move(name); }

int JetSpace::add_parameter(const std::string& name, std::optional<Rational> value) {
    if (find_parameter(name)) throw EngineError("duplicate parameter '" + name + "'");
    param_names_.push_back(name);
    param_values_.push_back(std::move(value));
    return static_cast<int>(param_names_.size()) - 1;
}

std::optional<int> JetSpace::find_parameter(const std::string& name) const {
    for (int i = 0; i < static_cast<int>(param_names_.size()); ++i)
        if (param_names_[i] == name) return i;
    return std::nullopt;
}

std::optional<int> JetSpace::find_base(const std::string& name) const {
    for (int mu = 0; mu < n_; ++mu)
        if (base_names_[mu] == name) return mu;
    return std::nullopt;
}

std::optional<int> JetSpace::find_field(const std::string& name) const {
    for (int a = 0; a < m_; ++a)
        if (field_names_[a] == name) return a;
    return std::nullopt;
}

void JetSpace::check_coord(const Coord& c) const {
    switch (c.kind) {
    case CoordKind::Base:
        if (c.id < 0 || c.id >= n_) throw DimensionMismatch("base index out of range");
        break;
    case CoordKind::Field:
    case CoordKind::TestField:
        if (c.id < 0 || c.id >= m_) throw DimensionMismatch("field index out of range");
        if (c.index.order() > max_order_)
            throw MaxOrderExceeded("jet order " + std::to_string(c.index.order()) +
                                   " exceeds cap " + std::to_string(max_order_));
        break;
    case CoordKind::Param:
        if (c.id < 0 || c.id >= parameter_count()) throw EngineError("unknown parameter id");
        break;
    default:
        break;
    }
}

std::string JetSpace::coord_name(const Coord& c) const {
    switch (c.kind) {
    case CoordKind::Base:
        return base_name(c.id);
    case CoordKind::Field:
    case CoordKind::TestField: {
        std::string s = (c.kind == CoordKind::TestField ? "v_" : "") + field_name(c.id);
        if (!c.index.empty()) {
            s += "_";
            for (auto d : c.index.dirs()) s += base_name(d);
        }
        return s;
    }
    case CoordKind::Param:
        return parameter_name(c.id);
    case CoordKind::Pi:
        return "pi";
    case CoordKind::Homotopy:
        return "tau";
    }
    return "?";
}

} // namespace vseq
