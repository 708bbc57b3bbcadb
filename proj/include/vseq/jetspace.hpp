#ifndef VSEQ_JETSPACE_HPP
#define VSEQ_JETSPACE_HPP

#include "vseq/errors.hpp"
#include "vseq/rational.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vseq {

/// Symmetric multi-index of base directions, stored as a sorted multiset.
/// The empty index denotes the field itself.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<std::uint8_t> dirs);

    static MultiIndex single(int mu) { return MultiIndex({static_cast<std::uint8_t>(mu)}); }

    int order() const { return static_cast<int>(dirs_.size()); }
    bool empty() const { return dirs_.empty(); }
    const std::vector<std::uint8_t>& dirs() const { return dirs_; }

    /// I with one more derivative in direction mu.
    MultiIndex extended(int mu) const;
    /// I with one occurrence of mu removed; mu must be present.
    MultiIndex reduced(int mu) const;
    bool contains(int mu) const;
    /// Multiset inclusion: every direction of `sub` occurs in *this at least
    /// as often.
    bool contains_all(const MultiIndex& sub) const;
    /// Multiset difference (*this minus sub); sub must be contained.
    MultiIndex minus(const MultiIndex& sub) const;

    auto operator<=>(const MultiIndex&) const = default;

private:
    std::vector<std::uint8_t> dirs_; // ascending
};

enum class CoordKind : std::uint8_t {
    Base,      // x^mu
    Field,     // y^a_I
    TestField, // v^a_I, only inside Helmholtz linearizations
    Param,     // named symbolic constant
    Pi,        // the circle constant
    Homotopy,  // integration parameter of the fiber homotopy
};

/// One jet-space coordinate (or symbolic constant). Totally ordered so that
/// monomials have a canonical factor sequence.
struct Coord {
    CoordKind kind = CoordKind::Base;
    int id = 0;       // mu for Base, a for Field/TestField, parameter id for Param
    MultiIndex index; // derivative multi-index for Field/TestField

    static Coord base(int mu) { return {CoordKind::Base, mu, {}}; }
    static Coord field(int a, MultiIndex I = {}) { return {CoordKind::Field, a, std::move(I)}; }
    static Coord test_field(int a, MultiIndex I = {}) { return {CoordKind::TestField, a, std::move(I)}; }
    static Coord param(int id) { return {CoordKind::Param, id, {}}; }
    static Coord pi() { return {CoordKind::Pi, 0, {}}; }
    static Coord homotopy() { return {CoordKind::Homotopy, 0, {}}; }

    bool is_jet_like() const { return kind == CoordKind::Field || kind == CoordKind::TestField; }
    int jet_order() const { return is_jet_like() ? index.order() : 0; }

    auto operator<=>(const Coord&) const = default;
};

/// Static description of the fibered chart the engine works over: base
/// dimension n, fiber dimension m, a cap on jet order, and the naming/value
/// tables needed for parsing, printing and numeric evaluation.
class JetSpace {
public:
    JetSpace(int n, int m, int max_order = 4);

    int base_dim() const { return n_; }
    int fiber_dim() const { return m_; }
    int max_order() const { return max_order_; }

    /// Same space with a higher working order cap. Operators that genuinely
    /// raise the jet order (total derivatives, Euler-Lagrange, Helmholtz)
    /// compute through a lifted copy.
    JetSpace lifted(int new_max_order) const;

    void set_base_name(int mu, std::string name);
    void set_field_name(int a, std::string name);
    const std::string& base_name(int mu) const { return base_names_.at(mu); }
    const std::string& field_name(int a) const { return field_names_.at(a); }

    int add_parameter(const std::string& name, std::optional<Rational> value = std::nullopt);
    int parameter_count() const { return static_cast<int>(param_names_.size()); }
    const std::string& parameter_name(int id) const { return param_names_.at(id); }
    std::optional<Rational> parameter_value(int id) const { return param_values_.at(id); }
    std::optional<int> find_parameter(const std::string& name) const;

    std::optional<int> find_base(const std::string& name) const;
    std::optional<int> find_field(const std::string& name) const;

    void check_coord(const Coord& c) const;
    std::string coord_name(const Coord& c) const;

private:
    int n_;
    int m_;
    int max_order_;
    std::vector<std::string> base_names_;
    std::vector<std::string> field_names_;
    std::vector<std::string> param_names_;
    std::vector<std::optional<Rational>> param_values_;
};

} // namespace vseq

#endif
