#ifndef VSEQ_CECH_HPP
#define VSEQ_CECH_HPP

#include "vseq/noether.hpp"
#include "vseq/report.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace vseq {

/// Chart transition restricted to constant shifts of fiber coordinates
/// (angle branch changes). Applying it rewrites an expression given in the
/// other chart's coordinates into this frame; jets are untouched because the
/// shift is constant.
class Transition {
public:
    Transition() = default;
    void set_shift(int field, Expr offset);
    bool is_identity() const { return shifts_.empty(); }
    Transition inverse() const;

    Expr apply(const Expr& e) const;
    Form apply(const Form& f) const;
    Lagrangian apply(const Lagrangian& v) const { return {apply(v.L)}; }
    Current apply(const Current& v) const { return {apply(v.F)}; }
    SourceForm apply(const SourceForm& v) const;

private:
    std::map<int, Expr> shifts_;
};

/// One connected component of a double overlap U_i cap U_j (i < j); values
/// from chart j are pulled into chart i's frame.
struct PairComponent {
    int i = 0;
    int j = 0;
    std::string name;
    Transition j_in_i;
};

/// One component of a triple overlap, glued from the pair components it
/// refines (indices into Cover::pairs()).
struct TripleComponent {
    int i = 0, j = 0, k = 0;
    std::string name;
    int pair_ij = -1;
    int pair_jk = -1;
    int pair_ik = -1;
};

/// Piece of a parametrized cycle: a smooth map [0,1]^d into one chart, with
/// an optional overlap component when the piece lies inside a double
/// overlap. Coordinates not mentioned are held at zero.
struct CyclePiece {
    int chart = 0;
    std::optional<int> pair_component;
    std::map<Coord, Expr> param; // order-0 coordinate -> Expr in s0, s1
};

struct Cycle {
    std::string name;
    int dimension = 1;
    std::vector<CyclePiece> pieces;
};

/// Combinatorial good cover: named charts sharing one coordinate system,
/// constant-shift transitions on overlap components, triple components for
/// degree-two cochains, declared angle coordinates per chart, and named
/// cycles for period evaluation. Built-ins only.
class Cover {
public:
    static Cover single_chart(JetSpace space);
    /// Fiber circle: two angle branches of field `angle_field`.
    static Cover circle_fiber(JetSpace space, int angle_field, const std::string& name);
    /// Fiber sphere with four charts (hemisphere x angle branch); field 0 is
    /// the polar coordinate, field 1 the azimuth.
    static Cover sphere_four_charts(JetSpace space);
    static Cover by_name(JetSpace space, const std::string& name);
    static std::vector<std::string> builtin_names();

    const std::string& name() const { return name_; }
    const JetSpace& space() const { return space_; }
    int chart_count() const { return static_cast<int>(chart_names_.size()); }
    const std::string& chart_name(int i) const { return chart_names_.at(i); }
    std::optional<int> find_chart(const std::string& n) const;
    const std::set<int>& angle_fields(int chart) const { return angle_fields_.at(chart); }
    const std::vector<PairComponent>& pairs() const { return pairs_; }
    const std::vector<TripleComponent>& triples() const { return triples_; }
    const std::vector<Cycle>& cycles() const { return cycles_; }
    const Cycle* find_cycle(const std::string& n) const;

    std::string pair_label(int p) const;
    std::string triple_label(int t) const;

    /// s-parameter ids used by cycle parametrizations.
    int s_param(int axis) const { return s_params_.at(axis); }

private:
    void validate() const;

    std::string name_;
    JetSpace space_{1, 1};
    std::vector<std::string> chart_names_;
    std::vector<std::set<int>> angle_fields_;
    std::vector<PairComponent> pairs_;
    std::vector<TripleComponent> triples_;
    std::vector<Cycle> cycles_;
    std::vector<int> s_params_;
};

/// Degree 0, 1 or 2 cochain with one value kind: values per chart, per pair
/// component, or per triple component.
template <class T>
struct Cochain {
    int degree = 0;
    std::map<int, T> values;

    const T& at(int key) const {
        auto it = values.find(key);
        if (it == values.end()) throw TransitionMissing("cochain value missing");
        return it->second;
    }
};

/// Alternating-difference coboundary of a 0-cochain on pair components.
template <class T>
Cochain<T> coboundary(const Cover& K, const Cochain<T>& c);

/// Coboundary of a 1-cochain on triple components; requires the pair values
/// in each refined component and uses the transition chain to align frames.
template <class T>
Cochain<T> coboundary1(const Cover& K, const Cochain<T>& c);

template <class T>
bool cochain_is_zero(const Cochain<T>& c) {
    for (const auto& [k, v] : c.values)
        if (!v.is_zero()) return false;
    return true;
}

/// Exterior derivative on the underlying fibered manifold for order-zero
/// coefficients, writing dy^a as theta^a with empty index. The input is a
/// current (0- or 1-form); jets in coefficients are a ChartMismatch.
Form fiber_exterior_derivative(const JetSpace& s, const Form& f);

/// Pullback along the zero-jet section: jet coordinates in coefficients are
/// bound to zero. Cocycle jumps are constants, so class periods computed
/// through this section do not depend on the choice.
Form restrict_to_zero_jets(const JetSpace& s, const Form& f);

/// Period of a d-form over one piece of a cycle by tensor Gauss-Legendre
/// quadrature; expects the dy-basis convention of fiber_exterior_derivative.
double period_piece(const Cover& K, const Form& w, const CyclePiece& piece, int dimension,
                    int nodes);

/// Period of a form over a whole cycle (same expression in every chart).
double period(const Cover& K, const Form& w, const Cycle& c, int nodes = 64);

struct DeltaPrimeResult {
    Cochain<Current> potentials;  // nu_i with mu_i = d_H nu_i
    Cochain<Current> dnu;         // the coboundary cocycle
    std::map<std::string, double> periods;
    bool trivial = true;          // all periods within tolerance
};

/// Connecting map for locally variationally trivial n-forms: solves
/// mu_i = d_H nu_i per chart and evaluates the periods of the resulting
/// cocycle over the cover's cycles.
DeltaPrimeResult connecting_delta_prime(const Cover& K, const Cochain<Lagrangian>& mu,
                                        const AnsatzSpec& spec = {}, int nodes = 64,
                                        double tolerance = 1e-8);

struct DeltaResult {
    Cochain<SourceForm> eta;      // Euler-Lagrange per chart
    bool eta_global = false;      // coboundary of eta vanishes
    bool helmholtz_ok = false;    // every chart passes
    Cochain<Lagrangian> dlambda;  // coboundary of the Lagrangian cochain
    Cochain<Current> gamma;       // d_H gamma = dlambda per overlap
    std::map<std::string, double> periods;
    bool trivial = true;
};

/// Connecting map for locally variational dynamical forms, starting from a
/// system of local Lagrangians: coboundary, overlap potentials, periods.
DeltaResult connecting_delta(const Cover& K, const Cochain<Lagrangian>& lambdas,
                             const AnsatzSpec& spec = {}, int nodes = 64,
                             double tolerance = 1e-8);

/// Checks that the field's components are invariant under every overlap
/// transition; throws FieldNotGlobal otherwise.
void require_global_field(const Cover& K, const VectorField& v);

Cochain<Lagrangian> lie_derive_cochain(const Cover& K, const Cochain<Lagrangian>& c,
                                       const VectorField& v);
Cochain<Current> lie_derive_cochain(const Cover& K, const Cochain<Current>& c,
                                    const VectorField& v);
Cochain<SourceForm> lie_derive_cochain(const Cover& K, const Cochain<SourceForm>& c,
                                       const VectorField& v);

} // namespace vseq

#endif
