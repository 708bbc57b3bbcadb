#ifndef VSEQ_VARIATIONAL_HPP
#define VSEQ_VARIATIONAL_HPP

#include "vseq/form.hpp"
#include "vseq/vectorfield.hpp"

#include <optional>
#include <set>
#include <vector>

namespace vseq {

/// Lagrangian class L * omega with omega the base volume.
struct Lagrangian {
    Expr L;

    bool is_zero() const { return L.is_zero(); }
    int jet_order() const { return L.jet_order(); }
};

/// Dynamical form eta_a theta^a ^ omega, stored through its components.
struct SourceForm {
    std::vector<Expr> comps;

    SourceForm() = default;
    explicit SourceForm(int m) : comps(m) {}
    explicit SourceForm(std::vector<Expr> c) : comps(std::move(c)) {}
    bool is_zero() const;
    int jet_order() const;
    friend bool operator==(const SourceForm& a, const SourceForm& b) { return a.comps == b.comps; }
};

/// Horizontal (n-1)-form: conserved currents and the potentials of the
/// exactness solver. For n = 1 the form has degree zero.
struct Current {
    Form F;

    bool is_zero() const { return F.is_zero(); }
};

Current zero_current(const JetSpace& s);
/// nu^mu volume_mu assembled from components, so d_H nu = (D_mu nu^mu) omega.
Current current_from_components(const JetSpace& s, const std::vector<Expr>& comps);

/// Coefficient of the full base volume; fails unless the form is horizontal
/// of top degree.
Expr volume_coefficient(const JetSpace& s, const Form& f);

/// Lagrangian n-form L * omega.
Form lagrangian_form(const JetSpace& s, const Lagrangian& lag);
/// eta as a form: eta_a theta^a ^ omega.
Form source_form_form(const JetSpace& s, const SourceForm& eta);

/// Euler-Lagrange components E_a = sum_I (-1)^|I| D_I dL/dy^a_I.
SourceForm euler_lagrange(const JetSpace& s, const Lagrangian& lag);

/// (Xi_V . eta) omega as a Lagrangian: the vertical contraction of a
/// dynamical form along a vector field.
Lagrangian vertical_contraction(const JetSpace& s, const SourceForm& eta, const VectorField& v);

struct HelmholtzReport {
    bool is_locally_variational = false;
    std::vector<Expr> residuals; // one per field, linear in test fields
};

/// Self-adjointness of the formal linearization on test fields; residuals
/// normalize to zero exactly when eta is locally variational.
HelmholtzReport helmholtz_check(const JetSpace& s, const SourceForm& eta);

/// Fiber-radial homotopy Lagrangian L = (y^a - c^a) int_0^1 eta_a(x, c + tau(y - c)) dtau.
/// Checks local variationality first and verifies E(L) = eta before returning.
Lagrangian tonti_lagrangian(const JetSpace& s, const SourceForm& eta,
                            const std::vector<Rational>& center = {});

/// Canonical momentum form of an order <= 2 Lagrangian; satisfies
/// d_V(L omega) = E_a theta^a ^ omega - d_H p.
Form momenta(const JetSpace& s, const Lagrangian& lag);

/// Search space of the d_H-exactness solver.
struct AnsatzSpec {
    int max_poly_degree = 4;
    int max_jet_order = 2;
    bool include_kernels_from_target = true;
};

/// Finds nu with d_H nu = mu (mu horizontal of top degree) by an exact
/// linear solve over a bounded ansatz: monomials in the lower closure of the
/// target's coordinates, kernel products harvested from the target, and
/// linear terms in declared angle coordinates (multivalued potentials).
/// Returns nothing when the ansatz is exhausted; throws NotClosed when mu
/// fails the Euler-Lagrange necessary condition.
std::optional<Current> solve_dH_exact(const JetSpace& s, const Form& mu, const AnsatzSpec& spec = {},
                                      const std::set<int>& angle_fields = {});

} // namespace vseq

#endif
