#ifndef VSEQ_NOETHER_HPP
#define VSEQ_NOETHER_HPP

#include "vseq/variational.hpp"

#include <optional>

namespace vseq {

/// Outcome of the symmetry checks for a vector field against a dynamical
/// form (and optionally a Lagrangian). Certificates are the exhibited
/// potentials: d_H nu = Xi_V . eta, d_H zeta = L_Xi lambda.
struct SymmetryReport {
    bool is_generalized_symmetry = false;
    bool is_lagrangian_symmetry = false;
    std::optional<Current> nu;
    std::optional<Current> zeta;
    std::vector<Expr> residuals; // Euler-Lagrange components of Xi_V . eta
};

/// Variational Lie derivative of a Lagrangian class, computed through the
/// canonical split (Xi_V . E(lambda)) omega + d_H(noether_current). Capped at
/// order 2 by the momenta.
Lagrangian lie_derive_lagrangian(const JetSpace& s, const Lagrangian& lag, const VectorField& v);

/// Variational Lie derivative of a current: Xi_H . d_H nu + Xi_V . d_V nu.
/// Satisfies d_H(result) = L_Xi(d_H nu) as Lagrangian classes.
Current lie_derive_current(const JetSpace& s, const Current& nu, const VectorField& v);

/// Lie derivative at source level: E((Xi_V . eta) omega). The local
/// Lagrangian only enters the consistency precheck E(local) = eta.
SourceForm lie_derive_source(const JetSpace& s, const SourceForm& eta, const Lagrangian& local,
                             const VectorField& v);

/// Canonical Noether current j Xi_V . p + xi . lambda.
Current noether_current(const JetSpace& s, const Lagrangian& lag, const VectorField& v);

/// Generalized-symmetry test E(Xi_V . eta) = 0 with an attempted potential
/// certificate; when a Lagrangian is supplied, also decides whether L_Xi
/// lambda is d_H-exact and records that certificate.
SymmetryReport check_generalized_symmetry(const JetSpace& s, const SourceForm& eta,
                                          const VectorField& v,
                                          const std::optional<Lagrangian>& lag = std::nullopt,
                                          const AnsatzSpec& spec = {},
                                          const std::set<int>& angle_fields = {});

/// nu + epsilon for a generalized symmetry; requires the nu certificate.
Current strong_noether_current(const JetSpace& s, const Lagrangian& lag, const SourceForm& eta,
                               const VectorField& v, const AnsatzSpec& spec = {},
                               const std::set<int>& angle_fields = {});

/// Rewrites leading derivatives through the equations eta_a = 0 and their
/// total-derivative consequences until no reducible coordinate remains.
Expr on_shell_reduce(const JetSpace& s, const Expr& e, const SourceForm& eta);

/// Fallback on-shell test: is e a bounded-ansatz combination
/// sum C^{aI} D_I(eta_a)?
bool on_shell_zero_by_combination(const JetSpace& s, const Expr& e, const SourceForm& eta,
                                  const AnsatzSpec& spec = {});

} // namespace vseq

#endif
