#ifndef VSEQ_VECTORFIELD_HPP
#define VSEQ_VECTORFIELD_HPP

#include "vseq/form.hpp"

#include <map>
#include <utility>
#include <vector>

namespace vseq {

/// Projectable or generalized (evolutionary) vector field:
/// xi^mu d/dx^mu + Xi^a d/dy^a. Horizontal components depend only on base
/// coordinates; vertical components may depend on jets, in which case the
/// field is not projectable.
class VectorField {
public:
    VectorField(const JetSpace& s, std::vector<Expr> xi, std::vector<Expr> Xi);

    static VectorField zero(const JetSpace& s);
    static VectorField vertical(const JetSpace& s, std::vector<Expr> Xi);

    const Expr& xi(int mu) const { return xi_.at(mu); }
    const Expr& Xi(int a) const { return Xi_.at(a); }
    int base_dim() const { return static_cast<int>(xi_.size()); }
    int fiber_dim() const { return static_cast<int>(Xi_.size()); }
    bool projectable() const { return projectable_; }
    bool is_vertical() const;
    bool is_zero() const;

    /// Evolutionary representative Xi^a - xi^mu y^a_mu.
    Expr evolutionary(const JetSpace& s, int a) const;

private:
    std::vector<Expr> xi_;
    std::vector<Expr> Xi_;
    bool projectable_;
};

/// Prolonged components of a vector field up to a given jet order. The
/// vertical table holds the evolutionary components D_I(Xi^a - xi^mu y^a_mu),
/// which is what contact covectors pair with.
struct Prolongation {
    std::vector<Expr> xi;
    std::map<std::pair<int, MultiIndex>, Expr> vertical;

    const Expr& theta_pairing(int a, const MultiIndex& I) const;
};

/// Prolongs to order k: vertical table for all |I| <= k, full components
/// recoverable as Xi^a_I = vertical[a,I] + xi^mu y^a_{I mu}.
Prolongation prolong(const JetSpace& s, const VectorField& v, int k);

/// Full prolonged component Xi^a_I (the coordinate change of the flow on
/// jets), as opposed to the evolutionary pairing.
Expr prolonged_component(const JetSpace& s, const Prolongation& p, int a, const MultiIndex& I);

enum class ContractPart { Full, Horizontal, Vertical };

/// Interior product with the prolongation of v: dx^mu pairs with xi^mu,
/// theta^a_I with the evolutionary component. Horizontal/Vertical restrict
/// the pairing to j Xi_H resp. j Xi_V.
Form contract(const JetSpace& s, const VectorField& v, const Form& f,
              ContractPart part = ContractPart::Full);

} // namespace vseq

#endif
