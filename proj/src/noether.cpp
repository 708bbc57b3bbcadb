#include "vseq/noether.hpp"

#include "vseq/linsolve.hpp"

#include <algorithm>

namespace vseq {

Current noether_current(const JetSpace& s, const Lagrangian& lag, const VectorField& v) {
    Form p = momenta(s, lag);
    JetSpace ls = s.lifted(std::max(s.max_order(), lag.jet_order() + 2));
    Form vertical_part =
        p.is_zero() ? Form(s.base_dim(), s.fiber_dim(), s.base_dim() - 1)
                    : contract(ls, v, p, ContractPart::Vertical);
    Form horizontal_part = lag.is_zero() || v.is_vertical()
                               ? Form(s.base_dim(), s.fiber_dim(), s.base_dim() - 1)
                               : contract(ls, v, lagrangian_form(ls, lag), ContractPart::Horizontal);
    return {vertical_part + horizontal_part};
}

Lagrangian lie_derive_lagrangian(const JetSpace& s, const Lagrangian& lag, const VectorField& v) {
    SourceForm eta = euler_lagrange(s, lag);
    Lagrangian contracted = vertical_contraction(s, eta, v);
    Current eps = noether_current(s, lag, v);
    JetSpace ls = s.lifted(std::max(s.max_order(), std::max(contracted.jet_order(), eps.F.jet_order()) + 1));
    Expr boundary = eps.is_zero() ? Expr() : volume_coefficient(ls, d_H(ls, eps.F));
    return {contracted.L + boundary};
}

Current lie_derive_current(const JetSpace& s, const Current& nu, const VectorField& v) {
    if (nu.is_zero() || v.is_zero()) return zero_current(s);
    JetSpace ls = s.lifted(std::max(s.max_order(), nu.F.jet_order() + 2));
    Form dh = d_H(ls, nu.F);
    Form dv = d_V(ls, nu.F);
    Form out(s.base_dim(), s.fiber_dim(), s.base_dim() - 1);
    if (!dh.is_zero()) out = out + contract(ls, v, dh, ContractPart::Horizontal);
    if (!dv.is_zero()) out = out + contract(ls, v, dv, ContractPart::Vertical);
    return {out};
}

SourceForm lie_derive_source(const JetSpace& s, const SourceForm& eta, const Lagrangian& local,
                             const VectorField& v) {
    if (!(euler_lagrange(s, local) == eta))
        throw InconsistentPair("Lagrangian is not a local potential of the dynamical form");
    return euler_lagrange(s, vertical_contraction(s, eta, v));
}

SymmetryReport check_generalized_symmetry(const JetSpace& s, const SourceForm& eta,
                                          const VectorField& v,
                                          const std::optional<Lagrangian>& lag,
                                          const AnsatzSpec& spec,
                                          const std::set<int>& angle_fields) {
    SymmetryReport rep;
    Lagrangian contracted = vertical_contraction(s, eta, v);
    SourceForm derived = euler_lagrange(s, contracted);
    rep.residuals = derived.comps;
    rep.is_generalized_symmetry = derived.is_zero();
    if (rep.is_generalized_symmetry) {
        if (contracted.is_zero())
            rep.nu = zero_current(s);
        else
            rep.nu = solve_dH_exact(s, lagrangian_form(s, contracted), spec, angle_fields);
    }
    if (lag) {
        Lagrangian lie = lie_derive_lagrangian(s, *lag, v);
        if (lie.is_zero()) {
            rep.is_lagrangian_symmetry = true;
            rep.zeta = zero_current(s);
        } else if (euler_lagrange(s, lie).is_zero()) {
            rep.zeta = solve_dH_exact(s, lagrangian_form(s, lie), spec, angle_fields);
            rep.is_lagrangian_symmetry = rep.zeta.has_value();
        }
    }
    return rep;
}

Current strong_noether_current(const JetSpace& s, const Lagrangian& lag, const SourceForm& eta,
                               const VectorField& v, const AnsatzSpec& spec,
                               const std::set<int>& angle_fields) {
    if (!(euler_lagrange(s, lag) == eta))
        throw InconsistentPair("Lagrangian is not a local potential of the dynamical form");
    SymmetryReport rep = check_generalized_symmetry(s, eta, v, std::nullopt, spec, angle_fields);
    if (!rep.is_generalized_symmetry)
        throw MissingCertificate("field is not a generalized symmetry of the dynamical form");
    if (!rep.nu)
        throw MissingCertificate("no potential certificate for Xi_V . eta within the ansatz");
    Current eps = noether_current(s, lag, v);
    return {rep.nu->F + eps.F};
}

namespace {

struct LeadingRule {
    MultiIndex lead;
    Expr rhs; // y^a_lead = rhs
};

// Solves eta_a = 0 for the top derivative of field a; requires a rational
// leading coefficient and a strictly lower-order remainder.
std::vector<LeadingRule> leading_rules(const JetSpace& s, const SourceForm& eta) {
    std::vector<LeadingRule> rules(s.fiber_dim());
    for (int a = 0; a < s.fiber_dim(); ++a) {
        const Expr& comp = eta.comps.at(a);
        if (comp.is_zero())
            throw NotSolvableForLeading("component " + std::to_string(a) + " is identically zero");
        Coord lead = Coord::field(a);
        bool found = false;
        for (const auto& c : comp.coords()) {
            if (c.kind != CoordKind::Field || c.id != a) continue;
            if (!found || c.index.order() > lead.index.order() ||
                (c.index.order() == lead.index.order() && lead.index < c.index)) {
                lead = c;
                found = true;
            }
        }
        if (!found) throw NotSolvableForLeading("component has no derivative of its own field");
        Expr coeff = partial(comp, lead);
        if (!coeff.is_rational() || coeff.is_zero() || coeff.depends_on(lead))
            throw NotSolvableForLeading("leading coefficient is not an invertible constant");
        Expr rhs = -(comp - coeff * Expr::coord(lead)) / coeff;
        int rhs_order = -1;
        for (const auto& c : rhs.coords())
            if (c.kind == CoordKind::Field) rhs_order = std::max(rhs_order, c.index.order());
        if (rhs_order >= lead.index.order())
            throw NotSolvableForLeading("remainder is not of lower order");
        rules[a] = {lead.index, rhs};
    }
    return rules;
}

} // namespace

Expr on_shell_reduce(const JetSpace& s, const Expr& e, const SourceForm& eta) {
    if (e.is_zero()) return e;
    std::vector<LeadingRule> rules = leading_rules(s, eta);
    JetSpace ls = s.lifted(std::max(s.max_order(), e.jet_order() + 2));
    Expr cur = e;
    for (int guard = 0; guard < 256; ++guard) {
        Coord best;
        bool found = false;
        for (const auto& c : cur.coords()) {
            if (c.kind != CoordKind::Field) continue;
            if (!c.index.contains_all(rules[c.id].lead)) continue;
            if (!found || c.index.order() > best.index.order()) {
                best = c;
                found = true;
            }
        }
        if (!found) return cur;
        const LeadingRule& rule = rules[best.id];
        Expr value = total_derivative(ls, rule.rhs, best.index.minus(rule.lead));
        cur = substitute(cur, {{best, value}});
    }
    throw EngineError("on-shell reduction did not reach a fixpoint");
}

bool on_shell_zero_by_combination(const JetSpace& s, const Expr& e, const SourceForm& eta,
                                  const AnsatzSpec& spec) {
    if (e.is_zero()) return true;
    JetSpace ls = s.lifted(std::max(s.max_order(), e.jet_order() + 3));

    // known generators D_I(eta_a) for |I| <= 2
    std::vector<Expr> gens;
    for (int a = 0; a < s.fiber_dim(); ++a) {
        if (eta.comps.at(a).is_zero()) continue;
        gens.push_back(eta.comps[a]);
        for (int mu = 0; mu < s.base_dim(); ++mu) {
            Expr d1 = total_derivative(ls, eta.comps[a], mu);
            gens.push_back(d1);
            for (int nu_dir = mu; nu_dir < s.base_dim(); ++nu_dir)
                gens.push_back(total_derivative(ls, d1, nu_dir));
        }
    }
    if (gens.empty()) return false;

    // coefficient functions from a small monomial pool harvested from e
    std::set<Coord> pool;
    for (int mu = 0; mu < s.base_dim(); ++mu) pool.insert(Coord::base(mu));
    for (const auto& c : e.coords())
        if (c.kind == CoordKind::Field) pool.insert(c);
    std::vector<Expr> coeffs{Expr::integer(1)};
    for (const auto& c : pool) coeffs.push_back(Expr::coord(c));
    if (spec.max_poly_degree >= 2)
        for (const auto& c : pool)
            for (const auto& d : pool) coeffs.push_back(Expr::coord(c) * Expr::coord(d));

    struct MonoKeyLess {
        bool operator()(const Monomial& a, const Monomial& b) const {
            return monomial_key_cmp(a, b) < 0;
        }
    };
    std::map<Monomial, int, MonoKeyLess> row_of;
    auto row_id = [&](const Monomial& key) {
        auto it = row_of.find(key);
        if (it != row_of.end()) return it->second;
        int id = static_cast<int>(row_of.size());
        row_of.emplace(key, id);
        return id;
    };

    LinearSystem sys(static_cast<int>(gens.size() * coeffs.size()));
    int col = 0;
    for (const auto& gexpr : gens)
        for (const auto& cf : coeffs) {
            Expr img = cf * gexpr;
            for (const auto& m : img.monomials()) sys.add(row_id(m), col, m.coeff);
            ++col;
        }
    for (const auto& m : e.monomials()) sys.add_rhs(row_id(m), m.coeff);
    return sys.solve().has_value();
}

} // namespace vseq
