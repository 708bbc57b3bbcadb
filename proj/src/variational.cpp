#include "vseq/variational.hpp"

#include "vseq/linsolve.hpp"

#include <algorithm>
#include <map>

namespace vseq {

bool SourceForm::is_zero() const {
    for (const auto& e : comps)
        if (!e.is_zero()) return false;
    return true;
}

int SourceForm::jet_order() const {
    int r = 0;
    for (const auto& e : comps) r = std::max(r, e.jet_order());
    return r;
}

Current zero_current(const JetSpace& s) {
    return {Form(s.base_dim(), s.fiber_dim(), s.base_dim() - 1)};
}

Current current_from_components(const JetSpace& s, const std::vector<Expr>& comps) {
    Form f(s.base_dim(), s.fiber_dim(), s.base_dim() - 1);
    for (int mu = 0; mu < s.base_dim(); ++mu) f = f + comps.at(mu) * volume_mu(s, mu);
    return {f};
}

Expr volume_coefficient(const JetSpace& s, const Form& f) {
    if (f.is_zero()) return {};
    if (f.degree() != s.base_dim() || !f.is_horizontal())
        throw DimensionMismatch("expected a horizontal top-degree form");
    std::vector<BasisCovector> vol;
    for (int mu = 0; mu < s.base_dim(); ++mu) vol.push_back(BasisCovector::dx(mu));
    return f.coefficient(vol);
}

Form lagrangian_form(const JetSpace& s, const Lagrangian& lag) {
    return lag.L * volume(s);
}

Form source_form_form(const JetSpace& s, const SourceForm& eta) {
    Form out(s.base_dim(), s.fiber_dim(), s.base_dim() + 1);
    for (int a = 0; a < s.fiber_dim(); ++a)
        out = out + eta.comps.at(a) * wedge(Form::covector(s, BasisCovector::theta(a)), volume(s));
    return out;
}

namespace {

// Distinct derivative multi-indices of field a occurring in e.
std::vector<MultiIndex> field_indices(const Expr& e, int a) {
    std::vector<MultiIndex> out;
    for (const auto& c : e.coords())
        if (c.kind == CoordKind::Field && c.id == a) out.push_back(c.index);
    return out;
}

} // namespace

SourceForm euler_lagrange(const JetSpace& s, const Lagrangian& lag) {
    const int r = lag.jet_order();
    JetSpace ls = s.lifted(std::max(s.max_order(), 2 * r));
    SourceForm eta(s.fiber_dim());
    for (int a = 0; a < s.fiber_dim(); ++a) {
        Expr E;
        for (const auto& I : field_indices(lag.L, a)) {
            Expr term = total_derivative(ls, partial(lag.L, Coord::field(a, I)), I);
            E = (I.order() % 2) ? E - term : E + term;
        }
        eta.comps[a] = E;
    }
    return eta;
}

Lagrangian vertical_contraction(const JetSpace& s, const SourceForm& eta, const VectorField& v) {
    Expr L;
    for (int a = 0; a < s.fiber_dim(); ++a) L = L + v.evolutionary(s, a) * eta.comps.at(a);
    return {L};
}

HelmholtzReport helmholtz_check(const JetSpace& s, const SourceForm& eta) {
    const int q = eta.jet_order();
    JetSpace ls = s.lifted(std::max(s.max_order(), 2 * q));
    HelmholtzReport rep;
    rep.residuals.resize(s.fiber_dim());
    for (int a = 0; a < s.fiber_dim(); ++a) {
        Expr res;
        for (int b = 0; b < s.fiber_dim(); ++b) {
            // linearization along v^b
            for (const auto& I : field_indices(eta.comps[a], b))
                res = res + partial(eta.comps[a], Coord::field(b, I)) * Expr::test_field(b, I);
            // formal adjoint
            for (const auto& I : field_indices(eta.comps[b], a)) {
                Expr term = total_derivative(
                    ls, partial(eta.comps[b], Coord::field(a, I)) * Expr::test_field(b), I);
                res = (I.order() % 2) ? res + term : res - term;
            }
        }
        rep.residuals[a] = res;
    }
    rep.is_locally_variational = true;
    for (const auto& r : rep.residuals) rep.is_locally_variational &= r.is_zero();
    return rep;
}

Lagrangian tonti_lagrangian(const JetSpace& s, const SourceForm& eta,
                            const std::vector<Rational>& center) {
    if (!helmholtz_check(s, eta).is_locally_variational)
        throw NotLocallyVariational("source form fails the Helmholtz conditions");

    std::vector<Rational> c(s.fiber_dim(), Rational(0));
    for (std::size_t a = 0; a < center.size() && a < c.size(); ++a) c[a] = center[a];

    // y^b_J -> c^b [J empty] + tau (y^b_J - c^b [J empty])
    std::map<Coord, Expr> sigma;
    Expr tau = Expr::homotopy();
    for (int b = 0; b < s.fiber_dim(); ++b) {
        for (const auto& e : eta.comps)
            for (const auto& I : field_indices(e, b)) {
                Expr cc = I.empty() ? Expr::constant(c[b]) : Expr();
                sigma[Coord::field(b, I)] = cc + tau * (Expr::field(b, I) - cc);
            }
    }

    Expr L;
    for (int a = 0; a < s.fiber_dim(); ++a) {
        if (eta.comps[a].is_zero()) continue;
        Expr radial = integrate_homotopy(substitute(eta.comps[a], sigma));
        L = L + (Expr::field(a) - Expr::constant(c[a])) * radial;
    }

    Lagrangian lag{L};
    if (!(euler_lagrange(s, lag) == eta))
        throw EngineError("homotopy Lagrangian failed the round-trip check");
    return lag;
}

namespace {

// Symmetrized second-order partials: S^{a mu nu} summed over ordered pairs
// reproduces the multiset derivative.
Expr sym_second(const Expr& L, int a, int mu, int nu) {
    Expr d = partial(L, Coord::field(a, MultiIndex::single(mu).extended(nu)));
    return mu == nu ? d : d / Expr::integer(2);
}

} // namespace

Form momenta(const JetSpace& s, const Lagrangian& lag) {
    if (lag.jet_order() > 2)
        throw OrderTooHigh("momenta are only defined for Lagrangians of order <= 2");
    JetSpace ls = s.lifted(std::max(s.max_order(), lag.jet_order() + 1));
    Form p(s.base_dim(), s.fiber_dim(), s.base_dim());
    for (int a = 0; a < s.fiber_dim(); ++a)
        for (int mu = 0; mu < s.base_dim(); ++mu) {
            Expr first = partial(lag.L, Coord::field(a, MultiIndex::single(mu)));
            for (int nu = 0; nu < s.base_dim(); ++nu)
                first = first - total_derivative(ls, sym_second(lag.L, a, mu, nu), nu);
            if (!first.is_zero())
                p = p + first * wedge(Form::covector(ls, BasisCovector::theta(a)), volume_mu(ls, mu));
            for (int nu = 0; nu < s.base_dim(); ++nu) {
                Expr second = sym_second(lag.L, a, mu, nu);
                if (!second.is_zero())
                    p = p + second * wedge(Form::covector(ls, BasisCovector::theta(a, MultiIndex::single(nu))),
                                           volume_mu(ls, mu));
            }
        }
    return p;
}

namespace {

struct MonoKeyLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        return monomial_key_cmp(a, b) < 0;
    }
};

// Parameter/pi content of a monomial, as a coefficient-one monomial.
Monomial param_part(const Monomial& m) {
    Monomial p;
    p.coeff = 1;
    for (const auto& [c, k] : m.vars)
        if (c.kind == CoordKind::Param || c.kind == CoordKind::Pi) p.vars.push_back({c, k});
    return p;
}

Expr mono_to_expr(const Monomial& m) { return Expr::from_monomials({m}); }

// Candidate scalar generators for the exactness ansatz.
std::vector<Expr> ansatz_candidates(const JetSpace& s, const Expr& target, const AnsatzSpec& spec,
                                    const std::set<int>& angle_fields) {
    // coordinate pool: lower closure of the target's jet coordinates plus the
    // base coordinates; bare angle coordinates enter only linearly below
    std::set<Coord> pool;
    for (int mu = 0; mu < s.base_dim(); ++mu) pool.insert(Coord::base(mu));
    int max_deg = 1;
    for (const auto& m : target.monomials()) {
        int deg = 0;
        for (const auto& [c, k] : m.vars)
            if (c.kind == CoordKind::Base || c.kind == CoordKind::Field) deg += k;
        max_deg = std::max(max_deg, deg + 1);
    }
    max_deg = std::min(max_deg, spec.max_poly_degree);
    for (const auto& c : target.coords()) {
        if (c.kind != CoordKind::Field) continue;
        // all sub-multi-indices
        std::vector<MultiIndex> subs{MultiIndex{}};
        for (auto d : c.index.dirs()) {
            std::vector<MultiIndex> next = subs;
            for (const auto& I : subs) next.push_back(I.extended(d));
            subs = std::move(next);
        }
        for (const auto& I : subs) {
            if (I.order() > std::max(spec.max_jet_order, c.index.order())) continue;
            if (I.empty() && angle_fields.count(c.id)) continue;
            pool.insert(Coord::field(c.id, I));
        }
    }
    std::vector<Coord> vars(pool.begin(), pool.end());

    // monomials of bounded degree over the pool
    std::vector<Monomial> var_monos;
    Monomial unit;
    unit.coeff = 1;
    var_monos.push_back(unit);
    std::vector<Monomial> frontier = var_monos;
    for (int d = 1; d <= max_deg; ++d) {
        std::vector<Monomial> next;
        for (const auto& m : frontier)
            for (const auto& v : vars) {
                if (!m.vars.empty() && m.vars.back().first > v) continue; // nondecreasing
                Monomial t = m;
                if (!t.vars.empty() && t.vars.back().first == v)
                    t.vars.back().second++;
                else
                    t.vars.push_back({v, 1});
                next.push_back(t);
            }
        var_monos.insert(var_monos.end(), next.begin(), next.end());
        frontier = std::move(next);
    }

    // parameter monomials and kernel products harvested from the target
    std::set<Monomial, MonoKeyLess> params;
    Monomial unit_p;
    unit_p.coeff = 1;
    params.insert(unit_p);
    for (const auto& m : target.monomials()) params.insert(param_part(m));

    std::vector<std::vector<KernelFactor>> kernel_products{{}};
    if (spec.include_kernels_from_target) {
        struct ArgInfo {
            std::shared_ptr<const Expr> arg;
            int max_sin = 0;
            bool has_cos = false;
        };
        std::vector<ArgInfo> trig_args;
        std::vector<std::shared_ptr<const Expr>> exp_args;
        for (const auto& m : target.monomials())
            for (const auto& f : m.kernels) {
                if (f.fn == KernelFn::Exp) {
                    bool seen = false;
                    for (const auto& e : exp_args) seen = seen || expr_cmp(*e, *f.arg) == 0;
                    if (!seen) exp_args.push_back(f.arg);
                    continue;
                }
                ArgInfo* info = nullptr;
                for (auto& ai : trig_args)
                    if (expr_cmp(*ai.arg, *f.arg) == 0) info = &ai;
                if (!info) {
                    trig_args.push_back({f.arg, 0, false});
                    info = &trig_args.back();
                }
                if (f.fn == KernelFn::Sin) info->max_sin = std::max(info->max_sin, f.power);
                if (f.fn == KernelFn::Cos) info->has_cos = true;
            }
        for (const auto& ai : trig_args) {
            std::vector<std::vector<KernelFactor>> next;
            for (const auto& prod : kernel_products)
                for (int sp = 0; sp <= ai.max_sin + 1; ++sp)
                    for (int cp = 0; cp <= 1; ++cp) {
                        auto k = prod;
                        if (sp) k.push_back({KernelFn::Sin, ai.arg, sp});
                        if (cp) k.push_back({KernelFn::Cos, ai.arg, 1});
                        next.push_back(std::move(k));
                    }
            kernel_products = std::move(next);
        }
        for (const auto& ea : exp_args) {
            std::vector<std::vector<KernelFactor>> next;
            for (const auto& prod : kernel_products)
                for (int ep = 0; ep <= 1; ++ep) {
                    auto k = prod;
                    if (ep) k.push_back({KernelFn::Exp, ea, 1});
                    next.push_back(std::move(k));
                }
            kernel_products = std::move(next);
        }
    }

    std::vector<Expr> out;
    for (const auto& vm : var_monos)
        for (const auto& pm : params)
            for (const auto& kp : kernel_products) {
                Monomial m;
                m.coeff = 1;
                m.vars = vm.vars;
                m.vars.insert(m.vars.end(), pm.vars.begin(), pm.vars.end());
                m.kernels = kp;
                out.push_back(mono_to_expr(m));
            }
    // linear angle terms: the chart-local multivalued potentials
    for (int a : angle_fields)
        for (const auto& pm : params) {
            Monomial m;
            m.coeff = 1;
            m.vars = pm.vars;
            m.vars.push_back({Coord::field(a), 1});
            out.push_back(mono_to_expr(m));
        }
    std::erase_if(out, [](const Expr& e) { return e.is_zero(); });
    return out;
}

} // namespace

std::optional<Current> solve_dH_exact(const JetSpace& s, const Form& mu, const AnsatzSpec& spec,
                                      const std::set<int>& angle_fields) {
    const int n = s.base_dim();
    Expr f = volume_coefficient(s, mu);
    if (f.is_zero()) return zero_current(s);

    JetSpace ls = s.lifted(std::max(s.max_order(), f.jet_order() + 2));
    {
        SourceForm necessary = euler_lagrange(ls, Lagrangian{f});
        if (!necessary.is_zero())
            throw NotClosed("target has nonvanishing Euler-Lagrange components");
    }

    std::vector<Expr> cands = ansatz_candidates(ls, f, spec, angle_fields);
    const int per = static_cast<int>(cands.size());
    LinearSystem sys(per * n);

    std::map<Monomial, int, MonoKeyLess> row_of;
    auto row_id = [&](const Monomial& key) {
        auto it = row_of.find(key);
        if (it != row_of.end()) return it->second;
        int id = static_cast<int>(row_of.size());
        row_of.emplace(key, id);
        return id;
    };

    for (int mu_dir = 0; mu_dir < n; ++mu_dir)
        for (int k = 0; k < per; ++k) {
            Expr img = total_derivative(ls, cands[k], mu_dir);
            for (const auto& m : img.monomials()) sys.add(row_id(m), mu_dir * per + k, m.coeff);
        }
    for (const auto& m : f.monomials()) sys.add_rhs(row_id(m), m.coeff);

    auto sol = sys.solve();
    if (!sol) return std::nullopt;

    std::vector<Expr> comps(n);
    for (int mu_dir = 0; mu_dir < n; ++mu_dir)
        for (int k = 0; k < per; ++k)
            if (!is_zero((*sol)[mu_dir * per + k]))
                comps[mu_dir] = comps[mu_dir] + Expr::constant((*sol)[mu_dir * per + k]) * cands[k];

    Current nu = current_from_components(ls, comps);
    if (!(volume_coefficient(ls, d_H(ls, nu.F)) == f))
        throw EngineError("exactness solver produced a bad potential");
    return nu;
}

} // namespace vseq
