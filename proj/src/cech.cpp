#include "vseq/cech.hpp"

#include "vseq/quadrature.hpp"

#include <cmath>

namespace vseq {

namespace {

Lagrangian cochain_sub(const Lagrangian& a, const Lagrangian& b) { return {a.L - b.L}; }
Current cochain_sub(const Current& a, const Current& b) { return {a.F - b.F}; }
SourceForm cochain_sub(const SourceForm& a, const SourceForm& b) {
    SourceForm out(static_cast<int>(a.comps.size()));
    for (std::size_t i = 0; i < a.comps.size(); ++i) out.comps[i] = a.comps[i] - b.comps[i];
    return out;
}

Lagrangian cochain_add(const Lagrangian& a, const Lagrangian& b) { return {a.L + b.L}; }
Current cochain_add(const Current& a, const Current& b) { return {a.F + b.F}; }
SourceForm cochain_add(const SourceForm& a, const SourceForm& b) {
    return cochain_sub(a, cochain_sub(SourceForm(static_cast<int>(a.comps.size())), b));
}

} // namespace

template <class T>
Cochain<T> coboundary(const Cover& K, const Cochain<T>& c) {
    if (c.degree != 0) throw EngineError("coboundary expects a 0-cochain here");
    Cochain<T> out;
    out.degree = 1;
    for (std::size_t p = 0; p < K.pairs().size(); ++p) {
        const auto& pc = K.pairs()[p];
        out.values[static_cast<int>(p)] =
            cochain_sub(pc.j_in_i.apply(c.at(pc.j)), c.at(pc.i));
    }
    return out;
}

template <class T>
Cochain<T> coboundary1(const Cover& K, const Cochain<T>& c) {
    if (c.degree != 1) throw EngineError("coboundary1 expects a 1-cochain");
    Cochain<T> out;
    out.degree = 2;
    for (std::size_t t = 0; t < K.triples().size(); ++t) {
        const auto& tc = K.triples()[t];
        const Transition& align = K.pairs().at(tc.pair_ij).j_in_i;
        T v = cochain_sub(align.apply(c.at(tc.pair_jk)), c.at(tc.pair_ik));
        out.values[static_cast<int>(t)] = cochain_add(v, c.at(tc.pair_ij));
    }
    return out;
}

template Cochain<Lagrangian> coboundary(const Cover&, const Cochain<Lagrangian>&);
template Cochain<Current> coboundary(const Cover&, const Cochain<Current>&);
template Cochain<SourceForm> coboundary(const Cover&, const Cochain<SourceForm>&);
template Cochain<Lagrangian> coboundary1(const Cover&, const Cochain<Lagrangian>&);
template Cochain<Current> coboundary1(const Cover&, const Cochain<Current>&);
template Cochain<SourceForm> coboundary1(const Cover&, const Cochain<SourceForm>&);

Form restrict_to_zero_jets(const JetSpace& s, const Form& f) {
    if (f.is_zero() || f.jet_order() == 0) return f;
    std::vector<FormTerm> raw;
    for (const auto& t : f.terms()) {
        std::map<Coord, Expr> sigma;
        for (const auto& c : t.coeff.coords())
            if (c.kind == CoordKind::Field && !c.index.empty()) sigma[c] = Expr();
        raw.push_back({substitute(t.coeff, sigma), t.factors});
    }
    return Form::from_terms(s, f.degree(), std::move(raw));
}

Form fiber_exterior_derivative(const JetSpace& s, const Form& f) {
    std::vector<FormTerm> raw;
    for (const auto& t : f.terms()) {
        for (const auto& b : t.factors)
            if (!b.is_dx && !b.index.empty())
                throw ChartMismatch("dy-basis form expected (contact covectors of order zero)");
        for (const auto& c : t.coeff.coords()) {
            if (c.kind == CoordKind::Field && !c.index.empty())
                throw ChartMismatch("period potentials must not depend on jet coordinates");
            if (c.kind != CoordKind::Base && c.kind != CoordKind::Field) continue;
            Expr dc = partial(t.coeff, c);
            if (dc.is_zero()) continue;
            FormTerm nt;
            nt.coeff = std::move(dc);
            nt.factors.push_back(c.kind == CoordKind::Base ? BasisCovector::dx(c.id)
                                                           : BasisCovector::theta(c.id));
            nt.factors.insert(nt.factors.end(), t.factors.begin(), t.factors.end());
            raw.push_back(std::move(nt));
        }
    }
    return Form::from_terms(s, f.degree() + 1, std::move(raw));
}

double period_piece(const Cover& K, const Form& w, const CyclePiece& piece, int dimension,
                    int nodes) {
    const JetSpace& s = K.space();
    if (w.is_zero()) return 0.0;
    if (w.degree() != dimension) throw ChartMismatch("form degree must match the cycle dimension");

    std::map<Coord, Expr> pm = piece.param;
    for (int mu = 0; mu < s.base_dim(); ++mu)
        if (!pm.count(Coord::base(mu))) pm[Coord::base(mu)] = Expr();

    const Coord s0 = Coord::param(K.s_param(0));
    const Coord s1 = Coord::param(K.s_param(1));

    auto coord_of = [](const BasisCovector& b) {
        if (b.is_dx) return Coord::base(b.id);
        if (!b.index.empty()) throw ChartMismatch("cannot integrate jet covectors over a cycle");
        return Coord::field(b.id);
    };
    auto param_of = [&](const Coord& c) -> const Expr& {
        auto it = pm.find(c);
        if (it == pm.end())
            throw ChartMismatch("cycle parametrization misses coordinate " + s.coord_name(c));
        return it->second;
    };

    Expr integrand;
    for (const auto& t : w.terms()) {
        for (const auto& c : t.coeff.coords())
            if (c.kind == CoordKind::Field && !c.index.empty())
                throw ChartMismatch("period integrand depends on jet coordinates");
        Expr pulled = substitute(t.coeff, pm);
        if (dimension == 1) {
            integrand = integrand + pulled * partial(param_of(coord_of(t.factors[0])), s0);
        } else {
            const Expr& p0 = param_of(coord_of(t.factors[0]));
            const Expr& p1 = param_of(coord_of(t.factors[1]));
            Expr jac = partial(p0, s0) * partial(p1, s1) - partial(p0, s1) * partial(p1, s0);
            integrand = integrand + pulled * jac;
        }
    }
    if (integrand.is_zero()) return 0.0;

    QuadratureRule rule = gauss_legendre_01(nodes);
    double total = 0.0;
    if (dimension == 1) {
        for (int i = 0; i < nodes; ++i)
            total += rule.weights[i] * evaluate(s, integrand, {{s0, rule.nodes[i]}});
    } else {
        for (int i = 0; i < nodes; ++i)
            for (int j = 0; j < nodes; ++j)
                total += rule.weights[i] * rule.weights[j] *
                         evaluate(s, integrand, {{s0, rule.nodes[i]}, {s1, rule.nodes[j]}});
    }
    return total;
}

double period(const Cover& K, const Form& w, const Cycle& c, int nodes) {
    double total = 0.0;
    for (const auto& piece : c.pieces) total += period_piece(K, w, piece, c.dimension, nodes);
    return total;
}

DeltaPrimeResult connecting_delta_prime(const Cover& K, const Cochain<Lagrangian>& mu,
                                        const AnsatzSpec& spec, int nodes, double tolerance) {
    const JetSpace& s = K.space();
    DeltaPrimeResult res;
    res.potentials.degree = 0;
    for (int i = 0; i < K.chart_count(); ++i) {
        const Lagrangian& m = mu.at(i);
        if (!euler_lagrange(s, m).is_zero())
            throw NotClosed("chart " + K.chart_name(i) + " value is not variationally trivial");
        if (m.is_zero()) {
            res.potentials.values[i] = zero_current(s);
            continue;
        }
        auto nu = solve_dH_exact(s, lagrangian_form(s, m), spec, K.angle_fields(i));
        if (!nu)
            throw NoSolution("no horizontal potential on chart " + K.chart_name(i) +
                             " within the ansatz");
        res.potentials.values[i] = *nu;
    }
    res.dnu = coboundary(K, res.potentials);
    for (const auto& c : K.cycles()) {
        if (c.dimension != s.base_dim()) continue;
        double p = 0.0;
        for (const auto& piece : c.pieces) {
            // the cocycle jumps are constants, so the zero-jet section is as
            // good as any other
            Form w = fiber_exterior_derivative(
                s, restrict_to_zero_jets(s, res.potentials.at(piece.chart).F));
            p += period_piece(K, w, piece, c.dimension, nodes);
        }
        res.periods[c.name] = p;
        res.trivial = res.trivial && std::abs(p) <= tolerance;
    }
    return res;
}

DeltaResult connecting_delta(const Cover& K, const Cochain<Lagrangian>& lambdas,
                             const AnsatzSpec& spec, int nodes, double tolerance) {
    const JetSpace& s = K.space();
    DeltaResult res;
    res.eta.degree = 0;
    for (int i = 0; i < K.chart_count(); ++i)
        res.eta.values[i] = euler_lagrange(s, lambdas.at(i));

    res.eta_global = cochain_is_zero(coboundary(K, res.eta));
    if (!res.eta_global)
        throw NotClosed("local Euler-Lagrange forms do not agree across overlaps");

    res.helmholtz_ok = true;
    for (int i = 0; i < K.chart_count(); ++i)
        res.helmholtz_ok =
            res.helmholtz_ok && helmholtz_check(s, res.eta.at(i)).is_locally_variational;
    if (!res.helmholtz_ok)
        throw NotLocallyVariational("a chart fails the Helmholtz conditions");

    res.dlambda = coboundary(K, lambdas);
    res.gamma.degree = 1;
    for (std::size_t p = 0; p < K.pairs().size(); ++p) {
        const Lagrangian& diff = res.dlambda.at(static_cast<int>(p));
        if (diff.is_zero()) {
            res.gamma.values[static_cast<int>(p)] = zero_current(s);
            continue;
        }
        auto g = solve_dH_exact(s, lagrangian_form(s, diff), spec,
                                K.angle_fields(K.pairs()[p].i));
        if (!g)
            throw NoSolution("no overlap potential on " + K.pair_label(static_cast<int>(p)) +
                             " within the ansatz");
        res.gamma.values[static_cast<int>(p)] = *g;
    }

    for (const auto& c : K.cycles()) {
        if (c.dimension != s.base_dim()) continue;
        bool in_overlaps = true;
        for (const auto& piece : c.pieces) in_overlaps = in_overlaps && piece.pair_component.has_value();
        if (!in_overlaps) continue;
        double p = 0.0;
        for (const auto& piece : c.pieces) {
            Form w = fiber_exterior_derivative(
                s, restrict_to_zero_jets(s, res.gamma.at(*piece.pair_component).F));
            p += period_piece(K, w, piece, c.dimension, nodes);
        }
        res.periods[c.name] = p;
        res.trivial = res.trivial && std::abs(p) <= tolerance;
    }
    return res;
}

void require_global_field(const Cover& K, const VectorField& v) {
    for (const auto& p : K.pairs())
        for (int a = 0; a < K.space().fiber_dim(); ++a)
            if (!(p.j_in_i.apply(v.Xi(a)) == v.Xi(a)))
                throw FieldNotGlobal("vertical component " + std::to_string(a) +
                                     " changes across overlap " + K.chart_name(p.i) + "," +
                                     K.chart_name(p.j));
}

Cochain<Lagrangian> lie_derive_cochain(const Cover& K, const Cochain<Lagrangian>& c,
                                       const VectorField& v) {
    require_global_field(K, v);
    Cochain<Lagrangian> out;
    out.degree = c.degree;
    for (const auto& [key, val] : c.values)
        out.values[key] = lie_derive_lagrangian(K.space(), val, v);
    return out;
}

Cochain<Current> lie_derive_cochain(const Cover& K, const Cochain<Current>& c,
                                    const VectorField& v) {
    require_global_field(K, v);
    Cochain<Current> out;
    out.degree = c.degree;
    for (const auto& [key, val] : c.values)
        out.values[key] = lie_derive_current(K.space(), val, v);
    return out;
}

Cochain<SourceForm> lie_derive_cochain(const Cover& K, const Cochain<SourceForm>& c,
                                       const VectorField& v) {
    require_global_field(K, v);
    Cochain<SourceForm> out;
    out.degree = c.degree;
    for (const auto& [key, val] : c.values)
        out.values[key] = euler_lagrange(K.space(), vertical_contraction(K.space(), val, v));
    return out;
}

} // namespace vseq
