#include "vseq/vectorfield.hpp"

namespace vseq {

namespace {

bool base_only(const Expr& e) {
    for (const auto& c : e.coords())
        if (c.kind != CoordKind::Base && c.kind != CoordKind::Param && c.kind != CoordKind::Pi)
            return false;
    return true;
}

bool point_level(const Expr& e) {
    for (const auto& c : e.coords()) {
        if (c.kind == CoordKind::Field && c.index.order() > 0) return false;
        if (c.kind == CoordKind::TestField || c.kind == CoordKind::Homotopy) return false;
    }
    return true;
}

} // namespace

VectorField::VectorField(const JetSpace& s, std::vector<Expr> xi, std::vector<Expr> Xi)
    : xi_(std::move(xi)), Xi_(std::move(Xi)) {
    if (static_cast<int>(xi_.size()) != s.base_dim() ||
        static_cast<int>(Xi_.size()) != s.fiber_dim())
        throw DimensionMismatch("vector field component count");
    for (const auto& e : xi_)
        if (!base_only(e))
            throw DimensionMismatch("horizontal components must depend on base coordinates only");
    projectable_ = true;
    for (const auto& e : Xi_) projectable_ = projectable_ && point_level(e);
}

VectorField VectorField::zero(const JetSpace& s) {
    return VectorField(s, std::vector<Expr>(s.base_dim()), std::vector<Expr>(s.fiber_dim()));
}

VectorField VectorField::vertical(const JetSpace& s, std::vector<Expr> Xi) {
    return VectorField(s, std::vector<Expr>(s.base_dim()), std::move(Xi));
}

bool VectorField::is_vertical() const {
    for (const auto& e : xi_)
        if (!e.is_zero()) return false;
    return true;
}

bool VectorField::is_zero() const {
    if (!is_vertical()) return false;
    for (const auto& e : Xi_)
        if (!e.is_zero()) return false;
    return true;
}

Expr VectorField::evolutionary(const JetSpace& s, int a) const {
    Expr e = Xi_.at(a);
    for (int mu = 0; mu < s.base_dim(); ++mu)
        e = e - xi_.at(mu) * Expr::field(a, MultiIndex::single(mu));
    return e;
}

const Expr& Prolongation::theta_pairing(int a, const MultiIndex& I) const {
    auto it = vertical.find({a, I});
    if (it == vertical.end())
        throw EngineError("prolongation order too low for requested contact pairing");
    return it->second;
}

Prolongation prolong(const JetSpace& s, const VectorField& v, int k) {
    if (k > s.max_order())
        throw MaxOrderExceeded("prolongation order exceeds the space cap");
    JetSpace ls = s.lifted(k + 1); // evolutionary components reach one order higher
    Prolongation p;
    for (int mu = 0; mu < s.base_dim(); ++mu) p.xi.push_back(v.xi(mu));

    std::vector<std::vector<MultiIndex>> levels(k + 1);
    levels[0].push_back(MultiIndex{});
    for (int o = 1; o <= k; ++o)
        for (const auto& I : levels[o - 1])
            for (int mu = 0; mu < s.base_dim(); ++mu) {
                MultiIndex up = I.extended(mu);
                bool seen = false;
                for (const auto& J : levels[o]) seen = seen || J == up;
                if (!seen) levels[o].push_back(up);
            }

    for (int a = 0; a < s.fiber_dim(); ++a) {
        Expr ev = v.evolutionary(ls, a);
        p.vertical[{a, MultiIndex{}}] = ev;
        for (int o = 1; o <= k; ++o)
            for (const auto& I : levels[o]) {
                MultiIndex down = I.reduced(I.dirs().front());
                p.vertical[{a, I}] =
                    total_derivative(ls, p.vertical.at({a, down}), I.dirs().front());
            }
    }
    return p;
}

Expr prolonged_component(const JetSpace& s, const Prolongation& p, int a, const MultiIndex& I) {
    Expr full = p.theta_pairing(a, I);
    JetSpace ls = s.lifted(I.order() + 1);
    for (int mu = 0; mu < s.base_dim(); ++mu)
        full = full + p.xi.at(mu) * Expr::field(a, I.extended(mu));
    return full;
}

Form contract(const JetSpace& s, const VectorField& v, const Form& f, ContractPart part) {
    if (f.degree() == 0) throw DegreeZero();
    if (f.is_zero()) return Form(f.base_dim(), f.fiber_dim(), f.degree() - 1);

    int max_theta = 0;
    for (const auto& t : f.terms())
        for (const auto& b : t.factors)
            if (!b.is_dx) max_theta = std::max(max_theta, b.index.order());
    JetSpace ls = s.lifted(std::max(s.max_order(), max_theta + 1));
    Prolongation p = prolong(ls, v, max_theta);

    const bool use_h = part != ContractPart::Vertical;
    const bool use_v = part != ContractPart::Horizontal;

    std::vector<FormTerm> raw;
    for (const auto& t : f.terms()) {
        int sign = 1;
        for (std::size_t j = 0; j < t.factors.size(); ++j) {
            const auto& b = t.factors[j];
            Expr pairing;
            if (b.is_dx && use_h) pairing = p.xi.at(b.id);
            if (!b.is_dx && use_v) pairing = p.theta_pairing(b.id, b.index);
            if (!pairing.is_zero()) {
                FormTerm nt;
                nt.coeff = (sign < 0 ? -Expr::integer(1) : Expr::integer(1)) * pairing * t.coeff;
                nt.factors.assign(t.factors.begin(), t.factors.begin() + j);
                nt.factors.insert(nt.factors.end(), t.factors.begin() + j + 1, t.factors.end());
                raw.push_back(std::move(nt));
            }
            sign = -sign;
        }
    }
    return Form::from_terms(ls, f.degree() - 1, std::move(raw));
}

} // namespace vseq
