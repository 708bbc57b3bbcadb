#include "vseq/cech.hpp"

#include <algorithm>

namespace vseq {

namespace {

bool constant_expr(const Expr& e) {
    for (const auto& c : e.coords())
        if (c.kind != CoordKind::Param && c.kind != CoordKind::Pi) return false;
    return true;
}

} // namespace

void Transition::set_shift(int field, Expr offset) {
    if (!constant_expr(offset))
        throw EngineError("transitions are restricted to constant shifts");
    if (offset.is_zero())
        shifts_.erase(field);
    else
        shifts_[field] = std::move(offset);
}

Transition Transition::inverse() const {
    Transition t;
    for (const auto& [a, off] : shifts_) t.shifts_[a] = -off;
    return t;
}

Expr Transition::apply(const Expr& e) const {
    if (shifts_.empty()) return e;
    std::map<Coord, Expr> sigma;
    for (const auto& [a, off] : shifts_) sigma[Coord::field(a)] = Expr::field(a) + off;
    return substitute(e, sigma);
}

Form Transition::apply(const Form& f) const {
    if (shifts_.empty() || f.is_zero()) return f;
    JetSpace s(f.base_dim(), f.fiber_dim(), f.jet_order() + 1);
    std::vector<FormTerm> ts;
    for (const auto& t : f.terms()) ts.push_back({apply(t.coeff), t.factors});
    return Form::from_terms(s, f.degree(), std::move(ts));
}

SourceForm Transition::apply(const SourceForm& v) const {
    SourceForm out(static_cast<int>(v.comps.size()));
    for (std::size_t a = 0; a < v.comps.size(); ++a) out.comps[a] = apply(v.comps[a]);
    return out;
}

std::optional<int> Cover::find_chart(const std::string& n) const {
    for (int i = 0; i < chart_count(); ++i)
        if (chart_names_[i] == n) return i;
    return std::nullopt;
}

const Cycle* Cover::find_cycle(const std::string& n) const {
    for (const auto& c : cycles_)
        if (c.name == n) return &c;
    return nullptr;
}

std::string Cover::pair_label(int p) const {
    const auto& pc = pairs_.at(p);
    return chart_names_.at(pc.i) + "," + chart_names_.at(pc.j) + "#" + pc.name;
}

std::string Cover::triple_label(int t) const {
    const auto& tc = triples_.at(t);
    return chart_names_.at(tc.i) + "," + chart_names_.at(tc.j) + "," + chart_names_.at(tc.k) +
           "#" + tc.name;
}

void Cover::validate() const {
    JetSpace scratch = space_.lifted(space_.max_order() + 1);
    for (const auto& p : pairs_) {
        if (!(p.i < p.j)) throw EngineError("pair component charts must be ordered");
        for (int a = 0; a < space_.fiber_dim(); ++a) {
            Expr ya = Expr::field(a);
            // round trip through the inverse
            if (!(p.j_in_i.inverse().apply(p.j_in_i.apply(ya)) == ya))
                throw EngineError("transition inverse mismatch");
            // constant shifts commute with total derivatives (jet chain rule)
            for (int mu = 0; mu < space_.base_dim(); ++mu) {
                Expr lhs = total_derivative(scratch, p.j_in_i.apply(ya), mu);
                Expr rhs = p.j_in_i.apply(total_derivative(scratch, ya, mu));
                if (!(lhs == rhs)) throw EngineError("transition fails the jet chain rule");
            }
        }
    }
    for (const auto& t : triples_) {
        const auto& ij = pairs_.at(t.pair_ij);
        const auto& jk = pairs_.at(t.pair_jk);
        const auto& ik = pairs_.at(t.pair_ik);
        if (ij.i != t.i || ij.j != t.j || jk.i != t.j || jk.j != t.k || ik.i != t.i || ik.j != t.k)
            throw EngineError("triple component references inconsistent pairs");
        for (int a = 0; a < space_.fiber_dim(); ++a) {
            Expr ya = Expr::field(a);
            if (!(ij.j_in_i.apply(jk.j_in_i.apply(ya)) == ik.j_in_i.apply(ya)))
                throw EngineError("transition cocycle condition fails on a triple component");
        }
    }
    for (const auto& c : cycles_) {
        if (c.dimension < 1 || c.dimension > 2) throw EngineError("cycle dimension must be 1 or 2");
        for (const auto& piece : c.pieces) {
            if (piece.chart < 0 || piece.chart >= chart_count())
                throw EngineError("cycle piece chart out of range");
            if (piece.pair_component &&
                pairs_.at(*piece.pair_component).i != piece.chart)
                throw EngineError("cycle piece frame must be the lower chart of its overlap");
            for (const auto& [coord, expr] : piece.param) {
                if (coord.kind != CoordKind::Base &&
                    !(coord.kind == CoordKind::Field && coord.index.empty()))
                    throw EngineError("cycle parametrizations cover order-zero coordinates only");
                (void)expr;
            }
        }
    }
}

Cover Cover::single_chart(JetSpace space) {
    Cover K;
    K.name_ = "single";
    K.s_params_.push_back(space.find_parameter("s0") ? *space.find_parameter("s0")
                                                     : space.add_parameter("s0"));
    K.s_params_.push_back(space.find_parameter("s1") ? *space.find_parameter("s1")
                                                     : space.add_parameter("s1"));
    K.space_ = std::move(space);
    K.chart_names_ = {"main"};
    K.angle_fields_.resize(1);
    K.validate();
    return K;
}

Cover Cover::circle_fiber(JetSpace space, int angle_field, const std::string& name) {
    if (angle_field < 0 || angle_field >= space.fiber_dim())
        throw DimensionMismatch("angle field out of range for the circle cover");
    Cover K;
    K.name_ = name;
    K.s_params_.push_back(space.find_parameter("s0") ? *space.find_parameter("s0")
                                                     : space.add_parameter("s0"));
    K.s_params_.push_back(space.find_parameter("s1") ? *space.find_parameter("s1")
                                                     : space.add_parameter("s1"));
    K.space_ = std::move(space);
    K.chart_names_ = {"E", "W"};
    K.angle_fields_.assign(2, {angle_field});

    Expr two_pi = Expr::integer(2) * Expr::pi();
    PairComponent A{0, 1, "A", {}};
    PairComponent B{0, 1, "B", {}};
    B.j_in_i.set_shift(angle_field, two_pi);
    K.pairs_ = {A, B};

    const JetSpace& s = K.space_;
    Expr s0 = Expr::param(K.s_params_[0]);
    Expr half_pi = Expr::pi() / Expr::integer(2);
    Cycle fiber;
    fiber.name = "fiber-circle";
    fiber.dimension = 1;
    CyclePiece east;
    east.chart = 0;
    east.param[Coord::field(angle_field)] = Expr::pi() * s0 - half_pi;
    CyclePiece west;
    west.chart = 1;
    west.param[Coord::field(angle_field)] = Expr::pi() * s0 + half_pi;
    fiber.pieces = {east, west};
    if (s.base_dim() == 1) K.cycles_ = {fiber};

    K.validate();
    return K;
}

Cover Cover::sphere_four_charts(JetSpace space) {
    if (space.fiber_dim() < 2)
        throw DimensionMismatch("the sphere cover needs a polar and an azimuth field");
    Cover K;
    K.name_ = "R-x-S2-monopole";
    K.s_params_.push_back(space.find_parameter("s0") ? *space.find_parameter("s0")
                                                     : space.add_parameter("s0"));
    K.s_params_.push_back(space.find_parameter("s1") ? *space.find_parameter("s1")
                                                     : space.add_parameter("s1"));
    K.space_ = std::move(space);
    // south charts first so the canonical overlap cocycle carries a positive
    // azimuth coefficient
    K.chart_names_ = {"SE", "SW", "NE", "NW"};
    const int az = 1;
    K.angle_fields_.assign(4, {az});

    Expr two_pi = Expr::integer(2) * Expr::pi();
    auto shifted = [&](int i, int j, const char* nm, const Expr& off) {
        PairComponent p{i, j, nm, {}};
        if (!off.is_zero()) p.j_in_i.set_shift(az, off);
        return p;
    };
    K.pairs_ = {
        shifted(0, 1, "A", Expr()),   // 0
        shifted(0, 1, "B", two_pi),   // 1
        shifted(0, 2, "A", Expr()),   // 2
        shifted(0, 3, "A", Expr()),   // 3
        shifted(0, 3, "B", two_pi),   // 4
        shifted(1, 2, "A", Expr()),   // 5
        shifted(1, 2, "B", -two_pi),  // 6
        shifted(1, 3, "A", Expr()),   // 7
        shifted(2, 3, "A", Expr()),   // 8
        shifted(2, 3, "B", two_pi),   // 9
    };
    K.triples_ = {
        {0, 1, 2, "A", 0, 5, 2}, {0, 1, 2, "B", 1, 6, 2},
        {0, 1, 3, "A", 0, 7, 3}, {0, 1, 3, "B", 1, 7, 4},
        {0, 2, 3, "A", 2, 8, 3}, {0, 2, 3, "B", 2, 9, 4},
        {1, 2, 3, "A", 5, 8, 7}, {1, 2, 3, "B", 6, 9, 7},
    };

    Expr s0 = Expr::param(K.s_params_[0]);
    Expr s1 = Expr::param(K.s_params_[1]);
    Expr half_pi = Expr::pi() / Expr::integer(2);

    Cycle equator;
    equator.name = "equator";
    equator.dimension = 1;
    {
        CyclePiece south_east;
        south_east.chart = 0;
        south_east.pair_component = 2; // SE cap NE band
        south_east.param[Coord::field(0)] = half_pi;
        south_east.param[Coord::field(az)] = Expr::pi() * s0 - half_pi;
        CyclePiece south_west;
        south_west.chart = 1;
        south_west.pair_component = 7; // SW cap NW band
        south_west.param[Coord::field(0)] = half_pi;
        south_west.param[Coord::field(az)] = Expr::pi() * s0 + half_pi;
        equator.pieces = {south_east, south_west};
    }

    Cycle sphere;
    sphere.name = "fiber-sphere";
    sphere.dimension = 2;
    {
        CyclePiece north;
        north.chart = 2;
        north.param[Coord::field(0)] = half_pi * s0;
        north.param[Coord::field(az)] = two_pi * s1 - Expr::pi();
        CyclePiece south;
        south.chart = 0;
        south.param[Coord::field(0)] = half_pi + half_pi * s0;
        south.param[Coord::field(az)] = two_pi * s1 - Expr::pi();
        sphere.pieces = {north, south};
    }

    K.cycles_ = {equator, sphere};
    K.validate();
    return K;
}

std::vector<std::string> Cover::builtin_names() {
    return {"single", "R-x-S1", "R2-x-S1", "R-x-S2-monopole"};
}

Cover Cover::by_name(JetSpace space, const std::string& name) {
    if (name == "single" || name.empty()) return single_chart(std::move(space));
    if (name == "R-x-S1" || name == "R2-x-S1") return circle_fiber(std::move(space), 0, name);
    if (name == "R-x-S2-monopole") return sphere_four_charts(std::move(space));
    throw EngineError("unknown cover '" + name + "'");
}

} // namespace vseq
