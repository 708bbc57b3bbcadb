#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support/corpus.hpp"
#include "vseq/form.hpp"
#include "vseq/vectorfield.hpp"

#include <cmath>

using namespace vseq;
using namespace vseq::testing;

namespace {

JetSpace mech() {
    JetSpace s(1, 1, 4);
    s.set_base_name(0, "t");
    s.set_field_name(0, "y");
    return s;
}

const Expr y = Expr::field(0);
const Expr yd = Expr::field(0, MultiIndex::single(0));
const Rational half(1, 2);

Form random_form(Rng& rng, const JetSpace& s, int degree) {
    std::vector<BasisCovector> pool;
    for (int mu = 0; mu < s.base_dim(); ++mu) pool.push_back(BasisCovector::dx(mu));
    for (int a = 0; a < s.fiber_dim(); ++a) {
        pool.push_back(BasisCovector::theta(a));
        for (int mu = 0; mu < s.base_dim(); ++mu)
            pool.push_back(BasisCovector::theta(a, MultiIndex::single(mu)));
    }
    std::vector<FormTerm> ts;
    const int terms = rand_int(rng, 1, 3);
    for (int t = 0; t < terms; ++t) {
        FormTerm ft;
        ft.coeff = random_expr(rng, s, 1);
        for (int d = 0; d < degree; ++d)
            ft.factors.push_back(pool[rand_int(rng, 0, static_cast<int>(pool.size()) - 1)]);
        ts.push_back(std::move(ft));
    }
    return Form::from_terms(s, degree, std::move(ts));
}

} // namespace

TEST_CASE("wedge basics") {
    JetSpace s = mech();
    Form dt = Form::covector(s, BasisCovector::dx(0));
    Form th = Form::covector(s, BasisCovector::theta(0));
    CHECK(wedge(dt, dt).is_zero());
    // reversing the arguments flips the sign on the canonical basis
    Form a = wedge(dt, th);
    Form b = wedge(th, dt);
    CHECK(a == -b);
    CHECK(a.coefficient({BasisCovector::dx(0), BasisCovector::theta(0)}) == Expr::integer(1));
    CHECK(b.coefficient({BasisCovector::dx(0), BasisCovector::theta(0)}) == Expr::integer(-1));
    Form yw = wedge(y * dt, yd * th);
    CHECK(yw.coefficient({BasisCovector::dx(0), BasisCovector::theta(0)}) == y * yd);
}

TEST_CASE("wedge is graded commutative on a corpus") {
    Rng rng(23);
    JetSpace s(2, 2, 4);
    for (int i = 0; i < 20; ++i) {
        int p = rand_int(rng, 1, 2), q = rand_int(rng, 1, 2);
        Form a = random_form(rng, s, p);
        Form b = random_form(rng, s, q);
        Form lhs = wedge(a, b);
        Form rhs = wedge(b, a);
        if ((p * q) % 2) rhs = -rhs;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("horizontal differential basics") {
    JetSpace s = mech();
    Form f = Form::scalar(s, y);
    Form df = d_H(s, f);
    CHECK(df.coefficient({BasisCovector::dx(0)}) == yd);
    // top horizontal degree dies
    Form lag = Form::from_terms(s, 1, {{Expr::constant(half) * yd * yd, {BasisCovector::dx(0)}}});
    CHECK(d_H(s, lag).is_zero());
    // structure rule on contact factors
    Form th = Form::covector(s, BasisCovector::theta(0));
    Form dth = d_H(s, th);
    CHECK(dth.coefficient({BasisCovector::dx(0), BasisCovector::theta(0, MultiIndex::single(0))}) ==
          Expr::integer(1));
}

TEST_CASE("vertical differential basics") {
    JetSpace s = mech();
    Form dv = d_V(s, Form::scalar(s, Expr::constant(half) * yd * yd));
    CHECK(dv.coefficient({BasisCovector::theta(0, MultiIndex::single(0))}) == yd);
    CHECK(d_V(s, Form::scalar(s, Expr::base(0))).is_zero());
}

TEST_CASE("differential complex identities on a corpus") {
    Rng rng(29);
    for (int n = 1; n <= 2; ++n)
        for (int m = 1; m <= 2; ++m) {
            JetSpace s(n, m, 6);
            for (int i = 0; i < 10; ++i) {
                Form f = random_form(rng, s, rand_int(rng, 0, 2));
                CHECK(d_H(s, d_H(s, f)).is_zero());
                CHECK(d_V(s, d_V(s, f)).is_zero());
                CHECK((d_H(s, d_V(s, f)) + d_V(s, d_H(s, f))).is_zero());
            }
        }
}

TEST_CASE("horizontalization") {
    JetSpace s = mech();
    Form dy0 = Form::dy(s, 0);
    Form h = horizontalize(dy0);
    CHECK(h.coefficient({BasisCovector::dx(0)}) == yd);
    CHECK(horizontalize(Form::covector(s, BasisCovector::theta(0))).is_zero());
    CHECK(horizontalize(wedge(dy0, Form::covector(s, BasisCovector::dx(0)))).is_zero());
    Rng rng(31);
    JetSpace s2(2, 2, 4);
    for (int i = 0; i < 10; ++i) {
        Form f = random_form(rng, s2, 2);
        CHECK(horizontalize(horizontalize(f)) == horizontalize(f));
    }
}

TEST_CASE("prolongation formulas") {
    JetSpace s = mech();
    // constant vertical field
    VectorField shift = VectorField::vertical(s, {Expr::integer(1)});
    Prolongation p = prolong(s, shift, 1);
    CHECK(p.theta_pairing(0, MultiIndex::single(0)).is_zero());
    // linear vertical field
    VectorField scale = VectorField::vertical(s, {y});
    Prolongation ps = prolong(s, scale, 1);
    CHECK(ps.theta_pairing(0, MultiIndex::single(0)) == yd);
    // pure time translation: full first prolonged component vanishes
    VectorField time(s, {Expr::integer(1)}, {Expr()});
    Prolongation pt = prolong(s, time, 1);
    CHECK(pt.theta_pairing(0, MultiIndex::single(0)) == -Expr::field(0, MultiIndex::single(0).extended(0)));
    CHECK(prolonged_component(s, pt, 0, MultiIndex::single(0)).is_zero());
}

TEST_CASE("prolongation against a flow-pushforward finite difference") {
    JetSpace s = mech();
    // xi = t^2 d/dt, Xi = t*y d/dy
    Expr t = Expr::base(0);
    VectorField v(s, {t * t}, {t * y});
    Prolongation p = prolong(s, v, 1);
    Expr comp = prolonged_component(s, p, 0, MultiIndex::single(0));

    auto sec = [](double tt) { return 1.0 + tt + tt * tt * tt; };
    auto dsec = [](double tt) { return 1.0 + 3.0 * tt * tt; };
    const double t0 = 0.3;
    auto slope = [&](double eps) {
        const double dl = 1e-4;
        auto T = [&](double tt) { return tt + eps * tt * tt; };
        auto Y = [&](double tt) { return sec(tt) + eps * tt * sec(tt); };
        return (Y(t0 + dl) - Y(t0 - dl)) / (T(t0 + dl) - T(t0 - dl));
    };
    const double h = 1e-5;
    double fd = (slope(h) - slope(-h)) / (2 * h);
    double sym = evaluate(s, comp,
                          {{Coord::base(0), t0},
                           {Coord::field(0), sec(t0)},
                           {Coord::field(0, MultiIndex::single(0)), dsec(t0)}});
    CHECK(sym == doctest::Approx(fd).epsilon(1e-4));
}

TEST_CASE("contraction basics") {
    JetSpace s = mech();
    VectorField shift = VectorField::vertical(s, {Expr::integer(1)});
    VectorField time(s, {Expr::integer(1)}, {Expr()});
    Form th = Form::covector(s, BasisCovector::theta(0));
    Form dt = Form::covector(s, BasisCovector::dx(0));
    CHECK(contract(s, shift, th).coefficient({}) == Expr::integer(1));
    CHECK(contract(s, time, dt).coefficient({}) == Expr::integer(1));
    Form mixed = Form::from_terms(
        s, 2, {{yd, {BasisCovector::dx(0), BasisCovector::theta(0, MultiIndex::single(0))}}});
    CHECK(contract(s, shift, mixed).is_zero());
    CHECK_THROWS_AS((void)contract(s, shift, Form::scalar(s, y)), DegreeZero);
}

TEST_CASE("contraction is an antiderivation") {
    Rng rng(37);
    JetSpace s(2, 2, 5);
    for (int i = 0; i < 15; ++i) {
        Form a = random_form(rng, s, 1);
        Form b = random_form(rng, s, rand_int(rng, 1, 2));
        std::vector<Coord> bpool = {Coord::base(0), Coord::base(1)};
        VectorField v(s, {random_poly(rng, bpool, 2, 1), Expr()},
                      {random_expr(rng, s, 1, false), random_expr(rng, s, 1, false)});
        Form lhs = contract(s, v, wedge(a, b));
        Form rhs = wedge(contract(s, v, a), b) - wedge(a, contract(s, v, b));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("contraction of the full differential is the Lie pairing") {
    Rng rng(41);
    JetSpace s(2, 2, 5);
    for (int i = 0; i < 10; ++i) {
        Expr f = random_expr(rng, s, 1);
        std::vector<Coord> bpool = {Coord::base(0), Coord::base(1)};
        VectorField v(s, {random_poly(rng, bpool, 2, 1), random_poly(rng, bpool, 2, 1)},
                      {random_expr(rng, s, 0, false), random_expr(rng, s, 0, false)});
        Form df = d_H(s, Form::scalar(s, f)) + d_V(s, Form::scalar(s, f));
        Expr got = contract(s, v, df).coefficient({});
        // full pairing of the prolonged field with df
        Prolongation p = prolong(s, v, f.jet_order());
        Expr want;
        for (const auto& c : f.coords()) {
            if (c.kind == CoordKind::Base) want = want + v.xi(c.id) * partial(f, c);
            if (c.kind == CoordKind::Field)
                want = want + prolonged_component(s, p, c.id, c.index) * partial(f, c);
        }
        CHECK(got == want);
    }
}
