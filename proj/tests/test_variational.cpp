#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support/corpus.hpp"
#include "support/oracles.hpp"
#include "vseq/variational.hpp"

#include <cmath>
#include <functional>

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
const Expr ydd = Expr::field(0, MultiIndex::single(0).extended(0));
const Rational half(1, 2);

using Path = std::function<double(double)>;

// Bindings for one field's jet coordinates along a path, by central
// differences of the path itself.
void bind_path(std::map<Coord, double>& b, int a, const Path& p, double t) {
    const double h = 1e-5;
    b[Coord::field(a)] = p(t);
    b[Coord::field(a, MultiIndex::single(0))] = (p(t + h) - p(t - h)) / (2 * h);
    b[Coord::field(a, MultiIndex::single(0).extended(0))] =
        (p(t + h) - 2 * p(t) + p(t - h)) / (h * h);
}

// Gateaux derivative of the action along compactly supported variations,
// compared against the Euler-Lagrange pairing. First-order Lagrangians.
void check_el_against_action(const JetSpace& s, const Lagrangian& lag,
                             const std::vector<Path>& paths) {
    SourceForm eta = euler_lagrange(s, lag);
    auto bump = [](double t) { return t * t * (1 - t) * (1 - t); };
    const double eps = 1e-5;
    for (int vary = 0; vary < s.fiber_dim(); ++vary) {
        auto action = [&](double shift) {
            return simpson01([&](double t) {
                std::map<Coord, double> b{{Coord::base(0), t}};
                for (int a = 0; a < s.fiber_dim(); ++a) {
                    Path p = paths[a];
                    if (a == vary)
                        bind_path(b, a, [&](double tt) { return p(tt) + shift * bump(tt); }, t);
                    else
                        bind_path(b, a, p, t);
                }
                return evaluate(s, lag.L, b);
            });
        };
        double fd = (action(eps) - action(-eps)) / (2 * eps);
        double pairing = simpson01([&](double t) {
            std::map<Coord, double> b{{Coord::base(0), t}};
            for (int a = 0; a < s.fiber_dim(); ++a) bind_path(b, a, paths[a], t);
            return evaluate(s, eta.comps[vary], b) * bump(t);
        });
        CHECK(fd == doctest::Approx(pairing).epsilon(5e-4));
    }
}

} // namespace

TEST_CASE("free particle Euler-Lagrange with action oracle") {
    JetSpace s = mech();
    Lagrangian lag{Expr::constant(half) * yd * yd};
    SourceForm eta = euler_lagrange(s, lag);
    CHECK(eta.comps[0] == -ydd);
    check_el_against_action(s, lag, {[](double t) { return 0.3 + t - 0.7 * t * t * t; }});
}

TEST_CASE("Euler-Lagrange annihilates total derivatives") {
    Rng rng(51);
    JetSpace s = mech();
    for (int i = 0; i < 20; ++i) {
        Expr f = random_expr(rng, s, 1);
        Lagrangian lag{total_derivative(s, f, 0)};
        CHECK(euler_lagrange(s, lag).is_zero());
    }
    // gauge invariance
    for (int i = 0; i < 10; ++i) {
        Expr f = random_expr(rng, s, 1);
        Expr L0 = random_expr(rng, s, 1);
        SourceForm a = euler_lagrange(s, Lagrangian{L0});
        SourceForm b = euler_lagrange(s, Lagrangian{L0 + total_derivative(s, f, 0)});
        CHECK(a == b);
    }
}

TEST_CASE("charged particle on the sphere: components via the action oracle") {
    JetSpace s(1, 2, 4);
    s.set_base_name(0, "t");
    s.set_field_name(0, "theta");
    s.set_field_name(1, "phi");
    s.add_parameter("g", rat(1));
    Expr th = Expr::field(0), ph_t = Expr::field(1, MultiIndex::single(0));
    Expr th_t = Expr::field(0, MultiIndex::single(0));
    Expr th_tt = Expr::field(0, MultiIndex({0, 0}));
    Expr ph_tt = Expr::field(1, MultiIndex({0, 0}));
    Expr g = Expr::param(0);
    Lagrangian north{Expr::constant(half) * (th_t * th_t + Expr::pow(Expr::sin(th), 2) * ph_t * ph_t) +
                     g * (Expr::integer(1) - Expr::cos(th)) * ph_t};
    SourceForm eta = euler_lagrange(s, north);
    // closed-form checks of both components
    CHECK(eta.comps[0] ==
          Expr::sin(th) * Expr::cos(th) * ph_t * ph_t + g * Expr::sin(th) * ph_t - th_tt);
    CHECK(eta.comps[1] == -Expr::integer(2) * Expr::sin(th) * Expr::cos(th) * th_t * ph_t -
                              Expr::pow(Expr::sin(th), 2) * ph_tt - g * Expr::sin(th) * th_t);
    check_el_against_action(s, north,
                            {[](double t) { return 1.1 + 0.3 * t - 0.2 * t * t; },
                             [](double t) { return 0.4 + 0.9 * t + 0.1 * t * t; }});
}

TEST_CASE("Helmholtz check") {
    JetSpace s = mech();
    SourceForm ok{{-ydd}};
    CHECK(helmholtz_check(s, ok).is_locally_variational);

    SourceForm bad{{yd}};
    auto rep = helmholtz_check(s, bad);
    CHECK(!rep.is_locally_variational);
    CHECK(rep.residuals[0] == Expr::integer(2) * Expr::test_field(0, MultiIndex::single(0)));

    CHECK(helmholtz_check(s, SourceForm(1)).is_locally_variational);
}

TEST_CASE("Helmholtz passes on Euler-Lagrange images (order <= 2, n,m <= 2)") {
    Rng rng(57);
    for (int n = 1; n <= 2; ++n)
        for (int m = 1; m <= 2; ++m) {
            JetSpace s(n, m, 8);
            for (int i = 0; i < 6; ++i) {
                Expr L = random_expr(rng, s, 2, false);
                SourceForm eta = euler_lagrange(s, Lagrangian{L});
                CHECK(helmholtz_check(s, eta).is_locally_variational);
            }
        }
}

TEST_CASE("homotopy Lagrangian inverse problem") {
    JetSpace s = mech();
    Lagrangian l1 = tonti_lagrangian(s, SourceForm{{-ydd}});
    CHECK(l1.L == -Expr::constant(half) * y * ydd);
    CHECK(euler_lagrange(s, l1).comps[0] == -ydd);

    CHECK(tonti_lagrangian(s, SourceForm(1)).is_zero());

    Lagrangian l2 = tonti_lagrangian(s, SourceForm{{-ydd + y}});
    CHECK(l2.L == -Expr::constant(half) * y * ydd + Expr::constant(half) * y * y);
    CHECK(euler_lagrange(s, l2).comps[0] == -ydd + y);

    CHECK_THROWS_AS((void)tonti_lagrangian(s, SourceForm{{yd}}), NotLocallyVariational);
    CHECK_THROWS_AS((void)tonti_lagrangian(s, SourceForm{{Expr::sin(y)}}), NonIntegrableKernel);
}

TEST_CASE("inverse problem round trip on random sources") {
    Rng rng(61);
    for (int n = 1; n <= 2; ++n) {
        JetSpace s(n, 1, 8);
        for (int i = 0; i < 6; ++i) {
            Expr L = random_expr(rng, s, 1, false);
            SourceForm eta = euler_lagrange(s, Lagrangian{L});
            Lagrangian back = tonti_lagrangian(s, eta);
            CHECK(euler_lagrange(s, back) == eta);
        }
    }
}

TEST_CASE("momenta of low-order Lagrangians") {
    JetSpace s = mech();
    Form p = momenta(s, Lagrangian{Expr::constant(half) * yd * yd});
    CHECK(p.coefficient({BasisCovector::theta(0)}) == yd);

    CHECK(momenta(s, Lagrangian{Expr::integer(3)}).is_zero());

    Form p2 = momenta(s, Lagrangian{Expr::constant(half) * y * ydd});
    CHECK(p2.coefficient({BasisCovector::theta(0)}) == -Expr::constant(half) * yd);
    CHECK(p2.coefficient({BasisCovector::theta(0, MultiIndex::single(0))}) ==
          Expr::constant(half) * y);

    Expr y3 = Expr::field(0, MultiIndex({0, 0, 0}));
    CHECK_THROWS_AS((void)momenta(s, Lagrangian{y3 * y}), OrderTooHigh);
}

TEST_CASE("first-variation identity fixes the momenta") {
    Rng rng(67);
    for (int n = 1; n <= 2; ++n) {
        JetSpace s(n, 2, 6);
        for (int i = 0; i < 8; ++i) {
            Expr L = random_expr(rng, s, 2, i % 2 == 0);
            Lagrangian lag{L};
            Form lhs = d_V(s, lagrangian_form(s, lag));
            SourceForm eta = euler_lagrange(s, lag);
            Form rhs(s.base_dim(), s.fiber_dim(), s.base_dim() + 1);
            for (int a = 0; a < s.fiber_dim(); ++a)
                rhs = rhs + eta.comps[a] *
                          wedge(Form::covector(s, BasisCovector::theta(a)), volume(s));
            rhs = rhs - d_H(s, momenta(s, lag));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("exactness solver") {
    JetSpace s = mech();
    Form mu = (yd * ydd) * volume(s);
    auto nu = solve_dH_exact(s, mu);
    REQUIRE(nu.has_value());
    CHECK(nu->F.coefficient({}) == Expr::constant(half) * yd * yd);

    CHECK(solve_dH_exact(s, Form(1, 1, 1))->is_zero());

    CHECK_THROWS_AS((void)solve_dH_exact(s, y * volume(s)), NotClosed);
}

TEST_CASE("exactness solver: angle-linear potential on an overlap") {
    JetSpace s(1, 2, 4);
    s.set_field_name(0, "theta");
    s.set_field_name(1, "phi");
    s.add_parameter("g", rat(1));
    Expr g = Expr::param(0);
    Expr ph = Expr::field(1), ph_t = Expr::field(1, MultiIndex::single(0));
    Form mu = (Expr::integer(2) * g * ph_t) * volume(s);
    // with phi declared an angle the linear multivalued term carries the solution
    auto nu = solve_dH_exact(s, mu, {}, {1});
    REQUIRE(nu.has_value());
    CHECK(nu->F.coefficient({}) == Expr::integer(2) * g * ph);
    // and also without the declaration, where phi is an ordinary coordinate
    auto nu_plain = solve_dH_exact(s, mu);
    REQUIRE(nu_plain.has_value());
    CHECK(nu_plain->F.coefficient({}) == Expr::integer(2) * g * ph);

    // higher powers of a declared angle are excluded from the ansatz
    Form mu2 = (Expr::integer(2) * ph * ph_t) * volume(s);
    CHECK(!solve_dH_exact(s, mu2, {}, {1}).has_value());
    auto nu2 = solve_dH_exact(s, mu2);
    REQUIRE(nu2.has_value());
    CHECK(nu2->F.coefficient({}) == ph * ph);
}

TEST_CASE("exactness solver: ansatz bounds are honest") {
    JetSpace s = mech();
    Form mu = (Expr::pow(y, 5) * yd) * volume(s);
    AnsatzSpec tight;
    tight.max_poly_degree = 4;
    CHECK(!solve_dH_exact(s, mu, tight).has_value());
    AnsatzSpec wide;
    wide.max_poly_degree = 6;
    auto nu = solve_dH_exact(s, mu, wide);
    REQUIRE(nu.has_value());
    CHECK(nu->F.coefficient({}) == Expr::pow(y, 6) / Expr::integer(6));
}

TEST_CASE("exactness solver handles kernels from the target") {
    JetSpace s = mech();
    Expr t = Expr::base(0);
    Form mu = (Expr::exp(y) * yd + Expr::sin(t)) * volume(s);
    auto nu = solve_dH_exact(s, mu);
    REQUIRE(nu.has_value());
    CHECK(nu->F.coefficient({}) == Expr::exp(y) - Expr::cos(t));
}

TEST_CASE("Euler-Lagrange of exact currents vanishes") {
    Rng rng(71);
    for (int n = 1; n <= 2; ++n)
        for (int m = 1; m <= 2; ++m) {
            JetSpace s(n, m, 6);
            for (int i = 0; i < 6; ++i) {
                std::vector<Expr> comps(n);
                for (auto& c : comps) c = random_expr(rng, s, 1, false);
                Current nu = current_from_components(s, comps);
                Expr L = volume_coefficient(s, d_H(s, nu.F));
                CHECK(euler_lagrange(s, Lagrangian{L}).is_zero());
            }
        }
}
