#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support/corpus.hpp"
#include "support/fixtures.hpp"
#include "vseq/cech.hpp"

#include <cmath>

using namespace vseq;
using namespace vseq::testing;

TEST_CASE("builtin covers pass their construction invariants") {
    for (const auto& name : Cover::builtin_names()) {
        JetSpace s(name == "R2-x-S1" ? 2 : 1, 2, 4);
        CHECK_NOTHROW((void)Cover::by_name(s, name));
    }
    JetSpace s(1, 2, 4);
    CHECK_THROWS_AS((void)Cover::by_name(s, "moebius"), EngineError);
}

TEST_CASE("coboundary of a global cochain vanishes") {
    auto [K, lam, rot, gid] = make_monopole();
    Cochain<Lagrangian> global;
    global.degree = 0;
    Lagrangian same{Expr::field(0, MultiIndex::single(0))}; // theta_t, shift-invariant
    for (int i = 0; i < K.chart_count(); ++i) global.values[i] = same;
    CHECK(cochain_is_zero(coboundary(K, global)));
}

TEST_CASE("monopole Lagrangian cochain has the 2 g phi_t coboundary") {
    auto [K, lam, rot, gid] = make_monopole();
    auto dlam = coboundary(K, lam);
    Expr g = Expr::param(gid);
    Expr ph_t = Expr::field(1, MultiIndex::single(0));
    Expr jump = Expr::integer(2) * g * ph_t;
    // south-to-north overlaps carry the jump, same-hemisphere ones do not
    for (std::size_t p = 0; p < K.pairs().size(); ++p) {
        const auto& pc = K.pairs()[p];
        bool crosses = (pc.i < 2) != (pc.j < 2);
        if (crosses)
            CHECK(dlam.at(static_cast<int>(p)).L == jump);
        else
            CHECK(dlam.at(static_cast<int>(p)).is_zero());
    }
}

TEST_CASE("coboundary squares to zero through the triple components") {
    auto [K, lam, rot, gid] = make_monopole();
    CHECK(cochain_is_zero(coboundary1(K, coboundary(K, lam))));

    Rng rng(111);
    const JetSpace& s = K.space();
    for (int trial = 0; trial < 10; ++trial) {
        Cochain<Lagrangian> c;
        c.degree = 0;
        for (int i = 0; i < K.chart_count(); ++i) {
            Expr e = random_expr(rng, s, 1, trial % 2 == 0);
            // let the value depend on the angle so the transitions matter
            if (trial % 3 == 0) e = e + Expr::field(1) * Expr::field(0);
            c.values[i] = Lagrangian{e};
        }
        CHECK(cochain_is_zero(coboundary1(K, coboundary(K, c))));
    }
}

TEST_CASE("periods of reference forms") {
    auto [K, lam, rot, gid] = make_monopole();
    const JetSpace& s = K.space();
    // dphi over the equator
    Form dphi = Form::covector(s, BasisCovector::theta(1));
    const Cycle* equator = K.find_cycle("equator");
    REQUIRE(equator);
    CHECK(period(K, dphi, *equator) == doctest::Approx(2 * M_PI).epsilon(1e-9));

    CHECK(period(K, Form(1, 2, 1), *equator) == 0.0);

    // area form over the two-piece sphere decomposition
    Form area = Expr::sin(Expr::field(0)) *
                wedge(Form::covector(s, BasisCovector::theta(0)),
                      Form::covector(s, BasisCovector::theta(1)));
    const Cycle* sphere = K.find_cycle("fiber-sphere");
    REQUIRE(sphere);
    CHECK(period(K, area, *sphere) == doctest::Approx(4 * M_PI).epsilon(1e-8));

    // node doubling stability
    double p64 = period(K, area, *sphere, 64);
    double p128 = period(K, area, *sphere, 128);
    CHECK(std::abs(p64 - p128) < 1e-9);
}

TEST_CASE("winding class: delta-prime periods") {
    auto [K, lam, rot] = make_winding();
    auto res = connecting_delta_prime(K, lam);
    CHECK(res.potentials.at(0).F.coefficient({}) == Expr::field(0));
    CHECK(res.potentials.at(1).F.coefficient({}) == Expr::field(0));
    // the coboundary cocycle is constant 2 pi on the shifted component
    CHECK(res.dnu.at(0).is_zero());
    CHECK(res.dnu.at(1).F.coefficient({}) == Expr::integer(2) * Expr::pi());
    REQUIRE(res.periods.count("fiber-circle"));
    CHECK(res.periods.at("fiber-circle") == doctest::Approx(2 * M_PI).epsilon(1e-9));
    CHECK(!res.trivial);
}

TEST_CASE("delta-prime is trivial for exact data") {
    auto [K, lam, rot] = make_winding();
    const JetSpace& s = K.space();
    // mu = d_H of a global current
    Expr th_t = Expr::field(0, MultiIndex::single(0));
    Cochain<Lagrangian> mu;
    mu.degree = 0;
    Lagrangian exact{volume_coefficient(s, d_H(s, Form::scalar(s, th_t * th_t)))};
    mu.values[0] = exact;
    mu.values[1] = exact;
    auto res = connecting_delta_prime(K, mu);
    CHECK(res.trivial);
    CHECK(std::abs(res.periods.at("fiber-circle")) < 1e-9);
    CHECK(cochain_is_zero(res.dnu));

    Cochain<Lagrangian> zero;
    zero.degree = 0;
    zero.values[0] = Lagrangian{};
    zero.values[1] = Lagrangian{};
    auto res0 = connecting_delta_prime(K, zero);
    CHECK(res0.trivial);
    CHECK(std::abs(res0.periods.at("fiber-circle")) < 1e-15);

    Cochain<Lagrangian> bad;
    bad.degree = 0;
    bad.values[0] = Lagrangian{Expr::field(0)};
    bad.values[1] = Lagrangian{Expr::field(0)};
    CHECK_THROWS_AS((void)connecting_delta_prime(K, bad), NotClosed);
}

TEST_CASE("monopole class: delta periods") {
    auto [K, lam, rot, gid] = make_monopole();
    auto res = connecting_delta(K, lam);
    CHECK(res.eta_global);
    CHECK(res.helmholtz_ok);

    Expr g = Expr::param(gid);
    Expr ph = Expr::field(1);
    // the overlap potentials on the hemisphere crossings are 2 g phi
    for (std::size_t p = 0; p < K.pairs().size(); ++p) {
        const auto& pc = K.pairs()[p];
        bool crosses = (pc.i < 2) != (pc.j < 2);
        if (crosses)
            CHECK(res.gamma.at(static_cast<int>(p)).F.coefficient({}) ==
                  Expr::integer(2) * g * ph);
        else
            CHECK(res.gamma.at(static_cast<int>(p)).is_zero());
    }
    REQUIRE(res.periods.count("equator"));
    CHECK(res.periods.at("equator") == doctest::Approx(4 * M_PI).epsilon(1e-8));
    CHECK(!res.trivial);
}

TEST_CASE("delta is trivial for a globally variational problem") {
    auto [K, lam, rot] = make_winding();
    const JetSpace& s = K.space();
    Expr th_t = Expr::field(0, MultiIndex::single(0));
    Cochain<Lagrangian> free;
    free.degree = 0;
    free.values[0] = Lagrangian{Expr::constant(Rational(1, 2)) * th_t * th_t};
    free.values[1] = free.values[0];
    auto res = connecting_delta(K, free);
    CHECK(res.trivial);
    CHECK(res.eta_global);
    CHECK(cochain_is_zero(res.gamma));
}

TEST_CASE("Lie derivative of cochains") {
    auto [K, lam, rot, gid] = make_monopole();
    auto lie = lie_derive_cochain(K, lam, rot);
    CHECK(cochain_is_zero(lie));

    auto zero = lie_derive_cochain(K, lam, VectorField::zero(K.space()));
    CHECK(cochain_is_zero(zero));

    // a field whose component is not shift-invariant is rejected
    VectorField broken = VectorField::vertical(K.space(), {Expr(), Expr::field(1)});
    CHECK_THROWS_AS((void)lie_derive_cochain(K, lam, broken), FieldNotGlobal);
}

TEST_CASE("Lie derivative commutes with the coboundary") {
    auto [K, lam, rot, gid] = make_monopole();
    auto lhs = coboundary(K, lie_derive_cochain(K, lam, rot));
    auto rhs = lie_derive_cochain(K, coboundary(K, lam), rot);
    for (std::size_t p = 0; p < K.pairs().size(); ++p)
        CHECK(lhs.at(static_cast<int>(p)).L == rhs.at(static_cast<int>(p)).L);

    // and on a cochain with angle dependence, where the pullbacks are nontrivial
    const JetSpace& s = K.space();
    Expr ph = Expr::field(1), th_t = Expr::field(0, MultiIndex::single(0));
    Cochain<Lagrangian> c;
    c.degree = 0;
    for (int i = 0; i < 4; ++i) c.values[i] = Lagrangian{ph * th_t};
    VectorField vert = VectorField::vertical(s, {Expr::integer(1), Expr()});
    auto l2 = coboundary(K, lie_derive_cochain(K, c, vert));
    auto r2 = lie_derive_cochain(K, coboundary(K, c), vert);
    for (std::size_t p = 0; p < K.pairs().size(); ++p)
        CHECK(l2.at(static_cast<int>(p)).L == r2.at(static_cast<int>(p)).L);
}

TEST_CASE("winding: derived cocycle is cohomologically trivial") {
    auto [K, lam, rot] = make_winding();
    auto res = connecting_delta_prime(K, lam);
    // Lie-derive the potential currents; the derived cochain is global
    auto derived = lie_derive_cochain(K, res.potentials, rot);
    CHECK(cochain_is_zero(coboundary(K, derived)));
    // and its own delta-prime periods vanish
    const JetSpace& s = K.space();
    double p = 0.0;
    for (const auto& piece : K.find_cycle("fiber-circle")->pieces) {
        Form w = fiber_exterior_derivative(s, derived.at(piece.chart).F);
        p += period_piece(K, w, piece, 1, 64);
    }
    CHECK(std::abs(p) < 1e-12);
}

TEST_CASE("missing cochain values surface as TransitionMissing") {
    auto [K, lam, rot, gid] = make_monopole();
    Cochain<Lagrangian> partial_cochain;
    partial_cochain.degree = 0;
    partial_cochain.values[0] = lam.at(0);
    CHECK_THROWS_AS((void)coboundary(K, partial_cochain), TransitionMissing);
}
