#ifndef VSEQ_TESTS_FIXTURES_HPP
#define VSEQ_TESTS_FIXTURES_HPP

// Shared chart systems used across the cohomology and verifier tests.

#include "vseq/cech.hpp"

namespace vseq::testing {

struct MonopoleSetup {
    Cover cover;
    Cochain<Lagrangian> lambdas;
    VectorField rotation;
    int g_param;
};

/// Charged particle on a sphere around a magnetic pole: four charts, local
/// Lagrangians differing by 2 g phi_t across the hemisphere overlaps,
/// rotation field d/dphi.
inline MonopoleSetup make_monopole() {
    JetSpace s(1, 2, 4);
    s.set_base_name(0, "t");
    s.set_field_name(0, "theta");
    s.set_field_name(1, "phi");
    int gid = s.add_parameter("g", rat(1));

    Cover K = Cover::sphere_four_charts(s);
    const JetSpace& cs = K.space();

    Expr th = Expr::field(0);
    Expr th_t = Expr::field(0, MultiIndex::single(0));
    Expr ph_t = Expr::field(1, MultiIndex::single(0));
    Expr g = Expr::param(gid);
    Expr kinetic = Expr::constant(Rational(1, 2)) *
                   (th_t * th_t + Expr::pow(Expr::sin(th), 2) * ph_t * ph_t);
    Lagrangian south{kinetic - g * (Expr::integer(1) + Expr::cos(th)) * ph_t};
    Lagrangian north{kinetic + g * (Expr::integer(1) - Expr::cos(th)) * ph_t};

    Cochain<Lagrangian> lam;
    lam.degree = 0;
    lam.values[0] = south; // SE
    lam.values[1] = south; // SW
    lam.values[2] = north; // NE
    lam.values[3] = north; // NW

    VectorField rot = VectorField::vertical(cs, {Expr(), Expr::integer(1)});
    return {std::move(K), std::move(lam), std::move(rot), gid};
}

struct WindingSetup {
    Cover cover;
    Cochain<Lagrangian> lambdas;
    VectorField rotation;
};

/// Winding Lagrangian theta_t on the circle fiber: variationally trivial but
/// with no global potential.
inline WindingSetup make_winding() {
    JetSpace s(1, 1, 4);
    s.set_base_name(0, "t");
    s.set_field_name(0, "theta");
    Cover K = Cover::circle_fiber(s, 0, "R-x-S1");
    Lagrangian lam{Expr::field(0, MultiIndex::single(0))};
    Cochain<Lagrangian> c;
    c.degree = 0;
    c.values[0] = lam;
    c.values[1] = lam;
    VectorField rot = VectorField::vertical(K.space(), {Expr::integer(1)});
    return {std::move(K), std::move(c), std::move(rot)};
}

} // namespace vseq::testing

#endif
