#include "vseq/commands.hpp"

#include "vseq/cech.hpp"

#include <random>

namespace vseq {

namespace {

using Rng = std::mt19937_64;

int rnd(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Expr rnd_poly(Rng& rng, const std::vector<Coord>& pool, int terms, int degree) {
    Expr e;
    for (int t = 0; t < terms; ++t) {
        Expr mono = Expr::constant(rat(rnd(rng, -3, 3)));
        int d = rnd(rng, 0, degree);
        for (int k = 0; k < d; ++k)
            mono = mono * Expr::coord(pool[rnd(rng, 0, static_cast<int>(pool.size()) - 1)]);
        e = e + mono;
    }
    return e;
}

std::vector<Coord> pool_for(const JetSpace& s, int order) {
    std::vector<Coord> pool;
    for (int mu = 0; mu < s.base_dim(); ++mu) pool.push_back(Coord::base(mu));
    for (int a = 0; a < s.fiber_dim(); ++a) {
        pool.push_back(Coord::field(a));
        if (order >= 1)
            for (int mu = 0; mu < s.base_dim(); ++mu)
                pool.push_back(Coord::field(a, MultiIndex::single(mu)));
        if (order >= 2)
            for (int mu = 0; mu < s.base_dim(); ++mu)
                for (int nu = mu; nu < s.base_dim(); ++nu)
                    pool.push_back(Coord::field(a, MultiIndex::single(mu).extended(nu)));
    }
    return pool;
}

} // namespace

Report run_selftest() {
    Report rep;
    Rng rng(20240915);

    {
        JetSpace s(2, 2, 6);
        auto pool = pool_for(s, 2);
        bool idem = true, commute = true, leibniz = true;
        for (int i = 0; i < 20; ++i) {
            Expr e = rnd_poly(rng, pool, 3, 3);
            if (i % 3 == 0) e = e + rnd_poly(rng, pool, 2, 1) * Expr::sin(Expr::field(0));
            idem = idem && normalize(normalize(e)) == normalize(e);
            Expr ab = total_derivative(s, total_derivative(s, e, 0), 1);
            Expr ba = total_derivative(s, total_derivative(s, e, 1), 0);
            commute = commute && (ab - ba).is_zero();
            Expr f = rnd_poly(rng, pool, 2, 2);
            Expr lhs = total_derivative(s, e * f, 0);
            Expr rhs = total_derivative(s, e, 0) * f + e * total_derivative(s, f, 0);
            leibniz = leibniz && (lhs - rhs).is_zero();
        }
        rep.assertion("selftest.normalize-idempotent", idem);
        rep.assertion("selftest.total-derivatives-commute", commute);
        rep.assertion("selftest.leibniz", leibniz);
    }

    {
        JetSpace s(2, 2, 6);
        auto pool = pool_for(s, 1);
        bool dh2 = true, dv2 = true, anti = true;
        for (int i = 0; i < 8; ++i) {
            Form f = rnd_poly(rng, pool, 2, 2) *
                     (i % 2 ? Form::covector(s, BasisCovector::theta(0))
                            : Form::covector(s, BasisCovector::dx(0)));
            dh2 = dh2 && d_H(s, d_H(s, f)).is_zero();
            dv2 = dv2 && d_V(s, d_V(s, f)).is_zero();
            anti = anti && (d_H(s, d_V(s, f)) + d_V(s, d_H(s, f))).is_zero();
        }
        rep.assertion("selftest.dH-squared", dh2);
        rep.assertion("selftest.dV-squared", dv2);
        rep.assertion("selftest.dH-dV-anticommute", anti);
    }

    {
        JetSpace s(1, 2, 8);
        auto pool = pool_for(s, 1);
        bool exact = true, hh = true;
        for (int i = 0; i < 6; ++i) {
            Expr f = rnd_poly(rng, pool, 2, 2);
            exact = exact && euler_lagrange(s, Lagrangian{total_derivative(s, f, 0)}).is_zero();
            SourceForm eta = euler_lagrange(s, Lagrangian{rnd_poly(rng, pool, 3, 3)});
            hh = hh && helmholtz_check(s, eta).is_locally_variational;
        }
        rep.assertion("selftest.euler-lagrange-kills-divergences", exact);
        rep.assertion("selftest.helmholtz-on-euler-lagrange-images", hh);
    }

    {
        JetSpace s(1, 2, 4);
        Cover K = Cover::sphere_four_charts(s);
        auto pool = pool_for(K.space(), 1);
        bool dd = true;
        for (int i = 0; i < 3; ++i) {
            Cochain<Lagrangian> c;
            c.degree = 0;
            for (int chart = 0; chart < K.chart_count(); ++chart)
                c.values[chart] =
                    Lagrangian{rnd_poly(rng, pool, 2, 2) + Expr::field(1) * Expr::field(0)};
            dd = dd && cochain_is_zero(coboundary1(K, coboundary(K, c)));
        }
        rep.assertion("selftest.coboundary-squared", dd);
    }

    return rep;
}

} // namespace vseq
