#include "vseq/lemmas.hpp"

#include <cmath>

namespace vseq {

namespace {

Lagrangian divergence(const JetSpace& s, const Current& c) {
    if (c.is_zero()) return {};
    return {volume_coefficient(s, d_H(s, c.F))};
}

// Per-chart Euler-Lagrange cochain plus the shared sanity checks.
struct LocalProblem {
    Cochain<SourceForm> eta;
    bool eta_global = false;
    bool helmholtz_ok = true;
};

LocalProblem analyze(const Cover& K, const Cochain<Lagrangian>& lambdas, Report& rep,
                     const std::string& prefix) {
    const JetSpace& s = K.space();
    LocalProblem lp;
    lp.eta.degree = 0;
    for (int i = 0; i < K.chart_count(); ++i) {
        lp.eta.values[i] = euler_lagrange(s, lambdas.at(i));
        bool hh = helmholtz_check(s, lp.eta.at(i)).is_locally_variational;
        lp.helmholtz_ok = lp.helmholtz_ok && hh;
        rep.assertion(prefix + ".chart[" + K.chart_name(i) + "].helmholtz", hh);
    }
    lp.eta_global = cochain_is_zero(coboundary(K, lp.eta));
    rep.assertion(prefix + ".dynamical-form-global", lp.eta_global);
    return lp;
}

// nu_i certificates for Xi_V . eta = d_H nu_i, chart by chart.
Cochain<Current> symmetry_potentials(const Cover& K, const LocalProblem& lp,
                                     const VectorField& v, const VerifierOptions& opt,
                                     Report& rep, const std::string& prefix) {
    const JetSpace& s = K.space();
    Cochain<Current> nus;
    nus.degree = 0;
    for (int i = 0; i < K.chart_count(); ++i) {
        SymmetryReport sym = check_generalized_symmetry(s, lp.eta.at(i), v, std::nullopt,
                                                        opt.ansatz, K.angle_fields(i));
        rep.assertion(prefix + ".chart[" + K.chart_name(i) + "].generalized-symmetry",
                      sym.is_generalized_symmetry);
        if (sym.is_generalized_symmetry && sym.nu) {
            nus.values[i] = *sym.nu;
        } else {
            for (int a = 0; a < s.fiber_dim(); ++a)
                if (!sym.residuals.empty() && !sym.residuals[a].is_zero())
                    rep.put(prefix + ".chart[" + K.chart_name(i) + "].residual[" +
                                s.field_name(a) + "]",
                            to_string(s, sym.residuals[a]));
            if (sym.is_generalized_symmetry)
                rep.assertion(prefix + ".chart[" + K.chart_name(i) + "].potential-found", false);
        }
    }
    return nus;
}

} // namespace

Report verify_lemma1(const Cover& K, const Cochain<Lagrangian>& lambdas, const VectorField& v,
                     const VerifierOptions& opt) {
    const JetSpace& s = K.space();
    Report rep;
    require_global_field(K, v);

    bool trivial_class = true;
    for (int i = 0; i < K.chart_count(); ++i)
        trivial_class = trivial_class && euler_lagrange(s, lambdas.at(i)).is_zero();

    if (trivial_class) {
        rep.put("lemma1.case", "variationally-trivial");
        auto dp = connecting_delta_prime(K, lambdas, opt.ansatz, opt.quad_nodes, opt.tolerance);
        // commutation of the Lie derivative with d_H through the potentials
        for (int i = 0; i < K.chart_count(); ++i) {
            Lagrangian lhs = lie_derive_lagrangian(s, lambdas.at(i), v);
            Lagrangian rhs = divergence(s, lie_derive_current(s, dp.potentials.at(i), v));
            Expr residual = lhs.L - rhs.L;
            rep.put("lemma1.chart[" + K.chart_name(i) + "].commutation-residual",
                    to_string(s, residual));
            rep.assertion("lemma1.chart[" + K.chart_name(i) + "].commutation",
                          residual.is_zero());
        }
        // the derived problem is global, so its class vanishes
        auto derived = lie_derive_cochain(K, dp.potentials, v);
        rep.assertion("lemma1.derived-cochain-global",
                      cochain_is_zero(coboundary(K, derived)));
        for (const auto& c : K.cycles()) {
            if (c.dimension != s.base_dim()) continue;
            double p = 0.0;
            for (const auto& piece : c.pieces)
                p += period_piece(K,
                                  fiber_exterior_derivative(
                                      s, restrict_to_zero_jets(s, derived.at(piece.chart).F)),
                                  piece, c.dimension, opt.quad_nodes);
            rep.put("lemma1.derived-period[" + c.name + "]", p);
            rep.assertion("lemma1.derived-period[" + c.name + "].vanishes",
                          std::abs(p) <= opt.tolerance);
        }
        return rep;
    }

    rep.put("lemma1.case", "locally-variational");
    LocalProblem lp = analyze(K, lambdas, rep, "lemma1");
    // naturality: E(L_Xi lambda_i) equals the Lie derivative at source level
    for (int i = 0; i < K.chart_count(); ++i) {
        SourceForm lhs = euler_lagrange(s, lie_derive_lagrangian(s, lambdas.at(i), v));
        SourceForm rhs = lie_derive_source(s, lp.eta.at(i), lambdas.at(i), v);
        bool ok = lhs == rhs;
        rep.assertion("lemma1.chart[" + K.chart_name(i) + "].naturality", ok);
    }
    // the derived local problem: coboundary of the Lie-derived Lagrangians
    auto derived = lie_derive_cochain(K, lambdas, v);
    auto d_derived = coboundary(K, derived);
    Cochain<Current> gamma;
    gamma.degree = 1;
    bool solvable = true;
    for (std::size_t p = 0; p < K.pairs().size(); ++p) {
        const Lagrangian& diff = d_derived.at(static_cast<int>(p));
        if (diff.is_zero()) {
            gamma.values[static_cast<int>(p)] = zero_current(s);
            continue;
        }
        auto g = solve_dH_exact(s, lagrangian_form(s, diff), opt.ansatz,
                                K.angle_fields(K.pairs()[p].i));
        if (!g) {
            solvable = false;
            rep.assertion("lemma1.derived-overlap[" + K.pair_label(static_cast<int>(p)) +
                              "].potential-found",
                          false);
            continue;
        }
        gamma.values[static_cast<int>(p)] = *g;
    }
    if (solvable) {
        for (const auto& c : K.cycles()) {
            if (c.dimension != s.base_dim()) continue;
            bool in_overlaps = true;
            for (const auto& piece : c.pieces)
                in_overlaps = in_overlaps && piece.pair_component.has_value();
            if (!in_overlaps) continue;
            double p = 0.0;
            for (const auto& piece : c.pieces)
                p += period_piece(
                    K,
                    fiber_exterior_derivative(
                        s, restrict_to_zero_jets(s, gamma.at(*piece.pair_component).F)),
                    piece, c.dimension, opt.quad_nodes);
            rep.put("lemma1.derived-period[" + c.name + "]", p);
            rep.assertion("lemma1.derived-period[" + c.name + "].vanishes",
                          std::abs(p) <= opt.tolerance);
        }
    }
    return rep;
}

Report verify_lemma2(const Cover& K, const Cochain<Lagrangian>& lambdas, const VectorField& v,
                     const VerifierOptions& opt) {
    const JetSpace& s = K.space();
    Report rep;
    require_global_field(K, v);
    LocalProblem lp = analyze(K, lambdas, rep, "lemma2");

    // hypothesis: the twice Lie-derived Lagrangians vanish
    for (int i = 0; i < K.chart_count(); ++i) {
        Lagrangian twice =
            lie_derive_lagrangian(s, lie_derive_lagrangian(s, lambdas.at(i), v), v);
        rep.put("lemma2.chart[" + K.chart_name(i) + "].lie-lie-lambda", to_string(s, twice.L));
        rep.assertion("lemma2.chart[" + K.chart_name(i) + "].hypothesis", twice.is_zero());
    }

    // beta_i = nu_i + eps_i (the d_H omega_i freedom is not needed)
    Cochain<Current> nus = symmetry_potentials(K, lp, v, opt, rep, "lemma2");
    Cochain<Lagrangian> d_beta;
    d_beta.degree = 0;
    for (int i = 0; i < K.chart_count(); ++i) {
        if (!nus.values.count(i)) return rep;
        Current eps = noether_current(s, lambdas.at(i), v);
        Current beta{nus.at(i).F + eps.F};
        rep.put("lemma2.chart[" + K.chart_name(i) + "].beta",
                to_string(s, beta.F.degree() == 0 ? beta.F.coefficient({}) : Expr()));
        d_beta.values[i] = divergence(s, beta);
    }

    // gamma_ij with d_H gamma = coboundary of the Lagrangians
    auto dlam = coboundary(K, lambdas);
    Cochain<Lagrangian> d_beta_cob = coboundary(K, d_beta);
    for (std::size_t p = 0; p < K.pairs().size(); ++p) {
        const Lagrangian& diff = dlam.at(static_cast<int>(p));
        Current gamma = zero_current(s);
        if (!diff.is_zero()) {
            auto g = solve_dH_exact(s, lagrangian_form(s, diff), opt.ansatz,
                                    K.angle_fields(K.pairs()[p].i));
            if (!g) {
                rep.assertion("lemma2.overlap[" + K.pair_label(static_cast<int>(p)) +
                                  "].gamma-found",
                              false);
                continue;
            }
            gamma = *g;
        }
        if (gamma.F.degree() == 0)
            rep.put("lemma2.overlap[" + K.pair_label(static_cast<int>(p)) + "].gamma",
                    to_string(s, gamma.F.coefficient({})));
        Lagrangian lhs = lie_derive_lagrangian(s, divergence(s, gamma), v);
        Expr residual = lhs.L - d_beta_cob.at(static_cast<int>(p)).L;
        rep.put("lemma2.overlap[" + K.pair_label(static_cast<int>(p)) + "].residual",
                to_string(s, residual));
        rep.assertion("lemma2.overlap[" + K.pair_label(static_cast<int>(p)) + "].identity",
                      residual.is_zero());
    }
    return rep;
}

Report verify_lemma3(const Cover& K, const Cochain<Lagrangian>& lambdas, const VectorField& v,
                     const VerifierOptions& opt) {
    const JetSpace& s = K.space();
    Report rep;
    require_global_field(K, v);
    LocalProblem lp = analyze(K, lambdas, rep, "lemma3");

    // hypotheses of the statement
    for (int i = 0; i < K.chart_count(); ++i) {
        Lagrangian twice =
            lie_derive_lagrangian(s, lie_derive_lagrangian(s, lambdas.at(i), v), v);
        rep.assertion("lemma3.chart[" + K.chart_name(i) + "].hypothesis-lie-lie",
                      twice.is_zero());
    }
    auto dlam = coboundary(K, lambdas);
    for (std::size_t p = 0; p < K.pairs().size(); ++p) {
        Lagrangian lie_of_diff = lie_derive_lagrangian(s, dlam.at(static_cast<int>(p)), v);
        rep.assertion("lemma3.overlap[" + K.pair_label(static_cast<int>(p)) +
                          "].hypothesis-lie-coboundary",
                      lie_of_diff.is_zero());
    }

    // strong Noether currents and their variation
    Cochain<Current> nus = symmetry_potentials(K, lp, v, opt, rep, "lemma3");
    Cochain<Current> strong;
    strong.degree = 0;
    Cochain<Current> varied;
    varied.degree = 0;
    for (int i = 0; i < K.chart_count(); ++i) {
        if (!nus.values.count(i)) return rep;
        Current eps = noether_current(s, lambdas.at(i), v);
        strong.values[i] = Current{nus.at(i).F + eps.F};
        if (strong.at(i).F.degree() == 0)
            rep.put("lemma3.chart[" + K.chart_name(i) + "].strong-current",
                    to_string(s, strong.at(i).F.coefficient({})));
        varied.values[i] = lie_derive_current(s, strong.at(i), v);
    }

    // (a) on-shell conservation chart by chart
    for (int i = 0; i < K.chart_count(); ++i) {
        Expr div = divergence(s, varied.at(i)).L;
        bool conserved;
        std::string route = "identically-zero";
        if (div.is_zero()) {
            conserved = true;
        } else {
            try {
                conserved = on_shell_reduce(s, div, lp.eta.at(i)).is_zero();
                route = "leading-solve";
            } catch (const NotSolvableForLeading&) {
                conserved = on_shell_zero_by_combination(s, div, lp.eta.at(i), opt.ansatz);
                route = "combination";
            }
        }
        rep.put("lemma3.chart[" + K.chart_name(i) + "].on-shell-route", route);
        rep.assertion("lemma3.chart[" + K.chart_name(i) + "].conservation", conserved);
    }

    // (b) globality of the varied cochain
    auto d_varied = coboundary(K, varied);
    for (std::size_t p = 0; p < K.pairs().size(); ++p) {
        const Current& jump = d_varied.at(static_cast<int>(p));
        if (!jump.is_zero() && jump.F.degree() == 0)
            rep.put("lemma3.overlap[" + K.pair_label(static_cast<int>(p)) + "].jump",
                    to_string(s, jump.F.coefficient({})));
        rep.assertion("lemma3.overlap[" + K.pair_label(static_cast<int>(p)) + "].globality",
                      jump.is_zero());
    }

    // (c) variational equivalence with the contracted global representative
    Cochain<Lagrangian> d_strong;
    d_strong.degree = 0;
    for (int i = 0; i < K.chart_count(); ++i) d_strong.values[i] = divergence(s, strong.at(i));
    bool mu_global = cochain_is_zero(coboundary(K, d_strong));
    rep.assertion("lemma3.strong-divergence-global", mu_global);
    if (mu_global) {
        const Lagrangian& mu = d_strong.at(0);
        Current global_rep = zero_current(s);
        bool representable = true;
        try {
            Form horizontal = mu.is_zero() || v.is_vertical()
                                  ? Form(s.base_dim(), s.fiber_dim(), s.base_dim() - 1)
                                  : contract(s, v, lagrangian_form(s, mu), ContractPart::Horizontal);
            Form p_mu = momenta(s, mu);
            Form vertical = p_mu.is_zero()
                                ? Form(s.base_dim(), s.fiber_dim(), s.base_dim() - 1)
                                : contract(s, v, p_mu, ContractPart::Vertical);
            global_rep = Current{horizontal + vertical};
        } catch (const OrderTooHigh&) {
            representable = false;
            rep.put("lemma3.global-representative", "order-too-high");
        }
        if (representable) {
            for (int i = 0; i < K.chart_count(); ++i) {
                Current difference{varied.at(i).F - global_rep.F};
                Expr residual = divergence(s, difference).L;
                if (difference.F.degree() == 0)
                    rep.put("lemma3.chart[" + K.chart_name(i) + "].difference",
                            to_string(s, difference.F.coefficient({})));
                rep.assertion("lemma3.chart[" + K.chart_name(i) + "].equivalence",
                              residual.is_zero());
            }
        }
    }
    return rep;
}

} // namespace vseq
