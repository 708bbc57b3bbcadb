#include "vseq/commands.hpp"

#include "vseq/lemmas.hpp"

#include <cmath>

namespace vseq {

namespace {

struct Workspace {
    Cover cover;
    Cochain<Lagrangian> lambdas;
    bool have_lagrangians = false;
    VerifierOptions vopt;
    double tolerance = 1e-8;
};

VerifierOptions merge_options(const ProblemFile& pf, const CommandOptions& opt) {
    VerifierOptions v;
    v.ansatz = pf.ansatz;
    v.quad_nodes = opt.quad_nodes.value_or(pf.quad_nodes);
    v.tolerance = opt.tolerance.value_or(pf.tolerance);
    if (opt.ansatz_degree) v.ansatz.max_poly_degree = *opt.ansatz_degree;
    return v;
}

Workspace make_workspace(const ProblemFile& pf, const CommandOptions& opt, bool need_lagrangians) {
    Workspace w{Cover::by_name(pf.space, pf.cover_name), {}, false, merge_options(pf, opt),
                opt.tolerance.value_or(pf.tolerance)};
    const Cover& K = w.cover;
    w.lambdas.degree = 0;

    for (const auto& [chart, lag] : pf.lagrangians) {
        if (chart.empty()) continue;
        auto id = K.find_chart(chart);
        if (!id) throw EngineError("chart '" + chart + "' is not part of cover '" + K.name() + "'");
        w.lambdas.values[*id] = lag;
    }
    if (auto it = pf.lagrangians.find(""); it != pf.lagrangians.end()) {
        for (int i = 0; i < K.chart_count(); ++i)
            if (!w.lambdas.values.count(i)) w.lambdas.values[i] = it->second;
    }
    w.have_lagrangians = static_cast<int>(w.lambdas.values.size()) == K.chart_count();

    if (!w.have_lagrangians && pf.source && need_lagrangians) {
        // reconstruct local Lagrangians from the dynamical form
        for (int i = 0; i < K.chart_count(); ++i) {
            if (w.lambdas.values.count(i)) continue;
            std::vector<Rational> center;
            if (auto it = pf.centers.find(K.chart_name(i)); it != pf.centers.end())
                center = it->second;
            else if (auto def = pf.centers.find(""); def != pf.centers.end())
                center = def->second;
            w.lambdas.values[i] = tonti_lagrangian(K.space(), *pf.source, center);
        }
        w.have_lagrangians = true;
    }
    if (need_lagrangians && !w.have_lagrangians)
        throw EngineError("this command needs a Lagrangian on every chart (or a source form)");
    return w;
}

const VectorField& pick_field(const ProblemFile& pf, const CommandOptions& opt) {
    if (opt.field_name.empty()) {
        if (pf.vector_fields.size() == 1) return pf.vector_fields.front().second;
        throw EngineError("select a vector field with --field");
    }
    if (const VectorField* v = pf.find_field(opt.field_name)) return *v;
    throw EngineError("unknown vector field '" + opt.field_name + "'");
}

Cochain<SourceForm> source_cochain(const Workspace& w, const ProblemFile& pf) {
    const JetSpace& s = w.cover.space();
    Cochain<SourceForm> eta;
    eta.degree = 0;
    for (int i = 0; i < w.cover.chart_count(); ++i) {
        if (w.have_lagrangians)
            eta.values[i] = euler_lagrange(s, w.lambdas.at(i));
        else if (pf.source)
            eta.values[i] = *pf.source;
        else
            throw EngineError("no Lagrangian or source form in the problem");
    }
    return eta;
}

std::string current_str(const JetSpace& s, const Current& c) {
    return c.F.degree() == 0 ? to_string(s, c.F.coefficient({})) : to_string(s, c.F);
}

void cmd_el(const Workspace& w, Report& rep) {
    const JetSpace& s = w.cover.space();
    for (int i = 0; i < w.cover.chart_count(); ++i) {
        SourceForm eta = euler_lagrange(s, w.lambdas.at(i));
        for (int a = 0; a < s.fiber_dim(); ++a)
            rep.put("el.chart[" + w.cover.chart_name(i) + "].E[" + s.field_name(a) + "]",
                    to_string(s, eta.comps[a]));
    }
}

void cmd_helmholtz(const Workspace& w, const ProblemFile& pf, Report& rep) {
    const JetSpace& s = w.cover.space();
    Cochain<SourceForm> eta = pf.source && !w.have_lagrangians
                                  ? source_cochain(w, pf)
                                  : [&] {
                                        Cochain<SourceForm> e;
                                        e.degree = 0;
                                        for (int i = 0; i < w.cover.chart_count(); ++i)
                                            e.values[i] = euler_lagrange(s, w.lambdas.at(i));
                                        return e;
                                    }();
    for (int i = 0; i < w.cover.chart_count(); ++i) {
        HelmholtzReport hr = helmholtz_check(s, eta.at(i));
        const std::string chart = w.cover.chart_name(i);
        for (int a = 0; a < s.fiber_dim(); ++a)
            rep.put("helmholtz.chart[" + chart + "].residual[" + s.field_name(a) + "]",
                    to_string(s, hr.residuals[a]));
        rep.assertion("helmholtz.chart[" + chart + "].locally-variational",
                      hr.is_locally_variational);
    }
}

void cmd_tonti(const Workspace& w, const ProblemFile& pf, Report& rep) {
    const JetSpace& s = w.cover.space();
    Cochain<SourceForm> eta = source_cochain(w, pf);
    for (int i = 0; i < w.cover.chart_count(); ++i) {
        std::vector<Rational> center;
        if (auto it = pf.centers.find(w.cover.chart_name(i)); it != pf.centers.end())
            center = it->second;
        Lagrangian lag = tonti_lagrangian(s, eta.at(i), center);
        rep.put("tonti.chart[" + w.cover.chart_name(i) + "].lagrangian", to_string(s, lag.L));
    }
}

void cmd_noether(const Workspace& w, const ProblemFile& pf, const CommandOptions& opt,
                 Report& rep) {
    const JetSpace& s = w.cover.space();
    const VectorField& v = pick_field(pf, opt);
    for (int i = 0; i < w.cover.chart_count(); ++i) {
        Current eps = noether_current(s, w.lambdas.at(i), v);
        const std::string chart = w.cover.chart_name(i);
        rep.put("noether.chart[" + chart + "].current", current_str(s, eps));
        Expr div = eps.is_zero() ? Expr() : volume_coefficient(s, d_H(s, eps.F));
        rep.put("noether.chart[" + chart + "].divergence", to_string(s, div));
    }
}

void cmd_strong_noether(const Workspace& w, const ProblemFile& pf, const CommandOptions& opt,
                        Report& rep) {
    const JetSpace& s = w.cover.space();
    const VectorField& v = pick_field(pf, opt);
    for (int i = 0; i < w.cover.chart_count(); ++i) {
        SourceForm eta = euler_lagrange(s, w.lambdas.at(i));
        Current strong = strong_noether_current(s, w.lambdas.at(i), eta, v, w.vopt.ansatz,
                                                w.cover.angle_fields(i));
        rep.put("strong-noether.chart[" + w.cover.chart_name(i) + "].current",
                current_str(s, strong));
    }
}

void cmd_lie(const Workspace& w, const ProblemFile& pf, const CommandOptions& opt, Report& rep) {
    const JetSpace& s = w.cover.space();
    const VectorField& v = pick_field(pf, opt);
    for (int i = 0; i < w.cover.chart_count(); ++i) {
        Lagrangian lie = lie_derive_lagrangian(s, w.lambdas.at(i), v);
        const std::string chart = w.cover.chart_name(i);
        rep.put("lie.chart[" + chart + "].lagrangian", to_string(s, lie.L));
        rep.put("lie.chart[" + chart + "].symmetry", lie.is_zero() ? "yes" : "no");
    }
}

void cmd_cech_class(const Workspace& w, Report& rep) {
    const Cover& K = w.cover;
    const JetSpace& s = K.space();
    bool trivial_class = true;
    for (int i = 0; i < K.chart_count(); ++i)
        trivial_class = trivial_class && euler_lagrange(s, w.lambdas.at(i)).is_zero();

    if (trivial_class) {
        rep.put("cech.class", "delta-prime");
        auto res = connecting_delta_prime(K, w.lambdas, w.vopt.ansatz, w.vopt.quad_nodes,
                                          w.vopt.tolerance);
        for (int i = 0; i < K.chart_count(); ++i)
            rep.put("cech.chart[" + K.chart_name(i) + "].potential",
                    current_str(s, res.potentials.at(i)));
        for (const auto& [name, p] : res.periods) rep.put("cech.period[" + name + "]", p);
        rep.put("cech.verdict", res.trivial ? "class zero" : "class nonzero");
        return;
    }

    rep.put("cech.class", "delta");
    auto res = connecting_delta(K, w.lambdas, w.vopt.ansatz, w.vopt.quad_nodes, w.vopt.tolerance);
    rep.put("cech.dynamical-form-global", res.eta_global ? "yes" : "no");
    rep.put("cech.helmholtz", res.helmholtz_ok ? "yes" : "no");
    for (std::size_t p = 0; p < K.pairs().size(); ++p)
        rep.put("cech.overlap[" + K.pair_label(static_cast<int>(p)) + "].potential",
                current_str(s, res.gamma.at(static_cast<int>(p))));
    for (const auto& [name, p] : res.periods) rep.put("cech.period[" + name + "]", p);
    rep.put("cech.verdict", res.trivial ? "class zero" : "class nonzero");
}

} // namespace

std::vector<std::string> command_names() {
    return {"el",  "helmholtz", "tonti", "noether", "strong-noether", "lie",
            "cech-class", "verify-lemma1", "verify-lemma2", "verify-lemma3", "selftest"};
}

CommandResult run_command(const std::string& cmd, const ProblemFile& pf,
                          const CommandOptions& opt) {
    CommandResult result;
    try {
        if (cmd == "selftest") {
            result.report = run_selftest();
            result.exit_code = result.report.exit_code();
            return result;
        }
        const bool needs_lagrangian = cmd != "helmholtz";
        Workspace w = make_workspace(pf, opt, needs_lagrangian);
        if (cmd == "el") {
            cmd_el(w, result.report);
        } else if (cmd == "helmholtz") {
            cmd_helmholtz(w, pf, result.report);
        } else if (cmd == "tonti") {
            cmd_tonti(w, pf, result.report);
        } else if (cmd == "noether") {
            cmd_noether(w, pf, opt, result.report);
        } else if (cmd == "strong-noether") {
            cmd_strong_noether(w, pf, opt, result.report);
        } else if (cmd == "lie") {
            cmd_lie(w, pf, opt, result.report);
        } else if (cmd == "cech-class") {
            cmd_cech_class(w, result.report);
        } else if (cmd == "verify-lemma1") {
            result.report = verify_lemma1(w.cover, w.lambdas, pick_field(pf, opt), w.vopt);
        } else if (cmd == "verify-lemma2") {
            result.report = verify_lemma2(w.cover, w.lambdas, pick_field(pf, opt), w.vopt);
        } else if (cmd == "verify-lemma3") {
            result.report = verify_lemma3(w.cover, w.lambdas, pick_field(pf, opt), w.vopt);
        } else {
            throw EngineError("unknown command '" + cmd + "'");
        }
        result.exit_code = result.report.exit_code();
    } catch (const EngineError& e) {
        result.report.put("error", e.what());
        result.exit_code = 2;
    }
    return result;
}

} // namespace vseq
