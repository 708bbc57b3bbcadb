#include "CLI11.hpp"
#include "vseq/commands.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

struct Invocation {
    std::string command;
    std::string problem_path;
    std::string out_path;
    std::string format = "text";
    vseq::CommandOptions options;
};

int run(const Invocation& inv) {
    vseq::ProblemFile pf;
    if (inv.command != "selftest") {
        std::ifstream in(inv.problem_path);
        if (!in) {
            std::cerr << "error: cannot open '" << inv.problem_path << "'\n";
            return 2;
        }
        std::stringstream buf;
        buf << in.rdbuf();
        try {
            pf = vseq::parse_problem(buf.str());
        } catch (const vseq::ParseError& e) {
            std::cerr << inv.problem_path << ":" << e.what() << "\n";
            return 2;
        }
    }

    vseq::CommandResult result = vseq::run_command(inv.command, pf, inv.options);
    std::string text = inv.format == "kv" ? result.report.to_kv() : result.report.to_text();
    if (inv.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(inv.out_path);
        if (!out) {
            std::cerr << "error: cannot write '" << inv.out_path << "'\n";
            return 2;
        }
        out << text;
    }
    return result.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"variational-sequence calculator for local variational problems"};
    app.require_subcommand(1);

    std::vector<std::pair<CLI::App*, Invocation>> subs;
    subs.reserve(16);
    for (const auto& name : vseq::command_names()) {
        Invocation inv;
        inv.command = name;
        CLI::App* sub = app.add_subcommand(name, "");
        if (name != "selftest")
            sub->add_option("problem", inv.problem_path, "problem definition file")->required();
        sub->add_option("--field", inv.options.field_name, "vector field name");
        sub->add_option("--ansatz-degree", inv.options.ansatz_degree,
                        "polynomial degree bound of the exactness solver");
        sub->add_option("--quad-nodes", inv.options.quad_nodes,
                        "Gauss-Legendre nodes per cycle axis");
        sub->add_option("--tolerance", inv.options.tolerance, "period tolerance");
        sub->add_option("--out", inv.out_path, "write the report to this file");
        sub->add_option("--format", inv.format, "report format: text or kv")
            ->check(CLI::IsMember({"text", "kv"}));
        subs.emplace_back(sub, std::move(inv));
    }

    CLI11_PARSE(app, argc, argv);
    for (auto& [sub, inv] : subs)
        if (sub->parsed()) return run(inv);
    return 2;
}
