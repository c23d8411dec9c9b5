#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "qglab/errors.hpp"
#include "qglab/suite.hpp"

using namespace qglab;

namespace {

struct Options {
    SuiteConfig cfg;
    std::string out;
    bool no_runtime = false;
};

void add_common(CLI::App* sub, Options& o, bool instances, bool fock) {
    if (instances) {
        sub->add_option("--instance", o.cfg.instances, "instance JSON file (repeatable)")->check(CLI::ExistingFile);
        sub->add_option("--builtin", o.cfg.builtins, "builtin instance name (repeatable)");
    }
    sub->add_option("--seed", o.cfg.seed, "random seed");
    sub->add_option("--tol", o.cfg.tol, "override every tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--trials", o.cfg.trials, "seeded trials per instance")->check(CLI::PositiveNumber);
    if (fock) {
        sub->add_option("--copies", o.cfg.copies, "number of free factors")->check(CLI::PositiveNumber);
        sub->add_option("--length", o.cfg.length, "maximal word length")->check(CLI::PositiveNumber);
        sub->add_option("--dim-cap", o.cfg.dim_cap, "Fock dimension cap (default QGLAB_DIM_CAP or 200000)")
            ->check(CLI::PositiveNumber);
    }
    sub->add_option("--format", o.cfg.format, "report format")->check(CLI::IsMember({"json", "md"}));
    sub->add_option("--out", o.out, "write the report here instead of stdout");
    sub->add_flag("--no-runtime", o.no_runtime, "omit runtime fields");
}

int emit(const Options& o, const SuiteReport& rep) {
    std::string text = emit_report(rep, o.cfg.format, !o.no_runtime);
    if (o.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(o.out);
        if (!f) throw StructuralError("cannot write " + o.out);
        f << text;
    }
    return rep.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qglab: finite quantum group laboratory"};
    app.require_subcommand(1);

    Options o;
    const std::map<std::string, std::string> suites = {
        {"validate", "validate"},     {"dual", "duality"},       {"corep-suite", "corep"},
        {"multiplier-suite", "multiplier"}, {"unitarize", "unitarize"}, {"khintchine", "khintchine"},
        {"noncb", "noncb"},           {"all", "all"}};
    const std::map<std::string, std::string> help = {
        {"validate", "check the axioms of each instance"},
        {"dual", "multiplicative unitary, dual and biduality checks"},
        {"corep-suite", "corepresentation identities and the degenerate case"},
        {"multiplier-suite", "left multipliers from coefficient operators"},
        {"unitarize", "unitarization of similarity-twisted unitaries"},
        {"khintchine", "free Fock space checks and the operator Khintchine bound"},
        {"noncb", "bounded but not completely bounded representation"},
        {"all", "every suite"}};
    for (const auto& [cmd, suite] : suites) {
        auto* sub = app.add_subcommand(cmd, help.at(cmd));
        const bool inst = suite != "khintchine" && suite != "noncb";
        const bool fock = suite == "khintchine" || suite == "noncb" || suite == "all";
        add_common(sub, o, inst, fock);
        sub->callback([&o, suite] { o.cfg.suite = suite; });
    }
    std::string export_dir = "corpus";
    auto* exp = app.add_subcommand("export", "write the builtin corpus as JSON files");
    exp->add_option("--out", export_dir, "target directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (exp->parsed()) {
            for (const auto& p : export_corpus(export_dir)) std::cout << p << "\n";
            return 0;
        }
        return emit(o, run_suite(o.cfg));
    } catch (const StructuralError& e) {
        std::cerr << "structural error: " << e.what() << "\n";
        return 2;
    } catch (const BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
