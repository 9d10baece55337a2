#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cli/commands.hpp"
#include "cli/presets.hpp"
#include "cli/validation.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

void add_common(CLI::App* cmd, swipt::cli::Options& o, bool config) {
    if (config) cmd->add_option("--config", o.config_path, "Scenario INI file")->check(CLI::ExistingFile);
    cmd->add_option("--seed", o.seed, "Base seed of the random streams");
    cmd->add_option("--reps", o.reps, "Monte Carlo replications per point");
    cmd->add_option("--slot2-mode", o.slot2, "Second-slot interferers: paper or full")
        ->check(CLI::IsMember({"paper", "full"}));
    cmd->add_option("--nearfield", o.nearfield, "Near-field treatment: paper or exact")
        ->check(CLI::IsMember({"paper", "exact"}));
    cmd->add_flag("--strict", o.strict, "Fail with exit code 3 on quadrature non-convergence");
    cmd->add_option("--out", o.out, "Output file (directory for reproduce)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stochastic-geometry SWIPT network analysis and simulation"};
    app.set_version_flag("--version", std::string(swipt::kVersion));
    app.require_subcommand(1);

    swipt::cli::Options opts;
    auto* analytic = app.add_subcommand("analytic", "Closed-form metrics over the configured sweep");
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimates with matching analytic values");
    auto* optimize = app.add_subcommand("optimize", "Minimum transmit power under outage and harvest constraints");
    auto* reproduce = app.add_subcommand("reproduce", "Regenerate the data of a figure or table preset");
    auto* validate = app.add_subcommand("validate", "Run the oracle-vs-analytic suite");
    for (auto* cmd : {analytic, simulate, optimize}) add_common(cmd, opts, true);
    add_common(reproduce, opts, false);
    add_common(validate, opts, false);

    std::string figure;
    reproduce->add_option("figure", figure, "fig1a, fig1b, fig2a, fig2b, fig3a, fig3b, fig4, fig5, table1 or all")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*analytic) return swipt::cli::cmd_analytic(opts);
        if (*simulate) return swipt::cli::cmd_simulate(opts);
        if (*optimize) return swipt::cli::cmd_optimize(opts);
        if (*validate) return swipt::cli::cmd_validate(opts);
        if (*reproduce) {
            const auto nf = swipt::cli::parse_nearfield(opts.nearfield.value_or("paper"));
            const auto slot2 = swipt::cli::parse_slot2(opts.slot2.value_or("paper"));
            const std::uint64_t reps = opts.reps.value_or(100000);
            if (reps < swipt::kMinReplications) throw swipt::cli::ConfigError("--reps must be >= 100");
            const std::string dir = opts.out.empty() ? "reproduce" : opts.out;
            std::vector<std::string> ids;
            if (figure == "all") {
                ids = swipt::cli::figure_ids();
            } else {
                ids = {figure};
            }
            for (const auto& id : ids) {
                swipt::cli::make_figure(id, reps, 1, nf, slot2);  // rejects unknown ids before any work
            }
            for (const auto& id : ids) {
                swipt::cli::reproduce_figure(id, dir, reps, opts.seed.value_or(1), nf, slot2, opts.strict);
                std::cerr << "wrote " << dir << "/" << id << ".csv\n";
            }
            return 0;
        }
    } catch (const swipt::cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const swipt::cli::NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const swipt::DomainError& e) {
        std::cerr << "invalid parameters: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}
