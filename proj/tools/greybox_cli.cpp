#include <CLI11.hpp>
#include <iostream>

#include "greybox/commands.h"
#include "greybox/log.h"

int main(int argc, char** argv) {
    greybox::init_logging();
    CLI::App app{"Grey-box models and simulation of a polygeneration plant"};
    app.require_subcommand(1);

    greybox::SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Run one operating-mode scenario");
    simulate->add_option("--plant", sim.plant, "Plant configuration JSON")->required();
    simulate->add_option("--scenario", sim.scenario, "Scenario JSON")->required();
    simulate->add_option("--out", sim.out_dir, "Output directory")->required();

    greybox::FitArgs fit;
    bool absolute = false;
    auto* fit_cmd = app.add_subcommand("fit", "Identify a performance map or a PT-1 step response");
    fit_cmd->add_option("--samples", fit.samples, "Sample CSV file(s)")->required();
    fit_cmd->add_option("--kind", fit.kind, "map1, map2, map3 or step")
        ->required()
        ->check(CLI::IsMember({"map1", "map2", "map3", "step"}));
    fit_cmd->add_option("--out", fit.out, "Coefficient JSON")->required();
    fit_cmd->add_flag("--absolute", absolute, "Plain least squares instead of relative residuals");
    fit_cmd->add_option("--step", fit.step, "Input step magnitude for step fits");

    greybox::ValidateArgs val;
    auto* validate = app.add_subcommand("validate", "Compare measured data with a simulation log");
    validate->add_option("--measured", val.measured, "Measured CSV")->required();
    validate->add_option("--simlog", val.simlog, "Simulation log CSV")->required();
    validate->add_option("--channels", val.channels, "Channels to compare")->required()->delimiter(',');
    validate->add_option("--out", val.out, "Metric JSON")->required();
    validate->add_option("--rolling", val.rolling_window, "Rolling-mean window in samples")
        ->check(CLI::PositiveNumber);

    greybox::PlotArgs plot;
    std::string measured;
    auto* plot_cmd = app.add_subcommand("plot", "Render channels of a simulation log as SVG");
    plot_cmd->add_option("--simlog", plot.simlog, "Simulation log CSV")->required();
    plot_cmd->add_option("--channels", plot.channels, "Channels to draw")->required()->delimiter(',');
    plot_cmd->add_option("--out", plot.out, "SVG file")->required();
    plot_cmd->add_option("--measured", measured, "Measured CSV drawn as solid lines");
    plot_cmd->add_option("--title", plot.title, "Chart title");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : greybox::kExitError;
    }

    if (*simulate) return greybox::cmd_simulate(sim, std::cerr);
    if (*fit_cmd) {
        fit.relative = !absolute;
        return greybox::cmd_fit(fit, std::cerr);
    }
    if (*validate) return greybox::cmd_validate(val, std::cerr);
    if (!measured.empty()) plot.measured = measured;
    return greybox::cmd_plot(plot, std::cerr);
}
