#include "greybox/commands.h"

#include <spdlog/spdlog.h>

#include <fstream>
#include <json.hpp>
#include <ostream>

#include "greybox/config.h"
#include "greybox/csv.h"
#include "greybox/errors.h"
#include "greybox/metrics.h"
#include "greybox/plant.h"
#include "greybox/regression.h"
#include "greybox/svg_plot.h"

namespace greybox {

using ojson = nlohmann::ordered_json;

namespace {

void write_json(const std::filesystem::path& path, const ojson& j) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

int report(std::ostream& err, const std::exception& e, int code) {
    err << "error: " << e.what() << '\n';
    return code;
}

int report_config(std::ostream& err, const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    if (!e.keys().empty()) {
        err << "offending keys:";
        for (const auto& k : e.keys()) err << ' ' << k;
        err << '\n';
    }
    return kExitError;
}

ojson audit_json(const TankAudit& a) {
    ojson j;
    j["delta_h_J"] = a.delta_h;
    j["net_flux_J"] = a.net_flux;
    j["gross_flux_J"] = a.gross_flux;
    j["rel_error"] = a.rel_error;
    return j;
}

}  // namespace

int cmd_simulate(const SimulateArgs& a, std::ostream& err) {
    Scenario sc;
    try {
        const PlantConfig plant = load_plant_config(a.plant);
        sc = load_scenario(a.scenario);
        const PlantSystem sys = assemble(sc.mode, plant);
        spdlog::info("simulating {} ({}) with dt = {} s", sc.name, to_string(sc.mode), sc.dt);
        const SimLog log = run(sys, sc);

        std::filesystem::create_directories(a.out_dir);
        write_csv(a.out_dir / "simlog.csv", CsvTable{log.channels, log.rows});
        ojson summary;
        summary["scenario"] = sc.name;
        summary["mode"] = to_string(sc.mode);
        summary["termination_reason"] = log.reason;
        summary["termination_time_s"] = log.end_time;
        summary["termination_time_min"] = log.end_time / 60.0;
        summary["dt_s"] = sc.dt;
        summary["energy_audit"]["htes"] = audit_json(log.htes_audit);
        summary["energy_audit"]["ctes"] = audit_json(log.ctes_audit);
        write_json(a.out_dir / "summary.json", summary);
        spdlog::info("{} terminated by {} at {:.1f} min", sc.name, log.reason, log.end_time / 60.0);
        return kExitOk;
    } catch (const ConfigError& e) {
        return report_config(err, e);
    } catch (const NumericalDivergence& e) {
        try {
            std::filesystem::create_directories(a.out_dir);
            ojson summary;
            summary["scenario"] = sc.name;
            summary["mode"] = to_string(sc.mode);
            summary["termination_reason"] = "divergence";
            summary["message"] = e.what();
            write_json(a.out_dir / "summary.json", summary);
        } catch (const std::exception&) {
            // The divergence is the error worth reporting.
        }
        return report(err, e, kExitDivergence);
    } catch (const Error& e) {
        return report(err, e, kExitError);
    } catch (const std::filesystem::filesystem_error& e) {
        return report(err, e, kExitError);
    }
}

int cmd_fit(const FitArgs& a, std::ostream& err) {
    try {
        if (a.samples.empty()) throw InvalidInput("no sample files given");
        ojson out;
        out["kind"] = a.kind;
        if (a.kind == "step") {
            std::vector<StepResponseFit> fits;
            ojson tests = ojson::array();
            for (const auto& path : a.samples) {
                const CsvTable t = read_csv(path);
                if (t.header.size() != 2 || t.header[0] != "time_s") {
                    throw InvalidInput(path.string() + ": step samples need exactly the columns time_s and one output");
                }
                std::vector<StepPoint> pts;
                for (const auto& r : t.rows) pts.push_back({r[0], r[1]});
                const StepResponseFit f = fit_step_response(pts, a.step);
                fits.push_back(f);
                tests.push_back({{"file", path.filename().string()},
                                 {"K_S", f.gain},
                                 {"T_S", f.time_constant},
                                 {"T_S_determined", f.time_constant_determined},
                                 {"sse", f.sse}});
            }
            const StepResponseFit mean = average_step_fits(fits);
            out["K_S"] = mean.gain;
            out["T_S"] = mean.time_constant;
            out["T_S_determined"] = mean.time_constant_determined;
            out["tests"] = tests;
        } else {
            int n_vars = 0;
            if (a.kind == "map1") n_vars = 1;
            if (a.kind == "map2") n_vars = 2;
            if (a.kind == "map3") n_vars = 3;
            if (n_vars == 0) throw InvalidInput("unknown fit kind '" + a.kind + "' (map1, map2, map3, step)");
            std::vector<Sample> samples;
            for (const auto& path : a.samples) {
                const CsvTable t = read_csv(path);
                if (static_cast<int>(t.header.size()) != n_vars + 1) {
                    throw InvalidInput(path.string() + ": " + a.kind + " needs " + std::to_string(n_vars + 1) +
                                       " columns (inputs then output), found " + std::to_string(t.header.size()));
                }
                for (const auto& r : t.rows) samples.push_back({{r.begin(), r.end() - 1}, r.back()});
            }
            const MapFit fit = fit_map(samples, n_vars, a.relative);
            out["basis"] = basis_names(n_vars);
            out["coefficients"] = fit.map.coeffs();
            out["objective"] = fit.objective;
            out["objective_kind"] = a.relative ? "sum of squared relative residuals" : "sum of squared residuals";
            out["residuals"] = fit.residuals;
        }
        write_json(a.out, out);
        return kExitOk;
    } catch (const DegenerateFit& e) {
        err << "error: " << e.what() << '\n';
        for (const auto& d : e.directions()) err << "deficient direction: " << d << '\n';
        return kExitError;
    } catch (const Error& e) {
        return report(err, e, kExitError);
    }
}

int cmd_validate(const ValidateArgs& a, std::ostream& err) {
    try {
        if (a.channels.empty()) throw InvalidInput("no channels given");
        const CsvTable measured = read_csv(a.measured);
        const CsvTable sim = read_csv(a.simlog);
        std::vector<std::string> missing;
        for (const auto& c : a.channels) {
            if (!measured.has(c)) missing.push_back("measured:" + c);
            if (!sim.has(c)) missing.push_back("simlog:" + c);
        }
        if (!measured.has("time_s")) missing.push_back("measured:time_s");
        if (!sim.has("time_s")) missing.push_back("simlog:time_s");
        if (!missing.empty()) {
            std::string list;
            for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
            throw InvalidInput("missing channels: " + list);
        }

        ojson out;
        out["rolling_window"] = a.rolling_window;
        for (const auto& c : a.channels) {
            TimedSeries m{measured.column("time_s"), measured.column(c)};
            TimedSeries s{sim.column("time_s"), sim.column(c)};
            if (a.rolling_window > 1) {
                m.y = rolling_mean(m.y, a.rolling_window);
                s.y = rolling_mean(s.y, a.rolling_window);
            }
            const PairedSeries p = align(m, s);
            ojson entry;
            entry["n"] = p.y.size();
            const auto metric = [&](const char* name, double (*f)(const PairedSeries&)) {
                try {
                    entry[name] = f(p);
                } catch (const DegenerateRange&) {
                    entry[name] = "undefined: degenerate range";
                } catch (const DegenerateVariance&) {
                    entry[name] = "undefined: degenerate variance";
                }
            };
            metric("nrmsre", nrmsre);
            metric("r_squared", r_squared);
            metric("gof", gof);
            out["channels"][c] = entry;
        }
        write_json(a.out, out);
        return kExitOk;
    } catch (const Error& e) {
        return report(err, e, kExitError);
    }
}

int cmd_plot(const PlotArgs& a, std::ostream& err) {
    try {
        if (a.channels.empty()) throw InvalidInput("no channels given");
        const CsvTable sim = read_csv(a.simlog);
        std::optional<CsvTable> measured;
        if (a.measured) measured = read_csv(*a.measured);
        std::vector<PlotSeries> series;
        for (const auto& c : a.channels) {
            if (!sim.has(c)) throw InvalidInput("simlog has no channel '" + c + "'");
            if (measured) {
                if (!measured->has(c)) throw InvalidInput("measured file has no channel '" + c + "'");
                series.push_back({c + " (measured)", measured->column("time_s"), measured->column(c), false});
            }
            series.push_back({measured ? c + " (simulated)" : c, sim.column("time_s"), sim.column(c), true});
        }
        const std::string title = a.title.empty() ? a.simlog.filename().string() : a.title;
        std::ofstream out(a.out);
        if (!out) throw InvalidInput("cannot write " + a.out.string());
        out << render_svg(series, title);
        return kExitOk;
    } catch (const Error& e) {
        return report(err, e, kExitError);
    }
}

}  // namespace greybox
