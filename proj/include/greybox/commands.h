#pragma once

// Command implementations behind the CLI. Each returns a process exit code:
// 0 success, 1 configuration or input error, 2 numerical divergence.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace greybox {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitDivergence = 2;

struct SimulateArgs {
    std::filesystem::path plant;
    std::filesystem::path scenario;
    std::filesystem::path out_dir;
};

// Writes simlog.csv and summary.json into out_dir.
int cmd_simulate(const SimulateArgs& a, std::ostream& err);

struct FitArgs {
    std::vector<std::filesystem::path> samples;  // several step tests are averaged
    std::string kind;                            // map1, map2, map3 or step
    std::filesystem::path out;
    bool relative = true;  // map kinds: weight residuals by 1/y
    double step = 1.0;     // step kind: input step magnitude
};

int cmd_fit(const FitArgs& a, std::ostream& err);

struct ValidateArgs {
    std::filesystem::path measured;
    std::filesystem::path simlog;
    std::vector<std::string> channels;
    std::filesystem::path out;
    int rolling_window = 1;  // samples; 3 gives the 3-minute mean on the 60 s grid
};

int cmd_validate(const ValidateArgs& a, std::ostream& err);

struct PlotArgs {
    std::filesystem::path simlog;
    std::vector<std::string> channels;
    std::filesystem::path out;
    std::optional<std::filesystem::path> measured;
    std::string title;
};

int cmd_plot(const PlotArgs& a, std::ostream& err);

}  // namespace greybox
