#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rgflow/rg_engine.hpp"
#include "rgflow/run_config.hpp"

namespace rgflow {

enum class RunStatus {
    Ok,
    BlowUp,
    DegenerateProfile,
    DivergingCoefficient,
    Error,
};

std::string to_string(RunStatus status);
int exit_code(RunStatus status); // 0, 10, 11, 12, 14

struct RunOutcome {
    RunStatus status = RunStatus::Ok;
    std::string message;          // failure text when status != Ok
    int failed_iteration = 0;     // 0 when status == Ok
    std::vector<TraceRecord> trace;
    RunSummary summary;           // filled from the partial trace on failure
    std::optional<Field> profile; // final profile when the run completed
};

// Runs one config and writes trace.csv / profile.csv / summary.csv into
// cfg.out_dir (summary.csv is written even on failure, with the status
// column and whatever trace rows completed).
RunOutcome execute_run(const RunConfig& cfg);

// Per-run fields the sweep drivers may pin; unset fields keep the
// preset/config defaults.
struct RunOverrides {
    std::optional<int> grid_count;
    std::optional<int> max_iter;
    std::optional<double> reldiff_tol;
    std::optional<double> ic_amplitude;
};

int cmd_run(const RunConfig& cfg);
int cmd_table(const std::vector<int>& rows, const std::string& out_dir,
              const RunOverrides& ov = {});
int cmd_sweep_barenblatt(const std::vector<double>& eps_list,
                         const std::string& out_dir,
                         const RunOverrides& ov = {});
int cmd_sweep_relevant(const std::vector<double>& a_list, double mu,
                       const std::string& g_name, const std::string& out_dir,
                       const RunOverrides& ov = {});
int cmd_harmonic_mean(const std::string& g_name, double mu, double tol = 1e-10);
int emit_plots(const std::string& run_dir);

} // namespace rgflow
