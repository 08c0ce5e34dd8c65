// Experiment driver behind the CLI: runs analyze / simulate / hum on a
// ProblemConfig and writes state_T.csv, control.csv and report.txt.
#pragma once

#include <string>

#include "fracctrl/config.hpp"

namespace fracctrl {

enum class RunMode { Simulate, Analyze, Hum };

RunMode parse_run_mode(const std::string& name);  // throws ConfigError

/// Runs one experiment. Returns the process exit status: 0 on success,
/// 2 when the target is unreachable (report still written). Internal errors
/// propagate as exceptions (the CLI maps them to status 1).
int run_experiment(const ProblemConfig& config, RunMode mode);

/// Fixed 17-significant-digit formatting used for all emitted numbers.
std::string format_number(double v);

}  // namespace fracctrl
