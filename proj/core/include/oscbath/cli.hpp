// cli.hpp — Operator-facing commands: coefficient tables, evolutions,
// model comparison, exact-bath runs, and parameter sweeps. Each command
// writes its outputs plus the resolved config into the output directory and
// throws on any failure (the binary maps exceptions to nonzero exit codes).
#pragma once

#include <string>
#include <vector>

#include "oscbath/config.hpp"

namespace oscbath {

struct OutputOptions {
    std::string out_dir = ".";
    bool plot = false;
    unsigned jobs = 0;  // 0 = logical cores
};

// coeffs: coefficient CSV (+ optional two-panel SVG).
void cmd_coeffs(const RunConfig& cfg, const OutputOptions& out);

// evolve: trajectory CSV for one model (+ optional SVG). moments selects the
// closed second-moment fast path instead of the full Fock evolution.
void cmd_evolve(const RunConfig& cfg, ModelKind model, bool moments,
                const OutputOptions& out);

// compare: FV vs RW heating report (+ optionally FV_RWA and both oracles).
void cmd_compare(const RunConfig& cfg, bool with_fv_rwa, bool with_oracle,
                 const OutputOptions& out);

// oracle: exact discrete-bath evolution for the configured models.
void cmd_oracle(const RunConfig& cfg, const OutputOptions& out);

// sweep: one evolve run per parameter value, concurrently, plus an index.
// param is one of alpha, theta, omega_c.
void cmd_sweep(const RunConfig& cfg, const std::string& param,
               const std::vector<double>& values, ModelKind model, bool moments,
               const OutputOptions& out);

}  // namespace oscbath
