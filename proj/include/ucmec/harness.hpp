#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ucmec/baselines.hpp"
#include "ucmec/lyapunov.hpp"
#include "ucmec/scenario.hpp"

namespace ucmec {

inline constexpr const char* kCsvSchemaVersion = "ucmec-csv-v1";

struct SlotOutcome {
    int slot = 0;
    std::string algo;
    std::uint64_t seed = 0;
    double total_delay_s = 0.0;
    double uplink_delay_s = 0.0;
    double processing_delay_s = 0.0;
    double cost = 0.0;            // a(t)
    double queue = 0.0;           // backlog after the update
    int gbd_iters = 0;
    ClusterMask cluster = 0;
    double objective = 0.0;       // drift-plus-penalty value acted on
    std::vector<std::string> flags;
};

struct ConvergenceRow {
    std::string kind;  // "gibbs" or "gbd"
    std::uint64_t seed = 0;
    int slot = 0;
    int iter = 0;
    double f = 0.0;    // gibbs chain value
    double ubd = 0.0, lbd = 0.0;
};

struct EpisodeSummary {
    std::string algo;
    std::uint64_t seed = 0;
    // running (1/t) sums per slot, the long-term average curves
    std::vector<double> running_total_delay;
    std::vector<double> running_uplink_delay;
    std::vector<double> running_cost;
    double mean_total_delay = 0.0;
    double mean_uplink_delay = 0.0;
    double mean_cost = 0.0;
    double final_queue = 0.0;
};

struct EpisodeResult {
    std::vector<SlotOutcome> slots;
    EpisodeSummary summary;
    std::vector<ConvergenceRow> convergence;
};

struct SweepPoint {
    std::string axis;
    double value = 0.0;
    std::string algo;
    int seeds = 0;
    double mean_total_delay = 0.0;
    double mean_uplink_delay = 0.0;
    double mean_cost = 0.0;
};

// Seed-derived experiment geometry: BS annulus placement plus user disk.
Topology build_topology(const Scenario& sc, std::uint64_t seed);

// Per-slot channel/task generation and the algorithm dispatch; deterministic
// in (scenario, seed).
EpisodeResult run_episode(const Scenario& sc, const std::string& algorithm, std::uint64_t seed);

std::vector<SweepPoint> run_sweep(const Scenario& sc, const std::string& axis,
                                  const std::vector<double>& values,
                                  const std::vector<std::string>& algorithms,
                                  std::uint64_t seed_begin, std::uint64_t seed_end);

// Writes slots.csv / summary.csv / convergence.csv plus the plot script.
void emit_outputs(const std::vector<EpisodeResult>& episodes, const std::vector<SweepPoint>& sweep,
                  const std::string& out_dir);

// Probes that the output directory exists and is writable; throws otherwise.
void ensure_writable_dir(const std::string& out_dir);

// Small-instance oracle equivalence: the main algorithm against the
// exhaustive baseline on randomized tight instances.
struct VerifyRow {
    std::uint64_t seed = 0;
    double jo_objective = 0.0;
    double oracle_objective = 0.0;
    double relative_gap = 0.0;
    bool ok = false;
};
std::vector<VerifyRow> verify_oracle_equivalence(int instances, double tolerance);

// Episodes across a seed range, optionally in parallel (UCMEC_THREADS).
std::vector<EpisodeResult> run_episodes(const Scenario& sc, const std::string& algorithm,
                                        std::uint64_t seed_begin, std::uint64_t seed_end);

int env_thread_count();

}  // namespace ucmec
