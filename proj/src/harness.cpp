#include "ucmec/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ucmec/gbd_primal.hpp"
#include "ucmec/rng.hpp"

namespace ucmec {

namespace {

std::string fmt(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string join_flags(const std::vector<std::string>& flags) {
    std::string out;
    for (std::size_t i = 0; i < flags.size(); ++i) {
        if (i) out += ';';
        out += flags[i];
    }
    return out;
}

}  // namespace

Topology build_topology(const Scenario& sc, std::uint64_t seed) {
    Topology t;
    t.bs_count = sc.bs_count;
    t.antennas_per_bs = sc.antennas_per_bs;
    t.user_count = sc.user_count;
    t.tx_power_w = sc.tx_power_w;
    t.noise_power_w = sc.effective_noise_w();
    t.bandwidth_hz = sc.bandwidth_hz;

    rng::Stream s(rng::derive(seed, {rng::kTopology}));
    const double two_pi = 6.283185307179586476925287;
    t.bs_x.resize(sc.bs_count);
    t.bs_y.resize(sc.bs_count);
    for (int m = 0; m < sc.bs_count; ++m) {
        double r = s.uniform(sc.placement_min_km, sc.placement_max_km);
        double a = s.uniform(0.0, two_pi);
        t.bs_x[m] = r * std::cos(a);
        t.bs_y[m] = r * std::sin(a);
    }
    t.user_x.assign(sc.user_count, 0.0);
    t.user_y.assign(sc.user_count, 0.0);
    if (sc.user_count > 1) {
        // multi-user: everyone lands uniformly in the disk
        for (int u = 0; u < sc.user_count; ++u) {
            for (int tries = 0; tries < 100; ++tries) {
                double r = sc.placement_max_km * std::sqrt(s.u01());
                double a = s.uniform(0.0, two_pi);
                double x = r * std::cos(a), y = r * std::sin(a);
                bool clear = true;
                for (int m = 0; m < sc.bs_count; ++m) {
                    double dx = x - t.bs_x[m], dy = y - t.bs_y[m];
                    if (dx * dx + dy * dy < 1e-12) { clear = false; break; }
                }
                if (clear) { t.user_x[u] = x; t.user_y[u] = y; break; }
            }
        }
    }
    return t;
}

namespace {

std::vector<Task> draw_tasks(const Scenario& sc, int slot, std::uint64_t seed) {
    std::vector<Task> tasks(sc.user_count);
    for (int u = 0; u < sc.user_count; ++u) {
        rng::Stream s_req(rng::derive(seed, {rng::kServiceRequest, static_cast<std::uint64_t>(slot),
                                             static_cast<std::uint64_t>(u)}));
        rng::Stream s_d(rng::derive(seed, {rng::kTaskData, static_cast<std::uint64_t>(slot),
                                           static_cast<std::uint64_t>(u)}));
        rng::Stream s_w(rng::derive(seed, {rng::kTaskWork, static_cast<std::uint64_t>(slot),
                                           static_cast<std::uint64_t>(u)}));
        Task& t = tasks[u];
        t.user = u;
        t.slot = slot;
        t.service = sample_request(sc.zipf_exponents[u], sc.service_count, s_req);
        t.data_bits = s_d.uniform(sc.data_min_mbit, sc.data_max_mbit) * 1e6;
        t.work_cycles = s_w.uniform(sc.work_min_gcycles, sc.work_max_gcycles) * 1e9;
    }
    return tasks;
}

GbdConfig make_gbd_config(const Scenario& sc) {
    GbdConfig cfg;
    cfg.max_iters = sc.gbd_max_iters;
    cfg.epsilon = sc.gbd_epsilon;
    cfg.gibbs.max_iters = sc.gibbs_max_iters;
    cfg.gibbs.phi_start = sc.gibbs_phi_start;
    cfg.gibbs.phi_end = sc.gibbs_phi_end;
    cfg.gibbs.rho = sc.gibbs_rho;
    cfg.gibbs.plateau = sc.gibbs_plateau;
    cfg.dichotomy_max_iters = sc.dichotomy_max_iters;
    cfg.dichotomy_epsilon = sc.dichotomy_epsilon;
    return cfg;
}

struct SolveOutput {
    ClusterMask cluster = 0;
    CacheDecision x;
    int gbd_iters = 0;
    std::vector<std::string> flags;
    std::vector<GbdTracePoint> gbd_trace;
    std::vector<std::pair<int, double>> gibbs_trace;
};

SolveOutput dispatch(const Scenario& sc, const std::string& algo, const SlotProblem& slot,
                     std::uint64_t seed, int slot_no) {
    GbdConfig cfg = make_gbd_config(sc);
    std::uint64_t slot_seed = rng::derive(seed, {rng::kInstance, static_cast<std::uint64_t>(slot_no)});
    SolveOutput out;
    bool multi = slot.task_count() > 1;

    if (algo == "jo_cdsd") {
        if (!multi) {
            GbdRunResult r = solve_slot_single(slot, cfg, slot_seed);
            out.cluster = r.cluster;
            out.x = r.x;
            out.gbd_iters = r.iterations;
            out.flags = r.flags;
            out.gbd_trace = r.trace;
            out.gibbs_trace = r.gibbs_trace;
        } else {
            MultiSlotResult r = solve_slot_multi(slot, cfg, slot_seed);
            out.cluster = r.run.cluster;
            out.x = r.run.x;
            out.gbd_iters = r.total_gbd_iterations;
            out.flags = r.flags;
            for (const std::string& f : r.run.flags) out.flags.push_back(f);
            out.gbd_trace = r.run.trace;
            out.gibbs_trace = r.run.gibbs_trace;
        }
    } else if (algo == "instant") {
        if (!multi) {
            BaselineOutcome r = instant_optimal(slot);
            out.cluster = r.cluster;
            out.x = r.x;
            out.flags = r.flags;
        } else {
            MultiSlotResult r = instant_optimal_multi(slot, sc.dichotomy_max_iters, sc.dichotomy_epsilon);
            out.cluster = r.run.cluster;
            out.x = r.run.x;
            out.flags = r.flags;
        }
    } else if (algo == "uplink") {
        BaselineOutcome r = multi ? uplink_optimal_multi(slot) : uplink_optimal(slot);
        out.cluster = r.cluster;
        out.x = r.x;
        out.flags = r.flags;
    } else if (algo == "block") {
        BaselineOutcome r = multi ? block_descent_multi(slot) : block_descent(slot);
        out.cluster = r.cluster;
        out.x = r.x;
        out.flags = r.flags;
    } else {
        throw std::invalid_argument("unknown algorithm: " + algo);
    }
    return out;
}

}  // namespace

EpisodeResult run_episode(const Scenario& sc, const std::string& algorithm, std::uint64_t seed) {
    sc.validate();
    EpisodeResult out;
    out.summary.algo = algorithm;
    out.summary.seed = seed;

    Topology topo = build_topology(sc, seed);
    std::vector<ServiceSpec> services = sc.build_services();
    BsResources resources = sc.build_resources();

    VirtualQueue queue;
    queue.threshold = sc.cost_threshold;

    double sum_total = 0.0, sum_uplink = 0.0, sum_cost = 0.0;
    for (int t = 1; t <= sc.slots; ++t) {
        ChannelRealization channels = generate_channels(topo, t, seed);
        std::vector<Task> tasks = draw_tasks(sc, t, seed);

        SlotProblem slot;
        slot.topo = &topo;
        slot.channels = &channels;
        slot.services = &services;
        slot.resources = &resources;
        slot.tasks = merge_requests(tasks);
        slot.queue_backlog = queue.backlog;
        slot.cost_threshold = sc.cost_threshold;
        slot.v_weight = sc.v_weight;
        slot.backbone_rate_bps = sc.backbone_rate_bps();
        slot.max_cluster_size = sc.max_cluster_size;
        slot.allowed_mask = (sc.bs_count >= 32) ? ~0u : ((1u << sc.bs_count) - 1u);
        slot.init_rates();

        SolveOutput sol = dispatch(sc, algorithm, slot, seed, t);

        SlotOutcome row;
        row.slot = t;
        row.algo = algorithm;
        row.seed = seed;
        row.cluster = sol.cluster;
        row.gbd_iters = sol.gbd_iters;
        row.flags = sol.flags;

        row.uplink_delay_s = slot.mean_uplink_delay(sol.cluster);
        if (std::isinf(row.uplink_delay_s)) row.flags.push_back("zero_rate");
        double pro = 0.0;
        for (std::size_t i = 0; i < slot.task_count(); ++i) {
            ServingBs sb = serving_bs(slot.tasks[i].task, sol.cluster, sol.x);
            pro += processing_delay(slot.tasks[i].task, sb.hit_probability, services,
                                    slot.backbone_rate_bps);
        }
        row.processing_delay_s = pro / static_cast<double>(slot.task_count());
        row.total_delay_s = total_delay(row.uplink_delay_s, row.processing_delay_s);
        row.objective = realized_objective(slot, sol.cluster, sol.x);

        double arrival = arrival_rate(sol.cluster, sol.x, services);
        row.cost = arrival;
        double before = queue.backlog;
        queue = queue_update(queue, arrival);
        if (!drift_bound_holds(before, queue.backlog, arrival, sol.cluster, services, sc.cost_threshold))
            row.flags.push_back("drift_bound_violated");
        row.queue = queue.backlog;

        sum_total += row.total_delay_s;
        sum_uplink += row.uplink_delay_s;
        sum_cost += row.cost;
        out.summary.running_total_delay.push_back(sum_total / t);
        out.summary.running_uplink_delay.push_back(sum_uplink / t);
        out.summary.running_cost.push_back(sum_cost / t);

        if (t == 1 && algorithm == "jo_cdsd") {
            for (const GbdTracePoint& p : sol.gbd_trace)
                out.convergence.push_back({"gbd", seed, t, p.tau, 0.0, p.ubd, p.lbd});
            for (const auto& [it, f] : sol.gibbs_trace)
                out.convergence.push_back({"gibbs", seed, t, it, f, 0.0, 0.0});
        }
        out.slots.push_back(std::move(row));
    }

    out.summary.mean_total_delay = sum_total / sc.slots;
    out.summary.mean_uplink_delay = sum_uplink / sc.slots;
    out.summary.mean_cost = sum_cost / sc.slots;
    out.summary.final_queue = queue.backlog;
    return out;
}

int env_thread_count() {
    const char* v = std::getenv("UCMEC_THREADS");
    if (!v) return 1;
    int n = std::atoi(v);
    return n < 1 ? 1 : n;
}

std::vector<EpisodeResult> run_episodes(const Scenario& sc, const std::string& algorithm,
                                        std::uint64_t seed_begin, std::uint64_t seed_end) {
    if (seed_end < seed_begin) throw std::invalid_argument("run_episodes: bad seed range");
    std::size_t count = static_cast<std::size_t>(seed_end - seed_begin + 1);
    std::vector<EpisodeResult> out(count);
    int threads = std::min<int>(env_thread_count(), static_cast<int>(count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            out[i] = run_episode(sc, algorithm, seed_begin + i);
        return out;
    }
    std::vector<std::thread> pool;
    std::size_t chunk = (count + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
        std::size_t lo = w * chunk, hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) out[i] = run_episode(sc, algorithm, seed_begin + i);
        });
    }
    for (auto& th : pool) th.join();
    return out;
}

std::vector<SweepPoint> run_sweep(const Scenario& sc, const std::string& axis,
                                  const std::vector<double>& values,
                                  const std::vector<std::string>& algorithms,
                                  std::uint64_t seed_begin, std::uint64_t seed_end) {
    std::vector<SweepPoint> out;
    for (double v : values) {
        Scenario varied = sc;
        if (axis == "cost_th") varied.cost_threshold = v;
        else if (axis == "cluster_b") varied.max_cluster_size = static_cast<int>(v);
        else throw std::invalid_argument("run_sweep: unknown axis " + axis);
        varied.validate();
        for (const std::string& algo : algorithms) {
            std::vector<EpisodeResult> eps = run_episodes(varied, algo, seed_begin, seed_end);
            SweepPoint p;
            p.axis = axis;
            p.value = v;
            p.algo = algo;
            p.seeds = static_cast<int>(eps.size());
            for (const EpisodeResult& e : eps) {
                p.mean_total_delay += e.summary.mean_total_delay;
                p.mean_uplink_delay += e.summary.mean_uplink_delay;
                p.mean_cost += e.summary.mean_cost;
            }
            p.mean_total_delay /= p.seeds;
            p.mean_uplink_delay /= p.seeds;
            p.mean_cost /= p.seeds;
            out.push_back(p);
        }
    }
    return out;
}

void ensure_writable_dir(const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    std::string probe = out_dir + "/.write_probe";
    std::ofstream f(probe);
    if (!f) throw std::runtime_error("output directory not writable: " + out_dir);
    f.close();
    fs::remove(probe);
}

namespace {

const char* kPlotScript = R"PY(#!/usr/bin/env python3
"""Regenerates the convergence / long-term / sweep charts from the CSVs
written next to this script. Self-contained: only needs matplotlib."""
import csv
import os
import sys

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))

def read(name):
    path = os.path.join(here, name)
    if not os.path.exists(path):
        return []
    with open(path) as f:
        rows = [r for r in csv.DictReader(l for l in f if not l.startswith("#"))]
    return rows

def num(v):
    try:
        return float(v)
    except ValueError:
        return float("nan")

conv = read("convergence.csv")
if conv:
    fig, axes = plt.subplots(1, 2, figsize=(11, 4))
    gibbs = [r for r in conv if r["kind"] == "gibbs"]
    if gibbs:
        seed0 = gibbs[0]["seed"]
        pts = [(int(r["iter"]), num(r["f"])) for r in gibbs if r["seed"] == seed0]
        axes[0].plot(*zip(*pts))
        axes[0].set_xlabel("iteration"); axes[0].set_ylabel("target value F")
        axes[0].set_title("Gibbs clustering convergence")
    gbd = [r for r in conv if r["kind"] == "gbd"]
    if gbd:
        seed0 = gbd[0]["seed"]
        pts = [(int(r["iter"]), num(r["ubd"]), num(r["lbd"])) for r in gbd if r["seed"] == seed0]
        it, ubd, lbd = zip(*pts)
        axes[1].plot(it, ubd, marker="o", label="UBD")
        axes[1].plot(it, lbd, marker="s", label="LBD")
        axes[1].set_xlabel("iteration"); axes[1].legend()
        axes[1].set_title("Bound convergence")
    fig.tight_layout(); fig.savefig(os.path.join(here, "convergence.png"), dpi=140)

summary = read("summary.csv")
running = [r for r in summary if r["kind"] == "running"]
if running:
    fig, axes = plt.subplots(1, 2, figsize=(11, 4))
    algos = sorted({r["algo"] for r in running})
    for algo in algos:
        rows = [r for r in running if r["algo"] == algo]
        by_slot = {}
        for r in rows:
            by_slot.setdefault(int(r["slot"]), []).append(
                (num(r["mean_total_delay_s"]), num(r["mean_cost"])))
        slots = sorted(by_slot)
        delay = [sum(v[0] for v in by_slot[s]) / len(by_slot[s]) for s in slots]
        cost = [sum(v[1] for v in by_slot[s]) / len(by_slot[s]) for s in slots]
        axes[0].plot(slots, delay, label=algo)
        axes[1].plot(slots, cost, label=algo)
    axes[0].set_xlabel("slot"); axes[0].set_ylabel("time-avg total delay (s)"); axes[0].legend()
    axes[1].set_xlabel("slot"); axes[1].set_ylabel("time-avg caching cost"); axes[1].legend()
    fig.tight_layout(); fig.savefig(os.path.join(here, "longterm.png"), dpi=140)

sweep = [r for r in summary if r["kind"] == "sweep"]
if sweep:
    fig, axes = plt.subplots(1, 2, figsize=(11, 4))
    algos = sorted({r["algo"] for r in sweep})
    for algo in algos:
        rows = sorted([r for r in sweep if r["algo"] == algo], key=lambda r: num(r["value"]))
        xs = [num(r["value"]) for r in rows]
        axes[0].plot(xs, [num(r["mean_total_delay_s"]) for r in rows], marker="o", label=algo)
        axes[1].plot(xs, [num(r["mean_cost"]) for r in rows], marker="o", label=algo)
    axis_name = sweep[0]["axis"]
    axes[0].set_xlabel(axis_name); axes[0].set_ylabel("mean total delay (s)"); axes[0].legend()
    axes[1].set_xlabel(axis_name); axes[1].set_ylabel("mean caching cost"); axes[1].legend()
    fig.tight_layout(); fig.savefig(os.path.join(here, "sweep.png"), dpi=140)

print("plots written to", here)
)PY";

}  // namespace

void emit_outputs(const std::vector<EpisodeResult>& episodes, const std::vector<SweepPoint>& sweep,
                  const std::string& out_dir) {
    ensure_writable_dir(out_dir);

    {
        std::ofstream f(out_dir + "/slots.csv");
        f << "# " << kCsvSchemaVersion << "\n";
        f << "slot,algo,seed,total_delay_s,uplink_delay_s,cost,queue,gbd_iters,flags\n";
        for (const EpisodeResult& e : episodes)
            for (const SlotOutcome& r : e.slots)
                f << r.slot << ',' << r.algo << ',' << r.seed << ',' << fmt(r.total_delay_s) << ','
                  << fmt(r.uplink_delay_s) << ',' << fmt(r.cost) << ',' << fmt(r.queue) << ','
                  << r.gbd_iters << ',' << join_flags(r.flags) << "\n";
    }
    {
        std::ofstream f(out_dir + "/summary.csv");
        f << "# " << kCsvSchemaVersion << "\n";
        f << "kind,algo,seed,slot,axis,value,mean_total_delay_s,mean_uplink_delay_s,mean_cost\n";
        for (const EpisodeResult& e : episodes) {
            const EpisodeSummary& s = e.summary;
            for (std::size_t t = 0; t < s.running_total_delay.size(); ++t)
                f << "running," << s.algo << ',' << s.seed << ',' << (t + 1) << ",,,"
                  << fmt(s.running_total_delay[t]) << ',' << fmt(s.running_uplink_delay[t]) << ','
                  << fmt(s.running_cost[t]) << "\n";
            f << "episode," << s.algo << ',' << s.seed << ',' << s.running_total_delay.size() << ",,,"
              << fmt(s.mean_total_delay) << ',' << fmt(s.mean_uplink_delay) << ','
              << fmt(s.mean_cost) << "\n";
        }
        for (const SweepPoint& p : sweep)
            f << "sweep," << p.algo << ",," << p.seeds << ',' << p.axis << ',' << fmt(p.value) << ','
              << fmt(p.mean_total_delay) << ',' << fmt(p.mean_uplink_delay) << ','
              << fmt(p.mean_cost) << "\n";
    }
    {
        std::ofstream f(out_dir + "/convergence.csv");
        f << "# " << kCsvSchemaVersion << "\n";
        f << "kind,seed,slot,iter,f,ubd,lbd\n";
        for (const EpisodeResult& e : episodes)
            for (const ConvergenceRow& r : e.convergence) {
                f << r.kind << ',' << r.seed << ',' << r.slot << ',' << r.iter << ',';
                if (r.kind == "gibbs") f << fmt(r.f) << ",,";
                else f << ',' << fmt(r.ubd) << ',' << fmt(r.lbd);
                f << "\n";
            }
    }
    {
        std::ofstream f(out_dir + "/plots.py");
        f << kPlotScript;
    }
}

std::vector<VerifyRow> verify_oracle_equivalence(int instances, double tolerance) {
    std::vector<VerifyRow> rows;
    for (int i = 0; i < instances; ++i) {
        std::uint64_t seed = 1000 + static_cast<std::uint64_t>(i);
        rng::Stream gen(rng::derive(seed, {rng::kInstance}));

        Scenario sc;
        sc.bs_count = 2 + static_cast<int>(gen.index(4));       // 2..5
        sc.max_cluster_size = 1 + static_cast<int>(gen.index(2));  // 1..2
        sc.service_count = 1 + static_cast<int>(gen.index(3));  // 1..3
        sc.user_count = 1;
        sc.zipf_exponents = {0.5};
        sc.slots = 1;

        Topology topo = build_topology(sc, seed);
        std::vector<ServiceSpec> services = sc.build_services();
        BsResources res;
        res.cache_bits.resize(sc.bs_count);
        res.compute_hz.resize(sc.bs_count);
        for (int m = 0; m < sc.bs_count; ++m) {
            const double cache_opts[] = {2.0e9, 3.0e9, 3.5e9, 6.0e9};
            const double compute_opts[] = {0.2e9, 0.5e9, 3.0e9};
            res.cache_bits[m] = cache_opts[gen.index(4)];
            res.compute_hz[m] = compute_opts[gen.index(3)];
        }

        ChannelRealization channels = generate_channels(topo, 1, seed);
        std::vector<Task> tasks = draw_tasks(sc, 1, seed);

        SlotProblem slot;
        slot.topo = &topo;
        slot.channels = &channels;
        slot.services = &services;
        slot.resources = &res;
        slot.tasks = merge_requests(tasks);
        slot.queue_backlog = (i % 3 == 0) ? 0.0 : gen.uniform(0.0, 3.0);
        slot.cost_threshold = 2.0;
        slot.v_weight = 5.0;
        slot.backbone_rate_bps = sc.backbone_rate_bps();
        slot.max_cluster_size = sc.max_cluster_size;
        slot.allowed_mask = (1u << sc.bs_count) - 1u;
        slot.init_rates();

        GbdConfig cfg = make_gbd_config(sc);
        GbdRunResult jo = solve_slot_single(slot, cfg, seed);
        BaselineOutcome oracle = instant_optimal(slot);

        VerifyRow row;
        row.seed = seed;
        row.jo_objective = jo.objective;
        row.oracle_objective = oracle.objective;
        double denom = std::max(std::abs(oracle.objective), 1e-9);
        row.relative_gap = (jo.objective - oracle.objective) / denom;
        row.ok = row.relative_gap <= tolerance + 1e-12;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace ucmec
