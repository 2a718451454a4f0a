#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ucmec/harness.hpp"

namespace {

// "a..b" or a single integer
bool parse_seed_range(const std::string& text, std::uint64_t* lo, std::uint64_t* hi) {
    std::size_t dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            *lo = *hi = std::stoull(text);
        } else {
            *lo = std::stoull(text.substr(0, dots));
            *hi = std::stoull(text.substr(dots + 2));
        }
    } catch (const std::exception&) {
        return false;
    }
    return *hi >= *lo;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"User-centric MEC clustering and service caching simulator"};
    app.require_subcommand(1);

    // run
    std::string scenario_path, algorithm = "jo_cdsd", seeds = "1", out_dir = "out";
    CLI::App* run = app.add_subcommand("run", "Run seeded episodes and write CSV outputs");
    run->add_option("--scenario", scenario_path, "Scenario file (key = value lines)");
    run->add_option("--algorithm", algorithm, "jo_cdsd | instant | uplink | block")
        ->check(CLI::IsMember({"jo_cdsd", "instant", "uplink", "block"}));
    run->add_option("--seeds", seeds, "Seed or range a..b (default: scenario master_seed)");
    run->add_option("--out", out_dir, "Output directory")->required();

    // sweep
    std::string axis;
    std::vector<double> values;
    std::vector<std::string> algos = {"jo_cdsd"};
    CLI::App* sweep = app.add_subcommand("sweep", "Sweep a scenario axis and aggregate");
    sweep->add_option("--scenario", scenario_path, "Scenario file");
    sweep->add_option("--axis", axis, "cost_th | cluster_b")
        ->required()
        ->check(CLI::IsMember({"cost_th", "cluster_b"}));
    sweep->add_option("--values", values, "Axis values")->required()->expected(-1);
    sweep->add_option("--algorithms", algos, "Algorithms to include")->expected(-1);
    sweep->add_option("--seeds", seeds, "Seed or range a..b");
    sweep->add_option("--out", out_dir, "Output directory")->required();

    // verify
    int verify_instances = 20;
    double verify_tolerance = 0.02;
    CLI::App* verify = app.add_subcommand("verify", "Run the oracle-equivalence suite");
    verify->add_option("--instances", verify_instances, "Number of randomized instances");
    verify->add_option("--tolerance", verify_tolerance, "Relative objective tolerance");

    // scenario template helper
    std::string template_path;
    CLI::App* tmpl = app.add_subcommand("init", "Write a default scenario file");
    tmpl->add_option("path", template_path, "Destination file")->required();
    bool tmpl_multi = false;
    tmpl->add_flag("--multi-user", tmpl_multi, "3-user defaults instead of single-user");

    CLI11_PARSE(app, argc, argv);

    try {
        if (tmpl->parsed()) {
            ucmec::Scenario sc = tmpl_multi ? ucmec::Scenario::default_multi_user() : ucmec::Scenario{};
            ucmec::save_scenario(sc, template_path);
            std::cout << "wrote " << template_path << "\n";
            return 0;
        }

        if (verify->parsed()) {
            auto rows = ucmec::verify_oracle_equivalence(verify_instances, verify_tolerance);
            int bad = 0;
            for (const auto& r : rows) {
                std::printf("seed=%llu jo=%.6f oracle=%.6f gap=%.4f%% %s\n",
                            static_cast<unsigned long long>(r.seed), r.jo_objective,
                            r.oracle_objective, 100.0 * r.relative_gap, r.ok ? "ok" : "FLAGGED");
                if (!r.ok) ++bad;
            }
            std::printf("%zu instances, %d flagged\n", rows.size(), bad);
            return bad == 0 ? 0 : 1;
        }

        ucmec::Scenario sc =
            scenario_path.empty() ? ucmec::Scenario{} : ucmec::load_scenario(scenario_path);

        std::uint64_t seed_lo = sc.master_seed, seed_hi = sc.master_seed;
        if ((run->parsed() && run->count("--seeds")) || (sweep->parsed() && sweep->count("--seeds"))) {
            if (!parse_seed_range(seeds, &seed_lo, &seed_hi)) {
                std::cerr << "bad --seeds value: " << seeds << "\n";
                return 2;
            }
        }

        if (run->parsed()) {
            if (run->count("--algorithm") == 0) algorithm = sc.algorithm;
            ucmec::ensure_writable_dir(out_dir);
            auto episodes = ucmec::run_episodes(sc, algorithm, seed_lo, seed_hi);
            ucmec::emit_outputs(episodes, {}, out_dir);
            std::cout << "wrote " << episodes.size() << " episode(s) to " << out_dir << "\n";
            return 0;
        }

        if (sweep->parsed()) {
            ucmec::ensure_writable_dir(out_dir);
            auto table = ucmec::run_sweep(sc, axis, values, algos, seed_lo, seed_hi);
            ucmec::emit_outputs({}, table, out_dir);
            std::cout << "wrote sweep with " << table.size() << " point(s) to " << out_dir << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
