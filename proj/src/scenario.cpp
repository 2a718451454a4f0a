#include "ucmec/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ucmec/radio.hpp"

namespace ucmec {

double Scenario::effective_noise_w() const {
    return noise_power_w < 0.0 ? thermal_noise_w(bandwidth_hz) : noise_power_w;
}

std::vector<ServiceSpec> Scenario::build_services() const {
    std::vector<ServiceSpec> out(service_count);
    for (int k = 0; k < service_count; ++k) {
        out[k].index = k;
        out[k].cache_bits = service_cache_gbit * 1e9;
        out[k].compute_hz = service_compute_ghz * 1e9;
        out[k].cost_coeff = cost_coeff_step * (k + 1);
    }
    return out;
}

BsResources Scenario::build_resources() const {
    BsResources r;
    r.cache_bits.assign(bs_count, bs_cache_gbit * 1e9);
    r.compute_hz.assign(bs_count, bs_compute_ghz * 1e9);
    return r;
}

void Scenario::validate() const {
    auto fail = [](const std::string& msg) { throw std::invalid_argument("scenario: " + msg); };
    if (bs_count < 1) fail("bs_count must be >= 1");
    if (antennas_per_bs < 1) fail("antennas_per_bs must be >= 1");
    if (user_count < 1) fail("user_count must be >= 1");
    if (max_cluster_size < 1) fail("max_cluster_size must be >= 1");
    if (service_count < 1) fail("service_count must be >= 1");
    if (slots < 1) fail("slots must be >= 1");
    if (static_cast<int>(zipf_exponents.size()) != user_count)
        fail("zipf_exponents must list one exponent per user");
    for (double e : zipf_exponents)
        if (e < 0.0) fail("zipf exponent must be >= 0");
    if (bandwidth_hz <= 0 || tx_power_w <= 0 || backbone_rate_gbps <= 0) fail("powers and rates must be positive");
    if (service_cache_gbit <= 0 || service_compute_ghz <= 0 || bs_cache_gbit <= 0 || bs_compute_ghz <= 0)
        fail("resource sizes must be positive");
    if (data_min_mbit <= 0 || data_max_mbit < data_min_mbit) fail("bad data size range");
    if (work_min_gcycles <= 0 || work_max_gcycles < work_min_gcycles) fail("bad workload range");
    if (cost_threshold <= 0) fail("cost_threshold must be positive");
    if (v_weight < 0) fail("v_weight must be >= 0");
    if (placement_min_km <= 0 || placement_max_km < placement_min_km) fail("bad placement annulus");
    if (gbd_max_iters < 1 || gibbs_max_iters < 1 || dichotomy_max_iters < 1) fail("iteration budgets must be >= 1");
    if (algorithm != "jo_cdsd" && algorithm != "instant" && algorithm != "uplink" && algorithm != "block")
        fail("unknown algorithm tag: " + algorithm);
}

Scenario Scenario::default_multi_user() {
    Scenario s;
    s.user_count = 3;
    s.zipf_exponents = {0.3, 0.2, 1.0};
    return s;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<double> parse_list(const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(trim(item)));
    return out;
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
    Scenario s;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("scenario line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(t.substr(0, eq));
        std::string val = trim(t.substr(eq + 1));

        auto d = [&] { return std::stod(val); };
        auto i = [&] { return std::stoi(val); };
        if (key == "bs_count") s.bs_count = i();
        else if (key == "antennas_per_bs") s.antennas_per_bs = i();
        else if (key == "max_cluster_size") s.max_cluster_size = i();
        else if (key == "bandwidth_hz") s.bandwidth_hz = d();
        else if (key == "user_count") s.user_count = i();
        else if (key == "service_count") s.service_count = i();
        else if (key == "service_cache_gbit") s.service_cache_gbit = d();
        else if (key == "service_compute_ghz") s.service_compute_ghz = d();
        else if (key == "bs_cache_gbit") s.bs_cache_gbit = d();
        else if (key == "bs_compute_ghz") s.bs_compute_ghz = d();
        else if (key == "cost_coeff_step") s.cost_coeff_step = d();
        else if (key == "zipf_exponents") s.zipf_exponents = parse_list(val);
        else if (key == "data_min_mbit") s.data_min_mbit = d();
        else if (key == "data_max_mbit") s.data_max_mbit = d();
        else if (key == "work_min_gcycles") s.work_min_gcycles = d();
        else if (key == "work_max_gcycles") s.work_max_gcycles = d();
        else if (key == "backbone_rate_gbps") s.backbone_rate_gbps = d();
        else if (key == "v_weight") s.v_weight = d();
        else if (key == "cost_threshold") s.cost_threshold = d();
        else if (key == "gbd_max_iters") s.gbd_max_iters = i();
        else if (key == "gbd_epsilon") s.gbd_epsilon = d();
        else if (key == "gibbs_max_iters") s.gibbs_max_iters = i();
        else if (key == "gibbs_phi_start") s.gibbs_phi_start = d();
        else if (key == "gibbs_phi_end") s.gibbs_phi_end = d();
        else if (key == "gibbs_rho") s.gibbs_rho = d();
        else if (key == "gibbs_plateau") s.gibbs_plateau = i();
        else if (key == "dichotomy_max_iters") s.dichotomy_max_iters = i();
        else if (key == "dichotomy_epsilon") s.dichotomy_epsilon = d();
        else if (key == "slots") s.slots = i();
        else if (key == "master_seed") s.master_seed = std::stoull(val);
        else if (key == "algorithm") s.algorithm = val;
        else if (key == "tx_power_w") s.tx_power_w = d();
        else if (key == "noise_power_w") s.noise_power_w = (val == "auto") ? -1.0 : d();
        else if (key == "placement_min_km") s.placement_min_km = d();
        else if (key == "placement_max_km") s.placement_max_km = d();
        else throw std::invalid_argument("scenario line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    if (static_cast<int>(s.zipf_exponents.size()) != s.user_count && s.zipf_exponents.size() == 1)
        s.zipf_exponents.assign(s.user_count, s.zipf_exponents[0]);
    s.validate();
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open scenario file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_scenario(ss.str());
}

std::string serialize_scenario(const Scenario& s) {
    std::ostringstream os;
    os << "# ucmec scenario\n";
    os << "bs_count = " << s.bs_count << "\n";
    os << "antennas_per_bs = " << s.antennas_per_bs << "\n";
    os << "max_cluster_size = " << s.max_cluster_size << "\n";
    os << "bandwidth_hz = " << format_double(s.bandwidth_hz) << "\n";
    os << "user_count = " << s.user_count << "\n";
    os << "service_count = " << s.service_count << "\n";
    os << "service_cache_gbit = " << format_double(s.service_cache_gbit) << "\n";
    os << "service_compute_ghz = " << format_double(s.service_compute_ghz) << "\n";
    os << "bs_cache_gbit = " << format_double(s.bs_cache_gbit) << "\n";
    os << "bs_compute_ghz = " << format_double(s.bs_compute_ghz) << "\n";
    os << "cost_coeff_step = " << format_double(s.cost_coeff_step) << "\n";
    os << "zipf_exponents = ";
    for (std::size_t i = 0; i < s.zipf_exponents.size(); ++i)
        os << (i ? "," : "") << format_double(s.zipf_exponents[i]);
    os << "\n";
    os << "data_min_mbit = " << format_double(s.data_min_mbit) << "\n";
    os << "data_max_mbit = " << format_double(s.data_max_mbit) << "\n";
    os << "work_min_gcycles = " << format_double(s.work_min_gcycles) << "\n";
    os << "work_max_gcycles = " << format_double(s.work_max_gcycles) << "\n";
    os << "backbone_rate_gbps = " << format_double(s.backbone_rate_gbps) << "\n";
    os << "v_weight = " << format_double(s.v_weight) << "\n";
    os << "cost_threshold = " << format_double(s.cost_threshold) << "\n";
    os << "gbd_max_iters = " << s.gbd_max_iters << "\n";
    os << "gbd_epsilon = " << format_double(s.gbd_epsilon) << "\n";
    os << "gibbs_max_iters = " << s.gibbs_max_iters << "\n";
    os << "gibbs_phi_start = " << format_double(s.gibbs_phi_start) << "\n";
    os << "gibbs_phi_end = " << format_double(s.gibbs_phi_end) << "\n";
    os << "gibbs_rho = " << format_double(s.gibbs_rho) << "\n";
    os << "gibbs_plateau = " << s.gibbs_plateau << "\n";
    os << "dichotomy_max_iters = " << s.dichotomy_max_iters << "\n";
    os << "dichotomy_epsilon = " << format_double(s.dichotomy_epsilon) << "\n";
    os << "slots = " << s.slots << "\n";
    os << "master_seed = " << s.master_seed << "\n";
    os << "algorithm = " << s.algorithm << "\n";
    os << "tx_power_w = " << format_double(s.tx_power_w) << "\n";
    os << "noise_power_w = " << (s.noise_power_w < 0 ? std::string("auto") : format_double(s.noise_power_w)) << "\n";
    os << "placement_min_km = " << format_double(s.placement_min_km) << "\n";
    os << "placement_max_km = " << format_double(s.placement_max_km) << "\n";
    return os.str();
}

void save_scenario(const Scenario& s, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write scenario file: " + path);
    f << serialize_scenario(s);
}

}  // namespace ucmec
