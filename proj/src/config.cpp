#include "nomasec/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace nomasec {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("parameter " + key + ": cannot parse value '" + value + "'");
    }
}

int to_int(const std::string& key, const std::string& value) {
    const double v = to_double(key, value);
    if (v != std::floor(v)) throw std::invalid_argument("parameter " + key + ": must be an integer");
    return static_cast<int>(v);
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
    try {
        return std::stoull(value);
    } catch (const std::exception&) {
        throw std::invalid_argument("parameter " + key + ": cannot parse value '" + value + "'");
    }
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

} // namespace

const std::vector<std::string>& sweepable_parameters() {
    static const std::vector<std::string> names = {
        "lambda_b", "lambda_e", "lambda_u", "d_attacker", "a1",
        "r0",       "alpha",    "rate_target0", "rate_target1"};
    return names;
}

SystemParams apply_sweep_value(const SystemParams& p, const std::string& name, double value) {
    SystemParams q = p;
    if (name == "lambda_b") {
        const double user_ratio = p.lambda_b > 0 ? p.lambda_u / p.lambda_b : 100.0;
        q.lambda_b = value;
        q.lambda_u = user_ratio * value;
    } else if (name == "lambda_e") {
        q.lambda_e = value;
    } else if (name == "lambda_u") {
        q.lambda_u = value;
    } else if (name == "d_attacker") {
        q.d_attacker = value;
    } else if (name == "a1") {
        q.a1 = value;
        q.a0 = 1.0 - value;
    } else if (name == "r0") {
        q.r0 = value;
    } else if (name == "alpha") {
        q.alpha = value;
    } else if (name == "rate_target0") {
        q.rate_target0 = value;
    } else if (name == "rate_target1") {
        q.rate_target1 = value;
    } else {
        throw std::invalid_argument("sweep_param '" + name + "' is not sweepable");
    }
    return q;
}

RunConfig parse_config(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::vector<std::string> unknown;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": empty key or value");
        }
        if (kv.count(key)) {
            throw std::invalid_argument("config: duplicate key '" + key + "'");
        }
        kv[key] = value;
    }

    RunConfig cfg;
    bool lambda_u_given = false;

    auto take = [&](const char* key) -> const std::string* {
        auto it = kv.find(key);
        if (it == kv.end()) return nullptr;
        return &it->second;
    };
    auto set_d = [&](const char* key, double& target) {
        if (const auto* v = take(key)) target = to_double(key, *v);
    };
    auto set_i = [&](const char* key, int& target) {
        if (const auto* v = take(key)) target = to_int(key, *v);
    };

    SystemParams& p = cfg.params;
    set_d("alpha", p.alpha);
    set_d("a0", p.a0);
    set_d("a1", p.a1);
    set_d("b0", p.b0);
    set_d("b1", p.b1);
    set_d("d_attacker", p.d_attacker);

    for (const char* base : {"lambda_b", "lambda_u", "lambda_e"}) {
        const std::string db_key = std::string(base) + "_db";
        if (kv.count(base) && kv.count(db_key)) {
            throw std::invalid_argument("config: give either " + std::string(base) + " or " +
                                        db_key + ", not both");
        }
    }
    if (const auto* v = take("lambda_b")) p.lambda_b = to_double("lambda_b", *v);
    if (const auto* v = take("lambda_b_db")) p.lambda_b = db_to_linear(to_double("lambda_b_db", *v));
    if (const auto* v = take("lambda_u")) {
        p.lambda_u = to_double("lambda_u", *v);
        lambda_u_given = true;
    }
    if (const auto* v = take("lambda_u_db")) {
        p.lambda_u = db_to_linear(to_double("lambda_u_db", *v));
        lambda_u_given = true;
    }
    if (const auto* v = take("lambda_e")) p.lambda_e = to_double("lambda_e", *v);
    if (const auto* v = take("lambda_e_db")) p.lambda_e = db_to_linear(to_double("lambda_e_db", *v));
    if (!lambda_u_given) p.lambda_u = 100.0 * p.lambda_b; // full-load default

    set_d("r0", p.r0);
    set_i("order_n", p.order_n);
    set_i("order_u", p.order_u);
    set_i("clusters_per_cell", p.clusters_per_cell);
    set_d("rate_target0", p.rate_target0);
    set_d("rate_target1", p.rate_target1);
    set_d("region_side", p.region_side);
    set_d("m_antennas", p.m_antennas);
    set_d("p_data", p.p_data);
    set_d("p_pilot", p.p_pilot);
    set_d("noise_power", p.noise_power);

    McConfig& mc = cfg.mc;
    set_i("n_realizations", mc.n_realizations);
    if (const auto* v = take("seed")) mc.master_seed = to_u64("seed", *v);
    set_d("interior_fraction", mc.interior_fraction);
    set_i("parallelism", mc.parallelism);
    set_d("max_rate_bits", mc.max_rate_bits);

    set_d("quad_rel_tol", cfg.quad.rel_tol);
    set_d("quad_abs_tol", cfg.quad.abs_tol);

    if (const auto* v = take("sweep_param")) cfg.sweep_param = *v;
    if (const auto* v = take("sweep_values")) {
        std::stringstream ss(*v);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (!item.empty()) cfg.sweep_values.push_back(to_double("sweep_values", item));
        }
        if (cfg.sweep_values.empty())
            throw std::invalid_argument("parameter sweep_values: empty list");
    }
    if (!cfg.sweep_param.empty()) {
        const auto& names = sweepable_parameters();
        if (std::find(names.begin(), names.end(), cfg.sweep_param) == names.end())
            throw std::invalid_argument("sweep_param '" + cfg.sweep_param + "' is not sweepable");
    }

    static const char* known[] = {
        "alpha", "a0", "a1", "b0", "b1", "d_attacker",
        "lambda_b", "lambda_b_db", "lambda_u", "lambda_u_db", "lambda_e", "lambda_e_db",
        "r0", "order_n", "order_u", "clusters_per_cell", "rate_target0", "rate_target1",
        "region_side", "m_antennas", "p_data", "p_pilot", "noise_power",
        "n_realizations", "seed", "interior_fraction", "parallelism", "max_rate_bits",
        "quad_rel_tol", "quad_abs_tol", "sweep_param", "sweep_values"};
    for (const auto& [key, value] : kv) {
        (void)value;
        if (std::find_if(std::begin(known), std::end(known),
                         [&](const char* k) { return key == k; }) == std::end(known)) {
            unknown.push_back(key);
        }
    }
    if (!unknown.empty()) {
        std::string msg = "config: unknown keys:";
        for (const auto& k : unknown) msg += " " + k;
        throw std::invalid_argument(msg);
    }

    cfg.warnings = validate(cfg.params);
    if (cfg.quad.rel_tol <= 0.0 || cfg.quad.abs_tol <= 0.0)
        throw std::invalid_argument("parameter quad_*_tol: tolerances must be > 0");
    if (mc.n_realizations < 1)
        throw std::invalid_argument("parameter n_realizations: must be >= 1");
    if (mc.interior_fraction <= 0.0 || mc.interior_fraction > 1.0)
        throw std::invalid_argument("parameter interior_fraction: must be in (0,1]");
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config file not found: " + path);
    return parse_config(in);
}

void print_params(std::ostream& os, const SystemParams& p, const McConfig& mc) {
    char buf[128];
    auto emit = [&](const char* k, double v) {
        std::snprintf(buf, sizeof buf, "%s=%.9g\n", k, v);
        os << buf;
    };
    emit("alpha", p.alpha);
    emit("a0", p.a0);
    emit("a1", p.a1);
    emit("b0", p.b0);
    emit("b1", p.b1);
    emit("d_attacker", p.d_attacker);
    emit("lambda_b", p.lambda_b);
    emit("lambda_u", p.lambda_u);
    emit("lambda_e", p.lambda_e);
    emit("r0", p.r0);
    emit("order_n", p.order_n);
    emit("order_u", p.order_u);
    emit("clusters_per_cell", p.clusters_per_cell);
    emit("rate_target0", p.rate_target0);
    emit("rate_target1", p.rate_target1);
    emit("region_side", p.region_side);
    emit("n_realizations", mc.n_realizations);
    emit("seed", static_cast<double>(mc.master_seed));
    emit("interior_fraction", mc.interior_fraction);
}

} // namespace nomasec
