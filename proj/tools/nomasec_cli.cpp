// Experiment driver: analytic one-shots, Monte-Carlo runs, and the canned
// figure sweeps. Metrics print as name=value lines; sweeps land as CSV + SVG.

#include "nomasec/analytic.hpp"
#include "nomasec/config.hpp"
#include "nomasec/experiment.hpp"
#include "nomasec/montecarlo.hpp"
#include "nomasec/oma.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace nomasec;

void emit(const char* name, double value) {
    std::printf("%s=%.9g\n", name, value);
}

void emit(const char* name, const AnalyticResult& r) {
    std::printf("%s=%.9g\n%s_err=%.9g\n", name, r.value, name, r.abs_error);
}

void emit(const char* name, const McEstimate& e) {
    std::printf("%s=%.9g\n%s_se=%.9g\n", name, e.value, name, e.std_error);
}

int run_analytic(const RunConfig& cfg) {
    const SystemParams& p = cfg.params;
    const QuadratureSpec& q = cfg.quad;
    const DerivedConstants dc = derived_constants(p);
    emit("R", dc.power_ratio_sum);
    emit("eta", dc.eta);
    emit("eta_tilde", dc.eta_tilde);

    const AnalyticResult r0 = ergodic_rate_central(p, q);
    const AnalyticResult r1 = ergodic_rate_second(p, q);
    const AnalyticResult re0 = ergodic_leakage(Message::w0, p, q);
    const AnalyticResult re1 = ergodic_leakage(Message::w1, p, q);
    emit("R0", r0);
    emit("R1", r1);
    emit("Re_w0", re0);
    emit("Re_w1", re1);
    emit("Cs0", std::max(0.0, r0.value - re0.value));
    emit("Cs1", std::max(0.0, r1.value - re1.value));
    emit("Cs_sum", std::max(0.0, r0.value - re0.value) + std::max(0.0, r1.value - re1.value));
    emit("P_w0", sop_central(p, q));
    emit("P_w1", sop_second(p, q));
    emit("SOP", sop_total(p, q));

    const OmaParams oma = make_oma(p);
    const AnalyticResult or0 = oma_ergodic_rate(UserKind::central, oma, q);
    const AnalyticResult or1 = oma_ergodic_rate(UserKind::second, oma, q);
    const AnalyticResult ore = oma_leakage(UserKind::central, oma, q);
    emit("OMA_R0", or0);
    emit("OMA_R1", or1);
    emit("OMA_Re", ore);
    emit("OMA_Cs0", std::max(0.0, or0.value - ore.value));
    emit("OMA_Cs1", std::max(0.0, or1.value - ore.value));
    emit("OMA_Cs_sum",
         std::max(0.0, or0.value - ore.value) + std::max(0.0, or1.value - ore.value));
    emit("OMA_P_w0", oma_sop_central(oma, q));
    emit("OMA_P_w1", oma_sop_second(oma, q));
    emit("OMA_SOP", oma_sop(oma, q));
    return 0;
}

int run_simulate(const RunConfig& cfg, const std::string& records_path,
                 const std::string& dump_path) {
    BatchResult batch = run_batch(cfg.params, cfg.mc);
    if (static_cast<int>(batch.outcomes.size()) < (cfg.mc.n_realizations + 1) / 2) {
        std::fprintf(stderr, "error: more than half of the realizations were rejected\n");
        return 1;
    }
    if (!records_path.empty()) {
        std::ofstream os(records_path, std::ios::binary);
        if (!os) {
            std::fprintf(stderr, "error: cannot write %s\n", records_path.c_str());
            return 1;
        }
        write_outcomes(os, batch.outcomes);
    }
    if (!dump_path.empty()) {
        std::ofstream os(dump_path, std::ios::binary);
        if (!os) {
            std::fprintf(stderr, "error: cannot write %s\n", dump_path.c_str());
            return 1;
        }
        for (const auto& o : batch.outcomes) {
            dump_realization(sample_network(cfg.params, o.seed), os);
        }
    }

    const RateEstimates rates = estimate_rates(batch.outcomes, cfg.mc.max_rate_bits);
    const SopEstimates sop =
        estimate_sop(batch.outcomes, cfg.params.rate_target0, cfg.params.rate_target1);
    std::printf("n_effective=%zu\nattempts=%d\n", batch.outcomes.size(), batch.attempts);
    emit("R0", rates.r0);
    emit("R1", rates.r1);
    emit("Re_w0", rates.re_w0);
    emit("Re_w1", rates.re_w1);
    emit("Cs0", rates.cs0);
    emit("Cs1", rates.cs1);
    emit("Cs_sum", rates.cs_sum);
    emit("OMA_R0", rates.oma_r_central);
    emit("OMA_R1", rates.oma_r_second);
    emit("OMA_Re", rates.oma_re);
    emit("OMA_Cs_sum", rates.oma_cs_sum);
    emit("P_w0", sop.p_w0);
    emit("P_w1", sop.p_w1);
    emit("SOP_direct", sop.sop_direct);
    emit("SOP_product", sop.sop_product);
    emit("OMA_P_w0", sop.oma_p_w0);
    emit("OMA_P_w1", sop.oma_p_w1);
    emit("OMA_SOP_direct", sop.oma_sop_direct);
    emit("OMA_SOP_product", sop.oma_sop_product);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Secrecy performance of a multi-cell massive MIMO-NOMA downlink "
                 "under active pilot-contamination eavesdroppers"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out";
    std::uint64_t seed = 0;
    int realizations = 0, threads = 0;
    bool no_mc = false, no_analytic = false;

    app.add_option("--config", config_path, "key = value configuration file");
    app.add_option("--seed", seed, "master seed override");
    app.add_option("--realizations", realizations, "Monte-Carlo realizations override");
    app.add_option("--out", out_dir, "output directory for CSV/SVG");
    app.add_option("--threads", threads, "worker threads (0 = hardware)");
    app.add_flag("--no-mc", no_mc, "skip the Monte-Carlo engine");
    app.add_flag("--no-analytic", no_analytic, "skip the analytic engine");

    auto* cmd_analytic = app.add_subcommand("analytic", "one-shot analytic metrics");
    std::string records_path, dump_path;
    auto* cmd_sim = app.add_subcommand("simulate", "Monte-Carlo estimates at one point");
    cmd_sim->add_option("--records", records_path, "write one SINR record per realization");
    cmd_sim->add_option("--dump", dump_path, "write sampled node coordinates per realization");
    std::string figure_id;
    auto* cmd_fig = app.add_subcommand("figure", "run a canned figure experiment");
    cmd_fig->add_option("id", figure_id, "fig2 | fig3 | fig4 | fig5")->required();
    auto* cmd_sweep = app.add_subcommand("sweep", "custom sweep from sweep_param/sweep_values");

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig cfg;
        if (config_path.empty()) {
            std::istringstream empty;
            cfg = parse_config(empty);
        } else {
            cfg = parse_config_file(config_path);
        }
        if (app.count("--seed") > 0) cfg.mc.master_seed = seed;
        if (realizations > 0) cfg.mc.n_realizations = realizations;
        if (threads > 0) cfg.mc.parallelism = threads;
        for (const auto& w : cfg.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());

        ExperimentFlags flags;
        flags.run_mc = !no_mc;
        flags.run_analytic = !no_analytic;

        if (cmd_analytic->parsed()) return run_analytic(cfg);
        if (cmd_sim->parsed()) return run_simulate(cfg, records_path, dump_path);
        if (cmd_fig->parsed()) {
            for (const auto& f : run_experiment(figure_id, cfg, out_dir, flags))
                std::printf("wrote %s\n", f.c_str());
            return 0;
        }
        if (cmd_sweep->parsed()) {
            for (const auto& f : run_experiment("custom", cfg, out_dir, flags))
                std::printf("wrote %s\n", f.c_str());
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
