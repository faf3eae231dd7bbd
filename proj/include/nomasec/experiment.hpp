#pragma once
// Sweep runner behind the CLI: evaluates analytic and Monte-Carlo metrics
// over parameter grids, writes one CSV per experiment (the interface of
// record) and SVG charts as a convenience. Sweep points run sequentially;
// parallelism lives inside the Monte-Carlo batch.

#include "nomasec/analytic.hpp"
#include "nomasec/config.hpp"
#include "nomasec/montecarlo.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nomasec {

struct ExperimentFlags {
    bool run_analytic = true;
    bool run_mc = true;
};

struct MetricValue {
    std::optional<AnalyticResult> analytic;
    std::optional<McEstimate> mc;
};

struct SweepRecord {
    std::string experiment;
    std::string param_name;
    double param_value = 0.0;
    std::string aux_name; // second sweep dimension, empty when absent
    double aux_value = 0.0;
    std::uint64_t seed = 0;
    int n_realizations = 0;
    int n_effective = 0;
    bool has_rates = false;
    bool has_sop = false;

    MetricValue r0, r1, re_w0, re_w1, cs0, cs1, cs_sum;
    MetricValue oma_r0, oma_r1, oma_re, oma_cs0, oma_cs1, oma_cs_sum;

    MetricValue p_w0, p_w1, sop; // sop.mc carries the direct event frequency
    std::optional<McEstimate> sop_mc_product;
    MetricValue oma_p_w0, oma_p_w1, oma_sop;
    std::optional<McEstimate> oma_sop_mc_product;

    std::string error; // non-empty: point failed, row kept with the marker
    int flag = 0;      // 1 when analytic and MC disagree beyond 3 combined sigma
};

// Evaluates one sweep point. Exceptions from either engine are captured in
// record.error so a sweep never dies half-way.
SweepRecord evaluate_point(const std::string& experiment, const std::string& param_name,
                           double param_value, const std::string& aux_name, double aux_value,
                           const SystemParams& params, const McConfig& mc,
                           const QuadratureSpec& quad, const ExperimentFlags& flags,
                           bool want_rates, bool want_sop);

void write_csv(std::ostream& os, const std::vector<SweepRecord>& records, bool rates, bool sop);

// id: fig2 | fig3 | fig4 | fig5 | custom. Returns the written file paths.
std::vector<std::string> run_experiment(const std::string& id, const RunConfig& base,
                                        const std::string& out_dir,
                                        const ExperimentFlags& flags);

} // namespace nomasec
