#include "nomasec/experiment.hpp"

#include "nomasec/oma.hpp"
#include "nomasec/svg_plot.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace nomasec {

namespace {

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

void append_metric(std::string& line, const MetricValue& m) {
    line += ',';
    if (m.analytic) line += num(m.analytic->value) + "," + num(m.analytic->abs_error);
    else line += ",";
    line += ',';
    if (m.mc) line += num(m.mc->value) + "," + num(m.mc->std_error);
    else line += ",";
}

void append_mc_only(std::string& line, const std::optional<McEstimate>& m) {
    line += ',';
    if (m) line += num(m->value) + "," + num(m->std_error);
    else line += ",";
}

bool disagrees(const MetricValue& m) {
    if (!m.analytic || !m.mc) return false;
    const double gap = std::fabs(m.analytic->value - m.mc->value);
    const double sigma = std::sqrt(m.mc->std_error * m.mc->std_error +
                                   m.analytic->abs_error * m.analytic->abs_error);
    return gap > 3.0 * sigma;
}

const char* kRateHeader =
    "r0_analytic,r0_analytic_err,r0_mc,r0_mc_se,"
    "r1_analytic,r1_analytic_err,r1_mc,r1_mc_se,"
    "re_w0_analytic,re_w0_analytic_err,re_w0_mc,re_w0_mc_se,"
    "re_w1_analytic,re_w1_analytic_err,re_w1_mc,re_w1_mc_se,"
    "cs0_analytic,cs0_analytic_err,cs0_mc,cs0_mc_se,"
    "cs1_analytic,cs1_analytic_err,cs1_mc,cs1_mc_se,"
    "cs_sum_analytic,cs_sum_analytic_err,cs_sum_mc,cs_sum_mc_se,"
    "oma_r0_analytic,oma_r0_analytic_err,oma_r0_mc,oma_r0_mc_se,"
    "oma_r1_analytic,oma_r1_analytic_err,oma_r1_mc,oma_r1_mc_se,"
    "oma_re_analytic,oma_re_analytic_err,oma_re_mc,oma_re_mc_se,"
    "oma_cs0_analytic,oma_cs0_analytic_err,oma_cs0_mc,oma_cs0_mc_se,"
    "oma_cs1_analytic,oma_cs1_analytic_err,oma_cs1_mc,oma_cs1_mc_se,"
    "oma_cs_sum_analytic,oma_cs_sum_analytic_err,oma_cs_sum_mc,oma_cs_sum_mc_se";

const char* kSopHeader =
    "p_w0_analytic,p_w0_analytic_err,p_w0_mc,p_w0_mc_se,"
    "p_w1_analytic,p_w1_analytic_err,p_w1_mc,p_w1_mc_se,"
    "sop_analytic,sop_analytic_err,sop_mc_direct,sop_mc_direct_se,"
    "sop_mc_product,sop_mc_product_se,"
    "oma_p_w0_analytic,oma_p_w0_analytic_err,oma_p_w0_mc,oma_p_w0_mc_se,"
    "oma_p_w1_analytic,oma_p_w1_analytic_err,oma_p_w1_mc,oma_p_w1_mc_se,"
    "oma_sop_analytic,oma_sop_analytic_err,oma_sop_mc_direct,oma_sop_mc_direct_se,"
    "oma_sop_mc_product,oma_sop_mc_product_se";

} // namespace

SweepRecord evaluate_point(const std::string& experiment, const std::string& param_name,
                           double param_value, const std::string& aux_name, double aux_value,
                           const SystemParams& params, const McConfig& mc,
                           const QuadratureSpec& quad, const ExperimentFlags& flags,
                           bool want_rates, bool want_sop) {
    SweepRecord rec;
    rec.experiment = experiment;
    rec.param_name = param_name;
    rec.param_value = param_value;
    rec.aux_name = aux_name;
    rec.aux_value = aux_value;
    rec.seed = mc.master_seed;
    rec.n_realizations = mc.n_realizations;
    rec.has_rates = want_rates;
    rec.has_sop = want_sop;

    try {
        if (flags.run_analytic) {
            if (want_rates) {
                rec.r0.analytic = ergodic_rate_central(params, quad);
                rec.r1.analytic = ergodic_rate_second(params, quad);
                rec.re_w0.analytic = ergodic_leakage(Message::w0, params, quad);
                rec.re_w1.analytic = ergodic_leakage(Message::w1, params, quad);
                rec.cs0.analytic = AnalyticResult{
                    std::max(0.0, rec.r0.analytic->value - rec.re_w0.analytic->value),
                    rec.r0.analytic->abs_error + rec.re_w0.analytic->abs_error};
                rec.cs1.analytic = AnalyticResult{
                    std::max(0.0, rec.r1.analytic->value - rec.re_w1.analytic->value),
                    rec.r1.analytic->abs_error + rec.re_w1.analytic->abs_error};
                rec.cs_sum.analytic =
                    AnalyticResult{rec.cs0.analytic->value + rec.cs1.analytic->value,
                                   rec.cs0.analytic->abs_error + rec.cs1.analytic->abs_error};
                const OmaParams oma = make_oma(params);
                rec.oma_r0.analytic = oma_ergodic_rate(UserKind::central, oma, quad);
                rec.oma_r1.analytic = oma_ergodic_rate(UserKind::second, oma, quad);
                rec.oma_re.analytic = oma_leakage(UserKind::central, oma, quad);
                rec.oma_cs0.analytic = oma_secrecy_rate(UserKind::central, oma, quad);
                rec.oma_cs1.analytic = oma_secrecy_rate(UserKind::second, oma, quad);
                rec.oma_cs_sum.analytic =
                    AnalyticResult{rec.oma_cs0.analytic->value + rec.oma_cs1.analytic->value,
                                   rec.oma_cs0.analytic->abs_error +
                                       rec.oma_cs1.analytic->abs_error};
            }
            if (want_sop) {
                rec.p_w0.analytic = sop_central(params, quad);
                rec.p_w1.analytic = sop_second(params, quad);
                rec.sop.analytic = sop_total(params, quad);
                const OmaParams oma = make_oma(params);
                rec.oma_p_w0.analytic = oma_sop_central(oma, quad);
                rec.oma_p_w1.analytic = oma_sop_second(oma, quad);
                rec.oma_sop.analytic = oma_sop(oma, quad);
            }
        }
        if (flags.run_mc) {
            BatchResult batch = run_batch(params, mc);
            rec.n_effective = static_cast<int>(batch.outcomes.size());
            if (rec.n_effective < (mc.n_realizations + 1) / 2)
                throw std::runtime_error("more than half of the realizations were rejected");
            if (want_rates) {
                const RateEstimates est = estimate_rates(batch.outcomes, mc.max_rate_bits);
                rec.r0.mc = est.r0;
                rec.r1.mc = est.r1;
                rec.re_w0.mc = est.re_w0;
                rec.re_w1.mc = est.re_w1;
                rec.cs0.mc = est.cs0;
                rec.cs1.mc = est.cs1;
                rec.cs_sum.mc = est.cs_sum;
                rec.oma_r0.mc = est.oma_r_central;
                rec.oma_r1.mc = est.oma_r_second;
                rec.oma_re.mc = est.oma_re;
                rec.oma_cs0.mc = est.oma_cs_central;
                rec.oma_cs1.mc = est.oma_cs_second;
                rec.oma_cs_sum.mc = est.oma_cs_sum;
            }
            if (want_sop) {
                const SopEstimates est =
                    estimate_sop(batch.outcomes, params.rate_target0, params.rate_target1);
                rec.p_w0.mc = est.p_w0;
                rec.p_w1.mc = est.p_w1;
                rec.sop.mc = est.sop_direct;
                rec.sop_mc_product = est.sop_product;
                rec.oma_p_w0.mc = est.oma_p_w0;
                rec.oma_p_w1.mc = est.oma_p_w1;
                rec.oma_sop.mc = est.oma_sop_direct;
                rec.oma_sop_mc_product = est.oma_sop_product;
            }
        }
    } catch (const std::exception& e) {
        rec.error = e.what();
    }

    for (const MetricValue* m :
         {&rec.r0, &rec.r1, &rec.re_w0, &rec.re_w1, &rec.cs0, &rec.cs1, &rec.cs_sum,
          &rec.oma_r0, &rec.oma_r1, &rec.oma_re, &rec.oma_cs0, &rec.oma_cs1, &rec.oma_cs_sum,
          &rec.p_w0, &rec.p_w1, &rec.sop, &rec.oma_p_w0, &rec.oma_p_w1, &rec.oma_sop}) {
        if (disagrees(*m)) rec.flag = 1;
    }
    return rec;
}

void write_csv(std::ostream& os, const std::vector<SweepRecord>& records, bool rates, bool sop) {
    os << "experiment,param,value,aux,aux_value,seed,n_realizations,n_effective";
    if (rates) os << "," << kRateHeader;
    if (sop) os << "," << kSopHeader;
    os << ",error,flag\n";
    for (const auto& r : records) {
        std::string line = r.experiment + "," + r.param_name + "," + num(r.param_value) + "," +
                           r.aux_name + "," + num(r.aux_value) + "," + std::to_string(r.seed) +
                           "," + std::to_string(r.n_realizations) + "," +
                           std::to_string(r.n_effective);
        if (rates) {
            for (const MetricValue* m : {&r.r0, &r.r1, &r.re_w0, &r.re_w1, &r.cs0, &r.cs1,
                                         &r.cs_sum, &r.oma_r0, &r.oma_r1, &r.oma_re, &r.oma_cs0,
                                         &r.oma_cs1, &r.oma_cs_sum}) {
                append_metric(line, *m);
            }
        }
        if (sop) {
            append_metric(line, r.p_w0);
            append_metric(line, r.p_w1);
            append_metric(line, r.sop);
            append_mc_only(line, r.sop_mc_product);
            append_metric(line, r.oma_p_w0);
            append_metric(line, r.oma_p_w1);
            append_metric(line, r.oma_sop);
            append_mc_only(line, r.oma_sop_mc_product);
        }
        line += ",";
        line += r.error.empty() ? "" : "\"" + r.error + "\"";
        line += "," + std::to_string(r.flag);
        os << line << "\n";
    }
}

namespace {

std::vector<double> log_grid(double lo_exp, double hi_exp, int n) {
    std::vector<double> g;
    for (int i = 0; i < n; ++i) {
        g.push_back(std::pow(10.0, lo_exp + (hi_exp - lo_exp) * i / (n - 1)));
    }
    return g;
}

McConfig point_mc(const McConfig& base, std::size_t point_index) {
    McConfig mc = base;
    mc.master_seed = substream_seed(base.master_seed, point_index, 11);
    return mc;
}

struct FigureData {
    std::vector<SweepRecord> records;
    bool rates = false;
    bool sop = false;
};

std::vector<std::string> emit(const std::string& id, const FigureData& fig,
                              const std::string& out_dir,
                              const std::vector<std::pair<PlotSpec, std::vector<Series>>>& plots) {
    std::filesystem::create_directories(out_dir);
    std::vector<std::string> files;
    const std::string csv_path = out_dir + "/" + id + ".csv";
    std::ofstream csv(csv_path, std::ios::binary); // LF endings everywhere
    if (!csv) throw std::runtime_error("cannot write " + csv_path);
    write_csv(csv, fig.records, fig.rates, fig.sop);
    files.push_back(csv_path);
    int panel = 0;
    for (const auto& [spec, series] : plots) {
        const std::string svg_path =
            out_dir + "/" + id + (plots.size() > 1 ? "_panel" + std::to_string(panel) : "") +
            ".svg";
        write_svg_plot(svg_path, spec, series);
        files.push_back(svg_path);
        ++panel;
    }
    return files;
}

// Collects (x, metric) pairs for plotting, one series per aux value.
struct SeriesBuilder {
    std::map<std::string, Series> by_key;
    std::vector<std::string> order;

    void add(const std::string& key, double x, const std::optional<double>& y,
             bool markers = false) {
        if (!y) return;
        auto it = by_key.find(key);
        if (it == by_key.end()) {
            order.push_back(key);
            it = by_key.emplace(key, Series{key, {}, {}, markers}).first;
        }
        it->second.x.push_back(x);
        it->second.y.push_back(*y);
    }
    std::vector<Series> take() {
        std::vector<Series> out;
        for (const auto& k : order) out.push_back(by_key[k]);
        return out;
    }
};

std::optional<double> an_value(const MetricValue& m) {
    if (m.analytic) return m.analytic->value;
    return std::nullopt;
}
std::optional<double> mc_value(const MetricValue& m) {
    if (m.mc) return m.mc->value;
    return std::nullopt;
}

std::string aux_label(const std::string& name, double value) {
    return name + "=" + num(value);
}

} // namespace

std::vector<std::string> run_experiment(const std::string& id, const RunConfig& base,
                                        const std::string& out_dir,
                                        const ExperimentFlags& flags) {
    FigureData fig;
    std::vector<std::pair<PlotSpec, std::vector<Series>>> plots;
    std::size_t point_idx = 0;

    auto rate_point = [&](const std::string& pname, double pvalue, const std::string& aux,
                          double aux_value, const SystemParams& p) {
        fig.records.push_back(evaluate_point(id, pname, pvalue, aux, aux_value, p,
                                             point_mc(base.mc, point_idx++), base.quad, flags,
                                             true, false));
    };
    auto sop_point = [&](const std::string& pname, double pvalue, const std::string& aux,
                         double aux_value, const SystemParams& p) {
        fig.records.push_back(evaluate_point(id, pname, pvalue, aux, aux_value, p,
                                             point_mc(base.mc, point_idx++), base.quad, flags,
                                             false, true));
    };

    if (id == "fig2") {
        // Secrecy sum rate vs BS density for two attacker densities.
        fig.rates = true;
        const auto lb_grid = log_grid(-4.5, -3.5, 5);
        const double le_values[] = {3.1622776601683795e-5, 1e-4};
        for (double le : le_values) {
            for (double lb : lb_grid) {
                SystemParams p = apply_sweep_value(base.params, "lambda_b", lb);
                p.lambda_e = le;
                rate_point("lambda_b", lb, "lambda_e", le, p);
            }
        }
        SeriesBuilder sb;
        for (const auto& r : fig.records) {
            const std::string tag = aux_label("lambda_e", r.aux_value);
            sb.add("NOMA " + tag, r.param_value, an_value(r.cs_sum));
            sb.add("OMA " + tag, r.param_value, an_value(r.oma_cs_sum));
            sb.add("NOMA MC " + tag, r.param_value, mc_value(r.cs_sum), true);
            sb.add("OMA MC " + tag, r.param_value, mc_value(r.oma_cs_sum), true);
        }
        plots.push_back({{"Ergodic secrecy sum rate vs BS density", "lambda_b (per m^2)",
                          "sum secrecy rate (bits/channel use)", true},
                         sb.take()});
    } else if (id == "fig3") {
        // Secrecy sum rate vs the second user's power share, for several
        // exclusion radii. Attacker density kept at a simulable level; the
        // crossover and r0 ordering do not depend on it.
        fig.rates = true;
        const double r0_values[] = {0.0, 6.0, 12.0};
        SystemParams base_p = base.params;
        base_p = apply_sweep_value(base_p, "lambda_b", 3.1622776601683794e-4);
        base_p.lambda_e = 1e-3;
        for (double r0 : r0_values) {
            for (double a1 = 0.55; a1 < 0.96; a1 += 0.05) {
                SystemParams p = apply_sweep_value(base_p, "a1", a1);
                p.r0 = r0;
                rate_point("a1", a1, "r0", r0, p);
            }
        }
        SeriesBuilder sb;
        for (const auto& r : fig.records) {
            const std::string tag = aux_label("r0", r.aux_value);
            sb.add("NOMA " + tag, r.param_value, an_value(r.cs_sum));
            sb.add("OMA " + tag, r.param_value, an_value(r.oma_cs_sum));
            sb.add("NOMA MC " + tag, r.param_value, mc_value(r.cs_sum), true);
            sb.add("OMA MC " + tag, r.param_value, mc_value(r.oma_cs_sum), true);
        }
        plots.push_back({{"Ergodic secrecy sum rate vs a1", "a1",
                          "sum secrecy rate (bits/channel use)", false},
                         sb.take()});
    } else if (id == "fig4") {
        // Total SOP vs attacker density for two attacker pilot fractions.
        fig.sop = true;
        const auto le_grid = log_grid(-5.0, -3.5, 4);
        const double d_values[] = {0.2, 0.5};
        SystemParams base_p = apply_sweep_value(base.params, "lambda_b", 1e-4);
        for (double d : d_values) {
            for (double le : le_grid) {
                SystemParams p = base_p;
                p.d_attacker = d;
                p.lambda_e = le;
                sop_point("lambda_e", le, "d_attacker", d, p);
            }
        }
        SeriesBuilder sb;
        for (const auto& r : fig.records) {
            const std::string tag = aux_label("d", r.aux_value);
            sb.add("NOMA " + tag, r.param_value, an_value(r.sop));
            sb.add("OMA " + tag, r.param_value, an_value(r.oma_sop));
            sb.add("NOMA MC " + tag, r.param_value, mc_value(r.sop), true);
            sb.add("OMA MC " + tag, r.param_value, mc_value(r.oma_sop), true);
        }
        plots.push_back({{"Secrecy outage probability vs attacker density",
                          "lambda_e (per m^2)", "SOP", true},
                         sb.take()});
    } else if (id == "fig5") {
        // Per-user SOP vs BS density for two rate-target pairs.
        fig.sop = true;
        const auto lb_grid = log_grid(-4.5, -3.5, 5);
        const std::pair<double, double> targets[] = {{1.5, 0.5}, {3.0, 1.0}};
        SystemParams base_p = base.params;
        base_p.lambda_e = 3.1622776601683795e-5;
        for (const auto& [rt0, rt1] : targets) {
            for (double lb : lb_grid) {
                SystemParams p = apply_sweep_value(base_p, "lambda_b", lb);
                p.rate_target0 = rt0;
                p.rate_target1 = rt1;
                sop_point("lambda_b", lb, "rate_target0", rt0, p);
            }
        }
        SeriesBuilder sb_central, sb_second;
        for (const auto& r : fig.records) {
            const std::string tag = aux_label("Rt0", r.aux_value);
            sb_central.add("NOMA " + tag, r.param_value, an_value(r.p_w0));
            sb_central.add("OMA " + tag, r.param_value, an_value(r.oma_p_w0));
            sb_central.add("NOMA MC " + tag, r.param_value, mc_value(r.p_w0), true);
            sb_central.add("OMA MC " + tag, r.param_value, mc_value(r.oma_p_w0), true);
            sb_second.add("NOMA " + tag, r.param_value, an_value(r.p_w1));
            sb_second.add("OMA " + tag, r.param_value, an_value(r.oma_p_w1), false);
            sb_second.add("NOMA MC " + tag, r.param_value, mc_value(r.p_w1), true);
            sb_second.add("OMA MC " + tag, r.param_value, mc_value(r.oma_p_w1), true);
        }
        plots.push_back({{"Central user SOP vs BS density", "lambda_b (per m^2)", "SOP", true},
                         sb_central.take()});
        plots.push_back({{"Second user SOP vs BS density", "lambda_b (per m^2)", "SOP", true},
                         sb_second.take()});
    } else if (id == "custom") {
        if (base.sweep_param.empty() || base.sweep_values.empty())
            throw std::invalid_argument("custom experiment needs sweep_param and sweep_values");
        fig.rates = true;
        fig.sop = true;
        for (double v : base.sweep_values) {
            const SystemParams p = apply_sweep_value(base.params, base.sweep_param, v);
            fig.records.push_back(evaluate_point(id, base.sweep_param, v, "", 0.0, p,
                                                 point_mc(base.mc, point_idx++), base.quad,
                                                 flags, true, true));
        }
        SeriesBuilder sb;
        for (const auto& r : fig.records) {
            sb.add("Cs_sum", r.param_value, an_value(r.cs_sum));
            sb.add("SOP", r.param_value, an_value(r.sop));
            sb.add("Cs_sum MC", r.param_value, mc_value(r.cs_sum), true);
            sb.add("SOP MC", r.param_value, mc_value(r.sop), true);
        }
        plots.push_back({{"Custom sweep over " + base.sweep_param, base.sweep_param, "metric",
                          false},
                         sb.take()});
    } else {
        throw std::invalid_argument("unknown experiment id: " + id);
    }

    return emit(id, fig, out_dir, plots);
}

} // namespace nomasec
