#pragma once
// Flat key = value experiment configuration. Unknown keys are errors, not
// warnings; an empty file yields the stock parameter set. Densities can be
// given linearly (per m^2) or as dB values via the *_db convenience keys
// (x dB -> 10^(x/10) per m^2).

#include "nomasec/montecarlo.hpp"
#include "nomasec/params.hpp"
#include "nomasec/quadrature.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace nomasec {

struct RunConfig {
    SystemParams params;
    McConfig mc;
    QuadratureSpec quad;
    std::string sweep_param;          // for the `sweep` subcommand
    std::vector<double> sweep_values; //
    std::vector<std::string> warnings;
};

RunConfig parse_config(std::istream& in);
RunConfig parse_config_file(const std::string& path);

// Names accepted by sweep_param / apply_sweep_value.
const std::vector<std::string>& sweepable_parameters();

// Returns a copy of `p` with the named parameter set to `value`. Sweeping a1
// rebalances a0 = 1 - a1; sweeping lambda_b rescales lambda_u to keep the
// user-to-BS density ratio.
SystemParams apply_sweep_value(const SystemParams& p, const std::string& name, double value);

// Effective configuration as key=value lines (densities in linear units).
void print_params(std::ostream& os, const SystemParams& p, const McConfig& mc);

} // namespace nomasec
