#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tdmdc/cli/config.hpp"
#include "tdmdc/reference_models.hpp"
#include "tdmdc/time_series.hpp"

namespace tdmdc::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Responses plus optional excitation, with the generating model when simulated.
struct Dataset {
    TimeSeries response;
    std::optional<TimeSeries> excitation;
    std::optional<LtiSecondOrderModel> model;
    std::vector<ReferenceMode> reference;  ///< analytic modes of `model`
    std::string source;                    ///< file path or "simulated:<model>"
};

/// Reads `model` (builtin-6dof or a JSON file with "mass", "damping", "stiffness" arrays).
LtiSecondOrderModel load_model(const RunConfig& config);

/// Noise-free excitation built from the simulation keys.
TimeSeries build_excitation(const RunConfig& config, Index dofs);

/// Files when `response` is set, a simulation otherwise. `snr_db` overrides the noise level
/// (a single value is required in the config when omitted).
Dataset load_dataset(const RunConfig& config, std::optional<double> snr_db = {},
                     std::optional<std::uint64_t> seed = {});

/// Applies resample-hz and pad to a dataset in place.
void prepare(Dataset& data, const RunConfig& config);

void cmd_simulate(const RunConfig& config);
void cmd_identify(const RunConfig& config);
void cmd_sweep(const RunConfig& config);
void cmd_noise_study(const RunConfig& config);
void cmd_mac(const RunConfig& config);

/// Maps the library error hierarchy to process exit codes: input 2, numerical 3, config 4.
int exit_code_for(const std::exception& error);

}  // namespace tdmdc::cli
