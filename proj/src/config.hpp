/**
 * Run configuration: defaults, JSON parsing, strict validation.
 *
 * Unknown keys anywhere in the document are rejected, as are values of
 * the wrong type or outside their physical range. The coupling constant
 * may be given directly ("protocol.kappa") or through the physical
 * parameters ("protocol.coupling"), but not both.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "improved.hpp"
#include "signal.hpp"
#include "teleport.hpp"
#include "verify.hpp"

namespace qtel {

struct ImprovedConfig {
  double squeeze_db = 6.0;
  int n_max = 3;
};

struct SignalConfig {
  TraceParams trace{};
  std::vector<double> powers = {0.25, 0.5, 0.75, 1.0, 1.5, 2.0};
  std::vector<double> atom_numbers = {0.2e12, 0.5e12, 0.8e12,
                                      1.1e12, 1.4e12, 1.7e12, 2.0e12};
  double reference_atoms = 1.0e12;
  int samples_per_point = 20000;
  int traces_per_power = 8;
};

struct QubitConfig {
  double gain_min = 0.5;
  double gain_max = 1.2;
  int gain_steps = 71;
};

struct ReproduceConfig {
  std::vector<double> photon_numbers = {2.0, 5.0, 10.0, 20.0, 200.0};
};

struct RunConfig {
  std::uint64_t seed = 20060901;
  std::size_t runs = 10000;
  int threads = 0;
  ProtocolParams protocol{};
  std::optional<CouplingParams> coupling;
  InputSpec input{};
  ReconConstant reconstruction = ReconConstant::kMeasuredPort;
  ImprovedConfig improved{};
  SignalConfig signal{};
  QubitConfig qubit{};
  ReproduceConfig reproduce{};
};

/// Defaults, overlaid with the JSON document in `json_text`.
RunConfig parse_config(const std::string& json_text);

/// Merges several JSON documents over the defaults, later ones winning
/// key-by-key (used for file + command-line overrides).
RunConfig parse_config_layers(const std::vector<std::string>& json_texts);

/// Re-serialization of the effective configuration (for summaries).
std::string config_to_json(const RunConfig& config);

}  // namespace qtel
