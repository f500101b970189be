/**
 * Implementation of the public C API: opaque handles over the core
 * library, exceptions mapped to status codes, thread-local error text.
 */
#include "qtel/qtel.h"

#include <cstring>
#include <exception>
#include <fstream>
#include <memory>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "config.hpp"
#include "errors.hpp"
#include "fidelity.hpp"
#include "interaction.hpp"
#include "json.hpp"
#include "pipeline.hpp"
#include "qubit.hpp"
#include "verify.hpp"

struct qtel_config {
  std::vector<std::string> layers;
};

struct qtel_result {
  std::string summary;
  std::vector<std::string> names;
  std::vector<std::string> csv;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

template <typename F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const qtel::ConfigError& e) {
    set_error(e.what());
    return QTEL_ERR_CONFIG;
  } catch (const std::exception& e) {
    set_error(e.what());
    return QTEL_ERR_RUNTIME;
  } catch (...) {
    set_error("unknown error");
    return QTEL_ERR_RUNTIME;
  }
}

int require(bool condition, const char* message) {
  if (condition) return QTEL_OK;
  set_error(message);
  return QTEL_ERR_RUNTIME;
}

}  // namespace

extern "C" {

const char* qtel_version(void) { return "1.0.0"; }

const char* qtel_last_error(void) { return g_last_error.c_str(); }

qtel_config* qtel_config_create(void) { return new (std::nothrow) qtel_config; }

void qtel_config_free(qtel_config* config) { delete config; }

int qtel_config_merge_json(qtel_config* config, const char* json_text) {
  if (int rc = require(config && json_text, "null argument")) return rc;
  return guarded([&] {
    std::vector<std::string> layers = config->layers;
    layers.emplace_back(json_text);
    (void)qtel::parse_config_layers(layers);  // validate before accepting
    config->layers = std::move(layers);
    return QTEL_OK;
  });
}

int qtel_config_merge_file(qtel_config* config, const char* path) {
  if (int rc = require(config && path, "null argument")) return rc;
  return guarded([&] {
    std::ifstream file(path, std::ios::binary);
    if (!file) {
      throw std::runtime_error(std::string("cannot open config file '") +
                               path + "'");
    }
    std::ostringstream text;
    text << file.rdbuf();
    return qtel_config_merge_json(config, text.str().c_str());
  });
}

int qtel_config_set(qtel_config* config, const char* dotted_key,
                    const char* json_value) {
  if (int rc = require(config && dotted_key && json_value, "null argument")) {
    return rc;
  }
  return guarded([&] {
    nlohmann::json value =
        nlohmann::json::parse(json_value, nullptr, /*allow_exceptions=*/false);
    if (value.is_discarded()) {
      throw qtel::ConfigError(std::string("value for '") + dotted_key +
                              "' is not valid JSON: " + json_value);
    }
    const std::string key = dotted_key;
    if (key.empty() || key.front() == '.' || key.back() == '.' ||
        key.find("..") != std::string::npos) {
      throw qtel::ConfigError("bad config key '" + key + "'");
    }
    nlohmann::json doc = value;
    std::size_t end = key.size();
    while (true) {
      const std::size_t dot = key.rfind('.', end - 1);
      const std::size_t begin = dot == std::string::npos ? 0 : dot + 1;
      doc = nlohmann::json{{key.substr(begin, end - begin), std::move(doc)}};
      if (dot == std::string::npos) break;
      end = dot;
    }
    return qtel_config_merge_json(config, doc.dump().c_str());
  });
}

char* qtel_config_dump(const qtel_config* config) {
  if (!config) {
    set_error("null argument");
    return nullptr;
  }
  try {
    const qtel::RunConfig parsed = qtel::parse_config_layers(config->layers);
    const std::string text = qtel::config_to_json(parsed);
    char* out = new char[text.size() + 1];
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
  } catch (const std::exception& e) {
    set_error(e.what());
    return nullptr;
  }
}

void qtel_string_free(char* text) { delete[] text; }

int qtel_run(const qtel_config* config, const char* command,
             qtel_result** out_result) {
  if (int rc = require(config && command && out_result, "null argument")) {
    return rc;
  }
  *out_result = nullptr;
  return guarded([&] {
    const qtel::RunConfig parsed = qtel::parse_config_layers(config->layers);
    qtel::CommandResult run = qtel::run_command(parsed, command);
    auto result = std::make_unique<qtel_result>();
    result->summary = std::move(run.summary_json);
    result->names.reserve(run.tables.size());
    result->csv.reserve(run.tables.size());
    for (const qtel::Table& table : run.tables) {
      result->names.push_back(table.name);
      result->csv.push_back(qtel::table_to_csv(table));
    }
    *out_result = result.release();
    return QTEL_OK;
  });
}

void qtel_result_free(qtel_result* result) { delete result; }

const char* qtel_result_summary(const qtel_result* result) {
  if (!result) {
    set_error("null argument");
    return nullptr;
  }
  return result->summary.c_str();
}

int qtel_result_table_count(const qtel_result* result) {
  return result ? static_cast<int>(result->names.size()) : 0;
}

const char* qtel_result_table_name(const qtel_result* result, int index) {
  if (!result || index < 0 ||
      index >= static_cast<int>(result->names.size())) {
    set_error("table index out of range");
    return nullptr;
  }
  return result->names[static_cast<std::size_t>(index)].c_str();
}

const char* qtel_result_table_csv(const qtel_result* result, int index) {
  if (!result || index < 0 || index >= static_cast<int>(result->csv.size())) {
    set_error("table index out of range");
    return nullptr;
  }
  return result->csv[static_cast<std::size_t>(index)].c_str();
}

int qtel_result_write_csv(const qtel_result* result, int index,
                          const char* path) {
  if (int rc = require(result && path, "null argument")) return rc;
  if (int rc = require(index >= 0 &&
                           index < static_cast<int>(result->csv.size()),
                       "table index out of range")) {
    return rc;
  }
  return guarded([&] {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
      throw std::runtime_error(std::string("cannot open '") + path +
                               "' for writing");
    }
    file << result->csv[static_cast<std::size_t>(index)];
    if (!file) {
      throw std::runtime_error(std::string("write failed for '") + path + "'");
    }
    return QTEL_OK;
  });
}

int qtel_ensemble_fidelity(double n_avg, double gain_x, double gain_p,
                           double sigma2_x, double sigma2_p, double* out) {
  if (int rc = require(out != nullptr, "null output pointer")) return rc;
  return guarded([&] {
    *out = qtel::ensemble_fidelity(n_avg, gain_x, gain_p, sigma2_x, sigma2_p);
    return QTEL_OK;
  });
}

int qtel_classical_benchmark(double n_avg, double* out) {
  if (int rc = require(out != nullptr, "null output pointer")) return rc;
  return guarded([&] {
    *out = qtel::classical_benchmark(n_avg);
    return QTEL_OK;
  });
}

int qtel_qubit_fidelity(double gain, double s2, double* out) {
  if (int rc = require(out != nullptr, "null output pointer")) return rc;
  return guarded([&] {
    *out = qtel::qubit_fidelity(gain, s2);
    return QTEL_OK;
  });
}

int qtel_error_budget(const double* deltas, int count, double* out) {
  if (int rc = require(out != nullptr && (deltas != nullptr || count == 0),
                       "null argument")) {
    return rc;
  }
  return guarded([&] {
    std::vector<double> values(deltas, deltas + (count > 0 ? count : 0));
    *out = qtel::error_budget(values);
    return QTEL_OK;
  });
}

int qtel_compute_kappa(double a1, double n_photons, double n_atoms,
                       double f_detection, double cross_section,
                       double linewidth, double beam_area, double detuning,
                       double* out) {
  if (int rc = require(out != nullptr, "null output pointer")) return rc;
  return guarded([&] {
    qtel::CouplingParams p;
    p.a1 = a1;
    p.n_photons = n_photons;
    p.n_atoms = n_atoms;
    p.f = f_detection;
    p.sigma = cross_section;
    p.gamma = linewidth;
    p.area = beam_area;
    p.delta = detuning;
    *out = qtel::compute_kappa(p);
    return QTEL_OK;
  });
}

int qtel_reconstruct_variance(double measured_var, double kappa,
                              int use_bare_output, double* out) {
  if (int rc = require(out != nullptr, "null output pointer")) return rc;
  return guarded([&] {
    *out = qtel::reconstruct_variance(
        measured_var, kappa,
        use_bare_output ? qtel::ReconConstant::kBareOutput
                        : qtel::ReconConstant::kMeasuredPort);
    return QTEL_OK;
  });
}

}  // extern "C"
