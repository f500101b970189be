/**
 * Command-line front end. Builds a configuration from (in order of
 * increasing precedence) built-in defaults, the QTEL_SEED environment
 * variable, --config files, --set overrides, and named flags, then runs
 * one subcommand through the public C API. The JSON summary goes to
 * stdout and to <out>/<command>_summary.json; each result table goes to
 * <out>/<table>.csv. Exit codes: 0 success, 1 runtime failure, 2
 * configuration error.
 */
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qtel/qtel.h"

namespace {

struct Options {
  std::vector<std::string> configs;
  std::vector<std::string> sets;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> runs;
  std::optional<int> threads;
  std::string out = "out";
  std::optional<double> kappa;
  std::optional<double> gain_x;
  std::optional<double> gain_p;
  std::optional<double> epsilon;
  std::optional<double> squeeze_db;
  std::optional<int> n_max;
};

std::string number_text(double value) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return ec == std::errc() ? std::string(buf, end) : std::string("0");
}

int fail(int status) {
  std::fprintf(stderr, "error: %s\n", qtel_last_error());
  return status;
}

/// --set key=value; the value is JSON, or a bare word taken as a string.
int apply_set(qtel_config* config, const std::string& pair) {
  const std::size_t eq = pair.find('=');
  if (eq == std::string::npos || eq == 0) {
    std::fprintf(stderr, "error: --set expects key=value, got '%s'\n",
                 pair.c_str());
    return QTEL_ERR_CONFIG;
  }
  const std::string key = pair.substr(0, eq);
  std::string value = pair.substr(eq + 1);
  const nlohmann::json parsed =
      nlohmann::json::parse(value, nullptr, /*allow_exceptions=*/false);
  if (parsed.is_discarded()) {
    value = nlohmann::json(value).dump();  // treat as a string literal
  }
  if (qtel_config_set(config, key.c_str(), value.c_str()) != QTEL_OK) {
    return fail(QTEL_ERR_CONFIG);
  }
  return QTEL_OK;
}

int set_or_fail(qtel_config* config, const char* key,
                const std::string& value) {
  if (qtel_config_set(config, key, value.c_str()) != QTEL_OK) {
    return fail(QTEL_ERR_CONFIG);
  }
  return QTEL_OK;
}

int run_command(const std::string& command, const Options& opt) {
  const std::unique_ptr<qtel_config, decltype(&qtel_config_free)> config(
      qtel_config_create(), qtel_config_free);
  if (!config) {
    std::fprintf(stderr, "error: out of memory\n");
    return QTEL_ERR_RUNTIME;
  }

  // Environment seed sits just above the built-in defaults.
  if (const char* env = std::getenv("QTEL_SEED")) {
    const std::string text(env);
    std::uint64_t seed = 0;
    const auto [end, ec] =
        std::from_chars(text.data(), text.data() + text.size(), seed);
    if (ec != std::errc() || end != text.data() + text.size() ||
        text.empty()) {
      std::fprintf(stderr, "error: QTEL_SEED must be an unsigned integer\n");
      return QTEL_ERR_CONFIG;
    }
    if (int rc = set_or_fail(config.get(), "seed", std::to_string(seed))) {
      return rc;
    }
  }

  for (const std::string& path : opt.configs) {
    if (qtel_config_merge_file(config.get(), path.c_str()) != QTEL_OK) {
      return fail(QTEL_ERR_CONFIG);
    }
  }
  for (const std::string& pair : opt.sets) {
    if (int rc = apply_set(config.get(), pair)) return rc;
  }

  if (opt.seed) {
    if (int rc = set_or_fail(config.get(), "seed", std::to_string(*opt.seed)))
      return rc;
  }
  if (opt.runs) {
    if (int rc = set_or_fail(config.get(), "runs", std::to_string(*opt.runs)))
      return rc;
  }
  if (opt.threads) {
    if (int rc =
            set_or_fail(config.get(), "threads", std::to_string(*opt.threads)))
      return rc;
  }
  if (opt.kappa) {
    if (int rc = set_or_fail(config.get(), "protocol.kappa",
                             number_text(*opt.kappa)))
      return rc;
  }
  if (opt.gain_x) {
    if (int rc = set_or_fail(config.get(), "protocol.gain_x",
                             number_text(*opt.gain_x)))
      return rc;
  }
  if (opt.gain_p) {
    if (int rc = set_or_fail(config.get(), "protocol.gain_p",
                             number_text(*opt.gain_p)))
      return rc;
  }
  if (opt.epsilon) {
    if (int rc = set_or_fail(config.get(), "protocol.loss_epsilon",
                             number_text(*opt.epsilon)))
      return rc;
  }
  if (opt.squeeze_db) {
    if (int rc = set_or_fail(config.get(), "improved.squeeze_db",
                             number_text(*opt.squeeze_db)))
      return rc;
  }
  if (opt.n_max) {
    if (int rc = set_or_fail(config.get(), "improved.n_max",
                             std::to_string(*opt.n_max)))
      return rc;
  }

  qtel_result* raw = nullptr;
  const int status = qtel_run(config.get(), command.c_str(), &raw);
  const std::unique_ptr<qtel_result, decltype(&qtel_result_free)> result(
      raw, qtel_result_free);
  if (status != QTEL_OK) return fail(status);

  std::error_code fs_error;
  std::filesystem::create_directories(opt.out, fs_error);
  if (fs_error) {
    std::fprintf(stderr, "error: cannot create output directory '%s': %s\n",
                 opt.out.c_str(), fs_error.message().c_str());
    return QTEL_ERR_RUNTIME;
  }

  const std::string summary = qtel_result_summary(result.get());
  const std::string summary_path = opt.out + "/" + command + "_summary.json";
  {
    std::ofstream file(summary_path, std::ios::binary);
    file << summary << '\n';
    if (!file) {
      std::fprintf(stderr, "error: write failed for '%s'\n",
                   summary_path.c_str());
      return QTEL_ERR_RUNTIME;
    }
  }

  const int tables = qtel_result_table_count(result.get());
  for (int i = 0; i < tables; ++i) {
    const char* name = qtel_result_table_name(result.get(), i);
    const std::string path = opt.out + "/" + std::string(name) + ".csv";
    if (qtel_result_write_csv(result.get(), i, path.c_str()) != QTEL_OK) {
      return fail(QTEL_ERR_RUNTIME);
    }
    std::fprintf(stderr, "wrote %s\n", path.c_str());
  }
  std::fprintf(stderr, "wrote %s\n", summary_path.c_str());

  std::fputs(summary.c_str(), stdout);
  std::fputc('\n', stdout);
  return QTEL_OK;
}

void add_common(CLI::App* sub, Options& opt) {
  sub->add_option("--config", opt.configs,
                  "JSON configuration file (repeatable, later files win)");
  sub->add_option("--set", opt.sets,
                  "Override one key, e.g. --set protocol.kappa=0.93");
  sub->add_option("--seed", opt.seed, "Random seed");
  sub->add_option("--runs", opt.runs, "Number of protocol runs");
  sub->add_option("--threads", opt.threads,
                  "Worker threads (0 = hardware default)");
  sub->add_option("--out", opt.out, "Output directory (default: out)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Simulator for deterministic teleportation of light onto an atomic "
      "ensemble: protocol runs, calibrations, fidelity analysis, and the "
      "multimode squeezed-light variant."};
  app.set_version_flag("--version", qtel_version());
  app.require_subcommand(1);

  Options opt;

  CLI::App* simulate = app.add_subcommand(
      "simulate", "Run the teleportation protocol ensemble");
  add_common(simulate, opt);
  simulate->add_option("--kappa", opt.kappa, "Coupling constant");
  simulate->add_option("--gain-x", opt.gain_x, "Feedback gain for X");
  simulate->add_option("--gain-p", opt.gain_p, "Feedback gain for P");
  simulate->add_option("--epsilon", opt.epsilon, "Optical loss fraction");

  CLI::App* calibrate = app.add_subcommand(
      "calibrate", "Shot-noise, projection-noise, and gain calibrations");
  add_common(calibrate, opt);
  calibrate->add_option("--kappa", opt.kappa, "Coupling constant");
  calibrate->add_option("--gain-x", opt.gain_x, "Feedback gain for X");
  calibrate->add_option("--gain-p", opt.gain_p, "Feedback gain for P");
  calibrate->add_option("--epsilon", opt.epsilon, "Optical loss fraction");

  CLI::App* reproduce = app.add_subcommand(
      "reproduce", "Fidelity versus photon number at the reference "
                   "operating point");
  add_common(reproduce, opt);

  CLI::App* improved = app.add_subcommand(
      "improved", "Multimode squeezed-light protocol optimization");
  add_common(improved, opt);
  improved->add_option("--kappa", opt.kappa, "Coupling constant");
  improved->add_option("--squeeze-db", opt.squeeze_db,
                       "Input squeezing in dB");
  improved->add_option("--n-max", opt.n_max, "Highest temporal mode index");

  CLI::App* qubit = app.add_subcommand(
      "qubit", "Qubit fidelity of the teleportation channel");
  add_common(qubit, opt);
  qubit->add_option("--kappa", opt.kappa, "Coupling constant");
  qubit->add_option("--epsilon", opt.epsilon, "Optical loss fraction");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : QTEL_ERR_CONFIG;
  }

  for (const CLI::App* sub :
       {simulate, calibrate, reproduce, improved, qubit}) {
    if (sub->parsed()) return run_command(sub->get_name(), opt);
  }
  std::fprintf(stderr, "error: no command given\n");
  return QTEL_ERR_CONFIG;
}
