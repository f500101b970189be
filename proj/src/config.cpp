#include "config.hpp"

#include <cmath>
#include <initializer_list>
#include <string>

#include "errors.hpp"
#include "json.hpp"

namespace qtel {

namespace {

using Json = nlohmann::json;

void check_keys(const Json& obj, const std::string& section,
                std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) {
    throw ConfigError("config: '" + section + "' must be an object");
  }
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ConfigError("config: unknown key '" + item.key() + "' in '" +
                        section + "'");
    }
  }
}

double get_number(const Json& obj, const std::string& section,
                  const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const Json& v = obj.at(key);
  if (!v.is_number()) {
    throw ConfigError("config: '" + section + "." + key +
                      "' must be a number");
  }
  const double x = v.get<double>();
  if (!std::isfinite(x)) {
    throw ConfigError("config: '" + section + "." + key + "' must be finite");
  }
  return x;
}

bool get_bool(const Json& obj, const std::string& section, const char* key,
              bool fallback) {
  if (!obj.contains(key)) return fallback;
  const Json& v = obj.at(key);
  if (!v.is_boolean()) {
    throw ConfigError("config: '" + section + "." + key +
                      "' must be a boolean");
  }
  return v.get<bool>();
}

std::string get_string(const Json& obj, const std::string& section,
                       const char* key, const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const Json& v = obj.at(key);
  if (!v.is_string()) {
    throw ConfigError("config: '" + section + "." + key +
                      "' must be a string");
  }
  return v.get<std::string>();
}

std::int64_t get_integer(const Json& obj, const std::string& section,
                         const char* key, std::int64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const Json& v = obj.at(key);
  if (!v.is_number_integer() && !v.is_number_unsigned()) {
    throw ConfigError("config: '" + section + "." + key +
                      "' must be an integer");
  }
  return v.get<std::int64_t>();
}

std::vector<double> get_number_list(const Json& obj,
                                    const std::string& section,
                                    const char* key,
                                    const std::vector<double>& fallback) {
  if (!obj.contains(key)) return fallback;
  const Json& v = obj.at(key);
  if (!v.is_array() || v.empty()) {
    throw ConfigError("config: '" + section + "." + key +
                      "' must be a non-empty array of numbers");
  }
  std::vector<double> out;
  out.reserve(v.size());
  for (const Json& item : v) {
    if (!item.is_number()) {
      throw ConfigError("config: '" + section + "." + key +
                        "' must contain numbers only");
    }
    out.push_back(item.get<double>());
  }
  return out;
}

void parse_protocol(const Json& obj, RunConfig& config) {
  check_keys(obj, "protocol",
             {"kappa", "coupling", "gain_x", "gain_p", "loss_epsilon",
              "decay_beta", "decay_tau", "electronic_noise", "decay_admix",
              "reconstruction"});
  if (obj.contains("kappa") && obj.contains("coupling")) {
    throw ConfigError(
        "config: give 'protocol.kappa' or 'protocol.coupling', not both");
  }
  ProtocolParams& p = config.protocol;
  if (obj.contains("coupling")) {
    const Json& c = obj.at("coupling");
    check_keys(c, "protocol.coupling",
               {"a1", "n_photons", "n_atoms", "f", "sigma", "gamma", "area",
                "delta"});
    CouplingParams cp;
    cp.a1 = get_number(c, "protocol.coupling", "a1", cp.a1);
    cp.n_photons = get_number(c, "protocol.coupling", "n_photons",
                              cp.n_photons);
    cp.n_atoms = get_number(c, "protocol.coupling", "n_atoms", cp.n_atoms);
    cp.f = get_number(c, "protocol.coupling", "f", cp.f);
    cp.sigma = get_number(c, "protocol.coupling", "sigma", cp.sigma);
    cp.gamma = get_number(c, "protocol.coupling", "gamma", cp.gamma);
    cp.area = get_number(c, "protocol.coupling", "area", cp.area);
    cp.delta = get_number(c, "protocol.coupling", "delta", cp.delta);
    config.coupling = cp;
    p.kappa = compute_kappa(cp);
  } else {
    p.kappa = get_number(obj, "protocol", "kappa", p.kappa);
  }
  p.gain_x = get_number(obj, "protocol", "gain_x", p.gain_x);
  p.gain_p = get_number(obj, "protocol", "gain_p", p.gain_p);
  p.noise.epsilon = get_number(obj, "protocol", "loss_epsilon",
                               p.noise.epsilon);
  p.noise.beta = get_number(obj, "protocol", "decay_beta", p.noise.beta);
  p.noise.tau = get_number(obj, "protocol", "decay_tau", p.noise.tau);
  p.noise.electronic =
      get_number(obj, "protocol", "electronic_noise", p.noise.electronic);
  p.decay_admix = get_bool(obj, "protocol", "decay_admix", p.decay_admix);

  const std::string recon =
      get_string(obj, "protocol", "reconstruction", "measured-port");
  if (recon == "measured-port") {
    config.reconstruction = ReconConstant::kMeasuredPort;
  } else if (recon == "bare-output") {
    config.reconstruction = ReconConstant::kBareOutput;
  } else {
    throw ConfigError(
        "config: 'protocol.reconstruction' must be 'measured-port' or "
        "'bare-output'");
  }

  if (!(p.kappa > 0.0)) throw ConfigError("config: kappa must be > 0");
  if (!(p.noise.epsilon >= 0.0) || !(p.noise.epsilon < 1.0)) {
    throw ConfigError("config: loss_epsilon must be in [0, 1)");
  }
  if (p.noise.beta < 0.0 || p.noise.tau < 0.0) {
    throw ConfigError("config: decay_beta and decay_tau must be >= 0");
  }
  if (p.noise.electronic < 0.0) {
    throw ConfigError("config: electronic_noise must be >= 0");
  }
}

void parse_input(const Json& obj, RunConfig& config) {
  check_keys(obj, "input", {"kind", "n_bar", "phase", "n_avg"});
  InputSpec& in = config.input;
  const std::string kind = get_string(obj, "input", "kind", "fixed");
  if (kind == "fixed") {
    in.kind = InputKind::kFixed;
  } else if (kind == "prior") {
    in.kind = InputKind::kPrior;
  } else {
    throw ConfigError("config: 'input.kind' must be 'fixed' or 'prior'");
  }
  in.n_bar = get_number(obj, "input", "n_bar", in.n_bar);
  in.phase = get_number(obj, "input", "phase", in.phase);
  in.n_avg = get_number(obj, "input", "n_avg", in.n_avg);
  if (in.n_bar < 0.0 || in.n_avg < 0.0) {
    throw ConfigError("config: photon numbers must be >= 0");
  }
}

void parse_improved(const Json& obj, RunConfig& config) {
  check_keys(obj, "improved", {"squeeze_db", "n_max"});
  config.improved.squeeze_db =
      get_number(obj, "improved", "squeeze_db", config.improved.squeeze_db);
  config.improved.n_max = static_cast<int>(
      get_integer(obj, "improved", "n_max", config.improved.n_max));
  if (config.improved.squeeze_db < 0.0) {
    throw ConfigError("config: improved.squeeze_db must be >= 0");
  }
  if (config.improved.n_max < 0 || config.improved.n_max > 64) {
    throw ConfigError("config: improved.n_max must be in [0, 64]");
  }
}

void parse_signal(const Json& obj, RunConfig& config) {
  check_keys(obj, "signal",
             {"frequency_hz", "duration_s", "sample_rate_hz", "power",
              "electronic", "powers", "atom_numbers", "reference_atoms",
              "samples_per_point", "traces_per_power"});
  SignalConfig& sig = config.signal;
  sig.trace.frequency_hz =
      get_number(obj, "signal", "frequency_hz", sig.trace.frequency_hz);
  sig.trace.duration_s =
      get_number(obj, "signal", "duration_s", sig.trace.duration_s);
  sig.trace.sample_rate_hz =
      get_number(obj, "signal", "sample_rate_hz", sig.trace.sample_rate_hz);
  sig.trace.power = get_number(obj, "signal", "power", sig.trace.power);
  sig.trace.electronic =
      get_number(obj, "signal", "electronic", sig.trace.electronic);
  sig.powers = get_number_list(obj, "signal", "powers", sig.powers);
  sig.atom_numbers =
      get_number_list(obj, "signal", "atom_numbers", sig.atom_numbers);
  sig.reference_atoms =
      get_number(obj, "signal", "reference_atoms", sig.reference_atoms);
  sig.samples_per_point = static_cast<int>(get_integer(
      obj, "signal", "samples_per_point", sig.samples_per_point));
  sig.traces_per_power = static_cast<int>(
      get_integer(obj, "signal", "traces_per_power", sig.traces_per_power));
  if (!(sig.reference_atoms > 0.0)) {
    throw ConfigError("config: signal.reference_atoms must be > 0");
  }
  if (sig.samples_per_point < 2 || sig.traces_per_power < 1) {
    throw ConfigError("config: signal sample counts out of range");
  }
}

void parse_qubit(const Json& obj, RunConfig& config) {
  check_keys(obj, "qubit", {"gain_min", "gain_max", "gain_steps"});
  QubitConfig& q = config.qubit;
  q.gain_min = get_number(obj, "qubit", "gain_min", q.gain_min);
  q.gain_max = get_number(obj, "qubit", "gain_max", q.gain_max);
  q.gain_steps =
      static_cast<int>(get_integer(obj, "qubit", "gain_steps", q.gain_steps));
  if (!(q.gain_min < q.gain_max) || q.gain_steps < 2) {
    throw ConfigError("config: qubit gain grid out of range");
  }
}

void parse_reproduce(const Json& obj, RunConfig& config) {
  check_keys(obj, "reproduce", {"photon_numbers"});
  config.reproduce.photon_numbers = get_number_list(
      obj, "reproduce", "photon_numbers", config.reproduce.photon_numbers);
  for (double n : config.reproduce.photon_numbers) {
    if (!(n > 0.0)) {
      throw ConfigError("config: reproduce.photon_numbers must be > 0");
    }
  }
}

RunConfig from_document(const Json& doc) {
  RunConfig config;
  check_keys(doc, "(top level)",
             {"seed", "runs", "threads", "protocol", "input", "improved",
              "signal", "qubit", "reproduce"});

  const std::int64_t seed =
      get_integer(doc, "(top level)", "seed",
                  static_cast<std::int64_t>(config.seed));
  if (seed < 0) throw ConfigError("config: seed must be >= 0");
  config.seed = static_cast<std::uint64_t>(seed);

  const std::int64_t runs = get_integer(
      doc, "(top level)", "runs", static_cast<std::int64_t>(config.runs));
  if (runs < 1) throw ConfigError("config: runs must be >= 1");
  config.runs = static_cast<std::size_t>(runs);

  const std::int64_t threads =
      get_integer(doc, "(top level)", "threads", config.threads);
  if (threads < 0 || threads > 1024) {
    throw ConfigError("config: threads must be in [0, 1024]");
  }
  config.threads = static_cast<int>(threads);

  if (doc.contains("protocol")) parse_protocol(doc.at("protocol"), config);
  if (doc.contains("input")) parse_input(doc.at("input"), config);
  if (doc.contains("improved")) parse_improved(doc.at("improved"), config);
  if (doc.contains("signal")) parse_signal(doc.at("signal"), config);
  if (doc.contains("qubit")) parse_qubit(doc.at("qubit"), config);
  if (doc.contains("reproduce")) parse_reproduce(doc.at("reproduce"), config);
  return config;
}

Json parse_document(const std::string& text) {
  Json doc = Json::parse(text, nullptr, false);
  if (doc.is_discarded()) {
    throw ConfigError("config: malformed JSON");
  }
  if (!doc.is_object()) {
    throw ConfigError("config: top level must be an object");
  }
  return doc;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  return from_document(parse_document(json_text));
}

RunConfig parse_config_layers(const std::vector<std::string>& json_texts) {
  Json doc = Json::object();
  for (const std::string& text : json_texts) {
    doc.merge_patch(parse_document(text));
  }
  return from_document(doc);
}

std::string config_to_json(const RunConfig& config) {
  Json doc;
  doc["seed"] = config.seed;
  doc["runs"] = config.runs;
  doc["threads"] = config.threads;
  Json protocol;
  protocol["kappa"] = config.protocol.kappa;
  protocol["gain_x"] = config.protocol.gain_x;
  protocol["gain_p"] = config.protocol.gain_p;
  protocol["loss_epsilon"] = config.protocol.noise.epsilon;
  protocol["decay_beta"] = config.protocol.noise.beta;
  protocol["decay_tau"] = config.protocol.noise.tau;
  protocol["electronic_noise"] = config.protocol.noise.electronic;
  protocol["decay_admix"] = config.protocol.decay_admix;
  protocol["reconstruction"] =
      config.reconstruction == ReconConstant::kMeasuredPort ? "measured-port"
                                                            : "bare-output";
  doc["protocol"] = protocol;
  Json input;
  input["kind"] = config.input.kind == InputKind::kFixed ? "fixed" : "prior";
  input["n_bar"] = config.input.n_bar;
  input["phase"] = config.input.phase;
  input["n_avg"] = config.input.n_avg;
  doc["input"] = input;
  Json improved;
  improved["squeeze_db"] = config.improved.squeeze_db;
  improved["n_max"] = config.improved.n_max;
  doc["improved"] = improved;
  Json signal;
  signal["frequency_hz"] = config.signal.trace.frequency_hz;
  signal["duration_s"] = config.signal.trace.duration_s;
  signal["sample_rate_hz"] = config.signal.trace.sample_rate_hz;
  signal["power"] = config.signal.trace.power;
  signal["electronic"] = config.signal.trace.electronic;
  signal["powers"] = config.signal.powers;
  signal["atom_numbers"] = config.signal.atom_numbers;
  signal["reference_atoms"] = config.signal.reference_atoms;
  signal["samples_per_point"] = config.signal.samples_per_point;
  signal["traces_per_power"] = config.signal.traces_per_power;
  doc["signal"] = signal;
  Json qubit;
  qubit["gain_min"] = config.qubit.gain_min;
  qubit["gain_max"] = config.qubit.gain_max;
  qubit["gain_steps"] = config.qubit.gain_steps;
  doc["qubit"] = qubit;
  Json reproduce;
  reproduce["photon_numbers"] = config.reproduce.photon_numbers;
  doc["reproduce"] = reproduce;
  return doc.dump(2);
}

}  // namespace qtel
