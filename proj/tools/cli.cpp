#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "holoq/io.hpp"

namespace holoq::cli {

namespace {

using nlohmann::json;

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::vector<double> parse_csv_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

std::vector<int> parse_csv_ints(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

// Gathered command-line overrides; only values the user actually set.
struct Flags {
  std::optional<std::string> config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<double> tau;
  std::optional<int> steps;
  std::optional<int> clifford;
  std::optional<double> gamma;
  std::optional<std::string> axis;
  std::optional<std::string> shape;
  std::optional<int> samples;
  std::optional<std::string> noise;    // on|off
  std::optional<std::string> readout;  // on|off
  std::optional<std::string> rho0;
  bool trajectory = false;
  std::optional<int> trajectory_samples;
  std::optional<std::string> m_list;
  std::optional<int> k;
  std::optional<int> interleaved;
  std::optional<double> depol;
  std::optional<std::uint64_t> shots;
  std::optional<std::string> reference_path;
};

json load_config(const std::string& path, const std::string& command) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open config file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config root must be an object");
  if (doc.contains("command") && doc["command"].get<std::string>() != command)
    throw ConfigError("config command '" + doc["command"].get<std::string>() +
                      "' does not match subcommand '" + command + "'");
  return doc;
}

void reject_unknown_keys(const json& cfg, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : cfg.items())
    if (!allowed.count(key)) throw ConfigError("unknown config key: '" + key + "'");
}

// Effective config = file config overridden by explicit flags, then
// defaults filled in.  The serialized result feeds the provenance hash.
json effective_config(const std::string& command, const Flags& f,
                      const std::set<std::string>& allowed) {
  json cfg = f.config_path ? load_config(*f.config_path, command) : json::object();
  cfg["command"] = command;
  reject_unknown_keys(cfg, allowed);

  auto set_if = [&](const char* key, const auto& opt) {
    if (opt) cfg[key] = *opt;
  };
  set_if("seed", f.seed);
  set_if("out", f.out);
  set_if("tau", f.tau);
  set_if("steps", f.steps);
  set_if("clifford", f.clifford);
  set_if("gamma", f.gamma);
  set_if("shape", f.shape);
  set_if("samples", f.samples);
  set_if("rho0", f.rho0);
  set_if("k", f.k);
  set_if("interleaved", f.interleaved);
  set_if("depolarizing_lambda", f.depol);
  set_if("shots", f.shots);
  set_if("trajectory_samples", f.trajectory_samples);
  set_if("reference", f.reference_path);
  if (f.axis) cfg["axis"] = parse_csv_doubles(*f.axis);
  if (f.m_list) cfg["m_values"] = parse_csv_ints(*f.m_list);
  if (f.noise) cfg["noise"] = (*f.noise == "on");
  if (f.readout) cfg["readout"] = (*f.readout == "on");
  if (f.trajectory) cfg["trajectory"] = true;

  if (!cfg.contains("seed")) cfg["seed"] = 0;
  if (!cfg.contains("out")) cfg["out"] = ".";
  if (allowed.count("tau") && !cfg.contains("tau")) cfg["tau"] = 100e-9;
  if (allowed.count("steps") && !cfg.contains("steps")) cfg["steps"] = 2000;
  reject_unknown_keys(cfg, allowed);
  return cfg;
}

GateSpec gate_from_config(const json& cfg) {
  const bool has_clifford = cfg.contains("clifford");
  const bool has_explicit = cfg.contains("gamma") || cfg.contains("axis");
  if (has_clifford && has_explicit)
    throw ConfigError("give either 'clifford' or 'gamma'+'axis', not both");
  if (has_clifford) {
    const int idx = cfg["clifford"].get<int>();
    if (idx < 0 || idx >= 24) throw ConfigError("clifford index must lie in 0..23");
    return clifford_lookup(idx);
  }
  if (!cfg.contains("gamma") || !cfg.contains("axis"))
    throw ConfigError("gate selection requires 'clifford' or both 'gamma' and 'axis'");
  GateSpec spec;
  spec.gamma = cfg["gamma"].get<double>();
  const auto ax = cfg["axis"].get<std::vector<double>>();
  if (ax.size() != 3) throw ConfigError("axis must have three components");
  Eigen::Vector3d axis(ax[0], ax[1], ax[2]);
  if (axis.norm() < 1e-12) throw ConfigError("axis must be nonzero");
  spec.axis = axis.normalized();  // documented: the CLI normalizes
  validate_gate_spec(spec);
  return spec;
}

NoiseModel noise_from_config(const json& cfg) {
  if (!cfg.contains("noise")) return NoiseModel::device_defaults();
  const json& n = cfg["noise"];
  if (n.is_boolean()) {
    return n.get<bool>() ? NoiseModel::device_defaults() : NoiseModel::disabled();
  }
  if (!n.is_object()) throw ConfigError("'noise' must be a boolean or an object");
  static const std::set<std::string> keys = {"enabled", "t1_e0", "t1_1e", "tphi_e0", "tphi_1e"};
  reject_unknown_keys(n, keys);
  NoiseModel noise = NoiseModel::device_defaults();
  if (n.contains("enabled")) noise.enabled = n["enabled"].get<bool>();
  if (n.contains("t1_e0")) noise.t1_e0 = n["t1_e0"].get<double>();
  if (n.contains("t1_1e")) noise.t1_1e = n["t1_1e"].get<double>();
  if (n.contains("tphi_e0")) noise.tphi_e0 = n["tphi_e0"].get<double>();
  if (n.contains("tphi_1e")) noise.tphi_1e = n["tphi_1e"].get<double>();
  validate_noise(noise);
  return noise;
}

std::optional<ReadoutModel> readout_from_config(const json& cfg) {
  if (!cfg.contains("readout")) return std::nullopt;
  const json& r = cfg["readout"];
  if (r.is_boolean()) {
    if (!r.get<bool>()) return std::nullopt;
    return ReadoutModel::device_defaults();
  }
  if (!r.is_object()) throw ConfigError("'readout' must be a boolean or an object");
  static const std::set<std::string> keys = {"f0", "fe", "f1"};
  reject_unknown_keys(r, keys);
  ReadoutModel m = ReadoutModel::device_defaults();
  if (r.contains("f0")) m.f0 = r["f0"].get<double>();
  if (r.contains("fe")) m.fe = r["fe"].get<double>();
  if (r.contains("f1")) m.f1 = r["f1"].get<double>();
  validate_readout(m);
  return m;
}

Vec3c rho0_from_name(const std::string& name) {
  const Vec3c k0 = Vec3c::Unit(kIdx0), k1 = Vec3c::Unit(kIdx1), ke = Vec3c::Unit(kIdxE);
  if (name == "0") return k0;
  if (name == "e") return ke;
  if (name == "1") return k1;
  if (name == "+") return Vec3c((k0 + k1) / std::sqrt(2.0));
  if (name == "-") return Vec3c((k0 - k1) / std::sqrt(2.0));
  if (name == "+i") return Vec3c((k0 + cxd(0, 1) * k1) / std::sqrt(2.0));
  if (name == "-i") return Vec3c((k0 - cxd(0, 1) * k1) / std::sqrt(2.0));
  throw ConfigError("unknown rho0 '" + name + "' (expected 0, e, 1, +, -, +i, -i)");
}

std::string gate_label(const json& cfg) {
  if (cfg.contains("clifford")) {
    const int idx = cfg["clifford"].get<int>();
    return CliffordTable::canonical().entry(idx).name;
  }
  std::ostringstream label;
  label << "gamma=" << cfg["gamma"].get<double>();
  return label.str();
}

Provenance make_provenance(const json& cfg) {
  // The hash identifies the computation's inputs; where the artifacts
  // land is not one of them.
  json hashed = cfg;
  hashed.erase("out");
  return Provenance::make(to_hex(fnv1a64(hashed.dump())), cfg["seed"].get<std::uint64_t>());
}

std::string out_path(const json& cfg, const std::string& name) {
  return cfg["out"].get<std::string>() + "/" + name;
}

void check_positive_tau_steps(const json& cfg) {
  if (cfg["tau"].get<double>() <= 0.0) throw ConfigError("tau must be positive");
  if (cfg["steps"].get<int>() < 100) throw ConfigError("steps must be at least 100");
}

int run_table(const Flags& flags) {
  static const std::set<std::string> allowed = {"command", "seed", "out"};
  const json cfg = effective_config("table", flags, allowed);
  const Provenance prov = make_provenance(cfg);
  write_file(out_path(cfg, "clifford_table.json"),
             clifford_table_json(CliffordTable::canonical(), &prov));
  return kExitOk;
}

int run_synth(const Flags& flags) {
  static const std::set<std::string> allowed = {"command", "seed", "out",  "tau",
                                                "clifford", "gamma", "axis", "shape", "samples"};
  json cfg = effective_config("synth", flags, allowed);
  if (!cfg.contains("shape")) cfg["shape"] = "sin2";
  if (!cfg.contains("samples")) cfg["samples"] = 256;
  if (cfg["tau"].get<double>() <= 0.0) throw ConfigError("tau must be positive");
  if (cfg["samples"].get<int>() < 2) throw ConfigError("samples must be at least 2");

  const GateSpec spec = gate_from_config(cfg);
  const DriveSchedule schedule =
      synthesize(spec, cfg["tau"].get<double>(), cfg["shape"].get<std::string>());
  const Provenance prov = make_provenance(cfg);
  write_file(out_path(cfg, "schedule.json"), schedule_json(schedule, &prov));
  write_file(out_path(cfg, "waveform.csv"), waveform_csv(schedule, cfg["samples"].get<int>()));
  return kExitOk;
}

int run_evolve(const Flags& flags) {
  static const std::set<std::string> allowed = {
      "command", "seed",  "out",  "tau",        "steps",   "clifford",
      "gamma",   "axis",  "noise", "rho0",      "trajectory", "trajectory_samples"};
  json cfg = effective_config("evolve", flags, allowed);
  if (!cfg.contains("rho0")) cfg["rho0"] = "0";
  if (!cfg.contains("trajectory")) cfg["trajectory"] = false;
  if (!cfg.contains("trajectory_samples")) cfg["trajectory_samples"] = 200;
  check_positive_tau_steps(cfg);

  const GateSpec spec = gate_from_config(cfg);
  const NoiseModel noise = noise_from_config(cfg);
  const Vec3c psi0 = rho0_from_name(cfg["rho0"].get<std::string>());
  const Mat3c rho0 = psi0 * psi0.adjoint();
  const DriveSchedule schedule = synthesize(spec, cfg["tau"].get<double>());
  const int steps = cfg["steps"].get<int>();
  const bool want_traj = cfg["trajectory"].get<bool>();
  const int traj_samples = want_traj ? cfg["trajectory_samples"].get<int>() : 0;

  PropagationResult result;
  if (noise.enabled) {
    result = propagate_lindblad(schedule, noise, rho0, steps, traj_samples);
  } else {
    result = propagate_unitary(schedule, steps, traj_samples);
    const Mat3c u = *result.final_unitary;
    result.final_rho = u * rho0 * u.adjoint();
    for (auto& [t, m] : result.trajectory) m = (m * rho0 * m.adjoint()).eval();
  }

  const Provenance prov = make_provenance(cfg);
  write_file(out_path(cfg, "evolve.json"), evolve_json(result, &prov));
  if (want_traj) write_file(out_path(cfg, "trajectory.csv"), trajectory_csv(result.trajectory));
  return kExitOk;
}

int run_qpt(const Flags& flags) {
  static const std::set<std::string> allowed = {"command", "seed",  "out",   "tau",    "steps",
                                                "clifford", "gamma", "axis", "noise", "readout"};
  const json cfg = effective_config("qpt", flags, allowed);
  check_positive_tau_steps(cfg);

  const GateSpec spec = gate_from_config(cfg);
  const NoiseModel noise = noise_from_config(cfg);
  const std::optional<ReadoutModel> readout = readout_from_config(cfg);
  Eigen::Matrix3d confusion;
  if (readout) confusion = readout->confusion();

  const QptReport report = holoq::run_qpt(spec, noise, cfg["tau"].get<double>(),
                                          cfg["steps"].get<int>(),
                                          readout ? &confusion : nullptr);
  const Provenance prov = make_provenance(cfg);
  write_file(out_path(cfg, "chi.json"), chi_json(report.chi, &prov));
  write_file(out_path(cfg, "chi_ideal.json"), chi_json(report.chi_ideal, &prov));
  write_file(out_path(cfg, "chi_abs.csv"), chi_abs_csv(report.chi));
  write_file(out_path(cfg, "qpt_summary.json"),
             qpt_summary_json(gate_label(cfg), report, &prov));
  return kExitOk;
}

RBConfig rb_config_from_json(const json& cfg) {
  RBConfig rb;
  if (cfg.contains("m_values")) rb.m_values = cfg["m_values"].get<std::vector<int>>();
  if (cfg.contains("k")) rb.k = cfg["k"].get<int>();
  rb.seed = cfg["seed"].get<std::uint64_t>();
  if (cfg.contains("interleaved")) rb.interleaved_gate = cfg["interleaved"].get<int>();
  rb.noise = noise_from_config(cfg);
  rb.readout = readout_from_config(cfg);
  if (cfg.contains("depolarizing_lambda"))
    rb.depolarizing_lambda = cfg["depolarizing_lambda"].get<double>();
  if (cfg.contains("shots")) rb.shots = cfg["shots"].get<std::uint64_t>();
  rb.tau = cfg["tau"].get<double>();
  rb.steps = cfg["steps"].get<int>();
  validate_rb_config(rb);
  return rb;
}

int run_rb(const Flags& flags) {
  static const std::set<std::string> allowed = {
      "command", "seed",    "out",   "tau",   "steps",  "m_values", "k",
      "interleaved", "noise", "readout", "depolarizing_lambda", "shots", "reference"};
  const json cfg = effective_config("rb", flags, allowed);
  check_positive_tau_steps(cfg);
  const RBConfig rb = rb_config_from_json(cfg);
  const Provenance prov = make_provenance(cfg);

  const GateMaps maps = build_gate_maps(rb.noise, rb.tau, rb.steps, rb.depolarizing_lambda);

  if (!rb.interleaved_gate) {
    const RBResult result = holoq::run_rb(rb, maps);
    const bool fitted = result.fit.has_value();
    write_file(out_path(cfg, "rb_result.json"),
               rb_result_json(rb, result, fitted ? "r" : "",
                              fitted ? average_error(result.fit->p) : 0.0, &prov));
    write_file(out_path(cfg, "rb_curve.csv"), rb_curve_csv(result.records));
    if (!fitted) throw std::runtime_error("rb fit failed: " + result.fit_error);
    return kExitOk;
  }

  // Interleaved mode: p_ref comes from a stored reference result or a
  // reference run in this invocation.
  double p_ref = 0.0;
  if (cfg.contains("reference")) {
    std::ifstream in(cfg["reference"].get<std::string>());
    if (!in)
      throw std::ios_base::failure("cannot open reference: " +
                                   cfg["reference"].get<std::string>());
    json ref_doc;
    try {
      in >> ref_doc;
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("reference parse error: ") + e.what());
    }
    if (!ref_doc.contains("fit"))
      throw ConfigError("reference result carries no fit block");
    p_ref = ref_doc["fit"]["p"].get<double>();
  } else {
    RBConfig ref = rb;
    ref.interleaved_gate.reset();
    const RBResult ref_result = holoq::run_rb(ref, maps);
    if (!ref_result.fit)
      throw std::runtime_error("reference rb fit failed: " + ref_result.fit_error);
    p_ref = ref_result.fit->p;
    write_file(out_path(cfg, "rb_reference.json"),
               rb_result_json(ref, ref_result, "r", average_error(p_ref), &prov));
    write_file(out_path(cfg, "rb_reference_curve.csv"), rb_curve_csv(ref_result.records));
  }

  const RBResult result = holoq::run_rb(rb, maps);
  const bool fitted = result.fit.has_value();
  write_file(out_path(cfg, "rb_result.json"),
             rb_result_json(rb, result, fitted ? "F_gate" : "",
                            fitted ? interleaved_fidelity(result.fit->p, p_ref) : 0.0, &prov));
  write_file(out_path(cfg, "rb_curve.csv"), rb_curve_csv(result.records));
  if (!fitted) throw std::runtime_error("rb fit failed: " + result.fit_error);
  return kExitOk;
}

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option_function<std::string>(
      "--config", [&f](const std::string& v) { f.config_path = v; },
      "JSON config file; explicit flags override its values");
  cmd->add_option_function<std::uint64_t>(
      "--seed", [&f](std::uint64_t v) { f.seed = v; }, "RNG seed");
  cmd->add_option_function<std::string>(
      "--out", [&f](const std::string& v) { f.out = v; }, "output directory (default .)");
}

void add_gate_selector(CLI::App* cmd, Flags& f) {
  cmd->add_option_function<int>(
      "--clifford", [&f](int v) { f.clifford = v; }, "Clifford index 0..23");
  cmd->add_option_function<double>(
      "--gamma", [&f](double v) { f.gamma = v; }, "rotation angle in rad, (0, 2pi]");
  cmd->add_option_function<std::string>(
      "--axis", [&f](const std::string& v) { f.axis = v; },
      "rotation axis x,y,z (normalized by the CLI)");
}

void add_tau_steps(CLI::App* cmd, Flags& f, bool with_steps = true) {
  cmd->add_option_function<double>(
      "--tau", [&f](double v) { f.tau = v; }, "gate duration in seconds (default 100e-9)");
  if (with_steps)
    cmd->add_option_function<int>(
        "--steps", [&f](int v) { f.steps = v; }, "integration steps (default 2000)");
}

void add_noise(CLI::App* cmd, Flags& f) {
  cmd->add_option_function<std::string>(
      "--noise", [&f](const std::string& v) { f.noise = v; },
      "on|off: decoherence with the measured coherence times (default on)")
      ->check(CLI::IsMember({"on", "off"}));
}

void add_readout(CLI::App* cmd, Flags& f) {
  cmd->add_option_function<std::string>(
      "--readout", [&f](const std::string& v) { f.readout = v; },
      "on|off: classical assignment confusion (default off)")
      ->check(CLI::IsMember({"on", "off"}));
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{
      "holoq: pulse-level synthesis, simulation and verification of single-shot\n"
      "holonomic qutrit gates (Clifford table, drive synthesis, Lindblad dynamics,\n"
      "process tomography, randomized benchmarking)"};
  app.require_subcommand(1);
  Flags f;

  CLI::App* table = app.add_subcommand("table", "write the 24-entry Clifford table as JSON");
  add_common(table, f);

  CLI::App* synth = app.add_subcommand("synth", "invert a gate into a drive schedule");
  add_common(synth, f);
  add_gate_selector(synth, f);
  add_tau_steps(synth, f, /*with_steps=*/false);
  synth->add_option_function<std::string>(
      "--shape", [&f](const std::string& v) { f.shape = v; }, "envelope shape (default sin2)");
  synth->add_option_function<int>(
      "--samples", [&f](int v) { f.samples = v; }, "waveform CSV samples (default 256)");

  CLI::App* evolve = app.add_subcommand("evolve", "propagate a gate pulse on an initial state");
  add_common(evolve, f);
  add_gate_selector(evolve, f);
  add_tau_steps(evolve, f);
  add_noise(evolve, f);
  evolve->add_option_function<std::string>(
      "--rho0", [&f](const std::string& v) { f.rho0 = v; },
      "initial state: 0, e, 1, +, -, +i, -i (default 0)");
  evolve->add_flag_function(
      "--trajectory", [&f](std::int64_t) { f.trajectory = true; },
      "also write the sampled density-matrix trajectory CSV");
  evolve->add_option_function<int>(
      "--trajectory-samples", [&f](int v) { f.trajectory_samples = v; },
      "trajectory sample count (default 200)");

  CLI::App* qpt = app.add_subcommand("qpt", "3-level process tomography of one gate");
  add_common(qpt, f);
  add_gate_selector(qpt, f);
  add_tau_steps(qpt, f);
  add_noise(qpt, f);
  add_readout(qpt, f);

  CLI::App* rb = app.add_subcommand("rb", "reference or interleaved randomized benchmarking");
  add_common(rb, f);
  add_tau_steps(rb, f);
  add_noise(rb, f);
  add_readout(rb, f);
  rb->add_option_function<std::string>(
      "--m", [&f](const std::string& v) { f.m_list = v; },
      "sequence lengths, comma separated (default 1,3,5,8,12,18,26,38,55,80)");
  rb->add_option_function<int>(
      "--k", [&f](int v) { f.k = v; }, "sequences per length (default 50)");
  rb->add_option_function<int>(
      "--interleaved", [&f](int v) { f.interleaved = v; },
      "interleave this Clifford and report F_gate");
  rb->add_option_function<double>(
      "--depol", [&f](double v) { f.depol = v; },
      "inject a per-gate depolarizing channel of this strength");
  rb->add_option_function<std::uint64_t>(
      "--shots", [&f](std::uint64_t v) { f.shots = v; },
      "sample survival from this many shots instead of exact populations");
  rb->add_option_function<std::string>(
      "--reference", [&f](const std::string& v) { f.reference_path = v; },
      "rb_result.json of a stored reference run (interleaved mode)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (table->parsed()) return run_table(f);
    if (synth->parsed()) return run_synth(f);
    if (evolve->parsed()) return run_evolve(f);
    if (qpt->parsed()) return run_qpt(f);
    if (rb->parsed()) return run_rb(f);
    std::cerr << "holoq: no subcommand\n";
    return kExitConfig;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "holoq: io error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "holoq: io error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "holoq: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "holoq: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "holoq: numerical failure: " << e.what() << '\n';
    return kExitNumeric;
  }
}

}  // namespace holoq::cli
