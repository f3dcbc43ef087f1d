#include "holoq/io.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace holoq {

namespace {

using nlohmann::json;

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json complex_pair(cxd z) { return json::array({z.real(), z.imag()}); }

json mat_to_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) rows.push_back(complex_pair(m(i, j)));
  return rows;
}

json provenance_json(const Provenance& p) {
  return json{{"config_hash", p.config_hash},
              {"seed", p.seed},
              {"version", p.version},
              {"timestamp", p.timestamp}};
}

void attach(json& doc, const Provenance* prov) {
  if (prov) doc["provenance"] = provenance_json(*prov);
}

json record_json(const RBRecord& r) {
  return json{{"m", r.m}, {"mean", r.mean}, {"stddev", r.stddev}, {"survival", r.survival}};
}

}  // namespace

Provenance Provenance::make(std::string config_hash, std::uint64_t seed) {
  Provenance p;
  p.config_hash = std::move(config_hash);
  p.seed = seed;
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  p.timestamp = buf;
  return p;
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::string to_hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open for writing: " + path);
  out << content;
  out.flush();
  if (!out) throw std::ios_base::failure("write failed: " + path);
}

std::string clifford_table_json(const CliffordTable& table, const Provenance* prov) {
  json doc;
  doc["basis_order"] = {"0", "e", "1"};
  json entries = json::array();
  for (const CliffordEntry& e : table.entries()) {
    entries.push_back(json{{"index", e.index},
                           {"name", e.name},
                           {"rotation_class", rotation_class_name(e.rotation)},
                           {"axis", {e.axis.x(), e.axis.y(), e.axis.z()}},
                           {"unitary", mat_to_json(e.unitary)}});
  }
  doc["entries"] = entries;
  attach(doc, prov);
  return doc.dump(2) + "\n";
}

CliffordTable clifford_table_from_json(const std::string& text) {
  const json doc = json::parse(text);
  std::array<CliffordEntry, 24> entries;
  if (doc.at("entries").size() != 24)
    throw std::invalid_argument("clifford_table_from_json: expected 24 entries");
  for (const json& e : doc.at("entries")) {
    CliffordEntry entry;
    entry.index = e.at("index").get<int>();
    entry.name = e.at("name").get<std::string>();
    entry.rotation = rotation_class_from_name(e.at("rotation_class").get<std::string>());
    entry.axis = Eigen::Vector3d(e.at("axis")[0].get<double>(), e.at("axis")[1].get<double>(),
                                 e.at("axis")[2].get<double>());
    const json& u = e.at("unitary");
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        entry.unitary(i, j) = cxd(u[2 * i + j][0].get<double>(), u[2 * i + j][1].get<double>());
    if (entry.index < 0 || entry.index >= 24)
      throw std::invalid_argument("clifford_table_from_json: index out of range");
    entries[static_cast<std::size_t>(entry.index)] = entry;
  }
  return CliffordTable(entries);
}

std::string schedule_json(const DriveSchedule& s, const Provenance* prov) {
  json doc{{"alpha", s.alpha},   {"theta", s.theta}, {"phi", s.phi},
           {"omega0", s.omega0}, {"tau", s.tau},     {"shape", s.shape},
           {"is_idle", s.is_idle}};
  doc["basis_order"] = {"0", "e", "1"};
  attach(doc, prov);
  return doc.dump(2) + "\n";
}

DriveSchedule schedule_from_json(const std::string& text) {
  const json doc = json::parse(text);
  DriveSchedule s;
  s.alpha = doc.at("alpha").get<double>();
  s.theta = doc.at("theta").get<double>();
  s.phi = doc.at("phi").get<double>();
  s.omega0 = doc.at("omega0").get<double>();
  s.tau = doc.at("tau").get<double>();
  s.shape = doc.at("shape").get<std::string>();
  s.is_idle = doc.at("is_idle").get<bool>();
  validate_schedule(s);
  return s;
}

std::string waveform_csv(const DriveSchedule& schedule, int samples) {
  std::ostringstream out;
  out << "t,delta_p,omega_p_re,omega_p_im,omega_s_re,omega_s_im\n";
  for (const DriveSample& d : sample_drives(schedule, samples)) {
    out << fmt_double(d.t) << ',' << fmt_double(d.delta_p) << ',' << fmt_double(d.omega_p.real())
        << ',' << fmt_double(d.omega_p.imag()) << ',' << fmt_double(d.omega_s.real()) << ','
        << fmt_double(d.omega_s.imag()) << '\n';
  }
  return out.str();
}

std::string chi_json(const ChiMatrix& chi, const Provenance* prov) {
  json doc;
  doc["basis"] = chi.basis_names;
  doc["normalization"] = "orthonormalized basis, Tr chi = 1 for trace-preserving processes";
  doc["entries"] = mat_to_json(chi.entries);
  attach(doc, prov);
  return doc.dump(2) + "\n";
}

std::string chi_abs_csv(const ChiMatrix& chi) {
  std::ostringstream out;
  out << "basis";
  for (const std::string& n : chi.basis_names) out << ',' << n;
  out << '\n';
  for (Eigen::Index i = 0; i < chi.entries.rows(); ++i) {
    out << chi.basis_names[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < chi.entries.cols(); ++j)
      out << ',' << fmt_double(std::abs(chi.entries(i, j)));
    out << '\n';
  }
  return out.str();
}

std::string qpt_summary_json(const std::string& gate_label, const QptReport& report,
                             const Provenance* prov) {
  json doc{{"gate", gate_label},
           {"fidelity", report.fidelity},
           {"leakage_trace", report.leakage_trace},
           {"leakage", 1.0 - report.leakage_trace},
           {"trace_chi", report.chi.entries.trace().real()},
           {"max_qst_residual", report.max_qst_residual}};
  attach(doc, prov);
  return doc.dump(2) + "\n";
}

std::string rb_result_json(const RBConfig& config, const RBResult& result,
                           const std::string& derived_json_key, double derived_value,
                           const Provenance* prov) {
  json cfg{{"m_values", config.m_values},
           {"k", config.k},
           {"seed", config.seed},
           {"tau", config.tau},
           {"steps", config.steps},
           {"noise",
            {{"enabled", config.noise.enabled},
             {"t1_e0", config.noise.t1_e0},
             {"t1_1e", config.noise.t1_1e},
             {"tphi_e0", config.noise.tphi_e0},
             {"tphi_1e", config.noise.tphi_1e}}}};
  if (config.interleaved_gate) cfg["interleaved_gate"] = *config.interleaved_gate;
  if (config.readout)
    cfg["readout"] = {{"f0", config.readout->f0}, {"fe", config.readout->fe},
                      {"f1", config.readout->f1}};
  if (config.depolarizing_lambda) cfg["depolarizing_lambda"] = *config.depolarizing_lambda;
  if (config.shots) cfg["shots"] = *config.shots;

  json doc;
  doc["config"] = cfg;
  json records = json::array();
  for (const RBRecord& r : result.records) records.push_back(record_json(r));
  doc["records"] = records;
  if (!result.records_corrected.empty()) {
    json corrected = json::array();
    for (const RBRecord& r : result.records_corrected) corrected.push_back(record_json(r));
    doc["records_corrected"] = corrected;
  }
  if (result.fit) {
    doc["fit"] = {{"A", result.fit->a},
                  {"B", result.fit->b},
                  {"p", result.fit->p},
                  {"sigma_p", result.fit->sigma_p()},
                  {"residual_norm", result.fit->residual_norm},
                  {"degenerate", result.fit->degenerate}};
  } else {
    doc["fit_error"] = result.fit_error;
  }
  if (!derived_json_key.empty()) doc["derived"] = {{derived_json_key, derived_value}};
  attach(doc, prov);
  return doc.dump(2) + "\n";
}

std::string rb_curve_csv(const std::vector<RBRecord>& records) {
  std::ostringstream out;
  out << "m,mean,stddev\n";
  for (const RBRecord& r : records)
    out << r.m << ',' << fmt_double(r.mean) << ',' << fmt_double(r.stddev) << '\n';
  return out.str();
}

std::string trajectory_csv(const std::vector<std::pair<double, Mat3c>>& trajectory) {
  std::ostringstream out;
  out << "t";
  const char* labels[3] = {"0", "e", "1"};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out << ",rho_" << labels[i] << labels[j] << "_re,rho_"
                                    << labels[i] << labels[j] << "_im";
  out << '\n';
  for (const auto& [t, rho] : trajectory) {
    out << fmt_double(t);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        out << ',' << fmt_double(rho(i, j).real()) << ',' << fmt_double(rho(i, j).imag());
    out << '\n';
  }
  return out.str();
}

std::string evolve_json(const PropagationResult& result, const Provenance* prov) {
  json doc;
  doc["basis_order"] = {"0", "e", "1"};
  doc["step_count"] = result.step_count;
  if (result.final_unitary) doc["final_unitary"] = mat_to_json(*result.final_unitary);
  if (result.final_rho) doc["final_rho"] = mat_to_json(*result.final_rho);
  attach(doc, prov);
  return doc.dump(2) + "\n";
}

}  // namespace holoq
