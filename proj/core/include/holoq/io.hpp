#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "holoq/clifford.hpp"
#include "holoq/pulse.hpp"
#include "holoq/rb.hpp"
#include "holoq/tomography.hpp"

// File formats emitted by the toolkit.  All JSON documents note the basis
// ordering (|0>, |e>, |1>) where it matters and optionally carry a
// provenance block {config_hash, seed, version, timestamp}; everything but
// the timestamp is deterministic for a fixed (config, seed).

namespace holoq {

inline constexpr std::string_view kVersion = "0.1.0";

struct Provenance {
  std::string config_hash;
  std::uint64_t seed = 0;
  std::string version = std::string(kVersion);
  std::string timestamp;

  static Provenance make(std::string config_hash, std::uint64_t seed);
};

std::uint64_t fnv1a64(std::string_view data);
std::string to_hex(std::uint64_t v);

/// Writes `content` to `path`, creating parent directories; throws
/// std::ios_base::failure on failure.
void write_file(const std::string& path, const std::string& content);

std::string clifford_table_json(const CliffordTable& table, const Provenance* prov = nullptr);
/// Parses a table written by clifford_table_json (round-trip check).
CliffordTable clifford_table_from_json(const std::string& text);

std::string schedule_json(const DriveSchedule& schedule, const Provenance* prov = nullptr);
DriveSchedule schedule_from_json(const std::string& text);

/// CSV columns: t, delta_p, omega_p_re, omega_p_im, omega_s_re, omega_s_im.
std::string waveform_csv(const DriveSchedule& schedule, int samples);

std::string chi_json(const ChiMatrix& chi, const Provenance* prov = nullptr);
/// CSV of |chi_mn| with basis names on the header row and first column.
std::string chi_abs_csv(const ChiMatrix& chi);

std::string qpt_summary_json(const std::string& gate_label, const QptReport& report,
                             const Provenance* prov = nullptr);

std::string rb_result_json(const RBConfig& config, const RBResult& result,
                           const std::string& derived_json_key = "",
                           double derived_value = 0.0, const Provenance* prov = nullptr);
/// CSV columns: m, mean, stddev.
std::string rb_curve_csv(const std::vector<RBRecord>& records);

/// CSV columns: t plus the nine density-matrix entries as re/im pairs
/// (row-major rho_00, rho_0e, ..., rho_11).
std::string trajectory_csv(const std::vector<std::pair<double, Mat3c>>& trajectory);

std::string evolve_json(const PropagationResult& result, const Provenance* prov = nullptr);

}  // namespace holoq
