#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "holoq/io.hpp"

using namespace holoq;

TEST_SUITE_BEGIN("io");

TEST_CASE("clifford table json round trip reproduces identical unitaries") {
  const auto& table = CliffordTable::canonical();
  const std::string text = clifford_table_json(table);
  const CliffordTable reloaded = clifford_table_from_json(text);
  for (int k = 0; k < 24; ++k) {
    CHECK(reloaded.entry(k).name == table.entry(k).name);
    CHECK((reloaded.entry(k).unitary - table.entry(k).unitary).cwiseAbs().maxCoeff() == 0.0);
    CHECK(reloaded.entry(k).rotation == table.entry(k).rotation);
  }
  const auto doc = nlohmann::json::parse(text);
  CHECK(doc["entries"].size() == 24);
  CHECK(doc["entries"][19]["name"] == "H");
  CHECK(doc["entries"][19]["axis"][0].get<double>() ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(doc["entries"][0]["rotation_class"] == "identity");
}

TEST_CASE("a tampered table fails the closure self-check on reload") {
  auto doc = nlohmann::json::parse(clifford_table_json(CliffordTable::canonical()));
  doc["entries"][8]["unitary"][0][0] = 0.9;  // corrupt one entry
  CHECK_THROWS_AS(clifford_table_from_json(doc.dump()), std::runtime_error);
}

TEST_CASE("schedule json round trip") {
  const DriveSchedule s = synthesize(clifford_lookup(8), 100e-9);
  const DriveSchedule r = schedule_from_json(schedule_json(s));
  CHECK(r.alpha == s.alpha);
  CHECK(r.theta == s.theta);
  CHECK(r.phi == s.phi);
  CHECK(r.omega0 == s.omega0);
  CHECK(r.tau == s.tau);
  CHECK(r.shape == s.shape);
  CHECK(r.is_idle == s.is_idle);
}

TEST_CASE("waveform csv carries the drive columns") {
  const DriveSchedule s = synthesize(clifford_lookup(12), 100e-9);
  const std::string csv = waveform_csv(s, 5);
  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "t,delta_p,omega_p_re,omega_p_im,omega_s_re,omega_s_im");
  int rows = 0;
  for (std::string line; std::getline(lines, line);) ++rows;
  CHECK(rows == 5);
}

TEST_CASE("chi json declares basis and normalization") {
  const ChiMatrix chi = chi_from_unitary(Mat3c::Identity());
  const auto doc = nlohmann::json::parse(chi_json(chi));
  CHECK(doc["basis"].size() == 9);
  CHECK(doc["basis"][0] == "I01");
  CHECK(doc["basis"][8] == "Ie");
  CHECK(doc["entries"].size() == 81);
  // identity process: chi_00 = 2/3 under the unit-trace convention
  CHECK(doc["entries"][0][0].get<double>() == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

  const std::string csv = chi_abs_csv(chi);
  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  CHECK(header.rfind("basis,I01,", 0) == 0);
}

TEST_CASE("rb result json layout") {
  RBConfig cfg;
  cfg.noise = NoiseModel::disabled();
  cfg.m_values = {1, 2, 4};
  cfg.k = 2;
  cfg.steps = 500;
  const RBResult result = run_rb(cfg);
  const auto doc = nlohmann::json::parse(rb_result_json(cfg, result, "r", 0.0));
  CHECK(doc["config"]["k"] == 2);
  CHECK(doc["records"].size() == 3);
  CHECK(doc["records"][0]["survival"].size() == 2);
  CHECK(doc["fit"].contains("p"));
  CHECK(doc["derived"].contains("r"));

  const std::string csv = rb_curve_csv(result.records);
  CHECK(csv.rfind("m,mean,stddev\n", 0) == 0);
}

TEST_CASE("provenance block and hashing") {
  CHECK(fnv1a64("") == 0xCBF29CE484222325ULL);
  CHECK(fnv1a64("a") != fnv1a64("b"));
  CHECK(to_hex(0x1234ULL).size() == 16);

  const Provenance prov = Provenance::make("deadbeef", 7);
  const auto doc = nlohmann::json::parse(schedule_json(synthesize(clifford_lookup(1), 1e-7), &prov));
  CHECK(doc["provenance"]["config_hash"] == "deadbeef");
  CHECK(doc["provenance"]["seed"] == 7);
  CHECK(doc["provenance"]["version"] == std::string(kVersion));
  CHECK(doc["provenance"]["timestamp"].get<std::string>().size() == 20);
}

TEST_CASE("trajectory csv has one re/im pair per density entry") {
  const DriveSchedule s = synthesize(clifford_lookup(19), 100e-9);
  const auto res = propagate_lindblad(s, NoiseModel::disabled(),
                                      Vec3c::Unit(0) * Vec3c::Unit(0).adjoint(), 2000, 10);
  const std::string csv = trajectory_csv(res.trajectory);
  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  int commas = 0;
  for (char c : header) commas += c == ',';
  CHECK(commas == 18);  // t + 9 entries x (re, im)
}

TEST_SUITE_END();
