#include "holoq/clifford.hpp"

#include <cmath>

namespace holoq {

namespace {

constexpr double kComposeTol = 1e-9;

Mat2c axis_angle_unitary(double gamma, const Eigen::Vector3d& axis) {
  return std::cos(gamma / 2) * Mat2c::Identity() - cxd(0, 1) * std::sin(gamma / 2) * pauli_dot(axis);
}

CliffordEntry make_entry(int index, std::string name, RotationClass cls, Eigen::Vector3d axis) {
  CliffordEntry e;
  e.index = index;
  e.name = std::move(name);
  e.rotation = cls;
  e.axis = axis.normalized();
  e.unitary = axis_angle_unitary(rotation_class_angle(cls), e.axis);
  return e;
}

std::array<CliffordEntry, 24> canonical_entries() {
  using RC = RotationClass;
  std::array<CliffordEntry, 24> t;
  t[0] = make_entry(0, "I", RC::Identity, {1, 0, 0});
  // pi rotations: octahedron vertices and edge midpoints.
  t[1] = make_entry(1, "X", RC::Pi, {1, 0, 0});
  t[2] = make_entry(2, "Y", RC::Pi, {0, 1, 0});
  t[3] = make_entry(3, "Z", RC::Pi, {0, 0, 1});
  t[18] = make_entry(18, "C18", RC::Pi, {1, 0, -1});
  t[19] = make_entry(19, "H", RC::Pi, {1, 0, 1});
  t[20] = make_entry(20, "C20", RC::Pi, {0, 1, 1});
  t[21] = make_entry(21, "C21", RC::Pi, {0, 1, -1});
  t[22] = make_entry(22, "C22", RC::Pi, {1, 1, 0});
  t[23] = make_entry(23, "C23", RC::Pi, {1, -1, 0});
  // 2*pi/3 rotations about the face diagonals.
  t[4] = make_entry(4, "C4", RC::TwoThirdsPi, {1, 1, -1});
  t[5] = make_entry(5, "C5", RC::TwoThirdsPi, {1, -1, 1});
  t[6] = make_entry(6, "C6", RC::TwoThirdsPi, {-1, 1, 1});
  t[7] = make_entry(7, "C7", RC::TwoThirdsPi, {-1, -1, -1});
  t[8] = make_entry(8, "C8", RC::TwoThirdsPi, {1, 1, 1});
  t[9] = make_entry(9, "C9", RC::TwoThirdsPi, {-1, 1, -1});
  t[10] = make_entry(10, "C10", RC::TwoThirdsPi, {1, -1, -1});
  t[11] = make_entry(11, "C11", RC::TwoThirdsPi, {-1, -1, 1});
  // pi/2 rotations about the signed coordinate axes.
  t[12] = make_entry(12, "X/2", RC::HalfPi, {1, 0, 0});
  t[13] = make_entry(13, "-X/2", RC::HalfPi, {-1, 0, 0});
  t[14] = make_entry(14, "Y/2", RC::HalfPi, {0, 1, 0});
  t[15] = make_entry(15, "-Y/2", RC::HalfPi, {0, -1, 0});
  t[16] = make_entry(16, "Z/2", RC::HalfPi, {0, 0, 1});
  t[17] = make_entry(17, "-Z/2", RC::HalfPi, {0, 0, -1});
  return t;
}

}  // namespace

double rotation_class_angle(RotationClass c) {
  switch (c) {
    case RotationClass::Identity: return 0.0;
    case RotationClass::Pi: return kPi;
    case RotationClass::HalfPi: return kPi / 2;
    case RotationClass::TwoThirdsPi: return 2 * kPi / 3;
  }
  throw std::invalid_argument("rotation_class_angle: bad class");
}

std::string rotation_class_name(RotationClass c) {
  switch (c) {
    case RotationClass::Identity: return "identity";
    case RotationClass::Pi: return "pi";
    case RotationClass::HalfPi: return "pi/2";
    case RotationClass::TwoThirdsPi: return "2pi/3";
  }
  throw std::invalid_argument("rotation_class_name: bad class");
}

RotationClass rotation_class_from_name(const std::string& name) {
  if (name == "identity") return RotationClass::Identity;
  if (name == "pi") return RotationClass::Pi;
  if (name == "pi/2") return RotationClass::HalfPi;
  if (name == "2pi/3") return RotationClass::TwoThirdsPi;
  throw std::invalid_argument("rotation_class_from_name: unknown class '" + name + "'");
}

void validate_gate_spec(const GateSpec& spec) {
  if (std::abs(spec.axis.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("GateSpec: axis is not a unit vector");
  if (spec.gamma < 0.0 || spec.gamma > 2 * kPi + 1e-12)
    throw std::invalid_argument("GateSpec: gamma outside [0, 2*pi]");
  if (spec.clifford_index) {
    const int i = *spec.clifford_index;
    if (i < 0 || i >= 24) throw std::invalid_argument("GateSpec: clifford index out of range");
    const Mat2c u = axis_angle_unitary(spec.gamma, spec.axis);
    if (phase_invariant_distance(u, CliffordTable::canonical().entry(i).unitary) > kComposeTol)
      throw std::invalid_argument("GateSpec: unitary disagrees with stored clifford index");
  }
}

Mat2c gate_unitary(const GateSpec& spec) {
  validate_gate_spec(spec);
  return axis_angle_unitary(spec.gamma, spec.axis);
}

CliffordTable::CliffordTable(std::array<CliffordEntry, 24> entries) : entries_(std::move(entries)) {
  auto find = [&](const Mat2c& u) {
    for (int k = 0; k < 24; ++k)
      if (phase_invariant_distance(u, entries_[k].unitary) < kComposeTol) return k;
    throw std::runtime_error("CliffordTable: product not in table (corrupted entries)");
  };
  for (int i = 0; i < 24; ++i)
    for (int j = 0; j < 24; ++j) compose_[i][j] = find(entries_[i].unitary * entries_[j].unitary);
  for (int i = 0; i < 24; ++i) {
    inverse_[i] = find(entries_[i].unitary.adjoint());
    if (compose_[i][inverse_[i]] != 0)
      throw std::runtime_error("CliffordTable: inverse check failed");
  }
}

const CliffordTable& CliffordTable::canonical() {
  static const CliffordTable table(canonical_entries());
  return table;
}

const CliffordEntry& CliffordTable::entry(int index) const {
  if (index < 0 || index >= 24) throw std::invalid_argument("CliffordTable: index out of range");
  return entries_[static_cast<std::size_t>(index)];
}

GateSpec CliffordTable::lookup(int index) const {
  const CliffordEntry& e = entry(index);
  GateSpec spec;
  spec.gamma = rotation_class_angle(e.rotation);
  spec.axis = e.axis;
  spec.clifford_index = index;
  return spec;
}

int CliffordTable::compose(int i, int j) const {
  entry(i);
  entry(j);
  return compose_[i][j];
}

int CliffordTable::inverse(int i) const {
  entry(i);
  return inverse_[i];
}

GateSpec clifford_lookup(int index) { return CliffordTable::canonical().lookup(index); }
int clifford_compose(int i, int j) { return CliffordTable::canonical().compose(i, j); }
int clifford_inverse(int i) { return CliffordTable::canonical().inverse(i); }

}  // namespace holoq
