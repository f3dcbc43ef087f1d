#pragma once

#include <array>
#include <optional>
#include <string>

#include "holoq/types.hpp"

namespace holoq {

/// Rotation-angle classes of the single-qubit Clifford group.
enum class RotationClass { Identity, Pi, HalfPi, TwoThirdsPi };

double rotation_class_angle(RotationClass c);
std::string rotation_class_name(RotationClass c);
RotationClass rotation_class_from_name(const std::string& name);

/// Target rotation: angle gamma about unit axis n.  gamma = 0 is reserved
/// for the identity gate; otherwise gamma lies in (0, 2*pi].
struct GateSpec {
  double gamma = 0.0;
  Eigen::Vector3d axis = Eigen::Vector3d::UnitX();
  std::optional<int> clifford_index;

  bool is_identity() const { return gamma == 0.0; }
};

/// Throws std::invalid_argument on a non-unit axis, out-of-range gamma, or
/// a clifford_index whose table entry disagrees with (gamma, axis).
void validate_gate_spec(const GateSpec& spec);

/// exp(-i gamma n.sigma / 2) on the computational basis.
Mat2c gate_unitary(const GateSpec& spec);

struct CliffordEntry {
  int index = 0;
  std::string name;
  RotationClass rotation = RotationClass::Identity;
  Eigen::Vector3d axis = Eigen::Vector3d::UnitX();
  Mat2c unitary = Mat2c::Identity();
};

/// The 24 single-qubit Clifford rotations: identity, nine pi rotations,
/// six pi/2 rotations and eight 2*pi/3 rotations about the octahedron's
/// symmetry axes.  Composition and inverse tables are resolved numerically
/// against the entries at construction, which makes the table
/// self-verifying: a corrupt entry fails closure immediately.
class CliffordTable {
 public:
  static const CliffordTable& canonical();

  /// Builds composition/inverse tables from the given entries; throws
  /// std::runtime_error if the set is not closed under composition.
  explicit CliffordTable(std::array<CliffordEntry, 24> entries);

  const std::array<CliffordEntry, 24>& entries() const { return entries_; }
  const CliffordEntry& entry(int index) const;

  GateSpec lookup(int index) const;

  /// Index k with U_k = e^{i phi} U_i U_j.
  int compose(int i, int j) const;
  int inverse(int i) const;

 private:
  std::array<CliffordEntry, 24> entries_;
  std::array<std::array<int, 24>, 24> compose_;
  std::array<int, 24> inverse_;
};

// Convenience wrappers over the canonical table.
GateSpec clifford_lookup(int index);
int clifford_compose(int i, int j);
int clifford_inverse(int i);

}  // namespace holoq
