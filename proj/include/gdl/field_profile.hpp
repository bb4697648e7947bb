#pragma once

#include <string>
#include <vector>

namespace gdl {

enum class FieldKind { Damage, Gamma2, DrivingForce, Threshold, Traction };

std::string to_string(FieldKind kind);

/// Sampled field along the bar or the interface.
struct FieldProfile {
  FieldKind kind = FieldKind::Damage;
  std::vector<double> x;
  std::vector<double> values;
  /// Value of the driving parameter (d_m, l_m or c) the profile belongs to.
  double parameter = 0.0;

  std::size_t size() const { return x.size(); }

  /// Throws InconsistencyError unless x is strictly increasing and every
  /// value is finite.
  void check() const;

  double max_value() const;
};

/// n uniformly spaced points on [a, b] merged with the given breakpoints
/// (those inside [a, b]); the result is sorted and free of near-duplicates.
std::vector<double> sample_grid(double a, double b, int n, const std::vector<double>& breakpoints = {});

}  // namespace gdl
