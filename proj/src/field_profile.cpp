#include "gdl/field_profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gdl/errors.hpp"

namespace gdl {

std::string to_string(FieldKind kind) {
  switch (kind) {
    case FieldKind::Damage: return "damage";
    case FieldKind::Gamma2: return "gamma2";
    case FieldKind::DrivingForce: return "Y";
    case FieldKind::Threshold: return "Yc";
    case FieldKind::Traction: return "traction";
  }
  return "?";
}

void FieldProfile::check() const {
  if (x.size() != values.size()) throw InconsistencyError("profile abscissae and values differ in length");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(values[i])) {
      throw InconsistencyError("non-finite sample in " + to_string(kind) + " profile");
    }
    if (i > 0 && !(x[i] > x[i - 1])) {
      throw InconsistencyError("profile abscissae not strictly increasing");
    }
  }
}

double FieldProfile::max_value() const {
  if (values.empty()) return 0.0;
  return *std::max_element(values.begin(), values.end());
}

std::vector<double> sample_grid(double a, double b, int n, const std::vector<double>& breakpoints) {
  if (n < 2) throw std::invalid_argument("at least two samples are required");
  if (!(b > a)) throw std::invalid_argument("empty sampling interval");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(n) + breakpoints.size());
  for (int i = 0; i < n; ++i) {
    grid.push_back(i == n - 1 ? b : a + (b - a) * static_cast<double>(i) / (n - 1));
  }
  for (double p : breakpoints) {
    if (p > a && p < b) grid.push_back(p);
  }
  std::sort(grid.begin(), grid.end());
  const double merge = 1e-12 * (b - a);
  std::vector<double> out;
  out.reserve(grid.size());
  for (double v : grid) {
    if (out.empty() || v - out.back() > merge) out.push_back(v);
  }
  // Breakpoints are kept bit-exact even when a uniform point absorbed them.
  for (double p : breakpoints) {
    if (!(p > a && p < b)) continue;
    auto it = std::lower_bound(out.begin(), out.end(), p - merge);
    if (it != out.end() && std::abs(*it - p) <= merge) *it = p;
  }
  out.front() = a;
  out.back() = b;
  return out;
}

}  // namespace gdl
