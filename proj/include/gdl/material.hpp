#pragma once

#include <limits>
#include <string>
#include <vector>

namespace gdl {

/// Bulk and interface parameters. Rod problems use E, L, l_c, sigma_c, G_c;
/// block problems use L, l_c, G_c, k, G_0.
struct MaterialSpec {
  double E = 1.0;        ///< elastic modulus
  double L = 1.0;        ///< rod half-length or block width
  double l_c = 0.5;      ///< characteristic length of the gradient bound
  double sigma_c = 1.0;  ///< cohesive peak stress
  double G_c = 1.25;     ///< fracture energy
  double k = 1.0;        ///< interface stiffness in tension (block)
  double G_0 = 0.1;      ///< initial interface energy threshold (block)

  /// Rod parameters from the dimensionless groups: l_c = beta L,
  /// G_c = sigma_c^2 l_coh / E with l_coh = l_c / lambda.
  static MaterialSpec rod(double E, double L, double sigma_c, double lambda, double beta);

  /// Block parameters. E and sigma_c are not used by the block problem.
  static MaterialSpec block(double L, double k, double G_c, double G_0, double l_c);

  /// Throws std::invalid_argument unless every field is strictly positive.
  void validate() const;
  /// validate() plus G_c > G_0.
  void validate_block() const;
};

struct DimensionlessGroups {
  double lambda;  ///< l_c / l_coh
  double beta;    ///< l_c / L
  double l_coh;   ///< E G_c / sigma_c^2
};

DimensionlessGroups groups(const MaterialSpec& spec);

enum class Degradation { Quadratic, Linear };

enum class Threshold {
  CohesiveEquivalent,  ///< Y_c(d) equivalent to a linear-softening cohesive law
  ConstantFull,        ///< Y_c = sigma_c^2 / E
  ConstantHalf,        ///< Y_c = sigma_c^2 / (2E)
  BlockBilinear,       ///< interface threshold producing the bilinear cohesive law
};

struct ConstitutiveVariant {
  Degradation degradation = Degradation::Quadratic;
  Threshold threshold = Threshold::CohesiveEquivalent;

  /// Quadratic degradation, cohesive-equivalent threshold.
  static constexpr ConstitutiveVariant case_i() {
    return {Degradation::Quadratic, Threshold::CohesiveEquivalent};
  }
  /// Quadratic degradation, Y_c = sigma_c^2/E.
  static constexpr ConstitutiveVariant case_ii() {
    return {Degradation::Quadratic, Threshold::ConstantFull};
  }
  /// Linear degradation, Y_c = sigma_c^2/(2E).
  static constexpr ConstitutiveVariant case_iii() {
    return {Degradation::Linear, Threshold::ConstantHalf};
  }
  static constexpr ConstitutiveVariant block() {
    return {Degradation::Quadratic, Threshold::BlockBilinear};
  }

  friend constexpr bool operator==(const ConstitutiveVariant&, const ConstitutiveVariant&) = default;
};

/// "i", "ii", "iii" or "block".
std::string to_string(const ConstitutiveVariant& variant);
/// Inverse of to_string; throws std::invalid_argument on unknown names.
ConstitutiveVariant parse_variant(const std::string& name);

// Degradation function and its analytic derivatives. All throw DomainError
// for d outside [0, 1].
double omega(Degradation kind, double d);
double omega_prime(Degradation kind, double d);
double omega_second(Degradation kind, double d);

/// Energy-release threshold Y_c(d). The cohesive-equivalent branch takes its
/// limit value at d = 1.
double y_c(const ConstitutiveVariant& variant, const MaterialSpec& spec, double d);

/// dY_c/dd, analytic.
double y_c_prime(const ConstitutiveVariant& variant, const MaterialSpec& spec, double d);

/// Closed-form antiderivative H(d) = integral of Y_c from 0 to d.
double y_c_integral(const ConstitutiveVariant& variant, const MaterialSpec& spec, double d);

/// Local stability margin Y_c w'' - Y_c' w'; positive means locally stable.
double stability_margin(const ConstitutiveVariant& variant, const MaterialSpec& spec, double d);

/// Strain-softening margin [Y_c' w^2 + 2 Y_c w w'] w' - Y_c w^2 w''; positive
/// means the complementary energy decreases with damage.
double softening_margin(const ConstitutiveVariant& variant, const MaterialSpec& spec, double d);

/// Upper bound on lambda from local stability for the cohesive-equivalent
/// threshold with quadratic degradation. Returns +inf at d = 0, 1/2 at d = 1.
double stability_bound_lambda(double d);

/// Upper bound on lambda from the strain-softening condition for the same
/// pairing: (1 + (1-d)^2) / (2 d^2). Returns +inf at d = 0.
double softening_bound_lambda(double d);

/// The bound (1 + (1-d)^2) / (2 d) in the form commonly quoted for this
/// model. It is stricter than softening_bound_lambda for d < 1 and agrees at d = 1.
double softening_bound_lambda_quoted(double d);

/// True when lambda lies in the closure of the admissible region
/// (both bounds satisfied for every d in (0, 1]).
bool lambda_admissible(double lambda);

enum class SnapbackKind {
  Stable,          ///< u* increasing along the whole localized branch
  SnapBackAtOnset, ///< u* decreases right after the elastic limit
  SnapBackWindow,  ///< snap-back at onset and again past a second divergence point
};

std::string to_string(SnapbackKind kind);

struct SnapbackAssessment {
  SnapbackKind kind;
  /// Values of d_m where the critical beta diverges.
  std::vector<double> divergence_points;
};

/// Right-hand side of the displacement-control stability condition: the
/// response is locally stable at d_m iff beta exceeds the returned value.
/// +inf where no beta suffices.
double critical_beta(const ConstitutiveVariant& variant, double lambda, double d_m);

SnapbackAssessment snapback_predicate(const ConstitutiveVariant& variant, double beta, double lambda);

/// Root of 3 d + ln(1 - d) = 0 in (0, 1), approx. 0.94048.
double linear_degradation_second_divergence();

}  // namespace gdl
