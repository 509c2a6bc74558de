#pragma once

#include <optional>
#include <string_view>

#include "skapid/distribution.hpp"
#include "skapid/optimizer.hpp"
#include "skapid/secret_key.hpp"

namespace skapid {

/// Which secret key agreement rate (or the BROJA measure) plays the role of
/// unique information.
enum class PidScheme {
  NoComm,          // neither party talks
  CamelOneWay,     // the source talks
  ElephantOneWay,  // the target talks
  TwoWay,          // both talk; only bounds are available
  Broja,
};

std::string_view to_string(PidScheme scheme) noexcept;
/// Accepts the CLI spellings: none, camel, elephant, two-way, broja.
PidScheme parse_scheme(std::string_view name);

/// Closed interval; point values have lo == hi.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  static Interval point(double v) { return {v, v}; }
  bool is_point() const { return lo == hi; }
  double mid() const { return 0.5 * (lo + hi); }
};

/// Redundancy, the two unique informations and synergy of a two-source
/// decomposition of I(S0 S1 : T).
struct PidComponents {
  Interval redundancy;
  Interval unique_0;  // S0 with respect to S1
  Interval unique_1;
  Interval synergy;
  PidScheme scheme = PidScheme::ElephantOneWay;
  bool consistent = false;
  /// Distance by which the uniques miss U0 + I(S1:T) = U1 + I(S0:T).
  double residual = 0.0;
  /// Redundancy implied by I(S0:T) - U0 and by I(S1:T) - U1.
  Interval redundancy_via_0;
  Interval redundancy_via_1;
  double mi_0 = 0.0;
  double mi_1 = 0.0;
  double mi_joint = 0.0;
  /// A component in (-tol, 0) was raised to zero.
  bool clamped = false;
  bool converged = true;
};

/// Thrown when the unique informations overconstrain the decomposition. The
/// partial record keeps both candidate redundancies.
class InconsistentDecomposition : public Error {
 public:
  InconsistentDecomposition(const std::string& message, PidComponents partial)
      : Error(ErrorKind::InconsistentDecomposition, message), partial_(std::move(partial)) {}

  const PidComponents& partial() const noexcept { return partial_; }

 private:
  PidComponents partial_;
};

/// Consistency tolerance for the optimizer-backed schemes.
inline constexpr double kDefaultConsistencyTol = 1e-3;
/// Consistency tolerance for the convex BROJA scheme.
inline constexpr double kBrojaConsistencyTol = 1e-6;

/// Builds the decomposition from point-valued uniques. Redundancy is
/// I(S0:T) - U0 and synergy I(S0S1:T) - I(S1:T) - U0.
PidComponents assemble(double unique_0, double unique_1, double mi_0, double mi_1, double mi_joint,
                       double tol, PidScheme scheme = PidScheme::ElephantOneWay);

/// Interval version used for the two-way scheme: consistent iff some point
/// in the two unique-information rectangles satisfies the consistency
/// relation with nonnegative redundancy and synergy.
PidComponents assemble_bounds(const RateBounds& unique_0, const RateBounds& unique_1, double mi_0,
                              double mi_1, double mi_joint, double tol);

struct PidRoles {
  VariableName source_0 = "S0";
  VariableName source_1 = "S1";
  VariableName target = "T";
};

/// Computes both unique informations under `scheme` and assembles the
/// decomposition. `tol` defaults per scheme.
PidComponents decompose(const JointDistribution& d, const PidRoles& roles, PidScheme scheme,
                        const OptimizerConfig& cfg = {}, std::optional<double> tol = {});

/// I(Si:T|Sj) should equal Ui + synergy for a consistent decomposition.
struct CmiIdentityReport {
  double cmi_0 = 0.0;  // I(S0:T|S1)
  double cmi_1 = 0.0;
  double defect_0 = 0.0;  // cmi_0 - (U0 + S)
  double defect_1 = 0.0;
};

CmiIdentityReport cmi_identity_report(const JointDistribution& d, const PidRoles& roles,
                                      const PidComponents& pid);

}  // namespace skapid
