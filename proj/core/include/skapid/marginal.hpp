#pragma once

#include <vector>

#include "skapid/distribution.hpp"
#include "skapid/optimizer.hpp"
#include "skapid/pid.hpp"

namespace skapid {

/// Distributions over base's variables whose marginals on each constraint
/// set equal base's. The feasible set lives on the Cartesian product of the
/// per-variable supports, so members may charge outcomes base does not.
struct MarginalPolytope {
  JointDistribution base;
  std::vector<VarSet> constraint_sets;

  /// Throws UnknownVariable / InvalidArgument for malformed constraint sets.
  void validate() const;

  /// Largest elementwise deviation of q's pinned marginals from base's.
  double max_violation(const JointDistribution& q) const;
};

/// Maximum-entropy member of the polytope by iterative proportional fitting,
/// starting from the uniform distribution over the product of supports and
/// cycling the constraint sets in declaration order. Throws
/// ConvergenceFailure if the pinned marginals are not matched to 1e-9.
JointDistribution maxent_with_marginals(const MarginalPolytope& poly, const OptimizerConfig& cfg = {});

/// Same as above and records D(base || q_t) after every sweep.
JointDistribution maxent_with_marginals(const MarginalPolytope& poly, const OptimizerConfig& cfg,
                                        std::vector<double>& kl_trace);

/// H[maxent with every (k-1)-subset marginal] - H[maxent with every
/// k-subset marginal]; for k equal to the variable count the second term is
/// H[d].
double connected_information(const JointDistribution& d, std::size_t order,
                             const OptimizerConfig& cfg = {});

struct BrojaResult {
  JointDistribution q_star;
  double min_mi = 0.0;
  PidComponents pid;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Minimizes I(S0 S1 : T) over distributions sharing both source-target
/// marginals with d, then reads the decomposition off the minimizer:
/// synergy = I_d(S0S1:T) - min, Ui = I_q(Si:T|Sj), redundancy by difference.
BrojaResult broja_minimize(const JointDistribution& d, const PidRoles& roles,
                           const OptimizerConfig& cfg = {});

struct EntropyReport {
  double h_original = 0.0;
  double h_broja = 0.0;
  double h_maxent = 0.0;
};

EntropyReport broja_intermediate_entropy_report(const JointDistribution& d, const PidRoles& roles,
                                                const OptimizerConfig& cfg = {});

}  // namespace skapid
