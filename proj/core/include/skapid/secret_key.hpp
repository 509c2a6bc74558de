#pragma once

#include <cstddef>
#include <optional>

#include "skapid/distribution.hpp"
#include "skapid/optimizer.hpp"

namespace skapid {

/// Witness for the one-way rate: K is drawn from A's tuple, C from K, so the
/// Markov chain C - K - A - BE holds by construction. |K| <= |A| and
/// |C| <= |A|^2 where |A| counts A's supported tuples.
struct OneWayParametrization {
  Channel k_given_a;
  Channel c_given_k;
};

struct RateBounds {
  double lower = 0.0;
  double upper = 0.0;
  bool exact = false;
};

/// Outcome of one optimizer run. `value` is the reported rate; `objective`
/// is the raw objective at the returned witness before any clamping.
struct SkarResult {
  double value = 0.0;
  double objective = 0.0;
  RateBounds bounds;
  bool converged = false;
  std::size_t restarts_used = 0;
  std::size_t best_restart_index = 0;
  std::optional<OneWayParametrization> one_way;  // set by skar_one_way
  std::optional<Channel> eve_channel;            // set by intrinsic_mutual_information
};

/// One-way rate with A as the only communicating party:
///   max over K, C of I(B:K|C) - I(E:K|C),
/// searched by projected gradient ascent from the constant-K scheme, every
/// deterministic corner (when |A| <= 4) and cfg.restarts Dirichlet starts.
/// Never negative since the constant-K scheme achieves 0.
SkarResult skar_one_way(const JointDistribution& d, const VarSet& a, const VarSet& b,
                        const VarSet& e, const OptimizerConfig& cfg = {});

/// min over p(ebar|e) of I(A:B|Ebar). The identity and constant channels are
/// always among the starting points, so the result never exceeds I(A:B|E)
/// or I(A:B).
SkarResult intrinsic_mutual_information(const JointDistribution& d, const VarSet& a,
                                        const VarSet& b, const VarSet& e,
                                        const OptimizerConfig& cfg = {});

struct TwoWayResult {
  RateBounds bounds;
  SkarResult a_to_b;     // A communicates
  SkarResult b_to_a;     // B communicates
  SkarResult intrinsic;  // upper bound
  bool converged() const { return a_to_b.converged && b_to_a.converged && intrinsic.converged; }
};

/// Lower bound: the better of the two one-way rates. Upper bound: intrinsic
/// mutual information.
TwoWayResult skar_two_way_bounds(const JointDistribution& d, const VarSet& a, const VarSet& b,
                                 const VarSet& e, const OptimizerConfig& cfg = {});

/// I(B:K|C) - I(E:K|C) evaluated on the joint distribution induced by `w`.
double one_way_objective(const JointDistribution& d, const VarSet& a, const VarSet& b,
                         const VarSet& e, const OneWayParametrization& w);

/// I(A:B|Ebar) for the eavesdropper channel `ch` applied to E's tuples.
double intrinsic_objective(const JointDistribution& d, const VarSet& a, const VarSet& b,
                           const VarSet& e, const Channel& ch);

}  // namespace skapid
