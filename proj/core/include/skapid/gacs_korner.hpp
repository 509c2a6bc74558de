#pragma once

#include <map>

#include "skapid/distribution.hpp"

namespace skapid {

/// Component labels of the Gács-Körner common variable of two variable
/// groups. Two tuples share a label iff they are connected in the bipartite
/// graph whose edges are the (a, b) pairs with positive mass. Labels are
/// 0..k-1 in order of first appearance over the sorted outcomes.
struct MeetAssignment {
  std::map<Outcome, int> a_component;
  std::map<Outcome, int> b_component;
  int components = 0;
};

MeetAssignment meet(const JointDistribution& d, const VarSet& a, const VarSet& b);

/// No-communication secret key agreement rate S(A:B||E) = H[A meet B | E].
double skar_no_comm(const JointDistribution& d, const VarSet& a, const VarSet& b,
                    const VarSet& e);

}  // namespace skapid
