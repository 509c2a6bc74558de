#pragma once

#include <span>

#include "skapid/distribution.hpp"

// Classical information measures. Everything is in bits.
namespace skapid {

/// Values this far below zero are floating-point noise and read as zero.
inline constexpr double kNegativeClampTolerance = 1e-12;

/// -sum p log2 p with 0 log 0 = 0.
double entropy_of(std::span<const double> masses);

double entropy(const JointDistribution& d, const VarSet& vars);
double entropy(const JointDistribution& d);

/// H(X|Y) = H(XY) - H(Y). `given` may be empty.
double conditional_entropy(const JointDistribution& d, const VarSet& vars, const VarSet& given);

double mutual_information(const JointDistribution& d, const VarSet& x, const VarSet& y);

/// I(X:Y|Z). An empty Z reduces to mutual_information.
double conditional_mutual_information(const JointDistribution& d, const VarSet& x,
                                      const VarSet& y, const VarSet& z);

/// D(p||q). Both distributions must be over the same variable list; throws
/// SupportViolation when p puts mass where q has none.
double relative_entropy(const JointDistribution& p, const JointDistribution& q);

/// Clamps [-kNegativeClampTolerance, 0) to 0; anything more negative is a
/// logic error and throws.
double clamp_nonnegative(double value, std::string_view what);

/// Throws OverlappingSets if any two of the sets share a variable.
void require_disjoint(std::initializer_list<const VarSet*> sets);

}  // namespace skapid
