#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "skapid/error.hpp"

namespace skapid {

using VariableName = std::string;
using Symbol = std::string;
using Outcome = std::vector<Symbol>;
using VarSet = std::vector<VariableName>;

/// Tolerance on the total mass accepted by constructors.
inline constexpr double kNormalizationTolerance = 1e-9;
/// Threshold used to strip numerical dust from optimizer outputs.
inline constexpr double kOptimizerPruneEpsilon = 1e-12;

struct Event {
  Outcome outcome;
  double p = 0.0;
};

/// Finite joint probability mass function over named variables.
///
/// Only outcomes with positive mass are stored, sorted lexicographically by
/// their symbol tuples, so iteration order is reproducible. Instances are
/// immutable once built.
class JointDistribution {
 public:
  /// Validates and builds a distribution. Zero-mass events are dropped and
  /// the remaining masses are rescaled to sum to exactly one.
  static JointDistribution from_events(VarSet variables, std::vector<Event> events);

  /// Builds from an outcome -> mass map; entries at or below `epsilon` are
  /// dropped before the normalization check.
  static JointDistribution from_map(VarSet variables, const std::map<Outcome, double>& masses,
                                    double epsilon = 0.0);

  const VarSet& variables() const noexcept { return variables_; }
  const std::vector<Event>& events() const noexcept { return events_; }
  std::size_t size() const noexcept { return events_.size(); }
  std::size_t arity() const noexcept { return variables_.size(); }

  bool has_variable(std::string_view name) const noexcept;
  /// Position of `name` in variables(); throws UnknownVariable.
  std::size_t index_of(std::string_view name) const;
  std::vector<std::size_t> indices_of(const VarSet& names) const;

  /// Sorted symbols of `name` that carry positive mass.
  std::vector<Symbol> alphabet(std::string_view name) const;

  double probability(const Outcome& outcome) const;

  /// Drops events with mass <= epsilon and renormalizes.
  JointDistribution prune(double epsilon = kOptimizerPruneEpsilon) const;

  /// Same law with variables renamed position-wise.
  JointDistribution renamed(VarSet names) const;

 private:
  JointDistribution(VarSet variables, std::vector<Event> events)
      : variables_(std::move(variables)), events_(std::move(events)) {}

  VarSet variables_;
  std::vector<Event> events_;
};

bool approx_equal(const JointDistribution& a, const JointDistribution& b, double tol);

/// Conditional distribution from one alphabet to another.
class Channel {
 public:
  Channel(std::vector<Symbol> input_alphabet, std::vector<Symbol> output_alphabet,
          std::vector<std::vector<double>> rows);

  const std::vector<Symbol>& input_alphabet() const noexcept { return input_; }
  const std::vector<Symbol>& output_alphabet() const noexcept { return output_; }
  const std::vector<std::vector<double>>& rows() const noexcept { return rows_; }

  /// Row for `input`; throws AlphabetMismatch.
  const std::vector<double>& row(std::string_view input) const;

  static Channel identity(const std::vector<Symbol>& alphabet);

 private:
  std::vector<Symbol> input_;
  std::vector<Symbol> output_;
  std::vector<std::vector<double>> rows_;
};

inline const Symbol kErasure = "⊥";  // ⊥

/// Binary erasure channel on {0,1} with output alphabet {0,1,⊥}.
Channel bec(double erasure_probability);

/// Sums out every variable not in `keep`. The result lists variables in the
/// order they appear in `d`.
JointDistribution marginalize(const JointDistribution& d, const VarSet& keep);

/// Restricts to `on == value` and renormalizes over the remaining variables.
JointDistribution condition(const JointDistribution& d, std::string_view on,
                            std::string_view value);

/// Replaces `var` with the output of `ch`, drawn conditionally independently
/// of everything else given `var`. The new variable takes `var`'s position.
JointDistribution apply_channel(const JointDistribution& d, std::string_view var,
                                const Channel& ch, const VariableName& new_name);

/// Product of the single-variable marginals of `d`.
JointDistribution product_of_marginals(const JointDistribution& d);

/// Joint tuple of the variables at `idx` for one outcome.
Outcome project(const Outcome& outcome, const std::vector<std::size_t>& idx);

/// Joins a symbol tuple into a single display/key string ("a,b,c").
std::string join_symbols(const Outcome& symbols);

}  // namespace skapid
