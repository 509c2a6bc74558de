#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "skapid/distribution.hpp"

namespace skapid::catalog {

struct ParameterDoc {
  std::string name;
  double min = 0.0;
  double max = 1.0;
  double default_value = 0.0;
  std::string description;
};

struct Entry {
  std::string name;
  std::string summary;
  std::string role;  // what the entry is used to demonstrate
  std::vector<ParameterDoc> parameters;
};

using Params = std::map<std::string, double>;

/// Entries in a fixed order: pointwise-unique, problem, giant-bit,
/// gb-erased, xor.
const std::vector<Entry>& list();

/// Builds a named distribution over (S0, S1, T). Throws UnknownName for an
/// unknown entry and ParameterOutOfRange for unknown or out-of-range
/// parameters; missing parameters take their defaults.
JointDistribution get(std::string_view name, const Params& params = {});

}  // namespace skapid::catalog
