#include "skapid/catalog.hpp"

#include <algorithm>

namespace skapid::catalog {

namespace {

const VarSet kVars{"S0", "S1", "T"};

JointDistribution uniform_over(std::vector<Outcome> outcomes) {
  std::vector<Event> events;
  const double p = 1.0 / static_cast<double>(outcomes.size());
  for (auto& o : outcomes) events.push_back({std::move(o), p});
  return JointDistribution::from_events(kVars, std::move(events));
}

JointDistribution pointwise_unique() {
  // T is 1 or 2; exactly one source copies T, the other reads 0.
  return uniform_over({{"0", "1", "1"}, {"1", "0", "1"}, {"0", "2", "2"}, {"2", "0", "2"}});
}

JointDistribution problem() {
  // Source pairs 00, 01, 02, 10; T = 1 iff either source is 1.
  return uniform_over({{"0", "0", "0"}, {"0", "1", "1"}, {"0", "2", "0"}, {"1", "0", "1"}});
}

JointDistribution giant_bit() { return uniform_over({{"0", "0", "0"}, {"1", "1", "1"}}); }

JointDistribution gb_erased(double p) {
  JointDistribution d = giant_bit();
  const Channel erase = bec(p);
  for (const auto& v : kVars) d = apply_channel(d, v, erase, v);
  return d;
}

JointDistribution xor_gate() {
  return uniform_over({{"0", "0", "0"}, {"0", "1", "1"}, {"1", "0", "1"}, {"1", "1", "0"}});
}

}  // namespace

const std::vector<Entry>& list() {
  static const std::vector<Entry> entries{
      {"pointwise-unique", "T uniform on {1,2}; one source equals T, the other is 0", "directionality example", {}},
      {"problem", "sources in {00,01,02,10} uniformly; T = 1 iff a source is 1", "consistency counterexample", {}},
      {"giant-bit", "S0 = S1 = T = one uniform bit", "redundancy exemplar", {}},
      {"gb-erased",
       "giant bit with every variable passed through an independent BEC(p)",
       "erased redundancy; triadic structure",
       {{"p", 0.0, 1.0, 0.5, "erasure probability"}}},
      {"xor", "uniform sources, T = S0 xor S1", "synergy exemplar", {}},
  };
  return entries;
}

JointDistribution get(std::string_view name, const Params& params) {
  const auto& entries = list();
  const auto it = std::find_if(entries.begin(), entries.end(),
                               [&](const Entry& e) { return e.name == name; });
  if (it == entries.end()) {
    throw Error(ErrorKind::UnknownName, "no catalog entry named '" + std::string(name) + "'");
  }
  Params resolved;
  for (const auto& doc : it->parameters) resolved[doc.name] = doc.default_value;
  for (const auto& [key, value] : params) {
    const auto doc = std::find_if(it->parameters.begin(), it->parameters.end(),
                                  [&](const ParameterDoc& p) { return p.name == key; });
    if (doc == it->parameters.end()) {
      throw Error(ErrorKind::ParameterOutOfRange,
                  "'" + it->name + "' takes no parameter '" + key + "'");
    }
    if (!(value >= doc->min && value <= doc->max)) {
      throw Error(ErrorKind::ParameterOutOfRange,
                  key + "=" + std::to_string(value) + " outside [" + std::to_string(doc->min) + ", " +
                      std::to_string(doc->max) + "]");
    }
    resolved[key] = value;
  }

  if (name == "pointwise-unique") return pointwise_unique();
  if (name == "problem") return problem();
  if (name == "giant-bit") return giant_bit();
  if (name == "gb-erased") return gb_erased(resolved.at("p"));
  return xor_gate();
}

}  // namespace skapid::catalog
