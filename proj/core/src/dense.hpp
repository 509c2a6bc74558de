#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "skapid/distribution.hpp"

namespace skapid::detail {

/// Indexes the supported tuples of one variable group.
struct GroupIndex {
  VarSet names;
  std::vector<std::size_t> positions;
  std::vector<Outcome> symbols;  // sorted
  std::map<Outcome, std::size_t> lookup;

  std::size_t size() const { return symbols.empty() ? 1 : symbols.size(); }

  std::size_t index(const Outcome& full) const {
    if (positions.empty()) return 0;
    return lookup.at(project(full, positions));
  }
};

inline GroupIndex make_group(const JointDistribution& d, const VarSet& names) {
  GroupIndex g;
  g.names = names;
  g.positions = d.indices_of(names);
  if (g.positions.empty()) return g;
  std::map<Outcome, std::size_t> seen;
  for (const auto& e : d.events()) seen.emplace(project(e.outcome, g.positions), 0);
  std::size_t i = 0;
  for (auto& [sym, idx] : seen) {
    idx = i++;
    g.symbols.push_back(sym);
  }
  g.lookup = std::move(seen);
  return g;
}

/// Dense p(a, b, e) over the supported tuples of three groups. An empty group
/// contributes a single dummy index.
struct TripleTable {
  GroupIndex a, b, e;
  std::vector<double> p;  // row-major [a][b][e]

  std::size_t na() const { return a.size(); }
  std::size_t nb() const { return b.size(); }
  std::size_t ne() const { return e.size(); }
  double at(std::size_t i, std::size_t j, std::size_t k) const { return p[(i * nb() + j) * ne() + k]; }
};

inline TripleTable make_triple(const JointDistribution& d, const VarSet& a, const VarSet& b,
                               const VarSet& e) {
  TripleTable t{make_group(d, a), make_group(d, b), make_group(d, e), {}};
  t.p.assign(t.na() * t.nb() * t.ne(), 0.0);
  for (const auto& ev : d.events()) {
    const std::size_t i = t.a.index(ev.outcome);
    const std::size_t j = t.b.index(ev.outcome);
    const std::size_t k = t.e.index(ev.outcome);
    t.p[(i * t.nb() + j) * t.ne() + k] += ev.p;
  }
  return t;
}

}  // namespace skapid::detail
