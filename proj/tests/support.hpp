#pragma once

#include <map>
#include <string>
#include <vector>

#include "skapid/distribution.hpp"
#include "skapid/secret_key.hpp"
#include "skapid/shannon.hpp"

namespace skapid::testing {

inline JointDistribution dist(VarSet vars, std::vector<Event> events) {
  return JointDistribution::from_events(std::move(vars), std::move(events));
}

// Joint over the original variables plus K and C, built by sampling the
// certificate channels directly. Used to re-evaluate one-way rates through
// plain entropy calls instead of the optimizer's dense tables.
inline JointDistribution extend_one_way(const JointDistribution& d, const VarSet& a,
                                        const OneWayParametrization& w) {
  const auto ia = d.indices_of(a);
  std::map<Outcome, double> masses;
  for (const auto& ev : d.events()) {
    const auto& krow = w.k_given_a.row(join_symbols(project(ev.outcome, ia)));
    for (std::size_t k = 0; k < krow.size(); ++k) {
      if (krow[k] == 0.0) continue;
      const auto& ksym = w.k_given_a.output_alphabet()[k];
      const auto& crow = w.c_given_k.row(ksym);
      for (std::size_t c = 0; c < crow.size(); ++c) {
        if (crow[c] == 0.0) continue;
        Outcome o = ev.outcome;
        o.push_back(ksym);
        o.push_back(w.c_given_k.output_alphabet()[c]);
        masses[o] += ev.p * krow[k] * crow[c];
      }
    }
  }
  VarSet vars = d.variables();
  vars.push_back("__K");
  vars.push_back("__C");
  return JointDistribution::from_map(vars, masses);
}

inline double certificate_one_way(const JointDistribution& d, const VarSet& a, const VarSet& b,
                                  const VarSet& e, const OneWayParametrization& w) {
  const auto x = extend_one_way(d, a, w);
  const double gain = conditional_mutual_information(x, b, {"__K"}, {"__C"});
  const double leak = e.empty() ? 0.0 : conditional_mutual_information(x, e, {"__K"}, {"__C"});
  return gain - leak;
}

inline double certificate_intrinsic(const JointDistribution& d, const VarSet& a, const VarSet& b,
                                    const VarSet& e, const Channel& ch) {
  const auto ie = d.indices_of(e);
  std::map<Outcome, double> masses;
  for (const auto& ev : d.events()) {
    const auto& row = ch.row(join_symbols(project(ev.outcome, ie)));
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] == 0.0) continue;
      Outcome o = ev.outcome;
      o.push_back(ch.output_alphabet()[j]);
      masses[o] += ev.p * row[j];
    }
  }
  VarSet vars = d.variables();
  vars.push_back("__Ebar");
  const auto x = JointDistribution::from_map(vars, masses);
  return conditional_mutual_information(x, a, b, {"__Ebar"});
}

}  // namespace skapid::testing
