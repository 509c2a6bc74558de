#include "skapid/gacs_korner.hpp"

#include <numeric>
#include <vector>

#include "dense.hpp"
#include "skapid/shannon.hpp"

namespace skapid {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x != y) parent_[std::max(x, y)] = std::min(x, y);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

MeetAssignment meet(const JointDistribution& d, const VarSet& a, const VarSet& b) {
  if (a.empty() || b.empty()) throw Error(ErrorKind::InvalidArgument, "meet needs non-empty groups");
  require_disjoint({&a, &b});
  const auto ga = detail::make_group(d, a);
  const auto gb = detail::make_group(d, b);
  const std::size_t na = ga.symbols.size();

  // Nodes 0..na-1 are A tuples, na.. are B tuples.
  DisjointSets sets(na + gb.symbols.size());
  for (const auto& e : d.events()) sets.unite(ga.index(e.outcome), na + gb.index(e.outcome));

  MeetAssignment m;
  std::map<std::size_t, int> label_of_root;
  for (const auto& e : d.events()) {
    const std::size_t ia = ga.index(e.outcome);
    const std::size_t ib = gb.index(e.outcome);
    auto [it, fresh] = label_of_root.try_emplace(sets.find(ia), m.components);
    if (fresh) ++m.components;
    m.a_component[ga.symbols[ia]] = it->second;
    m.b_component[gb.symbols[ib]] = it->second;
  }
  return m;
}

double skar_no_comm(const JointDistribution& d, const VarSet& a, const VarSet& b,
                    const VarSet& e) {
  require_disjoint({&a, &b, &e});
  const auto m = meet(d, a, b);
  const auto pos_a = d.indices_of(a);
  const auto pos_e = d.indices_of(e);

  std::map<std::pair<int, Outcome>, double> joint;
  std::map<Outcome, double> eve;
  for (const auto& ev : d.events()) {
    const int label = m.a_component.at(project(ev.outcome, pos_a));
    auto es = project(ev.outcome, pos_e);
    joint[{label, es}] += ev.p;
    eve[es] += ev.p;
  }
  std::vector<double> pj, pe;
  for (const auto& [k, p] : joint) pj.push_back(p);
  for (const auto& [k, p] : eve) pe.push_back(p);
  return clamp_nonnegative(entropy_of(pj) - entropy_of(pe), "no-communication rate");
}

}  // namespace skapid
