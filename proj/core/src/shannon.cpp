#include "skapid/shannon.hpp"

#include <cmath>
#include <set>
#include <vector>

namespace skapid {

double entropy_of(std::span<const double> masses) {
  double h = 0.0;
  for (double p : masses) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

double entropy(const JointDistribution& d, const VarSet& vars) {
  if (vars.empty()) return 0.0;
  const auto m = marginalize(d, vars);
  std::vector<double> masses;
  masses.reserve(m.size());
  for (const auto& e : m.events()) masses.push_back(e.p);
  return clamp_nonnegative(entropy_of(masses), "entropy");
}

double entropy(const JointDistribution& d) {
  std::vector<double> masses;
  masses.reserve(d.size());
  for (const auto& e : d.events()) masses.push_back(e.p);
  return clamp_nonnegative(entropy_of(masses), "entropy");
}

namespace {

VarSet unite(const VarSet& a, const VarSet& b) {
  VarSet out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

void require_nonempty(const VarSet& s, std::string_view what) {
  if (s.empty()) throw Error(ErrorKind::InvalidArgument, std::string(what) + " must be non-empty");
}

}  // namespace

void require_disjoint(std::initializer_list<const VarSet*> sets) {
  std::set<VariableName> seen;
  for (const VarSet* s : sets) {
    std::set<VariableName> local(s->begin(), s->end());
    for (const auto& v : local) {
      if (!seen.insert(v).second) {
        throw Error(ErrorKind::OverlappingSets, "variable '" + v + "' appears in more than one set");
      }
    }
  }
}

double clamp_nonnegative(double value, std::string_view what) {
  if (value >= 0.0) return value;
  if (value >= -kNegativeClampTolerance) return 0.0;
  throw Error(ErrorKind::InvalidArgument,
              "internal error: " + std::string(what) + " evaluated to " + std::to_string(value));
}

double conditional_entropy(const JointDistribution& d, const VarSet& vars, const VarSet& given) {
  return clamp_nonnegative(entropy(d, unite(vars, given)) - entropy(d, given),
                           "conditional entropy");
}

double mutual_information(const JointDistribution& d, const VarSet& x, const VarSet& y) {
  require_nonempty(x, "X");
  require_nonempty(y, "Y");
  require_disjoint({&x, &y});
  const double i = entropy(d, x) + entropy(d, y) - entropy(d, unite(x, y));
  return clamp_nonnegative(i, "mutual information");
}

double conditional_mutual_information(const JointDistribution& d, const VarSet& x,
                                      const VarSet& y, const VarSet& z) {
  require_nonempty(x, "X");
  require_nonempty(y, "Y");
  require_disjoint({&x, &y, &z});
  if (z.empty()) return mutual_information(d, x, y);
  const double i = entropy(d, unite(x, z)) + entropy(d, unite(y, z)) -
                   entropy(d, unite(unite(x, y), z)) - entropy(d, z);
  return clamp_nonnegative(i, "conditional mutual information");
}

double relative_entropy(const JointDistribution& p, const JointDistribution& q) {
  if (p.variables() != q.variables()) {
    throw Error(ErrorKind::AlphabetMismatch, "relative entropy needs identical variable lists");
  }
  double d = 0.0;
  for (const auto& e : p.events()) {
    const double qx = q.probability(e.outcome);
    if (qx <= 0.0) {
      throw Error(ErrorKind::SupportViolation,
                  "outcome (" + join_symbols(e.outcome) + ") has mass in p but not in q");
    }
    d += e.p * std::log2(e.p / qx);
  }
  return clamp_nonnegative(d, "relative entropy");
}

}  // namespace skapid
