#include "skapid/marginal.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "skapid/shannon.hpp"

namespace skapid {

namespace {

constexpr double kIpfTarget = 1e-13;
constexpr double kMarginalTolerance = 1e-9;
constexpr std::size_t kMaxIpfSweeps = 200000;
// Cells whose mass must vanish in the limit decay like 1/t under IPF. Mass
// that at least halves between sweep n and 2n while below kFaceCutoff marks a
// structural zero; pruning it restores a linear convergence rate.
constexpr std::size_t kFirstFaceProbe = 500;
constexpr double kFaceDecay = 0.75;
constexpr double kFaceCutoff = 1e-3;

/// Dense table over the Cartesian product of per-variable supports.
struct Grid {
  VarSet names;
  std::vector<std::vector<Symbol>> alphabets;
  std::vector<std::size_t> dims;
  std::size_t cells = 1;

  explicit Grid(const JointDistribution& d) : names(d.variables()) {
    for (const auto& v : names) {
      alphabets.push_back(d.alphabet(v));
      dims.push_back(alphabets.back().size());
      cells *= dims.back();
    }
  }

  std::size_t flat(const Outcome& o) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < dims.size(); ++i) {
      const auto& a = alphabets[i];
      const auto it = std::lower_bound(a.begin(), a.end(), o[i]);
      idx = idx * dims[i] + static_cast<std::size_t>(it - a.begin());
    }
    return idx;
  }

  Outcome outcome(std::size_t idx) const {
    Outcome o(dims.size());
    for (std::size_t i = dims.size(); i-- > 0;) {
      o[i] = alphabets[i][idx % dims[i]];
      idx /= dims[i];
    }
    return o;
  }

  std::vector<double> dense(const JointDistribution& d) const {
    std::vector<double> q(cells, 0.0);
    for (const auto& e : d.events()) q[flat(e.outcome)] += e.p;
    return q;
  }

  JointDistribution to_distribution(const std::vector<double>& q) const {
    std::map<Outcome, double> masses;
    double total = 0.0;
    for (double x : q) total += std::max(x, 0.0);
    for (std::size_t i = 0; i < cells; ++i) {
      if (q[i] > 0.0) masses.emplace(outcome(i), q[i] / total);
    }
    return JointDistribution::from_map(names, masses, kOptimizerPruneEpsilon);
  }
};

/// Maps each grid cell to its cell in the marginal over `positions`.
struct MarginalMap {
  std::vector<std::size_t> cell_to_marginal;
  std::size_t marginal_cells = 1;
  std::vector<double> target;

  MarginalMap(const Grid& g, const std::vector<std::size_t>& positions,
              const std::vector<double>& base) {
    std::vector<std::size_t> sub_stride(g.dims.size(), 0);
    for (auto it = positions.rbegin(); it != positions.rend(); ++it) {
      sub_stride[*it] = marginal_cells;
      marginal_cells *= g.dims[*it];
    }
    cell_to_marginal.resize(g.cells);
    for (std::size_t c = 0; c < g.cells; ++c) {
      std::size_t rest = c;
      std::size_t m = 0;
      for (std::size_t i = g.dims.size(); i-- > 0;) {
        m += (rest % g.dims[i]) * sub_stride[i];
        rest /= g.dims[i];
      }
      cell_to_marginal[c] = m;
    }
    target = of(base);
  }

  std::vector<double> of(const std::vector<double>& q) const {
    std::vector<double> m(marginal_cells, 0.0);
    for (std::size_t c = 0; c < q.size(); ++c) m[cell_to_marginal[c]] += q[c];
    return m;
  }

  double violation(const std::vector<double>& q) const {
    const auto m = of(q);
    double worst = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) worst = std::max(worst, std::abs(m[i] - target[i]));
    return worst;
  }
};

std::vector<std::size_t> sorted_positions(const JointDistribution& d, const VarSet& set) {
  auto pos = d.indices_of(set);
  std::sort(pos.begin(), pos.end());
  pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
  return pos;
}

std::vector<VarSet> subsets_of_size(const VarSet& vars, std::size_t k) {
  std::vector<VarSet> out;
  std::vector<bool> pick(vars.size(), false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
  do {
    VarSet s;
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (pick[i]) s.push_back(vars[i]);
    out.push_back(std::move(s));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

JointDistribution run_ipf(const MarginalPolytope& poly, std::vector<double>* kl_trace) {
  poly.validate();
  const Grid grid(poly.base);
  const auto base = grid.dense(poly.base);
  std::vector<MarginalMap> maps;
  for (const auto& set : poly.constraint_sets) {
    maps.emplace_back(grid, sorted_positions(poly.base, set), base);
  }

  if (kl_trace) kl_trace->clear();
  std::vector<double> q(grid.cells, 1.0 / static_cast<double>(grid.cells));
  std::vector<double> snapshot;
  std::size_t next_probe = kFirstFaceProbe;
  double worst = 0.0;
  for (std::size_t sweep = 0; sweep < kMaxIpfSweeps; ++sweep) {
    if (sweep == next_probe) {
      if (!snapshot.empty()) {
        for (std::size_t c = 0; c < q.size(); ++c) {
          if (q[c] < kFaceCutoff && q[c] < kFaceDecay * snapshot[c]) q[c] = 0.0;
        }
      }
      snapshot = q;
      next_probe *= 2;
    }
    for (const auto& m : maps) {
      const auto current = m.of(q);
      for (std::size_t c = 0; c < q.size(); ++c) {
        const std::size_t j = m.cell_to_marginal[c];
        q[c] = current[j] > 0.0 ? q[c] * (m.target[j] / current[j]) : 0.0;
      }
    }
    if (kl_trace) {
      // D(base || q) over base's support; non-increasing under IPF.
      double kl = 0.0;
      for (std::size_t c = 0; c < q.size(); ++c)
        if (base[c] > 0.0) kl += base[c] * std::log2(base[c] / q[c]);
      kl_trace->push_back(kl);
    }
    worst = 0.0;
    for (const auto& m : maps) worst = std::max(worst, m.violation(q));
    if (worst <= kIpfTarget) break;
  }
  if (worst > kMarginalTolerance) {
    std::ostringstream msg;
    msg << "iterative scaling stopped with marginal error " << std::scientific << worst;
    throw Error(ErrorKind::ConvergenceFailure, msg.str());
  }
  return grid.to_distribution(q);
}

// ---------------------------------------------------------------------------
// BROJA: minimize I(S0S1:T) over {q : q(s0,t) = p(s0,t), q(s1,t) = p(s1,t)}.

struct BrojaProblem {
  std::size_t n0, n1, nt;
  std::vector<double> p0t;   // [s0][t]
  std::vector<double> p1t;   // [s1][t]
  std::vector<bool> allowed; // [s0][s1][t]

  std::size_t idx(std::size_t a, std::size_t b, std::size_t t) const { return (a * n1 + b) * nt + t; }

  double objective(const std::vector<double>& q) const {
    // I(X:T) = H(X) + H(T) - H(XT), X = (S0,S1)
    std::vector<double> px(n0 * n1, 0.0), pt(nt, 0.0);
    for (std::size_t a = 0; a < n0; ++a)
      for (std::size_t b = 0; b < n1; ++b)
        for (std::size_t t = 0; t < nt; ++t) {
          const double v = std::max(q[idx(a, b, t)], 0.0);
          px[a * n1 + b] += v;
          pt[t] += v;
        }
    std::vector<double> qq(q.size());
    std::transform(q.begin(), q.end(), qq.begin(), [](double v) { return std::max(v, 0.0); });
    return entropy_of(px) + entropy_of(pt) - entropy_of(qq);
  }

  void gradient(const std::vector<double>& q, std::vector<double>& g) const {
    constexpr double delta = 1e-15;
    for (std::size_t a = 0; a < n0; ++a)
      for (std::size_t b = 0; b < n1; ++b) {
        double px = 0.0;
        for (std::size_t t = 0; t < nt; ++t) px += q[idx(a, b, t)];
        for (std::size_t t = 0; t < nt; ++t) {
          const std::size_t i = idx(a, b, t);
          g[i] = allowed[i] ? std::log2(q[i] + delta) - std::log2(px + delta) : 0.0;
        }
      }
  }

  /// Orthogonal projection onto the affine set of matching marginals.
  void project_affine(std::vector<double>& q) const {
    for (std::size_t t = 0; t < nt; ++t) {
      std::vector<double> rows(n0, 0.0), cols(n1, 0.0);
      double total = 0.0;
      for (std::size_t a = 0; a < n0; ++a)
        for (std::size_t b = 0; b < n1; ++b) {
          const double v = q[idx(a, b, t)];
          rows[a] += v;
          cols[b] += v;
          total += v;
        }
      double mass = 0.0;
      for (std::size_t a = 0; a < n0; ++a) mass += p0t[a * nt + t];
      const double gap = mass - total;
      for (std::size_t a = 0; a < n0; ++a)
        for (std::size_t b = 0; b < n1; ++b) {
          q[idx(a, b, t)] += (p0t[a * nt + t] - rows[a]) / static_cast<double>(n1) +
                             (p1t[b * nt + t] - cols[b]) / static_cast<double>(n0) -
                             gap / static_cast<double>(n0 * n1);
        }
    }
  }

  void project_cone(std::vector<double>& q) const {
    for (std::size_t i = 0; i < q.size(); ++i) q[i] = allowed[i] ? std::max(q[i], 0.0) : 0.0;
  }

  double violation(const std::vector<double>& q) const {
    double worst = 0.0;
    for (std::size_t t = 0; t < nt; ++t) {
      for (std::size_t a = 0; a < n0; ++a) {
        double s = 0.0;
        for (std::size_t b = 0; b < n1; ++b) s += q[idx(a, b, t)];
        worst = std::max(worst, std::abs(s - p0t[a * nt + t]));
      }
      for (std::size_t b = 0; b < n1; ++b) {
        double s = 0.0;
        for (std::size_t a = 0; a < n0; ++a) s += q[idx(a, b, t)];
        worst = std::max(worst, std::abs(s - p1t[b * nt + t]));
      }
    }
    return worst;
  }

  /// Dykstra's alternating projection onto affine set intersect cone.
  std::vector<double> project(std::vector<double> x) const {
    std::vector<double> p(x.size(), 0.0), r(x.size(), 0.0), y(x.size());
    for (std::size_t it = 0; it < 20000; ++it) {
      for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + p[i];
      project_affine(y);
      for (std::size_t i = 0; i < x.size(); ++i) p[i] = x[i] + p[i] - y[i];
      std::vector<double> prev = x;
      for (std::size_t i = 0; i < x.size(); ++i) x[i] = y[i] + r[i];
      project_cone(x);
      double moved = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        r[i] = y[i] + r[i] - x[i];
        moved = std::max(moved, std::abs(x[i] - prev[i]));
      }
      if (moved < 1e-16 && violation(x) < 1e-14) break;
    }
    return x;
  }
};

}  // namespace

void MarginalPolytope::validate() const {
  for (const auto& set : constraint_sets) {
    if (set.empty()) throw Error(ErrorKind::InvalidArgument, "empty constraint set");
    (void)base.indices_of(set);
  }
}

double MarginalPolytope::max_violation(const JointDistribution& q) const {
  double worst = 0.0;
  for (const auto& set : constraint_sets) {
    const auto mp = marginalize(base, set);
    const auto mq = marginalize(q, set);
    std::map<Outcome, double> diff;
    for (const auto& e : mp.events()) diff[e.outcome] += e.p;
    for (const auto& e : mq.events()) diff[e.outcome] -= e.p;
    for (const auto& [o, v] : diff) worst = std::max(worst, std::abs(v));
  }
  return worst;
}

JointDistribution maxent_with_marginals(const MarginalPolytope& poly, const OptimizerConfig&) {
  return run_ipf(poly, nullptr);
}

JointDistribution maxent_with_marginals(const MarginalPolytope& poly, const OptimizerConfig&,
                                        std::vector<double>& kl_trace) {
  return run_ipf(poly, &kl_trace);
}

double connected_information(const JointDistribution& d, std::size_t order,
                             const OptimizerConfig& cfg) {
  const std::size_t n = d.arity();
  if (order < 2 || order > n) {
    throw Error(ErrorKind::OutOfRange, "connected information order " + std::to_string(order) +
                                           " outside [2, " + std::to_string(n) + "]");
  }
  const auto lower = maxent_with_marginals({d, subsets_of_size(d.variables(), order - 1)}, cfg);
  const double h_lower = entropy(lower);
  const double h_upper =
      order == n ? entropy(d) : entropy(maxent_with_marginals({d, subsets_of_size(d.variables(), order)}, cfg));
  // IPF stops at 1e-13 marginal error, so allow entropy noise of that order.
  double gap = h_lower - h_upper;
  if (gap < 0.0 && gap > -1e-9) gap = 0.0;
  return clamp_nonnegative(gap, "connected information");
}

BrojaResult broja_minimize(const JointDistribution& d, const PidRoles& roles,
                           const OptimizerConfig& cfg) {
  const VarSet s0{roles.source_0}, s1{roles.source_1}, t{roles.target};
  require_disjoint({&s0, &s1, &t});
  JointDistribution p = marginalize(d, {roles.source_0, roles.source_1, roles.target});
  {
    // Fix the variable order to (S0, S1, T).
    std::map<Outcome, double> masses;
    const auto idx = p.indices_of({roles.source_0, roles.source_1, roles.target});
    for (const auto& e : p.events()) masses[project(e.outcome, idx)] += e.p;
    p = JointDistribution::from_map({roles.source_0, roles.source_1, roles.target}, masses);
  }
  const Grid grid(p);
  BrojaProblem prob{grid.dims[0], grid.dims[1], grid.dims[2], {}, {}, {}};
  prob.p0t.assign(prob.n0 * prob.nt, 0.0);
  prob.p1t.assign(prob.n1 * prob.nt, 0.0);
  const auto base = grid.dense(p);
  for (std::size_t a = 0; a < prob.n0; ++a)
    for (std::size_t b = 0; b < prob.n1; ++b)
      for (std::size_t k = 0; k < prob.nt; ++k) {
        prob.p0t[a * prob.nt + k] += base[prob.idx(a, b, k)];
        prob.p1t[b * prob.nt + k] += base[prob.idx(a, b, k)];
      }
  std::vector<double> pt(prob.nt, 0.0);
  for (std::size_t a = 0; a < prob.n0; ++a)
    for (std::size_t k = 0; k < prob.nt; ++k) pt[k] += prob.p0t[a * prob.nt + k];

  // Start from the conditionally independent member q(s0,t) q(s1,t) / q(t),
  // which is strictly positive on every cell the constraints allow.
  std::vector<double> q(grid.cells, 0.0);
  prob.allowed.assign(grid.cells, false);
  for (std::size_t a = 0; a < prob.n0; ++a)
    for (std::size_t b = 0; b < prob.n1; ++b)
      for (std::size_t k = 0; k < prob.nt; ++k) {
        const double v = pt[k] > 0.0 ? prob.p0t[a * prob.nt + k] * prob.p1t[b * prob.nt + k] / pt[k] : 0.0;
        q[prob.idx(a, b, k)] = v;
        prob.allowed[prob.idx(a, b, k)] = v > 0.0;
      }

  double fq = prob.objective(q);
  std::vector<double> g(q.size());
  double step = 1.0;
  std::size_t quiet = 0;
  BrojaResult out{p, 0.0, {}, 0, false};
  for (std::size_t iter = 0; iter < cfg.max_iters; ++iter) {
    out.iterations = iter + 1;
    prob.gradient(q, g);
    bool accepted = false;
    std::vector<double> y;
    double fy = fq;
    while (step >= 1e-14) {
      std::vector<double> trial(q.size());
      for (std::size_t i = 0; i < q.size(); ++i) trial[i] = q[i] - step * g[i];
      y = prob.project(std::move(trial));
      double descent = 0.0;
      double moved = 0.0;
      for (std::size_t i = 0; i < q.size(); ++i) {
        descent += g[i] * (q[i] - y[i]);
        moved = std::max(moved, std::abs(q[i] - y[i]));
      }
      if (moved <= 1e-15) break;
      fy = prob.objective(y);
      if (fy <= fq - 1e-4 * descent) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      out.converged = true;
      break;
    }
    const double gain = fq - fy;
    q = std::move(y);
    fq = fy;
    step = std::min(step * 2.0, 1e3);
    quiet = gain < 1e-10 ? quiet + 1 : 0;
    if (quiet >= 10) {
      out.converged = true;
      break;
    }
  }
  out.q_star = grid.to_distribution(q);

  const double mi_joint = mutual_information(p, {roles.source_0, roles.source_1}, t);
  const double mi_0 = mutual_information(p, s0, t);
  const double mi_1 = mutual_information(p, s1, t);
  out.min_mi = mutual_information(out.q_star, {roles.source_0, roles.source_1}, t);
  const double u0 = conditional_mutual_information(out.q_star, s0, t, s1);
  const double u1 = conditional_mutual_information(out.q_star, s1, t, s0);
  out.pid = assemble(u0, u1, mi_0, mi_1, mi_joint, kBrojaConsistencyTol, PidScheme::Broja);
  out.pid.converged = out.converged;
  return out;
}

EntropyReport broja_intermediate_entropy_report(const JointDistribution& d, const PidRoles& roles,
                                                const OptimizerConfig& cfg) {
  const auto p = marginalize(d, {roles.source_0, roles.source_1, roles.target});
  const auto broja = broja_minimize(p, roles, cfg);
  const auto maxent = maxent_with_marginals(
      {p, {{roles.source_0, roles.target}, {roles.source_1, roles.target}}}, cfg);
  return {entropy(p), entropy(broja.q_star), entropy(maxent)};
}

}  // namespace skapid
