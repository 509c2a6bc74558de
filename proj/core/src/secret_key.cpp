#include "skapid/secret_key.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "dense.hpp"
#include "skapid/shannon.hpp"

namespace skapid {

namespace {

// Keeps logarithms finite on the simplex boundary. Each log argument is
// shifted by this fraction of its own derivative coefficient, which is the
// one-sided derivative at a point nudged into the interior.
constexpr double kLogRegularizer = 1e-12;
constexpr double kArmijo = 1e-4;
constexpr double kMinStep = 1e-14;
constexpr std::size_t kStallIterations = 5;

double xlogx_sum(const std::vector<double>& v) { return -entropy_of(v); }

/// Product of probability simplices laid out row after row in one vector.
struct SimplexProduct {
  std::vector<std::size_t> row_lengths;

  std::size_t dimension() const {
    std::size_t n = 0;
    for (auto r : row_lengths) n += r;
    return n;
  }

  void project(std::vector<double>& x) const {
    std::size_t off = 0;
    for (auto r : row_lengths) {
      project_to_simplex(std::span<double>(x.data() + off, r));
      off += r;
    }
  }
};

struct SearchProblem {
  SimplexProduct domain;
  std::function<double(const std::vector<double>&)> objective;
  std::function<void(const std::vector<double>&, std::vector<double>&)> gradient;
  bool maximize = true;
};

struct RunOutcome {
  std::vector<double> x;
  double value = 0.0;
  bool converged = false;
};

/// Projected gradient with Armijo backtracking on a product of simplices.
RunOutcome refine(const SearchProblem& prob, std::vector<double> x, const OptimizerConfig& cfg) {
  const double sign = prob.maximize ? 1.0 : -1.0;
  prob.domain.project(x);
  double fx = sign * prob.objective(x);
  std::vector<double> g(x.size()), y(x.size());
  double step = 1.0;
  std::size_t stalled = 0;
  bool converged = false;

  for (std::size_t iter = 0; iter < cfg.max_iters && !converged; ++iter) {
    prob.gradient(x, g);
    for (double& gi : g) gi *= sign;

    bool accepted = false;
    double fy = fx;
    while (step >= kMinStep) {
      for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + step * g[i];
      prob.domain.project(y);
      double ascent = 0.0;
      double moved = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        ascent += g[i] * (y[i] - x[i]);
        moved = std::max(moved, std::abs(y[i] - x[i]));
      }
      if (moved <= 1e-15) break;  // projected gradient vanishes
      fy = sign * prob.objective(y);
      if (fy >= fx + kArmijo * ascent) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      converged = true;
      break;
    }
    const double gain = fy - fx;
    x.swap(y);
    fx = fy;
    step = std::min(step * 2.0, 1e6);
    stalled = gain < cfg.convergence_tol ? stalled + 1 : 0;
    if (stalled >= kStallIterations) converged = true;
  }
  return {std::move(x), sign * fx, converged};
}

std::vector<double> dirichlet_rows(const SimplexProduct& domain, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> gamma1(1.0);
  std::vector<double> x;
  x.reserve(domain.dimension());
  for (auto r : domain.row_lengths) {
    std::vector<double> row(r);
    double total = 0.0;
    for (double& v : row) total += (v = gamma1(rng));
    for (double v : row) x.push_back(v / total);
  }
  return x;
}

struct SearchSummary {
  RunOutcome best;
  std::size_t best_index = 0;
  std::size_t runs = 0;
  bool any_converged = false;
};

/// Refines every start (possibly concurrently) and reduces by best value
/// with ties going to the lowest index.
SearchSummary run_starts(const SearchProblem& prob, const std::vector<std::vector<double>>& starts,
                         const OptimizerConfig& cfg) {
  std::vector<RunOutcome> outcomes(starts.size());
  parallel_for(starts.size(), cfg.threads,
               [&](std::size_t i) { outcomes[i] = refine(prob, starts[i], cfg); });
  SearchSummary s;
  s.runs = outcomes.size();
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    s.any_converged = s.any_converged || outcomes[i].converged;
    const bool better = prob.maximize ? outcomes[i].value > s.best.value
                                      : outcomes[i].value < s.best.value;
    if (i == 0 || better) {
      s.best = outcomes[i];
      s.best_index = i;
    }
  }
  return s;
}

std::vector<Symbol> numbered(std::string_view prefix, std::size_t n) {
  std::vector<Symbol> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(prefix) + std::to_string(i));
  return out;
}

std::vector<Symbol> tuple_names(const detail::GroupIndex& g) {
  if (g.symbols.empty()) return {""};
  std::vector<Symbol> out;
  for (const auto& s : g.symbols) out.push_back(join_symbols(s));
  return out;
}

std::vector<std::vector<double>> rows_of(const std::vector<double>& x, std::size_t offset,
                                         std::size_t rows, std::size_t cols) {
  std::vector<std::vector<double>> out(rows, std::vector<double>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    double total = 0.0;
    for (std::size_t c = 0; c < cols; ++c) total += (out[r][c] = x[offset + r * cols + c]);
    for (double& v : out[r]) v /= total;  // absorb projection rounding
  }
  return out;
}

// ---------------------------------------------------------------------------
// One-way rate: F(W, V) = H(BC) - H(BKC) - H(EC) + H(EKC) with
// p(a,b,e,k,c) = p(a,b,e) W[a][k] V[k][c]. H(KC) and H(C) cancel.

struct OneWayModel {
  std::size_t na, nb, ne, nk, nc;
  std::vector<double> pab;  // [a][b]
  std::vector<double> pae;  // [a][e]

  std::size_t dimension() const { return na * nk + nk * nc; }
  double w(const std::vector<double>& x, std::size_t a, std::size_t k) const { return x[a * nk + k]; }
  double v(const std::vector<double>& x, std::size_t k, std::size_t c) const {
    return x[na * nk + k * nc + c];
  }

  // q[y][k] = sum_a p(a,y) W[a][k]
  std::vector<double> mix(const std::vector<double>& pay, std::size_t ny,
                          const std::vector<double>& x) const {
    std::vector<double> q(ny * nk, 0.0);
    for (std::size_t a = 0; a < na; ++a)
      for (std::size_t y = 0; y < ny; ++y) {
        const double m = pay[a * ny + y];
        if (m == 0.0) continue;
        for (std::size_t k = 0; k < nk; ++k) q[y * nk + k] += m * w(x, a, k);
      }
    return q;
  }

  // p(y,c) = sum_k q[y][k] V[k][c]
  std::vector<double> with_c(const std::vector<double>& q, std::size_t ny,
                             const std::vector<double>& x) const {
    std::vector<double> pyc(ny * nc, 0.0);
    for (std::size_t y = 0; y < ny; ++y)
      for (std::size_t k = 0; k < nk; ++k) {
        const double m = q[y * nk + k];
        if (m == 0.0) continue;
        for (std::size_t c = 0; c < nc; ++c) pyc[y * nc + c] += m * v(x, k, c);
      }
    return pyc;
  }

  double side(const std::vector<double>& pay, std::size_t ny, const std::vector<double>& x) const {
    // H(YC) - H(YKC)
    const auto q = mix(pay, ny, x);
    const auto pyc = with_c(q, ny, x);
    std::vector<double> pykc;
    pykc.reserve(ny * nk * nc);
    for (std::size_t y = 0; y < ny; ++y)
      for (std::size_t k = 0; k < nk; ++k)
        for (std::size_t c = 0; c < nc; ++c) pykc.push_back(q[y * nk + k] * v(x, k, c));
    return xlogx_sum(pykc) - xlogx_sum(pyc);
  }

  double objective(const std::vector<double>& x) const {
    return side(pab, nb, x) - side(pae, ne, x);
  }

  void add_side_gradient(const std::vector<double>& pay, std::size_t ny, const std::vector<double>& x,
                         double sign, std::vector<double>& g) const {
    const auto q = mix(pay, ny, x);
    const auto pyc = with_c(q, ny, x);
    // d/dV[k][c]: sum_y q[y][k] (log q[y][k] - log p(y,c))
    for (std::size_t k = 0; k < nk; ++k)
      for (std::size_t c = 0; c < nc; ++c) {
        double s = 0.0;
        for (std::size_t y = 0; y < ny; ++y) {
          const double m = q[y * nk + k];
          if (m <= 0.0) continue;
          s += m * (std::log2(m) - std::log2(pyc[y * nc + c] + kLogRegularizer * m));
        }
        g[na * nk + k * nc + c] += sign * s;
      }
    // d/dW[a][k]: sum_c V[k][c] sum_y p(a,y) (log q[y][k] - log p(y,c))
    for (std::size_t a = 0; a < na; ++a)
      for (std::size_t k = 0; k < nk; ++k) {
        double s = 0.0;
        for (std::size_t c = 0; c < nc; ++c) {
          const double vkc = v(x, k, c);
          if (vkc <= 0.0) continue;
          double inner = 0.0;
          for (std::size_t y = 0; y < ny; ++y) {
            const double m = pay[a * ny + y];
            if (m <= 0.0) continue;
            inner += m * (std::log2(q[y * nk + k] + kLogRegularizer * m) -
                          std::log2(pyc[y * nc + c] + kLogRegularizer * m * vkc));
          }
          s += vkc * inner;
        }
        g[a * nk + k] += sign * s;
      }
  }

  void gradient(const std::vector<double>& x, std::vector<double>& g) const {
    std::fill(g.begin(), g.end(), 0.0);
    add_side_gradient(pab, nb, x, 1.0, g);
    add_side_gradient(pae, ne, x, -1.0, g);
  }

  std::vector<double> corner(const std::vector<std::size_t>& k_of_a,
                             const std::vector<std::size_t>& c_of_k) const {
    std::vector<double> x(dimension(), 0.0);
    for (std::size_t a = 0; a < na; ++a) x[a * nk + k_of_a[a]] = 1.0;
    for (std::size_t k = 0; k < nk; ++k) x[na * nk + k * nc + (k < c_of_k.size() ? c_of_k[k] : 0)] = 1.0;
    return x;
  }
};

OneWayModel make_one_way_model(const detail::TripleTable& t) {
  OneWayModel m{t.na(), t.nb(), t.ne(), t.na(), t.na() * t.na(), {}, {}};
  m.pab.assign(m.na * m.nb, 0.0);
  m.pae.assign(m.na * m.ne, 0.0);
  for (std::size_t a = 0; a < m.na; ++a)
    for (std::size_t b = 0; b < m.nb; ++b)
      for (std::size_t e = 0; e < m.ne; ++e) {
        const double p = t.at(a, b, e);
        m.pab[a * m.nb + b] += p;
        m.pae[a * m.ne + e] += p;
      }
  return m;
}

// ---------------------------------------------------------------------------
// Intrinsic mutual information: G(U) = H(A Ebar) + H(B Ebar) - H(AB Ebar) - H(Ebar).

struct IntrinsicModel {
  std::size_t na, nb, ne, nm;
  std::vector<double> pabe;  // [a][b][e]
  std::vector<double> pae, pbe, pe;

  double u(const std::vector<double>& x, std::size_t e, std::size_t m) const { return x[e * nm + m]; }

  struct Pushed {
    std::vector<double> pabm, pam, pbm, pm;
  };

  Pushed push(const std::vector<double>& x) const {
    Pushed r{std::vector<double>(na * nb * nm, 0.0), std::vector<double>(na * nm, 0.0),
             std::vector<double>(nb * nm, 0.0), std::vector<double>(nm, 0.0)};
    for (std::size_t a = 0; a < na; ++a)
      for (std::size_t b = 0; b < nb; ++b)
        for (std::size_t e = 0; e < ne; ++e) {
          const double p = pabe[(a * nb + b) * ne + e];
          if (p == 0.0) continue;
          for (std::size_t m = 0; m < nm; ++m) {
            const double pm = p * u(x, e, m);
            r.pabm[(a * nb + b) * nm + m] += pm;
            r.pam[a * nm + m] += pm;
            r.pbm[b * nm + m] += pm;
            r.pm[m] += pm;
          }
        }
    return r;
  }

  double objective(const std::vector<double>& x) const {
    const auto r = push(x);
    return entropy_of(r.pam) + entropy_of(r.pbm) - entropy_of(r.pabm) - entropy_of(r.pm);
  }

  void gradient(const std::vector<double>& x, std::vector<double>& g) const {
    const auto r = push(x);
    auto lg = [](double value, double coef) { return std::log2(value + kLogRegularizer * coef); };
    for (std::size_t e = 0; e < ne; ++e)
      for (std::size_t m = 0; m < nm; ++m) {
        double s = 0.0;
        for (std::size_t a = 0; a < na; ++a) {
          const double c = pae[a * ne + e];
          if (c > 0.0) s -= c * lg(r.pam[a * nm + m], c);
        }
        for (std::size_t b = 0; b < nb; ++b) {
          const double c = pbe[b * ne + e];
          if (c > 0.0) s -= c * lg(r.pbm[b * nm + m], c);
        }
        for (std::size_t a = 0; a < na; ++a)
          for (std::size_t b = 0; b < nb; ++b) {
            const double c = pabe[(a * nb + b) * ne + e];
            if (c > 0.0) s += c * lg(r.pabm[(a * nb + b) * nm + m], c);
          }
        if (pe[e] > 0.0) s += pe[e] * lg(r.pm[m], pe[e]);
        g[e * nm + m] = s;
      }
  }

  std::vector<double> corner(const std::vector<std::size_t>& m_of_e) const {
    std::vector<double> x(ne * nm, 0.0);
    for (std::size_t e = 0; e < ne; ++e) x[e * nm + m_of_e[e]] = 1.0;
    return x;
  }
};

IntrinsicModel make_intrinsic_model(const detail::TripleTable& t, std::size_t nm) {
  IntrinsicModel m{t.na(), t.nb(), t.ne(), nm, t.p, {}, {}, {}};
  m.pae.assign(m.na * m.ne, 0.0);
  m.pbe.assign(m.nb * m.ne, 0.0);
  m.pe.assign(m.ne, 0.0);
  for (std::size_t a = 0; a < m.na; ++a)
    for (std::size_t b = 0; b < m.nb; ++b)
      for (std::size_t e = 0; e < m.ne; ++e) {
        const double p = t.at(a, b, e);
        m.pae[a * m.ne + e] += p;
        m.pbe[b * m.ne + e] += p;
        m.pe[e] += p;
      }
  return m;
}

double dense_cmi(const detail::TripleTable& t, bool condition_on_e) {
  IntrinsicModel m = make_intrinsic_model(t, condition_on_e ? t.ne() : 1);
  std::vector<double> x(t.ne() * m.nm, 0.0);
  for (std::size_t e = 0; e < t.ne(); ++e) x[e * m.nm + (condition_on_e ? e : 0)] = 1.0;
  return clamp_nonnegative(m.objective(x), "conditional mutual information");
}

void check_groups(const JointDistribution& d, const VarSet& a, const VarSet& b, const VarSet& e) {
  if (a.empty() || b.empty()) throw Error(ErrorKind::InvalidArgument, "parties must be non-empty");
  require_disjoint({&a, &b, &e});
  (void)d.indices_of(a);
  (void)d.indices_of(b);
  (void)d.indices_of(e);
}

constexpr std::size_t kMaxCornerAlphabet = 4;
constexpr std::size_t kMaxEveCornerAlphabet = 5;

}  // namespace

SkarResult skar_one_way(const JointDistribution& d, const VarSet& a, const VarSet& b,
                        const VarSet& e, const OptimizerConfig& cfg) {
  cfg.validate();
  check_groups(d, a, b, e);
  const auto table = detail::make_triple(d, a, b, e);
  const OneWayModel model = make_one_way_model(table);

  SearchProblem prob;
  prob.domain.row_lengths.assign(model.na, model.nk);
  prob.domain.row_lengths.insert(prob.domain.row_lengths.end(), model.nk, model.nc);
  prob.objective = [&](const std::vector<double>& x) { return model.objective(x); };
  prob.gradient = [&](const std::vector<double>& x, std::vector<double>& g) { model.gradient(x, g); };
  prob.maximize = true;

  // Start 0 is the constant-K scheme, which scores exactly zero.
  std::vector<std::vector<double>> starts;
  starts.push_back(model.corner(std::vector<std::size_t>(model.na, 0), {}));
  if (model.na <= kMaxCornerAlphabet) {
    for (const auto& k_of_a : set_partitions(model.na)) {
      const std::size_t used = *std::max_element(k_of_a.begin(), k_of_a.end()) + 1;
      for (const auto& c_of_k : set_partitions(used)) starts.push_back(model.corner(k_of_a, c_of_k));
    }
  }
  for (std::size_t r = 0; r < cfg.restarts; ++r) {
    starts.push_back(dirichlet_rows(prob.domain, cfg.seed + r));
  }

  const auto search = run_starts(prob, starts, cfg);
  const auto& x = search.best.x;

  SkarResult out;
  out.one_way = OneWayParametrization{
      Channel(tuple_names(table.a), numbered("k", model.nk), rows_of(x, 0, model.na, model.nk)),
      Channel(numbered("k", model.nk), numbered("c", model.nc),
              rows_of(x, model.na * model.nk, model.nk, model.nc))};
  out.objective = one_way_objective(d, a, b, e, *out.one_way);
  out.value = std::max(out.objective, 0.0);
  out.converged = search.any_converged;
  out.restarts_used = search.runs;
  out.best_restart_index = search.best_index;
  const double cap = std::min(dense_cmi(table, false), dense_cmi(table, true));
  out.bounds = {out.value, cap, cap - out.value <= cfg.result_tol};
  return out;
}

SkarResult intrinsic_mutual_information(const JointDistribution& d, const VarSet& a,
                                        const VarSet& b, const VarSet& e,
                                        const OptimizerConfig& cfg) {
  cfg.validate();
  check_groups(d, a, b, e);
  const auto table = detail::make_triple(d, a, b, e);
  const std::size_t ne = table.ne();
  const std::size_t nm = cfg.ebar_size.value_or(ne);
  const IntrinsicModel model = make_intrinsic_model(table, nm);

  SearchProblem prob;
  prob.domain.row_lengths.assign(ne, nm);
  prob.objective = [&](const std::vector<double>& x) { return model.objective(x); };
  prob.gradient = [&](const std::vector<double>& x, std::vector<double>& g) { model.gradient(x, g); };
  prob.maximize = false;

  std::vector<std::vector<double>> starts;
  if (nm >= ne) {
    std::vector<std::size_t> identity(ne);
    for (std::size_t i = 0; i < ne; ++i) identity[i] = i;
    starts.push_back(model.corner(identity));
  }
  starts.push_back(model.corner(std::vector<std::size_t>(ne, 0)));
  if (ne <= kMaxEveCornerAlphabet) {
    for (const auto& blocks : set_partitions(ne)) {
      if (*std::max_element(blocks.begin(), blocks.end()) < nm) starts.push_back(model.corner(blocks));
    }
  }
  for (std::size_t r = 0; r < cfg.restarts; ++r) {
    starts.push_back(dirichlet_rows(prob.domain, cfg.seed + r));
  }

  const auto search = run_starts(prob, starts, cfg);
  SkarResult out;
  out.eve_channel = Channel(tuple_names(table.e), numbered("e", nm), rows_of(search.best.x, 0, ne, nm));
  out.objective = intrinsic_objective(d, a, b, e, *out.eve_channel);
  out.value = clamp_nonnegative(out.objective, "intrinsic mutual information");
  out.converged = search.any_converged;
  out.restarts_used = search.runs;
  out.best_restart_index = search.best_index;
  out.bounds = {0.0, out.value, out.value <= cfg.result_tol};
  return out;
}

TwoWayResult skar_two_way_bounds(const JointDistribution& d, const VarSet& a, const VarSet& b,
                                 const VarSet& e, const OptimizerConfig& cfg) {
  TwoWayResult r{{}, skar_one_way(d, a, b, e, cfg), skar_one_way(d, b, a, e, cfg),
                 intrinsic_mutual_information(d, a, b, e, cfg)};
  r.bounds.lower = std::max(r.a_to_b.value, r.b_to_a.value);
  r.bounds.upper = r.intrinsic.value;
  r.bounds.exact = r.bounds.upper - r.bounds.lower <= cfg.result_tol;
  return r;
}

double one_way_objective(const JointDistribution& d, const VarSet& a, const VarSet& b,
                         const VarSet& e, const OneWayParametrization& w) {
  check_groups(d, a, b, e);
  const auto table = detail::make_triple(d, a, b, e);
  const OneWayModel model = make_one_way_model(table);
  const auto& kin = w.k_given_a;
  const auto& cin = w.c_given_k;
  if (kin.output_alphabet() != cin.input_alphabet()) {
    throw Error(ErrorKind::AlphabetMismatch, "K alphabets of the two channels differ");
  }
  OneWayModel m = model;
  m.nk = kin.output_alphabet().size();
  m.nc = cin.output_alphabet().size();
  std::vector<double> x(m.dimension(), 0.0);
  const auto names = tuple_names(table.a);
  for (std::size_t i = 0; i < m.na; ++i) {
    const auto& row = kin.row(names[i]);
    std::copy(row.begin(), row.end(), x.begin() + static_cast<std::ptrdiff_t>(i * m.nk));
  }
  for (std::size_t k = 0; k < m.nk; ++k) {
    const auto& row = cin.rows()[k];
    std::copy(row.begin(), row.end(), x.begin() + static_cast<std::ptrdiff_t>(m.na * m.nk + k * m.nc));
  }
  return m.objective(x);
}

double intrinsic_objective(const JointDistribution& d, const VarSet& a, const VarSet& b,
                           const VarSet& e, const Channel& ch) {
  check_groups(d, a, b, e);
  const auto table = detail::make_triple(d, a, b, e);
  const IntrinsicModel model = make_intrinsic_model(table, ch.output_alphabet().size());
  std::vector<double> x;
  for (const auto& name : tuple_names(table.e)) {
    const auto& row = ch.row(name);
    x.insert(x.end(), row.begin(), row.end());
  }
  return model.objective(x);
}

}  // namespace skapid
