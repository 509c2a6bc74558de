#include "skapid/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace skapid {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NegativeProbability: return "NegativeProbability";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::DuplicateOutcome: return "DuplicateOutcome";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::ZeroProbabilityCondition: return "ZeroProbabilityCondition";
    case ErrorKind::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::OverlappingSets: return "OverlappingSets";
    case ErrorKind::SupportViolation: return "SupportViolation";
    case ErrorKind::InconsistentDecomposition: return "InconsistentDecomposition";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

namespace {

void check_variables(const VarSet& variables) {
  std::set<VariableName> seen;
  for (const auto& v : variables) {
    if (v.empty()) throw Error(ErrorKind::InvalidArgument, "variable names must be non-empty");
    if (!seen.insert(v).second) {
      throw Error(ErrorKind::InvalidArgument, "duplicate variable name '" + v + "'");
    }
  }
}

}  // namespace

JointDistribution JointDistribution::from_events(VarSet variables, std::vector<Event> events) {
  check_variables(variables);
  std::map<Outcome, double> masses;
  double total = 0.0;
  for (auto& e : events) {
    if (e.outcome.size() != variables.size()) {
      throw Error(ErrorKind::ArityMismatch, "outcome (" + join_symbols(e.outcome) + ") has " +
                                                std::to_string(e.outcome.size()) +
                                                " symbols, expected " +
                                                std::to_string(variables.size()));
    }
    if (!(e.p >= 0.0) || !std::isfinite(e.p)) {
      throw Error(ErrorKind::NegativeProbability,
                  "outcome (" + join_symbols(e.outcome) + ") has mass " + std::to_string(e.p));
    }
    if (masses.contains(e.outcome)) {
      throw Error(ErrorKind::DuplicateOutcome, "outcome (" + join_symbols(e.outcome) + ")");
    }
    total += e.p;
    masses.emplace(std::move(e.outcome), e.p);
  }
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "total mass " << total;
    throw Error(ErrorKind::NotNormalized, os.str());
  }
  std::vector<Event> kept;
  kept.reserve(masses.size());
  for (auto& [outcome, p] : masses) {
    if (p > 0.0) kept.push_back({outcome, p / total});
  }
  return JointDistribution(std::move(variables), std::move(kept));
}

JointDistribution JointDistribution::from_map(VarSet variables,
                                              const std::map<Outcome, double>& masses,
                                              double epsilon) {
  std::vector<Event> events;
  events.reserve(masses.size());
  double dropped = 0.0;
  for (const auto& [outcome, p] : masses) {
    if (p > epsilon) {
      events.push_back({outcome, p});
    } else if (p > 0.0) {
      dropped += p;
    }
  }
  if (dropped > 0.0) {
    double total = 0.0;
    for (const auto& e : events) total += e.p;
    for (auto& e : events) e.p /= total;
  }
  return from_events(std::move(variables), std::move(events));
}

bool JointDistribution::has_variable(std::string_view name) const noexcept {
  return std::find(variables_.begin(), variables_.end(), name) != variables_.end();
}

std::size_t JointDistribution::index_of(std::string_view name) const {
  auto it = std::find(variables_.begin(), variables_.end(), name);
  if (it == variables_.end()) {
    throw Error(ErrorKind::UnknownVariable, "'" + std::string(name) + "'");
  }
  return static_cast<std::size_t>(it - variables_.begin());
}

std::vector<std::size_t> JointDistribution::indices_of(const VarSet& names) const {
  std::vector<std::size_t> idx;
  idx.reserve(names.size());
  for (const auto& n : names) idx.push_back(index_of(n));
  return idx;
}

std::vector<Symbol> JointDistribution::alphabet(std::string_view name) const {
  const std::size_t i = index_of(name);
  std::set<Symbol> symbols;
  for (const auto& e : events_) symbols.insert(e.outcome[i]);
  return {symbols.begin(), symbols.end()};
}

double JointDistribution::probability(const Outcome& outcome) const {
  auto it = std::lower_bound(events_.begin(), events_.end(), outcome,
                             [](const Event& e, const Outcome& o) { return e.outcome < o; });
  return (it != events_.end() && it->outcome == outcome) ? it->p : 0.0;
}

JointDistribution JointDistribution::prune(double epsilon) const {
  std::map<Outcome, double> masses;
  for (const auto& e : events_) masses.emplace(e.outcome, e.p);
  return from_map(variables_, masses, epsilon);
}

JointDistribution JointDistribution::renamed(VarSet names) const {
  if (names.size() != variables_.size()) {
    throw Error(ErrorKind::ArityMismatch, "rename needs one name per variable");
  }
  check_variables(names);
  return JointDistribution(std::move(names), events_);
}

bool approx_equal(const JointDistribution& a, const JointDistribution& b, double tol) {
  if (a.variables() != b.variables()) return false;
  std::map<Outcome, double> diff;
  for (const auto& e : a.events()) diff[e.outcome] += e.p;
  for (const auto& e : b.events()) diff[e.outcome] -= e.p;
  return std::all_of(diff.begin(), diff.end(),
                     [tol](const auto& kv) { return std::abs(kv.second) <= tol; });
}

Channel::Channel(std::vector<Symbol> input_alphabet, std::vector<Symbol> output_alphabet,
                 std::vector<std::vector<double>> rows)
    : input_(std::move(input_alphabet)), output_(std::move(output_alphabet)), rows_(std::move(rows)) {
  if (rows_.size() != input_.size()) {
    throw Error(ErrorKind::ArityMismatch, "channel needs one row per input symbol");
  }
  if (std::set<Symbol>(input_.begin(), input_.end()).size() != input_.size() ||
      std::set<Symbol>(output_.begin(), output_.end()).size() != output_.size()) {
    throw Error(ErrorKind::InvalidArgument, "channel alphabets must not repeat symbols");
  }
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const auto& row = rows_[i];
    if (row.size() != output_.size()) {
      throw Error(ErrorKind::ArityMismatch, "channel row for '" + input_[i] + "' has wrong length");
    }
    double total = 0.0;
    for (double x : row) {
      if (!(x >= 0.0) || !std::isfinite(x)) {
        throw Error(ErrorKind::NegativeProbability, "channel row for '" + input_[i] + "'");
      }
      total += x;
    }
    if (std::abs(total - 1.0) > kNormalizationTolerance) {
      throw Error(ErrorKind::NotNormalized, "channel row for '" + input_[i] + "'");
    }
  }
}

const std::vector<double>& Channel::row(std::string_view input) const {
  auto it = std::find(input_.begin(), input_.end(), input);
  if (it == input_.end()) {
    throw Error(ErrorKind::AlphabetMismatch,
                "symbol '" + std::string(input) + "' is not in the channel input alphabet");
  }
  return rows_[static_cast<std::size_t>(it - input_.begin())];
}

Channel Channel::identity(const std::vector<Symbol>& alphabet) {
  std::vector<std::vector<double>> rows(alphabet.size(), std::vector<double>(alphabet.size(), 0.0));
  for (std::size_t i = 0; i < alphabet.size(); ++i) rows[i][i] = 1.0;
  return Channel(alphabet, alphabet, std::move(rows));
}

Channel bec(double erasure_probability) {
  const double p = erasure_probability;
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorKind::OutOfRange, "erasure probability " + std::to_string(p));
  }
  return Channel({"0", "1"}, {"0", "1", kErasure}, {{1.0 - p, 0.0, p}, {0.0, 1.0 - p, p}});
}

Outcome project(const Outcome& outcome, const std::vector<std::size_t>& idx) {
  Outcome out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(outcome[i]);
  return out;
}

std::string join_symbols(const Outcome& symbols) {
  std::string s;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (i) s += ',';
    s += symbols[i];
  }
  return s;
}

JointDistribution marginalize(const JointDistribution& d, const VarSet& keep) {
  if (keep.empty()) throw Error(ErrorKind::InvalidArgument, "marginalize needs at least one variable");
  std::vector<bool> selected(d.arity(), false);
  for (const auto& v : keep) selected[d.index_of(v)] = true;
  std::vector<std::size_t> idx;
  VarSet names;
  for (std::size_t i = 0; i < d.arity(); ++i) {
    if (selected[i]) {
      idx.push_back(i);
      names.push_back(d.variables()[i]);
    }
  }
  std::map<Outcome, double> masses;
  for (const auto& e : d.events()) masses[project(e.outcome, idx)] += e.p;
  return JointDistribution::from_map(std::move(names), masses);
}

JointDistribution condition(const JointDistribution& d, std::string_view on,
                            std::string_view value) {
  const std::size_t at = d.index_of(on);
  std::vector<std::size_t> rest;
  VarSet names;
  for (std::size_t i = 0; i < d.arity(); ++i) {
    if (i != at) {
      rest.push_back(i);
      names.push_back(d.variables()[i]);
    }
  }
  std::map<Outcome, double> masses;
  double total = 0.0;
  for (const auto& e : d.events()) {
    if (e.outcome[at] == value) {
      masses[project(e.outcome, rest)] += e.p;
      total += e.p;
    }
  }
  if (total <= 0.0) {
    throw Error(ErrorKind::ZeroProbabilityCondition,
                std::string(on) + "=" + std::string(value) + " has zero probability");
  }
  for (auto& [o, p] : masses) p /= total;
  return JointDistribution::from_map(std::move(names), masses);
}

JointDistribution apply_channel(const JointDistribution& d, std::string_view var,
                                const Channel& ch, const VariableName& new_name) {
  const std::size_t at = d.index_of(var);
  VarSet names = d.variables();
  names[at] = new_name;
  std::map<Outcome, double> masses;
  for (const auto& e : d.events()) {
    const auto& row = ch.row(e.outcome[at]);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] <= 0.0) continue;
      Outcome o = e.outcome;
      o[at] = ch.output_alphabet()[j];
      masses[o] += e.p * row[j];
    }
  }
  return JointDistribution::from_map(std::move(names), masses);
}

JointDistribution product_of_marginals(const JointDistribution& d) {
  std::vector<std::map<Symbol, double>> marginals(d.arity());
  for (const auto& e : d.events()) {
    for (std::size_t i = 0; i < d.arity(); ++i) marginals[i][e.outcome[i]] += e.p;
  }
  std::map<Outcome, double> masses{{Outcome{}, 1.0}};
  for (const auto& m : marginals) {
    std::map<Outcome, double> next;
    for (const auto& [prefix, p] : masses) {
      for (const auto& [sym, q] : m) {
        Outcome o = prefix;
        o.push_back(sym);
        next[o] += p * q;
      }
    }
    masses = std::move(next);
  }
  return JointDistribution::from_map(d.variables(), masses);
}

}  // namespace skapid
