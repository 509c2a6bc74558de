#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "skapid/catalog.hpp"
#include "skapid/gacs_korner.hpp"
#include "skapid/json_io.hpp"
#include "skapid/marginal.hpp"
#include "skapid/pid.hpp"
#include "skapid/secret_key.hpp"
#include "skapid/shannon.hpp"

namespace skapid::cli {

namespace {

using nlohmann::json;

struct Common {
  std::string dist_file;
  std::string catalog_name;
  std::vector<std::string> params;
  std::size_t restarts = 64;
  std::uint64_t seed = 0;
  std::size_t max_iters = 2000;
  std::optional<double> tol;
  std::optional<std::size_t> ebar_size;
  bool json = false;
};

struct Input {
  JointDistribution d;
  json description;
};

std::string num(double v) {
  if (std::abs(v) < 5e-5) v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

double parse_number(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::InvalidArgument, what + ": '" + text + "' is not a number");
  }
}

catalog::Params parse_params(const std::vector<std::string>& raw) {
  catalog::Params out;
  for (const auto& kv : raw) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw Error(ErrorKind::InvalidArgument, "--param expects k=v, got '" + kv + "'");
    }
    out[kv.substr(0, eq)] = parse_number(kv.substr(eq + 1), "--param " + kv.substr(0, eq));
  }
  return out;
}

Input load(const Common& c) {
  if (c.dist_file.empty() == c.catalog_name.empty()) {
    throw Error(ErrorKind::InvalidArgument, "give exactly one of --dist FILE or --catalog NAME");
  }
  if (!c.dist_file.empty()) {
    if (!c.params.empty()) throw Error(ErrorKind::InvalidArgument, "--param only applies to --catalog");
    return {load_distribution(c.dist_file), {{"file", c.dist_file}}};
  }
  const auto params = parse_params(c.params);
  return {catalog::get(c.catalog_name, params), {{"catalog", c.catalog_name}, {"params", params}}};
}

OptimizerConfig config(const Common& c) {
  OptimizerConfig cfg;
  cfg.restarts = c.restarts;
  cfg.seed = c.seed;
  cfg.max_iters = c.max_iters;
  if (c.tol) cfg.result_tol = *c.tol;
  cfg.ebar_size = c.ebar_size;
  cfg.validate();
  return cfg;
}

void add_input(CLI::App* app, Common& c) {
  app->add_option("--dist", c.dist_file, "Distribution JSON file");
  app->add_option("--catalog", c.catalog_name, "Catalog entry name");
  app->add_option("--param", c.params, "Catalog parameter k=v (repeatable)");
  app->add_flag("--json", c.json, "Emit structured JSON");
}

void add_optimizer(CLI::App* app, Common& c) {
  app->add_option("--restarts", c.restarts, "Random restarts per optimization")->check(CLI::PositiveNumber);
  app->add_option("--seed", c.seed, "Seed for random restarts");
  app->add_option("--max-iters", c.max_iters, "Iteration cap per restart")->check(CLI::PositiveNumber);
  app->add_option("--tol", c.tol, "Result / consistency tolerance")->check(CLI::PositiveNumber);
  app->add_option("--ebar-size", c.ebar_size, "Eavesdropper channel output size")->check(CLI::PositiveNumber);
}

VarSet require_vars(const JointDistribution& d, const std::string& flag, const std::string& spec) {
  const auto vars = split(spec, ',');
  if (vars.empty()) throw Error(ErrorKind::InvalidArgument, flag + " names no variable");
  for (const auto& v : vars) {
    if (!d.has_variable(v)) throw Error(ErrorKind::UnknownVariable, flag + " names '" + v + "'");
  }
  return vars;
}

PidRoles roles_from(const JointDistribution& d, const std::string& sources, const std::string& target) {
  const auto s = require_vars(d, "--sources", sources);
  if (s.size() != 2) throw Error(ErrorKind::InvalidArgument, "--sources needs exactly two variables");
  const auto t = require_vars(d, "--target", target);
  if (t.size() != 1) throw Error(ErrorKind::InvalidArgument, "--target needs exactly one variable");
  PidRoles r{s[0], s[1], t[0]};
  const VarSet a{r.source_0}, b{r.source_1}, c{r.target};
  require_disjoint({&a, &b, &c});
  return r;
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

void print_distribution(std::ostream& out, const JointDistribution& d) {
  for (const auto& v : d.variables()) out << v << '\t';
  out << "p\n";
  for (const auto& e : d.events()) {
    for (const auto& s : e.outcome) out << s << '\t';
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", e.p);
    out << buf << '\n';
  }
}

std::string show(const Interval& x) {
  if (x.hi - x.lo < 5e-5) return num(x.mid());
  return "[" + num(x.lo) + ", " + num(x.hi) + "]";
}

void print_pid(std::ostream& out, const PidComponents& pid, const PidRoles& roles) {
  const std::string s0 = roles.source_0, s1 = roles.source_1, t = roles.target;
  auto row = [&](const std::string& label, const std::string& value) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "  %-24s %s\n", label.c_str(), value.c_str());
    out << buf;
  };
  const std::string cross = "✗";
  out << "PID of I[" << s0 << s1 << ":" << t << "] = " << num(pid.mi_joint) << " bit, scheme "
      << to_string(pid.scheme) << '\n';
  row("synergy", pid.consistent ? show(pid.synergy) : cross);
  row("unique " + s0 + " (\\" + s1 + ")", show(pid.unique_0));
  row("unique " + s1 + " (\\" + s0 + ")", show(pid.unique_1));
  row("redundancy", pid.consistent ? show(pid.redundancy) : cross);
  if (pid.consistent) {
    out << "consistent (residual " << num(pid.residual) << ")\n";
  } else {
    out << "inconsistent: redundancy would be " << show(pid.redundancy_via_0) << " via " << s0
        << " but " << show(pid.redundancy_via_1) << " via " << s1 << '\n';
  }
}

void caveat(std::ostream& err, PidScheme scheme) {
  if (scheme == PidScheme::ElephantOneWay || scheme == PidScheme::Broja) return;
  err << "note: the '" << to_string(scheme)
      << "' scheme does not give consistent decompositions in general; "
         "catalog entry 'problem' is a counterexample\n";
}

json optimizer_json(const OptimizerConfig& cfg) {
  json j = {{"restarts", cfg.restarts},
            {"seed", cfg.seed},
            {"max_iters", cfg.max_iters},
            {"step_rule", cfg.step_rule},
            {"convergence_tol", cfg.convergence_tol},
            {"result_tol", cfg.result_tol}};
  j["ebar_size"] = cfg.ebar_size ? json(*cfg.ebar_size) : json(nullptr);
  return j;
}

// --- subcommands -----------------------------------------------------------

int cmd_info(const Common& c, const std::string& sources, const std::string& target,
             std::ostream& out) {
  const auto in = load(c);
  const auto& d = in.d;
  json j = {{"command", "info"}, {"input", in.description}, {"distribution", d}};
  json measures = json::object();
  measures["H"] = entropy(d);
  for (const auto& v : d.variables()) measures["H[" + v + "]"] = entropy(d, {v});

  const auto s = split(sources, ',');
  const bool roles_ok = s.size() == 2 && d.has_variable(s[0]) && d.has_variable(s[1]) &&
                        d.has_variable(target) && s[0] != s[1] && s[0] != target && s[1] != target;
  if (roles_ok) {
    const VarSet a{s[0]}, b{s[1]}, t{target};
    measures["I[" + s[0] + ":" + target + "]"] = mutual_information(d, a, t);
    measures["I[" + s[1] + ":" + target + "]"] = mutual_information(d, b, t);
    measures["I[" + s[0] + s[1] + ":" + target + "]"] = mutual_information(d, {s[0], s[1]}, t);
    measures["I[" + s[0] + ":" + target + "|" + s[1] + "]"] = conditional_mutual_information(d, a, t, b);
    measures["I[" + s[1] + ":" + target + "|" + s[0] + "]"] = conditional_mutual_information(d, b, t, a);
    measures["meet components " + s[0] + ";" + target] = meet(d, a, t).components;
    measures["meet components " + s[1] + ";" + target] = meet(d, b, t).components;
  }
  j["measures"] = measures;
  if (c.json) {
    emit(out, j);
    return kSuccess;
  }
  out << "variables: ";
  for (const auto& v : d.variables()) out << v << ' ';
  out << "(" << d.size() << " outcomes)\n";
  print_distribution(out, d);
  for (auto it = measures.begin(); it != measures.end(); ++it) {
    char buf[96];
    const std::string value = it->is_number_integer() ? std::to_string(it->get<int>()) : num(it->get<double>());
    std::snprintf(buf, sizeof buf, "%-28s %s\n", it.key().c_str(), value.c_str());
    out << buf;
  }
  return kSuccess;
}

int cmd_skar(const Common& c, const std::string& pa, const std::string& pb, const std::string& pe,
             const std::string& mode, std::ostream& out) {
  const auto in = load(c);
  const auto cfg = config(c);
  const auto a = require_vars(in.d, "--party-a", pa);
  const auto b = require_vars(in.d, "--party-b", pb);
  const VarSet e = pe.empty() ? VarSet{} : require_vars(in.d, "--eve", pe);
  require_disjoint({&a, &b, &e});

  json j = {{"command", "skar"},
            {"input", in.description},
            {"mode", mode},
            {"parties", {{"a", a}, {"b", b}, {"eve", e}}},
            {"optimizer", optimizer_json(cfg)}};
  RateBounds bounds;
  bool converged = true;
  if (mode == "none") {
    const double v = skar_no_comm(in.d, a, b, e);
    bounds = {v, v, true};
    j["result"] = {{"value", v}, {"bounds", bounds}, {"converged", true}, {"meet", meet(in.d, a, b)}};
  } else if (mode == "one-way-a" || mode == "one-way-b") {
    const auto r = mode == "one-way-a" ? skar_one_way(in.d, a, b, e, cfg) : skar_one_way(in.d, b, a, e, cfg);
    bounds = {r.value, r.value, true};
    converged = r.converged;
    j["result"] = r;
  } else if (mode == "two-way") {
    const auto r = skar_two_way_bounds(in.d, a, b, e, cfg);
    bounds = r.bounds;
    converged = r.converged();
    j["result"] = r;
  } else if (mode == "intrinsic") {
    const auto r = intrinsic_mutual_information(in.d, a, b, e, cfg);
    bounds = {r.value, r.value, true};
    converged = r.converged;
    j["result"] = r;
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown --mode '" + mode + "'");
  }

  if (c.json) {
    emit(out, j);
  } else {
    auto names = [](const VarSet& v) {
      std::string s;
      for (const auto& x : v) s += x;
      return s.empty() ? std::string("-") : s;
    };
    out << "mode " << mode << ": A=" << names(a) << " B=" << names(b) << " E=" << names(e) << '\n';
    if (mode == "two-way") {
      out << "  lower (best one-way)   " << num(bounds.lower) << '\n';
      out << "  upper (intrinsic MI)   " << num(bounds.upper) << '\n';
      out << "  " << (bounds.exact ? "bounds meet" : "bounds open") << '\n';
    } else {
      out << "  rate                   " << num(bounds.lower) << '\n';
    }
    if (!converged) out << "  warning: optimizer did not converge\n";
  }
  return converged ? kSuccess : kNotConverged;
}

int cmd_pid(const Common& c, const std::string& sources, const std::string& target,
            const std::string& scheme_name, std::ostream& out, std::ostream& err) {
  const auto in = load(c);
  const auto cfg = config(c);
  const auto roles = roles_from(in.d, sources, target);
  const auto scheme = parse_scheme(scheme_name);
  caveat(err, scheme);

  json j = {{"command", "pid"}, {"input", in.description}, {"optimizer", optimizer_json(cfg)}};
  j["roles"] = {{"sources", {roles.source_0, roles.source_1}}, {"target", roles.target}};
  int code = kSuccess;
  PidComponents pid;
  try {
    pid = decompose(in.d, roles, scheme, cfg, c.tol);
    j["cmi_identity"] = cmi_identity_report(in.d, roles, pid);
    if (!pid.converged) code = kNotConverged;
  } catch (const InconsistentDecomposition& ex) {
    pid = ex.partial();
    code = kInconsistent;
    if (!c.json) err << "inconsistent decomposition: " << ex.detail() << '\n';
  }
  j["pid"] = pid;
  if (c.json) {
    emit(out, j);
  } else {
    print_pid(out, pid, roles);
    if (!pid.converged) out << "warning: optimizer did not converge\n";
  }
  return code;
}

int cmd_broja(const Common& c, const std::string& sources, const std::string& target,
              std::ostream& out) {
  const auto in = load(c);
  const auto cfg = config(c);
  const auto roles = roles_from(in.d, sources, target);
  const auto r = broja_minimize(in.d, roles, cfg);
  const auto report = broja_intermediate_entropy_report(in.d, roles, cfg);
  if (c.json) {
    emit(out, {{"command", "broja"}, {"input", in.description}, {"result", r}, {"entropies", report}});
  } else {
    out << "minimum I[" << roles.source_0 << roles.source_1 << ":" << roles.target
        << "] over the source-target marginal family: " << num(r.min_mi) << '\n';
    print_pid(out, r.pid, roles);
    out << "entropies: original " << num(report.h_original) << ", minimizer " << num(report.h_broja)
        << ", max-entropy " << num(report.h_maxent) << '\n';
    out << "minimizer:\n";
    print_distribution(out, r.q_star);
  }
  return r.converged ? kSuccess : kNotConverged;
}

int cmd_maxent(const Common& c, const std::vector<std::string>& marginals, const std::string& sources,
               const std::string& target, std::ostream& out) {
  const auto in = load(c);
  const auto cfg = config(c);
  MarginalPolytope poly{in.d, {}};
  if (marginals.empty()) {
    const auto roles = roles_from(in.d, sources, target);
    poly.constraint_sets = {{roles.source_0, roles.target}, {roles.source_1, roles.target}};
  } else {
    for (const auto& m : marginals) poly.constraint_sets.push_back(require_vars(in.d, "--marginal", m));
  }
  const auto q = maxent_with_marginals(poly, cfg);
  if (c.json) {
    emit(out, {{"command", "maxent"},
               {"input", in.description},
               {"constraints", poly.constraint_sets},
               {"distribution", q},
               {"entropy", entropy(q)},
               {"base_entropy", entropy(in.d)},
               {"max_violation", poly.max_violation(q)}});
  } else {
    out << "max-entropy distribution (H = " << num(entropy(q)) << ", base H = " << num(entropy(in.d))
        << ")\n";
    print_distribution(out, q);
  }
  return kSuccess;
}

int cmd_connected(const Common& c, std::optional<std::size_t> order, std::ostream& out) {
  const auto in = load(c);
  const auto cfg = config(c);
  const std::size_t k = order.value_or(in.d.arity());
  const double v = connected_information(in.d, k, cfg);
  if (c.json) {
    emit(out, {{"command", "connected"}, {"input", in.description}, {"order", k}, {"value", v}});
  } else {
    out << "connected information of order " << k << ": " << num(v) << " bit\n";
  }
  return kSuccess;
}

int cmd_catalog(const Common& c, std::ostream& out) {
  if (c.catalog_name.empty()) {
    json entries = json::array();
    for (const auto& e : catalog::list()) {
      json params = json::array();
      for (const auto& p : e.parameters) {
        params.push_back({{"name", p.name},
                          {"min", p.min},
                          {"max", p.max},
                          {"default", p.default_value},
                          {"description", p.description}});
      }
      entries.push_back({{"name", e.name}, {"summary", e.summary}, {"role", e.role}, {"parameters", params}});
    }
    if (c.json) {
      emit(out, {{"command", "catalog"}, {"entries", entries}});
    } else {
      for (const auto& e : catalog::list()) {
        out << e.name << ": " << e.summary << '\n';
        for (const auto& p : e.parameters) {
          out << "    --param " << p.name << "=<" << num(p.min) << ".." << num(p.max) << "> ("
              << p.description << ", default " << num(p.default_value) << ")\n";
        }
      }
    }
    return kSuccess;
  }
  const auto in = load(c);
  if (c.json) {
    json j;
    to_json(j, in.d);
    emit(out, j);
  } else {
    print_distribution(out, in.d);
  }
  return kSuccess;
}

int cmd_sweep(const Common& c, const std::string& range, const std::string& pa, const std::string& pb,
              const std::string& pe, std::ostream& out) {
  if (c.catalog_name.empty()) throw Error(ErrorKind::InvalidArgument, "sweep needs --catalog");
  const auto eq = range.find('=');
  const auto parts = eq == std::string::npos ? std::vector<std::string>{} : split(range.substr(eq + 1), ':');
  if (parts.size() != 3) throw Error(ErrorKind::InvalidArgument, "--range expects name=lo:hi:step");
  const std::string key = range.substr(0, eq);
  const double lo = parse_number(parts[0], "--range lo");
  const double hi = parse_number(parts[1], "--range hi");
  const double step = parse_number(parts[2], "--range step");
  if (!(step > 0.0) || hi < lo) throw Error(ErrorKind::InvalidArgument, "--range needs step > 0 and lo <= hi");
  const auto cfg = config(c);
  auto base_params = parse_params(c.params);
  const bool analytic = c.catalog_name == "gb-erased" && key == "p";

  const auto rows = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  json table = json::array();
  bool converged = true;
  for (std::size_t i = 0; i < rows; ++i) {
    const double v = std::min(hi, lo + static_cast<double>(i) * step);
    auto params = base_params;
    params[key] = v;
    const auto d = catalog::get(c.catalog_name, params);
    const auto a = require_vars(d, "--party-a", pa);
    const auto b = require_vars(d, "--party-b", pb);
    const auto e = require_vars(d, "--eve", pe);
    const auto ow_a = skar_one_way(d, a, b, e, cfg);
    const auto ow_b = skar_one_way(d, b, a, e, cfg);
    const auto imi = intrinsic_mutual_information(d, a, b, e, cfg);
    converged = converged && ow_a.converged && ow_b.converged && imi.converged;
    json row = {{key, v},
                {"cmi", conditional_mutual_information(d, a, b, e)},
                {"one_way_a", ow_a.value},
                {"one_way_b", ow_b.value},
                {"intrinsic", imi.value}};
    row["reference"] = analytic ? json(v * (1.0 - v) * (1.0 - v)) : json(nullptr);
    table.push_back(row);
  }
  if (c.json) {
    emit(out, {{"command", "sweep"},
               {"catalog", c.catalog_name},
               {"parameter", key},
               {"optimizer", optimizer_json(cfg)},
               {"rows", table}});
  } else {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-8s %-10s %-10s %-10s %-10s %-10s\n", key.c_str(), "I(A:B|E)",
                  analytic ? "p(1-p)^2" : "-", "one-way-a", "one-way-b", "intrinsic");
    out << buf;
    for (const auto& row : table) {
      std::snprintf(buf, sizeof buf, "%-8.4g %-10s %-10s %-10s %-10s %-10s\n", row[key].get<double>(),
                    num(row["cmi"]).c_str(),
                    row["reference"].is_null() ? "-" : num(row["reference"]).c_str(),
                    num(row["one_way_a"]).c_str(), num(row["one_way_b"]).c_str(),
                    num(row["intrinsic"]).c_str());
      out << buf;
    }
  }
  return converged ? kSuccess : kNotConverged;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InconsistentDecomposition: return kInconsistent;
    case ErrorKind::ConvergenceFailure: return kNotConverged;
    default: return kInvalidInput;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Partial information decompositions from secret key agreement rates", "skapid"};
  app.require_subcommand(1);

  Common common;
  std::string sources = "S0,S1", target = "T";
  std::string party_a, party_b, eve;
  std::string mode = "two-way";
  std::string scheme = "elephant";
  std::vector<std::string> marginals;
  std::optional<std::size_t> order;
  std::string range;

  auto* info = app.add_subcommand("info", "Entropies and mutual informations");
  add_input(info, common);
  info->add_option("--sources", sources, "Two source variables, comma separated");
  info->add_option("--target", target, "Target variable");

  auto* skar = app.add_subcommand("skar", "Secret key agreement rates");
  add_input(skar, common);
  add_optimizer(skar, common);
  skar->add_option("--party-a", party_a, "Alice's variables")->required();
  skar->add_option("--party-b", party_b, "Bob's variables")->required();
  skar->add_option("--eve", eve, "Eve's variables");
  skar->add_option("--mode", mode, "none | one-way-a | one-way-b | two-way | intrinsic")
      ->check(CLI::IsMember({"none", "one-way-a", "one-way-b", "two-way", "intrinsic"}));

  auto* pid = app.add_subcommand("pid", "Partial information decomposition");
  add_input(pid, common);
  add_optimizer(pid, common);
  pid->add_option("--sources", sources, "Two source variables, comma separated");
  pid->add_option("--target", target, "Target variable");
  pid->add_option("--scheme", scheme, "none | camel | elephant | two-way | broja")
      ->check(CLI::IsMember({"none", "camel", "elephant", "two-way", "broja"}));

  auto* broja = app.add_subcommand("broja", "Minimize I[S0S1:T] over the source-target marginal family");
  add_input(broja, common);
  add_optimizer(broja, common);
  broja->add_option("--sources", sources, "Two source variables, comma separated");
  broja->add_option("--target", target, "Target variable");

  auto* maxent = app.add_subcommand("maxent", "Maximum-entropy distribution with pinned marginals");
  add_input(maxent, common);
  add_optimizer(maxent, common);
  maxent->add_option("--marginal", marginals, "Pinned variable set, comma separated (repeatable)");
  maxent->add_option("--sources", sources, "Default constraints: each source with the target");
  maxent->add_option("--target", target, "Target variable");

  auto* connected = app.add_subcommand("connected", "Connected information of a given order");
  add_input(connected, common);
  add_optimizer(connected, common);
  connected->add_option("--order", order, "Order k (default: number of variables)");

  auto* cat = app.add_subcommand("catalog", "List catalog entries or print one");
  cat->add_option("--catalog", common.catalog_name, "Entry to print");
  cat->add_option("--param", common.params, "Catalog parameter k=v (repeatable)");
  cat->add_flag("--json", common.json, "Emit JSON");

  auto* sweep = app.add_subcommand("sweep", "Rates across a catalog parameter range");
  add_input(sweep, common);
  add_optimizer(sweep, common);
  sweep->add_option("--range", range, "name=lo:hi:step")->required();
  sweep->add_option("--party-a", party_a, "Alice's variables")->default_val("S0");
  sweep->add_option("--party-b", party_b, "Bob's variables")->default_val("T");
  sweep->add_option("--eve", eve, "Eve's variables")->default_val("S1");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kInvalidInput;
  }

  try {
    if (*info) return cmd_info(common, sources, target, out);
    if (*skar) return cmd_skar(common, party_a, party_b, eve, mode, out);
    if (*pid) return cmd_pid(common, sources, target, scheme, out, err);
    if (*broja) return cmd_broja(common, sources, target, out);
    if (*maxent) return cmd_maxent(common, marginals, sources, target, out);
    if (*connected) return cmd_connected(common, order, out);
    if (*cat) return cmd_catalog(common, out);
    if (*sweep) return cmd_sweep(common, range, party_a, party_b, eve, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }
  return kInvalidInput;
}

}  // namespace skapid::cli
