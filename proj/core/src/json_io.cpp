#include "skapid/json_io.hpp"

#include <fstream>
#include <sstream>

namespace skapid {

using nlohmann::json;

namespace {

[[noreturn]] void bad_shape(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

std::vector<std::string> string_array(const json& j, const std::string& what) {
  if (!j.is_array()) bad_shape(what + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& x : j) {
    if (!x.is_string()) bad_shape(what + " must contain only strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

}  // namespace

JointDistribution distribution_from_json(const json& j) {
  if (!j.is_object()) bad_shape("distribution must be a JSON object");
  if (!j.contains("variables")) bad_shape("missing \"variables\"");
  if (!j.contains("events")) bad_shape("missing \"events\"");
  auto variables = string_array(j.at("variables"), "\"variables\"");
  const auto& evs = j.at("events");
  if (!evs.is_array()) bad_shape("\"events\" must be an array");
  std::vector<Event> events;
  for (const auto& ev : evs) {
    if (!ev.is_object() || !ev.contains("outcome") || !ev.contains("p")) {
      bad_shape("each event needs \"outcome\" and \"p\"");
    }
    if (!ev.at("p").is_number()) bad_shape("\"p\" must be a number");
    events.push_back({string_array(ev.at("outcome"), "\"outcome\""), ev.at("p").get<double>()});
  }
  return JointDistribution::from_events(std::move(variables), std::move(events));
}

JointDistribution parse_distribution(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  return distribution_from_json(j);
}

JointDistribution load_distribution(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_distribution(buf.str());
}

void to_json(json& j, const JointDistribution& d) {
  j = json::object();
  j["variables"] = d.variables();
  json events = json::array();
  for (const auto& e : d.events()) events.push_back({{"outcome", e.outcome}, {"p", e.p}});
  j["events"] = std::move(events);
}

void to_json(json& j, const Channel& ch) {
  j = {{"input_alphabet", ch.input_alphabet()},
       {"output_alphabet", ch.output_alphabet()},
       {"rows", ch.rows()}};
}

Channel channel_from_json(const json& j) {
  try {
    return Channel(j.at("input_alphabet").get<std::vector<Symbol>>(),
                   j.at("output_alphabet").get<std::vector<Symbol>>(),
                   j.at("rows").get<std::vector<std::vector<double>>>());
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

void to_json(json& j, const MeetAssignment& m) {
  json a = json::array(), b = json::array();
  for (const auto& [sym, label] : m.a_component) a.push_back({{"symbols", sym}, {"component", label}});
  for (const auto& [sym, label] : m.b_component) b.push_back({{"symbols", sym}, {"component", label}});
  j = {{"components", m.components}, {"a", a}, {"b", b}};
}

void to_json(json& j, const RateBounds& b) {
  j = {{"lower", b.lower}, {"upper", b.upper}, {"exact", b.exact}};
}

RateBounds rate_bounds_from_json(const json& j) {
  try {
    return {j.at("lower").get<double>(), j.at("upper").get<double>(), j.at("exact").get<bool>()};
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

void to_json(json& j, const SkarResult& r) {
  j = {{"value", r.value},
       {"objective", r.objective},
       {"bounds", r.bounds},
       {"converged", r.converged},
       {"restarts_used", r.restarts_used},
       {"best_restart_index", r.best_restart_index}};
  if (r.one_way) {
    j["parametrization"] = {{"k_given_a", r.one_way->k_given_a}, {"c_given_k", r.one_way->c_given_k}};
  } else if (r.eve_channel) {
    j["parametrization"] = {{"ebar_given_e", *r.eve_channel}};
  } else {
    j["parametrization"] = nullptr;
  }
}

void to_json(json& j, const TwoWayResult& r) {
  j = {{"bounds", r.bounds},
       {"converged", r.converged()},
       {"one_way_a", r.a_to_b},
       {"one_way_b", r.b_to_a},
       {"intrinsic", r.intrinsic}};
}

void to_json(json& j, const Interval& x) {
  if (x.is_point()) {
    j = x.lo;
  } else {
    j = {{"lower", x.lo}, {"upper", x.hi}};
  }
}

void to_json(json& j, const PidComponents& pid) {
  j = {{"scheme", std::string(to_string(pid.scheme))},
       {"consistent", pid.consistent},
       {"residual", pid.residual},
       {"redundancy_candidates", {pid.redundancy_via_0, pid.redundancy_via_1}},
       {"mutual_information", {{"S0_T", pid.mi_0}, {"S1_T", pid.mi_1}, {"S0S1_T", pid.mi_joint}}},
       {"clamped", pid.clamped},
       {"converged", pid.converged}};
  if (pid.consistent) {
    j["redundancy"] = pid.redundancy;
    j["unique_0"] = pid.unique_0;
    j["unique_1"] = pid.unique_1;
    j["synergy"] = pid.synergy;
  } else {
    j["redundancy"] = nullptr;
    j["unique_0"] = pid.unique_0;
    j["unique_1"] = pid.unique_1;
    j["synergy"] = nullptr;
  }
}

void to_json(json& j, const BrojaResult& r) {
  j = {{"q_star", r.q_star},
       {"min_mi", r.min_mi},
       {"pid", r.pid},
       {"iterations", r.iterations},
       {"converged", r.converged}};
}

void to_json(json& j, const EntropyReport& r) {
  j = {{"h_original", r.h_original}, {"h_broja", r.h_broja}, {"h_maxent", r.h_maxent}};
}

void to_json(json& j, const CmiIdentityReport& r) {
  j = {{"cmi_0", r.cmi_0}, {"cmi_1", r.cmi_1}, {"defect_0", r.defect_0}, {"defect_1", r.defect_1}};
}

}  // namespace skapid
