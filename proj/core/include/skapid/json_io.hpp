#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "skapid/distribution.hpp"
#include "skapid/gacs_korner.hpp"
#include "skapid/marginal.hpp"
#include "skapid/pid.hpp"
#include "skapid/secret_key.hpp"

// Distribution file format:
//   {"variables": ["S0", "S1", "T"],
//    "events": [{"outcome": ["0", "1", "1"], "p": 0.25}, ...]}
// Outcomes are listed in the library's lexicographic order on output.
namespace skapid {

JointDistribution distribution_from_json(const nlohmann::json& j);
/// Parses text in the distribution format; malformed JSON or a wrong shape
/// raises ParseError, a violated distribution invariant raises its own kind.
JointDistribution parse_distribution(std::string_view text);
JointDistribution load_distribution(const std::string& path);

void to_json(nlohmann::json& j, const JointDistribution& d);
void to_json(nlohmann::json& j, const Channel& ch);
void to_json(nlohmann::json& j, const MeetAssignment& m);
void to_json(nlohmann::json& j, const RateBounds& b);
void to_json(nlohmann::json& j, const SkarResult& r);
void to_json(nlohmann::json& j, const TwoWayResult& r);
void to_json(nlohmann::json& j, const Interval& x);
void to_json(nlohmann::json& j, const PidComponents& pid);
void to_json(nlohmann::json& j, const BrojaResult& r);
void to_json(nlohmann::json& j, const EntropyReport& r);
void to_json(nlohmann::json& j, const CmiIdentityReport& r);

/// Inverse of to_json for the result record of a rate computation.
RateBounds rate_bounds_from_json(const nlohmann::json& j);
Channel channel_from_json(const nlohmann::json& j);

}  // namespace skapid
