#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"
#include "sscoord/prob.hpp"

namespace sscoord {

// All files written by this library use ordered keys and render doubles as
// decimal strings with 17 significant digits, so emitted values survive a
// parse round trip bit-exactly and reruns are byte-identical.
using Json = nlohmann::ordered_json;

std::string format_double(double v);
double parse_double(const Json& v, const std::string& path);
std::uint64_t parse_seed(const Json& v, const std::string& path);

Json to_json(const Pmf& p);
Json to_json(const Kernel& k);
Json to_json(const JointPmf& p);

Pmf pmf_from_json(const Json& j, const std::string& path);
Kernel kernel_from_json(const Json& j, const std::string& path);
JointPmf joint_from_json(const Json& j, const std::string& path);

// Field access that reports the offending path on error.
const Json& require_field(const Json& j, const std::string& key, const std::string& path);

}  // namespace sscoord
