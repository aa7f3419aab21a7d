#include "sscoord/json_io.hpp"

#include <cstdio>
#include <cstdlib>

namespace sscoord {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const Json& v, const std::string& path) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string& s = v.get_ref<const std::string&>();
    char* end = nullptr;
    double d = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
      throw StructuralError(path + ": '" + s + "' is not a number");
    return d;
  }
  throw StructuralError(path + ": expected a number or numeric string");
}

std::uint64_t parse_seed(const Json& v, const std::string& path) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer()) {
    auto s = v.get<std::int64_t>();
    if (s < 0) throw StructuralError(path + ": seed must be nonnegative");
    return static_cast<std::uint64_t>(s);
  }
  if (v.is_string()) {
    const std::string& s = v.get_ref<const std::string&>();
    char* end = nullptr;
    std::uint64_t u = std::strtoull(s.c_str(), &end, 10);
    if (end == s.c_str() || *end != '\0')
      throw StructuralError(path + ": '" + s + "' is not a 64-bit unsigned decimal");
    return u;
  }
  throw StructuralError(path + ": expected a seed (unsigned decimal)");
}

const Json& require_field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object() || !j.contains(key))
    throw StructuralError(path + ": missing required field '" + key + "'");
  return j.at(key);
}

namespace {

Json axes_to_json(std::span<const Alphabet> axes) {
  Json arr = Json::array();
  for (const auto& a : axes) arr.push_back(Json{{"label", a.label}, {"size", a.size}});
  return arr;
}

std::vector<Alphabet> axes_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw StructuralError(path + ": expected a nonempty array");
  std::vector<Alphabet> axes;
  std::size_t i = 0;
  for (const auto& a : j) {
    std::string p = path + "[" + std::to_string(i++) + "]";
    Alphabet al;
    al.label = require_field(a, "label", p).get<std::string>();
    al.size = require_field(a, "size", p).get<int>();
    axes.push_back(std::move(al));
  }
  return axes;
}

Json probs_to_json(std::span<const double> v) {
  Json arr = Json::array();
  for (double x : v) arr.push_back(format_double(x));
  return arr;
}

std::vector<double> probs_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) throw StructuralError(path + ": expected an array");
  std::vector<double> v;
  v.reserve(j.size());
  std::size_t i = 0;
  for (const auto& x : j) v.push_back(parse_double(x, path + "[" + std::to_string(i++) + "]"));
  return v;
}

}  // namespace

Json to_json(const Pmf& p) {
  return Json{{"axes", axes_to_json(std::span<const Alphabet>(&p.alphabet(), 1))},
              {"probs", probs_to_json(p.probs())}};
}

Json to_json(const Kernel& k) {
  return Json{{"from", axes_to_json(k.from())},
              {"to", axes_to_json(k.to())},
              {"probs", probs_to_json(k.probs())}};
}

Json to_json(const JointPmf& p) {
  return Json{{"axes", axes_to_json(p.axes())}, {"probs", probs_to_json(p.values())}};
}

Pmf pmf_from_json(const Json& j, const std::string& path) {
  auto axes = axes_from_json(require_field(j, "axes", path), path + ".axes");
  if (axes.size() != 1) throw StructuralError(path + ".axes: pmf must have exactly one axis");
  auto probs = probs_from_json(require_field(j, "probs", path), path + ".probs");
  return Pmf(axes[0], std::move(probs));
}

Kernel kernel_from_json(const Json& j, const std::string& path) {
  auto from = axes_from_json(require_field(j, "from", path), path + ".from");
  auto to = axes_from_json(require_field(j, "to", path), path + ".to");
  auto probs = probs_from_json(require_field(j, "probs", path), path + ".probs");
  return Kernel(std::move(from), std::move(to), std::move(probs));
}

JointPmf joint_from_json(const Json& j, const std::string& path) {
  auto axes = axes_from_json(require_field(j, "axes", path), path + ".axes");
  auto probs = probs_from_json(require_field(j, "probs", path), path + ".probs");
  return JointPmf(std::move(axes), std::move(probs));
}

}  // namespace sscoord
