#pragma once

// JSON action-spec files. Unknown fields are rejected and every error names
// the JSON pointer of the offending value.

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "zdzeta/action.hpp"
#include "zdzeta/error.hpp"

namespace zdzeta {

namespace detail {

using nlohmann::json;

[[noreturn]] inline void spec_error(ErrorKind kind, const std::string& path, const std::string& what) {
  throw Error(kind, "at " + (path.empty() ? std::string("/") : path) + ": " + what);
}

inline void only_fields(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) spec_error(ErrorKind::InvalidSpec, path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) spec_error(ErrorKind::InvalidSpec, path + "/" + key, "unknown field");
  }
}

inline const json& field(const json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) spec_error(ErrorKind::InvalidSpec, path + "/" + key, "missing required field");
  return j.at(key);
}

inline std::int64_t int_field(const json& j, const std::string& path, const char* key, std::optional<std::int64_t> fallback = {}) {
  if (!j.contains(key)) {
    if (fallback) return *fallback;
    spec_error(ErrorKind::InvalidSpec, path + "/" + key, "missing required field");
  }
  const json& v = j.at(key);
  if (!v.is_number_integer()) spec_error(ErrorKind::InvalidSpec, path + "/" + key, "expected an integer");
  return v.get<std::int64_t>();
}

inline std::string string_at(const json& v, const std::string& path) {
  if (!v.is_string()) spec_error(ErrorKind::InvalidSpec, path, "expected a string");
  return v.get<std::string>();
}

// Runs a parser, prefixing any domain error with the path.
template <class Fn>
auto at_path(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    const std::string what = e.what();
    spec_error(e.kind(), path, what.substr(to_string(e.kind()).size() + 2));
  }
}

inline std::uint32_t prime_field(const json& c, const std::string& path) {
  const std::int64_t p = int_field(c, path, "p");
  if (p < 2 || p > 65521 || !is_prime(static_cast<std::uint64_t>(p))) {
    spec_error(ErrorKind::NotPrime, path + "/p", std::to_string(p) + " is not a supported prime");
  }
  return static_cast<std::uint32_t>(p);
}

inline Component parse_component(const json& c, const std::string& path, int base_dim) {
  if (!c.is_object()) spec_error(ErrorKind::InvalidSpec, path, "expected an object");
  const std::string kind = string_at(field(c, path, "kind"), path + "/kind");
  if (kind == "principal") {
    only_fields(c, path, {"kind", "p", "mult"});
    Principal pr;
    pr.p = prime_field(c, path);
    pr.mult = int_field(c, path, "mult", 1);
    if (pr.mult < 1) spec_error(ErrorKind::InvalidSpec, path + "/mult", "multiplicity must be >= 1");
    return pr;
  }
  if (kind != "curve") spec_error(ErrorKind::InvalidSpec, path + "/kind", "expected \"principal\" or \"curve\"");
  only_fields(c, path, {"kind", "p", "images", "inverted", "mult", "defining_poly"});
  Curve cv;
  cv.p = prime_field(c, path);
  cv.mult = int_field(c, path, "mult", 1);
  if (cv.mult < 1) spec_error(ErrorKind::InvalidSpec, path + "/mult", "multiplicity must be >= 1");
  const json& images = field(c, path, "images");
  if (!images.is_array()) spec_error(ErrorKind::InvalidSpec, path + "/images", "expected an array");
  if (static_cast<int>(images.size()) != base_dim) {
    spec_error(ErrorKind::InvalidSpec, path + "/images", "expected " + std::to_string(base_dim) + " images, found " + std::to_string(images.size()));
  }
  for (std::size_t i = 0; i < images.size(); ++i) {
    const std::string ip = path + "/images/" + std::to_string(i);
    const std::string text = string_at(images[i], ip);
    cv.images.push_back(at_path(ip, [&] { return RatFunc::parse(cv.p, text); }));
    if (cv.images.back().is_zero()) spec_error(ErrorKind::InvalidSpec, ip, "image must be nonzero");
  }
  if (c.contains("inverted")) {
    const json& inv = c.at("inverted");
    if (!inv.is_array()) spec_error(ErrorKind::InvalidSpec, path + "/inverted", "expected an array");
    for (std::size_t i = 0; i < inv.size(); ++i) {
      const std::string ip = path + "/inverted/" + std::to_string(i);
      const std::string text = string_at(inv[i], ip);
      const PolyFp g = at_path(ip, [&] { return PolyFp::parse(cv.p, text); });
      if (!g.is_monic() || !is_irreducible(g)) spec_error(ErrorKind::InvalidSpec, ip, text + " is not monic irreducible");
      cv.inverted.push_back(g);
    }
  }
  if (c.contains("defining_poly")) {
    const std::string dp = path + "/defining_poly";
    const std::string text = string_at(c.at("defining_poly"), dp);
    cv.defining_poly = at_path(dp, [&] { return MultiPoly::parse(cv.p, base_dim, text); });
    at_path(dp, [&] {
      if (!cv.defining_poly->evaluate(cv.images).is_zero()) throw Error(ErrorKind::InvalidSpec, "does not vanish on the images");
      return 0;
    });
  }
  return cv;
}

}  // namespace detail

inline ActionSpec spec_from_json(const nlohmann::json& j) {
  using namespace detail;
  only_fields(j, "", {"d", "suspended", "components"});
  const std::int64_t d = int_field(j, "", "d");
  if (d < 1 || d > kMaxDimension) spec_error(ErrorKind::UnsupportedDimension, "/d", "d must be 1, 2 or 3");
  bool suspended = false;
  if (j.contains("suspended")) {
    if (!j.at("suspended").is_boolean()) spec_error(ErrorKind::InvalidSpec, "/suspended", "expected a boolean");
    suspended = j.at("suspended").get<bool>();
  }
  if (suspended && d < 2) spec_error(ErrorKind::UnsupportedDimension, "/d", "a suspended spec needs d >= 2");
  const json& comps = field(j, "", "components");
  if (!comps.is_array()) spec_error(ErrorKind::InvalidSpec, "/components", "expected an array");
  const int base_dim = static_cast<int>(d) - (suspended ? 1 : 0);
  std::vector<Component> out;
  for (std::size_t i = 0; i < comps.size(); ++i) out.push_back(parse_component(comps[i], "/components/" + std::to_string(i), base_dim));
  return at_path("/components", [&] { return ActionSpec(static_cast<int>(d), std::move(out), suspended); });
}

inline ActionSpec spec_from_string(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, std::string("spec is not valid JSON: ") + e.what());
  }
  return spec_from_json(j);
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidSpec, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline ActionSpec load_spec(const std::string& path) { return spec_from_string(read_text_file(path)); }

inline nlohmann::json spec_to_json(const ActionSpec& spec) {
  nlohmann::json j;
  j["d"] = spec.d();
  j["suspended"] = spec.suspended();
  j["components"] = nlohmann::json::array();
  for (const auto& comp : spec.components()) {
    if (const auto* pr = std::get_if<Principal>(&comp)) {
      j["components"].push_back({{"kind", "principal"}, {"p", pr->p}, {"mult", pr->mult}});
      continue;
    }
    const auto& c = std::get<Curve>(comp);
    nlohmann::json cj{{"kind", "curve"}, {"p", c.p}, {"mult", c.mult}};
    cj["images"] = nlohmann::json::array();
    for (const auto& img : c.images) cj["images"].push_back(img.to_string());
    cj["inverted"] = nlohmann::json::array();
    for (const auto& g : c.inverted) cj["inverted"].push_back(g.to_string());
    if (c.defining_poly) cj["defining_poly"] = c.defining_poly->to_string();
    j["components"].push_back(std::move(cj));
  }
  return j;
}

/// FNV-1a 64 of the canonical JSON form, as 16 hex digits.
inline std::string spec_hash(const ActionSpec& spec) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : spec_to_json(spec).dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

}  // namespace zdzeta
