#pragma once

#include "toricq/errors.hpp"
#include "toricq/fan/fan.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace toricq {

namespace detail {

inline Integer json_integer(const nlohmann::json &j, const std::string &where) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) {
    Integer v;
    if (v.set_str(j.get<std::string>(), 10) == 0) return v;
  }
  throw Error(ErrorKind::Parse, where + ": expected an integer");
}

inline nlohmann::ordered_json integer_json(const Integer &v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

inline const nlohmann::json &require(const nlohmann::json &j, const char *key, const std::string &where) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::Parse, where + ": missing field '" + key + "'");
  return j.at(key);
}

inline nlohmann::json parse_json_text(const std::string &text, const std::string &where) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    throw Error(ErrorKind::Parse, where + ": " + e.what());
  }
}

inline std::string read_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace detail

/// Parses {"rank": n, "rays": [[...], ...], "maxcones": [[...], ...]}.
/// Only syntax is checked here; structural checks belong to validate().
inline Fan fan_from_json(const nlohmann::json &j) {
  Fan f;
  const auto &rank = detail::require(j, "rank", "fan");
  if (!rank.is_number_integer() || rank.get<long>() < 0) throw Error(ErrorKind::Parse, "fan: 'rank' must be a non-negative integer");
  f.rank = rank.get<std::size_t>();
  const auto &rays = detail::require(j, "rays", "fan");
  if (!rays.is_array()) throw Error(ErrorKind::Parse, "fan: 'rays' must be a list");
  for (const auto &r : rays) {
    if (!r.is_array()) throw Error(ErrorKind::Parse, "fan: each ray must be a list of integers");
    IntVector u;
    for (const auto &x : r) u.push_back(detail::json_integer(x, "fan ray"));
    f.rays.push_back(std::move(u));
  }
  const auto &cones = detail::require(j, "maxcones", "fan");
  if (!cones.is_array()) throw Error(ErrorKind::Parse, "fan: 'maxcones' must be a list");
  for (const auto &c : cones) {
    if (!c.is_array()) throw Error(ErrorKind::Parse, "fan: each maximal cone must be a list of ray indices");
    Cone cone;
    for (const auto &x : c) {
      if (!x.is_number_integer() || x.get<long>() < 0) throw Error(ErrorKind::Parse, "fan: ray indices must be non-negative integers");
      cone.push_back(x.get<std::size_t>());
    }
    f.maxcones.push_back(std::move(cone));
  }
  return f;
}

inline nlohmann::ordered_json fan_to_json(const Fan &f) {
  nlohmann::ordered_json j;
  j["rank"] = f.rank;
  auto rays = nlohmann::ordered_json::array();
  for (const auto &u : f.rays) {
    auto r = nlohmann::ordered_json::array();
    for (const auto &x : u) r.push_back(detail::integer_json(x));
    rays.push_back(r);
  }
  j["rays"] = rays;
  j["maxcones"] = f.maxcones;
  return j;
}

inline Fan parse_fan(const std::string &text) { return fan_from_json(detail::parse_json_text(text, "fan")); }

inline Fan load_fan(const std::string &path) { return parse_fan(detail::read_file(path)); }

} // namespace toricq
