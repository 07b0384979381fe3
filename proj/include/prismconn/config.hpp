#pragma once

// JSON domain/model specs and sweep parsing. Every malformed input ends up
// as ConfigError, which the CLI maps to exit code 2.

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "prismconn/channel.hpp"
#include "prismconn/errors.hpp"
#include "prismconn/geometry.hpp"

namespace prismconn {

using Json = nlohmann::json;

namespace config_detail {

inline double number(const Json& j, const char* key, const char* what) {
  if (!j.contains(key)) throw ConfigError(std::string(what) + ": missing \"" + key + "\"");
  const Json& v = j.at(key);
  if (!v.is_number()) throw ConfigError(std::string(what) + ": \"" + key + "\" must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(std::string(what) + ": \"" + key + "\" is not finite");
  return d;
}

inline std::string kind_of(const Json& j, const char* key, const char* what) {
  if (!j.is_object()) throw ConfigError(std::string(what) + " spec must be a JSON object");
  if (!j.contains(key) || !j.at(key).is_string())
    throw ConfigError(std::string(what) + ": missing string \"" + key + "\"");
  return j.at(key).get<std::string>();
}

// Geometry and channel constructors throw std::invalid_argument/domain_error.
template <class F>
auto wrap(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::logic_error& e) {
    throw ConfigError(std::string(what) + ": " + e.what());
  }
}

}  // namespace config_detail

/// Inline JSON if the text starts with '{' or '[', otherwise a file path.
inline Json load_json(const std::string& text_or_path) {
  std::string text = text_or_path;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw ConfigError("empty JSON spec");
  if (text[first] != '{' && text[first] != '[') {
    std::ifstream in(text_or_path);
    if (!in) throw ConfigError("cannot open config file '" + text_or_path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
}

/// {"kind":"house","L":5}
/// {"kind":"half_cylinder","r":5,"h":4}
/// {"kind":"prism","base":[[x,y],...],"height":h}
inline Domain parse_domain(const Json& j) {
  using namespace config_detail;
  const std::string kind = kind_of(j, "kind", "domain");
  return wrap("domain", [&] {
    if (kind == "house") return build_house(number(j, "L", "house"));
    if (kind == "half_cylinder")
      return build_half_cylinder(number(j, "r", "half_cylinder"), number(j, "h", "half_cylinder"));
    if (kind == "prism") {
      if (!j.contains("base") || !j.at("base").is_array())
        throw ConfigError("prism: \"base\" must be an array of [x, y] pairs");
      std::vector<Point2> pts;
      for (const Json& p : j.at("base")) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
          throw ConfigError("prism: every base vertex must be [x, y]");
        pts.push_back({p[0].get<double>(), p[1].get<double>()});
      }
      return build_right_prism(Polygon2D(pts), number(j, "height", "prism"));
    }
    throw ConfigError("unknown domain kind '" + kind + "' (house, half_cylinder, prism)");
  });
}

/// {"family":"mimo_mrc_2x2","beta":1}
/// {"family":"rayleigh","beta":1,"eta":3}
/// {"family":"hard_disk","r0":1}
inline ConnectivityModel parse_model(const Json& j) {
  using namespace config_detail;
  const std::string family = kind_of(j, "family", "model");
  return wrap("model", [&] {
    if (family == "mimo_mrc_2x2") return ConnectivityModel::mimo_mrc_2x2(number(j, "beta", "model"));
    if (family == "rayleigh")
      return ConnectivityModel::rayleigh(number(j, "beta", "model"), number(j, "eta", "model"));
    if (family == "hard_disk") return ConnectivityModel::hard_disk(number(j, "r0", "model"));
    throw ConfigError("unknown model family '" + family + "' (mimo_mrc_2x2, rayleigh, hard_disk)");
  });
}

inline Json to_json(const Domain& d) {
  switch (d.kind()) {
    case DomainKind::House:
      return {{"kind", "house"}, {"L", d.height()}};
    case DomainKind::HalfCylinder:
      return {{"kind", "half_cylinder"}, {"r", d.radius()}, {"h", d.height()}};
    case DomainKind::RightPrism: {
      Json base = Json::array();
      for (const Point2& p : d.base()->vertices()) base.push_back({p.x, p.y});
      return {{"kind", "prism"}, {"base", base}, {"height", d.height()}};
    }
  }
  return {};
}

inline Json to_json(const ConnectivityModel& m) {
  switch (m.family()) {
    case ChannelFamily::MimoMrc2x2:
      return {{"family", "mimo_mrc_2x2"}, {"beta", m.beta()}};
    case ChannelFamily::RayleighSiso:
      return {{"family", "rayleigh"}, {"beta", m.beta()}, {"eta", m.eta()}};
    case ChannelFamily::HardDisk:
      return {{"family", "hard_disk"}, {"r0", m.r0()}};
  }
  return {};
}

/// "a:b:step", inclusive of b up to rounding.
inline std::vector<double> parse_range(const std::string& s) {
  std::vector<double> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("bad number '" + item + "' in range '" + s + "'");
    }
  }
  if (parts.size() != 3) throw ConfigError("range must be a:b:step, got '" + s + "'");
  const double a = parts[0], b = parts[1], step = parts[2];
  if (!(step > 0.0) || !std::isfinite(step)) throw ConfigError("range step must be positive");
  if (!(b >= a)) throw ConfigError("range end must not be below its start");
  const auto n = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9));
  if (n > 1000000) throw ConfigError("range has too many points");
  std::vector<double> out;
  for (std::size_t i = 0; i <= n; ++i) out.push_back(a + static_cast<double>(i) * step);
  return out;
}

/// "v1,v2,..."
inline std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos)
        throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("bad number '" + item + "' in list '" + s + "'");
    }
  }
  return out;
}

}  // namespace prismconn
