#include "fracctrl/config.hpp"

#include <cmath>
#include <sstream>

namespace fracctrl {

SpectralField ProfileSpec::realize(const EigenBasis& basis) const {
  const int n = basis.n_modes();
  switch (kind) {
    case Kind::Zero:
      return SpectralField::zero(n);
    case Kind::Mode:
      if (mode < 1 || mode > n)
        throw ConfigError("profile mode index out of range for n_modes");
      return SpectralField::unit(n, mode);
    case Kind::Bump: {
      const double c = center, w = width;
      return expand_function(
                 [c, w](double x) {
                   const double d = (x - c) / w;
                   return std::exp(-0.5 * d * d);
                 },
                 basis, 8 * n)
          .field;
    }
    case Kind::Coeffs: {
      SpectralField f = SpectralField::zero(n);
      for (std::size_t i = 0; i < coeffs.size() && i < static_cast<std::size_t>(n); ++i)
        f.coeffs(static_cast<int>(i)) = coeffs[i];
      return f;
    }
  }
  throw ConfigError("profile: unknown kind");
}

std::string ProfileSpec::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Zero:
      return "zero";
    case Kind::Mode:
      os << "mode:" << mode;
      return os.str();
    case Kind::Bump:
      os << "bump:" << center << "," << width;
      return os.str();
    case Kind::Coeffs:
      os << "coeffs:";
      for (std::size_t i = 0; i < coeffs.size(); ++i) os << (i ? "," : "") << coeffs[i];
      return os.str();
  }
  return "?";
}

void ProblemConfig::validate(bool hum_requested) const {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("alpha out of (0,1]");
  if (hum_requested && !(alpha > 0.5 && alpha < 1.0))
    throw ConfigError("alpha out of (1/2,1): HUM synthesis needs 2(alpha-1) > -1");
  if (!(T > 0.0)) throw ConfigError("T must be > 0");
  if (n_modes < 1) throw ConfigError("n_modes must be >= 1");
  if (!actuator) throw ConfigError("actuator is required");
  if (!region) throw ConfigError("region is required");
  if (epsilon < 0.0) throw ConfigError("epsilon must be >= 0");
  if (!(gain_tol > 0.0)) throw ConfigError("gain_tol must be > 0");
  quad.validate();
  mlf.validate();
}

namespace {

double parse_double(const std::string& s, const std::string& key, int line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size()) {
    std::ostringstream os;
    os << "line " << line << ": key '" << key << "': unparseable number '" << s << "'";
    throw ConfigError(os.str());
  }
  return v;
}

long parse_int(const std::string& s, const std::string& key, int line) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size()) {
    std::ostringstream os;
    os << "line " << line << ": key '" << key << "': unparseable integer '" << s << "'";
    throw ConfigError(os.str());
  }
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

std::string strip(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  std::size_t e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

ProfileSpec parse_profile(const std::string& val, const std::string& key, int line) {
  ProfileSpec p;
  if (val == "zero") {
    p.kind = ProfileSpec::Kind::Zero;
    return p;
  }
  const std::size_t colon = val.find(':');
  const std::string head = val.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : val.substr(colon + 1);
  if (head == "mode") {
    p.kind = ProfileSpec::Kind::Mode;
    p.mode = static_cast<int>(parse_int(rest, key, line));
    if (p.mode < 1) throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                                      "': mode index must be >= 1");
    return p;
  }
  if (head == "bump") {
    const auto parts = split(rest, ',');
    if (parts.size() != 2)
      throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                        "': bump needs center,width");
    p.kind = ProfileSpec::Kind::Bump;
    p.center = parse_double(parts[0], key, line);
    p.width = parse_double(parts[1], key, line);
    if (!(p.width > 0.0))
      throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                        "': bump width must be > 0");
    return p;
  }
  if (head == "coeffs") {
    p.kind = ProfileSpec::Kind::Coeffs;
    for (const std::string& part : split(rest, ','))
      p.coeffs.push_back(parse_double(strip(part), key, line));
    return p;
  }
  throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                    "': unknown profile '" + val + "'");
}

}  // namespace

ProblemConfig parse_config(const std::string& text) {
  ProblemConfig cfg;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string s = strip(raw);
    if (s.empty()) continue;
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line) + ": expected key=value, got '" + s + "'");
    const std::string key = strip(s.substr(0, eq));
    const std::string val = strip(s.substr(eq + 1));

    if (key == "alpha") {
      cfg.alpha = parse_double(val, key, line);
      if (!(cfg.alpha > 0.0 && cfg.alpha <= 1.0))
        throw ConfigError("line " + std::to_string(line) + ": alpha out of (0,1]");
    } else if (key == "T") {
      cfg.T = parse_double(val, key, line);
      if (!(cfg.T > 0.0)) throw ConfigError("line " + std::to_string(line) + ": T must be > 0");
    } else if (key == "n_modes") {
      cfg.n_modes = static_cast<int>(parse_int(val, key, line));
      if (cfg.n_modes < 1)
        throw ConfigError("line " + std::to_string(line) + ": n_modes must be >= 1");
    } else if (key == "actuator") {
      const std::size_t colon = val.find(':');
      const std::string head = val.substr(0, colon);
      const std::string rest = colon == std::string::npos ? "" : val.substr(colon + 1);
      try {
        if (head == "zone") {
          const auto parts = split(rest, ',');
          if (parts.size() != 2) throw std::domain_error("zone needs a1,a2");
          cfg.actuator =
              ActuatorSpec::zone(parse_double(parts[0], key, line), parse_double(parts[1], key, line));
        } else if (head == "point") {
          cfg.actuator = ActuatorSpec::pointwise(parse_double(rest, key, line));
        } else {
          throw std::domain_error("expected zone:a1,a2 or point:b");
        }
      } catch (const std::domain_error& e) {
        throw ConfigError("line " + std::to_string(line) + ": key 'actuator': " + e.what());
      }
    } else if (key == "region") {
      const auto parts = split(val, ',');
      if (parts.size() != 2)
        throw ConfigError("line " + std::to_string(line) + ": key 'region': needs s1,s2");
      try {
        cfg.region = Region(parse_double(parts[0], key, line), parse_double(parts[1], key, line));
      } catch (const std::domain_error& e) {
        throw ConfigError("line " + std::to_string(line) + ": key 'region': " + e.what());
      }
    } else if (key == "z0") {
      cfg.z0 = parse_profile(val, key, line);
    } else if (key == "z_T") {
      cfg.z_T = parse_profile(val, key, line);
    } else if (key == "epsilon") {
      cfg.epsilon = parse_double(val, key, line);
      if (cfg.epsilon < 0.0)
        throw ConfigError("line " + std::to_string(line) + ": epsilon must be >= 0");
    } else if (key == "gain_tol") {
      cfg.gain_tol = parse_double(val, key, line);
      if (!(cfg.gain_tol > 0.0))
        throw ConfigError("line " + std::to_string(line) + ": gain_tol must be > 0");
    } else if (key == "quad_panels") {
      cfg.quad.panels = static_cast<int>(parse_int(val, key, line));
      if (cfg.quad.panels < 1)
        throw ConfigError("line " + std::to_string(line) + ": quad_panels must be >= 1");
    } else if (key == "quad_nodes_per_panel") {
      cfg.quad.nodes_per_panel = static_cast<int>(parse_int(val, key, line));
      if (cfg.quad.nodes_per_panel < 2)
        throw ConfigError("line " + std::to_string(line) + ": quad_nodes_per_panel must be >= 2");
    } else if (key == "seed") {
      cfg.seed = static_cast<unsigned>(parse_int(val, key, line));
    } else if (key == "out_dir") {
      cfg.out_dir = val;
    } else {
      throw ConfigError("line " + std::to_string(line) + ": unknown key '" + key + "'");
    }
  }
  return cfg;
}

ProblemConfig preset_example41() {
  ProblemConfig cfg;
  cfg.alpha = 0.7;
  cfg.T = 1.0;
  cfg.n_modes = 16;
  cfg.actuator = ActuatorSpec::zone(0.25, 0.75);
  cfg.region = Region(0.3, 0.7);
  cfg.z0.kind = ProfileSpec::Kind::Zero;
  cfg.z_T.kind = ProfileSpec::Kind::Mode;
  cfg.z_T.mode = 2;
  return cfg;
}

ProblemConfig preset_example42() {
  ProblemConfig cfg;
  cfg.alpha = 0.7;
  cfg.T = 1.0;
  cfg.n_modes = 16;
  cfg.actuator = ActuatorSpec::pointwise(0.3);
  cfg.region = Region(0.2, 0.8);
  cfg.z0.kind = ProfileSpec::Kind::Zero;
  cfg.z_T.kind = ProfileSpec::Kind::Coeffs;
  cfg.z_T.coeffs = {1.0, 0.0, -0.5};
  return cfg;
}

}  // namespace fracctrl
