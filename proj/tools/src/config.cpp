#include "shortck_cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace shortck::cli {

namespace {

using T = ValueType;

// The one place numeric defaults live. A value of 0 for c, r_escape, delta,
// R, y and the eps bounds means "derive from the sequence or raster".
const std::vector<KeyDef> kTable = {
    {"run", "command", T::Choice, "", true,
     "render|potential-table|boxdim|julia|nested|conjugacy-check|kobayashi|jplus-measure|gen-sequence",
     "subcommand"},
    {"run", "name", T::Text, "run", false, "", "label written to manifests"},
    {"run", "output", T::Text, ".", false, "", "output directory"},
    {"run", "threads", T::Integer, "0", false, "", "worker threads, 0 for hardware concurrency"},
    {"run", "seed", T::Integer, "1", false, "", "RNG seed for every sampled quantity"},

    {"sequence", "family", T::Choice, "shiftlike", false, "shiftlike|henon|rosayrudin|diaglinear", "step family"},
    {"sequence", "k", T::Integer, "2", false, "", "dimension"},
    {"sequence", "P", T::RealList, "1", false, "", "P coefficients c_0, c_1, ... (or the Henon p)"},
    {"sequence", "K", T::Real, "1", false, "", "log a_n = -K g^n"},
    {"sequence", "g", T::Real, "3", false, "", "log a_n = -K g^n"},
    {"sequence", "log_a", T::RealList, "", false, "", "explicit log a_n, overrides K and g"},
    {"sequence", "alpha", T::Real, "0.5", false, "", "DiagLinear factor"},
    {"sequence", "center_index", T::Integer, "0", false, "", "Rosay-Rudin fixed point (2 pi i m, 0)"},
    {"sequence", "n", T::Integer, "20", false, "", "terms listed by gen-sequence"},

    {"basin", "c", T::Real, "0", false, "", "attraction polydisc radius"},
    {"basin", "r_escape", T::Real, "0", false, "", "escape radius"},
    {"basin", "n_max", T::Integer, "200", false, "", "iteration budget"},

    {"window", "slice", T::Choice, "z1_plane", false, "z1_plane|real_real", "2-D slice through base"},
    {"window", "center_re", T::Real, "0", false, "", "slice centre"},
    {"window", "center_im", T::Real, "0", false, "", "slice centre"},
    {"window", "z2", T::Real, "0", false, "", "second coordinate of the z1_plane slice"},
    {"window", "width", T::Real, "3", false, "", "extent along u"},
    {"window", "height", T::Real, "3", false, "", "extent along v"},
    {"window", "nx", T::Integer, "256", false, "", "columns"},
    {"window", "ny", T::Integer, "256", false, "", "rows"},

    {"potential", "y", T::Real, "0", false, "", "fixed second coordinate"},
    {"potential", "x_lo", T::Real, "0.01", false, "", "smallest x as a fraction of c"},
    {"potential", "x_hi", T::Real, "0.99", false, "", "largest x as a fraction of c"},
    {"potential", "count", T::Integer, "50", false, "", "x samples, log-spaced"},
    {"potential", "n_max", T::Integer, "200", false, "", "ladder depth"},
    {"potential", "tol", T::Real, "1e-6", false, "", "convergence tolerance on psi"},

    {"julia", "p", T::RealList, "0,0,1", false, "", "p coefficients c_0, c_1, ..."},
    {"julia", "res", T::Integer, "384", false, "", "raster side"},
    {"julia", "iters", T::Integer, "400", false, "", "iterates per pixel"},
    {"julia", "delta0", T::Real, "0", false, "", "neighbourhood of J"},
    {"julia", "nested_max", T::Integer, "40", false, "", "nested steps"},

    {"boxdim", "source", T::Choice, "julia", false, "julia|slice", "julia raster or slice boundary"},
    {"boxdim", "eps_hi", T::Real, "0", false, "", "largest box"},
    {"boxdim", "eps_lo", T::Real, "0", false, "", "smallest box"},
    {"boxdim", "eps_count", T::Integer, "12", false, "", "scales"},
    {"boxdim", "theta", T::Real, "0.05", false, "", "reported margin of the dimension above 1"},

    {"conjugacy", "r", T::Real, "0.95", false, "", "ball radius"},
    {"conjugacy", "C", T::Real, "0.55", false, "", "upper-bound constant"},
    {"conjugacy", "n_max", T::Integer, "30", false, "", "schedule length"},
    {"conjugacy", "bump", T::Choice, "none", false, "none|linear_z1_e1|square_z2_e1|square_z1_e2", "perturbation"},
    {"conjugacy", "factor", T::Real, "0.5", false, "", "bump size in units of delta_n"},
    {"conjugacy", "samples", T::Integer, "64", false, "", "cloud size"},

    {"kobayashi", "p", T::RealList, "0.05,0,0.05,0", false, "", "base point as re,im pairs"},
    {"kobayashi", "xi", T::RealList, "1,0,0,0", false, "", "direction as re,im pairs (normalized)"},
    {"kobayashi", "R", T::Real, "100", false, "", "target derivative size"},
    {"kobayashi", "m", T::Integer, "64", false, "", "boundary samples"},
    {"kobayashi", "n_max", T::Integer, "200", false, "", "deepest disc index tried"},

    {"tube", "C", T::Real, "1", false, "", "half-width of N_C"},
    {"tube", "delta", T::Real, "0", false, "", "Julia neighbourhood"},
    {"tube", "R", T::Real, "0", false, "", "radius containing J_p(delta)"},
    {"tube", "z2_frac", T::Real, "0.25", false, "", "slice height as a fraction of C"},
    {"tube", "subsample", T::Integer, "100", false, "", "boundary witnesses"},
    {"tube", "budget", T::Integer, "4096", false, "", "samples per witness search"},
};

const KeyDef* find_def(const std::string& section, const std::string& key) {
  for (const auto& d : kTable)
    if (section == d.section && key == d.key) return &d;
  return nullptr;
}

bool known_section(const std::string& s) {
  return std::any_of(kTable.begin(), kTable.end(), [&](const KeyDef& d) { return s == d.section; });
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_real(const std::string& s, double& out) {
  const char* end = s.data() + s.size();
  const auto r = std::from_chars(s.data(), end, out);
  return r.ec == std::errc() && r.ptr == end && std::isfinite(out);
}

Value parse_value(const KeyDef& d, const std::string& raw, std::size_t line) {
  const std::string name = std::string(d.section) + "." + d.key;
  switch (d.type) {
    case T::Real: {
      double v = 0.0;
      if (!parse_real(raw, v)) throw ConfigError(line, "type mismatch for " + name + ": expected a real, got '" + raw + "'");
      return v;
    }
    case T::Integer: {
      long long v = 0;
      const char* end = raw.data() + raw.size();
      const auto r = std::from_chars(raw.data(), end, v);
      if (r.ec != std::errc() || r.ptr != end || raw.empty())
        throw ConfigError(line, "type mismatch for " + name + ": expected an integer, got '" + raw + "'");
      return v;
    }
    case T::Bool:
      if (raw == "true") return true;
      if (raw == "false") return false;
      throw ConfigError(line, "type mismatch for " + name + ": expected true or false, got '" + raw + "'");
    case T::Text: return raw;
    case T::Choice: {
      std::stringstream ss(d.choices);
      std::string c;
      while (std::getline(ss, c, '|'))
        if (c == raw) return raw;
      throw ConfigError(line, "type mismatch for " + name + ": expected one of " + d.choices + ", got '" + raw + "'");
    }
    case T::RealList: {
      std::vector<double> v;
      if (raw.empty()) return v;
      std::stringstream ss(raw);
      std::string item;
      while (std::getline(ss, item, ',')) {
        double x = 0.0;
        if (!parse_real(trim(item), x))
          throw ConfigError(line, "type mismatch for " + name + ": expected comma-separated reals, got '" + raw + "'");
        v.push_back(x);
      }
      return v;
    }
  }
  return raw;
}

}  // namespace

const std::vector<KeyDef>& defaults_table() { return kTable; }

RunConfig::RunConfig() {
  for (const auto& d : kTable) values_[std::string(d.section) + "." + d.key] = d.type == T::Choice && !*d.fallback
                                                                                   ? Value(std::string())
                                                                                   : parse_value(d, d.fallback, 0);
}

const Value& RunConfig::at(const std::string& section, const std::string& key) const {
  const auto it = values_.find(section + "." + key);
  if (it == values_.end()) throw std::logic_error("config: no key " + section + "." + key);
  return it->second;
}

double RunConfig::real(const std::string& s, const std::string& k) const { return std::get<double>(at(s, k)); }
long long RunConfig::integer(const std::string& s, const std::string& k) const { return std::get<long long>(at(s, k)); }
bool RunConfig::flag(const std::string& s, const std::string& k) const { return std::get<bool>(at(s, k)); }
const std::string& RunConfig::text(const std::string& s, const std::string& k) const {
  return std::get<std::string>(at(s, k));
}
const std::vector<double>& RunConfig::list(const std::string& s, const std::string& k) const {
  return std::get<std::vector<double>>(at(s, k));
}

std::size_t RunConfig::count(const std::string& s, const std::string& k) const {
  const long long v = integer(s, k);
  if (v < 0) throw ConfigError(0, s + "." + k + " must be non-negative");
  return static_cast<std::size_t>(v);
}

void RunConfig::assign(const std::string& section, const std::string& key, const std::string& raw, std::size_t line) {
  const KeyDef* d = find_def(section, key);
  if (!d) throw ConfigError(line, "unknown key '" + key + "' in section [" + section + "]");
  values_[section + "." + key] = parse_value(*d, raw, line);
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::set<std::string> seen;
  std::string section = "run";
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError(line, "malformed section header '" + s + "'");
      section = trim(s.substr(1, s.size() - 2));
      if (!known_section(section)) throw ConfigError(line, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError(line, "expected key = value, got '" + s + "'");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (!seen.insert(section + "." + key).second) throw ConfigError(line, "duplicate key '" + key + "'");
    cfg.assign(section, key, value, line);
  }
  for (const auto& d : kTable)
    if (d.required && !seen.count(std::string(d.section) + "." + d.key))
      throw ConfigError(line + 1, std::string("missing required key '") + d.key + "' in section [" + d.section + "]");
  return cfg;
}

std::string value_text(const Value& v) {
  struct {
    std::string operator()(double x) const {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", x);
      return buf;
    }
    std::string operator()(long long x) const { return std::to_string(x); }
    std::string operator()(bool x) const { return x ? "true" : "false"; }
    std::string operator()(const std::string& x) const { return x; }
    std::string operator()(const std::vector<double>& x) const {
      std::string s;
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) s += ',';
        s += (*this)(x[i]);
      }
      return s;
    }
  } vis;
  return std::visit(vis, v);
}

std::string emit(const RunConfig& c) {
  std::ostringstream os;
  std::string section;
  for (const auto& d : kTable) {
    if (section != d.section) {
      if (!section.empty()) os << '\n';
      section = d.section;
      os << '[' << section << "]\n";
    }
    os << d.key << " = " << value_text(c.values().at(section + "." + d.key)) << '\n';
  }
  return os.str();
}

}  // namespace shortck::cli
