#include "gcp/config.hpp"

#include <charconv>
#include <optional>
#include <sstream>

#include "gcp/errors.hpp"

namespace gcp {

void validate(const RunConfig& config) {
  if (config.sizes.empty()) throw DomainError("at least one lattice size is required");
  for (int s : config.sizes)
    if (s < 2) throw DomainError("lattice sizes must be >= 2");
  if (config.grid.points < 1) throw DomainError("theta grid needs at least one point");
  if (!(config.grid.min >= 0.0 && config.grid.max <= 1.0 && config.grid.min <= config.grid.max))
    throw DomainError("theta grid must satisfy 0 <= min <= max <= 1");
  if (config.grid.points > 1 && !(config.grid.min < config.grid.max))
    throw DomainError("theta grid with several points needs min < max");
  if (config.ensembles < 1) throw DomainError("ensemble count must be >= 1");
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Drops a trailing comment that is not inside a string.
std::string strip_comment(const std::string& s) {
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') quoted = !quoted;
    if (s[i] == '#' && !quoted) return s.substr(0, i);
  }
  return s;
}

std::optional<std::int64_t> as_int(const std::string& s) {
  std::string digits;
  for (char ch : s)
    if (ch != '_') digits.push_back(ch);
  std::int64_t v{};
  const auto* end = digits.data() + digits.size();
  auto [ptr, ec] = std::from_chars(digits.data() + (!digits.empty() && digits[0] == '+'), end, v);
  if (ec != std::errc{} || ptr != end || digits.empty()) return std::nullopt;
  return v;
}

TomlValue parse_value(const std::string& raw, int line_no) {
  const auto fail = [&](const std::string& why) {
    return DomainError("config line " + std::to_string(line_no) + ": " + why);
  };
  if (raw.empty()) throw fail("missing value");
  if (raw.front() == '"') {
    if (raw.size() < 2 || raw.back() != '"') throw fail("unterminated string");
    return raw.substr(1, raw.size() - 2);
  }
  if (raw == "true") return true;
  if (raw == "false") return false;
  if (raw.front() == '[') {
    if (raw.back() != ']') throw fail("arrays must fit on one line");
    std::vector<std::int64_t> items;
    std::istringstream ss(raw.substr(1, raw.size() - 2));
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      const auto v = as_int(item);
      if (!v) throw fail("only integer arrays are supported");
      items.push_back(*v);
    }
    return items;
  }
  if (auto v = as_int(raw)) return *v;
  double d{};
  const auto* end = raw.data() + raw.size();
  auto [ptr, ec] = std::from_chars(raw.data(), end, d);
  if (ec == std::errc{} && ptr == end) return d;
  throw fail("cannot parse value '" + raw + "'");
}

}  // namespace

std::map<std::string, TomlValue> parse_toml_subset(const std::string& text) {
  std::map<std::string, TomlValue> values;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(strip_comment(line));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line != "[sweep]")
        throw DomainError("config line " + std::to_string(line_no) + ": only a [sweep] table is allowed");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw DomainError("config line " + std::to_string(line_no) + ": expected key = value");
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) throw DomainError("config line " + std::to_string(line_no) + ": empty key");
    if (values.contains(key))
      throw DomainError("config line " + std::to_string(line_no) + ": duplicate key " + key);
    values[key] = parse_value(trim(line.substr(eq + 1)), line_no);
  }
  return values;
}

namespace {

template <typename T>
const T& get(const std::string& key, const TomlValue& v) {
  if (const auto* p = std::get_if<T>(&v)) return *p;
  throw DomainError("config key '" + key + "' has the wrong type");
}

double get_real(const std::string& key, const TomlValue& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
  return get<double>(key, v);
}

std::uint64_t get_count(const std::string& key, const TomlValue& v) {
  const auto i = get<std::int64_t>(key, v);
  if (i < 0) throw DomainError("config key '" + key + "' must be non-negative");
  return static_cast<std::uint64_t>(i);
}

}  // namespace

void apply_toml(RunConfig& config, const std::map<std::string, TomlValue>& values) {
  for (const auto& [key, v] : values) {
    if (key == "lattice") {
      const auto kind = parse_lattice_kind(get<std::string>(key, v));
      if (!kind) throw DomainError("unknown lattice kind in config");
      config.kind = *kind;
    } else if (key == "protocol") {
      const auto p = parse_protocol(get<std::string>(key, v));
      if (!p) throw DomainError("unknown protocol in config");
      config.protocol = *p;
    } else if (key == "sizes") {
      config.sizes.clear();
      for (auto s : get<std::vector<std::int64_t>>(key, v)) config.sizes.push_back(static_cast<int>(s));
    } else if (key == "theta_min") {
      config.grid.min = get_real(key, v);
    } else if (key == "theta_max") {
      config.grid.max = get_real(key, v);
    } else if (key == "points") {
      config.grid.points = get_count(key, v);
    } else if (key == "ensembles") {
      config.ensembles = get_count(key, v);
    } else if (key == "seed") {
      config.seed = get_count(key, v);
    } else if (key == "out") {
      config.out = get<std::string>(key, v);
    } else if (key == "workers") {
      config.workers = static_cast<unsigned>(get_count(key, v));
    } else {
      throw DomainError("unknown config key '" + key + "'");
    }
  }
}

}  // namespace gcp
