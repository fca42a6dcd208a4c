#include "optirl/config.hpp"

#include <fstream>

#include "optirl/common.hpp"

namespace optirl {

namespace {

std::vector<std::string> split_key(const std::string& dotted) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : dotted) {
    if (c == '.') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace

Config Config::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config parse error in " + path + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be an object: " + path);
  return Config(std::move(j));
}

void Config::set_override(const std::string& assignment) {
  auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("override must be key=value, got '" + assignment + "'");
  const std::string key = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);
  nlohmann::json value;
  try {
    value = nlohmann::json::parse(raw);
  } catch (const nlohmann::json::parse_error&) {
    value = raw;  // bare string
  }
  nlohmann::json* node = &root_;
  auto parts = split_key(key);
  for (size_t i = 0; i + 1 < parts.size(); ++i) {
    node = &(*node)[parts[i]];
    if (!node->is_object() && !node->is_null())
      throw ConfigError("override key '" + key + "' descends into a non-object");
  }
  (*node)[parts.back()] = value;
}

const nlohmann::json* Config::find(const std::string& dotted_key) const {
  const nlohmann::json* node = &root_;
  for (const auto& part : split_key(dotted_key)) {
    if (!node->is_object()) return nullptr;
    auto it = node->find(part);
    if (it == node->end()) return nullptr;
    node = &*it;
  }
  return node;
}

bool Config::has(const std::string& key) const { return find(key) != nullptr; }

double Config::get_double(const std::string& key, double fallback) const {
  const auto* n = find(key);
  if (!n) return fallback;
  if (!n->is_number()) throw ConfigError("config key '" + key + "' must be a number");
  return n->get<double>();
}

int Config::get_int(const std::string& key, int fallback) const {
  const auto* n = find(key);
  if (!n) return fallback;
  if (!n->is_number_integer()) throw ConfigError("config key '" + key + "' must be an integer");
  return n->get<int>();
}

std::uint64_t Config::get_seed(const std::string& key, std::uint64_t fallback) const {
  const auto* n = find(key);
  if (!n) return fallback;
  if (!n->is_number_unsigned() && !n->is_number_integer())
    throw ConfigError("config key '" + key + "' must be an integer seed");
  return n->get<std::uint64_t>();
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  const auto* n = find(key);
  if (!n) return fallback;
  if (!n->is_boolean()) throw ConfigError("config key '" + key + "' must be a boolean");
  return n->get<bool>();
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  const auto* n = find(key);
  if (!n) return fallback;
  if (!n->is_string()) throw ConfigError("config key '" + key + "' must be a string");
  return n->get<std::string>();
}

double Config::require_double(const std::string& key) const {
  if (!has(key)) throw ConfigError("missing config key '" + key + "'");
  return get_double(key, 0.0);
}

int Config::require_int(const std::string& key) const {
  if (!has(key)) throw ConfigError("missing config key '" + key + "'");
  return get_int(key, 0);
}

std::string Config::require_string(const std::string& key) const {
  if (!has(key)) throw ConfigError("missing config key '" + key + "'");
  return get_string(key, "");
}

void write_manifest(const std::string& path, const Config& cfg,
                    const std::vector<std::pair<std::string, std::string>>& extra) {
  nlohmann::json m;
  m["tool"] = "optirl";
  m["version"] = "0.1.0";
  m["config"] = cfg.root();
  for (const auto& [k, v] : extra) m[k] = v;
  std::ofstream out(path);
  if (!out) throw DataError("cannot write manifest: " + path);
  out << m.dump(2) << '\n';
}

}  // namespace optirl
