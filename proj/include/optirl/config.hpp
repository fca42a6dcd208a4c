#ifndef OPTIRL_CONFIG_HPP
#define OPTIRL_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace optirl {

// Run configuration: a JSON document addressed with dotted keys
// ("fourrooms.slip_prob"). CLI overrides take precedence over file values.
class Config {
 public:
  Config() : root_(nlohmann::json::object()) {}
  explicit Config(nlohmann::json root) : root_(std::move(root)) {}

  static Config from_file(const std::string& path);

  // "key=value"; value parsed as JSON when possible, else kept as string.
  void set_override(const std::string& assignment);

  bool has(const std::string& dotted_key) const;

  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::uint64_t get_seed(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;

  double require_double(const std::string& key) const;
  int require_int(const std::string& key) const;
  std::string require_string(const std::string& key) const;

  const nlohmann::json& root() const { return root_; }
  std::string dump(int indent = 2) const { return root_.dump(indent); }

 private:
  const nlohmann::json* find(const std::string& dotted_key) const;
  nlohmann::json root_;
};

// Every command writes one of these next to its outputs.
void write_manifest(const std::string& path, const Config& cfg,
                    const std::vector<std::pair<std::string, std::string>>& extra);

}  // namespace optirl

#endif  // OPTIRL_CONFIG_HPP
