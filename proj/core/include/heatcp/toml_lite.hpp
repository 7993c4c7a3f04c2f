#ifndef HEATCP_TOML_LITE_HPP
#define HEATCP_TOML_LITE_HPP

#include <map>
#include <string>
#include <vector>

namespace heatcp {

// Minimal TOML subset for plan files: top-level `key = value` pairs with
// strings, booleans, integers, floats and flat arrays of numbers.
// `#` comments and blank lines are skipped; sections are rejected.
class TomlLite {
 public:
  static TomlLite parse(const std::string& text);
  static TomlLite parse_file(const std::string& path);

  bool has(const std::string& key) const;
  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  std::int64_t integer(const std::string& key) const;
  std::int64_t integer_or(const std::string& key, std::int64_t fallback) const;
  bool boolean_or(const std::string& key, bool fallback) const;
  std::string string(const std::string& key) const;
  std::string string_or(const std::string& key,
                        const std::string& fallback) const;
  std::vector<double> array(const std::string& key) const;

 private:
  struct Value {
    enum class Kind { kString, kBool, kNumber, kArray } kind;
    std::string str;
    bool flag = false;
    double num = 0.0;
    std::vector<double> arr;
  };
  std::map<std::string, Value> values_;
};

}  // namespace heatcp

#endif
