#include "heatcp/toml_lite.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace heatcp {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// Strips a trailing comment that is not inside a string literal.
std::string strip_comment(const std::string& line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_string = !in_string;
    if (line[i] == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

}  // namespace

TomlLite TomlLite::parse(const std::string& text) {
  TomlLite out;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      throw std::invalid_argument("toml: sections are not supported (line " +
                                  std::to_string(lineno) + ")");
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("toml: expected key = value at line " +
                                  std::to_string(lineno));
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty()) {
      throw std::invalid_argument("toml: empty key or value at line " +
                                  std::to_string(lineno));
    }
    Value v;
    if (val.front() == '"') {
      if (val.size() < 2 || val.back() != '"') {
        throw std::invalid_argument("toml: unterminated string at line " +
                                    std::to_string(lineno));
      }
      v.kind = Value::Kind::kString;
      v.str = val.substr(1, val.size() - 2);
    } else if (val == "true" || val == "false") {
      v.kind = Value::Kind::kBool;
      v.flag = (val == "true");
    } else if (val.front() == '[') {
      if (val.back() != ']') {
        throw std::invalid_argument("toml: unterminated array at line " +
                                    std::to_string(lineno));
      }
      v.kind = Value::Kind::kArray;
      std::string body = val.substr(1, val.size() - 2);
      std::istringstream items(body);
      std::string item;
      while (std::getline(items, item, ',')) {
        const std::string t = trim(item);
        if (t.empty()) continue;
        v.arr.push_back(std::stod(t));
      }
    } else {
      v.kind = Value::Kind::kNumber;
      std::size_t used = 0;
      v.num = std::stod(val, &used);
      if (used != val.size()) {
        throw std::invalid_argument("toml: trailing characters at line " +
                                    std::to_string(lineno));
      }
    }
    out.values_[key] = std::move(v);
  }
  return out;
}

TomlLite TomlLite::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("toml: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

bool TomlLite::has(const std::string& key) const {
  return values_.count(key) > 0;
}

double TomlLite::number(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end() || it->second.kind != Value::Kind::kNumber) {
    throw std::invalid_argument("toml: missing number key '" + key + "'");
  }
  return it->second.num;
}

double TomlLite::number_or(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

std::int64_t TomlLite::integer(const std::string& key) const {
  const double v = number(key);
  if (std::floor(v) != v) {
    throw std::invalid_argument("toml: key '" + key + "' is not an integer");
  }
  return static_cast<std::int64_t>(v);
}

std::int64_t TomlLite::integer_or(const std::string& key,
                                  std::int64_t fallback) const {
  return has(key) ? integer(key) : fallback;
}

bool TomlLite::boolean_or(const std::string& key, bool fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  if (it->second.kind != Value::Kind::kBool) {
    throw std::invalid_argument("toml: key '" + key + "' is not a boolean");
  }
  return it->second.flag;
}

std::string TomlLite::string(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end() || it->second.kind != Value::Kind::kString) {
    throw std::invalid_argument("toml: missing string key '" + key + "'");
  }
  return it->second.str;
}

std::string TomlLite::string_or(const std::string& key,
                                const std::string& fallback) const {
  return has(key) ? string(key) : fallback;
}

std::vector<double> TomlLite::array(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end() || it->second.kind != Value::Kind::kArray) {
    throw std::invalid_argument("toml: missing array key '" + key + "'");
  }
  return it->second.arr;
}

}  // namespace heatcp
