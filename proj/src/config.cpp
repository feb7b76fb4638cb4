#include <algorithm>
#include <istream>
#include <string>

#include "gspd/errors.hpp"
#include "gspd/harness.hpp"
#include "gspd/io.hpp"

namespace gspd {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string unquote(std::string s) {
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front())
    return s.substr(1, s.size() - 2);
  return s;
}

std::size_t to_count(const std::string& key, const std::string& value) {
  long long v = 0;
  try {
    v = parse_int(value);
  } catch (const IoError&) {
    throw ParameterError("config key '" + key + "': expected an integer, got '" + value + "'");
  }
  if (v < 0) throw ParameterError("config key '" + key + "' must be nonnegative");
  return static_cast<std::size_t>(v);
}

double to_real(const std::string& key, const std::string& value) {
  try {
    return parse_double(value);
  } catch (const IoError&) {
    throw ParameterError("config key '" + key + "': expected a number, got '" + value + "'");
  }
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ParameterError("config key '" + key + "': expected true or false");
}

UniformDist to_uniform(const std::string& key, const std::string& value) {
  const auto parts = split_list(value);
  if (parts.size() != 2) throw ParameterError("config key '" + key + "': expected [lo, hi]");
  return {to_real(key, parts[0]), to_real(key, parts[1])};
}

}  // namespace

std::vector<std::string> split_list(std::string_view text) {
  std::string s = trim(text);
  if (!s.empty() && s.front() == '[') {
    if (s.back() != ']') throw ParameterError("unterminated list: " + s);
    s = s.substr(1, s.size() - 2);
  }
  std::vector<std::string> out;
  std::string item;
  auto flush = [&] {
    std::string t = unquote(trim(item));
    if (!t.empty()) out.push_back(std::move(t));
    item.clear();
  };
  for (char c : s) {
    if (c == ',') flush();
    else item.push_back(c);
  }
  flush();
  return out;
}

void apply_sweep_config(std::istream& in, SweepSpec& spec) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string content = trim(line);
    if (content.empty() || content.front() == '[') continue;  // blank or [section] header
    const auto eq = content.find('=');
    if (eq == std::string::npos)
      throw ParameterError("config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(content.substr(0, eq));
    const std::string value = trim(content.substr(eq + 1));

    if (key == "p_values" || key == "p") {
      spec.p_values.clear();
      for (const auto& v : split_list(value)) spec.p_values.push_back(to_count(key, v));
    } else if (key == "d_values" || key == "d") {
      spec.d_values = split_list(value);
    } else if (key == "methods" || key == "method") {
      spec.methods.clear();
      for (const auto& v : split_list(value)) spec.methods.push_back(parse_method(v));
    } else if (key == "graphs_per_cell") {
      spec.graphs_per_cell = to_count(key, unquote(value));
    } else if (key == "matrices_per_graph") {
      spec.matrices_per_graph = to_count(key, unquote(value));
    } else if (key == "base_seed" || key == "seed") {
      spec.base_seed = to_count(key, unquote(value));
    } else if (key == "output" || key == "out") {
      spec.output_path = unquote(value);
    } else if (key == "zero_tol") {
      spec.sim.zero_tol = to_real(key, unquote(value));
    } else if (key == "epsilon") {
      spec.sim.epsilon = to_real(key, unquote(value));
    } else if (key == "kappa0") {
      spec.sim.kappa0 = to_real(key, unquote(value));
    } else if (key == "entry_dist") {
      spec.sim.entry_dist = to_uniform(key, value);
    } else if (key == "perturbation_dist") {
      spec.sim.perturbation_dist = to_uniform(key, value);
    } else if (key == "record_time") {
      spec.record_time = to_bool(key, unquote(value));
    } else if (key == "threads") {
      spec.threads = static_cast<int>(to_count(key, unquote(value)));
    } else {
      throw ParameterError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
}

}  // namespace gspd
