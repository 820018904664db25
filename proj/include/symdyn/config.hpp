#pragma once

// Key-value configuration for lattice-symbolic systems.
//
//   # comment
//   N = 512
//   q = 4099
//   C = 0.02
//   window = 64
//   scale = 1
//   lambda1 = 1
//   alpha = 0.5
//   stride = 1
//   h_seed = 0x4e545255
//   forbid = 1 1          (repeatable; symbols from {-1, 0, 1})

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "symdyn/error.hpp"
#include "symdyn/lattice.hpp"

namespace symdyn {

struct LatticeConfig {
  std::size_t n = 512;
  std::uint32_t q = 4099;
  double c = 0.02;
  std::size_t window = 64;
  std::int64_t scale = 1;
  double lambda1 = 1.0;
  double alpha = 0.5;
  std::uint64_t stride = 1;
  std::uint64_t h_seed = 0x4e545255;
  std::vector<std::string> forbid;

  std::vector<std::pair<std::string, std::string>> echo() const {
    std::vector<std::pair<std::string, std::string>> out{
        {"N", std::to_string(n)},           {"q", std::to_string(q)},
        {"C", format_double(c)},            {"window", std::to_string(window)},
        {"scale", std::to_string(scale)},   {"lambda1", format_double(lambda1)},
        {"alpha", format_double(alpha)},    {"stride", std::to_string(stride)},
        {"h_seed", std::to_string(h_seed)},
    };
    for (const auto& f : forbid) out.emplace_back("forbid", f);
    return out;
  }

  static std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_number(std::string_view text, std::size_t line, std::size_t col) {
  T value{};
  int base = 10;
  if constexpr (std::is_integral_v<T>) {
    if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
      text.remove_prefix(2);
      base = 16;
    }
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), value, base);
    if (ec != std::errc() || p != text.data() + text.size()) throw parse_error("invalid integer '" + std::string(text) + "'", line, col);
  } else {
    try {
      std::size_t used = 0;
      value = std::stod(std::string(text), &used);
      if (used != text.size()) throw parse_error("invalid number '" + std::string(text) + "'", line, col);
    } catch (const std::logic_error&) {
      throw parse_error("invalid number '" + std::string(text) + "'", line, col);
    }
  }
  return value;
}

}  // namespace detail

inline LatticeConfig parse_lattice_config(std::string_view text) {
  LatticeConfig cfg;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::string_view line = detail::trim(raw);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const std::size_t eq = line.find('=');
    const std::size_t col0 = static_cast<std::size_t>(line.data() - raw.data()) + 1;
    if (eq == std::string_view::npos) throw parse_error("expected 'key = value'", line_no, col0);
    const std::string_view key = detail::trim(line.substr(0, eq));
    const std::string_view value = detail::trim(line.substr(eq + 1));
    const std::size_t vcol = static_cast<std::size_t>(value.data() - raw.data()) + 1;
    if (key == "N")
      cfg.n = detail::parse_number<std::size_t>(value, line_no, vcol);
    else if (key == "q")
      cfg.q = detail::parse_number<std::uint32_t>(value, line_no, vcol);
    else if (key == "C")
      cfg.c = detail::parse_number<double>(value, line_no, vcol);
    else if (key == "window")
      cfg.window = detail::parse_number<std::size_t>(value, line_no, vcol);
    else if (key == "scale")
      cfg.scale = detail::parse_number<std::int64_t>(value, line_no, vcol);
    else if (key == "lambda1")
      cfg.lambda1 = detail::parse_number<double>(value, line_no, vcol);
    else if (key == "alpha")
      cfg.alpha = detail::parse_number<double>(value, line_no, vcol);
    else if (key == "stride")
      cfg.stride = detail::parse_number<std::uint64_t>(value, line_no, vcol);
    else if (key == "h_seed")
      cfg.h_seed = detail::parse_number<std::uint64_t>(value, line_no, vcol);
    else if (key == "forbid")
      cfg.forbid.emplace_back(value);
    else
      throw parse_error("unknown key '" + std::string(key) + "'", line_no, col0);
    if (end == text.size()) break;
  }
  return cfg;
}

inline LatticeConfig load_lattice_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open config file '" + path + "'", 0, 0);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_lattice_config(ss.str());
}

inline LatticeSymbolicSystem build_system(const LatticeConfig& cfg) {
  const NtruParams params(cfg.n, cfg.q);
  std::vector<Word> forbidden;
  for (const auto& f : cfg.forbid) forbidden.push_back(Word::parse(ternary_alphabet(), f));
  return LatticeSymbolicSystem(ShiftOfFiniteType(ternary_alphabet(), std::move(forbidden)), params,
                               SymbolEmbedding::axis(cfg.n, cfg.scale, cfg.lambda1), cfg.window, cfg.alpha,
                               uniform_ring_element(params, cfg.h_seed));
}

}  // namespace symdyn
