#pragma once

// Text formats for shifts, automata and block codes. See docs/formats.md.
// Lines are "key: value"; '#' starts a comment; blank lines are ignored.

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "symdyn/automata.hpp"
#include "symdyn/config.hpp"
#include "symdyn/error.hpp"
#include "symdyn/shift.hpp"
#include "symdyn/word.hpp"

namespace symdyn {

namespace detail {

struct Line {
  std::size_t number;
  std::string_view raw;   // full line, comment stripped
  std::string_view text;  // trimmed

  std::size_t column_of(std::string_view part) const {
    return static_cast<std::size_t>(part.data() - raw.data()) + 1;
  }
};

inline std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t pos = 0;
  std::size_t no = 0;
  while (pos < text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++no;
    if (auto h = raw.find('#'); h != std::string_view::npos) raw = raw.substr(0, h);
    const std::string_view t = trim(raw);
    if (!t.empty()) out.push_back({no, raw, t});
  }
  return out;
}

/// Splits "key: value"; key is empty when there is no colon.
inline std::pair<std::string_view, std::string_view> split_key(std::string_view t) {
  const auto colon = t.find(':');
  if (colon == std::string_view::npos) return {{}, t};
  return {trim(t.substr(0, colon)), trim(t.substr(colon + 1))};
}

inline std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    if (pos >= s.size()) break;
    std::size_t end = pos;
    while (end < s.size() && s[end] != ' ' && s[end] != '\t') ++end;
    out.push_back(s.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

inline AlphabetRef parse_alphabet_line(const Line& l, std::string_view value) {
  std::vector<std::string> syms;
  for (auto t : tokens(value)) syms.emplace_back(t);
  try {
    return make_alphabet(std::move(syms));
  } catch (const domain_error& e) {
    throw parse_error(e.what(), l.number, l.column_of(value));
  }
}

inline Word parse_word_at(const Line& l, const AlphabetRef& a, std::string_view value) {
  try {
    return Word::parse(a, value);
  } catch (const domain_error& e) {
    throw parse_error(e.what(), l.number, l.column_of(value));
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open '" + path + "'", 0, 0);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace detail

/// alphabet: <symbols...>  then any number of  forbid: <word>
inline ShiftOfFiniteType parse_sft(std::string_view text) {
  AlphabetRef alphabet;
  std::vector<Word> forbidden;
  for (const auto& l : detail::split_lines(text)) {
    auto [key, value] = detail::split_key(l.text);
    if (key == "alphabet") {
      if (alphabet) throw parse_error("alphabet given twice", l.number, l.column_of(l.text));
      alphabet = detail::parse_alphabet_line(l, value);
    } else if (key == "forbid") {
      if (!alphabet) throw parse_error("forbid before alphabet", l.number, l.column_of(l.text));
      if (value.empty()) throw parse_error("empty forbidden word", l.number, l.column_of(l.text) + l.text.size());
      forbidden.push_back(detail::parse_word_at(l, alphabet, value));
    } else {
      throw parse_error("expected 'alphabet:' or 'forbid:'", l.number, l.column_of(l.text));
    }
  }
  if (!alphabet) throw parse_error("missing alphabet line", 0, 0);
  return ShiftOfFiniteType(alphabet, std::move(forbidden));
}

/// states: <n>, alphabet: <symbols...>, then one row per state
/// "<q>: <target for symbol 0> <target for symbol 1> ...".
inline Dfa parse_dfa(std::string_view text) {
  std::size_t n = 0;
  AlphabetRef alphabet;
  std::vector<std::vector<State>> rows;
  std::vector<bool> seen;
  for (const auto& l : detail::split_lines(text)) {
    auto [key, value] = detail::split_key(l.text);
    if (key == "states") {
      n = detail::parse_number<std::size_t>(value, l.number, l.column_of(value));
      if (n == 0) throw parse_error("state count must be >= 1", l.number, l.column_of(value));
      rows.assign(n, {});
      seen.assign(n, false);
    } else if (key == "alphabet") {
      alphabet = detail::parse_alphabet_line(l, value);
    } else if (!key.empty()) {
      if (n == 0 || !alphabet) throw parse_error("transition row before 'states:' and 'alphabet:'", l.number, l.column_of(l.text));
      const auto q = detail::parse_number<std::size_t>(key, l.number, l.column_of(key));
      if (q >= n) throw parse_error("state index out of range", l.number, l.column_of(key));
      if (seen[q]) throw parse_error("duplicate row for state " + std::to_string(q), l.number, l.column_of(key));
      seen[q] = true;
      auto toks = detail::tokens(value);
      if (toks.size() != alphabet->size()) {
        throw parse_error("expected " + std::to_string(alphabet->size()) + " targets", l.number, l.column_of(value));
      }
      for (auto t : toks) {
        const auto target = detail::parse_number<std::size_t>(t, l.number, l.column_of(t));
        if (target >= n) throw parse_error("target state out of range", l.number, l.column_of(t));
        rows[q].push_back(static_cast<State>(target));
      }
    } else {
      throw parse_error("expected 'key: value'", l.number, l.column_of(l.text));
    }
  }
  if (n == 0 || !alphabet) throw parse_error("missing 'states:' or 'alphabet:'", 0, 0);
  std::vector<State> table;
  for (std::size_t q = 0; q < n; ++q) {
    if (!seen[q]) throw parse_error("no transition row for state " + std::to_string(q), 0, 0);
    table.insert(table.end(), rows[q].begin(), rows[q].end());
  }
  return Dfa(n, alphabet, std::move(table));
}

/// Optional "alphabet: ..." (default 0 1), then one codeword per line.
inline BlockCode parse_code(std::string_view text) {
  AlphabetRef alphabet;
  std::vector<Word> words;
  for (const auto& l : detail::split_lines(text)) {
    auto [key, value] = detail::split_key(l.text);
    if (key == "alphabet") {
      if (alphabet || !words.empty()) throw parse_error("alphabet must come first", l.number, l.column_of(l.text));
      alphabet = detail::parse_alphabet_line(l, value);
      continue;
    }
    if (!key.empty()) throw parse_error("unexpected key '" + std::string(key) + "'", l.number, l.column_of(key));
    if (!alphabet) alphabet = make_alphabet(2);
    words.push_back(detail::parse_word_at(l, alphabet, value));
  }
  if (words.empty()) throw parse_error("no codewords", 0, 0);
  try {
    return BlockCode(std::move(words));
  } catch (const domain_error& e) {
    throw parse_error(e.what(), 0, 0);
  }
}

inline ShiftOfFiniteType load_sft(const std::string& path) { return parse_sft(detail::read_file(path)); }
inline Dfa load_dfa(const std::string& path) { return parse_dfa(detail::read_file(path)); }
inline BlockCode load_code(const std::string& path) { return parse_code(detail::read_file(path)); }

}  // namespace symdyn
