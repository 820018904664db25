#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "symdyn/error.hpp"

namespace symdyn {

/// Index of a symbol inside its alphabet. Order of letters is the order of
/// the alphabet's symbol list and nothing else.
using Letter = std::uint32_t;

/// Ordered finite set of distinct symbol names.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) throw domain_error("alphabet must contain at least one symbol");
    std::unordered_set<std::string_view> seen;
    for (const auto& s : symbols_) {
      if (s.empty()) throw domain_error("alphabet symbols must be nonempty");
      if (!seen.insert(s).second) throw domain_error("duplicate alphabet symbol '" + s + "'");
      if (s.size() != 1) single_char_ = false;
    }
  }

  /// {"0", "1", ..., "k-1"}.
  static Alphabet digits(std::size_t k) {
    if (k == 0) throw domain_error("alphabet size must be at least 1");
    std::vector<std::string> syms;
    syms.reserve(k);
    for (std::size_t i = 0; i < k; ++i) syms.push_back(std::to_string(i));
    return Alphabet(std::move(syms));
  }

  std::size_t size() const noexcept { return symbols_.size(); }
  const std::string& symbol(Letter i) const { return symbols_.at(i); }
  const std::vector<std::string>& symbols() const noexcept { return symbols_; }

  /// True when every symbol is one character, so words print without separators.
  bool single_char() const noexcept { return single_char_; }

  std::optional<Letter> index_of(std::string_view s) const {
    auto it = std::find(symbols_.begin(), symbols_.end(), s);
    if (it == symbols_.end()) return std::nullopt;
    return static_cast<Letter>(it - symbols_.begin());
  }

  bool operator==(const Alphabet&) const = default;

 private:
  std::vector<std::string> symbols_;
  bool single_char_ = true;
};

using AlphabetRef = std::shared_ptr<const Alphabet>;

inline AlphabetRef make_alphabet(std::vector<std::string> symbols) {
  return std::make_shared<const Alphabet>(std::move(symbols));
}

inline AlphabetRef make_alphabet(std::size_t k) {
  return std::make_shared<const Alphabet>(Alphabet::digits(k));
}

inline bool same_alphabet(const AlphabetRef& a, const AlphabetRef& b) {
  return a == b || (a && b && *a == *b);
}

/// Finite sequence of letters tied to an alphabet. The empty word is
/// representable; operations that need A+ reject it themselves.
class Word {
 public:
  explicit Word(AlphabetRef alphabet, std::vector<Letter> letters = {})
      : alphabet_(std::move(alphabet)), letters_(std::move(letters)) {
    if (!alphabet_) throw domain_error("word requires an alphabet");
    for (Letter l : letters_) {
      if (l >= alphabet_->size()) throw domain_error("letter index out of range for alphabet");
    }
  }

  /// Parses text into a word. Single-character alphabets read one symbol per
  /// character; otherwise symbols are whitespace separated.
  static Word parse(AlphabetRef alphabet, std::string_view text) {
    std::vector<Letter> letters;
    if (alphabet->single_char()) {
      for (char c : text) {
        if (c == ' ' || c == '\t') continue;
        auto idx = alphabet->index_of(std::string_view(&c, 1));
        if (!idx) throw domain_error(std::string("symbol '") + c + "' is not in the alphabet");
        letters.push_back(*idx);
      }
    } else {
      std::size_t pos = 0;
      while (pos < text.size()) {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
        if (pos >= text.size()) break;
        std::size_t end = pos;
        while (end < text.size() && text[end] != ' ' && text[end] != '\t') ++end;
        auto tok = text.substr(pos, end - pos);
        auto idx = alphabet->index_of(tok);
        if (!idx) throw domain_error("symbol '" + std::string(tok) + "' is not in the alphabet");
        letters.push_back(*idx);
        pos = end;
      }
    }
    return Word(std::move(alphabet), std::move(letters));
  }

  const AlphabetRef& alphabet() const noexcept { return alphabet_; }
  std::span<const Letter> letters() const noexcept { return letters_; }
  const std::vector<Letter>& vec() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  Word substr(std::size_t pos, std::size_t len) const {
    return Word(alphabet_, std::vector<Letter>(letters_.begin() + static_cast<std::ptrdiff_t>(pos),
                                               letters_.begin() + static_cast<std::ptrdiff_t>(pos + len)));
  }

  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      if (i > 0 && !alphabet_->single_char()) out += ' ';
      out += alphabet_->symbol(letters_[i]);
    }
    return out;
  }

  // Lexicographic by letter index; alphabets are assumed equal.
  friend bool operator==(const Word& a, const Word& b) { return a.letters_ == b.letters_; }
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    return a.letters_ <=> b.letters_;
  }

 private:
  AlphabetRef alphabet_;
  std::vector<Letter> letters_;
};

inline void require_same_alphabet(const Word& a, const Word& b) {
  if (!same_alphabet(a.alphabet(), b.alphabet())) {
    throw domain_error("words are over different alphabets");
  }
}

/// Enumeration budget: operations that materialize k^n objects refuse when
/// k^n exceeds max_items.
struct Budget {
  std::uint64_t max_items = std::uint64_t{1} << 20;
};

/// k^n, or nullopt when it exceeds limit.
inline std::optional<std::uint64_t> checked_power(std::uint64_t k, std::uint64_t n,
                                                  std::uint64_t limit) {
  std::uint64_t acc = 1;
  for (std::uint64_t i = 0; i < n; ++i) {
    if (k != 0 && acc > limit / k) return std::nullopt;
    acc *= k;
  }
  if (acc > limit) return std::nullopt;
  return acc;
}

}  // namespace symdyn
