#pragma once

/**
 * Synchronizing words for complete DFAs, edit distance, and block-code
 * distance bounds.
 */

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "symdyn/error.hpp"
#include "symdyn/word.hpp"

namespace symdyn {

using State = std::uint32_t;

/// Complete deterministic automaton without initial/final states.
class Dfa {
 public:
  /// table is row-major: table[q * k + a] = delta(q, a).
  Dfa(std::size_t state_count, AlphabetRef alphabet, std::vector<State> table)
      : states_(state_count), alphabet_(std::move(alphabet)), table_(std::move(table)) {
    if (states_ == 0) throw domain_error("dfa: needs at least one state");
    if (table_.size() != states_ * alphabet_->size()) {
      throw domain_error("dfa: transition table must have one entry per (state, symbol)");
    }
    for (State t : table_) {
      if (t >= states_) throw domain_error("dfa: transition target out of range");
    }
  }

  std::size_t state_count() const noexcept { return states_; }
  const AlphabetRef& alphabet() const noexcept { return alphabet_; }
  State next(State q, Letter a) const { return table_[q * alphabet_->size() + a]; }

  State run(State q, std::span<const Letter> w) const {
    for (Letter a : w) q = next(q, a);
    return q;
  }

 private:
  std::size_t states_;
  AlphabetRef alphabet_;
  std::vector<State> table_;
};

inline Dfa identity_dfa(std::size_t n, AlphabetRef alphabet) {
  std::vector<State> t;
  for (std::size_t q = 0; q < n; ++q) {
    for (std::size_t a = 0; a < alphabet->size(); ++a) t.push_back(static_cast<State>(q));
  }
  return Dfa(n, std::move(alphabet), std::move(t));
}

/// The Černý automaton C_n over {a, b}: a rotates, b merges 0 into 1.
inline Dfa cerny_automaton(std::size_t n) {
  if (n < 2) throw domain_error("cerny_automaton: n must be >= 2");
  std::vector<State> t;
  for (std::size_t q = 0; q < n; ++q) {
    t.push_back(static_cast<State>((q + 1) % n));
    t.push_back(static_cast<State>(q == 0 ? 1 : q));
  }
  return Dfa(n, make_alphabet({"a", "b"}), std::move(t));
}

inline bool is_synchronizing_word(const Dfa& dfa, const Word& w) {
  if (!same_alphabet(dfa.alphabet(), w.alphabet())) {
    throw domain_error("is_synchronizing_word: word over a different alphabet");
  }
  const State target = dfa.run(0, w.letters());
  for (State q = 1; q < dfa.state_count(); ++q) {
    if (dfa.run(q, w.letters()) != target) return false;
  }
  return true;
}

/// A DFA is synchronizing iff every pair of states can be merged by some
/// word. Backward BFS on the pair automaton from the diagonal.
inline bool is_synchronizing(const Dfa& dfa) {
  const std::size_t n = dfa.state_count();
  const std::size_t k = dfa.alphabet()->size();
  if (n <= 1) return true;
  auto pair_id = [n](State p, State q) { return static_cast<std::size_t>(p) * n + q; };
  // predecessor lists on the pair graph
  std::vector<std::vector<std::size_t>> preds(n * n);
  for (State p = 0; p < n; ++p) {
    for (State q = 0; q < n; ++q) {
      for (std::size_t a = 0; a < k; ++a) {
        const auto l = static_cast<Letter>(a);
        preds[pair_id(dfa.next(p, l), dfa.next(q, l))].push_back(pair_id(p, q));
      }
    }
  }
  std::vector<char> mergeable(n * n, 0);
  std::vector<std::size_t> queue;
  for (State p = 0; p < n; ++p) {
    mergeable[pair_id(p, p)] = 1;
    queue.push_back(pair_id(p, p));
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (std::size_t pr : preds[queue[head]]) {
      if (!mergeable[pr]) {
        mergeable[pr] = 1;
        queue.push_back(pr);
      }
    }
  }
  return std::all_of(mergeable.begin(), mergeable.end(), [](char c) { return c != 0; });
}

/// Shortest reset word by BFS over subsets of states (bitmasks), letters
/// tried in alphabet order, so the first word found is also the
/// lexicographically least among the shortest.
inline std::optional<Word> shortest_sync_word(const Dfa& dfa, std::size_t max_states = 14) {
  const std::size_t n = dfa.state_count();
  if (n > max_states || n > 30) throw resource_error("shortest_sync_word: state count exceeds subset-BFS budget");
  const auto& alphabet = dfa.alphabet();
  if (n == 1) return Word(alphabet);
  if (!is_synchronizing(dfa)) return std::nullopt;

  const std::size_t k = alphabet->size();
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  constexpr std::uint32_t unseen = 0xFFFFFFFFu;
  std::vector<std::uint32_t> parent(std::size_t{1} << n, unseen);
  std::vector<Letter> via(std::size_t{1} << n, 0);
  std::vector<std::uint32_t> queue{full};
  parent[full] = full;
  auto image = [&](std::uint32_t set, Letter a) {
    std::uint32_t out = 0;
    for (State q = 0; q < n; ++q) {
      if (set & (std::uint32_t{1} << q)) out |= std::uint32_t{1} << dfa.next(q, a);
    }
    return out;
  };
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::uint32_t cur = queue[head];
    for (std::size_t a = 0; a < k; ++a) {
      const std::uint32_t nxt = image(cur, static_cast<Letter>(a));
      if (parent[nxt] != unseen) continue;
      parent[nxt] = cur;
      via[nxt] = static_cast<Letter>(a);
      if ((nxt & (nxt - 1)) == 0) {
        std::vector<Letter> letters;
        for (std::uint32_t s = nxt; s != full; s = parent[s]) letters.push_back(via[s]);
        std::reverse(letters.begin(), letters.end());
        return Word(alphabet, std::move(letters));
      }
      queue.push_back(nxt);
    }
  }
  return std::nullopt;  // unreachable for synchronizing automata
}

/// Levenshtein distance with unit costs, two-row DP.
template <typename T>
std::size_t edit_distance(std::span<const T> u, std::span<const T> v) {
  std::vector<std::size_t> prev(v.size() + 1);
  std::vector<std::size_t> cur(v.size() + 1);
  for (std::size_t j = 0; j <= v.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= u.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= v.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (u[i - 1] == v[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[v.size()];
}

inline std::size_t edit_distance(const Word& u, const Word& v) {
  require_same_alphabet(u, v);
  return edit_distance(u.letters(), v.letters());
}

inline std::size_t hamming_distance(const Word& u, const Word& v) {
  require_same_alphabet(u, v);
  if (u.size() != v.size()) throw domain_error("hamming_distance: length mismatch");
  std::size_t d = 0;
  for (std::size_t i = 0; i < u.size(); ++i) d += u[i] != v[i];
  return d;
}

/// Nonempty set of distinct equal-length codewords.
class BlockCode {
 public:
  explicit BlockCode(std::vector<Word> codewords) : words_(std::move(codewords)) {
    if (words_.empty()) throw domain_error("block code: needs at least one codeword");
    for (const auto& w : words_) {
      require_same_alphabet(w, words_.front());
      if (w.size() != words_.front().size()) throw domain_error("block code: codewords differ in length");
    }
    auto sorted = words_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw domain_error("block code: duplicate codeword");
    }
  }

  const std::vector<Word>& codewords() const noexcept { return words_; }
  std::size_t length() const noexcept { return words_.front().size(); }

 private:
  std::vector<Word> words_;
};

inline std::size_t min_distance(const BlockCode& code) {
  const auto& w = code.codewords();
  if (w.size() < 2) throw domain_error("min_distance: needs at least two codewords");
  std::size_t best = code.length() + 1;
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = i + 1; j < w.size(); ++j) best = std::min(best, hamming_distance(w[i], w[j]));
  }
  return best;
}

struct ErrorCapability {
  std::size_t detect;
  std::size_t correct;
  bool operator==(const ErrorCapability&) const = default;
};

/// A code of minimum distance d detects d-1 errors and corrects floor((d-1)/2).
inline ErrorCapability error_capability(std::size_t d) {
  if (d == 0) throw domain_error("error_capability: d must be >= 1");
  return {d - 1, (d - 1) / 2};
}

}  // namespace symdyn
