#pragma once

/**
 * Lyndon words and de Bruijn sequences.
 *
 * A nonempty word is Lyndon when it is strictly smaller than each of its
 * proper rotations. Every nonempty word factors uniquely as a nonincreasing
 * product of Lyndon words (Chen-Fox-Lyndon); Duval's algorithm computes the
 * factorization in linear time. Concatenating, in lexicographic order, the
 * Lyndon words whose length divides n yields a de Bruijn sequence of order n.
 *
 * The generic algorithms work on any span of totally ordered values; the
 * Word overloads add alphabet bookkeeping and the domain checks.
 */

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "symdyn/error.hpp"
#include "symdyn/word.hpp"

namespace symdyn {

using BigInt = boost::multiprecision::cpp_int;

/// Möbius function by trial division.
inline int mobius(std::uint64_t d) {
  if (d == 0) throw domain_error("mobius: argument must be >= 1");
  int sign = 1;
  for (std::uint64_t p = 2; p <= d / p; ++p) {
    if (d % p != 0) continue;
    d /= p;
    if (d % p == 0) return 0;
    sign = -sign;
  }
  if (d > 1) sign = -sign;
  return sign;
}

/// Number of Lyndon words of length n over k letters:
/// L(n,k) = (1/n) * sum_{d | n} mu(d) k^(n/d), computed exactly.
inline BigInt count_lyndon(std::uint64_t n, std::uint64_t k) {
  if (n == 0 || k == 0) throw domain_error("count_lyndon: n and k must be >= 1");
  BigInt sum = 0;
  for (std::uint64_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    int mu = mobius(d);
    if (mu == 0) continue;
    BigInt term = boost::multiprecision::pow(BigInt(k), static_cast<unsigned>(n / d));
    if (mu > 0)
      sum += term;
    else
      sum -= term;
  }
  if (sum % n != 0) throw std::logic_error("count_lyndon: divisor sum not divisible by n");
  return sum / n;
}

// ---------------------------------------------------------------------------
// Generic span algorithms
// ---------------------------------------------------------------------------

/// Linear-time Lyndon test: scans the longest prefix of the form p^e p' and
/// accepts iff it covers the whole word with |p| = |w|.
template <typename T>
bool is_lyndon(std::span<const T> w) {
  if (w.empty()) throw domain_error("is_lyndon: empty word");
  std::size_t n = w.size();
  std::size_t k = 0;
  std::size_t j = 1;
  while (j < n && !(w[j] < w[k])) {
    if (w[k] < w[j])
      k = 0;
    else
      ++k;
    ++j;
  }
  return j == n && k == 0;
}

/// Half-open factor [start, start + length).
struct Factor {
  std::size_t start;
  std::size_t length;
  bool operator==(const Factor&) const = default;
};

/// Duval's algorithm. Returns the Chen-Fox-Lyndon factors left to right.
template <typename T>
std::vector<Factor> duval(std::span<const T> w) {
  if (w.empty()) throw domain_error("duval_factorize: empty word");
  std::vector<Factor> out;
  const std::size_t n = w.size();
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    std::size_t k = i;
    while (j < n && !(w[j] < w[k])) {
      if (w[k] < w[j])
        k = i;
      else
        ++k;
      ++j;
    }
    const std::size_t period = j - k;
    while (i <= k) {
      out.push_back({i, period});
      i += period;
    }
  }
  return out;
}

/// Lyndon words over {0..k-1} whose length divides n, in lexicographic
/// order (Fredricksen-Kessler-Maiorana successor rule). The callback gets
/// each word as a span valid only during the call.
template <typename Fn>
void for_each_lyndon_dividing(std::size_t n, std::size_t k, Fn&& fn) {
  if (n == 0 || k == 0) throw domain_error("lyndon enumeration: n and k must be >= 1");
  std::vector<Letter> w;
  w.reserve(n);
  w.push_back(0);
  const auto top = static_cast<Letter>(k - 1);
  for (;;) {
    if (n % w.size() == 0) fn(std::span<const Letter>(w));
    const std::size_t period = w.size();
    while (w.size() < n) w.push_back(w[w.size() - period]);
    while (!w.empty() && w.back() == top) w.pop_back();
    if (w.empty()) break;
    ++w.back();
  }
}

/// de Bruijn sequence of order n over {0..k-1} as letter indices.
inline std::vector<Letter> de_bruijn_letters(std::size_t n, std::size_t k, Budget budget = {}) {
  if (n == 0 || k == 0) throw domain_error("de_bruijn_sequence: n and k must be >= 1");
  auto total = checked_power(k, n, budget.max_items);
  if (!total) throw resource_error("de_bruijn_sequence: k^n exceeds enumeration budget");
  std::vector<Letter> seq;
  seq.reserve(*total);
  for_each_lyndon_dividing(n, k, [&](std::span<const Letter> w) {
    seq.insert(seq.end(), w.begin(), w.end());
  });
  return seq;
}

// ---------------------------------------------------------------------------
// Word-level interface
// ---------------------------------------------------------------------------

inline bool is_lyndon(const Word& w) { return is_lyndon(w.letters()); }

struct LyndonFactorization {
  std::vector<Word> factors;

  Word concatenation() const {
    std::vector<Letter> all;
    for (const auto& f : factors) all.insert(all.end(), f.vec().begin(), f.vec().end());
    return Word(factors.front().alphabet(), std::move(all));
  }
};

inline LyndonFactorization duval_factorize(const Word& w) {
  LyndonFactorization out;
  for (const auto& f : duval(w.letters())) out.factors.push_back(w.substr(f.start, f.length));
  return out;
}

inline std::vector<Word> lyndon_words_dividing(std::size_t n, const AlphabetRef& alphabet,
                                               Budget budget = {}) {
  if (!checked_power(alphabet->size(), n, budget.max_items)) {
    throw resource_error("lyndon_words_dividing: k^n exceeds enumeration budget");
  }
  std::vector<Word> out;
  for_each_lyndon_dividing(n, alphabet->size(), [&](std::span<const Letter> w) {
    out.emplace_back(alphabet, std::vector<Letter>(w.begin(), w.end()));
  });
  return out;
}

inline Word de_bruijn_sequence(std::size_t n, const AlphabetRef& alphabet, Budget budget = {}) {
  return Word(alphabet, de_bruijn_letters(n, alphabet->size(), budget));
}

/// True iff every length-n word over k letters occurs exactly once as a
/// cyclic factor of seq and |seq| = k^n.
inline bool check_de_bruijn(std::span<const Letter> seq, std::size_t n, std::size_t k) {
  auto total = checked_power(k, n, std::uint64_t{1} << 40);
  if (!total || seq.size() != *total) return false;
  if (seq.empty()) return false;
  std::vector<std::uint8_t> seen(*total, 0);
  const std::uint64_t high = *total / k;
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < n; ++i) code = code * k + seq[i % seq.size()];
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seen[code]++) return false;
    const Letter next = seq[(i + n) % seq.size()];
    code = (code % high) * k + next;
  }
  return true;
}

/// B(k, n): vertices are the k^(n-1) words of length n-1 (encoded base k,
/// most significant letter first); each edge appends one letter.
struct DeBruijnGraph {
  struct Edge {
    std::uint64_t source;
    std::uint64_t target;
    Letter symbol;
  };

  std::size_t order = 0;
  AlphabetRef alphabet;
  std::uint64_t vertex_count = 0;
  std::vector<Edge> edges;

  Word vertex(std::uint64_t id) const {
    std::vector<Letter> letters(order - 1);
    const std::size_t k = alphabet->size();
    for (std::size_t i = order - 1; i-- > 0;) {
      letters[i] = static_cast<Letter>(id % k);
      id /= k;
    }
    return Word(alphabet, std::move(letters));
  }
};

inline DeBruijnGraph de_bruijn_graph(std::size_t n, const AlphabetRef& alphabet, Budget budget = {}) {
  if (n < 2) throw domain_error("de_bruijn_graph: order must be >= 2");
  const std::size_t k = alphabet->size();
  auto edge_count = checked_power(k, n, budget.max_items);
  if (!edge_count) throw resource_error("de_bruijn_graph: k^n exceeds enumeration budget");
  DeBruijnGraph g;
  g.order = n;
  g.alphabet = alphabet;
  g.vertex_count = *edge_count / k;
  g.edges.reserve(*edge_count);
  for (std::uint64_t u = 0; u < g.vertex_count; ++u) {
    for (std::size_t a = 0; a < k; ++a) {
      g.edges.push_back({u, (u * k + a) % g.vertex_count, static_cast<Letter>(a)});
    }
  }
  std::vector<std::uint64_t> in(g.vertex_count, 0);
  std::vector<std::uint64_t> out(g.vertex_count, 0);
  for (const auto& e : g.edges) {
    ++out[e.source];
    ++in[e.target];
  }
  for (std::uint64_t v = 0; v < g.vertex_count; ++v) {
    if (in[v] != k || out[v] != k) throw std::logic_error("de_bruijn_graph: degree invariant violated");
  }
  return g;
}

}  // namespace symdyn
