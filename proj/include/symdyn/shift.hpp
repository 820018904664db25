#pragma once

/**
 * Shifts of finite type.
 *
 * An SFT is given by an alphabet and a finite set of forbidden words. Its
 * language B(X) is approximated here by the locally admissible words (no
 * forbidden factor), which has the same exponential growth rate. Entropy is
 * reported in bits per symbol.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "symdyn/error.hpp"
#include "symdyn/lyndon.hpp"
#include "symdyn/word.hpp"

namespace symdyn {

class ShiftOfFiniteType {
 public:
  explicit ShiftOfFiniteType(AlphabetRef alphabet, std::vector<Word> forbidden = {})
      : alphabet_(std::move(alphabet)), forbidden_(std::move(forbidden)) {
    for (const auto& f : forbidden_) {
      if (f.empty()) throw domain_error("forbidden words must be nonempty");
      if (!same_alphabet(f.alphabet(), alphabet_)) {
        throw domain_error("forbidden word over a different alphabet");
      }
      memory_ = std::max(memory_, f.size());
    }
    std::sort(forbidden_.begin(), forbidden_.end());
    forbidden_.erase(std::unique(forbidden_.begin(), forbidden_.end()), forbidden_.end());
  }

  static ShiftOfFiniteType full(std::size_t k) { return ShiftOfFiniteType(make_alphabet(k)); }

  const AlphabetRef& alphabet() const noexcept { return alphabet_; }
  const std::vector<Word>& forbidden() const noexcept { return forbidden_; }
  /// Longest forbidden word; 0 for the full shift.
  std::size_t memory() const noexcept { return memory_; }

  /// True iff some forbidden word is a suffix of w[0, end).
  bool forbidden_suffix(std::span<const Letter> w) const {
    for (const auto& f : forbidden_) {
      if (f.size() > w.size()) continue;
      if (std::equal(f.vec().begin(), f.vec().end(), w.end() - static_cast<std::ptrdiff_t>(f.size()))) {
        return true;
      }
    }
    return false;
  }

  /// Membership of a finite word in the (locally admissible) language.
  bool contains(const Word& w) const {
    if (!same_alphabet(w.alphabet(), alphabet_)) throw domain_error("contains: word over a different alphabet");
    return contains_letters(w.letters());
  }

  bool contains_letters(std::span<const Letter> w) const {
    for (std::size_t end = 1; end <= w.size(); ++end) {
      if (forbidden_suffix(w.first(end))) return false;
    }
    return true;
  }

  /// True iff the periodic point with period `buffer` avoids every forbidden
  /// word, i.e. every cyclic factor is allowed.
  bool contains_cyclic(std::span<const Letter> buffer) const {
    if (buffer.empty()) return false;
    return first_cyclic_violation(buffer) == buffer.size();
  }

  /// Smallest end position e such that a forbidden word ends at e (reading the
  /// buffer cyclically), or buffer.size() when there is none.
  std::size_t first_cyclic_violation(std::span<const Letter> buffer) const {
    const std::size_t len = buffer.size();
    for (std::size_t e = 0; e < len; ++e) {
      if (forbidden_ending_at(buffer, e)) return e;
    }
    return len;
  }

  bool forbidden_ending_at(std::span<const Letter> buffer, std::size_t e) const {
    const std::size_t len = buffer.size();
    for (const auto& f : forbidden_) {
      const std::size_t m = f.size();
      bool match = true;
      for (std::size_t t = 0; t < m && match; ++t) {
        // position e - (m-1) + t, cyclically
        const std::size_t pos = (e + len * m - (m - 1) + t) % len;
        match = buffer[pos] == f[t];
      }
      if (match) return true;
    }
    return false;
  }

 private:
  AlphabetRef alphabet_;
  std::vector<Word> forbidden_;
  std::size_t memory_ = 0;
};

/// Rewrites buffer in place until it is cyclically allowed. Scans left to
/// right; wherever a forbidden word ends, the last letter is replaced by the
/// next letter (in cyclic alphabet order) that removes every violation ending
/// there. Gives up after buffer.size() passes.
inline bool repair_cyclic(const ShiftOfFiniteType& sft, std::vector<Letter>& buffer) {
  if (buffer.empty()) return false;
  const std::size_t k = sft.alphabet()->size();
  for (std::size_t pass = 0; pass < buffer.size(); ++pass) {
    bool changed = false;
    for (std::size_t e = 0; e < buffer.size(); ++e) {
      if (!sft.forbidden_ending_at(buffer, e)) continue;
      const Letter orig = buffer[e];
      for (std::size_t t = 1; t < k; ++t) {
        buffer[e] = static_cast<Letter>((orig + t) % k);
        if (!sft.forbidden_ending_at(buffer, e)) break;
      }
      changed = true;
    }
    if (!changed) return true;
    if (sft.contains_cyclic(buffer)) return true;
  }
  return sft.contains_cyclic(buffer);
}

/// |B_n(X)| by dynamic programming over contexts holding the last
/// min(len, m-1) letters.
inline BigInt count_words(const ShiftOfFiniteType& sft, std::size_t n) {
  if (n == 0) throw domain_error("count_words: n must be >= 1");
  const std::size_t k = sft.alphabet()->size();
  const std::size_t ctx_len = sft.memory() > 0 ? sft.memory() - 1 : 0;
  std::map<std::vector<Letter>, BigInt> layer;
  layer.emplace(std::vector<Letter>{}, BigInt(1));
  std::vector<Letter> ext;
  for (std::size_t step = 0; step < n; ++step) {
    std::map<std::vector<Letter>, BigInt> next;
    for (const auto& [ctx, cnt] : layer) {
      for (std::size_t a = 0; a < k; ++a) {
        ext = ctx;
        ext.push_back(static_cast<Letter>(a));
        if (sft.forbidden_suffix(ext)) continue;
        std::vector<Letter> key(ext.end() - static_cast<std::ptrdiff_t>(std::min(ctx_len, ext.size())), ext.end());
        next[std::move(key)] += cnt;
      }
    }
    layer = std::move(next);
    if (layer.empty()) return 0;
  }
  BigInt total = 0;
  for (const auto& [ctx, cnt] : layer) total += cnt;
  return total;
}

/// log2 of a positive big integer, accurate to double precision.
inline double log2_big(const BigInt& x) {
  if (x <= 0) throw domain_error("log2_big: argument must be positive");
  const std::size_t bits = boost::multiprecision::msb(x) + 1;
  if (bits <= 53) return std::log2(x.convert_to<double>());
  const std::size_t drop = bits - 53;
  BigInt top = x >> drop;
  return std::log2(top.convert_to<double>()) + static_cast<double>(drop);
}

enum class EntropyMethod { finite_slope, transfer_matrix };

inline const char* to_string(EntropyMethod m) {
  return m == EntropyMethod::finite_slope ? "finite-slope" : "transfer-matrix";
}

struct EntropyEstimate {
  double value = 0.0;  // bits per symbol
  EntropyMethod method = EntropyMethod::finite_slope;
  std::size_t n_used = 0;  // window length, or iteration count for the transfer matrix
  std::optional<double> error_bound;
  bool empty_language = false;
};

/// log2 |B_n| / n at n = n_max. An upper bound on the entropy of an SFT.
inline EntropyEstimate entropy_finite_slope(const ShiftOfFiniteType& sft, std::size_t n_max) {
  if (n_max < 2) throw domain_error("entropy_finite_slope: n_max must be >= 2");
  EntropyEstimate est;
  est.method = EntropyMethod::finite_slope;
  est.n_used = n_max;
  BigInt count = count_words(sft, n_max);
  if (count == 0) {
    est.empty_language = true;
    return est;
  }
  est.value = log2_big(count) / static_cast<double>(n_max);
  return est;
}

struct TransferMatrix {
  std::vector<std::vector<Letter>> states;  // allowed (m-1)-blocks
  std::vector<std::vector<std::uint32_t>> entries;  // entries[i][j] = edges i -> j
};

/// Adjacency on allowed (m-1)-blocks: u -> v when u+a is allowed and v is its
/// (m-1)-suffix. For memory <= 1 there is one state with a self-loop per
/// allowed letter.
inline TransferMatrix build_transfer_matrix(const ShiftOfFiniteType& sft, Budget budget = {}) {
  const std::size_t k = sft.alphabet()->size();
  const std::size_t block = sft.memory() > 0 ? sft.memory() - 1 : 0;
  if (!checked_power(k, block, budget.max_items)) {
    throw resource_error("transfer matrix: k^(m-1) exceeds enumeration budget");
  }
  TransferMatrix tm;
  // Allowed blocks in lexicographic order.
  std::vector<std::vector<Letter>> frontier{{}};
  for (std::size_t len = 0; len < block; ++len) {
    std::vector<std::vector<Letter>> grown;
    for (const auto& w : frontier) {
      for (std::size_t a = 0; a < k; ++a) {
        auto ext = w;
        ext.push_back(static_cast<Letter>(a));
        if (!sft.forbidden_suffix(ext)) grown.push_back(std::move(ext));
      }
    }
    frontier = std::move(grown);
  }
  tm.states = std::move(frontier);
  std::map<std::vector<Letter>, std::size_t> index;
  for (std::size_t i = 0; i < tm.states.size(); ++i) index.emplace(tm.states[i], i);
  tm.entries.assign(tm.states.size(), std::vector<std::uint32_t>(tm.states.size(), 0));
  for (std::size_t i = 0; i < tm.states.size(); ++i) {
    for (std::size_t a = 0; a < k; ++a) {
      auto ext = tm.states[i];
      ext.push_back(static_cast<Letter>(a));
      if (sft.forbidden_suffix(ext)) continue;
      std::vector<Letter> tail(ext.end() - static_cast<std::ptrdiff_t>(block), ext.end());
      auto it = index.find(tail);
      if (it != index.end()) ++tm.entries[i][it->second];
    }
  }
  return tm;
}

/// log2 of the spectral radius of the transfer matrix. Power iteration runs
/// on A + I, which has the same Perron vector, is aperiodic, and keeps every
/// iterate strictly positive, so the Collatz-Wielandt ratios bracket the
/// radius at each step.
inline EntropyEstimate entropy_transfer_matrix(const ShiftOfFiniteType& sft, double rel_tol = 1e-10,
                                               std::size_t max_iter = 10000, Budget budget = {}) {
  EntropyEstimate est;
  est.method = EntropyMethod::transfer_matrix;
  const TransferMatrix tm = build_transfer_matrix(sft, budget);
  const std::size_t s = tm.states.size();
  if (s == 0) {
    est.empty_language = true;
    est.error_bound = 0.0;
    return est;
  }
  std::vector<double> v(s, 1.0);
  std::vector<double> w(s);
  double lo = 0.0;
  double hi = 0.0;
  std::size_t it = 0;
  for (; it < max_iter; ++it) {
    for (std::size_t i = 0; i < s; ++i) {
      double acc = v[i];
      for (std::size_t j = 0; j < s; ++j) acc += tm.entries[i][j] * v[j];
      w[i] = acc;
    }
    lo = std::numeric_limits<double>::infinity();
    hi = 0.0;
    double norm = 0.0;
    for (std::size_t i = 0; i < s; ++i) {
      const double r = w[i] / v[i];
      lo = std::min(lo, r);
      hi = std::max(hi, r);
      norm = std::max(norm, w[i]);
    }
    for (std::size_t i = 0; i < s; ++i) v[i] = w[i] / norm;
    if (hi - lo <= rel_tol * hi) {
      ++it;
      break;
    }
  }
  est.n_used = it;
  const double rho_hi = hi - 1.0;
  const double rho_lo = lo - 1.0;
  // Nonnegative integer matrices have spectral radius 0 or >= 1.
  if (rho_hi < 0.5) {
    est.empty_language = true;
    est.error_bound = 0.0;
    return est;
  }
  const double rho = 0.5 * (rho_hi + rho_lo);
  const double log_k = std::log2(static_cast<double>(sft.alphabet()->size()));
  est.value = std::clamp(std::log2(std::max(rho, 1.0)), 0.0, log_k);
  const double upper = std::log2(rho_hi);
  const double lower = std::log2(std::max(rho_lo, 1.0));
  est.error_bound = std::max(upper - est.value, est.value - lower);
  return est;
}

/// Cyclic left shift: result[i] = buffer[(i + steps) mod len].
template <typename T>
std::vector<T> shift_apply(std::span<const T> buffer, std::uint64_t steps) {
  if (buffer.empty()) throw domain_error("shift_apply: empty buffer");
  std::vector<T> out(buffer.begin(), buffer.end());
  std::rotate(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(steps % out.size()), out.end());
  return out;
}

template <typename T>
std::vector<T> shift_apply(const std::vector<T>& buffer, std::uint64_t steps) {
  return shift_apply(std::span<const T>(buffer), steps);
}

}  // namespace symdyn
