#pragma once

/**
 * Pseudorandom generator and function built on a lattice-symbolic system,
 * plus frequency-style statistical tests used as empirical distinguishers.
 *
 * Generator: the seed is mapped to a cyclically allowed state x_s of length
 * N. Each refill advances the state by `stride` shift steps and appends the
 * extracted bits of the lattice coordinate h * phi(T^r x_s) to a reservoir,
 * so reads of any chunking return the same stream.
 *
 * Function: F_K(x) = Extract_m(h * phi(T^{H(K,x)} s_K)) with H a keyed
 * BLAKE2b hash reduced into [n_min, n_min + 2^20).
 *
 * Hashing uses libsodium's BLAKE2b; the library calls sodium_init() lazily.
 */

#include <sodium.h>

#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "symdyn/error.hpp"
#include "symdyn/lattice.hpp"
#include "symdyn/shift.hpp"

namespace symdyn {

/// One bit per element, values 0 or 1.
using Bits = std::vector<std::uint8_t>;

namespace detail {

inline void ensure_sodium() {
  static const int rc = sodium_init();
  if (rc < 0) throw std::runtime_error("libsodium initialisation failed");
}

/// BLAKE2b with optional key (empty or 16..64 bytes).
template <std::size_t OutLen>
std::array<std::uint8_t, OutLen> blake2b(std::span<const std::uint8_t> msg, std::span<const std::uint8_t> key = {}) {
  ensure_sodium();
  std::array<std::uint8_t, OutLen> out{};
  crypto_generichash(out.data(), OutLen, msg.data(), msg.size(), key.empty() ? nullptr : key.data(), key.size());
  return out;
}

inline void append_u64_le(std::vector<std::uint8_t>& buf, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) buf.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

inline void append_tag(std::vector<std::uint8_t>& buf, std::string_view tag) {
  buf.insert(buf.end(), tag.begin(), tag.end());
}

inline std::uint64_t load_u64_le(std::span<const std::uint8_t> b) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[static_cast<std::size_t>(i)];
  return v;
}

/// Bits packed MSB-first, prefixed by the bit count so that inputs of
/// different lengths never collide.
inline std::vector<std::uint8_t> pack_with_length(const Bits& bits) {
  std::vector<std::uint8_t> out;
  append_u64_le(out, bits.size());
  std::uint8_t cur = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    cur = static_cast<std::uint8_t>((cur << 1) | (bits[i] & 1));
    if (i % 8 == 7) {
      out.push_back(cur);
      cur = 0;
    }
  }
  if (bits.size() % 8 != 0) out.push_back(static_cast<std::uint8_t>(cur << (8 - bits.size() % 8)));
  return out;
}

}  // namespace detail

/// MSB-first expansion of bytes.
inline Bits bytes_to_bits(std::span<const std::uint8_t> bytes) {
  Bits out;
  out.reserve(bytes.size() * 8);
  for (std::uint8_t b : bytes) {
    for (int i = 7; i >= 0; --i) out.push_back(static_cast<std::uint8_t>((b >> i) & 1));
  }
  return out;
}

/// MSB-first packing; the last byte is zero padded.
inline std::vector<std::uint8_t> bits_to_bytes(const Bits& bits) {
  std::vector<std::uint8_t> out((bits.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) out[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
  }
  return out;
}

inline std::vector<std::uint8_t> parse_hex(std::string_view hex) {
  if (hex.size() > 1 && hex[0] == '0' && (hex[1] == 'x' || hex[1] == 'X')) hex.remove_prefix(2);
  if (hex.empty()) throw domain_error("hex string is empty");
  if (hex.size() % 2 != 0) throw domain_error("hex string must have an even number of digits");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  std::vector<std::uint8_t> out;
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    const int hi = nibble(hex[i]);
    const int lo = nibble(hex[i + 1]);
    if (hi < 0 || lo < 0) throw domain_error("invalid hex digit");
    out.push_back(static_cast<std::uint8_t>(hi * 16 + lo));
  }
  return out;
}

/// Per coefficient in index order, the floor(log2 q) low-order bits of the
/// canonical representative, most significant first; truncated to m bits.
inline Bits extract_m(const RingElement& elem, std::size_t m) {
  const unsigned b = elem.params().bits_per_coefficient();
  if (m > elem.size() * b) throw domain_error("extract_m: more bits requested than the element holds");
  Bits out;
  out.reserve(m);
  for (std::size_t i = 0; out.size() < m; ++i) {
    const std::uint32_t c = elem[i];
    for (unsigned j = b; j-- > 0 && out.size() < m;) out.push_back(static_cast<std::uint8_t>((c >> j) & 1));
  }
  return out;
}

/// Maps seed bits to a cyclically allowed state of length N. Bit pairs give
/// symbols (00 -> -1, 01 -> 0, 10 -> 1, 11 -> none); once the seed is used
/// up, further pairs come from BLAKE2b(seed || counter) blocks. The buffer is
/// then repaired left to right.
inline std::vector<Letter> seed_to_state(const Bits& seed, const LatticeSymbolicSystem& sys) {
  if (seed.size() < 16) throw domain_error("seed_to_state: seed must have at least 16 bits");
  const std::size_t n = sys.params().n();
  std::vector<Letter> buf;
  buf.reserve(n);
  auto consume = [&](const Bits& bits) {
    for (std::size_t i = 0; i + 1 < bits.size() && buf.size() < n; i += 2) {
      const int pair = bits[i] * 2 + bits[i + 1];
      if (pair == 3) continue;
      buf.push_back(static_cast<Letter>(pair));  // 0 -> -1, 1 -> 0, 2 -> 1
    }
  };
  consume(seed);
  const auto packed = detail::pack_with_length(seed);
  for (std::uint64_t counter = 0; buf.size() < n; ++counter) {
    std::vector<std::uint8_t> msg;
    detail::append_tag(msg, "symdyn.seed");
    msg.insert(msg.end(), packed.begin(), packed.end());
    detail::append_u64_le(msg, counter);
    const auto block = detail::blake2b<64>(msg);
    consume(bytes_to_bits(block));
  }
  if (!repair_cyclic(sys.sft(), buf)) {
    throw domain_error("seed_to_state: shift too constrained; repair did not converge");
  }
  return buf;
}

class PrgState {
 public:
  PrgState(std::shared_ptr<const LatticeSymbolicSystem> sys, const Bits& seed, std::uint64_t stride = 1)
      : sys_(std::move(sys)), state_(seed_to_state(seed, *sys_)), stride_(stride) {
    if (stride_ == 0) throw domain_error("prg: stride must be >= 1");
  }

  /// Next m bits of the stream.
  Bits next(std::size_t m) {
    if (m == 0) throw domain_error("prg_next: m must be >= 1");
    while (reservoir_.size() < m) refill();
    Bits out(reservoir_.begin(), reservoir_.begin() + static_cast<std::ptrdiff_t>(m));
    reservoir_.erase(reservoir_.begin(), reservoir_.begin() + static_cast<std::ptrdiff_t>(m));
    return out;
  }

  const std::vector<Letter>& state() const noexcept { return state_; }
  std::uint64_t steps() const noexcept { return steps_; }

 private:
  void refill() {
    state_ = shift_apply(std::span<const Letter>(state_), stride_);
    steps_ += stride_;
    const RingElement elem = lattice_image(state_, *sys_);
    const Bits bits = extract_m(elem, elem.size() * elem.params().bits_per_coefficient());
    reservoir_.insert(reservoir_.end(), bits.begin(), bits.end());
  }

  std::shared_ptr<const LatticeSymbolicSystem> sys_;
  std::vector<Letter> state_;
  std::uint64_t stride_;
  std::uint64_t steps_ = 0;
  std::deque<std::uint8_t> reservoir_;
};

inline Bits prg_next(PrgState& state, std::size_t m) { return state.next(m); }

class PrfKey {
 public:
  static constexpr std::uint64_t hash_range = std::uint64_t{1} << 20;

  /// n_min defaults to N.
  PrfKey(std::shared_ptr<const LatticeSymbolicSystem> sys, std::span<const std::uint8_t> key,
         std::optional<std::uint64_t> n_min = std::nullopt)
      : sys_(std::move(sys)), n_min_(n_min.value_or(sys_->params().n())) {
    if (key.empty()) throw domain_error("prf: key must be nonempty");
    std::vector<std::uint8_t> msg;
    detail::append_tag(msg, "symdyn.prf.key");
    msg.insert(msg.end(), key.begin(), key.end());
    derived_ = detail::blake2b<32>(msg);
    std::vector<std::uint8_t> tag;
    detail::append_tag(tag, "symdyn.prf.start");
    const auto start = detail::blake2b<32>(tag, derived_);
    start_ = seed_to_state(bytes_to_bits(start), *sys_);
  }

  /// H(K, x) in [n_min, n_min + 2^20).
  std::uint64_t step_count(const Bits& x) const {
    std::vector<std::uint8_t> msg;
    detail::append_tag(msg, "symdyn.prf.H");
    const auto packed = detail::pack_with_length(x);
    msg.insert(msg.end(), packed.begin(), packed.end());
    const auto digest = detail::blake2b<8>(msg, derived_);
    return n_min_ + detail::load_u64_le(digest) % hash_range;
  }

  const std::vector<Letter>& start() const noexcept { return start_; }
  const LatticeSymbolicSystem& system() const noexcept { return *sys_; }
  std::uint64_t n_min() const noexcept { return n_min_; }

 private:
  std::shared_ptr<const LatticeSymbolicSystem> sys_;
  std::uint64_t n_min_;
  std::array<std::uint8_t, 32> derived_{};
  std::vector<Letter> start_;
};

/// T^n is a rotation of the circular state, so the cost is independent of n.
inline Bits prf_eval(const PrfKey& key, const Bits& x, std::size_t m) {
  const auto state = shift_apply(std::span<const Letter>(key.start()), key.step_count(x));
  return extract_m(lattice_image(state, key.system()), m);
}

// ---------------------------------------------------------------------------
// Statistical tests
// ---------------------------------------------------------------------------

struct TestReport {
  std::string name;
  double statistic = 0.0;
  double p_value = 0.0;
  bool passed = false;
};

inline void require_bits(const Bits& bits, std::string_view who) {
  if (bits.size() < 100) throw domain_error(std::string(who) + ": needs at least 100 bits");
}

/// Frequency test: S = sum(2b - 1), p = erfc(|S| / sqrt(2n)).
inline TestReport monobit_test(const Bits& bits, double alpha_sig = 0.01) {
  require_bits(bits, "monobit_test");
  std::int64_t s = 0;
  for (auto b : bits) s += b ? 1 : -1;
  const double n = static_cast<double>(bits.size());
  TestReport r{"monobit", std::abs(static_cast<double>(s)) / std::sqrt(n), 0.0, false};
  r.p_value = std::erfc(r.statistic / std::sqrt(2.0));
  r.passed = r.p_value >= alpha_sig;
  return r;
}

/// Runs test. Fails outright (p = 0) when the ones proportion is already
/// outside 1/2 +- 2/sqrt(n).
inline TestReport runs_test(const Bits& bits, double alpha_sig = 0.01) {
  require_bits(bits, "runs_test");
  const double n = static_cast<double>(bits.size());
  double ones = 0;
  for (auto b : bits) ones += b;
  const double pi = ones / n;
  std::size_t runs = 1;
  for (std::size_t i = 1; i < bits.size(); ++i) runs += bits[i] != bits[i - 1];
  TestReport r{"runs", static_cast<double>(runs), 0.0, false};
  if (std::abs(pi - 0.5) >= 2.0 / std::sqrt(n)) {
    r.p_value = 0.0;
  } else {
    const double expected = 2.0 * n * pi * (1.0 - pi);
    r.p_value = std::erfc(std::abs(static_cast<double>(runs) - expected) / (2.0 * std::sqrt(2.0 * n) * pi * (1.0 - pi)));
  }
  r.passed = r.p_value >= alpha_sig;
  return r;
}

/// Block frequency test: chi^2 = 4M sum (pi_i - 1/2)^2 over floor(n/M)
/// blocks, p = Q(blocks/2, chi^2/2).
inline TestReport block_frequency_test(const Bits& bits, std::size_t block_len = 128, double alpha_sig = 0.01) {
  require_bits(bits, "block_frequency_test");
  if (block_len == 0 || block_len > bits.size()) throw domain_error("block_frequency_test: bad block length");
  const std::size_t blocks = bits.size() / block_len;
  double chi2 = 0.0;
  for (std::size_t b = 0; b < blocks; ++b) {
    double ones = 0;
    for (std::size_t i = 0; i < block_len; ++i) ones += bits[b * block_len + i];
    const double d = ones / static_cast<double>(block_len) - 0.5;
    chi2 += d * d;
  }
  chi2 *= 4.0 * static_cast<double>(block_len);
  TestReport r{"block_frequency", chi2, 0.0, false};
  r.p_value = boost::math::gamma_q(static_cast<double>(blocks) / 2.0, chi2 / 2.0);
  r.passed = r.p_value >= alpha_sig;
  return r;
}

// ---------------------------------------------------------------------------
// Distinguisher harness
// ---------------------------------------------------------------------------

/// Produces nbits bits for one trial from a per-trial seed.
using BitGenerator = std::function<Bits(std::uint64_t trial_seed, std::size_t nbits)>;

struct NamedTest {
  std::string name;
  std::function<TestReport(const Bits&)> run;
};

inline std::vector<NamedTest> default_tests(double alpha_sig = 0.01, std::size_t block_len = 128) {
  return {
      {"monobit", [=](const Bits& b) { return monobit_test(b, alpha_sig); }},
      {"runs", [=](const Bits& b) { return runs_test(b, alpha_sig); }},
      {"block_frequency", [=](const Bits& b) { return block_frequency_test(b, block_len, alpha_sig); }},
  };
}

struct TestAggregate {
  std::string name;
  std::size_t passes = 0;
  std::size_t trials = 0;
  std::size_t band_low = 0;   // inclusive
  std::size_t band_high = 0;  // inclusive
  bool consistent = false;

  double pass_fraction() const { return trials ? static_cast<double>(passes) / static_cast<double>(trials) : 0.0; }
};

struct HarnessReport {
  std::vector<TestAggregate> tests;
  double alpha_sig = 0.01;

  bool all_consistent() const {
    for (const auto& t : tests) {
      if (!t.consistent) return false;
    }
    return true;
  }
};

/// Two-sided band holding a Binomial(trials, 1 - alpha_sig) pass count with
/// probability >= confidence (quantiles rounded outwards).
inline std::pair<std::size_t, std::size_t> binomial_band(std::size_t trials, double alpha_sig, double confidence = 0.99) {
  boost::math::binomial_distribution<double> dist(static_cast<double>(trials), 1.0 - alpha_sig);
  const double tail = (1.0 - confidence) / 2.0;
  const double lo = boost::math::quantile(dist, tail);
  const double hi = boost::math::quantile(boost::math::complement(dist, tail));
  return {static_cast<std::size_t>(std::floor(lo)), static_cast<std::size_t>(std::ceil(hi))};
}

/// Runs every test on `trials` independent streams (trial seeds
/// base_seed, base_seed + 1, ...) and checks each pass count against the
/// binomial band around 1 - alpha_sig.
inline HarnessReport distinguisher_harness(const BitGenerator& gen, const std::vector<NamedTest>& tests,
                                           std::size_t trials, std::size_t bits_per_trial,
                                           std::uint64_t base_seed = 1, double alpha_sig = 0.01) {
  if (trials < 30) throw domain_error("distinguisher_harness: needs at least 30 trials");
  HarnessReport rep;
  rep.alpha_sig = alpha_sig;
  const auto [lo, hi] = binomial_band(trials, alpha_sig);
  for (const auto& t : tests) rep.tests.push_back({t.name, 0, trials, lo, hi, false});
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const Bits bits = gen(base_seed + trial, bits_per_trial);
    for (std::size_t i = 0; i < tests.size(); ++i) rep.tests[i].passes += tests[i].run(bits).passed ? 1 : 0;
  }
  for (auto& t : rep.tests) t.consistent = t.passes >= t.band_low && t.passes <= t.band_high;
  return rep;
}

/// Eight big-endian bytes of v as seed bits.
inline Bits seed_bits_from_u64(std::uint64_t v) {
  std::array<std::uint8_t, 8> b{};
  for (int i = 0; i < 8; ++i) b[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v >> (56 - 8 * i));
  return bytes_to_bits(b);
}

/// Uniform 256-bit seed derived from a trial seed.
inline Bits trial_seed_bits(std::uint64_t trial_seed) {
  std::mt19937_64 gen(trial_seed);
  std::vector<std::uint8_t> bytes;
  for (int i = 0; i < 4; ++i) detail::append_u64_le(bytes, gen());
  return bytes_to_bits(bytes);
}

inline BitGenerator prg_generator(std::shared_ptr<const LatticeSymbolicSystem> sys, std::uint64_t stride = 1) {
  return [sys = std::move(sys), stride](std::uint64_t seed, std::size_t nbits) {
    PrgState st(sys, trial_seed_bits(seed), stride);
    return st.next(nbits);
  };
}

inline BitGenerator constant_generator(std::uint8_t bit = 1) {
  return [bit](std::uint64_t, std::size_t nbits) { return Bits(nbits, bit); };
}

/// Consecutive 32-bit big-endian counters starting at the trial seed.
inline BitGenerator counter_generator() {
  return [](std::uint64_t seed, std::size_t nbits) {
    Bits out;
    out.reserve(nbits + 32);
    for (auto c = static_cast<std::uint32_t>(seed); out.size() < nbits; ++c) {
      for (int i = 31; i >= 0; --i) out.push_back(static_cast<std::uint8_t>((c >> i) & 1));
    }
    out.resize(nbits);
    return out;
  };
}

/// Reference source: mt19937_64 seeded with the trial seed.
inline BitGenerator mt19937_generator() {
  return [](std::uint64_t seed, std::size_t nbits) {
    std::mt19937_64 gen(seed);
    Bits out;
    out.reserve(nbits + 64);
    while (out.size() < nbits) {
      const std::uint64_t w = gen();
      for (int i = 63; i >= 0; --i) out.push_back(static_cast<std::uint8_t>((w >> i) & 1));
    }
    out.resize(nbits);
    return out;
  };
}

}  // namespace symdyn
