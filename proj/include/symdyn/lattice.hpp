#pragma once

/**
 * NTRU-based lattice-symbolic systems.
 *
 * A system couples a ternary shift of finite type (alphabet {-1, 0, 1}) with
 * the ring R_q = Z_q[X]/(X^N - 1). Each symbol is embedded as a coefficient
 * vector psi(s); a point x of the shift maps to
 *
 *     phi(x) = sum_{i=-k}^{k} psi(x_i) X^i   (mod X^N - 1, q)
 *
 * and the NTRU lattice defined by the public polynomial h contains the pair
 * (phi(x), h * phi(x)). Points of the shift are circular buffers; index i is
 * read mod the buffer length and position 0 is the window center.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "symdyn/error.hpp"
#include "symdyn/ring.hpp"
#include "symdyn/shift.hpp"
#include "symdyn/word.hpp"

namespace symdyn {

/// Alphabet {-1, 0, 1}; letter index = symbol value + 1.
inline AlphabetRef ternary_alphabet() {
  static const AlphabetRef alphabet = make_alphabet({"-1", "0", "1"});
  return alphabet;
}

inline bool is_ternary(const AlphabetRef& a) { return same_alphabet(a, ternary_alphabet()); }

constexpr int trit_value(Letter l) noexcept { return static_cast<int>(l) - 1; }
constexpr Letter trit_letter(int v) noexcept { return static_cast<Letter>(v + 1); }

/// psi: symbol -> integer coefficient vector, with a declared minimum
/// pairwise Euclidean separation.
class SymbolEmbedding {
 public:
  SymbolEmbedding(std::array<std::vector<std::int64_t>, 3> table, double separation, double lambda1)
      : table_(std::move(table)), separation_(separation), lambda1_(lambda1) {
    const std::size_t dim = table_[0].size();
    if (dim == 0) throw domain_error("embedding: vectors must be nonempty");
    for (const auto& v : table_) {
      if (v.size() != dim) throw domain_error("embedding: vectors differ in dimension");
    }
    for (std::size_t a = 0; a < 3; ++a) {
      for (std::size_t b = a + 1; b < 3; ++b) {
        if (distance(static_cast<Letter>(a), static_cast<Letter>(b)) < separation_) {
          throw domain_error("embedding: pairwise distance below declared separation");
        }
      }
    }
    if (separation_ < lambda1_ / 2) {
      throw domain_error("embedding: separation below lambda1 / 2");
    }
  }

  /// psi(-1) = -s e_1, psi(0) = 0, psi(1) = s e_1 in dimension `dim`.
  static SymbolEmbedding axis(std::size_t dim, std::int64_t scale, double lambda1) {
    if (scale <= 0) throw domain_error("embedding: scale must be positive");
    std::array<std::vector<std::int64_t>, 3> t;
    for (auto& v : t) v.assign(dim, 0);
    t[0][0] = -scale;
    t[2][0] = scale;
    return SymbolEmbedding(std::move(t), static_cast<double>(scale), lambda1);
  }

  std::size_t dimension() const noexcept { return table_[0].size(); }
  const std::vector<std::int64_t>& operator()(Letter l) const { return table_.at(l); }
  double separation() const noexcept { return separation_; }
  double lambda1() const noexcept { return lambda1_; }

  /// Euclidean distance between psi(a) and psi(b).
  double distance(Letter a, Letter b) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < dimension(); ++i) {
      const double d = static_cast<double>(table_[a][i] - table_[b][i]);
      acc += d * d;
    }
    return std::sqrt(acc);
  }

 private:
  std::array<std::vector<std::int64_t>, 3> table_;
  double separation_;
  double lambda1_;
};

/// Uniform element of R_q from a 64-bit seed (mt19937_64 with rejection
/// sampling, so the result is identical on every conforming platform).
inline RingElement uniform_ring_element(const NtruParams& params, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  const std::uint64_t q = params.q();
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % q;
  std::vector<std::int64_t> c(params.n());
  for (auto& x : c) {
    std::uint64_t r;
    do {
      r = gen();
    } while (r >= limit);
    x = static_cast<std::int64_t>(r % q);
  }
  return RingElement(params, c);
}

class LatticeSymbolicSystem {
 public:
  /// Fails unless the shift is over {-1, 0, 1}, the window fits in the ring,
  /// psi has dimension N, and the shift's entropy is at least alpha.
  LatticeSymbolicSystem(ShiftOfFiniteType sft, NtruParams params, SymbolEmbedding embedding,
                        std::size_t window, double alpha, RingElement h)
      : sft_(std::move(sft)),
        params_(params),
        embedding_(std::move(embedding)),
        window_(window),
        alpha_(alpha),
        h_(std::move(h)) {
    if (!is_ternary(sft_.alphabet())) throw domain_error("lattice-symbolic system: alphabet must be {-1, 0, 1}");
    if (2 * window_ + 1 > params_.n()) throw domain_error("lattice-symbolic system: window 2k+1 exceeds N");
    if (embedding_.dimension() != params_.n()) throw domain_error("lattice-symbolic system: psi dimension must equal N");
    if (!(h_.params() == params_)) throw domain_error("lattice-symbolic system: h has different parameters");
    if (alpha_ < 0) throw domain_error("lattice-symbolic system: entropy floor must be nonnegative");
    entropy_ = entropy_transfer_matrix(sft_);
    if (entropy_.value + 1e-9 < alpha_) {
      throw domain_error("lattice-symbolic system: shift entropy " + std::to_string(entropy_.value) +
                         " is below the floor " + std::to_string(alpha_));
    }
  }

  const ShiftOfFiniteType& sft() const noexcept { return sft_; }
  const NtruParams& params() const noexcept { return params_; }
  const SymbolEmbedding& embedding() const noexcept { return embedding_; }
  std::size_t window() const noexcept { return window_; }
  double alpha() const noexcept { return alpha_; }
  const RingElement& h() const noexcept { return h_; }
  const EntropyEstimate& entropy() const noexcept { return entropy_; }

 private:
  ShiftOfFiniteType sft_;
  NtruParams params_;
  SymbolEmbedding embedding_;
  std::size_t window_;
  double alpha_;
  RingElement h_;
  EntropyEstimate entropy_;
};

inline void require_window(std::span<const Letter> window, const LatticeSymbolicSystem& sys) {
  if (window.size() != 2 * sys.window() + 1) throw domain_error("phi: window length must be 2k+1");
  for (Letter l : window) {
    if (l > 2) throw domain_error("phi: symbol outside {-1, 0, 1}");
  }
}

/// phi(x) = sum_{i=-k}^{k} psi(x_i) X^i in R_q. window[j] holds x_{j-k};
/// X^i for negative i is X^(N+i).
inline RingElement phi_ntru(std::span<const Letter> window, const LatticeSymbolicSystem& sys) {
  require_window(window, sys);
  const std::size_t n = sys.params().n();
  const auto k = static_cast<std::int64_t>(sys.window());
  std::vector<std::int64_t> acc(n, 0);
  for (std::int64_t i = -k; i <= k; ++i) {
    const auto& psi = sys.embedding()(window[static_cast<std::size_t>(i + k)]);
    const auto shift = static_cast<std::size_t>(((i % static_cast<std::int64_t>(n)) + static_cast<std::int64_t>(n)) %
                                                static_cast<std::int64_t>(n));
    for (std::size_t j = 0; j < n; ++j) {
      if (psi[j] == 0) continue;
      std::size_t t = j + shift;
      if (t >= n) t -= n;
      acc[t] += psi[j];
    }
  }
  return RingElement(sys.params(), acc);
}

/// The 2k+1 symbols x_{-k..k} of a circular buffer around position 0.
inline std::vector<Letter> centered_window(std::span<const Letter> buffer, std::size_t k) {
  if (buffer.empty()) throw domain_error("window: empty buffer");
  const std::size_t len = buffer.size();
  std::vector<Letter> w(2 * k + 1);
  for (std::size_t j = 0; j < w.size(); ++j) {
    // x_{j-k}
    w[j] = buffer[(j + len * (k / len + 1) - k) % len];
  }
  return w;
}

inline RingElement phi_ntru_at(std::span<const Letter> buffer, const LatticeSymbolicSystem& sys) {
  return phi_ntru(centered_window(buffer, sys.window()), sys);
}

/// The NTRU-lattice coordinate h * phi(x).
inline RingElement lattice_image(std::span<const Letter> buffer, const LatticeSymbolicSystem& sys) {
  return ring_mul(phi_ntru_at(buffer, sys), sys.h());
}

/// Exact rational point numerator / 2^scale_log2.
struct ScaledPoint {
  std::vector<std::int64_t> numerator;
  unsigned scale_log2 = 0;

  std::vector<double> to_double() const {
    std::vector<double> out(numerator.size());
    const double s = std::ldexp(1.0, -static_cast<int>(scale_log2));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<double>(numerator[i]) * s;
    return out;
  }

  bool operator==(const ScaledPoint&) const = default;
};

/// Weighted sum sum_{i=-k}^{k} psi(x_i) 2^{-|i|}, held exactly as
/// sum psi(x_i) 2^{k-|i|} over the scale 2^k.
inline ScaledPoint phi_weighted(std::span<const Letter> window, const LatticeSymbolicSystem& sys) {
  require_window(window, sys);
  const auto k = static_cast<std::int64_t>(sys.window());
  if (k > 40) throw domain_error("phi_weighted: window radius above 40 overflows the exact representation");
  ScaledPoint p;
  p.scale_log2 = static_cast<unsigned>(k);
  p.numerator.assign(sys.embedding().dimension(), 0);
  for (std::int64_t i = -k; i <= k; ++i) {
    const auto& psi = sys.embedding()(window[static_cast<std::size_t>(i + k)]);
    const std::int64_t weight = std::int64_t{1} << (k - (i < 0 ? -i : i));
    for (std::size_t j = 0; j < psi.size(); ++j) p.numerator[j] += psi[j] * weight;
  }
  return p;
}

inline double euclidean(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(acc);
}

inline double euclidean(const ScaledPoint& a, const ScaledPoint& b) {
  auto x = a.to_double();
  auto y = b.to_double();
  return euclidean(x, y);
}

/// Euclidean distance between centered lifts of two ring elements.
inline double euclidean(const RingElement& a, const RingElement& b) {
  require_same_params(a, b);
  auto x = a.centered();
  auto y = b.centered();
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = static_cast<double>(x[i] - y[i]);
    acc += d * d;
  }
  return std::sqrt(acc);
}

struct MetricValue {
  double value;       // truncated sum over |i| <= p
  double tail_bound;  // 2^(1-p), bounds the omitted terms
};

/// Symbolic-lattice metric sum_i 2^{-|i|} min{1, |psi(x_i) - psi(y_i)|},
/// truncated to |i| <= p on circular buffers.
inline MetricValue d_sl(std::span<const Letter> x, std::span<const Letter> y, std::size_t p,
                        const SymbolEmbedding& psi) {
  if (x.size() != y.size()) throw domain_error("d_sl: buffers differ in length");
  if (x.empty()) throw domain_error("d_sl: empty buffers");
  const std::size_t len = x.size();
  double sum = 0.0;
  for (std::size_t a = 0; a <= p; ++a) {
    const double w = std::ldexp(1.0, -static_cast<int>(a));
    const std::size_t pos = a % len;
    sum += w * std::min(1.0, psi.distance(x[pos], y[pos]));
    if (a > 0) {
      const std::size_t neg = (len - a % len) % len;
      sum += w * std::min(1.0, psi.distance(x[neg], y[neg]));
    }
  }
  return {sum, std::ldexp(1.0, 1 - static_cast<int>(std::min<std::size_t>(p, 2000)))};
}

/// delta(L_NTRU) <= C log2(det)/N = C log2 q.
inline double delta_bound_raw(double c, double q) { return c * std::log2(q); }

inline double delta_bound(const NtruParams& params, double c = 0.02) {
  if (!(c > 0)) throw domain_error("delta_bound: C must be positive");
  return delta_bound_raw(c, static_cast<double>(params.q()));
}

/// Reference point for dimension scaling: 512 dimensions give 128 bits at
/// entropy 0.5, i.e. bits = alpha * N / 2.
struct ValidationPolicy {
  double c = 0.02;
  double entropy_floor = 0.5;
  double reference_n = 512;
  double reference_bits = 128;
  double reference_alpha = 0.5;
};

struct ValidationCheck {
  std::string name;
  bool passed;
  std::string detail;
};

struct ValidationReport {
  bool accepted = true;
  std::vector<ValidationCheck> checks;
  double required_n = 0;          // dimension needed for the requested bits
  double asymptotic_bits = 0;     // alpha * N / 4 from the gate-count exponent
  double calibrated_bits = 0;     // bits implied by the 512/128 calibration
  double delta = 0;

  std::vector<std::string> failures() const {
    std::vector<std::string> out;
    for (const auto& c : checks) {
      if (!c.passed) out.push_back(c.name);
    }
    return out;
  }
};

/// Accepts iff N meets the calibrated dimension requirement, q is prime,
/// C log2 q < alpha / 2, and alpha meets the entropy floor. Every failed
/// condition is listed. Total: never throws on bad numbers.
inline ValidationReport validate_parameters(std::uint64_t n, std::uint64_t q, double alpha,
                                            std::uint64_t security_bits, const ValidationPolicy& policy = {}) {
  ValidationReport r;
  const double nd = static_cast<double>(n);
  const double per_dim = policy.reference_bits / (policy.reference_alpha * policy.reference_n);
  r.asymptotic_bits = alpha * nd / 4.0;
  r.calibrated_bits = alpha > 0 ? per_dim * alpha * nd : 0.0;
  r.required_n = alpha > 0 ? static_cast<double>(security_bits) / (per_dim * alpha)
                           : std::numeric_limits<double>::infinity();
  r.delta = q >= 1 ? delta_bound_raw(policy.c, static_cast<double>(q)) : std::numeric_limits<double>::infinity();

  auto add = [&r](std::string name, bool ok, std::string detail) {
    r.accepted = r.accepted && ok;
    r.checks.push_back({std::move(name), ok, std::move(detail)});
  };
  add("dimension", alpha > 0 && nd >= r.required_n,
      "N=" + std::to_string(n) + " required>=" + std::to_string(r.required_n));
  add("modulus_prime", is_prime(q), "q=" + std::to_string(q));
  add("delta", r.delta < alpha / 2,
      "C*log2(q)=" + std::to_string(r.delta) + " limit<" + std::to_string(alpha / 2));
  add("entropy_floor", alpha >= policy.entropy_floor,
      "alpha=" + std::to_string(alpha) + " floor=" + std::to_string(policy.entropy_floor));
  return r;
}

/// T^steps on a circular state; the state must be cyclically allowed.
inline std::vector<Letter> system_step(const LatticeSymbolicSystem& sys, std::span<const Letter> state,
                                       std::uint64_t steps) {
  if (!sys.sft().contains_cyclic(state)) throw domain_error("system_step: state is not an allowed word");
  return shift_apply(state, steps);
}

/// Uniform random letters repaired into a cyclically allowed state.
template <typename Rng>
std::vector<Letter> random_allowed_state(const LatticeSymbolicSystem& sys, std::size_t length, Rng& rng) {
  std::vector<Letter> buf(length);
  for (auto& l : buf) l = static_cast<Letter>(rng() % 3);
  if (!repair_cyclic(sys.sft(), buf)) throw domain_error("random_allowed_state: repair failed");
  return buf;
}

struct BoundedDistanceReport {
  double max_distance = 0.0;
  std::size_t samples = 0;
};

/// Empirical max of |phi(x) - phi(T x)| over sampled allowed states of
/// length N. Deterministic in rng_seed.
inline BoundedDistanceReport check_bounded_distance(const LatticeSymbolicSystem& sys, std::size_t samples,
                                                    std::uint64_t rng_seed = 1) {
  if (samples == 0) throw domain_error("check_bounded_distance: samples must be >= 1");
  std::mt19937_64 rng(rng_seed);
  BoundedDistanceReport rep;
  for (std::size_t s = 0; s < samples; ++s) {
    auto x = random_allowed_state(sys, sys.params().n(), rng);
    auto tx = shift_apply(std::span<const Letter>(x), 1);
    rep.max_distance = std::max(rep.max_distance, euclidean(phi_ntru_at(x, sys), phi_ntru_at(tx, sys)));
  }
  rep.samples = samples;
  return rep;
}

/// Same statistic over an explicit set of states.
inline double max_step_distance(const LatticeSymbolicSystem& sys, std::span<const std::vector<Letter>> states) {
  double best = 0.0;
  for (const auto& x : states) {
    auto tx = shift_apply(std::span<const Letter>(x), 1);
    best = std::max(best, euclidean(phi_ntru_at(x, sys), phi_ntru_at(tx, sys)));
  }
  return best;
}

}  // namespace symdyn
