#pragma once

// Arithmetic in R_q = Z_q[X] / (X^N - 1).

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "symdyn/error.hpp"

namespace symdyn {

/// Deterministic primality test by trial division; q is small in practice.
constexpr bool is_prime(std::uint64_t q) {
  if (q < 2) return false;
  if (q % 2 == 0) return q == 2;
  for (std::uint64_t d = 3; d <= q / d; d += 2) {
    if (q % d == 0) return false;
  }
  return true;
}

/// Ring dimension N and prime modulus q.
class NtruParams {
 public:
  NtruParams(std::size_t n, std::uint32_t q) : n_(n), q_(q) {
    if (n_ == 0) throw domain_error("ntru params: N must be >= 1");
    if (!is_prime(q_)) throw domain_error("ntru params: q must be prime (got " + std::to_string(q_) + ")");
    if (q_ >= (std::uint32_t{1} << 31)) throw domain_error("ntru params: q must be below 2^31");
  }

  std::size_t n() const noexcept { return n_; }
  std::uint32_t q() const noexcept { return q_; }

  /// Bits kept per coefficient by extraction: floor(log2 q).
  unsigned bits_per_coefficient() const noexcept {
    unsigned b = 0;
    while ((std::uint64_t{1} << (b + 1)) <= q_) ++b;
    return b;
  }

  bool operator==(const NtruParams&) const = default;

 private:
  std::size_t n_;
  std::uint32_t q_;
};

/// Element of R_q with canonical coefficients in [0, q).
class RingElement {
 public:
  explicit RingElement(const NtruParams& params) : params_(params), coeffs_(params.n(), 0) {}

  /// Reduces arbitrary signed coefficients into [0, q). Size must be N.
  RingElement(const NtruParams& params, std::span<const std::int64_t> coeffs) : RingElement(params) {
    if (coeffs.size() != params.n()) throw domain_error("ring element: expected N coefficients");
    const auto q = static_cast<std::int64_t>(params.q());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      std::int64_t r = coeffs[i] % q;
      if (r < 0) r += q;
      coeffs_[i] = static_cast<std::uint32_t>(r);
    }
  }

  static RingElement one(const NtruParams& params) { return monomial(params, 0); }

  /// X^e with e taken mod N (negative exponents allowed).
  static RingElement monomial(const NtruParams& params, std::int64_t e, std::int64_t c = 1) {
    RingElement r(params);
    const auto n = static_cast<std::int64_t>(params.n());
    const auto q = static_cast<std::int64_t>(params.q());
    const std::int64_t idx = ((e % n) + n) % n;
    r.coeffs_[static_cast<std::size_t>(idx)] = static_cast<std::uint32_t>(((c % q) + q) % q);
    return r;
  }

  const NtruParams& params() const noexcept { return params_; }
  std::span<const std::uint32_t> coeffs() const noexcept { return coeffs_; }
  std::uint32_t operator[](std::size_t i) const { return coeffs_[i]; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  /// Representatives in (-q/2, q/2].
  std::vector<std::int64_t> centered() const {
    std::vector<std::int64_t> out(coeffs_.size());
    const auto q = static_cast<std::int64_t>(params_.q());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      const auto c = static_cast<std::int64_t>(coeffs_[i]);
      out[i] = 2 * c > q ? c - q : c;
    }
    return out;
  }

  bool is_zero() const {
    for (auto c : coeffs_) {
      if (c != 0) return false;
    }
    return true;
  }

  friend bool operator==(const RingElement& a, const RingElement& b) {
    return a.params_ == b.params_ && a.coeffs_ == b.coeffs_;
  }

 private:
  friend RingElement ring_add(const RingElement&, const RingElement&);
  friend RingElement ring_sub(const RingElement&, const RingElement&);
  friend RingElement ring_mul(const RingElement&, const RingElement&);

  NtruParams params_;
  std::vector<std::uint32_t> coeffs_;
};

inline void require_same_params(const RingElement& a, const RingElement& b) {
  if (!(a.params() == b.params())) throw domain_error("ring elements have different parameters");
}

inline RingElement ring_add(const RingElement& a, const RingElement& b) {
  require_same_params(a, b);
  RingElement r(a.params());
  const std::uint64_t q = a.params().q();
  for (std::size_t i = 0; i < r.coeffs_.size(); ++i) {
    r.coeffs_[i] = static_cast<std::uint32_t>((std::uint64_t{a.coeffs_[i]} + b.coeffs_[i]) % q);
  }
  return r;
}

inline RingElement ring_sub(const RingElement& a, const RingElement& b) {
  require_same_params(a, b);
  RingElement r(a.params());
  const std::uint64_t q = a.params().q();
  for (std::size_t i = 0; i < r.coeffs_.size(); ++i) {
    r.coeffs_[i] = static_cast<std::uint32_t>((std::uint64_t{a.coeffs_[i]} + q - b.coeffs_[i]) % q);
  }
  return r;
}

/// Cyclic convolution: (a*b)_j = sum_{i} a_i b_{(j-i) mod N}, reduced mod q.
/// Zero coefficients of a are skipped, which makes products with sparse
/// ternary elements cost O(weight * N).
inline RingElement ring_mul(const RingElement& a, const RingElement& b) {
  require_same_params(a, b);
  const std::size_t n = a.params().n();
  const std::uint64_t q = a.params().q();
  std::vector<std::uint64_t> acc(n, 0);
  // q < 2^31 so each product plus accumulator stays below 2^63.
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t ai = a.coeffs_[i];
    if (ai == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t t = i + j;
      if (t >= n) t -= n;
      acc[t] = (acc[t] + ai * b.coeffs_[j]) % q;
    }
  }
  RingElement r(a.params());
  for (std::size_t i = 0; i < n; ++i) r.coeffs_[i] = static_cast<std::uint32_t>(acc[i]);
  return r;
}

}  // namespace symdyn
