// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "symdyn/symdyn.hpp"

using namespace symdyn;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

struct Criterion {
  int id;
  std::string name;
  double time_limit_s;  // <= 0 means none
  std::function<Outcome()> run;
};

double log2_exact(std::uint64_t k) { return std::log2(static_cast<double>(k)); }

// Each n-word of the cyclic sequence appears exactly once; checked with a
// rolling base-k code, independent of the library's checker.
bool each_window_once(const std::vector<Letter>& seq, std::size_t n, std::size_t k) {
  const std::uint64_t total = oracle::power(k, n);
  if (seq.size() != total) return false;
  std::vector<bool> seen(total, false);
  const std::uint64_t top = total / k;
  std::uint64_t code = 0;
  for (std::size_t j = 0; j < n; ++j) code = code * k + seq[j % seq.size()];
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seen[code]) return false;
    seen[code] = true;
    code = (code % top) * k + seq[(i + n) % seq.size()];
  }
  return true;
}

Outcome lyndon_counting() {
  Outcome o;
  try {
    for (std::size_t n = 1; n <= 16; ++n) {
      o.require(count_lyndon(n, 2) == oracle::count_lyndon_exhaustive(n, 2), "mismatch at n=" + std::to_string(n));
    }
    o.require(count_lyndon(4, 2) == 3, "L(4,2) != 3");
    o.require(count_lyndon(6, 2) == 9, "L(6,2) != 9");
    for (std::uint64_t k = 1; k <= 8; ++k) {
      for (std::uint64_t n = 1; n <= 64; ++n) (void)count_lyndon(n, k);
    }
  } catch (const std::logic_error& e) {
    o.require(false, std::string("divisibility assertion fired: ") + e.what());
  }
  return o;
}

Outcome factorization() {
  Outcome o;
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 10000 && o.ok; ++t) {
    const std::size_t k = 1 + rng() % 4;
    const std::size_t len = 1 + rng() % 200;
    oracle::Letters w(len);
    for (auto& l : w) l = static_cast<std::uint32_t>(rng() % k);
    std::vector<oracle::Letters> parts;
    for (auto f : duval(std::span<const Letter>(w))) {
      parts.emplace_back(w.begin() + static_cast<std::ptrdiff_t>(f.start),
                         w.begin() + static_cast<std::ptrdiff_t>(f.start + f.length));
    }
    o.require(oracle::is_valid_cfl(w, parts), "invalid factorization at trial " + std::to_string(t));
  }
  return o;
}

Outcome de_bruijn() {
  Outcome o;
  std::size_t pairs = 0;
  for (std::size_t n = 1; n <= 16; ++n) {
    for (std::size_t k = 1;; ++k) {
      const auto total = checked_power(k, n, 65536);
      if (!total) break;
      const auto seq = de_bruijn_letters(n, k, Budget{65536});
      o.require(each_window_once(seq, n, k), "k=" + std::to_string(k) + " n=" + std::to_string(n));
      ++pairs;
    }
  }
  o.require(de_bruijn_sequence(2, make_alphabet(2)).str() == "0011", "B(2,2) != 0011");
  o.require(de_bruijn_sequence(3, make_alphabet(2)).str() == "00010111", "B(2,3) != 00010111");
  if (o.ok) o.detail = std::to_string(pairs) + " (k,n) pairs";
  return o;
}

Outcome entropy() {
  Outcome o;
  for (std::size_t k : {2, 3, 4}) {
    const double h = entropy_transfer_matrix(ShiftOfFiniteType::full(k)).value;
    o.require(std::abs(h - log2_exact(k)) <= 4 * std::numeric_limits<double>::epsilon(),
              "full shift k=" + std::to_string(k));
  }
  auto a = make_alphabet(2);
  ShiftOfFiniteType gm(a, {Word::parse(a, "11")});
  const double golden = std::log2((1.0 + std::sqrt(5.0)) / 2.0);
  const double tm = entropy_transfer_matrix(gm).value;
  o.require(std::abs(tm - 0.694242) <= 1e-6 && std::abs(tm - golden) <= 1e-9, "golden mean transfer matrix");
  const double fs = entropy_finite_slope(gm, 24).value;
  o.require(std::abs(fs - 0.694242) <= 0.05, "golden mean finite slope");
  if (o.ok) o.detail = "tm=" + std::to_string(tm) + " fs=" + std::to_string(fs);
  return o;
}

Outcome synchronization() {
  Outcome o;
  for (std::size_t n = 2; n <= 5; ++n) {
    const auto c = cerny_automaton(n);
    const auto w = shortest_sync_word(c);
    std::vector<std::uint32_t> table;
    for (State q = 0; q < n; ++q) {
      for (Letter l = 0; l < 2; ++l) table.push_back(c.next(q, l));
    }
    const int brute = oracle::shortest_reset_length_bruteforce(n, 2, table, 16);
    o.require(w && w->size() == (n - 1) * (n - 1) && brute == static_cast<int>(w->size()),
              "Cerny n=" + std::to_string(n));
  }
  std::mt19937_64 rng(77);
  int found = 0;
  while (found < 200 && o.ok) {
    const std::size_t n = 2 + rng() % 7;
    const std::size_t k = 2 + rng() % 2;
    std::vector<State> t(n * k);
    for (auto& x : t) x = static_cast<State>(rng() % n);
    Dfa d(n, make_alphabet(k), t);
    if (!is_synchronizing(d)) continue;
    ++found;
    const auto w = shortest_sync_word(d);
    o.require(w && is_synchronizing_word(d, *w) && w->size() <= (n - 1) * (n - 1), "random DFA bound");
  }
  return o;
}

Outcome codes() {
  Outcome o;
  for (std::size_t d = 1; d <= 9; ++d) {
    const auto c = error_capability(d);
    o.require(c.detect == d - 1 && c.correct == (d - 1) / 2, "d=" + std::to_string(d));
  }
  const std::string a = "kitten", b = "sitting";
  o.require(edit_distance(std::span<const char>(a), std::span<const char>(b)) == 3, "kitten/sitting");
  o.require(oracle::edit_distance_bfs(a, b) == 3, "kitten/sitting oracle");
  return o;
}

Outcome metric_suite() {
  Outcome o;
  LatticeConfig cfg;
  cfg.n = 32;
  cfg.q = 257;
  cfg.window = 6;
  const auto sys = build_system(cfg);
  const auto& psi = sys.embedding();
  const std::size_t p = 6;
  std::mt19937_64 rng(7);
  auto trits = [&](std::size_t len) {
    std::vector<Letter> v(len);
    for (auto& l : v) l = static_cast<Letter>(rng() % 3);
    return v;
  };
  for (int t = 0; t < 1000; ++t) {
    auto x = trits(2 * p + 1), y = trits(2 * p + 1), z = trits(2 * p + 1);
    if (t % 5 == 0) y = x;
    const double xy = d_sl(x, y, p, psi).value;
    const double yz = d_sl(y, z, p, psi).value;
    const double xz = d_sl(x, z, p, psi).value;
    o.require(xy >= 0 && yz >= 0 && xz >= 0, "non-negativity");
    o.require((xy == 0) == (x == y), "identity of indiscernibles");
    o.require(xy == d_sl(y, x, p, psi).value, "symmetry");
    o.require(xy + yz - xz >= -1e-12, "triangle inequality");
  }
  int unclamped = 0;
  for (int t = 0; t < 1000; ++t) {
    auto x = trits(2 * p + 1);
    auto y = x;
    for (auto& l : y) {
      if (rng() % 3 == 0) l = static_cast<Letter>(rng() % 3);
    }
    bool clamped = false;
    for (std::size_t i = 0; i < x.size(); ++i) clamped = clamped || psi.distance(x[i], y[i]) > 1.0;
    if (clamped) continue;
    ++unclamped;
    const auto d = d_sl(x, y, p, psi);
    const double dl = euclidean(phi_weighted(centered_window(x, p), sys), phi_weighted(centered_window(y, p), sys));
    o.require(dl <= 2.0 * d.value + d.tail_bound, "Lipschitz bound");
  }
  if (o.ok) o.detail = std::to_string(unclamped) + " unclamped pairs";
  return o;
}

Outcome ring_arithmetic() {
  Outcome o;
  for (auto [n, q] : std::vector<std::pair<std::size_t, std::uint32_t>>{{8, 17}, {16, 257}, {64, 4099}}) {
    NtruParams params(n, q);
    std::mt19937_64 rng(n + q);
    for (int t = 0; t < 10000 && o.ok; ++t) {
      std::vector<std::int64_t> a(n), b(n);
      for (auto& c : a) c = static_cast<std::int64_t>(rng() % q);
      for (auto& c : b) c = static_cast<std::int64_t>(rng() % q);
      const auto prod = ring_mul(RingElement(params, a), RingElement(params, b));
      std::vector<std::uint32_t> ua(a.begin(), a.end()), ub(b.begin(), b.end());
      o.require(std::vector<std::uint32_t>(prod.coeffs().begin(), prod.coeffs().end()) ==
                    oracle::cyclic_mul_schoolbook(ua, ub, q),
                "N=" + std::to_string(n));
    }
  }
  return o;
}

Outcome parameter_validation() {
  Outcome o;
  const auto ok = validate_parameters(512, 4099, 0.5, 128);
  const auto small = validate_parameters(256, 4099, 0.5, 128);
  const auto wide = validate_parameters(512, 1048583, 0.5, 128);  // prime, log2 q ~ 20
  o.require(ok.accepted, "(512, 4099) rejected");
  o.require(!small.accepted && small.failures() == std::vector<std::string>{"dimension"}, "(256, 4099) verdict");
  o.require(!wide.accepted && wide.failures() == std::vector<std::string>{"delta"} && std::abs(wide.delta - 0.4) < 1e-5,
            "log2 q = 20 verdict");
  o.require(ok.asymptotic_bits == 64.0 && ok.calibrated_bits == 128.0, "reported bit estimates");
  if (o.ok) {
    o.detail = "verdict=accept calibrated_bits=" + std::to_string(ok.calibrated_bits) +
               " alpha*N/4=" + std::to_string(ok.asymptotic_bits);
  }
  return o;
}

Outcome prg_prf() {
  Outcome o;
  const auto sys = std::make_shared<const LatticeSymbolicSystem>(build_system(LatticeConfig{}));
  const auto seed = seed_bits_from_u64(0xDEADBEEF);
  PrgState a(sys, seed), b(sys, seed), c(sys, seed);
  const Bits whole = a.next(20000);
  Bits chunks;
  std::mt19937_64 rng(3);
  while (chunks.size() < whole.size()) {
    const auto part = b.next(std::min<std::size_t>(1 + rng() % 997, whole.size() - chunks.size()));
    chunks.insert(chunks.end(), part.begin(), part.end());
  }
  o.require(whole == chunks, "chunk invariance");
  o.require(c.next(20000) == whole, "determinism");

  const auto tests = default_tests();
  const auto rep = distinguisher_harness(prg_generator(sys), tests, 100, 1u << 15);
  std::string fractions;
  for (const auto& t : rep.tests) {
    o.require(t.consistent, t.name + " pass count " + std::to_string(t.passes) + " outside [" +
                                std::to_string(t.band_low) + ", " + std::to_string(t.band_high) + "]");
    fractions += " " + t.name + "=" + std::to_string(t.passes) + "/" + std::to_string(t.trials);
  }

  LatticeConfig degenerate;
  degenerate.alpha = 0.0;
  degenerate.forbid = {"-1", "1"};
  const auto dsys = std::make_shared<const LatticeSymbolicSystem>(build_system(degenerate));
  o.require(!distinguisher_harness(constant_generator(), tests, 30, 1u << 15).all_consistent(), "constant fixture");
  o.require(!distinguisher_harness(counter_generator(), tests, 30, 1u << 15).all_consistent(), "counter fixture");
  o.require(!distinguisher_harness(prg_generator(dsys), tests, 30, 1u << 15).all_consistent(), "degenerate fixture");

  PrfKey key(sys, parse_hex("5eed5eed5eed5eed5eed5eed5eed5eed"));
  const std::size_t m = 256;
  double flipped = 0;
  for (int t = 0; t < 1000; ++t) {
    Bits x(128);
    for (auto& v : x) v = static_cast<std::uint8_t>(rng() & 1);
    Bits y = x;
    y[rng() % x.size()] ^= 1;
    const auto fx = prf_eval(key, x, m), fy = prf_eval(key, y, m);
    for (std::size_t i = 0; i < m; ++i) flipped += fx[i] != fy[i];
  }
  const double mean = flipped / 1000.0;
  o.require(mean >= 0.4 * m && mean <= 0.6 * m, "avalanche mean " + std::to_string(mean));
  if (o.ok) o.detail = fractions.substr(1) + " avalanche=" + std::to_string(mean / m);
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "lyndon-counting", 10, lyndon_counting},
      {2, "factorization", 5, factorization},
      {3, "de-bruijn", 0, de_bruijn},
      {4, "entropy", 2, entropy},
      {5, "synchronization", 30, synchronization},
      {6, "codes", 0, codes},
      {7, "metric-suite", 5, metric_suite},
      {8, "ring-arithmetic", 10, ring_arithmetic},
      {9, "parameter-validation", 0, parameter_validation},
      {10, "prg-prf", 60, prg_prf},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0 && secs > c.time_limit_s) {
      o.ok = false;
      o.detail = "over time limit " + std::to_string(c.time_limit_s) + " s";
    }
    failures += o.ok ? 0 : 1;
    std::printf("%s %2d %-21s %8.3f s  %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name.c_str(), secs, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
