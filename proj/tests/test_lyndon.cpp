#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "symdyn/lyndon.hpp"

using namespace symdyn;

namespace {

Word word(const AlphabetRef& a, const std::string& s) { return Word::parse(a, s); }

std::vector<std::string> strs(const std::vector<Word>& ws) {
  std::vector<std::string> out;
  for (const auto& w : ws) out.push_back(w.str());
  return out;
}

}  // namespace

TEST(Mobius, SmallValues) {
  EXPECT_EQ(mobius(1), 1);
  EXPECT_EQ(mobius(4), 0);
  EXPECT_EQ(mobius(6), 1);
  EXPECT_THROW(mobius(0), domain_error);
}

TEST(Mobius, MatchesTrialDivisionOracle) {
  for (std::uint64_t d = 1; d <= 2000; ++d) ASSERT_EQ(mobius(d), oracle::mobius(d)) << d;
}

TEST(CountLyndon, SpotValues) {
  EXPECT_EQ(count_lyndon(1, 5), 5);
  EXPECT_EQ(count_lyndon(4, 2), 3);
  EXPECT_EQ(count_lyndon(6, 2), 9);
  EXPECT_THROW(count_lyndon(0, 2), domain_error);
  EXPECT_THROW(count_lyndon(3, 0), domain_error);
}

TEST(CountLyndon, MatchesExhaustiveEnumeration) {
  for (std::size_t n = 1; n <= 12; ++n) EXPECT_EQ(count_lyndon(n, 2), oracle::count_lyndon_exhaustive(n, 2)) << n;
  for (std::size_t n = 1; n <= 7; ++n) EXPECT_EQ(count_lyndon(n, 3), oracle::count_lyndon_exhaustive(n, 3)) << n;
}

TEST(CountLyndon, NecklaceIdentity) {
  for (std::uint64_t k = 1; k <= 4; ++k) {
    for (std::uint64_t n = 1; n <= 20; ++n) {
      BigInt sum = 0;
      for (std::uint64_t d = 1; d <= n; ++d) {
        if (n % d == 0) sum += count_lyndon(d, k) * d;
      }
      EXPECT_EQ(sum, boost::multiprecision::pow(BigInt(k), static_cast<unsigned>(n))) << n << "," << k;
    }
  }
}

TEST(CountLyndon, ExactBeyondSixtyFourBits) {
  // L(128, 2) = (2^128 - 2^64) / 128.
  BigInt expect = (boost::multiprecision::pow(BigInt(2), 128) - boost::multiprecision::pow(BigInt(2), 64)) / 128;
  EXPECT_EQ(count_lyndon(128, 2), expect);
}

TEST(IsLyndon, Examples) {
  auto a = make_alphabet({"a", "b", "n"});
  EXPECT_TRUE(is_lyndon(word(a, "aab")));
  EXPECT_FALSE(is_lyndon(word(a, "anan")));
  EXPECT_TRUE(is_lyndon(word(a, "a")));
  EXPECT_FALSE(is_lyndon(word(a, "ba")));
  EXPECT_THROW(is_lyndon(Word(a)), domain_error);
}

TEST(IsLyndon, AgreesWithRotationDefinition) {
  for (std::size_t k = 2; k <= 3; ++k) {
    for (std::size_t n = 1; n <= 8; ++n) {
      for (std::uint64_t c = 0; c < oracle::power(k, n); ++c) {
        auto w = oracle::decode(c, n, k);
        ASSERT_EQ(is_lyndon(std::span<const Letter>(w)), oracle::is_lyndon(w));
      }
    }
  }
}

TEST(Duval, Examples) {
  auto a = make_alphabet({"a", "b", "n"});
  auto f = duval_factorize(word(a, "banana"));
  EXPECT_EQ(strs(f.factors), (std::vector<std::string>{"b", "an", "an", "a"}));
  EXPECT_EQ(strs(duval_factorize(word(a, "ab")).factors), (std::vector<std::string>{"ab"}));
  EXPECT_EQ(strs(duval_factorize(word(a, "aaaa")).factors), (std::vector<std::string>{"a", "a", "a", "a"}));
  EXPECT_THROW(duval_factorize(Word(a)), domain_error);
}

TEST(Duval, UniqueAgainstExhaustiveSplits) {
  // Every word up to length 8 over 3 letters has exactly one nonincreasing
  // Lyndon split, and Duval finds it.
  for (std::size_t n = 1; n <= 8; ++n) {
    for (std::uint64_t c = 0; c < oracle::power(3, n); ++c) {
      auto w = oracle::decode(c, n, 3);
      std::vector<std::vector<oracle::Letters>> splits;
      std::vector<oracle::Letters> cur;
      oracle::all_cfl_splits(w, 0, cur, splits);
      ASSERT_EQ(splits.size(), 1u);
      std::vector<oracle::Letters> mine;
      for (auto fct : duval(std::span<const Letter>(w))) {
        mine.emplace_back(w.begin() + static_cast<std::ptrdiff_t>(fct.start),
                          w.begin() + static_cast<std::ptrdiff_t>(fct.start + fct.length));
      }
      ASSERT_EQ(mine, splits.front());
    }
  }
}

TEST(Duval, RandomWordsSatisfyInvariants) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 2000; ++t) {
    const std::size_t k = 2 + rng() % 3;
    const std::size_t len = 1 + rng() % 200;
    oracle::Letters w(len);
    for (auto& l : w) l = static_cast<std::uint32_t>(rng() % k);
    auto alphabet = make_alphabet(k);
    auto f = duval_factorize(Word(alphabet, w));
    std::vector<oracle::Letters> parts;
    for (const auto& x : f.factors) parts.push_back(x.vec());
    ASSERT_TRUE(oracle::is_valid_cfl(w, parts));
    ASSERT_EQ(f.factors.size() == 1, is_lyndon(Word(alphabet, w)));
  }
}

TEST(LyndonDividing, Examples) {
  EXPECT_EQ(strs(lyndon_words_dividing(2, make_alphabet(2))), (std::vector<std::string>{"0", "01", "1"}));
  EXPECT_EQ(strs(lyndon_words_dividing(3, make_alphabet(2))), (std::vector<std::string>{"0", "001", "011", "1"}));
  EXPECT_EQ(strs(lyndon_words_dividing(1, make_alphabet({"a"}))), (std::vector<std::string>{"a"}));
}

TEST(LyndonDividing, MatchesExhaustiveFilter) {
  for (std::size_t k = 1; k <= 4; ++k) {
    for (std::size_t n = 1; n <= 8 && oracle::power(k, n) <= 5000; ++n) {
      std::vector<oracle::Letters> mine;
      for (const auto& w : lyndon_words_dividing(n, make_alphabet(k))) mine.push_back(w.vec());
      EXPECT_EQ(mine, oracle::lyndon_dividing_exhaustive(n, k)) << n << "," << k;
    }
  }
}

TEST(LyndonDividing, BudgetExceeded) {
  EXPECT_THROW(lyndon_words_dividing(21, make_alphabet(2)), resource_error);
  EXPECT_NO_THROW(lyndon_words_dividing(21, make_alphabet(2), Budget{std::uint64_t{1} << 22}));
}

TEST(DeBruijn, GoldenValues) {
  auto bin = make_alphabet(2);
  EXPECT_EQ(de_bruijn_sequence(2, bin).str(), "0011");
  EXPECT_EQ(de_bruijn_sequence(3, bin).str(), "00010111");
  EXPECT_EQ(de_bruijn_sequence(1, bin).str(), "01");
  EXPECT_EQ(de_bruijn_sequence(1, make_alphabet(3)).str(), "012");
  EXPECT_THROW(de_bruijn_sequence(30, bin), resource_error);
}

TEST(DeBruijn, EveryWindowExactlyOnce) {
  for (std::size_t k = 1; k <= 6; ++k) {
    for (std::size_t n = 1; oracle::power(k, n) <= 4096 && n <= 12; ++n) {
      auto seq = de_bruijn_letters(n, k);
      ASSERT_EQ(seq.size(), oracle::power(k, n));
      std::multiset<oracle::Letters> windows;
      for (std::size_t i = 0; i < seq.size(); ++i) {
        oracle::Letters w;
        for (std::size_t j = 0; j < n; ++j) w.push_back(seq[(i + j) % seq.size()]);
        windows.insert(w);
      }
      std::multiset<oracle::Letters> all;
      for (std::uint64_t c = 0; c < oracle::power(k, n); ++c) all.insert(oracle::decode(c, n, k));
      ASSERT_EQ(windows, all) << k << "," << n;
      ASSERT_TRUE(check_de_bruijn(seq, n, k));
    }
  }
}

TEST(DeBruijn, CheckerRejectsBrokenSequences) {
  auto seq = de_bruijn_letters(4, 2);
  ASSERT_NE(seq[3], seq[4]);
  std::swap(seq[3], seq[4]);
  EXPECT_FALSE(check_de_bruijn(seq, 4, 2));
  seq.pop_back();
  EXPECT_FALSE(check_de_bruijn(seq, 4, 2));
}

TEST(DeBruijnGraph, Counts) {
  auto g2 = de_bruijn_graph(2, make_alphabet(2));
  EXPECT_EQ(g2.vertex_count, 2u);
  EXPECT_EQ(g2.edges.size(), 4u);
  EXPECT_EQ(g2.vertex(0).str(), "0");
  EXPECT_EQ(g2.vertex(1).str(), "1");
  auto g3 = de_bruijn_graph(3, make_alphabet(2));
  EXPECT_EQ(g3.vertex_count, 4u);
  EXPECT_EQ(g3.edges.size(), 8u);
  auto abc = de_bruijn_graph(2, make_alphabet({"a", "b", "c"}));
  EXPECT_EQ(abc.vertex_count, 3u);
  EXPECT_EQ(abc.edges.size(), 9u);
  EXPECT_THROW(de_bruijn_graph(1, make_alphabet(2)), domain_error);
}

TEST(DeBruijnGraph, EdgesOverlapBySuffixPrefix) {
  auto g = de_bruijn_graph(4, make_alphabet(3));
  for (const auto& e : g.edges) {
    auto u = g.vertex(e.source).vec();
    auto v = g.vertex(e.target).vec();
    ASSERT_TRUE(std::equal(u.begin() + 1, u.end(), v.begin()));
    ASSERT_EQ(v.back(), e.symbol);
  }
}

TEST(DeBruijnGraph, SequenceIsEulerianCircuit) {
  for (std::size_t k = 2; k <= 4; ++k) {
    for (std::size_t n = 2; oracle::power(k, n) <= 1024; ++n) {
      auto g = de_bruijn_graph(n, make_alphabet(k));
      auto seq = de_bruijn_letters(n, k);
      std::set<std::tuple<std::uint64_t, std::uint64_t, Letter>> remaining;
      for (const auto& e : g.edges) remaining.insert({e.source, e.target, e.symbol});
      const std::uint64_t vcount = g.vertex_count;
      for (std::size_t i = 0; i < seq.size(); ++i) {
        std::uint64_t u = 0;
        for (std::size_t j = 0; j < n - 1; ++j) u = u * k + seq[(i + j) % seq.size()];
        const Letter a = seq[(i + n - 1) % seq.size()];
        const std::uint64_t v = (u * k + a) % vcount;
        ASSERT_EQ(remaining.erase({u, v, a}), 1u) << "edge walked twice";
      }
      ASSERT_TRUE(remaining.empty());
    }
  }
}
