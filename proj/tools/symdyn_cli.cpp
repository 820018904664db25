// symdyn: command-line front end.
//
// Output is one "key=value" line per field, or a single JSON object with
// --json. Elapsed time goes to stderr so payloads stay byte-identical.
// Exit status: 0 ok, 1 rejected/failed verdict, 2 usage, 3 resource, 4 parse.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "symdyn/symdyn.hpp"

using namespace symdyn;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kRejected = 1, kUsage = 2, kResource = 3, kParse = 4 };

std::string fixed(double v, int digits = 9) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

/// Ordered list of fields rendered as key=value lines or one JSON object.
class Result {
 public:
  void add(const std::string& key, json value) { fields_.push_back({key, std::move(value), {}}); }
  void add_real(const std::string& key, double v, int digits = 9) {
    const auto text = fixed(v, digits);
    fields_.push_back({key, json::parse(text), text});
  }

  void print(bool as_json) const {
    if (as_json) {
      json doc = json::object();
      for (const auto& f : fields_) doc[f.key] = f.value;
      std::cout << doc.dump() << '\n';
      return;
    }
    for (const auto& f : fields_) {
      if (f.value.is_array()) {
        for (const auto& item : f.value) std::cout << f.key << '=' << scalar(item) << '\n';
      } else {
        std::cout << f.key << '=' << (f.text.empty() ? scalar(f.value) : f.text) << '\n';
      }
    }
  }

 private:
  static std::string scalar(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_object()) return v.dump();
    return v.dump();
  }

  struct Field {
    std::string key;
    json value;
    std::string text;
  };
  std::vector<Field> fields_;
};

struct Common {
  bool as_json = false;
  std::string config;
};

LatticeConfig lattice_config(const Common& c) {
  std::string path = c.config;
  if (path.empty()) {
    if (const char* env = std::getenv("SYMDYN_CONFIG")) path = env;
  }
  return path.empty() ? LatticeConfig{} : load_lattice_config(path);
}

void echo_config(Result& r, const LatticeConfig& cfg) {
  json forbid = json::array();
  for (const auto& [k, v] : cfg.echo()) {
    if (k == "forbid") {
      forbid.push_back(v);
    } else {
      r.add("param." + k, v);
    }
  }
  if (!forbid.empty()) r.add("param.forbid", forbid);
}

/// Alphabet of the distinct characters of the given strings, sorted.
AlphabetRef chars_alphabet(std::initializer_list<std::string> words) {
  std::set<char> cs;
  for (const auto& w : words) {
    for (char c : w) {
      if (c != ' ') cs.insert(c);
    }
  }
  std::vector<std::string> syms;
  for (char c : cs) syms.emplace_back(1, c);
  if (syms.empty()) syms.emplace_back("0");
  return make_alphabet(std::move(syms));
}

AlphabetRef alphabet_option(const std::string& spec, std::size_t k) {
  if (spec.empty()) return make_alphabet(k);
  std::vector<std::string> syms;
  std::istringstream in(spec);
  for (std::string s; in >> s;) syms.push_back(s);
  return make_alphabet(std::move(syms));
}

std::string bits_string(const Bits& bits) {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) s += static_cast<char>('0' + b);
  return s;
}

/// ASCII lines of at most 64 bits, or raw MSB-first bytes.
void write_bits(const Bits& bits, const std::string& format, Result& r, bool as_json) {
  if (format == "raw") {
    const auto bytes = bits_to_bytes(bits);
    std::fwrite(bytes.data(), 1, bytes.size(), stdout);
    std::fflush(stdout);
    return;
  }
  json lines = json::array();
  for (std::size_t i = 0; i < bits.size(); i += 64) {
    lines.push_back(bits_string(Bits(bits.begin() + static_cast<std::ptrdiff_t>(i),
                                     bits.begin() + static_cast<std::ptrdiff_t>(std::min(bits.size(), i + 64)))));
  }
  r.add("bits", lines);
  r.print(as_json);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symbolic dynamics, combinatorics on words and NTRU lattice-symbolic generators"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_flag("--json", common.as_json, "Print one JSON object instead of key=value lines");
  app.add_option("--config", common.config, "Lattice config file (default: $SYMDYN_CONFIG, then built-in)");

  Result out;
  int status = kOk;
  bool printed = false;

  // lyndon
  auto* lyndon = app.add_subcommand("lyndon", "Lyndon words");
  lyndon->require_subcommand(1);
  std::uint64_t ln = 0, lk = 0;
  std::string lalpha, lword;
  auto* lcount = lyndon->add_subcommand("count", "Number of Lyndon words of length n over k letters");
  lcount->add_option("-n", ln, "Length")->required();
  lcount->add_option("-k", lk, "Alphabet size")->required();
  lcount->callback([&] {
    out.add("command", "lyndon count");
    out.add("param.n", ln);
    out.add("param.k", lk);
    out.add("count", count_lyndon(ln, lk).str());
  });
  auto* llist = lyndon->add_subcommand("list", "Lyndon words of length dividing n, sorted");
  llist->add_option("-n", ln, "Length")->required();
  llist->add_option("-k", lk, "Alphabet size (ignored with --alphabet)");
  llist->add_option("--alphabet", lalpha, "Space-separated symbols in order");
  llist->callback([&] {
    if (lalpha.empty() && lk == 0) throw CLI::ValidationError("-k", "either -k or --alphabet is required");
    auto a = alphabet_option(lalpha, lk);
    auto words = lyndon_words_dividing(ln, a);
    json list = json::array();
    for (const auto& w : words) list.push_back(w.str());
    out.add("command", "lyndon list");
    out.add("param.n", ln);
    out.add("param.k", a->size());
    out.add("count", words.size());
    out.add("word", list);
  });
  auto* lfact = lyndon->add_subcommand("factorize", "Chen-Fox-Lyndon factorization (Duval)");
  lfact->add_option("word", lword, "Word")->required();
  lfact->add_option("--alphabet", lalpha, "Space-separated symbols in order (default: sorted characters)");
  lfact->callback([&] {
    auto a = lalpha.empty() ? chars_alphabet({lword}) : alphabet_option(lalpha, 0);
    auto f = duval_factorize(Word::parse(a, lword));
    json parts = json::array();
    std::string joined;
    for (const auto& w : f.factors) {
      parts.push_back(w.str());
      joined += (joined.empty() ? "" : " ") + w.str();
    }
    out.add("command", "lyndon factorize");
    out.add("param.word", lword);
    out.add("factors", joined);
    out.add("count", parts.size());
  });

  // debruijn
  std::uint64_t dn = 0, dk = 0, dbudget = Budget{}.max_items;
  std::string dalpha;
  auto* debruijn = app.add_subcommand("debruijn", "de Bruijn sequence B(k, n) by Lyndon concatenation");
  debruijn->add_option("-n", dn, "Window length")->required();
  debruijn->add_option("-k", dk, "Alphabet size (ignored with --alphabet)");
  debruijn->add_option("--alphabet", dalpha, "Space-separated symbols in order");
  debruijn->add_option("--budget", dbudget, "Largest k^n to materialize");
  debruijn->callback([&] {
    if (dalpha.empty() && dk == 0) throw CLI::ValidationError("-k", "either -k or --alphabet is required");
    auto a = alphabet_option(dalpha, dk);
    auto seq = de_bruijn_sequence(dn, a, Budget{dbudget});
    out.add("command", "debruijn");
    out.add("param.n", dn);
    out.add("param.k", a->size());
    out.add("length", seq.size());
    out.add("sequence", seq.str());
    out.add("check", check_de_bruijn(seq.letters(), dn, a->size()) ? "exactly-once" : "FAILED");
  });

  // entropy
  std::string efile, emethod = "transfer-matrix";
  std::size_t enmax = 24;
  auto* entropy = app.add_subcommand("entropy", "Topological entropy of a shift of finite type");
  entropy->add_option("file", efile, "SFT file")->required();
  entropy->add_option("--method", emethod, "transfer-matrix or finite-slope")
      ->check(CLI::IsMember({"transfer-matrix", "finite-slope"}));
  entropy->add_option("--n-max", enmax, "Word length for the finite-slope estimate");
  entropy->callback([&] {
    auto sft = load_sft(efile);
    auto est = emethod == "finite-slope" ? entropy_finite_slope(sft, enmax) : entropy_transfer_matrix(sft);
    out.add("command", "entropy");
    out.add("param.file", efile);
    out.add("param.method", emethod);
    if (emethod == "finite-slope") out.add("param.n_max", enmax);
    out.add_real("entropy", est.value);
    out.add("method", to_string(est.method));
    out.add("n_used", est.n_used);
    if (est.error_bound) {
      out.add("error_bound", json::parse([&] {
                char b[32];
                std::snprintf(b, sizeof b, "%.3e", *est.error_bound);
                return std::string(b);
              }()));
    } else {
      out.add("error_bound", "none");
    }
    out.add("empty_language", est.empty_language);
  });

  // sync
  std::string sfile;
  std::size_t smax = 14;
  auto* sync = app.add_subcommand("sync", "Shortest synchronizing word of a DFA");
  sync->add_option("file", sfile, "DFA file")->required();
  sync->add_option("--max-states", smax, "Largest automaton searched exhaustively");
  sync->callback([&] {
    auto dfa = load_dfa(sfile);
    const std::size_t n = dfa.state_count();
    const std::size_t bound = (n - 1) * (n - 1);
    auto w = shortest_sync_word(dfa, smax);
    out.add("command", "sync");
    out.add("param.file", sfile);
    out.add("states", n);
    out.add("cerny_bound", bound);
    if (w) {
      out.add("word", w->str());
      out.add("length", w->size());
      out.add("within_bound", w->size() <= bound);
      out.add("tight", w->size() == bound);
    } else {
      out.add("word", "none");
    }
  });

  // distance
  std::string du, dv;
  auto* distance = app.add_subcommand("distance", "Edit (Levenshtein) distance between two words");
  distance->add_option("u", du, "First word")->required();
  distance->add_option("v", dv, "Second word")->required();
  distance->callback([&] {
    auto a = chars_alphabet({du, dv});
    out.add("command", "distance");
    out.add("param.u", du);
    out.add("param.v", dv);
    out.add("distance", edit_distance(Word::parse(a, du), Word::parse(a, dv)));
  });

  // code
  std::string cfile;
  auto* code = app.add_subcommand("code", "Minimum distance and error capability of a block code");
  code->add_option("file", cfile, "Code file")->required();
  code->callback([&] {
    auto c = load_code(cfile);
    const auto d = min_distance(c);
    const auto cap = error_capability(d);
    out.add("command", "code");
    out.add("param.file", cfile);
    out.add("codewords", c.codewords().size());
    out.add("length", c.length());
    out.add("d", d);
    out.add("detect", cap.detect);
    out.add("correct", cap.correct);
  });

  // prg
  std::string pseed, pformat = "ascii";
  std::size_t pbits = 256;
  std::optional<std::uint64_t> pstride;
  auto* prg = app.add_subcommand("prg", "Lattice-symbolic pseudorandom generator");
  prg->add_option("--seed", pseed, "Seed as hex, at least 2 bytes")->required();
  prg->add_option("--bits", pbits, "Number of output bits")->check(CLI::PositiveNumber);
  prg->add_option("--stride", pstride, "Shift steps per evaluation (overrides config)");
  prg->add_option("--format", pformat, "ascii or raw")->check(CLI::IsMember({"ascii", "raw"}));
  prg->callback([&] {
    auto cfg = lattice_config(common);
    if (pstride) cfg.stride = *pstride;
    auto sys = std::make_shared<const LatticeSymbolicSystem>(build_system(cfg));
    PrgState st(sys, bytes_to_bits(parse_hex(pseed)), cfg.stride);
    const Bits bits = st.next(pbits);
    out.add("command", "prg");
    echo_config(out, cfg);
    out.add("param.seed", pseed);
    out.add("param.bits", pbits);
    if (pformat == "raw") {
      Result header = out;
      out = Result{};
      std::cout.flush();
      std::streambuf* old = std::cout.rdbuf(std::cerr.rdbuf());
      header.print(common.as_json);
      std::cout.rdbuf(old);
    }
    write_bits(bits, pformat, out, common.as_json);
    printed = true;
  });

  // prf
  std::string fkey, finput;
  std::size_t fm = 128;
  std::optional<std::uint64_t> fnmin;
  auto* prf = app.add_subcommand("prf", "Lattice-symbolic pseudorandom function");
  prf->add_option("--key", fkey, "Key as hex")->required();
  prf->add_option("--input", finput, "Input as hex")->required();
  prf->add_option("-m", fm, "Output bits")->check(CLI::PositiveNumber);
  prf->add_option("--n-min", fnmin, "Smallest step count (default N)");
  prf->callback([&] {
    auto cfg = lattice_config(common);
    auto sys = std::make_shared<const LatticeSymbolicSystem>(build_system(cfg));
    PrfKey key(sys, parse_hex(fkey), fnmin);
    const Bits x = bytes_to_bits(parse_hex(finput));
    out.add("command", "prf");
    echo_config(out, cfg);
    out.add("param.key", fkey);
    out.add("param.input", finput);
    out.add("param.m", fm);
    out.add("steps", key.step_count(x));
    write_bits(prf_eval(key, x, fm), "ascii", out, common.as_json);
    printed = true;
  });

  // validate
  std::uint64_t vn = 0, vq = 0, vbits = 128;
  double valpha = 0.5;
  ValidationPolicy policy;
  auto* validate = app.add_subcommand("validate", "Check (N, q, alpha) against the parameter rules");
  validate->add_option("-N", vn, "Ring dimension")->required();
  validate->add_option("-q", vq, "Modulus")->required();
  validate->add_option("-a,--alpha", valpha, "Entropy of the shift")->required();
  validate->add_option("-b,--bits", vbits, "Target security bits");
  validate->add_option("-C", policy.c, "Constant in the delta bound");
  validate->add_option("--entropy-floor", policy.entropy_floor, "Smallest accepted alpha");
  validate->callback([&] {
    const auto rep = validate_parameters(vn, vq, valpha, vbits, policy);
    out.add("command", "validate");
    out.add("param.N", vn);
    out.add("param.q", vq);
    out.add_real("param.alpha", valpha, 6);
    out.add("param.bits", vbits);
    out.add_real("param.C", policy.c, 6);
    out.add("verdict", rep.accepted ? "accept" : "reject");
    for (const auto& c : rep.checks) out.add("check." + c.name, std::string(c.passed ? "pass" : "fail") + " " + c.detail);
    out.add_real("required_N", rep.required_n, 3);
    out.add_real("calibrated_bits", rep.calibrated_bits, 3);
    out.add_real("asymptotic_bits", rep.asymptotic_bits, 3);
    out.add_real("delta", rep.delta, 6);
    if (!rep.accepted) {
      std::string f;
      for (const auto& n : rep.failures()) f += (f.empty() ? "" : " ") + n;
      out.add("failed", f);
      status = kRejected;
    }
  });

  // test
  std::string tgen = "prg";
  std::size_t ttrials = 100, tbits = 1u << 15, tblock = 128;
  std::uint64_t tseed = 1;
  double talpha = 0.01;
  std::optional<std::uint64_t> tstride;
  auto* test = app.add_subcommand("test", "Statistical distinguisher harness");
  test->add_option("--generator", tgen, "prg, mt19937, constant or counter")
      ->check(CLI::IsMember({"prg", "mt19937", "constant", "counter"}));
  test->add_option("--trials", ttrials, "Independent streams (>= 30)");
  test->add_option("--bits", tbits, "Bits per stream");
  test->add_option("--trial-seed", tseed, "Seed of the first trial");
  test->add_option("--alpha-sig", talpha, "Significance level");
  test->add_option("--block", tblock, "Block length for the block frequency test");
  test->add_option("--stride", tstride, "PRG stride (overrides config)");
  test->callback([&] {
    out.add("command", "test");
    BitGenerator gen;
    if (tgen == "prg") {
      auto cfg = lattice_config(common);
      if (tstride) cfg.stride = *tstride;
      echo_config(out, cfg);
      gen = prg_generator(std::make_shared<const LatticeSymbolicSystem>(build_system(cfg)), cfg.stride);
    } else if (tgen == "mt19937") {
      gen = mt19937_generator();
    } else if (tgen == "constant") {
      gen = constant_generator();
    } else {
      gen = counter_generator();
    }
    out.add("param.generator", tgen);
    out.add("param.trials", ttrials);
    out.add("param.bits", tbits);
    out.add("param.trial_seed", tseed);
    out.add_real("param.alpha_sig", talpha, 6);
    const auto rep = distinguisher_harness(gen, default_tests(talpha, tblock), ttrials, tbits, tseed, talpha);
    for (const auto& t : rep.tests) {
      out.add("test." + t.name, std::to_string(t.passes) + "/" + std::to_string(t.trials) + " band=[" +
                                    std::to_string(t.band_low) + "," + std::to_string(t.band_high) + "] " +
                                    (t.consistent ? "consistent" : "inconsistent"));
    }
    out.add("consistent", rep.all_consistent());
    if (!rep.all_consistent()) status = kRejected;
  });

  const auto start = std::chrono::steady_clock::now();
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const parse_error& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const resource_error& e) {
    std::cerr << "resource error: " << e.what() << '\n';
    return kResource;
  } catch (const domain_error& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kUsage;
  }
  if (!printed) out.print(common.as_json);
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  std::cerr << "elapsed_ms=" << fixed(ms, 3) << '\n';
  return status;
}
