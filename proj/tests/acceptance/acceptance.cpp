// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include <unistd.h>

#include "lemmas.hpp"
#include "oracle.hpp"
#include "unigauss/attack.hpp"
#include "unigauss/bench.hpp"
#include "unigauss/serialize.hpp"
#include "unigauss_cli/cli.hpp"

using namespace unigauss;
namespace ut = unigauss::testing;

namespace {

constexpr int kCorpusSize = 1000;
constexpr double kCorpusBudgetSec = 120;
constexpr double kSlopeLo = 2.5, kSlopeHi = 3.5;
constexpr int kScalingTrials = 10;
constexpr double kScalingBudgetSec = 300;
constexpr int kLemmaInstances = 500;
constexpr int kMorSmall = 100, kMorLarge = 20, kApplySamples = 1000;
constexpr int kAttackTrials = 100;
constexpr double kAttackBudgetSec = 60;
constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

struct Config {
  int d;
  std::uint32_t p, e;
};

struct CorpusResult {
  int decomposed = 0, decomp_fail = 0, det_fail = 0, word_fail = 0, su_fail = 0, su_torus = 0;
  double decompose_sec = 0;
};

// Decompose, check the diagonal, the determinant identity, word_for and the SU reduction on n samples.
CorpusResult run_corpus(const Config& c, int n, Rng& rng) {
  CorpusResult r;
  const FieldPtr f = Field::get(c.p, c.e);
  const int l = c.d / 2;
  for (int k = 0; k < n; ++k) {
    const Mat g = random_unitary(f, c.d, rng);

    const auto t0 = Clock::now();
    const Decomposition dec = decompose(g);
    const Mat lhs = mul(mul(word_evaluate(f, dec.left), g), word_evaluate(f, dec.right));
    Mat want = Mat::identity(f, c.d);
    want.at(l, l) = dec.diag.lambda;
    want.at(-l, -l) = f->inv(f->conj(dec.diag.lambda));
    if (c.d % 2) want.at(0, 0) = dec.diag.alpha.value_or(f->zero());
    r.decompose_sec += seconds_since(t0);
    ++r.decomposed;
    if (!(lhs == want)) ++r.decomp_fail;

    const Elem dg = det(g);
    const Elem ratio = f->div(dec.diag.lambda, f->conj(dec.diag.lambda));
    if (c.d % 2 == 0) {
      if (!(ratio == dg)) ++r.det_fail;
    } else if (!dec.diag.alpha || !f->is_norm_one(*dec.diag.alpha) || !(f->mul(*dec.diag.alpha, ratio) == dg)) {
      ++r.det_fail;
    }

    if (!(word_evaluate(f, word_for(g)) == g)) ++r.word_fail;

    // strip the determinant with a diagonal unitary to get an SU element
    DiagForm df;
    if (c.d % 2) {
      df.alpha = dg;
    } else {
      const Elem base = f->inv(f->zeta1());  // zeta^{1-q}
      df.lambda = f->pow(f->zeta(), static_cast<std::int64_t>(discrete_log(*f, base, dg)));
    }
    const Mat su = mul(inverse(diag_matrix(f, c.d, df)), g);
    const Word w = reduce_su_to_identity(su);
    for (const auto& x : w.letters) r.su_torus += is_torus(x.family);
    if (!(word_evaluate(f, w) == su)) ++r.su_fail;
  }
  return r;
}

std::string config_name(const Config& c) {
  std::uint64_t q = 1;
  for (std::uint32_t k = 0; k < c.e; ++k) q *= c.p;
  return fmt("(%d,%llu)", c.d, static_cast<unsigned long long>(q));
}

Outcome exhaustive_generators() {
  Outcome o;
  const FieldPtr f = Field::get(3, 1);
  std::size_t letters = 0, pairs = 0, bad = 0;
  for (int d : {4, 5}) {
    const auto all = ut::all_elementary_letters(*f, d);
    letters += all.size();
    for (const Letter& x : all) {
      const Mat m = letter_matrix(f, d, x);
      if (!(m == ut::oracle_letter(f, d, x)) || !ut::naive_unitary(m) || !(ut::naive_det(m) == f->one())) ++bad;
    }
    for (const Letter& x : all) {
      for (const Letter& y : all) {
        if (x.family != y.family || x.i != y.i || x.j != y.j) continue;
        ++pairs;
        const Mat prod = ut::naive_mul(letter_matrix(f, d, x), letter_matrix(f, d, y));
        Letter s = x;
        s.param = f->add(x.param, y.param);
        Mat want = ut::oracle_letter(f, d, s);
        if (x.family == Family::Xi0 || x.family == Family::X0i) {
          const Elem corr = f->sub(f->mul(x.param, f->conj(y.param)), f->mul(f->conj(x.param), y.param));
          const Family fam = x.family == Family::Xi0 ? Family::XiNegI : Family::XNegIi;
          want = ut::naive_mul(want, ut::oracle_letter(f, d, {fam, x.i, 0, corr, 0}));
        }
        if (!(prod == want)) ++bad;
      }
    }
  }
  o.pass = bad == 0;
  o.detail = fmt("%zu letters, %zu product pairs, %zu failures", letters, pairs, bad);
  return o;
}

Mat random_su(const FieldPtr& f, int d, Rng& rng) {
  return word_evaluate(f, random_elementary_word(*f, d, rng, 6 * d * d));
}

Outcome mor_round_trips(Rng& rng) {
  Outcome o;
  int fails = 0, runs = 0, apply_fails = 0, applies = 0;
  for (auto [d, p, n] : {std::tuple{4, 3u, kMorSmall}, {8, 7u, kMorLarge}}) {
    const FieldPtr f = Field::get(p, 1);
    for (int k = 0; k < n; ++k) {
      const MorKeyPair kp = keygen(f, d / 2, rng);
      const Mat msg = random_su(f, d, rng);
      const Ciphertext ct = encrypt(kp.pub, msg, rng);
      ++runs;
      if (!(det(ct.c2) == f->one()) || !(decrypt(kp, ct) == msg)) ++fails;
    }
    const auto gens = GeneratorSet::make(f, d);
    Mat nmat, ninv;
    Automorphism aut = Automorphism::identity(gens);
    for (int k = 0; k < kApplySamples; ++k) {
      if (k % 100 == 0) {
        nmat = random_similitude(f, d, rng);
        ninv = ut::naive_inverse(nmat);
        aut = conjugation_automorphism(nmat, gens, false);
      }
      const Mat m = random_su(f, d, rng);
      ++applies;
      if (!(apply(aut, m) == ut::naive_mul(ut::naive_mul(nmat, m), ninv))) ++apply_fails;
    }
  }
  o.pass = fails == 0 && apply_fails == 0;
  o.detail = fmt("%d/%d round trips exact, %d/%d apply == n M n^-1", runs - fails, runs, applies - apply_fails, applies);
  return o;
}

Outcome attack_trials(Rng& rng) {
  Outcome o;
  const auto t0 = Clock::now();
  int ok = 0, total = 0;
  const FieldPtr f = Field::get(3, 2);
  for (int d : {4, 5}) {
    const auto gens = GeneratorSet::make(f, d);
    for (int k = 0; k < kAttackTrials; ++k) {
      const Mat n = random_similitude(f, d, rng);
      auto oracle = conjugation_oracle(n);
      const Mat g = d % 2 ? recover_conjugator_odd(oracle, d / 2, f) : recover_conjugator_even(oracle, d / 2, f);
      const Mat s = ut::naive_mul(ut::naive_inverse(g), n);
      ++total;
      if (s.is_scalar() && !f->is_zero(s(0, 0)) && verify_recovery(g, oracle, *gens)) ++ok;
    }
  }
  const double sec = seconds_since(t0);
  o.pass = ok == total && sec < kAttackBudgetSec;
  o.detail = fmt("%d/%d recovered up to scalar and verified, %.1fs (budget %.0fs)", ok, total, sec, kAttackBudgetSec);
  return o;
}

template <typename T, typename To, typename From>
bool round_trip(const T& x, To to, From from) {
  const json j = to(x);
  return from(json::parse(j.dump())) == x && to(from(json::parse(j.dump()))) == j;
}

std::string run_cli_capture(const std::vector<std::string>& args, int* code) {
  std::ostringstream out, err;
  *code = cli::run_cli(args, out, err);
  return out.str();
}

std::string slurp(const std::string& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

Outcome serialization_and_determinism(Rng& rng) {
  Outcome o;
  int checks = 0, fails = 0;
  auto check = [&](bool ok) {
    ++checks;
    if (!ok) ++fails;
  };
  for (auto [p, e, d] : {std::tuple{3u, 1u, 4}, {3u, 1u, 5}, {7u, 2u, 8}, {2u, 2u, 4}}) {
    const FieldPtr f = Field::get(p, e);
    check(field_from_json(json::parse(field_to_json(*f).dump())) == f);
    for (int k = 0; k < 20; ++k) {
      const Elem x = f->random(rng);
      check(elem_from_json(*f, json::parse(elem_to_json(*f, x).dump())) == x);
      const Mat g = random_unitary(f, d, rng);
      check(round_trip(g, [](const Mat& m) { return mat_to_json(m); }, [](const json& j) { return mat_from_json(j); }));
      const Word w = word_for(g);
      check(round_trip(
          w, [&](const Word& v) { return word_to_json(*f, v); }, [&](const json& j) { return word_from_json(*f, j); }));
      for (const auto& x2 : w.letters) {
        check(round_trip(
            x2, [&](const Letter& v) { return letter_to_json(*f, v); },
            [&](const json& j) { return letter_from_json(*f, j); }));
      }
      const Decomposition dec = decompose(g);
      check(round_trip(
          dec, [&](const Decomposition& v) { return decomposition_to_json(*f, v); },
          [&](const json& j) { return decomposition_from_json(*f, j); }));
    }
    const auto gens = GeneratorSet::make(f, d);
    check(*generator_set_from_json(f, json::parse(generator_set_to_json(*gens).dump())) == *gens);
  }
  // keys and ciphertexts
  const FieldPtr f = Field::get(3, 1);
  for (int k = 0; k < 5; ++k) {
    const MorKeyPair kp = keygen(f, 2, rng);
    const json jp = public_key_to_json(kp.pub), jk = keypair_to_json(kp);
    const MorPublicKey pub = public_key_from_json(json::parse(jp.dump()));
    check(pub.phi.images() == kp.pub.phi.images() && pub.phi.inverse_images() == kp.pub.phi.inverse_images() &&
          pub.phi_m.images() == kp.pub.phi_m.images() && public_key_to_json(pub) == jp);
    const MorKeyPair kp2 = keypair_from_json(json::parse(jk.dump()));
    check(kp2.secret_m == kp.secret_m && keypair_to_json(kp2) == jk);
    const Ciphertext ct = encrypt(kp.pub, random_su(f, 4, rng), rng);
    const json jc = ciphertext_to_json(ct);
    const Ciphertext ct2 = ciphertext_from_json(json::parse(jc.dump()));
    check(ct2.c1.images() == ct.c1.images() && ct2.c2 == ct.c2 && ciphertext_to_json(ct2) == jc);
  }
  // determinism: library sampling and every seeded CLI path, run twice
  {
    Rng a(kSeed), b(kSeed);
    check(random_unitary(Field::get(7, 2), 9, a) == random_unitary(Field::get(7, 2), 9, b));
    Rng c(kSeed), e2(kSeed);
    check(public_key_to_json(keygen(f, 2, c).pub) == public_key_to_json(keygen(f, 2, e2).pub));
  }
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() / ("unigauss_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  auto P = [&](const char* n) { return (dir / n).string(); };
  std::string outputs[2];
  for (int rep = 0; rep < 2; ++rep) {
    int code = 0;
    std::string acc;
    acc += run_cli_capture({"random-element", "--p", "7", "--e", "2", "--dim", "9", "--seed", "11"}, &code);
    check(code == 0);
    run_cli_capture({"random-element", "--p", "3", "--dim", "4", "--su", "--seed", "12", "--out", P("m.json")}, &code);
    check(code == 0);
    acc += run_cli_capture({"decompose", "--in", P("m.json")}, &code);
    check(code == 0);
    acc += run_cli_capture({"su-reduce", "--in", P("m.json")}, &code);
    check(code == 0);
    run_cli_capture({"keygen", "--p", "3", "--dim", "4", "--seed", "13", "--out", P("kp.json"), "--pub-out", P("pub.json")},
                    &code);
    check(code == 0);
    acc += slurp(P("kp.json"));
    acc += run_cli_capture({"encrypt", "--key", P("pub.json"), "--in", P("m.json"), "--seed", "14", "--out", P("ct.json")},
                           &code);
    check(code == 0);
    acc += slurp(P("ct.json"));
    acc += run_cli_capture({"decrypt", "--key", P("kp.json"), "--in", P("ct.json")}, &code);
    check(code == 0);
    acc += run_cli_capture({"attack", "--key", P("pub.json")}, &code);
    check(code == 0);
    outputs[rep] = acc;
  }
  std::filesystem::remove_all(dir);
  check(!outputs[0].empty() && outputs[0] == outputs[1]);
  o.pass = fails == 0;
  o.detail = fmt("%d/%d checks", checks - fails, checks);
  return o;
}

void report(int n, const char* title, const Outcome& o, double sec) {
  std::printf("criterion %2d: %s  %s: %s [%.1fs]\n", n, o.pass ? "PASS" : "FAIL", title, o.detail.c_str(), sec);
  std::fflush(stdout);
}

}  // namespace

int main() {
  Rng rng(kSeed);
  bool all = true;
  auto timed = [&](int n, const char* title, const std::function<Outcome()>& fn) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    report(n, title, o, seconds_since(t0));
    all = all && o.pass;
  };

  // Criteria 1-3 share one corpus.
  const std::vector<Config> corpus = {{4, 3, 1}, {5, 3, 1}, {8, 7, 1}, {9, 7, 1}, {20, 7, 2}};
  std::vector<CorpusResult> results;
  const auto t_corpus = Clock::now();
  std::string corpus_error;
  try {
    for (const auto& c : corpus) results.push_back(run_corpus(c, kCorpusSize, rng));
  } catch (const std::exception& e) {
    corpus_error = e.what();
  }
  const double corpus_sec = seconds_since(t_corpus);
  {
    Outcome o1, o2, o3;
    double dsec = 0;
    std::string d1, d2, d3;
    for (std::size_t k = 0; k < results.size(); ++k) {
      const auto& r = results[k];
      dsec += r.decompose_sec;
      o1.pass = o1.pass && r.decomp_fail == 0;
      o2.pass = o2.pass && r.det_fail == 0;
      o3.pass = o3.pass && r.word_fail == 0 && r.su_fail == 0 && r.su_torus == 0;
      const std::string name = config_name(corpus[k]);
      d1 += fmt("%s %d/%d ", name.c_str(), r.decomposed - r.decomp_fail, r.decomposed);
      d2 += fmt("%s %d/%d ", name.c_str(), r.decomposed - r.det_fail, r.decomposed);
      d3 += fmt("%s %d+%d/%d ", name.c_str(), r.decomposed - r.word_fail, r.decomposed - r.su_fail, r.decomposed);
    }
    if (!corpus_error.empty() || results.size() != corpus.size()) {
      o1.pass = o2.pass = o3.pass = false;
      d1 += "exception: " + corpus_error;
    }
    o1.pass = o1.pass && dsec < kCorpusBudgetSec;
    o1.detail = d1 + fmt("decompose+check %.1fs (budget %.0fs)", dsec, kCorpusBudgetSec);
    o2.detail = d2;
    o3.detail = d3 + "(word_for + SU elementary words)";
    report(1, "decomposition exact", o1, corpus_sec);
    report(2, "determinant identities", o2, 0);
    report(3, "word problem", o3, 0);
    all = all && o1.pass && o2.pass && o3.pass;
  }

  timed(4, "characteristic 2", [&] {
    Outcome o;
    for (const Config& c : {Config{4, 2, 1}, Config{4, 2, 2}}) {
      const CorpusResult r = run_corpus(c, kCorpusSize, rng);
      const bool ok = r.decomp_fail == 0 && r.det_fail == 0 && r.word_fail == 0 && r.su_fail == 0;
      o.pass = o.pass && ok;
      o.detail += fmt("%s %d/%d ", config_name(c).c_str(), r.decomposed - r.decomp_fail, r.decomposed);
    }
    return o;
  });

  timed(5, "generator validity (q=3, exhaustive)", exhaustive_generators);

  timed(6, "lemma suite", [&] {
    Outcome o;
    for (const auto& lemma : ut::lemma_suite()) {
      int ok = 0;
      for (int k = 0; k < kLemmaInstances; ++k) ok += lemma.run(rng);
      o.pass = o.pass && ok == kLemmaInstances;
      o.detail += fmt("%s %d/%d ", lemma.name.c_str(), ok, kLemmaInstances);
    }
    return o;
  });

  timed(7, "cubic scaling", [&] {
    const auto t0 = Clock::now();
    std::vector<BenchRecord> recs;
    for (int l : {5, 10, 20, 40}) recs.push_back(bench_decompose(2 * l, 7, 2, kScalingTrials, kSeed + l));
    const double slope = fit_scaling(recs);
    const double sec = seconds_since(t0);
    Outcome o;
    o.pass = slope >= kSlopeLo && slope <= kSlopeHi && sec < kScalingBudgetSec;
    o.detail = fmt("slope %.3f in [%.1f, %.1f], mults", slope, kSlopeLo, kSlopeHi);
    for (const auto& r : recs) o.detail += fmt(" l=%d:%.0f", r.d / 2, r.mult_count);
    o.detail += fmt(", %.1fs (budget %.0fs)", sec, kScalingBudgetSec);
    return o;
  });

  timed(8, "MOR round trip", [&] { return mor_round_trips(rng); });
  timed(9, "conjugator recovery", [&] { return attack_trials(rng); });
  timed(10, "serialization and determinism", [&] { return serialization_and_determinism(rng); });

  std::printf("%s\n", all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
  return all ? 0 : 1;
}
