#include "unigauss_cli/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "unigauss/attack.hpp"
#include "unigauss/bench.hpp"
#include "unigauss/serialize.hpp"

namespace unigauss::cli {

namespace {

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kInvalidArgument, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(Errc::kParseError, path + ": " + e.what());
  }
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text << '\n';
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error(Errc::kInvalidArgument, "cannot write " + path);
  f << text << '\n';
}

void emit(const json& j, const std::string& path, std::ostream& out) { emit(j.dump(2), path, out); }

json with_spec(json j, const Field& f) {
  j["spec"] = field_to_json(f);
  return j;
}

std::vector<int> parse_dims(const std::string& s) {
  std::vector<int> dims;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      dims.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw Error(Errc::kInvalidArgument, "bad --dims entry '" + tok + "'");
    }
  }
  if (dims.empty()) throw Error(Errc::kInvalidArgument, "--dims is empty");
  return dims;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gaussian elimination in unitary groups U(d, q^2), the MOR cryptosystem and its attack"};
  app.require_subcommand(1);

  std::uint32_t p = 3, e = 1;
  int dim = 4, trials = 10, letters = -1;
  std::uint64_t seed = 1;
  std::string in, out_path, word_path, word_out, key_path, format = "csv", dims = "10,20,40,80";
  bool su = false;
  std::function<int()> action;

  auto field_opts = [&](CLI::App* sc) {
    sc->add_option("--p", p, "Characteristic")->capture_default_str();
    sc->add_option("--e", e, "Extension degree, q = p^e")->capture_default_str();
  };

  auto* dec = app.add_subcommand("decompose", "Decompose a unitary matrix into left word, diagonal, right word");
  dec->add_option("--in", in, "Matrix JSON")->required();
  dec->add_option("--out", out_path, "Decomposition JSON (default stdout)");
  dec->add_option("--word-out", word_out, "Also write the full generator word for the matrix");
  dec->callback([&] {
    action = [&] {
      const Mat g = mat_from_json(read_json(in));
      const Field& f = g.field();
      emit(with_spec(decomposition_to_json(f, decompose(g)), f), out_path, out);
      if (!word_out.empty()) emit(with_spec(word_to_json(f, word_for(g)), f), word_out, out);
      return 0;
    };
  });

  auto* ver = app.add_subcommand("verify", "Multiply out a word and compare it with a matrix");
  ver->add_option("--in", in, "Matrix JSON")->required();
  ver->add_option("--word", word_path, "Word JSON")->required();
  ver->callback([&] {
    action = [&] {
      const Mat g = mat_from_json(read_json(in));
      const Word w = word_from_json(g.field(), read_json(word_path));
      if (w.d != g.d()) throw Error(Errc::kInvalidArgument, "word and matrix dimensions differ");
      const bool ok = word_evaluate(g.field_ptr(), w) == g;
      out << (ok ? "EXACT MATCH" : "MISMATCH") << '\n';
      return ok ? 0 : 1;
    };
  });

  auto* rnd = app.add_subcommand("random-element", "Sample a random unitary matrix");
  field_opts(rnd);
  rnd->add_option("--dim", dim, "Dimension d")->capture_default_str();
  rnd->add_option("--seed", seed, "RNG seed")->capture_default_str();
  rnd->add_option("--letters", letters, "Number of random letters (default 10 d^2)");
  rnd->add_flag("--su", su, "Elementary letters only, so the result lies in SU");
  rnd->add_option("--out", out_path, "Matrix JSON (default stdout)");
  rnd->callback([&] {
    action = [&] {
      const FieldPtr f = Field::get(p, e);
      hermitian_form(f, dim);
      Rng rng(seed);
      const int n = letters < 0 ? 10 * dim * dim : letters;
      const Mat g = su ? word_evaluate(f, random_elementary_word(*f, dim, rng, n)) : random_unitary(f, dim, rng, n);
      emit(mat_to_json(g), out_path, out);
      return 0;
    };
  });

  auto* sur = app.add_subcommand("su-reduce", "Write an SU matrix as a word in elementary letters");
  sur->add_option("--in", in, "Matrix JSON")->required();
  sur->add_option("--out", out_path, "Word JSON (default stdout)");
  sur->callback([&] {
    action = [&] {
      const Mat g = mat_from_json(read_json(in));
      emit(with_spec(word_to_json(g.field(), reduce_su_to_identity(g)), g.field()), out_path, out);
      return 0;
    };
  });

  auto* kg = app.add_subcommand("keygen", "Generate a MOR key pair on SU(d, q^2), d even");
  field_opts(kg);
  kg->add_option("--dim", dim, "Dimension d")->capture_default_str();
  kg->add_option("--seed", seed, "RNG seed")->capture_default_str();
  kg->add_option("--out", out_path, "Key pair JSON including the secret (default stdout)");
  kg->add_option("--pub-out", key_path, "Also write the public key alone");
  kg->callback([&] {
    action = [&] {
      if (dim % 2) throw Error(Errc::kUnsupportedParity, "MOR uses even dimension");
      Rng rng(seed);
      const MorKeyPair kp = keygen(Field::get(p, e), dim / 2, rng);
      emit(keypair_to_json(kp), out_path, out);
      if (!key_path.empty()) emit(public_key_to_json(kp.pub), key_path, out);
      return 0;
    };
  });

  auto* enc = app.add_subcommand("encrypt", "Encrypt an SU matrix under a public key");
  enc->add_option("--key", key_path, "Public key JSON")->required();
  enc->add_option("--in", in, "Plaintext matrix JSON")->required();
  enc->add_option("--seed", seed, "RNG seed")->capture_default_str();
  enc->add_option("--out", out_path, "Ciphertext JSON (default stdout)");
  enc->callback([&] {
    action = [&] {
      const MorPublicKey pub = public_key_from_json(read_json(key_path));
      const Mat msg = mat_from_json(read_json(in), pub.phi.gens()->field_ptr());
      Rng rng(seed);
      emit(ciphertext_to_json(encrypt(pub, msg, rng)), out_path, out);
      return 0;
    };
  });

  auto* decr = app.add_subcommand("decrypt", "Decrypt a ciphertext with a key pair");
  decr->add_option("--key", key_path, "Key pair JSON")->required();
  decr->add_option("--in", in, "Ciphertext JSON")->required();
  decr->add_option("--out", out_path, "Plaintext matrix JSON (default stdout)");
  decr->callback([&] {
    action = [&] {
      const MorKeyPair kp = keypair_from_json(read_json(key_path));
      emit(mat_to_json(decrypt(kp, ciphertext_from_json(read_json(in)))), out_path, out);
      return 0;
    };
  });

  auto* atk = app.add_subcommand("attack", "Recover the conjugator of a public key up to a scalar");
  atk->add_option("--key", key_path, "Public key JSON")->required();
  atk->add_option("--out", out_path, "Report JSON (default stdout)");
  atk->callback([&] {
    action = [&] {
      const MorPublicKey pub = public_key_from_json(read_json(key_path));
      const GeneratorSet& gens = *pub.phi.gens();
      const int d = gens.d();
      AutomorphismOracle oracle = automorphism_oracle(pub.phi);
      const Mat g = d % 2 ? recover_conjugator_odd(oracle, d / 2, gens.field_ptr())
                          : recover_conjugator_even(oracle, d / 2, gens.field_ptr());
      const auto queries = oracle.queries();
      const bool ok = verify_recovery(g, oracle, gens);
      emit(json{{"conjugator", mat_to_json(g)}, {"queries", queries}, {"verified", ok}}, out_path, out);
      return ok ? 0 : 1;
    };
  });

  auto* bn = app.add_subcommand("bench", "Time decompose() and count field multiplications");
  field_opts(bn);
  bn->add_option("--dims", dims, "Comma-separated dimensions")->capture_default_str();
  bn->add_option("--trials", trials, "Decompositions per dimension")->capture_default_str();
  bn->add_option("--seed", seed, "RNG seed")->capture_default_str();
  bn->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  bn->add_option("--out", out_path, "Output file (default stdout)");
  bn->callback([&] {
    action = [&] {
      std::vector<BenchRecord> recs;
      for (int d : parse_dims(dims)) recs.push_back(bench_decompose(d, p, e, trials, seed));
      std::optional<double> slope;
      try {
        slope = fit_scaling(recs);
      } catch (const Error&) {
      }
      if (format == "json") {
        json arr = json::array();
        for (const auto& r : recs) {
          arr.push_back({{"d", r.d}, {"p", r.p}, {"e", r.e}, {"trials", r.trials},
                         {"mean_ns", r.mean_ns}, {"mult_count", r.mult_count}});
        }
        json j = {{"records", arr}};
        if (slope) j["slope"] = *slope;
        emit(j, out_path, out);
      } else {
        std::ostringstream os;
        os << bench_csv_header() << '\n';
        for (const auto& r : recs) os << bench_csv_row(r) << '\n';
        if (slope) {
          os << "# slope " << *slope;
        } else {
          os << "# slope n/a (need 3 distinct dimensions)";
        }
        emit(os.str(), out_path, out);
      }
      return 0;
    };
  });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& pe) {
    return app.exit(pe, out, err);
  }
  try {
    return action ? action() : 2;
  } catch (const Error& ex) {
    err << "error: " << ex.what() << '\n';
    return 2;
  }
}

}  // namespace unigauss::cli
