#include "unigauss/serialize.hpp"

#include <string>

namespace unigauss {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(Errc::kParseError, what); }

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing member '") + key + "'");
  return j.at(key);
}

template <typename T>
T as(const json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    parse_fail(std::string("bad value for ") + what);
  }
}

std::vector<json> mats_to_json(const std::vector<Mat>& ms) {
  std::vector<json> out;
  out.reserve(ms.size());
  for (const auto& m : ms) out.push_back(mat_to_json(m, false));
  return out;
}

std::vector<Mat> mats_from_json(const json& j, const FieldPtr& f, int d) {
  if (!j.is_array()) parse_fail("expected an array of matrices");
  std::vector<Mat> out;
  out.reserve(j.size());
  for (const auto& x : j) {
    Mat m = mat_from_json(x, f);
    if (m.d() != d) parse_fail("matrix dimension mismatch");
    out.push_back(std::move(m));
  }
  return out;
}

bool two_index(Family fam) { return fam == Family::Xij || fam == Family::XiNegJ || fam == Family::XNegIj; }

}  // namespace

json field_to_json(const Field& f) {
  json fk = json::array();
  for (auto c : f.fk_modulus()) {
    json digits = json::array();
    for (std::uint32_t k = 0; k < f.e(); ++k) {
      digits.push_back(c % f.p());
      c /= f.p();
    }
    fk.push_back(digits);
  }
  return {{"p", f.p()}, {"e", f.e()}, {"f_q", f.fq_modulus()}, {"f_K", fk}};
}

FieldPtr field_from_json(const json& j) {
  const auto p = as<std::uint32_t>(member(j, "p"), "p");
  const auto e = as<std::uint32_t>(member(j, "e"), "e");
  FieldPtr f;
  try {
    f = Field::get(p, e);
  } catch (const Error& err) {
    parse_fail(std::string("invalid field: ") + err.what());
  }
  if (j.contains("f_q") || j.contains("f_K")) {
    const json canonical = field_to_json(*f);
    if ((j.contains("f_q") && j.at("f_q") != canonical.at("f_q")) ||
        (j.contains("f_K") && j.at("f_K") != canonical.at("f_K"))) {
      parse_fail("modulus polynomials differ from the canonical choice");
    }
  }
  return f;
}

json elem_to_json(const Field& f, Elem x) { return f.digits(x); }

Elem elem_from_json(const Field& f, const json& j) {
  const auto digits = as<std::vector<std::uint32_t>>(j, "field element");
  try {
    return f.from_digits(digits);
  } catch (const Error& err) {
    parse_fail(err.what());
  }
}

json mat_to_json(const Mat& m, bool with_spec) {
  const Field& f = m.field();
  json rows = json::array();
  for (int r = 0; r < m.d(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.d(); ++c) row.push_back(elem_to_json(f, m(r, c)));
    rows.push_back(std::move(row));
  }
  json j = {{"d", m.d()}, {"entries", std::move(rows)}};
  if (with_spec) j["spec"] = field_to_json(f);
  return j;
}

Mat mat_from_json(const json& j, FieldPtr f) {
  if (!f) f = field_from_json(member(j, "spec"));
  const int d = as<int>(member(j, "d"), "d");
  const json& rows = member(j, "entries");
  if (d < 1 || !rows.is_array() || rows.size() != static_cast<std::size_t>(d)) parse_fail("entries shape");
  Mat m(f, d);
  for (int r = 0; r < d; ++r) {
    const json& row = rows[r];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(d)) parse_fail("entries shape");
    for (int c = 0; c < d; ++c) m(r, c) = elem_from_json(*f, row[c]);
  }
  return m;
}

json letter_to_json(const Field& f, const Letter& x) {
  json j = {{"family", std::string(family_name(x.family))}};
  if (is_torus(x.family)) {
    j["param"] = x.exponent;
    return j;
  }
  j["i"] = x.i;
  if (two_index(x.family)) j["j"] = x.j;
  j["param"] = elem_to_json(f, x.param);
  return j;
}

Letter letter_from_json(const Field& f, const json& j) {
  Letter x;
  try {
    x.family = family_from_name(as<std::string>(member(j, "family"), "family"));
  } catch (const Error& err) {
    parse_fail(err.what());
  }
  if (is_torus(x.family)) {
    x.exponent = as<std::int64_t>(member(j, "param"), "exponent");
    return x;
  }
  x.i = as<int>(member(j, "i"), "i");
  if (two_index(x.family)) x.j = as<int>(member(j, "j"), "j");
  x.param = elem_from_json(f, member(j, "param"));
  return x;
}

json word_to_json(const Field& f, const Word& w) {
  json letters = json::array();
  for (const auto& x : w.letters) letters.push_back(letter_to_json(f, x));
  return {{"d", w.d}, {"letters", std::move(letters)}};
}

Word word_from_json(const Field& f, const json& j) {
  Word w;
  w.d = as<int>(member(j, "d"), "d");
  const json& ls = member(j, "letters");
  if (!ls.is_array()) parse_fail("letters must be an array");
  for (const auto& x : ls) {
    Letter l = letter_from_json(f, x);
    try {
      validate_letter(f, w.d, l);
    } catch (const Error& err) {
      parse_fail(err.what());
    }
    w.letters.push_back(l);
  }
  return w;
}

json decomposition_to_json(const Field& f, const Decomposition& dec) {
  json j = {{"d", dec.d},
            {"left", word_to_json(f, dec.left)},
            {"right", word_to_json(f, dec.right)},
            {"lambda", elem_to_json(f, dec.diag.lambda)}};
  if (dec.diag.alpha) j["alpha"] = elem_to_json(f, *dec.diag.alpha);
  return j;
}

Decomposition decomposition_from_json(const Field& f, const json& j) {
  Decomposition dec;
  dec.d = as<int>(member(j, "d"), "d");
  dec.left = word_from_json(f, member(j, "left"));
  dec.right = word_from_json(f, member(j, "right"));
  dec.diag.lambda = elem_from_json(f, member(j, "lambda"));
  if (j.contains("alpha")) dec.diag.alpha = elem_from_json(f, j.at("alpha"));
  return dec;
}

json generator_set_to_json(const GeneratorSet& gens) {
  json letters = json::array();
  for (const auto& x : gens.letters()) letters.push_back(letter_to_json(*gens.field_ptr(), x));
  return {{"d", gens.d()}, {"letters", std::move(letters)}};
}

GeneratorSetPtr generator_set_from_json(const FieldPtr& f, const json& j) {
  const int d = as<int>(member(j, "d"), "d");
  GeneratorSetPtr gens;
  try {
    gens = GeneratorSet::make(f, d);
  } catch (const Error& err) {
    parse_fail(err.what());
  }
  if (j.contains("letters") && j.at("letters") != generator_set_to_json(*gens).at("letters")) {
    throw Error(Errc::kGeneratorSetMismatch, "generator set descriptor differs from the canonical set");
  }
  return gens;
}

json public_key_to_json(const MorPublicKey& pub) {
  const GeneratorSet& gens = *pub.phi.gens();
  json j = {{"d", gens.d()},
            {"spec", field_to_json(*gens.field_ptr())},
            {"generator_set_descriptor", generator_set_to_json(gens)},
            {"images", mats_to_json(pub.phi.images())},
            {"images_m", mats_to_json(pub.phi_m.images())}};
  if (pub.phi.has_inverse()) j["inverse_images"] = mats_to_json(pub.phi.inverse_images());
  return j;
}

MorPublicKey public_key_from_json(const json& j) {
  const FieldPtr f = field_from_json(member(j, "spec"));
  const int d = as<int>(member(j, "d"), "d");
  const GeneratorSetPtr gens = generator_set_from_json(f, member(j, "generator_set_descriptor"));
  if (gens->d() != d) parse_fail("generator set dimension mismatch");
  std::vector<Mat> inv;
  if (j.contains("inverse_images")) inv = mats_from_json(j.at("inverse_images"), f, d);
  Automorphism phi(gens, mats_from_json(member(j, "images"), f, d), std::move(inv));
  Automorphism phi_m(gens, mats_from_json(member(j, "images_m"), f, d));
  return {std::move(phi), std::move(phi_m)};
}

json keypair_to_json(const MorKeyPair& kp) {
  json j = public_key_to_json(kp.pub);
  j["secret_m"] = kp.secret_m;
  return j;
}

MorKeyPair keypair_from_json(const json& j) {
  MorKeyPair kp{public_key_from_json(j), as<std::uint64_t>(member(j, "secret_m"), "secret_m")};
  return kp;
}

json ciphertext_to_json(const Ciphertext& ct) {
  const GeneratorSet& gens = *ct.c1.gens();
  json j = {{"d", gens.d()},
            {"spec", field_to_json(*gens.field_ptr())},
            {"c1_images", mats_to_json(ct.c1.images())},
            {"c2", mat_to_json(ct.c2, false)}};
  if (ct.c1.has_inverse()) j["c1_inverse_images"] = mats_to_json(ct.c1.inverse_images());
  return j;
}

Ciphertext ciphertext_from_json(const json& j) {
  const FieldPtr f = field_from_json(member(j, "spec"));
  const int d = as<int>(member(j, "d"), "d");
  GeneratorSetPtr gens;
  try {
    gens = GeneratorSet::make(f, d);
  } catch (const Error& err) {
    parse_fail(err.what());
  }
  std::vector<Mat> inv;
  if (j.contains("c1_inverse_images")) inv = mats_from_json(j.at("c1_inverse_images"), f, d);
  Automorphism c1(gens, mats_from_json(member(j, "c1_images"), f, d), std::move(inv));
  Mat c2 = mat_from_json(member(j, "c2"), f);
  if (c2.d() != d) parse_fail("c2 dimension mismatch");
  return {std::move(c1), std::move(c2)};
}

}  // namespace unigauss
