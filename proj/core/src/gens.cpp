#include "unigauss/gens.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace unigauss {

namespace {

constexpr std::array<std::string_view, 9> kNames = {
    "Xij", "XiNegJ", "XNegIj", "XiNegI", "XNegIi", "Xi0", "X0i", "TorusZeta", "TorusZeta1"};

// row a += c * row b
void row_axpy(Mat& m, int a, int b, Elem c) {
  if (c.raw == 0) return;
  const Field& f = m.field();
  Elem* ra = m.row(a);
  const Elem* rb = m.row(b);
  for (int k = 0; k < m.d(); ++k) {
    if (rb[k].raw) ra[k] = f.add(ra[k], f.mul(c, rb[k]));
  }
}

// col b += c * col a
void col_axpy(Mat& m, int b, int a, Elem c) {
  if (c.raw == 0) return;
  const Field& f = m.field();
  for (int k = 0; k < m.d(); ++k) {
    const Elem v = m(k, a);
    if (v.raw) m(k, b) = f.add(m(k, b), f.mul(c, v));
  }
}

void row_scale(Mat& m, int a, Elem c) {
  const Field& f = m.field();
  Elem* ra = m.row(a);
  for (int k = 0; k < m.d(); ++k) ra[k] = f.mul(c, ra[k]);
}

void col_scale(Mat& m, int a, Elem c) {
  const Field& f = m.field();
  for (int k = 0; k < m.d(); ++k) m(k, a) = f.mul(c, m(k, a));
}

Elem torus_value(const Field& f, const Letter& x, bool minus_l) {
  if (x.family == Family::TorusZeta1) return f.pow(f.zeta1(), x.exponent);
  const Elem z = f.pow(f.zeta(), x.exponent);
  return minus_l ? f.inv(f.conj(z)) : z;
}

}  // namespace

std::string_view family_name(Family f) { return kNames[static_cast<int>(f)]; }

Family family_from_name(std::string_view name) {
  for (std::size_t k = 0; k < kNames.size(); ++k) {
    if (kNames[k] == name) return static_cast<Family>(k);
  }
  throw Error(Errc::kParseError, "unknown letter family " + std::string(name));
}

bool is_torus(Family f) { return f == Family::TorusZeta || f == Family::TorusZeta1; }
bool is_long_root(Family f) { return f == Family::XiNegI || f == Family::XNegIi; }

void validate_letter(const Field& f, int d, const Letter& x) {
  const int l = d / 2;
  const bool odd = d % 2 == 1;
  auto fail = [&](const std::string& why) {
    throw Error(Errc::kInvalidLetter, std::string(family_name(x.family)) + ": " + why);
  };
  auto in_range = [&](int i) { return i >= 1 && i <= l; };
  if (odd && f.p() == 2) fail("odd dimension needs odd characteristic");
  switch (x.family) {
    case Family::Xij:
      if (!in_range(x.i) || !in_range(x.j) || x.i == x.j) fail("need 1 <= i != j <= l");
      break;
    case Family::XiNegJ:
    case Family::XNegIj:
      if (!in_range(x.i) || !in_range(x.j) || x.i >= x.j) fail("need 1 <= i < j <= l");
      break;
    case Family::XiNegI:
    case Family::XNegIi:
      if (!in_range(x.i)) fail("index out of range");
      if (!f.is_skew(x.param)) fail("parameter must be skew");
      break;
    case Family::Xi0:
    case Family::X0i:
      if (!odd) fail("only valid for odd dimension");
      if (!in_range(x.i)) fail("index out of range");
      break;
    case Family::TorusZeta:
      if (l < 1) fail("dimension too small");
      break;
    case Family::TorusZeta1:
      if (!odd) fail("only valid for odd dimension");
      break;
  }
}

void apply_left_inplace(const Letter& x, Mat& m) {
  const Field& f = m.field();
  const int d = m.d();
  auto P = [d](int i) { return pos(d, i); };
  const int i = x.i, j = x.j;
  const Elem t = x.param;
  switch (x.family) {
    case Family::Xij:
      row_axpy(m, P(i), P(j), t);
      row_axpy(m, P(-j), P(-i), f.neg(f.conj(t)));
      break;
    case Family::XiNegJ:
      row_axpy(m, P(i), P(-j), t);
      row_axpy(m, P(j), P(-i), f.neg(f.conj(t)));
      break;
    case Family::XNegIj:
      row_axpy(m, P(-i), P(j), t);
      row_axpy(m, P(-j), P(i), f.neg(f.conj(t)));
      break;
    case Family::XiNegI:
      row_axpy(m, P(i), P(-i), t);
      break;
    case Family::XNegIi:
      row_axpy(m, P(-i), P(i), t);
      break;
    case Family::Xi0: {
      if (t.raw == 0) break;
      const Elem tb = f.conj(t);
      // Row i reads the old row 0.
      row_axpy(m, P(i), 0, f.neg(f.add(tb, tb)));
      row_axpy(m, P(i), P(-i), f.neg(f.mul(t, tb)));
      row_axpy(m, 0, P(-i), t);
      break;
    }
    case Family::X0i: {
      if (t.raw == 0) break;
      const Elem tb = f.conj(t);
      row_axpy(m, P(-i), 0, f.neg(f.add(tb, tb)));
      row_axpy(m, P(-i), P(i), f.neg(f.mul(t, tb)));
      row_axpy(m, 0, P(i), t);
      break;
    }
    case Family::TorusZeta: {
      const int l = d / 2;
      row_scale(m, P(l), torus_value(f, x, false));
      row_scale(m, P(-l), torus_value(f, x, true));
      break;
    }
    case Family::TorusZeta1:
      row_scale(m, 0, torus_value(f, x, false));
      break;
  }
}

void apply_right_inplace(Mat& m, const Letter& x) {
  const Field& f = m.field();
  const int d = m.d();
  auto P = [d](int i) { return pos(d, i); };
  const int i = x.i, j = x.j;
  const Elem t = x.param;
  switch (x.family) {
    case Family::Xij:
      col_axpy(m, P(j), P(i), t);
      col_axpy(m, P(-i), P(-j), f.neg(f.conj(t)));
      break;
    case Family::XiNegJ:
      col_axpy(m, P(-j), P(i), t);
      col_axpy(m, P(-i), P(j), f.neg(f.conj(t)));
      break;
    case Family::XNegIj:
      col_axpy(m, P(j), P(-i), t);
      col_axpy(m, P(i), P(-j), f.neg(f.conj(t)));
      break;
    case Family::XiNegI:
      col_axpy(m, P(-i), P(i), t);
      break;
    case Family::XNegIi:
      col_axpy(m, P(i), P(-i), t);
      break;
    case Family::Xi0: {
      if (t.raw == 0) break;
      const Elem tb = f.conj(t);
      // Column -i reads the old column 0.
      col_axpy(m, P(-i), 0, t);
      col_axpy(m, P(-i), P(i), f.neg(f.mul(t, tb)));
      col_axpy(m, 0, P(i), f.neg(f.add(tb, tb)));
      break;
    }
    case Family::X0i: {
      if (t.raw == 0) break;
      const Elem tb = f.conj(t);
      col_axpy(m, P(i), 0, t);
      col_axpy(m, P(i), P(-i), f.neg(f.mul(t, tb)));
      col_axpy(m, 0, P(-i), f.neg(f.add(tb, tb)));
      break;
    }
    case Family::TorusZeta: {
      const int l = d / 2;
      col_scale(m, P(l), torus_value(f, x, false));
      col_scale(m, P(-l), torus_value(f, x, true));
      break;
    }
    case Family::TorusZeta1:
      col_scale(m, 0, torus_value(f, x, false));
      break;
  }
}

Mat apply_left(const Letter& x, Mat m) {
  apply_left_inplace(x, m);
  return m;
}

Mat apply_right(Mat m, const Letter& x) {
  apply_right_inplace(m, x);
  return m;
}

Mat letter_matrix(const FieldPtr& f, int d, const Letter& x) {
  validate_letter(*f, d, x);
  Mat m = Mat::identity(f, d);
  apply_left_inplace(x, m);
  return m;
}

Word row_interchange(const Field& f, int d, int i, Elem s) {
  if (s.raw == 0) throw Error(Errc::kZeroParameter, "row interchange needs s != 0");
  if (!f.is_skew(s)) throw Error(Errc::kInvalidLetter, "row interchange needs skew s");
  Word w{d, {}};
  w.letters.push_back({Family::XiNegI, i, 0, s, 0});
  w.letters.push_back({Family::XNegIi, i, 0, f.neg(f.inv(s)), 0});
  w.letters.push_back({Family::XiNegI, i, 0, s, 0});
  return w;
}

Mat word_evaluate(const FieldPtr& f, const Word& w) {
  Mat m = Mat::identity(f, w.d);
  for (const auto& x : w.letters) {
    validate_letter(*f, w.d, x);
    apply_right_inplace(m, x);
  }
  return m;
}

Word word_inverse(const Field& f, const Word& w) {
  Word r{w.d, {}};
  r.letters.reserve(w.letters.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    Letter x = *it;
    if (x.family == Family::TorusZeta) {
      const auto n = static_cast<std::int64_t>(f.order());
      x.exponent = ((-x.exponent) % n + n) % n;
    } else if (x.family == Family::TorusZeta1) {
      const auto n = static_cast<std::int64_t>(f.q() + 1);
      x.exponent = ((-x.exponent) % n + n) % n;
    } else {
      x.param = f.neg(x.param);
    }
    r.letters.push_back(x);
  }
  return r;
}

Word concat(Word a, const Word& b) {
  a.letters.insert(a.letters.end(), b.letters.begin(), b.letters.end());
  return a;
}

Elem random_subfield(const Field& f, Rng& rng) { return f.from_code(uniform_below(rng, f.q())); }

Elem random_skew(const Field& f, Rng& rng) { return f.mul(f.epsilon(), random_subfield(f, rng)); }

Letter random_elementary_letter(const Field& f, int d, Rng& rng) {
  const int l = d / 2;
  const bool odd = d % 2 == 1;
  std::vector<Family> fams;
  if (l >= 2) fams.insert(fams.end(), {Family::Xij, Family::XiNegJ, Family::XNegIj});
  fams.insert(fams.end(), {Family::XiNegI, Family::XNegIi});
  if (odd) fams.insert(fams.end(), {Family::Xi0, Family::X0i});
  Letter x;
  x.family = fams[uniform_below(rng, fams.size())];
  x.i = 1 + static_cast<int>(uniform_below(rng, l));
  switch (x.family) {
    case Family::Xij:
      x.j = 1 + static_cast<int>(uniform_below(rng, l - 1));
      if (x.j >= x.i) ++x.j;
      break;
    case Family::XiNegJ:
    case Family::XNegIj: {
      int a = 1 + static_cast<int>(uniform_below(rng, l));
      int b = 1 + static_cast<int>(uniform_below(rng, l - 1));
      if (b >= a) ++b;
      x.i = std::min(a, b);
      x.j = std::max(a, b);
      break;
    }
    default:
      break;
  }
  x.param = is_long_root(x.family) ? random_skew(f, rng) : f.random(rng);
  return x;
}

Word random_elementary_word(const Field& f, int d, Rng& rng, int n_letters) {
  Word w{d, {}};
  w.letters.reserve(static_cast<std::size_t>(std::max(n_letters, 0)));
  for (int k = 0; k < n_letters; ++k) w.letters.push_back(random_elementary_letter(f, d, rng));
  return w;
}

Mat random_unitary(const FieldPtr& f, int d, Rng& rng, int n_letters) {
  if (n_letters < 0) n_letters = 10 * d * d;
  Word w = random_elementary_word(*f, d, rng, n_letters);
  w.letters.push_back({Family::TorusZeta, 0, 0, {}, static_cast<std::int64_t>(uniform_below(rng, f->order()))});
  if (d % 2 == 1) {
    w.letters.push_back({Family::TorusZeta1, 0, 0, {}, static_cast<std::int64_t>(uniform_below(rng, f->q() + 1))});
  }
  return word_evaluate(f, w);
}

}  // namespace unigauss
