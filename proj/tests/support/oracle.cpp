#include "oracle.hpp"

#include <stdexcept>

namespace unigauss::testing {

NaiveField::NaiveField(std::uint32_t p, std::uint32_t e, const std::vector<std::uint32_t>& fq_mod, const Fq& c0,
                       const Fq& c1)
    : p_(p), e_(e), q_(1), fq_mod_(fq_mod), c0_(c0), c1_(c1) {
  for (std::uint32_t k = 0; k < e; ++k) q_ *= p;
}

NaiveField NaiveField::from(const Field& f) {
  auto fq = [&](std::uint64_t code) {
    Fq out(f.e());
    for (auto& c : out) {
      c = static_cast<std::uint32_t>(code % f.p());
      code /= f.p();
    }
    return out;
  };
  const auto m = f.fk_modulus();
  return NaiveField(f.p(), f.e(), f.fq_modulus(), fq(m[0]), fq(m[1]));
}

NaiveField::K NaiveField::from_code(std::uint64_t code) const {
  K x{Fq(e_), Fq(e_)};
  for (auto& c : x.a0) {
    c = static_cast<std::uint32_t>(code % p_);
    code /= p_;
  }
  for (auto& c : x.a1) {
    c = static_cast<std::uint32_t>(code % p_);
    code /= p_;
  }
  return x;
}

std::uint64_t NaiveField::code(const K& x) const {
  std::uint64_t c = 0;
  for (std::uint32_t k = e_; k-- > 0;) c = c * p_ + x.a1[k];
  for (std::uint32_t k = e_; k-- > 0;) c = c * p_ + x.a0[k];
  return c;
}

NaiveField::Fq NaiveField::fq_add(const Fq& a, const Fq& b) const {
  Fq r(e_);
  for (std::uint32_t k = 0; k < e_; ++k) r[k] = (a[k] + b[k]) % p_;
  return r;
}

NaiveField::Fq NaiveField::fq_mul(const Fq& a, const Fq& b) const {
  std::vector<std::uint64_t> t(2 * e_, 0);
  for (std::uint32_t i = 0; i < e_; ++i) {
    for (std::uint32_t j = 0; j < e_; ++j) t[i + j] = (t[i + j] + std::uint64_t(a[i]) * b[j]) % p_;
  }
  // x^e = -(m_0 + m_1 x + ... + m_{e-1} x^{e-1})
  for (std::uint32_t k = 2 * e_ - 1; k >= e_ && k > 0; --k) {
    const std::uint64_t c = t[k];
    if (!c) continue;
    t[k] = 0;
    for (std::uint32_t j = 0; j < e_; ++j) t[k - e_ + j] = (t[k - e_ + j] + (p_ - fq_mod_[j]) * c) % p_;
  }
  Fq r(e_);
  for (std::uint32_t k = 0; k < e_; ++k) r[k] = static_cast<std::uint32_t>(t[k]);
  return r;
}

NaiveField::K NaiveField::add(const K& x, const K& y) const { return {fq_add(x.a0, y.a0), fq_add(x.a1, y.a1)}; }

NaiveField::K NaiveField::mul(const K& x, const K& y) const {
  auto neg = [&](Fq a) {
    for (auto& c : a) c = (p_ - c) % p_;
    return a;
  };
  const Fq t = fq_mul(x.a1, y.a1);  // coefficient of u^2
  const Fq r0 = fq_add(fq_mul(x.a0, y.a0), neg(fq_mul(c0_, t)));
  const Fq r1 = fq_add(fq_add(fq_mul(x.a0, y.a1), fq_mul(x.a1, y.a0)), neg(fq_mul(c1_, t)));
  return {r0, r1};
}

NaiveField::K NaiveField::one() const {
  K x{Fq(e_), Fq(e_)};
  x.a0[0] = 1;
  return x;
}

NaiveField::K NaiveField::pow(K x, std::uint64_t k) const {
  K r = one();
  while (k) {
    if (k & 1) r = mul(r, x);
    x = mul(x, x);
    k >>= 1;
  }
  return r;
}

std::uint64_t NaiveField::order_of(const K& x) const {
  K y = x;
  std::uint64_t k = 1;
  while (!(y == one())) {
    y = mul(y, x);
    ++k;
  }
  return k;
}

bool naive_irreducible(const std::vector<std::uint32_t>& f, std::uint32_t p) {
  const std::size_t n = f.size() - 1;
  for (std::size_t deg = 1; 2 * deg <= n; ++deg) {
    std::uint64_t count = 1;
    for (std::size_t k = 0; k < deg; ++k) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::vector<std::int64_t> g(deg + 1);
      std::uint64_t t = idx;
      for (std::size_t k = 0; k < deg; ++k) {
        g[k] = static_cast<std::int64_t>(t % p);
        t /= p;
      }
      g[deg] = 1;
      std::vector<std::int64_t> r(f.begin(), f.end());
      for (std::size_t k = n; k >= deg; --k) {
        const std::int64_t c = r[k] % p;
        if (c) {
          for (std::size_t j = 0; j <= deg; ++j) r[k - deg + j] = ((r[k - deg + j] - c * g[j]) % p + p) % p;
        }
        if (k == deg) break;
      }
      bool zero = true;
      for (std::size_t k = 0; k < deg; ++k) zero = zero && r[k] % p == 0;
      if (zero) return false;
    }
  }
  return true;
}

namespace {

void set(Mat& m, int i, int j, Elem v) { m.at(i, j) = v; }

}  // namespace

Mat oracle_letter(const FieldPtr& fp, int d, const Letter& x) {
  const Field& f = *fp;
  const int l = d / 2;
  Mat m(fp, d);
  for (int r = 0; r < d; ++r) m(r, r) = f.one();
  const Elem t = x.param, tb = f.conj(x.param);
  const int i = x.i, j = x.j;
  switch (x.family) {
    case Family::Xij:
      set(m, i, j, t);
      set(m, -j, -i, f.neg(tb));
      break;
    case Family::XiNegJ:
      set(m, i, -j, t);
      set(m, j, -i, f.neg(tb));
      break;
    case Family::XNegIj:
      set(m, -i, j, t);
      set(m, -j, i, f.neg(tb));
      break;
    case Family::XiNegI:
      set(m, i, -i, t);
      break;
    case Family::XNegIi:
      set(m, -i, i, t);
      break;
    case Family::Xi0:
      set(m, i, 0, f.neg(f.add(tb, tb)));
      set(m, i, -i, f.neg(f.mul(t, tb)));
      set(m, 0, -i, t);
      break;
    case Family::X0i:
      set(m, -i, 0, f.neg(f.add(tb, tb)));
      set(m, -i, i, f.neg(f.mul(t, tb)));
      set(m, 0, i, t);
      break;
    case Family::TorusZeta: {
      Elem z = f.one();
      const auto n = static_cast<std::int64_t>(f.order());
      for (std::int64_t k = 0; k < ((x.exponent % n) + n) % n; ++k) z = f.mul(z, f.zeta());
      set(m, l, l, z);
      set(m, -l, -l, f.inv(f.conj(z)));
      break;
    }
    case Family::TorusZeta1: {
      Elem z = f.one();
      const auto n = static_cast<std::int64_t>(f.q() + 1);
      for (std::int64_t k = 0; k < ((x.exponent % n) + n) % n; ++k) z = f.mul(z, f.zeta1());
      set(m, 0, 0, z);
      break;
    }
  }
  return m;
}

Mat naive_mul(const Mat& a, const Mat& b) {
  const Field& f = a.field();
  const int d = a.d();
  Mat c(a.field_ptr(), d);
  for (int r = 0; r < d; ++r) {
    for (int s = 0; s < d; ++s) {
      Elem acc = f.zero();
      for (int k = 0; k < d; ++k) acc = f.add(acc, f.mul(a(r, k), b(k, s)));
      c(r, s) = acc;
    }
  }
  return c;
}

Mat naive_conj_transpose(const Mat& a) {
  Mat c(a.field_ptr(), a.d());
  for (int r = 0; r < a.d(); ++r) {
    for (int s = 0; s < a.d(); ++s) c(s, r) = a.field().conj(a(r, s));
  }
  return c;
}

Elem naive_det(const Mat& a0) {
  const Field& f = a0.field();
  Mat a = a0;
  const int d = a.d();
  Elem det = f.one();
  for (int c = 0; c < d; ++c) {
    int piv = -1;
    for (int r = c; r < d && piv < 0; ++r) {
      if (!f.is_zero(a(r, c))) piv = r;
    }
    if (piv < 0) return f.zero();
    if (piv != c) {
      for (int k = 0; k < d; ++k) std::swap(a(piv, k), a(c, k));
      det = f.neg(det);
    }
    det = f.mul(det, a(c, c));
    const Elem iv = f.inv(a(c, c));
    for (int r = c + 1; r < d; ++r) {
      const Elem m = f.mul(a(r, c), iv);
      if (f.is_zero(m)) continue;
      for (int k = c; k < d; ++k) a(r, k) = f.sub(a(r, k), f.mul(m, a(c, k)));
    }
  }
  return det;
}

Mat naive_inverse(const Mat& a0) {
  const Field& f = a0.field();
  Mat a = a0;
  const int d = a.d();
  Mat b(a.field_ptr(), d);
  for (int r = 0; r < d; ++r) b(r, r) = f.one();
  for (int c = 0; c < d; ++c) {
    int piv = -1;
    for (int r = c; r < d && piv < 0; ++r) {
      if (!f.is_zero(a(r, c))) piv = r;
    }
    if (piv < 0) throw std::runtime_error("singular");
    for (int k = 0; k < d; ++k) {
      std::swap(a(piv, k), a(c, k));
      std::swap(b(piv, k), b(c, k));
    }
    const Elem iv = f.inv(a(c, c));
    for (int k = 0; k < d; ++k) {
      a(c, k) = f.mul(a(c, k), iv);
      b(c, k) = f.mul(b(c, k), iv);
    }
    for (int r = 0; r < d; ++r) {
      if (r == c || f.is_zero(a(r, c))) continue;
      const Elem m = a(r, c);
      for (int k = 0; k < d; ++k) {
        a(r, k) = f.sub(a(r, k), f.mul(m, a(c, k)));
        b(r, k) = f.sub(b(r, k), f.mul(m, b(c, k)));
      }
    }
  }
  return b;
}

Mat form_matrix(const FieldPtr& f, int d) {
  Mat b(f, d);
  for (int i = 1; i <= d / 2; ++i) {
    b.at(i, -i) = f->one();
    b.at(-i, i) = f->one();
  }
  if (d % 2) b.at(0, 0) = f->add(f->one(), f->one());
  return b;
}

bool naive_unitary(const Mat& x) {
  const Mat b = form_matrix(x.field_ptr(), x.d());
  return naive_mul(naive_mul(naive_conj_transpose(x), b), x) == b;
}

bool is_skew_hermitian(const Mat& x) {
  const Field& f = x.field();
  for (int r = 0; r < x.d(); ++r) {
    for (int s = 0; s < x.d(); ++s) {
      if (!f.is_zero(f.add(x(r, s), f.conj(x(s, r))))) return false;
    }
  }
  return true;
}

Mat block(const Mat& x, const std::vector<int>& rows, const std::vector<int>& cols) {
  if (rows.size() != cols.size()) throw std::invalid_argument("square blocks only");
  Mat b(x.field_ptr(), static_cast<int>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) b(static_cast<int>(r), static_cast<int>(c)) = x.at(rows[r], cols[c]);
  }
  return b;
}

std::vector<int> plus_indices(int l) {
  std::vector<int> v;
  for (int i = 1; i <= l; ++i) v.push_back(i);
  return v;
}

std::vector<int> minus_indices(int l) {
  std::vector<int> v;
  for (int i = 1; i <= l; ++i) v.push_back(-i);
  return v;
}

std::vector<Letter> all_elementary_letters(const Field& f, int d) {
  const int l = d / 2;
  std::vector<Elem> all, skew;
  for (std::uint64_t c = 0; c < f.size(); ++c) {
    all.push_back(f.from_code(c));
    if (f.is_skew(all.back())) skew.push_back(all.back());
  }
  std::vector<Letter> out;
  auto push = [&](Family fam, int i, int j, const std::vector<Elem>& params) {
    for (Elem t : params) out.push_back({fam, i, j, t, 0});
  };
  for (int i = 1; i <= l; ++i) {
    for (int j = 1; j <= l; ++j) {
      if (i != j) push(Family::Xij, i, j, all);
      if (i < j) {
        push(Family::XiNegJ, i, j, all);
        push(Family::XNegIj, i, j, all);
      }
    }
    push(Family::XiNegI, i, 0, skew);
    push(Family::XNegIi, i, 0, skew);
    if (d % 2) {
      push(Family::Xi0, i, 0, all);
      push(Family::X0i, i, 0, all);
    }
  }
  return out;
}

Mat rank_deficient_unitary(const FieldPtr& f, int d, Rng& rng, int deficiency) {
  const int l = d / 2;
  const bool odd = d % 2 == 1;
  auto levi = [&](Word& w, int n) {
    for (int k = 0; k < n && l >= 2; ++k) {
      const int i = 1 + static_cast<int>(uniform_below(rng, l));
      int j = 1 + static_cast<int>(uniform_below(rng, l - 1));
      if (j >= i) ++j;
      w.letters.push_back({Family::Xij, i, j, f->random(rng), 0});
    }
  };
  Word w{d, {}};
  levi(w, 2 * d);
  // w_{i,-i} over the last `deficiency` indices after a random Levi shuffle
  std::vector<int> idx = plus_indices(l);
  for (int k = l - 1; k > 0; --k) std::swap(idx[k], idx[uniform_below(rng, k + 1)]);
  for (int k = 0; k < deficiency; ++k) w = concat(w, row_interchange(*f, d, idx[k], f->epsilon()));
  // block upper triangular part
  for (int k = 0; k < 4 * d; ++k) {
    const int pick = static_cast<int>(uniform_below(rng, odd ? 4 : 3));
    const int i = 1 + static_cast<int>(uniform_below(rng, l));
    if (pick == 0) {
      levi(w, 1);
    } else if (pick == 1 && l >= 2) {
      int j = 1 + static_cast<int>(uniform_below(rng, l - 1));
      if (j >= i) ++j;
      w.letters.push_back({Family::XiNegJ, std::min(i, j), std::max(i, j), f->random(rng), 0});
    } else if (pick == 3) {
      w.letters.push_back({Family::Xi0, i, 0, f->random(rng), 0});
    } else {
      w.letters.push_back({Family::XiNegI, i, 0, random_skew(*f, rng), 0});
    }
  }
  w.letters.push_back({Family::TorusZeta, 0, 0, {}, static_cast<std::int64_t>(uniform_below(rng, f->order()))});
  levi(w, 2 * d);
  if (odd) w.letters.push_back({Family::TorusZeta1, 0, 0, {}, static_cast<std::int64_t>(uniform_below(rng, f->q() + 1))});
  return word_evaluate(f, w);
}

}  // namespace unigauss::testing
