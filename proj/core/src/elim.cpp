#include "unigauss/elim.hpp"

#include <string>

namespace unigauss {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw Error(Errc::kInternal, what);
}

bool a_is_diagonal(const Mat& m, int l) {
  for (int i = 1; i <= l; ++i)
    for (int j = 1; j <= l; ++j)
      if (i != j && m.at(i, j).raw) return false;
  return true;
}

bool c_is_zero(const Mat& m, int l) {
  for (int i = 1; i <= l; ++i)
    for (int j = 1; j <= l; ++j)
      if (m.at(-i, j).raw) return false;
  return true;
}

void check_input(const Mat& g) {
  const int d = g.d();
  if (d < 4) throw Error(Errc::kDimensionTooSmall, "need d >= 4, got " + std::to_string(d));
  if (d % 2 == 1 && g.field().p() == 2) {
    throw Error(Errc::kUnsupportedParity, "odd dimension needs odd characteristic");
  }
  if (!is_unitary(g)) throw Error(Errc::kNotUnitary, "input is not unitary");
}

// Antidiagonal element on (l, 0, -l): n(t, N) with entries N, -N̄/N, 1/N̄.
// Needs N + N̄ = -2 t t̄.
Word antidiagonal_word(const Field& f, int d, Elem t, Elem n) {
  const int l = d / 2;
  const Elem tt = f.mul(t, f.conj(t));
  const Elem nb = f.conj(n);
  const Elem s = f.add(n, tt);
  const Elem a = f.neg(f.div(t, nb));
  const Elem s2 = f.div(s, f.mul(n, nb));
  const Elem t2 = f.div(f.mul(t, n), nb);
  Word w{d, {}};
  auto push = [&](Family fam, Elem p) {
    if (p.raw) w.letters.push_back({fam, l, 0, p, 0});
  };
  push(Family::Xi0, t);
  push(Family::XiNegI, s);
  push(Family::X0i, a);
  push(Family::XNegIi, s2);
  push(Family::Xi0, t2);
  push(Family::XiNegI, s);
  return w;
}

}  // namespace

Mat diag_matrix(const FieldPtr& f, int d, const DiagForm& df) {
  const int l = d / 2;
  if (l < 1 || df.lambda.raw == 0) throw Error(Errc::kInvalidDiagForm, "lambda must be nonzero");
  if ((d % 2 == 1) != df.alpha.has_value()) {
    throw Error(Errc::kInvalidDiagForm, "alpha must be present exactly for odd d");
  }
  if (df.alpha && !f->is_norm_one(*df.alpha)) throw Error(Errc::kInvalidDiagForm, "alpha must have norm 1");
  Mat m = Mat::identity(f, d);
  m.at(l, l) = df.lambda;
  m.at(-l, -l) = f->inv(f->conj(df.lambda));
  if (df.alpha) m(0, 0) = *df.alpha;
  return m;
}

Eliminator::Eliminator(const Mat& g)
    : m_(g), d_(g.d()), l_(g.d() / 2), odd_(g.d() % 2 == 1), right_{g.d(), {}} {}

void Eliminator::left(const Letter& x) {
  if (!is_torus(x.family) && x.param.raw == 0) return;
  apply_left_inplace(x, m_);
  left_applied_.push_back(x);
}

void Eliminator::right(const Letter& x) {
  if (!is_torus(x.family) && x.param.raw == 0) return;
  apply_right_inplace(m_, x);
  right_.letters.push_back(x);
}

int Eliminator::diagonalize_a() {
  const Field& f = m_.field();
  const Elem one = f.one();
  int m = l_;
  for (int k = 1; k <= l_; ++k) {
    int pr = 0, pc = 0;
    for (int c = k; c <= l_ && !pr; ++c) {
      for (int r = k; r <= l_; ++r) {
        if (m_.at(r, c).raw) {
          pr = r;
          pc = c;
          break;
        }
      }
    }
    if (!pr) {
      m = k - 1;
      break;
    }
    if (pr != k) left({Family::Xij, k, pr, one, 0});
    if (pc != k) right({Family::Xij, pc, k, one, 0});
    const Elem ainv = f.inv(m_.at(k, k));
    for (int r = k + 1; r <= l_; ++r) {
      const Elem v = m_.at(r, k);
      if (v.raw) left({Family::Xij, r, k, f.neg(f.mul(v, ainv)), 0});
    }
    for (int c = k + 1; c <= l_; ++c) {
      const Elem v = m_.at(k, c);
      if (v.raw) right({Family::Xij, k, c, f.neg(f.mul(v, ainv)), 0});
    }
  }
  rank_ = m;

  if (m == l_) {
    // diag(a, b) -> diag(1, ab) on the pair (k, l).
    for (int k = 1; k < l_; ++k) {
      const Elem a = m_.at(k, k);
      if (a == one) continue;
      const Elem b = m_.at(l_, l_);
      const Elem one_minus_a = f.sub(one, a);
      left({Family::Xij, k, l_, f.div(one_minus_a, b), 0});
      right({Family::Xij, l_, k, one, 0});
      left({Family::Xij, l_, k, f.neg(b), 0});
      right({Family::Xij, k, l_, f.neg(one_minus_a), 0});
    }
  } else {
    // Borrow the zero row z to turn each a into 1.
    const int z = m + 1;
    for (int k = 1; k <= m; ++k) {
      const Elem a = m_.at(k, k);
      if (a == one) continue;
      left({Family::Xij, z, k, one, 0});
      left({Family::Xij, k, z, f.sub(f.inv(a), one), 0});
      left({Family::Xij, z, k, f.neg(a), 0});
    }
  }
  return m;
}

void Eliminator::clear_xe() {
  if (!odd_) return;
  const Field& f = m_.field();
  const Elem two = f.from_int(2);
  for (int i = 1; i <= rank_; ++i) {
    const Elem x = m_.at(0, i);
    if (x.raw) left({Family::X0i, i, 0, f.neg(f.div(x, m_.at(i, i))), 0});
  }
  for (int i = 1; i <= rank_; ++i) {
    const Elem e = m_.at(i, 0);
    if (e.raw) right({Family::Xi0, i, 0, f.conj(f.div(e, f.mul(two, m_.at(i, i)))), 0});
  }
}

void Eliminator::clear_c() {
  const Field& f = m_.field();
  const int m = rank_;
  if (m == l_) {
    // R = -C A^{-1} is skew-Hermitian.
    std::vector<Elem> r(static_cast<std::size_t>(l_) * l_);
    auto R = [&](int i, int j) -> Elem& { return r[static_cast<std::size_t>(i - 1) * l_ + (j - 1)]; };
    for (int i = 1; i <= l_; ++i) {
      for (int j = 1; j <= l_; ++j) R(i, j) = f.neg(f.div(m_.at(-i, j), m_.at(j, j)));
    }
    for (int i = 1; i <= l_; ++i) {
      require(f.is_skew(R(i, i)), "C A^-1 has a non-skew diagonal");
      for (int j = i + 1; j <= l_; ++j) {
        require(R(j, i) == f.neg(f.conj(R(i, j))), "C A^-1 is not skew-Hermitian");
      }
    }
    for (int i = 1; i <= l_; ++i) {
      for (int j = i + 1; j <= l_; ++j) left({Family::XNegIj, i, j, R(i, j), 0});
      left({Family::XNegIi, i, 0, R(i, i), 0});
    }
    return;
  }
  // A = diag(I_m, 0): C = [[C11, 0], [C21, C22]] with C11 skew-Hermitian.
  std::vector<Letter> pending;
  for (int a = 1; a <= l_; ++a) {
    for (int b = a + 1; b <= l_; ++b) {
      Elem t{0};
      if (b <= m) {
        t = f.neg(m_.at(-a, b));
      } else if (a <= m) {
        t = f.conj(m_.at(-b, a));
      }
      pending.push_back({Family::XNegIj, a, b, t, 0});
    }
    if (a <= m) {
      const Elem s = f.neg(m_.at(-a, a));
      require(f.is_skew(s), "C11 has a non-skew diagonal");
      pending.push_back({Family::XNegIi, a, 0, s, 0});
    }
  }
  for (const auto& x : pending) left(x);
}

void Eliminator::interchange() {
  const Field& f = m_.field();
  for (int i = rank_ + 1; i <= l_; ++i) {
    const Word w = row_interchange(f, d_, i, f.epsilon());
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) left(*it);
  }
}

void Eliminator::clear_b() {
  const Field& f = m_.field();
  // R = -B D^{-1} with D diagonal.
  std::vector<Elem> dinv(static_cast<std::size_t>(l_) + 1);
  for (int j = 1; j <= l_; ++j) dinv[j] = f.inv(m_.at(-j, -j));
  std::vector<Letter> pending;
  for (int i = 1; i <= l_; ++i) {
    for (int j = i + 1; j <= l_; ++j) {
      pending.push_back({Family::XiNegJ, i, j, f.neg(f.mul(m_.at(i, -j), dinv[j])), 0});
    }
    const Elem s = f.neg(f.mul(m_.at(i, -i), dinv[i]));
    require(f.is_skew(s), "B D^-1 has a non-skew diagonal");
    pending.push_back({Family::XiNegI, i, 0, s, 0});
  }
  for (const auto& x : pending) left(x);
}

void Eliminator::step2_even() {
  clear_c();
  if (rank_ < l_) {
    interchange();
    diagonalize_a();
    require(rank_ == l_, "A still singular after row interchange");
    clear_c();
  }
}

void Eliminator::step3_odd() {
  clear_c();
  if (rank_ < l_) interchange();
}

void Eliminator::step4_odd() {
  if (rank_ == l_) return;
  diagonalize_a();
  require(rank_ == l_, "A still singular after row interchange");
  clear_xe();
  clear_c();
}

void Eliminator::run() {
  if (odd_) {
    step1_odd();
    step2_odd();
    step3_odd();
    step4_odd();
    step5_odd();
  } else {
    step1_even();
    step2_even();
    step3_even();
  }
}

Word Eliminator::left_word() const {
  Word w{d_, {left_applied_.rbegin(), left_applied_.rend()}};
  return w;
}

Decomposition Eliminator::result() const {
  Decomposition dec;
  dec.d = d_;
  dec.left = left_word();
  dec.right = right_;
  dec.diag.lambda = m_.at(l_, l_);
  if (odd_) dec.diag.alpha = m_(0, 0);
  return dec;
}

Decomposition decompose(const Mat& g, const DecomposeOptions& opts) {
  if (opts.validate_input) {
    check_input(g);
  } else if (g.d() < 4) {
    throw Error(Errc::kDimensionTooSmall, "need d >= 4");
  }
  Eliminator el(g);
  if (!opts.check_steps) {
    el.run();
    return el.result();
  }
  const int l = el.l();
  if (el.odd()) {
    el.step1_odd();
    require(a_is_diagonal(el.state(), l), "step 1: A not diagonal");
    el.step2_odd();
    for (int i = 1; i <= el.rank(); ++i) {
      require(el.state().at(0, i).raw == 0 && el.state().at(i, 0).raw == 0, "step 2: X or E not cleared");
    }
    el.step3_odd();
    el.step4_odd();
    const Mat& s = el.state();
    require(c_is_zero(s, l), "step 4: C not cleared");
    for (int i = 1; i <= l; ++i) {
      require(s.at(0, i).raw == 0 && s.at(i, 0).raw == 0, "step 4: X or E not zero");
      require(s.at(0, -i).raw == 0 && s.at(-i, 0).raw == 0, "step 4: Y or F not zero");
    }
    require(s.field().is_norm_one(s(0, 0)), "step 4: alpha not of norm 1");
    el.step5_odd();
  } else {
    el.step1_even();
    require(a_is_diagonal(el.state(), l), "step 1: A not diagonal");
    el.step2_even();
    require(c_is_zero(el.state(), l), "step 2: C not cleared");
    el.step3_even();
  }
  Decomposition dec = el.result();
  require(el.state() == diag_matrix(g.field_ptr(), g.d(), dec.diag), "final state is not the normal form");
  return dec;
}

Word word_for(const Mat& g) {
  const Decomposition dec = decompose(g);
  const Field& f = g.field();
  Word w = word_inverse(f, dec.left);
  try {
    const auto k = discrete_log(f, f.zeta(), dec.diag.lambda);
    if (k) w.letters.push_back({Family::TorusZeta, 0, 0, {}, static_cast<std::int64_t>(k)});
    if (dec.diag.alpha) {
      const auto j = discrete_log(f, f.zeta1(), *dec.diag.alpha);
      if (j) w.letters.push_back({Family::TorusZeta1, 0, 0, {}, static_cast<std::int64_t>(j)});
    }
  } catch (const Error& e) {
    if (e.code() == Errc::kTargetNotInSubgroup) throw Error(Errc::kInternal, e.what());
    throw;
  }
  return concat(std::move(w), word_inverse(f, dec.right));
}

Word reduce_su_to_identity(const Mat& g) {
  check_input(g);
  const Field& f = g.field();
  if (det(g) != f.one()) throw Error(Errc::kNotSpecialUnitary, "determinant is not 1");
  const Decomposition dec = decompose(g, {.validate_input = false});
  const int d = g.d(), l = d / 2;
  const Elem lambda = dec.diag.lambda;
  const Elem eps = f.epsilon();
  Word tail{d, {}};
  if (lambda != f.one()) {
    if (f.in_subfield(lambda)) {
      // w(eps*lambda) w(-eps) = diag(lambda, lambda^-1) on (l, -l).
      require(!dec.diag.alpha || *dec.diag.alpha == f.one(), "alpha must be 1 when lambda is in F_q");
      tail = concat(row_interchange(f, d, l, f.mul(eps, lambda)), row_interchange(f, d, l, f.neg(eps)));
    } else {
      require(dec.diag.alpha.has_value(), "even SU element with lambda outside F_q");
      // n(1, N) n(0, N0)^-1 = diag(lambda, conj(lambda)/lambda, conj(lambda)^-1) on (l, 0, -l).
      const Elem c0 = f.neg(f.div(f.from_int(2), f.mul(eps, f.sub(lambda, f.conj(lambda)))));
      const Elem n0 = f.mul(c0, eps);
      const Elem n = f.mul(lambda, n0);
      tail = concat(antidiagonal_word(f, d, f.one(), n), word_inverse(f, antidiagonal_word(f, d, f.zero(), n0)));
    }
  }
  Word w = word_inverse(f, dec.left);
  w = concat(std::move(w), tail);
  return concat(std::move(w), word_inverse(f, dec.right));
}

}  // namespace unigauss
