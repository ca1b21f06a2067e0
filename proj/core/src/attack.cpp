#include "unigauss/attack.hpp"

#include <vector>

namespace unigauss {

namespace {

[[noreturn]] void inconsistent(const char* what) { throw Error(Errc::kInconsistentOracle, what); }

std::vector<Elem> column(const Mat& m, int c) {
  std::vector<Elem> v(static_cast<std::size_t>(m.d()));
  for (int r = 0; r < m.d(); ++r) v[r] = m(r, c);
  return v;
}

int first_nonzero(const std::vector<Elem>& v) {
  for (std::size_t k = 0; k < v.size(); ++k)
    if (v[k].raw) return static_cast<int>(k);
  return -1;
}

bool parallel(const Field& f, const std::vector<Elem>& v, const std::vector<Elem>& w) {
  const int r0 = first_nonzero(v);
  if (r0 < 0) return true;
  const Elem c = f.div(w[r0], v[r0]);
  for (std::size_t k = 0; k < v.size(); ++k)
    if (w[k] != f.mul(c, v[k])) return false;
  return true;
}

// First nonzero column of phi(x) - I, which must have rank 1.
std::vector<Elem> rank_one_column(const Mat& image) {
  const Field& f = image.field();
  const Mat q = sub(image, Mat::identity(image.field_ptr(), image.d()));
  std::vector<Elem> v;
  for (int c = 0; c < q.d() && v.empty(); ++c) {
    auto col = column(q, c);
    if (first_nonzero(col) >= 0) v = std::move(col);
  }
  if (v.empty()) inconsistent("image of a nontrivial letter is the identity");
  for (int c = 0; c < q.d(); ++c) {
    if (!parallel(f, v, column(q, c))) inconsistent("image difference is not rank one");
  }
  return v;
}

Mat invert_or_fail(const Mat& n) {
  try {
    return inverse(n);
  } catch (const Error&) {
    inconsistent("extracted columns are dependent");
  }
}

Elem nonzero(Elem x) {
  if (x.raw == 0) inconsistent("ratio read-off gave zero");
  return x;
}

struct Columns {
  Mat n;                        // columns d_k G_k
  std::vector<Elem> col_scale;  // d_1 / d_k by position
};

// Shared part for both parities: columns for k != 0 and the ratios d_1/d_k.
Columns even_part(AutomorphismOracle& oracle, int d, const FieldPtr& f, const std::vector<Elem>* col0) {
  const int l = d / 2;
  const Elem eps = f->epsilon();
  Mat n(f, d);
  for (int i = 1; i <= l; ++i) {
    const auto vi = rank_one_column(oracle({Family::XiNegI, i, 0, eps, 0}));
    const auto vmi = rank_one_column(oracle({Family::XNegIi, i, 0, eps, 0}));
    for (int r = 0; r < d; ++r) {
      n(r, pos(d, i)) = vi[r];
      n(r, pos(d, -i)) = vmi[r];
    }
  }
  if (col0) {
    for (int r = 0; r < d; ++r) n(r, 0) = (*col0)[r];
  }
  return {n, std::vector<Elem>(static_cast<std::size_t>(d), Elem{0})};
}

void read_ratios(AutomorphismOracle& oracle, int d, const Field& f, Columns& cols, const Mat& ninv) {
  const int l = d / 2;
  auto conj_by = [&](const Letter& x) { return mul(mul(ninv, oracle(x)), cols.n); };
  // D^-1 x_{1,-1}(eps) D has eps d_{-1}/d_1 at (1,-1).
  const Mat t1 = conj_by({Family::XiNegI, 1, 0, f.epsilon(), 0});
  const Elem r_m1 = nonzero(f.div(t1.at(1, -1), f.epsilon()));  // d_{-1}/d_1
  cols.col_scale[pos(d, 1)] = f.one();
  cols.col_scale[pos(d, -1)] = f.inv(r_m1);
  for (int j = 2; j <= l; ++j) {
    // D^-1 x_{1,j}(1) D: d_j/d_1 at (1,j), -d_{-1}/d_{-j} at (-j,-1).
    const Mat t = conj_by({Family::Xij, 1, j, f.one(), 0});
    const Elem rj = nonzero(t.at(1, j));
    const Elem sj = nonzero(t.at(-j, -1));
    cols.col_scale[pos(d, j)] = f.inv(rj);
    cols.col_scale[pos(d, -j)] = f.mul(f.inv(r_m1), f.neg(sj));
  }
}

Mat scaled(const Columns& cols) {
  const Field& f = cols.n.field();
  Mat g = cols.n;
  for (int c = 0; c < g.d(); ++c)
    for (int r = 0; r < g.d(); ++r) g(r, c) = f.mul(g(r, c), cols.col_scale[c]);
  return g;
}

}  // namespace

AutomorphismOracle conjugation_oracle(const Mat& n) {
  const Mat ninv = inverse(n);
  const FieldPtr f = n.field_ptr();
  const int d = n.d();
  return AutomorphismOracle(f, d, [n, ninv, f, d](const Letter& x) {
    return mul(mul(n, letter_matrix(f, d, x)), ninv);
  });
}

AutomorphismOracle automorphism_oracle(const Automorphism& aut) {
  const auto gens = aut.gens();
  return AutomorphismOracle(gens->field_ptr(), gens->d(), [aut, gens](const Letter& x) {
    const auto& ls = gens->letters();
    for (std::size_t k = 0; k < ls.size(); ++k) {
      if (ls[k] == x) return aut.images()[k];
    }
    return apply(aut, letter_matrix(gens->field_ptr(), gens->d(), x));
  });
}

Mat recover_conjugator_even(AutomorphismOracle& oracle, int l, const FieldPtr& f) {
  const int d = 2 * l;
  if (l < 2) throw Error(Errc::kDimensionTooSmall, "need d >= 4");
  if (oracle.d() != d) throw Error(Errc::kInvalidArgument, "oracle dimension mismatch");
  Columns cols = even_part(oracle, d, f, nullptr);
  const Mat ninv = invert_or_fail(cols.n);
  read_ratios(oracle, d, *f, cols, ninv);
  return scaled(cols);
}

Mat recover_conjugator_odd(AutomorphismOracle& oracle, int l, const FieldPtr& f) {
  const int d = 2 * l + 1;
  if (l < 2) throw Error(Errc::kDimensionTooSmall, "need d >= 5");
  if (f->p() == 2) throw Error(Errc::kUnsupportedParity, "odd dimension needs odd characteristic");
  if (oracle.d() != d) throw Error(Errc::kInvalidArgument, "oracle dimension mismatch");
  const Letter x01{Family::X0i, 1, 0, f->one(), 0};
  const Mat img01 = oracle(x01);
  Columns cols = even_part(oracle, d, f, nullptr);
  // phi(x_{0,1}(1)) - I has columns alpha G_0 + beta G_{-1}; take one off the G_{-1} line.
  const Mat q = sub(img01, Mat::identity(f, d));
  const auto vm1 = column(cols.n, pos(d, -1));
  std::vector<Elem> w;
  for (int c = 0; c < d && w.empty(); ++c) {
    auto col = column(q, c);
    if (!parallel(*f, vm1, col)) w = std::move(col);
  }
  if (w.empty()) inconsistent("no column with a G_0 component");
  for (int r = 0; r < d; ++r) cols.n(r, 0) = w[r];
  const Mat ninv = invert_or_fail(cols.n);
  read_ratios(oracle, d, *f, cols, ninv);

  // T^-1 x_{0,1}(1) T: d_1/alpha at (0,1), -(beta/alpha + 1) d_1/d_{-1} at (-1,1).
  const Mat t0 = mul(mul(ninv, img01), cols.n);
  const Elem a = nonzero(t0.at(0, 1));
  const Elem d1_over_dm1 = cols.col_scale[pos(d, -1)];
  const Elem beta_over_alpha = f->neg(f->add(f->div(t0.at(-1, 1), d1_over_dm1), f->one()));
  // d_1 G_0 = a w - (beta/alpha)(d_1/d_{-1}) v_{-1}
  const Elem cm1 = f->mul(beta_over_alpha, d1_over_dm1);
  Mat g = scaled(cols);
  for (int r = 0; r < d; ++r) g(r, 0) = f->sub(f->mul(a, w[r]), f->mul(cm1, vm1[r]));
  return g;
}

bool verify_recovery(const Mat& g_prime, AutomorphismOracle& oracle, const GeneratorSet& gens) {
  Mat ginv;
  try {
    ginv = inverse(g_prime);
  } catch (const Error&) {
    return false;
  }
  for (const auto& x : gens.letters()) {
    const Mat lhs = mul(mul(g_prime, letter_matrix(gens.field_ptr(), gens.d(), x)), ginv);
    if (!(lhs == oracle(x))) return false;
  }
  return true;
}

}  // namespace unigauss
