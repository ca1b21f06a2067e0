#include "unigauss/linalg.hpp"

#include <string>

namespace unigauss {

namespace {

void check_compatible(const Mat& x, const Mat& y) {
  if (x.d() != y.d() || !same_field(x.field(), y.field())) {
    throw Error(Errc::kInvalidArgument, "matrix dimensions or fields differ");
  }
}

// β·X as a row permutation (and a factor 2 on row 0 for odd d).
Mat beta_times(const Mat& x) {
  const int d = x.d(), l = d / 2, off = d % 2;
  const Field& f = x.field();
  Mat r(x.field_ptr(), d);
  if (off) {
    const Elem two = f.from_int(2);
    for (int c = 0; c < d; ++c) r(0, c) = f.mul(two, x(0, c));
  }
  for (int i = 0; i < l; ++i) {
    for (int c = 0; c < d; ++c) {
      r(off + i, c) = x(off + l + i, c);
      r(off + l + i, c) = x(off + i, c);
    }
  }
  return r;
}

}  // namespace

bool same_field(const Field& a, const Field& b) {
  return &a == &b || (a.p() == b.p() && a.e() == b.e() && a.uses_tables() == b.uses_tables());
}

Mat Mat::identity(FieldPtr f, int d) {
  Mat m(std::move(f), d);
  for (int i = 0; i < d; ++i) m(i, i) = Elem{1};
  return m;
}

bool Mat::is_identity() const {
  for (int r = 0; r < d_; ++r) {
    for (int c = 0; c < d_; ++c) {
      if ((*this)(r, c).raw != (r == c ? 1u : 0u)) return false;
    }
  }
  return true;
}

bool Mat::is_scalar() const {
  if (d_ == 0) return true;
  const Elem c0 = (*this)(0, 0);
  for (int r = 0; r < d_; ++r) {
    for (int c = 0; c < d_; ++c) {
      if ((*this)(r, c) != (r == c ? c0 : Elem{0})) return false;
    }
  }
  return true;
}

bool operator==(const Mat& x, const Mat& y) {
  if (x.d_ != y.d_) return false;
  if (x.d_ == 0) return true;
  return same_field(*x.f_, *y.f_) && x.a_ == y.a_;
}

Mat mul(const Mat& x, const Mat& y) {
  check_compatible(x, y);
  const Field& f = x.field();
  const int d = x.d();
  Mat r(x.field_ptr(), d);
  for (int i = 0; i < d; ++i) {
    Elem* acc = r.row(i);
    const Elem* xr = x.row(i);
    for (int k = 0; k < d; ++k) {
      const Elem a = xr[k];
      if (a.raw == 0) continue;
      const Elem* yr = y.row(k);
      for (int j = 0; j < d; ++j) {
        if (yr[j].raw) acc[j] = f.add(acc[j], f.mul(a, yr[j]));
      }
    }
  }
  return r;
}

Mat add(const Mat& x, const Mat& y) {
  check_compatible(x, y);
  Mat r = x;
  for (int i = 0; i < x.d(); ++i)
    for (int j = 0; j < x.d(); ++j) r(i, j) = x.field().add(x(i, j), y(i, j));
  return r;
}

Mat sub(const Mat& x, const Mat& y) {
  check_compatible(x, y);
  Mat r = x;
  for (int i = 0; i < x.d(); ++i)
    for (int j = 0; j < x.d(); ++j) r(i, j) = x.field().sub(x(i, j), y(i, j));
  return r;
}

Mat scale(const Mat& x, Elem c) {
  Mat r = x;
  for (int i = 0; i < x.d(); ++i)
    for (int j = 0; j < x.d(); ++j) r(i, j) = x.field().mul(c, x(i, j));
  return r;
}

Mat conj_transpose(const Mat& x) {
  Mat r(x.field_ptr(), x.d());
  for (int i = 0; i < x.d(); ++i)
    for (int j = 0; j < x.d(); ++j) r(i, j) = x.field().conj(x(j, i));
  return r;
}

Elem det(const Mat& x) {
  const Field& f = x.field();
  const int d = x.d();
  Mat a = x;
  Elem result = f.one();
  for (int k = 0; k < d; ++k) {
    int piv = k;
    while (piv < d && a(piv, k).raw == 0) ++piv;
    if (piv == d) return f.zero();
    if (piv != k) {
      for (int c = 0; c < d; ++c) std::swap(a(k, c), a(piv, c));
      result = f.neg(result);
    }
    const Elem p = a(k, k);
    result = f.mul(result, p);
    const Elem pinv = f.inv(p);
    for (int r = k + 1; r < d; ++r) {
      if (a(r, k).raw == 0) continue;
      const Elem t = f.neg(f.mul(a(r, k), pinv));
      for (int c = k; c < d; ++c) a(r, c) = f.add(a(r, c), f.mul(t, a(k, c)));
    }
  }
  return result;
}

Mat inverse(const Mat& x) {
  const Field& f = x.field();
  const int d = x.d();
  Mat a = x;
  Mat inv = Mat::identity(x.field_ptr(), d);
  for (int k = 0; k < d; ++k) {
    int piv = k;
    while (piv < d && a(piv, k).raw == 0) ++piv;
    if (piv == d) throw Error(Errc::kSingularMatrix, "matrix is singular");
    if (piv != k) {
      for (int c = 0; c < d; ++c) {
        std::swap(a(k, c), a(piv, c));
        std::swap(inv(k, c), inv(piv, c));
      }
    }
    const Elem pinv = f.inv(a(k, k));
    for (int c = 0; c < d; ++c) {
      a(k, c) = f.mul(a(k, c), pinv);
      inv(k, c) = f.mul(inv(k, c), pinv);
    }
    for (int r = 0; r < d; ++r) {
      if (r == k || a(r, k).raw == 0) continue;
      const Elem t = f.neg(a(r, k));
      for (int c = 0; c < d; ++c) {
        a(r, c) = f.add(a(r, c), f.mul(t, a(k, c)));
        inv(r, c) = f.add(inv(r, c), f.mul(t, inv(k, c)));
      }
    }
  }
  return inv;
}

Mat diag(FieldPtr f, const std::vector<Elem>& entries) {
  const int d = static_cast<int>(entries.size());
  Mat m(std::move(f), d);
  for (int i = 0; i < d; ++i) m(i, i) = entries[i];
  return m;
}

HermitianForm hermitian_form(FieldPtr f, int d) {
  if (d < 1) throw Error(Errc::kDimensionTooSmall, "dimension must be positive");
  if (d % 2 == 1 && f->p() == 2) {
    throw Error(Errc::kUnsupportedParity, "odd dimension needs odd characteristic");
  }
  const int l = d / 2;
  Mat b(f, d);
  for (int i = 1; i <= l; ++i) {
    b.at(i, -i) = f->one();
    b.at(-i, i) = f->one();
  }
  if (d % 2) b(0, 0) = f->from_int(2);
  return {d, b};
}

bool is_unitary(const Mat& x, const HermitianForm& form) {
  if (form.d != x.d()) throw Error(Errc::kInvalidArgument, "form dimension mismatch");
  return mul(mul(conj_transpose(x), form.matrix), x) == form.matrix;
}

bool is_unitary(const Mat& x) {
  const auto mu = similitude_multiplier(x);
  return mu && *mu == x.field().one();
}

bool is_special_unitary(const Mat& x) { return is_unitary(x) && det(x) == x.field().one(); }

std::optional<Elem> similitude_multiplier(const Mat& x) {
  const int d = x.d();
  if (d < 2 || (d % 2 == 1 && x.field().p() == 2)) return std::nullopt;
  const Mat g = mul(conj_transpose(x), beta_times(x));
  const Elem mu = g.at(1, -1);
  const Field& f = x.field();
  if (mu.raw == 0 || !f.in_subfield(mu)) return std::nullopt;
  if (!(g == scale(hermitian_form(x.field_ptr(), d).matrix, mu))) return std::nullopt;
  return mu;
}

}  // namespace unigauss
