#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "unigauss/gf.hpp"

namespace unigauss {

// Signed index (1..l, -1..-l, and 0 for odd d) to storage position.
inline int pos(int d, int i) {
  const int l = d / 2;
  if (d % 2 == 0) return i > 0 ? i - 1 : l - i - 1;
  return i >= 0 ? i : l - i;
}

// Dense d x d matrix over F_{q^2}, row-major in the canonical index order.
class Mat {
 public:
  Mat() = default;
  Mat(FieldPtr f, int d) : f_(std::move(f)), d_(d), a_(static_cast<std::size_t>(d) * d) {}

  static Mat identity(FieldPtr f, int d);

  int d() const { return d_; }
  const Field& field() const { return *f_; }
  const FieldPtr& field_ptr() const { return f_; }

  Elem& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * d_ + c]; }
  Elem operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * d_ + c]; }
  Elem* row(int r) { return a_.data() + static_cast<std::size_t>(r) * d_; }
  const Elem* row(int r) const { return a_.data() + static_cast<std::size_t>(r) * d_; }
  // Signed-index access.
  Elem& at(int i, int j) { return (*this)(pos(d_, i), pos(d_, j)); }
  Elem at(int i, int j) const { return (*this)(pos(d_, i), pos(d_, j)); }

  bool is_identity() const;
  bool is_scalar() const;

  friend bool operator==(const Mat& x, const Mat& y);

 private:
  FieldPtr f_;
  int d_ = 0;
  std::vector<Elem> a_;
};

bool same_field(const Field& a, const Field& b);

Mat mul(const Mat& x, const Mat& y);
Mat add(const Mat& x, const Mat& y);
Mat sub(const Mat& x, const Mat& y);
Mat scale(const Mat& x, Elem c);
Mat conj_transpose(const Mat& x);
Elem det(const Mat& x);
Mat inverse(const Mat& x);
Mat diag(FieldPtr f, const std::vector<Elem>& entries);

// The split form: [[0,I],[I,0]] for even d, [[2,0,0],[0,0,I],[0,I,0]] for odd d.
struct HermitianForm {
  int d = 0;
  Mat matrix;
};

HermitianForm hermitian_form(FieldPtr f, int d);
bool is_unitary(const Mat& x, const HermitianForm& form);
bool is_unitary(const Mat& x);
bool is_special_unitary(const Mat& x);
// mu in F_q^x with ᵀX̄βX = mu*β, if any.
std::optional<Elem> similitude_multiplier(const Mat& x);

}  // namespace unigauss
