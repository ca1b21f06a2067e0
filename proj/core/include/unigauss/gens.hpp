#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "unigauss/linalg.hpp"

namespace unigauss {

enum class Family { Xij, XiNegJ, XNegIj, XiNegI, XNegIi, Xi0, X0i, TorusZeta, TorusZeta1 };

std::string_view family_name(Family f);
Family family_from_name(std::string_view name);
bool is_torus(Family f);
bool is_long_root(Family f);  // XiNegI, XNegIi: parameter in K^o

// One generator. Indices are 1-based; j is unused for single-index families and
// i, j are unused for torus letters.
struct Letter {
  Family family = Family::Xij;
  int i = 0;
  int j = 0;
  Elem param{};
  std::int64_t exponent = 0;

  friend bool operator==(const Letter&, const Letter&) = default;
};

struct Word {
  int d = 0;
  std::vector<Letter> letters;

  friend bool operator==(const Word&, const Word&) = default;
};

// Throws InvalidLetter.
void validate_letter(const Field& f, int d, const Letter& x);

Mat letter_matrix(const FieldPtr& f, int d, const Letter& x);

// In place: M <- x*M and M <- M*x, touching only the affected rows/columns.
void apply_left_inplace(const Letter& x, Mat& m);
void apply_right_inplace(Mat& m, const Letter& x);
Mat apply_left(const Letter& x, Mat m);
Mat apply_right(Mat m, const Letter& x);

// w_{i,-i}(s) = x_{i,-i}(s) x_{-i,i}(-1/s) x_{i,-i}(s).
Word row_interchange(const Field& f, int d, int i, Elem s);

Mat word_evaluate(const FieldPtr& f, const Word& w);
Word word_inverse(const Field& f, const Word& w);
Word concat(Word a, const Word& b);

Elem random_subfield(const Field& f, Rng& rng);
Elem random_skew(const Field& f, Rng& rng);
Letter random_elementary_letter(const Field& f, int d, Rng& rng);
Word random_elementary_word(const Field& f, int d, Rng& rng, int n_letters);
// n_letters < 0 selects the default 10*d^2.
Mat random_unitary(const FieldPtr& f, int d, Rng& rng, int n_letters = -1);

}  // namespace unigauss
