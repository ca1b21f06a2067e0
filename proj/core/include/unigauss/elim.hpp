#pragma once

#include <optional>

#include "unigauss/gens.hpp"

namespace unigauss {

struct DiagForm {
  Elem lambda{1};
  std::optional<Elem> alpha;  // odd d only

  friend bool operator==(const DiagForm&, const DiagForm&) = default;
};

struct Decomposition {
  int d = 0;
  Word left;
  Word right;
  DiagForm diag;

  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

// diag(1,..,lambda,1,..,conj(lambda)^-1), with alpha at index 0 for odd d.
Mat diag_matrix(const FieldPtr& f, int d, const DiagForm& df);

// Stepwise elimination on a working copy of g. Each step applies letters on
// the left or right and records them; state() is always left * g * right.
class Eliminator {
 public:
  explicit Eliminator(const Mat& g);

  const Mat& state() const { return m_; }
  int l() const { return l_; }
  bool odd() const { return odd_; }
  // Rank of block A found by the last diagonalize_a().
  int rank() const { return rank_; }

  // A -> diag(a_1..a_m, 0..0), then normalized to diag(1..1, lambda) when
  // m = l and to diag(I_m, 0) otherwise. Returns m.
  int diagonalize_a();
  // Odd d: clears row-0 entries X_i (left X0i) and column-0 entries E_i
  // (right Xi0) for i <= rank.
  void clear_xe();
  // Left ER3 letters clearing columns 1..rank of block C.
  void clear_c();
  // Left w_{i,-i}(epsilon) for i > rank.
  void interchange();
  // Left ER2 letters clearing block B (needs C = 0 and A, D diagonal).
  void clear_b();

  void step1_even() { diagonalize_a(); }
  void step2_even();
  void step3_even() { clear_b(); }
  void step1_odd() { diagonalize_a(); }
  void step2_odd() { clear_xe(); }
  void step3_odd();
  void step4_odd();
  void step5_odd() { clear_b(); }

  void run();
  Word left_word() const;
  const Word& right_word() const { return right_; }
  Decomposition result() const;

 private:
  void left(const Letter& x);
  void right(const Letter& x);

  Mat m_;
  int d_, l_;
  bool odd_;
  int rank_ = -1;
  std::vector<Letter> left_applied_;
  Word right_;
};

struct DecomposeOptions {
  bool validate_input = true;
  // Asserts the block-structure postconditions after every step.
  bool check_steps = false;
};

Decomposition decompose(const Mat& g, const DecomposeOptions& opts = {});

// Single word over elementary and torus letters evaluating to g.
Word word_for(const Mat& g);

// Word over elementary letters only evaluating to g in SU.
Word reduce_su_to_identity(const Mat& g);

// Letters of the decompositions never exceed kWordLengthFactor * d^2.
inline constexpr int kWordLengthFactor = 3;

}  // namespace unigauss
