#pragma once

#include <cstdint>
#include <functional>

#include "unigauss/mor.hpp"

namespace unigauss {

// Black-box access to phi on letter matrices; counts queries.
class AutomorphismOracle {
 public:
  using Fn = std::function<Mat(const Letter&)>;

  AutomorphismOracle(FieldPtr f, int d, Fn fn) : f_(std::move(f)), d_(d), fn_(std::move(fn)) {}

  Mat operator()(const Letter& x) {
    ++queries_;
    return fn_(x);
  }
  const FieldPtr& field_ptr() const { return f_; }
  int d() const { return d_; }
  std::uint64_t queries() const { return queries_; }
  void reset_queries() { queries_ = 0; }

 private:
  FieldPtr f_;
  int d_;
  Fn fn_;
  std::uint64_t queries_ = 0;
};

// x -> n x n^-1.
AutomorphismOracle conjugation_oracle(const Mat& n);
// Generator images are looked up, anything else goes through apply().
AutomorphismOracle automorphism_oracle(const Automorphism& aut);

// g' = c * n for the hidden conjugator n. Uses 3l queries.
Mat recover_conjugator_even(AutomorphismOracle& oracle, int l, const FieldPtr& f);
// Odd d = 2l+1; uses 3l + 1 queries.
Mat recover_conjugator_odd(AutomorphismOracle& oracle, int l, const FieldPtr& f);

// g' g_i g'^-1 == oracle(g_i) for every generator.
bool verify_recovery(const Mat& g_prime, AutomorphismOracle& oracle, const GeneratorSet& gens);

}  // namespace unigauss
