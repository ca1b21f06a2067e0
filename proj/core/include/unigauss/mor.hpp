#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "unigauss/elim.hpp"

namespace unigauss {

// Root position of a letter: the family and index pair with the parameter dropped.
struct RootPosition {
  Family family;
  int i;
  int j;
  friend bool operator==(const RootPosition&, const RootPosition&) = default;
};

// Fixed generating set: for every root position one letter per element of an
// F_p-basis of the parameter space (F_{q^2}, or K^o = eps*F_q for long roots).
class GeneratorSet {
 public:
  static std::shared_ptr<const GeneratorSet> make(const FieldPtr& f, int d);

  int d() const { return d_; }
  const FieldPtr& field_ptr() const { return f_; }
  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  const std::vector<RootPosition>& positions() const { return positions_; }
  // Index of a root position in positions(), or -1.
  int position_index(const RootPosition& r) const;
  // Generator indices [first, first + count) of a root position, or count 0.
  std::pair<std::size_t, std::size_t> range(const RootPosition& r) const;
  std::pair<std::size_t, std::size_t> range(int position_index) const;
  // F_p coordinates of a parameter in the basis used for its root position.
  std::vector<std::uint32_t> coordinates(Family family, Elem param) const;

  friend bool operator==(const GeneratorSet& a, const GeneratorSet& b);

 private:
  FieldPtr f_;
  int d_ = 0;
  std::vector<Letter> letters_;
  std::vector<RootPosition> positions_;
  std::vector<std::size_t> first_;
};

using GeneratorSetPtr = std::shared_ptr<const GeneratorSet>;

// Automorphism of SU(d, q^2) given by images of a generating set; optionally
// also the images under the inverse automorphism.
class Automorphism {
 public:
  Automorphism(GeneratorSetPtr gens, std::vector<Mat> images, std::vector<Mat> inverse_images = {});
  static Automorphism identity(GeneratorSetPtr gens);

  const GeneratorSetPtr& gens() const { return gens_; }
  const std::vector<Mat>& images() const { return images_; }
  const std::vector<Mat>& inverse_images() const { return inverse_images_; }
  bool has_inverse() const { return !inverse_images_.empty(); }
  Automorphism inverse() const;

  // images[b] - I
  const std::vector<Mat>& deltas() const { return deltas_; }

  // The deltas of one root position share a column space with reduced
  // echelon basis U (d x k, row-major); delta_b = U * (rows `pivots` of delta_b).
  struct RootFactor {
    int k = 0;
    std::vector<Elem> u;
    std::vector<int> pivots;
  };
  const std::vector<RootFactor>& factors() const { return factors_; }

 private:
  GeneratorSetPtr gens_;
  std::vector<Mat> images_;
  std::vector<Mat> inverse_images_;
  std::vector<Mat> deltas_;
  std::vector<RootFactor> factors_;
};

Automorphism conjugation_automorphism(const Mat& n, GeneratorSetPtr gens, bool with_inverse = true);

// phi(M) for M in SU via a generator word for M. Each letter x_r(t) maps to
// prod_b phi(x_r(t_b))^{c_b}; since those factors differ from I by commuting
// square-zero matrices the product is I + sum_b c_b (phi(x_r(t_b)) - I).
Mat apply(const Automorphism& aut, const Mat& m);
// Same map, multiplying the image powers literally.
Mat apply_literal(const Automorphism& aut, const Mat& m);

Automorphism compose(const Automorphism& outer, const Automorphism& inner, bool with_inverse = false);
Automorphism power(const Automorphism& aut, std::uint64_t k, bool with_inverse = false);

struct MorPublicKey {
  Automorphism phi;
  Automorphism phi_m;
};

struct MorKeyPair {
  MorPublicKey pub;
  std::uint64_t secret_m = 0;
};

struct Ciphertext {
  Automorphism c1;
  Mat c2;
};

// q^{2d}, saturated at 2^62.
std::uint64_t mor_exponent_bound(const Field& f, int d);

// Random element of GU(d, q^2): random unitary times a diagonal similitude.
Mat random_similitude(const FieldPtr& f, int d, Rng& rng);

MorKeyPair keygen_from(const Mat& n, std::uint64_t m, GeneratorSetPtr gens);
MorKeyPair keygen(const FieldPtr& f, int l, Rng& rng);
Ciphertext encrypt_with(const MorPublicKey& pub, const Mat& msg, std::uint64_t r);
Ciphertext encrypt(const MorPublicKey& pub, const Mat& msg, Rng& rng);
Mat decrypt(const MorKeyPair& kp, const Ciphertext& ct);

}  // namespace unigauss
