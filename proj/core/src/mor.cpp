#include "unigauss/mor.hpp"

#include <string>

namespace unigauss {

namespace {

void require_same(const Automorphism& a, const Automorphism& b) {
  if (!(a.gens() == b.gens()) && !(*a.gens() == *b.gens())) {
    throw Error(Errc::kGeneratorSetMismatch, "automorphisms use different generator sets");
  }
}

// Xi0 and X0i are not additive in the parameter: rewrite each such letter as single-basis
// generators followed by the long-root correction, using Xi0(t) Xi0(u) = Xi0(t+u) XiNegI(t u^ - t^ u).
Word expand_short_odd(const GeneratorSet& gs, const Word& w) {
  const Field& f = *gs.field_ptr();
  Word out;
  out.d = w.d;
  for (const auto& x : w.letters) {
    if (x.family != Family::Xi0 && x.family != Family::X0i) {
      out.letters.push_back(x);
      continue;
    }
    const auto [first, count] = gs.range({x.family, x.i, x.j});
    const auto coords = gs.coordinates(x.family, x.param);
    Elem t = f.zero(), s = f.zero();
    for (std::size_t b = 0; b < count; ++b) {
      const Elem u = gs.letters()[first + b].param;
      for (std::uint32_t c = 0; c < coords[b]; ++c) {
        s = f.add(s, f.sub(f.mul(t, f.conj(u)), f.mul(f.conj(t), u)));
        t = f.add(t, u);
        out.letters.push_back({x.family, x.i, x.j, u, 0});
      }
    }
    if (!f.is_zero(s)) {
      out.letters.push_back({x.family == Family::Xi0 ? Family::XiNegI : Family::XNegIi, x.i, 0, f.neg(s), 0});
    }
  }
  return out;
}

// Word over generator-set letters for m, reporting non-SU input uniformly.
Word su_word(const GeneratorSet& gs, const Mat& m) {
  try {
    return expand_short_odd(gs, reduce_su_to_identity(m));
  } catch (const Error& e) {
    if (e.code() == Errc::kNotUnitary) throw Error(Errc::kNotSpecialUnitary, "input is not in SU");
    throw;
  }
}

std::vector<Mat> apply_all(const Automorphism& aut, const std::vector<Mat>& ms) {
  std::vector<Mat> out;
  out.reserve(ms.size());
  for (const auto& m : ms) out.push_back(apply(aut, m));
  return out;
}

}  // namespace

GeneratorSetPtr GeneratorSet::make(const FieldPtr& f, int d) {
  if (d < 4) throw Error(Errc::kDimensionTooSmall, "generator set needs d >= 4");
  if (d % 2 == 1 && f->p() == 2) throw Error(Errc::kUnsupportedParity, "odd dimension needs odd characteristic");
  auto gs = std::shared_ptr<GeneratorSet>(new GeneratorSet());
  gs->f_ = f;
  gs->d_ = d;
  const int l = d / 2;
  auto& pos = gs->positions_;
  for (int i = 1; i <= l; ++i)
    for (int j = 1; j <= l; ++j)
      if (i != j) pos.push_back({Family::Xij, i, j});
  for (int i = 1; i <= l; ++i)
    for (int j = i + 1; j <= l; ++j) pos.push_back({Family::XiNegJ, i, j});
  for (int i = 1; i <= l; ++i)
    for (int j = i + 1; j <= l; ++j) pos.push_back({Family::XNegIj, i, j});
  for (int i = 1; i <= l; ++i) pos.push_back({Family::XiNegI, i, 0});
  for (int i = 1; i <= l; ++i) pos.push_back({Family::XNegIi, i, 0});
  if (d % 2 == 1) {
    for (int i = 1; i <= l; ++i) pos.push_back({Family::Xi0, i, 0});
    for (int i = 1; i <= l; ++i) pos.push_back({Family::X0i, i, 0});
  }
  std::uint64_t pk = 1;
  std::vector<Elem> basis;  // p^k as digit codes: 1, u-free powers first
  for (std::uint32_t k = 0; k < 2 * f->e(); ++k, pk *= f->p()) basis.push_back(f->from_code(pk));
  for (const auto& r : pos) {
    gs->first_.push_back(gs->letters_.size());
    if (is_long_root(r.family)) {
      for (std::uint32_t k = 0; k < f->e(); ++k) {
        gs->letters_.push_back({r.family, r.i, r.j, f->mul(f->epsilon(), basis[k]), 0});
      }
    } else {
      for (const auto& b : basis) gs->letters_.push_back({r.family, r.i, r.j, b, 0});
    }
  }
  return gs;
}

int GeneratorSet::position_index(const RootPosition& r) const {
  for (std::size_t k = 0; k < positions_.size(); ++k) {
    if (positions_[k] == r) return static_cast<int>(k);
  }
  return -1;
}

std::pair<std::size_t, std::size_t> GeneratorSet::range(int k) const {
  if (k < 0) return {0, 0};
  const auto uk = static_cast<std::size_t>(k);
  const std::size_t end = uk + 1 < first_.size() ? first_[uk + 1] : letters_.size();
  return {first_[uk], end - first_[uk]};
}

std::pair<std::size_t, std::size_t> GeneratorSet::range(const RootPosition& r) const {
  return range(position_index(r));
}

std::vector<std::uint32_t> GeneratorSet::coordinates(Family family, Elem param) const {
  const Field& f = *f_;
  if (!is_long_root(family)) return f.digits(param);
  auto dg = f.digits(f.div(param, f.epsilon()));
  dg.resize(f.e());
  return dg;
}

bool operator==(const GeneratorSet& a, const GeneratorSet& b) {
  return a.d_ == b.d_ && same_field(*a.f_, *b.f_) && a.letters_ == b.letters_;
}

Automorphism::Automorphism(GeneratorSetPtr gens, std::vector<Mat> images, std::vector<Mat> inverse_images)
    : gens_(std::move(gens)), images_(std::move(images)), inverse_images_(std::move(inverse_images)) {
  if (images_.size() != gens_->size() || (!inverse_images_.empty() && inverse_images_.size() != gens_->size())) {
    throw Error(Errc::kGeneratorSetMismatch, "image count does not match the generator set");
  }
  const Mat id = Mat::identity(gens_->field_ptr(), gens_->d());
  deltas_.reserve(images_.size());
  for (const auto& img : images_) {
    if (img.d() != gens_->d()) throw Error(Errc::kGeneratorSetMismatch, "image dimension mismatch");
    deltas_.push_back(sub(img, id));
  }
  const Field& f = *gens_->field_ptr();
  const int d = gens_->d();
  for (std::size_t r = 0; r < gens_->positions().size(); ++r) {
    const auto [first, count] = gens_->range(static_cast<int>(r));
    // Reduced column echelon basis of all columns of the deltas.
    std::vector<std::vector<Elem>> basis;
    std::vector<int> piv;
    std::vector<Elem> v(static_cast<std::size_t>(d));
    for (std::size_t b = first; b < first + count; ++b) {
      for (int c = 0; c < d; ++c) {
        for (int k = 0; k < d; ++k) v[k] = deltas_[b](k, c);
        for (std::size_t a = 0; a < basis.size(); ++a) {
          const Elem t = v[piv[a]];
          if (t.raw == 0) continue;
          for (int k = 0; k < d; ++k) v[k] = f.sub(v[k], f.mul(t, basis[a][k]));
        }
        int p = 0;
        while (p < d && v[p].raw == 0) ++p;
        if (p == d) continue;
        const Elem s = f.inv(v[p]);
        for (auto& x : v) x = f.mul(s, x);
        for (std::size_t a = 0; a < basis.size(); ++a) {
          const Elem t = basis[a][p];
          if (t.raw == 0) continue;
          for (int k = 0; k < d; ++k) basis[a][k] = f.sub(basis[a][k], f.mul(t, v[k]));
        }
        basis.push_back(v);
        piv.push_back(p);
      }
    }
    RootFactor rf;
    rf.k = static_cast<int>(basis.size());
    rf.pivots = piv;
    rf.u.resize(static_cast<std::size_t>(d) * rf.k);
    for (int k = 0; k < d; ++k)
      for (int a = 0; a < rf.k; ++a) rf.u[static_cast<std::size_t>(k) * rf.k + a] = basis[a][k];
    factors_.push_back(std::move(rf));
  }
}

Automorphism Automorphism::identity(GeneratorSetPtr gens) {
  std::vector<Mat> imgs;
  for (const auto& x : gens->letters()) imgs.push_back(letter_matrix(gens->field_ptr(), gens->d(), x));
  auto inv = imgs;
  return Automorphism(std::move(gens), std::move(imgs), std::move(inv));
}

Automorphism Automorphism::inverse() const {
  if (!has_inverse()) throw Error(Errc::kInvalidArgument, "automorphism carries no inverse images");
  return Automorphism(gens_, inverse_images_, images_);
}

Automorphism conjugation_automorphism(const Mat& n, GeneratorSetPtr gens, bool with_inverse) {
  if (!similitude_multiplier(n)) throw Error(Errc::kNotSimilitude, "conjugator is not a similitude");
  const Mat ninv = inverse(n);
  std::vector<Mat> imgs, inv;
  for (const auto& x : gens->letters()) {
    const Mat lm = letter_matrix(gens->field_ptr(), gens->d(), x);
    imgs.push_back(mul(mul(n, lm), ninv));
    if (with_inverse) inv.push_back(mul(mul(ninv, lm), n));
  }
  return Automorphism(std::move(gens), std::move(imgs), std::move(inv));
}

Mat apply(const Automorphism& aut, const Mat& m) {
  const GeneratorSet& gs = *aut.gens();
  const Field& f = *gs.field_ptr();
  if (m.d() != gs.d()) throw Error(Errc::kGeneratorSetMismatch, "matrix dimension mismatch");
  const Word w = su_word(gs, m);
  const int d = gs.d();
  Mat p = Mat::identity(gs.field_ptr(), d);
  std::vector<Elem> wm, pu;
  for (const auto& x : w.letters) {
    const int r = gs.position_index({x.family, x.i, x.j});
    if (r < 0) throw Error(Errc::kInternal, "letter outside the generator set");
    const auto [first, count] = gs.range(r);
    const auto& rf = aut.factors()[r];
    const int k = rf.k;
    const auto coords = gs.coordinates(x.family, x.param);
    // W = sum_b c_b (pivot rows of delta_b), so that delta = U W.
    wm.assign(static_cast<std::size_t>(k) * d, Elem{0});
    bool any = false;
    for (std::size_t b = 0; b < count; ++b) {
      if (coords[b] == 0) continue;
      any = true;
      const Elem c = f.from_int(coords[b]);
      const Mat& nb = aut.deltas()[first + b];
      for (int a = 0; a < k; ++a) {
        const Elem* src = nb.row(rf.pivots[a]);
        Elem* dst = wm.data() + static_cast<std::size_t>(a) * d;
        for (int j = 0; j < d; ++j) {
          if (src[j].raw) dst[j] = f.add(dst[j], f.mul(c, src[j]));
        }
      }
    }
    if (!any || k == 0) continue;
    // P += (P U) W
    pu.assign(static_cast<std::size_t>(d) * k, Elem{0});
    for (int i = 0; i < d; ++i) {
      const Elem* pr = p.row(i);
      Elem* out = pu.data() + static_cast<std::size_t>(i) * k;
      for (int j = 0; j < d; ++j) {
        if (pr[j].raw == 0) continue;
        const Elem* ur = rf.u.data() + static_cast<std::size_t>(j) * k;
        for (int a = 0; a < k; ++a) {
          if (ur[a].raw) out[a] = f.add(out[a], f.mul(pr[j], ur[a]));
        }
      }
    }
    for (int i = 0; i < d; ++i) {
      Elem* pr = p.row(i);
      const Elem* in = pu.data() + static_cast<std::size_t>(i) * k;
      for (int a = 0; a < k; ++a) {
        if (in[a].raw == 0) continue;
        const Elem* wr = wm.data() + static_cast<std::size_t>(a) * d;
        for (int j = 0; j < d; ++j) {
          if (wr[j].raw) pr[j] = f.add(pr[j], f.mul(in[a], wr[j]));
        }
      }
    }
  }
  return p;
}

Mat apply_literal(const Automorphism& aut, const Mat& m) {
  const GeneratorSet& gs = *aut.gens();
  const Word w = su_word(gs, m);
  Mat p = Mat::identity(gs.field_ptr(), gs.d());
  for (const auto& x : w.letters) {
    const auto [first, count] = gs.range({x.family, x.i, x.j});
    if (count == 0) throw Error(Errc::kInternal, "letter outside the generator set");
    const auto coords = gs.coordinates(x.family, x.param);
    for (std::size_t b = 0; b < count; ++b) {
      for (std::uint32_t k = 0; k < coords[b]; ++k) p = mul(p, aut.images()[first + b]);
    }
  }
  return p;
}

Automorphism compose(const Automorphism& outer, const Automorphism& inner, bool with_inverse) {
  require_same(outer, inner);
  std::vector<Mat> imgs = apply_all(outer, inner.images());
  std::vector<Mat> inv;
  if (with_inverse) {
    if (!outer.has_inverse() || !inner.has_inverse()) {
      throw Error(Errc::kInvalidArgument, "inverse composition needs inverse images on both sides");
    }
    inv = apply_all(inner.inverse(), outer.inverse_images());
  }
  return Automorphism(outer.gens(), std::move(imgs), std::move(inv));
}

Automorphism power(const Automorphism& aut, std::uint64_t k, bool with_inverse) {
  if (k == 0) return Automorphism::identity(aut.gens());
  // Left-to-right square-and-multiply.
  int top = 63;
  while (!((k >> top) & 1)) --top;
  Automorphism acc = aut;
  for (int b = top - 1; b >= 0; --b) {
    acc = compose(acc, acc, with_inverse);
    if ((k >> b) & 1) acc = compose(acc, aut, with_inverse);
  }
  if (!with_inverse && acc.has_inverse()) return Automorphism(acc.gens(), acc.images());
  return acc;
}

std::uint64_t mor_exponent_bound(const Field& f, int d) {
  const std::uint64_t cap = std::uint64_t{1} << 62;
  std::uint64_t r = 1;
  for (int k = 0; k < 2 * d; ++k) {
    if (r > cap / f.q()) return cap;
    r *= f.q();
  }
  return r;
}

Mat random_similitude(const FieldPtr& f, int d, Rng& rng) {
  const int l = d / 2;
  std::vector<Elem> dg(static_cast<std::size_t>(d), f->one());
  if (d % 2 == 0) {
    const Elem mu = f->from_code(1 + uniform_below(rng, f->q() - 1));
    for (int i = 1; i <= l; ++i) dg[pos(d, i)] = mu;
  } else {
    const Elem x0 = f->random_nonzero(rng);
    const Elem mu = f->norm(x0);
    dg[0] = x0;
    for (int i = 1; i <= l; ++i) dg[pos(d, i)] = mu;
  }
  return mul(random_unitary(f, d, rng), diag(f, dg));
}

MorKeyPair keygen_from(const Mat& n, std::uint64_t m, GeneratorSetPtr gens) {
  if (m == 0) throw Error(Errc::kInvalidArgument, "secret exponent must be positive");
  const Automorphism phi = conjugation_automorphism(n, std::move(gens), true);
  return {{phi, power(phi, m)}, m};
}

MorKeyPair keygen(const FieldPtr& f, int l, Rng& rng) {
  const int d = 2 * l;
  auto gens = GeneratorSet::make(f, d);
  const Mat n = random_similitude(f, d, rng);
  const std::uint64_t m = 1 + uniform_below(rng, mor_exponent_bound(*f, d));
  return keygen_from(n, m, std::move(gens));
}

Ciphertext encrypt_with(const MorPublicKey& pub, const Mat& msg, std::uint64_t r) {
  if (r == 0) throw Error(Errc::kInvalidArgument, "ephemeral exponent must be positive");
  if (!pub.phi.has_inverse()) throw Error(Errc::kInvalidArgument, "public phi carries no inverse images");
  if (!is_special_unitary(msg)) throw Error(Errc::kNotSpecialUnitary, "plaintext is not in SU");
  Automorphism c1 = power(pub.phi, r, true);
  Mat c2 = apply(power(pub.phi_m, r), msg);
  return {std::move(c1), std::move(c2)};
}

Ciphertext encrypt(const MorPublicKey& pub, const Mat& msg, Rng& rng) {
  const auto& gens = *pub.phi.gens();
  const std::uint64_t r = 1 + uniform_below(rng, mor_exponent_bound(*gens.field_ptr(), gens.d()));
  return encrypt_with(pub, msg, r);
}

Mat decrypt(const MorKeyPair& kp, const Ciphertext& ct) {
  if (!ct.c1.has_inverse()) throw Error(Errc::kInvalidCiphertext, "c1 carries no inverse images");
  if (!(*ct.c1.gens() == *kp.pub.phi.gens())) throw Error(Errc::kInvalidCiphertext, "generator set mismatch");
  if (!is_special_unitary(ct.c2)) throw Error(Errc::kInvalidCiphertext, "c2 is not in SU");
  return apply(power(ct.c1.inverse(), kp.secret_m), ct.c2);
}

}  // namespace unigauss
