#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "unigauss/error.hpp"
#include "unigauss/rng.hpp"

namespace unigauss {

// Element of F_{q^2}. The encoding of raw depends on the owning Field's
// backend; raw == 0 is zero and raw == 1 is one in both.
struct Elem {
  std::uint64_t raw = 0;
  friend constexpr bool operator==(Elem, Elem) = default;
};

namespace detail {
extern thread_local std::uint64_t* g_mul_counter;
}

// Counts field multiplications (and inversions) on this thread while alive.
class MulCounter {
 public:
  MulCounter() : prev_(detail::g_mul_counter) { detail::g_mul_counter = &count_; }
  ~MulCounter() { detail::g_mul_counter = prev_; }
  MulCounter(const MulCounter&) = delete;
  MulCounter& operator=(const MulCounter&) = delete;

  std::uint64_t count() const { return count_; }

 private:
  std::uint64_t count_ = 0;
  std::uint64_t* prev_;
};

struct FieldOptions {
  bool force_tower = false;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// F_p ⊆ F_q ⊆ F_{q^2} = F_q[u]/(u^2 + c1 u + c0), conjugation x -> x^q.
class Field {
 public:
  static constexpr std::uint64_t kMaxQ = 1u << 20;
  static constexpr std::uint64_t kTableLimit = 1u << 20;

  static FieldPtr create(std::uint32_t p, std::uint32_t e, FieldOptions opts = {});
  // Cached default-option instance.
  static FieldPtr get(std::uint32_t p, std::uint32_t e);

  std::uint32_t p() const { return p_; }
  std::uint32_t e() const { return e_; }
  std::uint64_t q() const { return q_; }
  std::uint64_t order() const { return n_; }  // q^2 - 1
  bool uses_tables() const { return tables_; }

  // f_q as base-p digits, low degree first, length e+1 (monic).
  const std::vector<std::uint32_t>& fq_modulus() const { return fq_mod_; }
  // f_K as F_q digit codes [c0, c1, 1].
  std::vector<std::uint64_t> fk_modulus() const { return {fk_c0_code_, fk_c1_code_, 1}; }

  Elem zero() const { return {0}; }
  Elem one() const { return {1}; }
  Elem from_int(std::int64_t v) const;
  Elem zeta() const { return zeta_; }
  Elem zeta1() const { return zeta1_; }
  Elem epsilon() const { return eps_; }

  // Digit code: sum of digit_k * p^k over the 2e base-p digits, low first.
  Elem from_code(std::uint64_t code) const;
  std::uint64_t code(Elem a) const;
  std::vector<std::uint32_t> digits(Elem a) const;
  Elem from_digits(std::span<const std::uint32_t> digits) const;
  std::uint64_t size() const { return n_ + 1; }

  bool is_zero(Elem a) const { return a.raw == 0; }

  Elem add(Elem a, Elem b) const {
    if (tables_) {
      if (a.raw == 0) return b;
      if (b.raw == 0) return a;
      const std::uint64_t k = b.raw >= a.raw ? b.raw - a.raw : b.raw + n_ - a.raw;
      const std::uint32_t z = zech_[k];
      if (z == 0) return {0};
      return {lmul(a.raw, z, n_)};
    }
    return {pack(qadd(lo(a), lo(b)), qadd(hi(a), hi(b)))};
  }

  Elem neg(Elem a) const {
    if (p_ == 2 || a.raw == 0) return a;
    if (tables_) return {lmul(a.raw, half_n_ + 1, n_)};
    return {pack(qneg(lo(a)), qneg(hi(a)))};
  }

  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

  Elem mul(Elem a, Elem b) const {
    if (auto* c = detail::g_mul_counter) ++*c;
    if (tables_) {
      if (a.raw == 0 || b.raw == 0) return {0};
      return {lmul(a.raw, b.raw, n_)};
    }
    return tower_mul(a, b);
  }

  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  // Negative exponents invert first.
  Elem pow(Elem a, std::int64_t k) const;

  Elem conj(Elem a) const {
    if (tables_) {
      if (a.raw == 0) return a;
      return {mulmod(a.raw - 1, q_, n_) + 1};
    }
    const std::uint32_t a0 = lo(a), a1 = hi(a);
    return {pack(qadd(a0, qmul(neg_c1_, a1)), qneg(a1))};
  }

  Elem norm(Elem a) const { return mul(a, conj(a)); }
  bool is_skew(Elem a) const { return add(a, conj(a)).raw == 0; }
  bool is_norm_one(Elem a) const { return norm(a) == one(); }
  bool in_subfield(Elem a) const { return conj(a) == a; }

  std::uint64_t multiplicative_order(Elem a) const;
  // Prime factors of q^2 - 1, ascending.
  const std::vector<std::uint64_t>& order_factors() const { return order_factors_; }

  Elem random(Rng& rng) const { return from_code(uniform_below(rng, n_ + 1)); }
  Elem random_nonzero(Rng& rng) const { return from_code(1 + uniform_below(rng, n_)); }

 private:
  Field() = default;
  void build_subfield();
  void build_extension();
  void build_tables();

  static std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
  }
  // Product of two nonzero log codes (log + 1) modulo a group of order n.
  static std::uint64_t lmul(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
    std::uint64_t s = a + b - 1;
    if (s > n) s -= n;
    return s;
  }

  static std::uint32_t lo(Elem a) { return static_cast<std::uint32_t>(a.raw); }
  static std::uint32_t hi(Elem a) { return static_cast<std::uint32_t>(a.raw >> 32); }
  static std::uint64_t pack(std::uint32_t l, std::uint32_t h) {
    return static_cast<std::uint64_t>(l) | (static_cast<std::uint64_t>(h) << 32);
  }

  std::uint32_t qmul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    return static_cast<std::uint32_t>(lmul(a, b, qn_));
  }
  std::uint32_t qadd(std::uint32_t a, std::uint32_t b) const {
    if (a == 0) return b;
    if (b == 0) return a;
    const std::uint32_t k = b >= a ? b - a : b + qn_ - a;
    const std::uint32_t z = zech_q_[k];
    if (z == 0) return 0;
    return static_cast<std::uint32_t>(lmul(a, z, qn_));
  }
  std::uint32_t qneg(std::uint32_t a) const {
    if (p_ == 2 || a == 0) return a;
    return static_cast<std::uint32_t>(lmul(a, qn_ / 2 + 1, qn_));
  }
  std::uint32_t qinv(std::uint32_t a) const {
    return a == 1 ? 1 : static_cast<std::uint32_t>(qn_ - (a - 1) + 1);
  }
  Elem tower_mul(Elem a, Elem b) const {
    const std::uint32_t a0 = lo(a), a1 = hi(a), b0 = lo(b), b1 = hi(b);
    const std::uint32_t t = qmul(a1, b1);
    const std::uint32_t r0 = qadd(qmul(a0, b0), qmul(neg_c0_, t));
    const std::uint32_t r1 = qadd(qadd(qmul(a0, b1), qmul(a1, b0)), qmul(neg_c1_, t));
    return {pack(r0, r1)};
  }
  std::uint64_t tower_code(Elem a) const;
  Elem tower_from_code(std::uint64_t code) const;

  std::uint32_t p_ = 0, e_ = 0;
  std::uint64_t q_ = 0, n_ = 0, half_n_ = 0;
  std::uint32_t qn_ = 0;  // q - 1
  bool tables_ = false;

  std::vector<std::uint32_t> fq_mod_;
  std::uint64_t fk_c0_code_ = 0, fk_c1_code_ = 0;
  std::uint32_t neg_c0_ = 0, neg_c1_ = 0;  // F_q log codes of -c0, -c1

  // F_q: exp_q_[k] = digit code of w^k, log_q_[code] = log code, zech_q_[k] = log code of 1 + w^k.
  std::vector<std::uint32_t> exp_q_, log_q_, zech_q_;
  // F_{q^2} tables (table backend only), same layout with zeta as base.
  std::vector<std::uint32_t> exp_k_, log_k_, zech_;

  std::vector<std::uint64_t> order_factors_;
  Elem zeta_, zeta1_, eps_;
};

// Least k >= 0 with base^k == target, by baby-step giant-step. The order of
// base must not exceed 2^40.
std::uint64_t discrete_log(const Field& f, Elem base, Elem target);

std::vector<std::uint64_t> prime_factors(std::uint64_t n);

}  // namespace unigauss
