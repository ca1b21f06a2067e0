#include "unigauss/gf.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>

namespace unigauss {

namespace detail {
thread_local std::uint64_t* g_mul_counter = nullptr;
}

namespace {

using Poly = std::vector<std::uint32_t>;  // over F_p, low degree first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod_p(std::uint32_t a, std::uint32_t p) {
  std::uint64_t r = 1, b = a % p;
  for (std::uint32_t k = p - 2; k; k >>= 1) {
    if (k & 1) r = r * b % p;
    b = b * b % p;
  }
  return static_cast<std::uint32_t>(r);
}

// a mod f for monic f.
void reduce(Poly& a, const Poly& f, std::uint32_t p) {
  trim(a);
  const std::size_t n = f.size() - 1;
  while (a.size() > n) {
    const std::uint64_t c = a.back();
    const std::size_t shift = a.size() - 1 - n;
    for (std::size_t k = 0; k < n; ++k) {
      a[shift + k] = static_cast<std::uint32_t>((a[shift + k] + (p - c) * f[k]) % p);
    }
    a.pop_back();
    trim(a);
  }
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
    }
  }
  reduce(r, f, p);
  return r;
}

Poly powmod(Poly a, std::uint64_t k, const Poly& f, std::uint32_t p) {
  Poly r{1};
  reduce(a, f, p);
  while (k) {
    if (k & 1) r = poly_mulmod(r, a, f, p);
    a = poly_mulmod(a, a, f, p);
    k >>= 1;
  }
  return r;
}

// Generic remainder; b nonzero.
Poly polymod(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  const std::uint32_t lead_inv = inv_mod_p(b.back(), p);
  for (auto& c : b) c = static_cast<std::uint32_t>(static_cast<std::uint64_t>(c) * lead_inv % p);
  reduce(a, b, p);
  return a;
}

Poly gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = polymod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Ben-Or: f of degree n is irreducible iff gcd(f, x^{p^i} - x) = 1 for i <= n/2.
bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t n = f.size() - 1;
  Poly h{0, 1};
  for (std::size_t i = 1; i <= n / 2; ++i) {
    h = powmod(h, p, f, p);
    Poly t = h;
    if (t.size() < 2) t.resize(2, 0);
    t[1] = (t[1] + p - 1) % p;
    trim(t);
    if (t.empty()) return false;
    if (gcd(f, t, p).size() > 1) return false;
  }
  return true;
}

Poly code_to_poly(std::uint64_t code, std::uint32_t p, std::uint32_t len) {
  Poly r(len, 0);
  for (std::uint32_t k = 0; k < len; ++k) {
    r[k] = static_cast<std::uint32_t>(code % p);
    code /= p;
  }
  trim(r);
  return r;
}

std::uint64_t poly_to_code(const Poly& a, std::uint32_t p) {
  std::uint64_t c = 0;
  for (std::size_t k = a.size(); k-- > 0;) c = c * p + a[k];
  return c;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// Digit code of 1 + x: only digit 0 changes.
std::uint64_t plus_one(std::uint64_t code, std::uint32_t p) {
  const std::uint64_t d0 = code % p;
  return code - d0 + (d0 + 1) % p;
}

}  // namespace

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

FieldPtr Field::create(std::uint32_t p, std::uint32_t e, FieldOptions opts) {
  if (!is_prime(p)) throw Error(Errc::kInvalidArgument, "p=" + std::to_string(p) + " is not prime");
  if (e < 1) throw Error(Errc::kInvalidArgument, "extension degree must be >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t k = 0; k < e; ++k) {
    q *= p;
    if (q > kMaxQ) throw Error(Errc::kInvalidArgument, "q exceeds 2^20");
  }
  std::shared_ptr<Field> f(new Field());
  f->p_ = p;
  f->e_ = e;
  f->q_ = q;
  f->qn_ = static_cast<std::uint32_t>(q - 1);
  f->n_ = q * q - 1;
  f->half_n_ = f->n_ / 2;
  f->build_subfield();
  f->build_extension();
  if (!opts.force_tower && q * q <= kTableLimit) f->build_tables();
  f->eps_ = p == 2 ? f->one() : f->pow(f->zeta_, static_cast<std::int64_t>((q + 1) / 2));
  f->zeta1_ = f->pow(f->zeta_, static_cast<std::int64_t>(q - 1));
  return f;
}

FieldPtr Field::get(std::uint32_t p, std::uint32_t e) {
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, FieldPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{p, e}];
  if (!slot) slot = create(p, e);
  return slot;
}

void Field::build_subfield() {
  const std::uint32_t p = p_, e = e_;
  if (e == 1) {
    fq_mod_ = {0, 1};
  } else {
    std::uint64_t total = q_;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      Poly f(e + 1, 0);
      std::uint64_t t = idx;
      for (std::uint32_t k = e; k-- > 0;) {
        f[k] = static_cast<std::uint32_t>(t % p);
        t /= p;
      }
      f[e] = 1;
      if (f[0] == 0) continue;
      if (is_irreducible(f, p)) {
        fq_mod_ = f;
        break;
      }
    }
  }
  const Poly& f = fq_mod_;

  // Primitive element of F_q: smallest digit code of order q - 1.
  const auto fac = prime_factors(q_ - 1);
  Poly w;
  for (std::uint64_t c = 1; c < q_; ++c) {
    Poly cand = code_to_poly(c, p, e);
    bool prim = true;
    for (auto r : fac) {
      if (powmod(cand, (q_ - 1) / r, f, p) == Poly{1}) {
        prim = false;
        break;
      }
    }
    if (prim) {
      w = cand;
      break;
    }
  }

  exp_q_.assign(qn_, 0);
  log_q_.assign(q_, 0);
  Poly cur{1};
  for (std::uint32_t k = 0; k < qn_; ++k) {
    const std::uint64_t c = poly_to_code(cur, p);
    exp_q_[k] = static_cast<std::uint32_t>(c);
    log_q_[c] = k + 1;
    cur = poly_mulmod(cur, w, f, p);
  }
  zech_q_.assign(qn_, 0);
  for (std::uint32_t k = 0; k < qn_; ++k) {
    zech_q_[k] = log_q_[plus_one(exp_q_[k], p)];
  }
}

void Field::build_extension() {
  // Smallest (c0, c1) by digit code, c0 first, with u^2 + c1 u + c0 rootless in F_q.
  bool found = false;
  for (std::uint64_t c0 = 1; c0 < q_ && !found; ++c0) {
    for (std::uint64_t c1 = 0; c1 < q_ && !found; ++c1) {
      const std::uint32_t l0 = log_q_[c0], l1 = log_q_[c1];
      bool root = false;
      for (std::uint32_t x = 1; x <= qn_ && !root; ++x) {
        root = qadd(qadd(qmul(x, x), qmul(l1, x)), l0) == 0;
      }
      if (!root) {
        fk_c0_code_ = c0;
        fk_c1_code_ = c1;
        neg_c0_ = qneg(l0);
        neg_c1_ = qneg(l1);
        found = true;
      }
    }
  }
  if (!found) throw Error(Errc::kInternal, "no quadratic modulus found");

  order_factors_ = prime_factors(n_);
  for (std::uint64_t c = 1; c <= n_; ++c) {
    const Elem x = tower_from_code(c);
    bool prim = true;
    for (auto r : order_factors_) {
      if (pow(x, static_cast<std::int64_t>(n_ / r)) == one()) {
        prim = false;
        break;
      }
    }
    if (prim) {
      zeta_ = x;
      return;
    }
  }
  throw Error(Errc::kInternal, "no primitive element found");
}

void Field::build_tables() {
  exp_k_.assign(n_, 0);
  log_k_.assign(n_ + 1, 0);
  Elem cur = one();
  for (std::uint64_t k = 0; k < n_; ++k) {
    const std::uint64_t c = tower_code(cur);
    exp_k_[k] = static_cast<std::uint32_t>(c);
    log_k_[c] = static_cast<std::uint32_t>(k + 1);
    cur = tower_mul(cur, zeta_);
  }
  zech_.assign(n_, 0);
  for (std::uint64_t k = 0; k < n_; ++k) {
    zech_[k] = log_k_[plus_one(exp_k_[k], p_)];
  }
  tables_ = true;
  zeta_ = {2};
}

std::uint64_t Field::tower_code(Elem a) const {
  const std::uint32_t a0 = lo(a), a1 = hi(a);
  const std::uint64_t d0 = a0 ? exp_q_[a0 - 1] : 0;
  const std::uint64_t d1 = a1 ? exp_q_[a1 - 1] : 0;
  return d0 + q_ * d1;
}

Elem Field::tower_from_code(std::uint64_t code) const {
  return {pack(log_q_[code % q_], log_q_[code / q_])};
}

Elem Field::from_code(std::uint64_t code) const {
  if (code > n_) throw Error(Errc::kInvalidArgument, "digit code out of range");
  if (tables_) return {log_k_[code]};
  return tower_from_code(code);
}

std::uint64_t Field::code(Elem a) const {
  if (tables_) return a.raw == 0 ? 0 : exp_k_[a.raw - 1];
  return tower_code(a);
}

std::vector<std::uint32_t> Field::digits(Elem a) const {
  std::uint64_t c = code(a);
  std::vector<std::uint32_t> out(2 * e_);
  for (auto& d : out) {
    d = static_cast<std::uint32_t>(c % p_);
    c /= p_;
  }
  return out;
}

Elem Field::from_digits(std::span<const std::uint32_t> digits) const {
  if (digits.size() != 2 * e_) {
    throw Error(Errc::kInvalidArgument, "expected " + std::to_string(2 * e_) + " digits");
  }
  std::uint64_t c = 0;
  for (std::size_t k = digits.size(); k-- > 0;) {
    if (digits[k] >= p_) throw Error(Errc::kInvalidArgument, "digit out of range");
    c = c * p_ + digits[k];
  }
  return from_code(c);
}

Elem Field::from_int(std::int64_t v) const {
  const std::int64_t p = p_;
  return from_code(static_cast<std::uint64_t>(((v % p) + p) % p));
}

Elem Field::inv(Elem a) const {
  if (a.raw == 0) throw Error(Errc::kInvalidArgument, "inverse of zero");
  if (auto* c = detail::g_mul_counter) ++*c;
  if (tables_) return {a.raw == 1 ? 1 : n_ - (a.raw - 1) + 1};
  const Elem c = conj(a);
  const std::uint32_t ninv = qinv(lo(tower_mul(a, c)));
  return {pack(qmul(lo(c), ninv), qmul(hi(c), ninv))};
}

Elem Field::pow(Elem a, std::int64_t k) const {
  if (k < 0) {
    a = inv(a);
    k = -k;
  }
  if (a.raw == 0) return k == 0 ? one() : zero();
  const auto ku = static_cast<std::uint64_t>(k);
  if (tables_) return {mulmod(a.raw - 1, ku % n_, n_) + 1};
  Elem r = one();
  for (std::uint64_t t = ku % n_; t; t >>= 1) {
    if (t & 1) r = tower_mul(r, a);
    a = tower_mul(a, a);
  }
  return r;
}

std::uint64_t Field::multiplicative_order(Elem a) const {
  if (a.raw == 0) throw Error(Errc::kInvalidArgument, "zero has no multiplicative order");
  std::uint64_t ord = n_;
  for (auto r : order_factors_) {
    while (ord % r == 0 && pow(a, static_cast<std::int64_t>(ord / r)) == one()) ord /= r;
  }
  return ord;
}

std::uint64_t discrete_log(const Field& f, Elem base, Elem target) {
  const std::uint64_t ord = f.multiplicative_order(base);
  if (ord > (std::uint64_t{1} << 40)) throw Error(Errc::kInvalidArgument, "group order exceeds 2^40");
  if (f.is_zero(target)) throw Error(Errc::kTargetNotInSubgroup, "target is zero");
  auto m = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(ord))));
  while (m * m < ord) ++m;
  std::unordered_map<std::uint64_t, std::uint64_t> baby;
  baby.reserve(m);
  Elem cur = f.one();
  for (std::uint64_t j = 0; j < m; ++j) {
    baby.emplace(cur.raw, j);
    cur = f.mul(cur, base);
  }
  const Elem giant = f.pow(base, -static_cast<std::int64_t>(m));
  Elem gamma = target;
  for (std::uint64_t i = 0; i * m < ord; ++i) {
    auto it = baby.find(gamma.raw);
    if (it != baby.end()) return i * m + it->second;
    gamma = f.mul(gamma, giant);
  }
  throw Error(Errc::kTargetNotInSubgroup, "target not in the subgroup generated by base");
}

}  // namespace unigauss
