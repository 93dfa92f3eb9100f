#pragma once
// Arithmetic for the finite fields GF(p^h), p^h <= 4096.
//
// An element is encoded as an integer in [0, q): its base-p digits are the
// coefficients of the residue polynomial, least significant digit = constant
// term. For h >= 2 multiplication reduces modulo a fixed monic irreducible,
// chosen per (p, h) as the one with the smallest coefficient encoding, so
// encodings are reproducible. The frozen table below is re-verified by trial
// division whenever a Field is constructed.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace singergq {

using fel = std::uint16_t;  // field element encoding, valid range [0, q)

namespace detail {

struct modulus_entry {
  std::uint16_t p;
  std::uint16_t h;
  std::uint16_t enc;  // base-p encoding of the low coefficients c_0..c_{h-1}
};

inline constexpr std::array<modulus_entry, 40> modulus_table{{
    {2, 2, 3},     // x^2+x+1
    {2, 3, 3},     // x^3+x+1
    {2, 4, 3},     // x^4+x+1
    {2, 5, 5},     // x^5+x^2+1
    {2, 6, 3},     // x^6+x+1
    {2, 7, 3},     // x^7+x+1
    {2, 8, 27},    // x^8+x^4+x^3+x+1
    {2, 9, 3},     // x^9+x+1
    {2, 10, 9},    // x^10+x^3+1
    {2, 11, 5},    // x^11+x^2+1
    {2, 12, 9},    // x^12+x^3+1
    {3, 2, 1},     // x^2+1
    {3, 3, 7},     // x^3+2x+1
    {3, 4, 5},     // x^4+x+2
    {3, 5, 7},     // x^5+2x+1
    {3, 6, 5},     // x^6+x+2
    {3, 7, 11},    // x^7+x^2+2
    {5, 2, 2},     // x^2+2
    {5, 3, 6},     // x^3+x+1
    {5, 4, 2},     // x^4+2
    {5, 5, 21},    // x^5+4x+1
    {7, 2, 1},     // x^2+1
    {7, 3, 2},     // x^3+2
    {7, 4, 8},     // x^4+x+1
    {11, 2, 1},    // x^2+1
    {11, 3, 15},   // x^3+x+4
    {13, 2, 2},    // x^2+2
    {13, 3, 2},    // x^3+2
    {17, 2, 3},    // x^2+3
    {19, 2, 1},    // x^2+1
    {23, 2, 1},    // x^2+1
    {29, 2, 2},    // x^2+2
    {31, 2, 1},    // x^2+1
    {37, 2, 2},    // x^2+2
    {41, 2, 3},    // x^2+3
    {43, 2, 1},    // x^2+1
    {47, 2, 1},    // x^2+1
    {53, 2, 2},    // x^2+2
    {59, 2, 1},    // x^2+1
    {61, 2, 2},    // x^2+2
}};

}  // namespace detail

class Field {
 public:
  explicit Field(unsigned q) : q_(q) {
    if (q < 2 || q > 4096) throw std::domain_error("field order out of range");
    factor_order();
    load_modulus();
    if (h_ >= 2 && !modulus_irreducible())
      throw std::logic_error("frozen modulus failed irreducibility check");
    if (q_ <= 256) build_tables();
  }

  unsigned q() const { return q_; }
  unsigned p() const { return p_; }
  unsigned h() const { return h_; }

  fel add(fel a, fel b) const {
    return tabled_ ? add_tab_[a * q_ + b] : add_slow(a, b);
  }
  fel sub(fel a, fel b) const { return add(a, neg(b)); }
  fel neg(fel a) const {
    if (p_ == 2) return a;
    unsigned r = 0, m = 1, x = a;
    for (unsigned i = 0; i < h_; ++i, x /= p_, m *= p_)
      r += ((p_ - x % p_) % p_) * m;
    return static_cast<fel>(r);
  }
  fel mul(fel a, fel b) const {
    return tabled_ ? mul_tab_[a * q_ + b] : mul_slow(a, b);
  }
  fel inv(fel a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    return tabled_ ? inv_tab_[a] : pow(a, static_cast<long long>(q_) - 2);
  }
  fel div(fel a, fel b) const { return mul(a, inv(b)); }

  fel pow(fel a, long long e) const {
    if (a == 0) {
      if (e > 0) return 0;
      if (e == 0) return 1;
      throw std::domain_error("inverse of zero");
    }
    long long m = static_cast<long long>(q_) - 1;
    e %= m;
    if (e < 0) e += m;
    fel r = 1, x = a;
    while (e) {
      if (e & 1) r = mul(r, x);
      x = mul(x, x);
      e >>= 1;
    }
    return r;
  }
  fel frob(fel a) const { return pow(a, p_); }  // x -> x^p

  fel scalar(unsigned k) const { return static_cast<fel>(k % p_); }
  bool in_prime_field(fel a) const { return a < p_; }

  std::vector<std::uint8_t> digits(fel a) const {
    std::vector<std::uint8_t> d(h_);
    for (unsigned i = 0; i < h_; ++i, a /= p_) d[i] = a % p_;
    return d;
  }
  fel from_digits(const std::vector<std::uint8_t>& d) const {
    unsigned r = 0;
    for (unsigned i = h_; i-- > 0;) r = r * p_ + (i < d.size() ? d[i] % p_ : 0);
    return static_cast<fel>(r);
  }

  // monic modulus, coefficients c_0..c_h with c_h = 1 (for h = 1: x, unused)
  const std::vector<std::uint8_t>& modulus() const { return mod_; }

 private:
  unsigned q_, p_ = 0, h_ = 0;
  std::vector<std::uint8_t> mod_;
  std::vector<fel> add_tab_, mul_tab_, inv_tab_;
  bool tabled_ = false;

  void factor_order() {
    unsigned n = q_;
    for (unsigned d = 2; d * d <= n; ++d)
      if (n % d == 0) {
        p_ = d;
        break;
      }
    if (!p_) p_ = n;
    h_ = 0;
    while (n > 1) {
      if (n % p_) throw std::domain_error("field order is not a prime power");
      n /= p_;
      ++h_;
    }
  }

  void load_modulus() {
    mod_.assign(h_ + 1, 0);
    mod_[h_] = 1;
    if (h_ == 1) return;
    for (const auto& e : detail::modulus_table)
      if (e.p == p_ && e.h == h_) {
        unsigned enc = e.enc;
        for (unsigned i = 0; i < h_; ++i, enc /= p_) mod_[i] = enc % p_;
        return;
      }
    throw std::logic_error("no frozen modulus for this field order");
  }

  // remainder of a (low-first coeffs) by monic b, both over GF(p)
  static void polymod(std::vector<unsigned>& a, const std::vector<unsigned>& b,
                      unsigned p) {
    while (a.size() >= b.size()) {
      unsigned c = a.back();
      if (c) {
        std::size_t k = a.size() - b.size();
        for (std::size_t i = 0; i + 1 < b.size(); ++i)
          a[k + i] = (a[k + i] + c * (p - b[i])) % p;
      }
      a.pop_back();
      while (!a.empty() && a.back() == 0) a.pop_back();
    }
  }

  bool modulus_irreducible() const {
    std::vector<unsigned> f(mod_.begin(), mod_.end());
    for (unsigned d = 1; d <= h_ / 2; ++d) {
      unsigned count = 1;
      for (unsigned i = 0; i < d; ++i) count *= p_;
      for (unsigned enc = 0; enc < count; ++enc) {
        std::vector<unsigned> g(d + 1, 0);
        unsigned e = enc;
        for (unsigned i = 0; i < d; ++i, e /= p_) g[i] = e % p_;
        g[d] = 1;
        std::vector<unsigned> r = f;
        polymod(r, g, p_);
        if (r.empty()) return false;
      }
    }
    return true;
  }

  fel add_slow(fel a, fel b) const {
    unsigned r = 0, m = 1;
    for (unsigned i = 0; i < h_; ++i, a /= p_, b /= p_, m *= p_)
      r += ((a % p_ + b % p_) % p_) * m;
    return static_cast<fel>(r);
  }

  fel mul_slow(fel a, fel b) const {
    std::vector<unsigned> prod(2 * h_ - 1, 0);
    std::vector<unsigned> da(h_), db(h_);
    for (unsigned i = 0; i < h_; ++i, a /= p_) da[i] = a % p_;
    for (unsigned i = 0; i < h_; ++i, b /= p_) db[i] = b % p_;
    for (unsigned i = 0; i < h_; ++i)
      if (da[i])
        for (unsigned j = 0; j < h_; ++j)
          prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
    for (unsigned i = 2 * h_ - 2; i >= h_ && i < prod.size(); --i) {
      unsigned c = prod[i];
      if (c) {
        prod[i] = 0;
        for (unsigned j = 0; j < h_; ++j)
          prod[i - h_ + j] = (prod[i - h_ + j] + c * (p_ - mod_[j])) % p_;
      }
    }
    unsigned r = 0;
    for (unsigned i = h_; i-- > 0;) r = r * p_ + prod[i];
    return static_cast<fel>(r);
  }

  void build_tables() {
    add_tab_.resize(q_ * q_);
    mul_tab_.resize(q_ * q_);
    inv_tab_.assign(q_, 0);
    for (unsigned a = 0; a < q_; ++a)
      for (unsigned b = 0; b < q_; ++b) {
        add_tab_[a * q_ + b] = add_slow(static_cast<fel>(a), static_cast<fel>(b));
        fel m = mul_slow(static_cast<fel>(a), static_cast<fel>(b));
        mul_tab_[a * q_ + b] = m;
        if (m == 1) inv_tab_[a] = static_cast<fel>(b);
      }
    tabled_ = true;
  }
};

// Solves den * k == num (mod q-1): the exponent k with t^(num/den) = t^k for
// every t in the cyclic group GF(q)^*. Throws when no solution exists.
inline unsigned frac_exponent(unsigned num, unsigned den, unsigned q) {
  unsigned m = q - 1;
  for (unsigned k = 0; k < m; ++k)
    if (den * k % m == num % m) return k;
  throw std::domain_error("no fractional exponent");
}

}  // namespace singergq
