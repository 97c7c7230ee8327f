#pragma once

#include <atomic>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace qtwist {

/// Exact rational scalar. Canonical form (lowest terms, positive
/// denominator) is maintained by GMP after every operation.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  static Rational from_fraction(const mpq_class& q) { return Rational(q); }
  static std::string name() { return "rational"; }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }

  Rational inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    return Rational(mpq_class(1) / v_);
  }

  const mpq_class& to_mpq() const { return v_; }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    v_ /= o.v_;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const { return Rational(mpq_class(-v_)); }
  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.v_.get_str();
  }

 private:
  mpq_class v_;
};

/// Prime field F_p. The modulus is process-wide and must be set before any
/// value is created; mixing moduli within one computation is undefined.
class ModP {
 public:
  ModP() = default;
  ModP(long v) {  // NOLINT(google-explicit-constructor)
    const long p = modulus();
    long r = v % p;
    if (r < 0) r += p;
    r_ = static_cast<std::uint32_t>(r);
  }

  static void set_modulus(std::uint32_t p);
  static std::uint32_t modulus() { return modulus_.load(std::memory_order_relaxed); }
  static std::string name() { return "fp:" + std::to_string(modulus()); }

  static ModP from_fraction(const mpq_class& q) {
    const mpz_class p = modulus();
    mpz_class num = q.get_num() % p;
    mpz_class den = q.get_den() % p;
    if (den == 0) throw std::domain_error("denominator vanishes modulo p");
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
    mpz_class r = (num * inv) % p;
    if (r < 0) r += p;
    ModP out;
    out.r_ = static_cast<std::uint32_t>(r.get_ui());
    return out;
  }

  bool is_zero() const { return r_ == 0; }
  bool is_one() const { return r_ == 1; }
  std::uint32_t residue() const { return r_; }

  ModP inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    // Fermat: a^(p-2)
    std::uint64_t base = r_, result = 1, e = modulus() - 2;
    const std::uint64_t p = modulus();
    while (e) {
      if (e & 1) result = result * base % p;
      base = base * base % p;
      e >>= 1;
    }
    ModP out;
    out.r_ = static_cast<std::uint32_t>(result);
    return out;
  }

  mpq_class to_mpq() const { return mpq_class(static_cast<unsigned long>(r_)); }

  ModP& operator+=(const ModP& o) {
    std::uint64_t s = std::uint64_t(r_) + o.r_;
    if (s >= modulus()) s -= modulus();
    r_ = static_cast<std::uint32_t>(s);
    return *this;
  }
  ModP& operator-=(const ModP& o) {
    r_ = r_ >= o.r_ ? r_ - o.r_ : static_cast<std::uint32_t>(r_ + std::uint64_t(modulus()) - o.r_);
    return *this;
  }
  ModP& operator*=(const ModP& o) {
    r_ = static_cast<std::uint32_t>(std::uint64_t(r_) * o.r_ % modulus());
    return *this;
  }
  ModP& operator/=(const ModP& o) { return *this *= o.inverse(); }
  friend ModP operator+(ModP a, const ModP& b) { return a += b; }
  friend ModP operator-(ModP a, const ModP& b) { return a -= b; }
  friend ModP operator*(ModP a, const ModP& b) { return a *= b; }
  friend ModP operator/(ModP a, const ModP& b) { return a /= b; }
  ModP operator-() const { return ModP(0) - *this; }
  friend bool operator==(const ModP& a, const ModP& b) { return a.r_ == b.r_; }

  friend std::ostream& operator<<(std::ostream& os, const ModP& r) { return os << r.r_; }

 private:
  std::uint32_t r_ = 0;
  static inline std::atomic<std::uint32_t> modulus_{32003};
};

inline void ModP::set_modulus(std::uint32_t p) {
  if (p < 2) throw std::invalid_argument("modulus must be a prime >= 2");
  for (std::uint32_t d = 2; std::uint64_t(d) * d <= p; ++d)
    if (p % d == 0) throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
  modulus_.store(p, std::memory_order_relaxed);
}

}  // namespace qtwist
