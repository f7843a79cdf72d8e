#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>

#include <divfree/errors.hpp>

namespace divfree {

// Exact rational number.
//
// Values are always kept in lowest terms with a positive denominator.  Small
// values live in two int64 words; any result that does not fit is promoted to
// a GMP rational and demoted again as soon as it fits.  The representation is
// canonical, so equality is structural and the ordered containers used
// throughout the library stay deterministic.
class Scalar {
 public:
  Scalar() = default;
  Scalar(std::int64_t n) : num_(n) {}
  Scalar(int n) : num_(n) {}
  Scalar(std::int64_t n, std::int64_t d);
  explicit Scalar(const mpq_class& q);

  // Accepts "p" or "p/q" with an optional leading minus and arbitrary length.
  static Scalar from_string(std::string_view text);

  Scalar(const Scalar& o)
      : num_(o.num_),
        den_(o.den_),
        big_(o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr) {}
  Scalar(Scalar&&) noexcept = default;
  Scalar& operator=(const Scalar& o) {
    if (this != &o) {
      num_ = o.num_;
      den_ = o.den_;
      big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Scalar& operator=(Scalar&&) noexcept = default;

  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
  bool is_integer() const;
  int sign() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  Scalar operator-() const;
  Scalar reciprocal() const;

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return mpq_cmp(a.big_->get_mpq_t(), b.big_->get_mpq_t()) == 0;
    return false;  // canonical: the big form never holds a small value
  }
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);

  // The exact square root, when the value is a square of a rational.
  std::optional<Scalar> sqrt_exact() const;

  std::string to_string() const;  // "p" or "p/q"
  mpq_class to_mpq() const;

 private:
  void promote_and_normalize(const mpq_class& q);
  Scalar& add_slow(const Scalar& o, bool negate);
  Scalar& mul_slow(const Scalar& o);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;  // set iff the value does not fit int64/int64
};

}  // namespace divfree
