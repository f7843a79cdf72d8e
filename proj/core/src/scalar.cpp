#include <divfree/scalar.hpp>

#include <cctype>
#include <limits>

namespace divfree {

namespace {

constexpr std::int64_t kMin = std::numeric_limits<std::int64_t>::min();

// int64 helpers; every caller falls back to GMP when these report overflow.
inline bool checked_mul(std::int64_t a, std::int64_t b, std::int64_t& out) {
  return !__builtin_mul_overflow(a, b, &out) && out != kMin;
}
inline bool checked_add(std::int64_t a, std::int64_t b, std::int64_t& out) {
  return !__builtin_add_overflow(a, b, &out) && out != kMin;
}

inline bool fits_small(const mpz_class& z) {
  return mpz_fits_slong_p(z.get_mpz_t()) && mpz_get_si(z.get_mpz_t()) != kMin;
}

}  // namespace

Scalar::Scalar(std::int64_t n, std::int64_t d) {
  if (d == 0) throw DomainError("Scalar: zero denominator");
  if (n == kMin || d == kMin) {
    mpq_class q{mpz_class(n), mpz_class(d)};
    q.canonicalize();
    promote_and_normalize(q);
    return;
  }
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const std::int64_t g = std::gcd(n, d);
  num_ = n / g;
  den_ = d / g;
}

Scalar::Scalar(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  promote_and_normalize(c);
}

void Scalar::promote_and_normalize(const mpq_class& q) {
  if (fits_small(q.get_num()) && fits_small(q.get_den())) {
    num_ = mpz_get_si(q.get_num_mpz_t());
    den_ = mpz_get_si(q.get_den_mpz_t());
    big_.reset();
  } else {
    num_ = 0;
    den_ = 1;
    big_ = std::make_unique<mpq_class>(q);
  }
}

Scalar Scalar::from_string(std::string_view text) {
  const auto bad = [&] { return ParseError("Scalar: malformed rational '" + std::string(text) + "'"); };
  std::size_t i = 0;
  if (i < text.size() && text[i] == '-') ++i;
  const std::size_t num_begin = i;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  if (i == num_begin) throw bad();
  const std::string num_part(text.substr(0, i));
  std::string den_part = "1";
  if (i < text.size()) {
    if (text[i] != '/') throw bad();
    const std::size_t den_begin = ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == den_begin || i != text.size()) throw bad();
    den_part = std::string(text.substr(den_begin));
  }
  mpz_class den(den_part);
  if (den == 0) throw ParseError("Scalar: zero denominator in '" + std::string(text) + "'");
  mpq_class q(mpz_class(num_part), den);
  q.canonicalize();
  Scalar r;
  r.promote_and_normalize(q);
  return r;
}

bool Scalar::is_integer() const {
  if (!big_) return den_ == 1;
  return big_->get_den() == 1;
}

int Scalar::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

Scalar& Scalar::add_slow(const Scalar& o, bool negate) {
  mpq_class r = to_mpq();
  if (negate) {
    r -= o.to_mpq();
  } else {
    r += o.to_mpq();
  }
  promote_and_normalize(r);
  return *this;
}

Scalar& Scalar::mul_slow(const Scalar& o) {
  mpq_class r = to_mpq();
  r *= o.to_mpq();
  promote_and_normalize(r);
  return *this;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (big_ || o.big_) return add_slow(o, false);
  if (den_ == 1 && o.den_ == 1) {
    std::int64_t n;
    if (checked_add(num_, o.num_, n)) {
      num_ = n;
      return *this;
    }
    return add_slow(o, false);
  }
  const std::int64_t g0 = std::gcd(den_, o.den_);
  std::int64_t t1, t2, t, d;
  if (g0 == 1) {
    if (checked_mul(num_, o.den_, t1) && checked_mul(o.num_, den_, t2) &&
        checked_add(t1, t2, t) && checked_mul(den_, o.den_, d)) {
      num_ = t;
      den_ = d;
      return *this;
    }
    return add_slow(o, false);
  }
  if (checked_mul(num_, o.den_ / g0, t1) && checked_mul(o.num_, den_ / g0, t2) &&
      checked_add(t1, t2, t) && checked_mul(den_ / g0, o.den_, d)) {
    const std::int64_t g2 = std::gcd(t, g0);
    num_ = t / g2;
    den_ = d / g2;
    return *this;
  }
  return add_slow(o, false);
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (big_ || o.big_) return add_slow(o, true);
  return *this += (-o);
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (big_ || o.big_) return mul_slow(o);
  if (num_ == 0 || o.num_ == 0) {
    num_ = 0;
    den_ = 1;
    return *this;
  }
  if (den_ == 1 && o.den_ == 1) {
    std::int64_t n;
    if (checked_mul(num_, o.num_, n)) {
      num_ = n;
      return *this;
    }
    return mul_slow(o);
  }
  const std::int64_t g1 = std::gcd(num_, o.den_);
  const std::int64_t g2 = std::gcd(o.num_, den_);
  std::int64_t n, d;
  if (checked_mul(num_ / g1, o.num_ / g2, n) && checked_mul(den_ / g2, o.den_ / g1, d)) {
    num_ = n;
    den_ = d;
    return *this;
  }
  return mul_slow(o);
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw DomainError("Scalar: division by zero");
  return *this *= o.reciprocal();
}

Scalar Scalar::operator-() const {
  if (!big_) {
    Scalar r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  Scalar r;
  r.promote_and_normalize(mpq_class(-*big_));
  return r;
}

Scalar Scalar::reciprocal() const {
  if (is_zero()) throw DomainError("Scalar: reciprocal of zero");
  if (!big_) {
    Scalar r;
    if (num_ > 0) {
      r.num_ = den_;
      r.den_ = num_;
    } else {
      r.num_ = -den_;
      r.den_ = -num_;
    }
    return r;
  }
  Scalar r;
  r.promote_and_normalize(mpq_class(1 / *big_));
  return r;
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
  if (!a.big_ && !b.big_) {
    const __int128 l = static_cast<__int128>(a.num_) * b.den_;
    const __int128 r = static_cast<__int128>(b.num_) * a.den_;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  const int c = mpq_cmp(a.to_mpq().get_mpq_t(), b.to_mpq().get_mpq_t());
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::optional<Scalar> Scalar::sqrt_exact() const {
  if (sign() < 0) return std::nullopt;
  if (is_zero()) return Scalar(0);
  const mpq_class q = to_mpq();
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) {
    return std::nullopt;
  }
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), q.get_den_mpz_t());
  Scalar r;
  r.promote_and_normalize(mpq_class(sn, sd));
  return r;
}

std::string Scalar::to_string() const {
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

mpq_class Scalar::to_mpq() const {
  if (big_) return *big_;
  mpq_class r;
  // num_ and den_ are coprime with den_ > 0, so the result is canonical.
  mpq_set_si(r.get_mpq_t(), num_, static_cast<unsigned long>(den_));
  return r;
}

}  // namespace divfree
