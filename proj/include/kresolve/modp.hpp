#ifndef KRESOLVE_MODP_HPP
#define KRESOLVE_MODP_HPP

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

namespace kresolve::modp {

/// Arithmetic in Z/p for primes p < 2^31, with Barrett reduction.
class Field {
 public:
  explicit Field(std::uint64_t p);

  std::uint64_t prime() const { return p_; }

  std::uint64_t reduce(std::uint64_t x) const {
    const auto q = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * barrett_) >> 64);
    std::uint64_t r = x - q * p_;
    while (r >= p_) r -= p_;
    return r;
  }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p_ - b; }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return reduce(a * b); }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  std::uint64_t inv(std::uint64_t a) const;

  std::uint64_t from_int(long long v) const;
  std::uint64_t from_mpz(const mpz_class& v) const;
  /// nullopt when p divides the denominator.
  std::optional<std::uint64_t> from_mpq(const mpq_class& v) const;
  /// Symmetric lift into (-p/2, p/2].
  long long lift(std::uint64_t a) const { return a > p_ / 2 ? static_cast<long long>(a) - static_cast<long long>(p_) : static_cast<long long>(a); }

 private:
  std::uint64_t p_;
  std::uint64_t barrett_;
};

bool is_prime(std::uint64_t n);
/// The k-th prime below 2^31 counting downwards (k = 0 is the largest).
std::uint64_t large_prime(std::size_t k);

/// Univariate helpers over Z/p; coefficient vectors are little-endian.
using UPoly = std::vector<std::uint64_t>;
void trim(UPoly& a);
UPoly derivative(const Field& f, const UPoly& a);
UPoly gcd(const Field& f, UPoly a, UPoly b);
/// Coefficients of the polynomial of degree < xs.size() through (xs, ys).
UPoly interpolate(const Field& f, const std::vector<std::uint64_t>& xs, const std::vector<std::uint64_t>& ys);

}  // namespace kresolve::modp

#endif  // KRESOLVE_MODP_HPP
