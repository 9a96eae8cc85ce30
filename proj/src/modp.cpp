#include "kresolve/modp.hpp"

#include <stdexcept>

namespace kresolve::modp {

Field::Field(std::uint64_t p) : p_(p) {
  if (p < 3 || p >= (1ULL << 31)) throw std::invalid_argument("modp::Field: prime out of range");
  barrett_ = static_cast<std::uint64_t>((static_cast<unsigned __int128>(1) << 64) / p);
}

std::uint64_t Field::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t r = 1;
  a = reduce(a);
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t Field::inv(std::uint64_t a) const {
  if (a == 0) throw std::domain_error("modp::Field::inv: zero");
  return pow(a, p_ - 2);
}

std::uint64_t Field::from_int(long long v) const {
  const long long m = static_cast<long long>(p_);
  long long r = v % m;
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

std::uint64_t Field::from_mpz(const mpz_class& v) const {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p_);
  return r.get_ui();
}

std::optional<std::uint64_t> Field::from_mpq(const mpq_class& v) const {
  const std::uint64_t den = from_mpz(v.get_den());
  if (den == 0) return std::nullopt;
  return mul(from_mpz(v.get_num()), inv(den));
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  auto mulmod = [n](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
  };
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = 1, base = a % n, e = d;
    while (e) {
      if (e & 1) x = mulmod(x, base);
      base = mulmod(base, base);
      e >>= 1;
    }
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t large_prime(std::size_t k) {
  static std::vector<std::uint64_t> cache;
  std::uint64_t candidate = cache.empty() ? (1ULL << 31) - 1 : cache.back() - 2;
  while (cache.size() <= k) {
    while (!is_prime(candidate)) candidate -= 2;
    cache.push_back(candidate);
    candidate -= 2;
  }
  return cache[k];
}

void trim(UPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

UPoly derivative(const Field& f, const UPoly& a) {
  UPoly d;
  for (std::size_t i = 1; i < a.size(); ++i) d.push_back(f.mul(a[i], f.from_int(static_cast<long long>(i))));
  trim(d);
  return d;
}

UPoly gcd(const Field& f, UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // a <- a mod b
    const std::uint64_t lead_inv = f.inv(b.back());
    while (a.size() >= b.size() && !a.empty()) {
      const std::uint64_t q = f.mul(a.back(), lead_inv);
      const std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = f.sub(a[shift + i], f.mul(q, b[i]));
      trim(a);
    }
    std::swap(a, b);
  }
  if (!a.empty()) {
    const std::uint64_t lead_inv = f.inv(a.back());
    for (auto& c : a) c = f.mul(c, lead_inv);
  }
  return a;
}

UPoly interpolate(const Field& f, const std::vector<std::uint64_t>& xs, const std::vector<std::uint64_t>& ys) {
  const std::size_t n = xs.size();
  if (n == 0) return {};
  // Newton divided differences, then expansion into the monomial basis.
  std::vector<std::uint64_t> c(ys);
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = n - 1; i >= j; --i) {
      const std::uint64_t den = f.sub(xs[i], xs[i - j]);
      c[i] = f.mul(f.sub(c[i], c[i - 1]), f.inv(den));
    }
  }
  UPoly out(n, 0);
  for (std::size_t k = n; k-- > 0;) {
    // out = out * (x - xs[k]) + c[k]
    for (std::size_t i = n - 1; i > 0; --i) out[i] = f.sub(out[i - 1], f.mul(out[i], xs[k]));
    out[0] = f.sub(f.neg(0), f.mul(out[0], xs[k]));
    out[0] = f.add(out[0], c[k]);
  }
  return out;
}

}  // namespace kresolve::modp
