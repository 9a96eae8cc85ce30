#ifndef KRESOLVE_POLYRING_HPP
#define KRESOLVE_POLYRING_HPP

#include <gmpxx.h>

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace kresolve {

using Integer = mpz_class;
using Rat = mpq_class;

/// Raised for malformed polynomial text, unknown names and similar input faults.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an algebraic precondition does not hold (ring mismatch,
/// inexact division, missing k-th root, ...).
class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Variables of R = k[t_0..t_n] (x) k[x_0,y_0,...,x_n,y_n].
///
/// Variable indices are laid out as t_0..t_{m-1}, x_0, y_0, x_1, y_1, ...
/// so that the declared order (used by graded-lex) puts the t-block first.
class RingSpec {
 public:
  RingSpec(std::vector<std::string> t_vars,
           std::vector<std::pair<std::string, std::string>> pairs);

  /// Ring with t-variables t_vars and pair variables named x0,y0,x1,y1,...
  static std::shared_ptr<const RingSpec> with_default_pairs(
      std::vector<std::string> t_vars, std::size_t pair_count);

  std::size_t num_t() const { return t_vars_.size(); }
  std::size_t num_pairs() const { return pairs_.size(); }
  std::size_t num_vars() const { return names_.size(); }

  std::size_t x_index(std::size_t pair) const { return num_t() + 2 * pair; }
  std::size_t y_index(std::size_t pair) const { return num_t() + 2 * pair + 1; }
  bool is_t_var(std::size_t var) const { return var < num_t(); }
  /// Pair index of a pair variable.
  std::size_t pair_of(std::size_t var) const { return (var - num_t()) / 2; }

  const std::string& name(std::size_t var) const { return names_.at(var); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::string>& t_vars() const { return t_vars_; }
  const std::vector<std::pair<std::string, std::string>>& pairs() const { return pairs_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  bool operator==(const RingSpec& other) const { return names_ == other.names_ && num_t() == other.num_t(); }

 private:
  std::vector<std::string> t_vars_;
  std::vector<std::pair<std::string, std::string>> pairs_;
  std::vector<std::string> names_;
};

using Ring = std::shared_ptr<const RingSpec>;

inline constexpr std::size_t kMaxVars = 24;

/// Dense exponent vector. Unused trailing slots stay zero so that
/// comparisons never need the ring.
class Monomial {
 public:
  Monomial() = default;

  std::uint16_t operator[](std::size_t var) const { return exp_[var]; }
  void set(std::size_t var, unsigned e);
  unsigned degree() const { return degree_; }
  bool is_one() const { return degree_ == 0; }

  Monomial operator*(const Monomial& other) const;
  bool divides(const Monomial& other) const;
  /// other / *this; precondition divides(other).
  Monomial quotient_of(const Monomial& other) const;
  Monomial lcm(const Monomial& other) const;
  bool coprime(const Monomial& other) const;

  /// Graded-lexicographic comparison in declared variable order.
  std::strong_ordering operator<=>(const Monomial& other) const {
    if (degree_ != other.degree_) return degree_ <=> other.degree_;
    return exp_ <=> other.exp_;
  }
  bool operator==(const Monomial& other) const = default;

  const std::array<std::uint16_t, kMaxVars>& exponents() const { return exp_; }

 private:
  std::array<std::uint16_t, kMaxVars> exp_{};
  unsigned degree_ = 0;
};

struct Term {
  Monomial mono;
  Rat coef;
};

/// Multidegree: total degree in the t-block and per-pair degrees; nullopt
/// marks a block in which the polynomial is not homogeneous.
struct MultiDeg {
  std::optional<int> t_deg;
  std::vector<std::optional<int>> pair_degs;

  bool operator==(const MultiDeg&) const = default;
  bool homogeneous() const;
};

/// Exact multivariate polynomial over Q. Terms are kept sorted by
/// decreasing graded-lex order with no zero coefficients.
class MPoly {
 public:
  explicit MPoly(Ring ring);
  MPoly(Ring ring, const Rat& constant);
  MPoly(Ring ring, std::vector<Term> terms);  // canonicalises

  static MPoly variable(Ring ring, std::size_t var);
  static MPoly monomial(Ring ring, const Monomial& m, const Rat& coef = 1);

  const Ring& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  Rat constant_value() const;

  const Term& leading() const;
  unsigned total_degree() const;
  unsigned degree_in(std::size_t var) const;
  bool involves(std::size_t var) const { return degree_in(var) > 0; }
  /// Degree in the t-block, maximum over terms.
  unsigned t_degree() const;
  unsigned pair_degree(std::size_t pair) const;
  bool only_t_vars() const;
  bool only_pair_vars() const;

  MPoly operator-() const;
  MPoly& operator+=(const MPoly& other);
  MPoly& operator-=(const MPoly& other);
  MPoly& operator*=(const MPoly& other);
  MPoly& operator*=(const Rat& c);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator*(MPoly a, const Rat& c) { return a *= c; }
  friend MPoly operator*(const Rat& c, MPoly a) { return a *= c; }
  bool operator==(const MPoly& other) const;

  MPoly pow(unsigned e) const;
  MPoly derivative(std::size_t var) const;
  /// Coefficients of this as a polynomial in `var`; entry k multiplies var^k.
  std::vector<MPoly> coefficients_in(std::size_t var) const;
  /// Coefficient of the monomial `m` when this is viewed as a polynomial in
  /// the t-block with coefficients in the pair variables.
  MPoly t_coefficient(const Monomial& t_mono) const;

  /// Exact quotient, or nullopt when `divisor` does not divide this.
  std::optional<MPoly> try_divide(const MPoly& divisor) const;
  MPoly divide_exact(const MPoly& divisor) const;

  /// Primitive integer representative with positive leading coefficient.
  MPoly normalized() const;
  /// Rational c with *this == c * normalized().
  Rat unit_to_normalized() const;
  /// Leading coefficient made 1.
  MPoly monic() const;

  MultiDeg multidegree() const;
  std::string to_string() const;

 private:
  void canonicalize();
  void check_ring(const MPoly& other) const;

  Ring ring_;
  std::vector<Term> terms_;
};

MPoly from_sum(Ring ring, std::vector<Term> terms);
bool same_ring(const Ring& a, const Ring& b);
/// True when a = c * b for some nonzero rational c (both zero also counts).
bool equal_up_to_unit(const MPoly& a, const MPoly& b);

/// Substitution values for evaluate(): a rational or a polynomial of the
/// same ring.
using SubstValue = std::variant<Rat, MPoly>;
using Assignment = std::map<std::size_t, SubstValue>;

MPoly evaluate(const MPoly& p, const Assignment& assignment);
/// Full numeric evaluation; values.size() == ring variable count.
Rat evaluate_at(const MPoly& p, std::span<const Rat> values);
/// Re-express p in another ring by matching variable names; variables
/// missing from the target ring must not occur in p.
MPoly change_ring(const MPoly& p, const Ring& target);

MPoly parse_poly(std::string_view text, const Ring& ring);

MPoly multivariate_gcd(const MPoly& a, const MPoly& b);
/// Gcd of the polynomial coefficients of p viewed as univariate in var.
MPoly content_in(const MPoly& p, std::size_t var);

struct SquarefreePart {
  MPoly part;
  unsigned multiplicity;
};
struct SquarefreeDecomp {
  Ring ring;
  std::vector<SquarefreePart> parts;  // increasing multiplicity
  MPoly reconstruct() const;
};

SquarefreeDecomp squarefree_decompose(const MPoly& p);
/// Rigorous one-sided test: true means p is certainly squarefree.
bool certainly_squarefree(const MPoly& p);
MPoly kth_root(const MPoly& p, unsigned k);

}  // namespace kresolve

#endif  // KRESOLVE_POLYRING_HPP
