#ifndef KRESOLVE_GROEBNER_HPP
#define KRESOLVE_GROEBNER_HPP

#include <span>
#include <string>
#include <vector>

#include "kresolve/polyring.hpp"

namespace kresolve {

enum class OrderKind { degrevlex, lex };

/// Monomial order on a subset of the ring variables, listed from the
/// largest variable to the smallest. Polynomials handed to the engine must
/// not involve variables outside the subset.
struct TermOrder {
  OrderKind kind = OrderKind::degrevlex;
  std::vector<std::size_t> vars;

  static TermOrder degrevlex_t(const Ring& ring);
  static TermOrder degrevlex_all(const Ring& ring);
  static TermOrder lex(std::vector<std::size_t> vars);

  /// a > b in this order.
  bool greater(const Monomial& a, const Monomial& b) const;
};

struct GroebnerBasis {
  TermOrder order;
  std::vector<MPoly> generators;  // reduced, monic, sorted by leading monomial
  std::vector<MPoly> source;

  bool is_unit() const;
  std::vector<Monomial> leading_monomials() const;
};

/// Reduced Groebner basis by Buchberger's algorithm with the normal
/// selection strategy (smallest lcm degree, ties by index).
GroebnerBasis buchberger(std::span<const MPoly> gens, const TermOrder& order);
MPoly normal_form(const MPoly& f, const GroebnerBasis& gb);
/// Leading term of p under the order of gb; p nonzero.
Monomial leading_monomial(const MPoly& p, const TermOrder& order);
MPoly s_polynomial(const MPoly& f, const MPoly& g, const TermOrder& order);

/// Codimension in A = k[t_0..t_n] of the ideal generated by homogeneous
/// t-polynomials; an ideal with empty projective locus reports n+1.
int projective_codimension(std::span<const MPoly> gens);
/// Projective dimension of V(gens) in P^n; -1 for the empty set.
int projective_dimension(std::span<const MPoly> gens);

/// All e-fold products of generators (normalized, duplicates removed).
std::vector<MPoly> ideal_power(std::span<const MPoly> gens, unsigned e);
/// Ideal membership over every variable the inputs involve.
bool ideal_member(const MPoly& f, std::span<const MPoly> gens);

/// Point of P^n with rational coordinates, scaled so that the last nonzero
/// coordinate is 1.
class ProjPoint {
 public:
  explicit ProjPoint(std::vector<Rat> coords);

  const std::vector<Rat>& coords() const { return coords_; }
  std::size_t size() const { return coords_.size(); }
  const Rat& operator[](std::size_t i) const { return coords_[i]; }
  bool operator==(const ProjPoint& other) const { return coords_ == other.coords_; }
  bool operator<(const ProjPoint& other) const;
  /// Primitive integer coordinates with the first nonzero one positive, e.g. "(1:2:3)".
  std::string to_string() const;
  /// Values for the whole ring: t-block from this point, zeros elsewhere.
  std::vector<Rat> ring_values(const Ring& ring) const;

 private:
  std::vector<Rat> coords_;
};

struct ZeroLocus {
  std::vector<ProjPoint> points;  // sorted
  /// Solutions of the triangular system that are not rational, counted
  /// through the degrees of squarefree univariate eliminants.
  std::size_t unresolved = 0;
};

/// Rational points of a projectively zero-dimensional (or empty) locus.
ZeroLocus rational_zero_locus(std::span<const MPoly> gens);

/// Rational roots of a univariate polynomial in `var` (other variables
/// absent), without multiplicity.
std::vector<Rat> rational_roots(const MPoly& p, std::size_t var);

}  // namespace kresolve

#endif  // KRESOLVE_GROEBNER_HPP
