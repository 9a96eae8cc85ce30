#ifndef KRESOLVE_KOSZUL_HPP
#define KRESOLVE_KOSZUL_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kresolve/polyring.hpp"

namespace kresolve {

enum class CoprimeMode { strict, permissive };

struct MapPair {
  MPoly f;
  MPoly g;
  unsigned d;
};

/// The map t -> ((f_0 : g_0), ..., (f_n : g_n)) with homogeneous pairs.
class MapSpec {
 public:
  MapSpec(Ring ring, std::vector<std::pair<MPoly, MPoly>> pairs, CoprimeMode mode = CoprimeMode::strict);

  const Ring& ring() const { return ring_; }
  std::size_t size() const { return pairs_.size(); }
  const MapPair& pair(std::size_t i) const { return pairs_.at(i); }
  const std::vector<MapPair>& pairs() const { return pairs_; }
  std::vector<unsigned> degrees() const;
  CoprimeMode mode() const { return mode_; }
  /// Pairs sharing a common factor (permissive mode only), as text.
  const std::vector<std::string>& warnings() const { return warnings_; }

  /// Sum of (d_i - 1).
  int eta() const;
  /// e_i = product of d_j over j != i.
  std::vector<unsigned> resultant_multidegree() const;
  /// The ideal (f_i, g_i).
  std::vector<MPoly> pair_ideal(std::size_t i) const { return {pairs_.at(i).f, pairs_.at(i).g}; }

 private:
  Ring ring_;
  std::vector<MapPair> pairs_;
  CoprimeMode mode_;
  std::vector<std::string> warnings_;
};

/// L_i = g_i*x_i - f_i*y_i.
std::vector<MPoly> linear_forms(const MapSpec& spec);

/// Dense matrix of polynomials.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(const Ring& ring, std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const MPoly& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  MPoly& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<MPoly> entries_;
};

struct StrandBasisElem {
  std::vector<std::size_t> subset;  // increasing
  Monomial t_mono;
};

/// Degree-nu strand of K.(P_0..P_n; A[X]). bases[k] spans the homological
/// level k; maps[k] (k >= 1) sends level k to level k-1, with rows indexed
/// by bases[k-1] and columns by bases[k].
struct Strand {
  Ring ring;
  int nu = 0;
  std::vector<unsigned> degrees;
  std::vector<std::vector<StrandBasisElem>> bases;
  std::vector<PolyMatrix> maps;

  std::size_t length() const { return bases.size() - 1; }
  std::vector<std::size_t> ranks() const;
  int euler_characteristic() const;
};

/// Forms P_i homogeneous in t of degree d_i with coefficients in k[X].
/// nu must exceed the sum of (d_i - 1) unless allow_low_nu is set.
Strand koszul_strand(std::span<const MPoly> forms, int nu, bool allow_low_nu = false);
/// Strand of the linear forms of spec at nu (default eta + 1).
Strand koszul_strand(const MapSpec& spec, std::optional<int> nu = std::nullopt);

/// Number of t-monomials of degree deg in m variables (0 for deg < 0).
std::size_t count_monomials(int deg, std::size_t m);
/// t-monomials of degree deg in the first m variables, decreasing lex.
std::vector<Monomial> t_monomials(int deg, std::size_t m);

struct SanityReport {
  bool ok = true;
  std::string message;
  /// First failing entry of maps[level] * maps[level + 1].
  std::optional<std::size_t> level, row, col;
};

SanityReport strand_sanity(const Strand& s);

}  // namespace kresolve

#endif  // KRESOLVE_KOSZUL_HPP
