#ifndef KRESOLVE_GEOMETRY_HPP
#define KRESOLVE_GEOMETRY_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kresolve/detcx.hpp"
#include "kresolve/groebner.hpp"

namespace kresolve {

using Subset = std::vector<std::size_t>;

/// codim of I_r, the ideal of r x r minors, against (n+1) - r + 1.
struct MinorRow {
  int r = 0;
  int codim = 0;
  int required = 0;
  bool ok = false;
};

/// Projective dimension of V(I_r), read off as the largest X_T with
/// |T| = n + 2 - r, against the bound r - 2.
struct IntersectionRow {
  int r = 0;
  int dimension = 0;
  int allowed = 0;
  bool ok = false;
};

struct SubsetCodim {
  Subset alpha;
  int codim = 0;
};

struct ConditionReport {
  bool avramov_ok = false;
  bool geometric_ok = false;
  std::vector<MinorRow> avramov;
  std::vector<IntersectionRow> geometric;
  /// Projective dimension of X, -1 when empty, and its rational points
  /// when it is finite.
  int x_dimension = -1;
  std::vector<ProjPoint> x_points;

  bool strict_checked = false;
  bool strict_ok = false;
  std::vector<SubsetCodim> subset_codims;
  std::vector<Subset> strict_witnesses;
  /// Weak inequality codim(sum over alpha) >= |alpha|; set when the
  /// minor conditions hold.
  std::optional<bool> lemma_ok;

  std::vector<std::string> diagnostics;
};

/// Minor-ideal and intersection views of acyclicity; throws
/// std::logic_error if the two views disagree.
ConditionReport check_acyclicity(const MapSpec& spec);
/// Adds the strict codimension test over 1 <= |alpha| <= n to `report`;
/// throws std::logic_error if the weak inequality fails while the minor
/// conditions hold.
void check_strict_codim(const MapSpec& spec, ConditionReport& report);
ConditionReport check_strict_codim(const MapSpec& spec);

/// Linear subspace of P^n given by t = A s; columns of A span it.
struct LinearParam {
  std::vector<std::vector<Rat>> matrix;  // (n+1) x (k+1)
  std::size_t params() const { return matrix.empty() ? 0 : matrix[0].size(); }
};

struct BaseComponent {
  Subset alpha;
  int dimension = 0;
  std::vector<ProjPoint> points;
  /// Irrational points of a finite component that were not resolved.
  std::size_t unresolved = 0;
  std::optional<LinearParam> param;
};

/// Components of X_alpha with codim = |alpha|; finite ones carry their
/// rational points outside the other pairs' loci.
std::vector<BaseComponent> base_points(const MapSpec& spec);

/// Pairs vanishing at p.
Subset vanishing_pairs(const ProjPoint& p, const MapSpec& spec);
int fibre_dimension(const ProjPoint& p, const MapSpec& spec);
/// g_i(p) x_i - f_i(p) y_i, normalized.
MPoly point_factor(const ProjPoint& p, std::size_t i, const MapSpec& spec);

struct FactorAttribution {
  BaseComponent component;
  std::optional<ProjPoint> point;
  MPoly factor;
  unsigned exponent = 0;
};

struct ImplicitReport {
  explicit ImplicitReport(ResultantPoly r) : res(std::move(r)) {}

  ResultantPoly res;
  std::optional<MPoly> H;
  unsigned deg_phi = 0;
  std::vector<FactorAttribution> attributions;
  std::optional<SquarefreeDecomp> residual;
  ConditionReport conditions;
  std::vector<std::string> diagnostics;
  std::map<std::string, long long> timings_ms;
};

/// Divides the attributable base-locus factors out of res and reads H and
/// deg(phi) from the remaining perfect power.
ImplicitReport extract_implicit(const MapSpec& spec, const ResultantPoly& res, const std::vector<BaseComponent>& comps);

/// Trial-division exponent of factor in p.
unsigned factor_exponent(const MPoly& p, const MPoly& factor);

struct MuBound {
  explicit MuBound(ResultantPoly c) : certificate(std::move(c)) {}

  std::vector<unsigned> mu;
  unsigned product = 1;
  ResultantPoly certificate;
  std::vector<std::string> diagnostics;
};

/// Exponents mu_j with L_j in (G_0..G_n)^mu_j, where G = alpha_gens followed
/// by the L_i for i outside alpha, and the resultant of G.
MuBound mu_lower_bound(const MapSpec& spec, const Subset& alpha, const std::vector<MPoly>& alpha_gens,
                       unsigned max_power = 10);

/// Implicit equation of the map restricted to a linear base component,
/// in the pair variables outside alpha.
MPoly implicitize_restricted(const MapSpec& spec, const LinearParam& subspace, const Subset& alpha);

struct ImplicitOptions {
  std::optional<int> nu;
  DetMethod method = DetMethod::cayley;
  DetOptions det;
};

/// Conditions, base locus, resultant and factor analysis in one run. The
/// resultant is skipped when the minor conditions fail.
ImplicitReport implicitize(const MapSpec& spec, const ImplicitOptions& opt = {});

std::string subset_to_string(const Subset& s);

}  // namespace kresolve

#endif  // KRESOLVE_GEOMETRY_HPP
