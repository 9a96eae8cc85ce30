#ifndef KRESOLVE_DETCX_HPP
#define KRESOLVE_DETCX_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kresolve/koszul.hpp"

namespace kresolve {

/// The strand admits no valid subset selection: it is not generically
/// exact and its determinant (the resultant) vanishes identically.
class NotExactError : public AlgebraError {
 public:
  using AlgebraError::AlgebraError;
};

enum class DetMethod { cayley, interpolate, both };

std::string to_string(DetMethod m);
std::optional<DetMethod> parse_det_method(std::string_view s);

struct DetCertificate {
  std::string method;
  /// Selected columns of maps[k] for k = 1..length (index 0 unused).
  std::vector<std::vector<std::size_t>> columns;
  /// Pilot point (pair-variable values) used for the selection.
  std::vector<long long> pilot;
  std::vector<std::uint64_t> primes;
  std::size_t grid_points = 0;
  std::size_t local_reselections = 0;
  std::size_t singular_points = 0;
};

struct DetResult {
  MPoly poly;  // normalized
  DetCertificate certificate;
};

struct DetOptions {
  std::uint64_t seed = 0x6b7265736f6c7665ULL;
  std::size_t max_primes = 400;
  unsigned threads = 0;  // 0: hardware concurrency
};

/// Exact determinant by subset selection and fraction-free polynomial
/// elimination over k[X].
DetResult det_cayley(const Strand& s, const DetOptions& opt = {});
/// Determinant of a strand of bilinear forms by multi-modular evaluation on
/// a tensor grid and interpolation; bounds[i] is the degree in pair i.
DetResult det_interpolate(const Strand& s, std::span<const unsigned> bounds, const DetOptions& opt = {});

/// Shuffle sign of (J | complement of J) inside {0..n-1}.
int shuffle_sign(std::span<const std::size_t> subset, std::size_t n);

/// Determinant of the complex over Q at a point, using the given column
/// selection; nullopt when a chosen minor vanishes there.
std::optional<Rat> det_at_point(const Strand& s, const std::vector<std::vector<std::size_t>>& columns,
                                std::span<const Rat> values);

struct ResultantPoly {
  MPoly poly;  // zero when the strand is not generically exact
  std::vector<unsigned> multidegree;
  int nu = 0;
  int eta = 0;
  DetCertificate certificate;
  std::vector<std::string> diagnostics;
};

ResultantPoly macaulay_resultant(const MapSpec& spec, std::optional<int> nu = std::nullopt, DetMethod method = DetMethod::cayley,
                                 const DetOptions& opt = {});
/// Resultant of arbitrary forms P_i (homogeneous in t, coefficients in k[X])
/// through the Cayley backend at nu = eta + 1.
ResultantPoly general_resultant(std::span<const MPoly> forms, const DetOptions& opt = {});

/// True when p is multihomogeneous with pair degrees e and free of t.
bool has_pair_multidegree(const MPoly& p, std::span<const unsigned> e);

}  // namespace kresolve

#endif  // KRESOLVE_DETCX_HPP
