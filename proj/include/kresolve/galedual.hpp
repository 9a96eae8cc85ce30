#ifndef KRESOLVE_GALEDUAL_HPP
#define KRESOLVE_GALEDUAL_HPP

#include <string>
#include <string_view>
#include <vector>

#include "kresolve/koszul.hpp"

namespace kresolve {

using IntMatrix = std::vector<std::vector<long long>>;

/// One row per line, whitespace-separated integers; blank lines and lines
/// starting with '#' are skipped.
IntMatrix parse_int_matrix(std::string_view text);
std::string int_matrix_to_string(const IntMatrix& m);
Integer int_determinant(const IntMatrix& m);

/// Integer matrix whose rows give linear forms and whose columns give the
/// exponent splits of the pairs. Columns sum to zero, no row is zero and
/// the columns are independent.
class GaleMatrix {
 public:
  explicit GaleMatrix(IntMatrix entries);

  std::size_t rows() const { return entries_.size(); }
  std::size_t cols() const { return entries_.front().size(); }
  long long at(std::size_t r, std::size_t c) const { return entries_[r][c]; }
  const IntMatrix& entries() const { return entries_; }

 private:
  IntMatrix entries_;
};

/// Ring with one t-variable per column (u, v, w for three columns, else
/// t0, t1, ...) and default pair names.
Ring gale_ring(std::size_t cols);

/// l_r = sum_j B[r][j] t_j.
std::vector<MPoly> gale_linear_forms(const GaleMatrix& b, const Ring& ring);
std::vector<MPoly> gale_linear_forms(const IntMatrix& rows, const Ring& ring);
/// f_i = prod l_r^max(B[r][i], 0), g_i = prod l_r^max(-B[r][i], 0).
MapSpec gale_map(const GaleMatrix& b, const Ring& ring, CoprimeMode mode = CoprimeMode::strict);
/// B * M for a unimodular M.
GaleMatrix column_transform(const GaleMatrix& b, const IntMatrix& m);

}  // namespace kresolve

#endif  // KRESOLVE_GALEDUAL_HPP
