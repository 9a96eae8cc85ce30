#include "kresolve/galedual.hpp"

#include <sstream>

namespace kresolve {

IntMatrix parse_int_matrix(std::string_view text) {
  IntMatrix out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::vector<long long> row;
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      long long v = 0;
      try {
        v = std::stoll(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) throw ParseError("line " + std::to_string(lineno) + ": not an integer: " + tok);
      row.push_back(v);
    }
    if (!out.empty() && row.size() != out.front().size())
      throw ParseError("line " + std::to_string(lineno) + ": expected " + std::to_string(out.front().size()) + " entries");
    out.push_back(std::move(row));
  }
  if (out.empty()) throw ParseError("empty matrix");
  return out;
}

std::string int_matrix_to_string(const IntMatrix& m) {
  std::string s;
  for (const auto& row : m) {
    for (std::size_t j = 0; j < row.size(); ++j) s += (j ? " " : "") + std::to_string(row[j]);
    s += "\n";
  }
  return s;
}

namespace {

std::size_t int_rank(const IntMatrix& m) {
  std::vector<std::vector<Rat>> a;
  for (const auto& row : m) {
    std::vector<Rat> r;
    for (auto v : row) r.emplace_back(static_cast<long>(v));
    a.push_back(std::move(r));
  }
  std::size_t rank = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
    std::size_t piv = rank;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t r = rank + 1; r < a.size(); ++r) {
      const Rat f = a[r][c] / a[rank][c];
      for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

Integer int_determinant(const IntMatrix& m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw AlgebraError("determinant of a non-square matrix");
  std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = static_cast<long>(m[i][j]);
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t piv = k + 1;
      while (piv < n && a[piv][k] == 0) ++piv;
      if (piv == n) return 0;
      std::swap(a[piv], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return n == 0 ? Integer(1) : Integer(sign * a[n - 1][n - 1]);
}

GaleMatrix::GaleMatrix(IntMatrix entries) : entries_(std::move(entries)) {
  if (entries_.empty() || entries_.front().empty()) throw AlgebraError("Gale matrix is empty");
  const std::size_t c = entries_.front().size();
  for (std::size_t r = 0; r < entries_.size(); ++r) {
    if (entries_[r].size() != c) throw AlgebraError("Gale matrix row " + std::to_string(r) + " has the wrong length");
    bool zero = true;
    for (auto v : entries_[r]) zero &= v == 0;
    if (zero) throw AlgebraError("Gale matrix row " + std::to_string(r) + " is zero");
  }
  for (std::size_t j = 0; j < c; ++j) {
    long long sum = 0;
    for (const auto& row : entries_) sum += row[j];
    if (sum != 0) throw AlgebraError("Gale matrix column " + std::to_string(j) + " sums to " + std::to_string(sum));
  }
  if (int_rank(entries_) != c) throw AlgebraError("Gale matrix does not have full column rank");
}

Ring gale_ring(std::size_t cols) {
  std::vector<std::string> names;
  if (cols == 3)
    names = {"u", "v", "w"};
  else
    for (std::size_t j = 0; j < cols; ++j) names.push_back("t" + std::to_string(j));
  return RingSpec::with_default_pairs(names, cols);
}

std::vector<MPoly> gale_linear_forms(const IntMatrix& rows, const Ring& ring) {
  std::vector<MPoly> out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != ring->num_t())
      throw AlgebraError("row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) + " entries but the ring has " +
                         std::to_string(ring->num_t()) + " t-variables");
    MPoly l(ring);
    for (std::size_t j = 0; j < rows[r].size(); ++j)
      if (rows[r][j] != 0) l += MPoly::variable(ring, j) * Rat(static_cast<long>(rows[r][j]));
    if (l.is_zero()) throw AlgebraError("row " + std::to_string(r) + " gives the zero form");
    out.push_back(std::move(l));
  }
  return out;
}

std::vector<MPoly> gale_linear_forms(const GaleMatrix& b, const Ring& ring) { return gale_linear_forms(b.entries(), ring); }

MapSpec gale_map(const GaleMatrix& b, const Ring& ring, CoprimeMode mode) {
  const auto l = gale_linear_forms(b, ring);
  std::vector<std::pair<MPoly, MPoly>> pairs;
  for (std::size_t i = 0; i < b.cols(); ++i) {
    MPoly f(ring, Rat(1)), g(ring, Rat(1));
    for (std::size_t r = 0; r < b.rows(); ++r) {
      const long long e = b.at(r, i);
      if (e > 0) f *= l[r].pow(static_cast<unsigned>(e));
      if (e < 0) g *= l[r].pow(static_cast<unsigned>(-e));
    }
    pairs.emplace_back(std::move(f), std::move(g));
  }
  return MapSpec(ring, std::move(pairs), mode);
}

GaleMatrix column_transform(const GaleMatrix& b, const IntMatrix& m) {
  if (m.size() != b.cols()) throw AlgebraError("transform must be " + std::to_string(b.cols()) + " x " + std::to_string(b.cols()));
  const Integer det = int_determinant(m);
  if (abs(det) != 1) throw AlgebraError("transform is not unimodular (determinant " + det.get_str() + ")");
  IntMatrix out(b.rows(), std::vector<long long>(b.cols(), 0));
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c)
      for (std::size_t k = 0; k < b.cols(); ++k) out[r][c] += b.at(r, k) * m[k][c];
  return GaleMatrix(std::move(out));
}

}  // namespace kresolve
