#include <functional>
#include <random>
#include <set>

#include "doctest.h"
#include "kresolve/groebner.hpp"

using namespace kresolve;

namespace {

Ring uvw_ring() { return RingSpec::with_default_pairs({"u", "v", "w"}, 3); }
MPoly P(const Ring& r, const char* s) { return parse_poly(s, r); }

std::vector<MPoly> Ps(const Ring& r, std::initializer_list<const char*> xs) {
  std::vector<MPoly> out;
  for (auto x : xs) out.push_back(P(r, x));
  return out;
}

std::vector<MPoly> monic_all(std::vector<MPoly> v, const TermOrder& o) {
  for (auto& p : v) {
    const Monomial lm = leading_monomial(p, o);
    for (const auto& t : p.terms())
      if (t.mono == lm) {
        p *= 1 / t.coef;
        break;
      }
  }
  return v;
}

bool same_set(const std::vector<MPoly>& a, const std::vector<MPoly>& b) {
  if (a.size() != b.size()) return false;
  for (const auto& x : a)
    if (std::find(b.begin(), b.end(), x) == b.end()) return false;
  return true;
}

MPoly random_form(std::mt19937_64& rng, const Ring& r, std::size_t nvars, unsigned deg, int lo = -3, int hi = 3) {
  std::uniform_int_distribution<int> coef(lo, hi);
  std::vector<Term> terms;
  // All monomials of degree `deg` in the first nvars variables.
  std::vector<unsigned> e(nvars, 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t v, unsigned left) {
    if (v + 1 == nvars) {
      e[v] = left;
      Monomial m;
      for (std::size_t k = 0; k < nvars; ++k) m.set(k, e[k]);
      terms.push_back({m, Rat(coef(rng))});
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      e[v] = k;
      rec(v + 1, left - k);
    }
  };
  rec(0, deg);
  return MPoly(r, std::move(terms));
}

std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned deg) {
  std::vector<Monomial> out;
  std::vector<unsigned> e(nvars, 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t v, unsigned left) {
    if (v + 1 == nvars) {
      e[v] = left;
      Monomial m;
      for (std::size_t k = 0; k < nvars; ++k) m.set(k, e[k]);
      out.push_back(m);
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      e[v] = k;
      rec(v + 1, left - k);
    }
  };
  rec(0, deg);
  return out;
}

// Rank of a rational matrix by plain Gaussian elimination.
std::size_t rank_of(std::vector<std::vector<Rat>> m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      if (m[r][c] == 0) continue;
      const Rat f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

// Macaulay-matrix membership oracle for homogeneous ideals: f of degree D
// lies in I iff it is in the span of m*g with deg(m*g) = D.
bool member_by_linear_algebra(const MPoly& f, const std::vector<MPoly>& gens, std::size_t nvars) {
  const unsigned D = f.total_degree();
  const auto basis = monomials_of_degree(nvars, D);
  auto row_of = [&](const MPoly& p) {
    std::vector<Rat> row(basis.size());
    for (const auto& t : p.terms()) row[std::find(basis.begin(), basis.end(), t.mono) - basis.begin()] = t.coef;
    return row;
  };
  std::vector<std::vector<Rat>> rows;
  for (const auto& g : gens) {
    const unsigned dg = g.total_degree();
    if (dg > D) continue;
    for (const auto& m : monomials_of_degree(nvars, D - dg)) rows.push_back(row_of(MPoly::monomial(f.ring(), m) * g));
  }
  const std::size_t r0 = rank_of(rows);
  rows.push_back(row_of(f));
  return rank_of(rows) == r0;
}

// Dimension of k[t]/I for a monomial ideal, read off from the growth of the
// number of standard monomials (finite differences of the Hilbert function).
int affine_dimension_by_hilbert(const std::vector<Monomial>& gens, std::size_t nvars) {
  auto h = [&](unsigned d) {
    long count = 0;
    for (const auto& m : monomials_of_degree(nvars, d)) {
      bool standard = true;
      for (const auto& g : gens)
        if (g.divides(m)) standard = false;
      count += standard;
    }
    return count;
  };
  // Generators have degree <= 8, so the Hilbert function is polynomial
  // from degree 8*nvars on; its degree is dim - 1.
  const unsigned base = 8 * static_cast<unsigned>(nvars) + 1;
  std::vector<long> vals;
  for (unsigned d = base; d <= base + nvars + 1; ++d) vals.push_back(h(d));
  if (vals.back() == 0) return 0;
  int order = 0;
  while (true) {
    bool constant = true;
    for (std::size_t i = 1; i < vals.size(); ++i)
      if (vals[i] != vals[0]) constant = false;
    if (constant) return order + 1;
    for (std::size_t i = 0; i + 1 < vals.size(); ++i) vals[i] = vals[i + 1] - vals[i];
    vals.pop_back();
    ++order;
  }
}

std::vector<MPoly> b_map_ideal(const Ring& r, std::initializer_list<int> which) {
  const MPoly l1 = P(r, "u"), l2 = P(r, "-2*u+v"), l3 = P(r, "u-2*v+w"), l4 = P(r, "v-2*w"), l5 = P(r, "w");
  const std::vector<std::pair<MPoly, MPoly>> pairs{{l1 * l3, l2.pow(2)}, {l2 * l4, l3.pow(2)}, {l3 * l5, l4.pow(2)}};
  std::vector<MPoly> out;
  for (int i : which) {
    out.push_back(pairs[i].first);
    out.push_back(pairs[i].second);
  }
  return out;
}

}  // namespace

TEST_CASE("buchberger") {
  const Ring r = uvw_ring();
  const auto o = TermOrder::degrevlex_t(r);
  CHECK(same_set(buchberger(Ps(r, {"u", "v"}), o).generators, Ps(r, {"u", "v"})));
  CHECK(same_set(buchberger(Ps(r, {"u*w", "v^2", "w^2"}), o).generators, Ps(r, {"u*w", "v^2", "w^2"})));
  CHECK(same_set(buchberger(Ps(r, {"u", "v", "u^2", "v^2", "w^2"}), o).generators, Ps(r, {"u", "v", "w^2"})));
  CHECK(buchberger(Ps(r, {"u+1", "u"}), o).is_unit());
  CHECK_THROWS_AS(buchberger(Ps(r, {"u*x0"}), o), AlgebraError);
  const auto twisted = buchberger(Ps(r, {"u^2 - v*w", "u*v - w^2"}), o);
  CHECK(same_set(twisted.generators, monic_all(Ps(r, {"u^2 - v*w", "u*v - w^2", "v^2*w - u*w^2"}), o)));
}

TEST_CASE("normal_form") {
  const Ring r = uvw_ring();
  const auto o = TermOrder::degrevlex_t(r);
  const auto uv = buchberger(Ps(r, {"u", "v"}), o);
  CHECK(normal_form(P(r, "u^2"), uv).is_zero());
  CHECK(normal_form(P(r, "w"), uv) == P(r, "w"));
  CHECK(normal_form(P(r, "u*v + w^2"), buchberger(Ps(r, {"u"}), o)) == P(r, "w^2"));
  CHECK(normal_form(P(r, "3*u + 2/3*w^2"), uv) == P(r, "2/3*w^2"));
}

TEST_CASE("projective_codimension") {
  const Ring r = uvw_ring();
  CHECK(projective_codimension(Ps(r, {"u", "v"})) == 2);
  CHECK(projective_codimension(Ps(r, {"u", "v", "u^2", "v^2", "w^2"})) == 3);
  CHECK(projective_codimension(b_map_ideal(r, {0, 1, 2})) == 3);
  CHECK(projective_codimension(Ps(r, {"u*v"})) == 1);
  CHECK(projective_codimension(Ps(r, {"0"})) == 0);
  CHECK(projective_dimension(Ps(r, {"u", "v"})) == 0);
  CHECK(projective_dimension(Ps(r, {"u", "v", "w"})) == -1);
  CHECK_THROWS_AS(projective_codimension(Ps(r, {"u + v^2"})), AlgebraError);
}

TEST_CASE("ideal_power") {
  const Ring r = uvw_ring();
  CHECK(same_set(ideal_power(Ps(r, {"u", "v"}), 2), Ps(r, {"u^2", "u*v", "v^2"})));
  const auto g = Ps(r, {"u", "v", "y2*v^2 - x2*w^2"});
  CHECK(same_set(ideal_power(g, 1), g));
  CHECK_THROWS_AS(ideal_power(g, 0), AlgebraError);
  const MPoly l1 = P(r, "x1*v^2 - y1*u^2");
  CHECK(ideal_member(l1, ideal_power(g, 2)));
  CHECK_FALSE(ideal_member(l1, ideal_power(g, 3)));
  CHECK_FALSE(ideal_member(P(r, "x0*v - y0*u"), ideal_power(g, 2)));
}

TEST_CASE("rational_zero_locus") {
  const Ring r = uvw_ring();
  SUBCASE("coordinate point") {
    const auto z = rational_zero_locus(Ps(r, {"u", "v"}));
    REQUIRE(z.points.size() == 1);
    CHECK(z.points[0].to_string() == "(0:0:1)");
    CHECK(z.unresolved == 0);
  }
  SUBCASE("fat point") {
    const auto z = rational_zero_locus(Ps(r, {"u*w", "v^2", "w^2"}));
    REQUIRE(z.points.size() == 1);
    CHECK(z.points[0].to_string() == "(1:0:0)");
  }
  SUBCASE("first two pairs of the quartic map") {
    const auto z = rational_zero_locus(b_map_ideal(r, {0, 1}));
    REQUIRE(z.points.size() == 1);
    CHECK(z.points[0] == ProjPoint({Rat(1), Rat(2), Rat(3)}));
    CHECK(z.points[0].to_string() == "(1:2:3)");
  }
  SUBCASE("irrational points are counted, not returned") {
    const auto z = rational_zero_locus(Ps(r, {"u^2 - 2*w^2", "v"}));
    CHECK(z.points.empty());
    CHECK(z.unresolved == 2);
  }
  SUBCASE("empty and positive-dimensional loci") {
    CHECK(rational_zero_locus(Ps(r, {"u", "v", "w"})).points.empty());
    CHECK_THROWS_AS(rational_zero_locus(Ps(r, {"u"})), AlgebraError);
  }
}

TEST_CASE("rational_roots") {
  const Ring r = uvw_ring();
  CHECK(rational_roots(P(r, "6*u^3 - 5*u^2 + u"), 0) == std::vector<Rat>{Rat(0), Rat(1, 3), Rat(1, 2)});
  CHECK(rational_roots(P(r, "u^2 + 1"), 0).empty());
}

TEST_CASE("ProjPoint normalization") {
  CHECK(ProjPoint({Rat(1), Rat(1), Rat(-1)}).to_string() == "(1:1:-1)");
  CHECK(ProjPoint({Rat(-4), Rat(1), Rat(4)}).to_string() == "(4:-1:-4)");
  CHECK(ProjPoint({Rat(0), Rat(2, 3), Rat(1)}).to_string() == "(0:2:3)");
  CHECK(ProjPoint({Rat(2), Rat(4), Rat(0)}).to_string() == "(1:2:0)");
  CHECK_THROWS_AS(ProjPoint({Rat(0), Rat(0)}), std::invalid_argument);
}

TEST_CASE("properties") {
  const Ring r = uvw_ring();
  const auto o = TermOrder::degrevlex_t(r);
  std::mt19937_64 rng(99);

  SUBCASE("every S-polynomial of the output reduces to zero") {
    for (int trial = 0; trial < 25; ++trial) {
      std::vector<MPoly> gens;
      std::uniform_int_distribution<unsigned> deg(1, 3);
      for (int k = 0; k < 3; ++k) gens.push_back(random_form(rng, r, 3, deg(rng)));
      for (const auto& order : {o, TermOrder::lex({0, 1, 2})}) {
        const auto gb = buchberger(gens, order);
        for (std::size_t i = 0; i < gb.generators.size(); ++i)
          for (std::size_t j = i + 1; j < gb.generators.size(); ++j)
            CHECK(normal_form(s_polynomial(gb.generators[i], gb.generators[j], order), gb).is_zero());
        for (const auto& g : gens) CHECK(normal_form(g, gb).is_zero());
      }
    }
  }

  SUBCASE("membership agrees with the Macaulay linear system") {
    for (int trial = 0; trial < 25; ++trial) {
      std::vector<MPoly> gens{random_form(rng, r, 3, 2), random_form(rng, r, 3, 2)};
      if (trial % 2) gens.push_back(random_form(rng, r, 3, 3));
      const auto gb = buchberger(gens, o);
      // Combination of generators: a member by construction.
      MPoly member(r);
      for (const auto& g : gens) member += random_form(rng, r, 3, 4 - g.total_degree()) * g;
      const MPoly other = random_form(rng, r, 3, 4);
      for (const MPoly& f : {member, other}) {
        if (f.is_zero()) continue;
        CHECK(normal_form(f, gb).is_zero() == member_by_linear_algebra(f, gens, 3));
      }
      CHECK(normal_form(member, gb).is_zero());
    }
  }

  SUBCASE("codimension of monomial ideals agrees with the Hilbert function") {
    std::uniform_int_distribution<int> nv(2, 4), count(1, 4), e(0, 2);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t n = static_cast<std::size_t>(nv(rng));
      std::vector<std::string> names;
      for (std::size_t k = 0; k < n; ++k) names.push_back("t" + std::to_string(k));
      const Ring rr = RingSpec::with_default_pairs(names, n);
      std::vector<Monomial> monos;
      std::vector<MPoly> gens;
      const int c = count(rng);
      for (int k = 0; k < c; ++k) {
        Monomial m;
        for (std::size_t v = 0; v < n; ++v) m.set(v, static_cast<unsigned>(e(rng)) * (rng() % 2));
        if (m.is_one()) m.set(rng() % n, 1);
        monos.push_back(m);
        gens.push_back(MPoly::monomial(rr, m));
      }
      CHECK(projective_codimension(gens) == static_cast<int>(n) - affine_dimension_by_hilbert(monos, n));
    }
  }

  SUBCASE("zero-locus points satisfy every generator and match line intersections") {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<MPoly> lines;
      for (int k = 0; k < 4; ++k) lines.push_back(random_form(rng, r, 3, 1, -4, 4));
      bool degenerate = false;
      for (const auto& l : lines) degenerate |= l.is_zero();
      if (degenerate) continue;
      const std::vector<MPoly> gens{lines[0] * lines[1], lines[2] * lines[3]};
      if (projective_codimension(gens) != 2) continue;
      const auto z = rational_zero_locus(gens);
      CHECK(z.unresolved == 0);
      for (const auto& p : z.points)
        for (const auto& g : gens) CHECK(evaluate_at(g, p.ring_values(r)) == 0);
      // Oracle: cross products of coefficient vectors of each line pair.
      std::set<std::vector<Rat>> expected;
      auto coeffs = [&](const MPoly& l) {
        std::vector<Rat> c(3);
        for (const auto& t : l.terms())
          for (std::size_t v = 0; v < 3; ++v)
            if (t.mono[v]) c[v] = t.coef;
        return c;
      };
      for (int a : {0, 1})
        for (int b : {2, 3}) {
          const auto p = coeffs(lines[a]), q = coeffs(lines[b]);
          std::vector<Rat> x{p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]};
          expected.insert(ProjPoint(x).coords());
        }
      std::set<std::vector<Rat>> got;
      for (const auto& p : z.points) got.insert(p.coords());
      CHECK(got == expected);
    }
  }
}
