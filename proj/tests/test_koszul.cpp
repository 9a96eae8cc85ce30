#include <algorithm>
#include <bit>
#include <random>

#include "doctest.h"
#include "kresolve/koszul.hpp"

using namespace kresolve;

namespace {

Ring uvw_ring() { return RingSpec::with_default_pairs({"u", "v", "w"}, 3); }
MPoly P(const Ring& r, const char* s) { return parse_poly(s, r); }

MapSpec make_map(const Ring& r, std::initializer_list<std::pair<const char*, const char*>> pairs,
                 CoprimeMode mode = CoprimeMode::strict) {
  std::vector<std::pair<MPoly, MPoly>> ps;
  for (const auto& [f, g] : pairs) ps.emplace_back(P(r, f), P(r, g));
  return MapSpec(r, std::move(ps), mode);
}

MapSpec one_point_map(const Ring& r) { return make_map(r, {{"u", "v"}, {"u^2", "v^2"}, {"v^2", "w^2"}}); }

MPoly random_form(std::mt19937_64& rng, const Ring& r, unsigned deg) {
  std::uniform_int_distribution<int> coef(-4, 4);
  std::vector<Term> terms;
  for (const auto& m : t_monomials(static_cast<int>(deg), r->num_t())) terms.push_back({m, Rat(coef(rng))});
  return MPoly(r, std::move(terms));
}

MapSpec random_map(std::mt19937_64& rng, const Ring& r, const std::vector<unsigned>& d) {
  while (true) {
    std::vector<std::pair<MPoly, MPoly>> ps;
    for (auto di : d) ps.emplace_back(random_form(rng, r, di), random_form(rng, r, di));
    try {
      return MapSpec(r, std::move(ps));
    } catch (const AlgebraError&) {
    }
  }
}

std::size_t binom(long a, long b) {
  if (a < 0 || b < 0 || b > a) return 0;
  std::size_t out = 1;
  for (long k = 1; k <= b; ++k) out = out * static_cast<std::size_t>(a - b + k) / static_cast<std::size_t>(k);
  return out;
}

}  // namespace

TEST_CASE("MapSpec validation") {
  const Ring r = uvw_ring();
  CHECK_NOTHROW(one_point_map(r));
  CHECK(one_point_map(r).degrees() == std::vector<unsigned>{1, 2, 2});
  CHECK(one_point_map(r).eta() == 2);
  CHECK(one_point_map(r).resultant_multidegree() == std::vector<unsigned>{4, 2, 2});
  CHECK_THROWS_AS(make_map(r, {{"u", "v"}, {"u^2", "v"}, {"v^2", "w^2"}}), AlgebraError);
  CHECK_THROWS_AS(make_map(r, {{"u", "v"}, {"0", "0"}, {"v^2", "w^2"}}), AlgebraError);
  CHECK_THROWS_AS(make_map(r, {{"u", "v"}, {"u^2", "v^2"}}), AlgebraError);
  CHECK_THROWS_AS(make_map(r, {{"u+v^2", "v"}, {"u^2", "v^2"}, {"v^2", "w^2"}}), AlgebraError);
  CHECK_THROWS_AS(make_map(r, {{"u*x0", "v"}, {"u^2", "v^2"}, {"v^2", "w^2"}}), AlgebraError);
}

TEST_CASE("linear_forms") {
  const Ring r = uvw_ring();
  SUBCASE("one-point map") {
    const auto l = linear_forms(one_point_map(r));
    REQUIRE(l.size() == 3);
    CHECK(l[0] == P(r, "x0*v - y0*u"));
    CHECK(l[1] == P(r, "x1*v^2 - y1*u^2"));
    CHECK(l[2] == P(r, "x2*w^2 - y2*v^2"));
  }
  SUBCASE("vanish on the graph") {
    const MapSpec spec = make_map(r, {{"u*w", "v^2"}, {"u^2", "v^2"}, {"v^2", "w^2"}});
    const auto l = linear_forms(spec);
    for (std::size_t i = 0; i < 3; ++i)
      CHECK(evaluate(l[i], {{r->x_index(i), spec.pair(i).f}, {r->y_index(i), spec.pair(i).g}}).is_zero());
  }
  SUBCASE("common factor") {
    CHECK_THROWS_WITH_AS(make_map(r, {{"u*v", "u*w"}, {"v^2", "v^2"}, {"v^2", "w^2"}}),
                         doctest::Contains("common factor u"), AlgebraError);
    const MapSpec loose = make_map(r, {{"u*v", "u*w"}, {"v^2", "v^2"}, {"v^2", "w^2"}}, CoprimeMode::permissive);
    CHECK(loose.warnings().size() == 2);
    CHECK(linear_forms(loose)[0] == P(r, "u*w*x0 - u*v*y0"));
  }
}

TEST_CASE("koszul_strand ranks") {
  const Ring r = uvw_ring();
  SUBCASE("one-point map at nu = 3") {
    const Strand s = koszul_strand(one_point_map(r), 3);
    CHECK(s.ranks() == std::vector<std::size_t>{10, 12, 2, 0});
    CHECK(s.euler_characteristic() == 0);
    CHECK(koszul_strand(one_point_map(r)).nu == 3);
  }
  SUBCASE("d = (2,2,2)") {
    const MapSpec spec = make_map(r, {{"u^2", "v^2"}, {"v^2", "w^2"}, {"w^2", "u*v"}});
    CHECK(spec.eta() == 3);
    CHECK(koszul_strand(spec, 4).ranks() == std::vector<std::size_t>{15, 18, 3, 0});
  }
  SUBCASE("d = (1,1,1)") {
    const MapSpec spec = make_map(r, {{"u", "v"}, {"v", "w"}, {"w", "u"}});
    CHECK(koszul_strand(spec, 1).ranks() == std::vector<std::size_t>{3, 3, 0, 0});
  }
  SUBCASE("nu must exceed eta") {
    const auto forms = linear_forms(one_point_map(r));
    CHECK_THROWS_AS(koszul_strand(forms, 2), AlgebraError);
    CHECK_NOTHROW(koszul_strand(forms, 2, true));
  }
}

TEST_CASE("strand_sanity") {
  const Ring r = uvw_ring();
  const Strand s = koszul_strand(one_point_map(r), 3);
  CHECK(strand_sanity(s).ok);
  const MapSpec spec = make_map(r, {{"u^2", "v^2"}, {"v^2", "w^2"}, {"w^2", "u*v"}});
  const Strand s2 = koszul_strand(spec, 4);
  CHECK(strand_sanity(s2).ok);
  CHECK(s2.euler_characteristic() == 0);

  Strand broken = s;
  // Flip one entry of d1 that meets the image of d2.
  std::size_t mid = 0;
  while (broken.maps[2].at(mid, 0).is_zero()) ++mid;
  std::size_t row = broken.maps[1].rows() - 1;
  while (broken.maps[1].at(row, mid).is_zero()) --row;
  broken.maps[1].at(row, mid) = -broken.maps[1].at(row, mid);
  const SanityReport rep = strand_sanity(broken);
  CHECK_FALSE(rep.ok);
  CHECK(rep.level == 1u);
  CHECK(rep.row == row);
}

TEST_CASE("strand properties on random maps") {
  const Ring r = uvw_ring();
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<unsigned> dd(1, 2);
  std::uniform_int_distribution<int> pt(-6, 6);
  for (int trial = 0; trial < 12; ++trial) {
    const std::vector<unsigned> d{dd(rng), dd(rng), dd(rng)};
    const MapSpec spec = random_map(rng, r, d);
    const int nu = spec.eta() + 1 + trial % 2;
    const Strand s = koszul_strand(spec, nu);

    CHECK(strand_sanity(s).ok);

    for (std::size_t k = 0; k <= 3; ++k) {
      std::size_t expected = 0;
      for (unsigned mask = 0; mask < 8; ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) != k) continue;
        long deg = nu;
        for (std::size_t i = 0; i < 3; ++i)
          if (mask >> i & 1u) deg -= d[i];
        expected += binom(deg + 2, 2);
      }
      CHECK(s.ranks()[k] == expected);
    }

    for (std::size_t k = 1; k < s.maps.size(); ++k)
      for (std::size_t row = 0; row < s.maps[k].rows(); ++row)
        for (std::size_t col = 0; col < s.maps[k].cols(); ++col) {
          const MPoly& e = s.maps[k].at(row, col);
          if (e.is_zero()) continue;
          const auto& src = s.bases[k][col].subset;
          const auto& dst = s.bases[k - 1][row].subset;
          std::size_t removed = 0;
          for (auto i : src)
            if (std::find(dst.begin(), dst.end(), i) == dst.end()) removed = i;
          CHECK(e.only_pair_vars());
          for (std::size_t j = 0; j < 3; ++j) CHECK((e.pair_degree(j) == (j == removed ? 1u : 0u)));
        }

    // Monomial row vector at p times d1 specialised at X = phi(p) vanishes.
    for (int rep = 0; rep < 3; ++rep) {
      std::vector<Rat> t{Rat(pt(rng)), Rat(pt(rng)), Rat(pt(rng))};
      std::vector<Rat> vals(r->num_vars());
      std::copy(t.begin(), t.end(), vals.begin());
      for (std::size_t i = 0; i < 3; ++i) {
        vals[r->x_index(i)] = evaluate_at(spec.pair(i).f, vals);
        vals[r->y_index(i)] = evaluate_at(spec.pair(i).g, vals);
      }
      const PolyMatrix& d1 = s.maps[1];
      for (std::size_t col = 0; col < d1.cols(); ++col) {
        Rat acc = 0;
        for (std::size_t row = 0; row < d1.rows(); ++row) {
          if (d1.at(row, col).is_zero()) continue;
          acc += evaluate_at(MPoly::monomial(r, s.bases[0][row].t_mono), vals) * evaluate_at(d1.at(row, col), vals);
        }
        CHECK(acc == 0);
      }
    }
  }
}
