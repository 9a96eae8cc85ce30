#include <chrono>
#include <random>

#include "doctest.h"
#include "kresolve/detcx.hpp"

using namespace kresolve;

namespace {

Ring uvw_ring() { return RingSpec::with_default_pairs({"u", "v", "w"}, 3); }
Ring uv_ring() { return RingSpec::with_default_pairs({"u", "v"}, 2); }
MPoly P(const Ring& r, const char* s) { return parse_poly(s, r); }

MapSpec make_map(const Ring& r, std::initializer_list<std::pair<const char*, const char*>> pairs) {
  std::vector<std::pair<MPoly, MPoly>> ps;
  for (const auto& [f, g] : pairs) ps.emplace_back(P(r, f), P(r, g));
  return MapSpec(r, std::move(ps));
}

MPoly random_form(std::mt19937_64& rng, const Ring& r, unsigned deg) {
  std::uniform_int_distribution<int> coef(-5, 5);
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

// Determinant by cofactor expansion along the first row.
MPoly cofactor_det(const std::vector<std::vector<MPoly>>& m, const Ring& r) {
  const std::size_t n = m.size();
  if (n == 0) return MPoly(r, Rat(1));
  if (n == 1) return m[0][0];
  MPoly out(r);
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<MPoly>> sub;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<MPoly> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      sub.push_back(std::move(row));
    }
    const MPoly term = m[0][j] * cofactor_det(sub, r);
    out += (j % 2 ? -term : term);
  }
  return out;
}

// Sylvester resultant of two binary forms in (u, v) with coefficients in k[X].
MPoly sylvester(const MPoly& a, const MPoly& b, const Ring& r) {
  auto coeffs = [&](const MPoly& p, unsigned d) {
    std::vector<MPoly> c;
    for (unsigned k = 0; k <= d; ++k) {
      Monomial m;
      m.set(0, d - k);
      m.set(1, k);
      c.push_back(p.t_coefficient(m));
    }
    return c;
  };
  const unsigned da = *a.multidegree().t_deg, db = *b.multidegree().t_deg;
  const auto ca = coeffs(a, da), cb = coeffs(b, db);
  const std::size_t n = da + db;
  std::vector<std::vector<MPoly>> m(n, std::vector<MPoly>(n, MPoly(r)));
  for (std::size_t i = 0; i < db; ++i)
    for (std::size_t k = 0; k <= da; ++k) m[i][i + k] = ca[k];
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t k = 0; k <= db; ++k) m[db + i][i + k] = cb[k];
  return cofactor_det(m, r);
}

std::vector<Rat> image_point(const MapSpec& spec, std::span<const Rat> t) {
  const Ring& r = spec.ring();
  std::vector<Rat> vals(r->num_vars());
  std::copy(t.begin(), t.end(), vals.begin());
  for (std::size_t i = 0; i < spec.size(); ++i) {
    vals[r->x_index(i)] = evaluate_at(spec.pair(i).f, vals);
    vals[r->y_index(i)] = evaluate_at(spec.pair(i).g, vals);
  }
  return vals;
}

void check_vanishes_on_image(const MapSpec& spec, const MPoly& res, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-20, 20), den(1, 7);
  int done = 0;
  while (done < 20) {
    std::vector<Rat> t;
    for (std::size_t k = 0; k < spec.ring()->num_t(); ++k) {
      Rat x(num(rng), den(rng));
      x.canonicalize();
      t.push_back(x);
    }
    const auto vals = image_point(spec, t);
    bool in_w = false;
    for (std::size_t i = 0; i < spec.size(); ++i)
      in_w |= vals[spec.ring()->x_index(i)] == 0 && vals[spec.ring()->y_index(i)] == 0;
    if (in_w) continue;
    CHECK(evaluate_at(res, vals) == 0);
    ++done;
  }
}

// Right-to-left greedy column selection over Q at a point.
std::vector<std::vector<std::size_t>> reverse_selection(const Strand& s, std::span<const Rat> vals) {
  std::vector<std::vector<std::size_t>> cols(s.maps.size());
  std::vector<std::size_t> prev;
  for (std::size_t k = 1; k < s.maps.size(); ++k) {
    const PolyMatrix& m = s.maps[k];
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (std::find(prev.begin(), prev.end(), i) == prev.end()) rows.push_back(i);
    std::vector<std::vector<Rat>> basis;
    std::vector<std::size_t> chosen;
    for (std::size_t c = m.cols(); c-- > 0 && chosen.size() < rows.size();) {
      std::vector<Rat> v;
      for (auto i : rows) v.push_back(evaluate_at(m.at(i, c), vals));
      for (const auto& b : basis) {
        std::size_t piv = 0;
        while (b[piv] == 0) ++piv;
        const Rat f = v[piv] / b[piv];
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= f * b[i];
      }
      bool nonzero = false;
      for (const auto& x : v) nonzero |= x != 0;
      if (!nonzero) continue;
      // Keep the basis in echelon form with distinct pivots.
      std::size_t piv = 0;
      while (v[piv] == 0) ++piv;
      for (auto& b : basis) {
        const Rat f = b[piv] / v[piv];
        for (std::size_t i = 0; i < v.size(); ++i) b[i] -= f * v[i];
      }
      basis.push_back(v);
      chosen.push_back(c);
    }
    std::sort(chosen.begin(), chosen.end());
    cols[k] = chosen;
    prev = chosen;
  }
  return cols;
}

}  // namespace

TEST_CASE("det_cayley") {
  SUBCASE("2x2 case") {
    const Ring r = uv_ring();
    const MapSpec spec = make_map(r, {{"u", "v"}, {"u", "v"}});
    const auto res = det_cayley(koszul_strand(spec));
    CHECK(equal_up_to_unit(res.poly, P(r, "x0*y1 - x1*y0")));
  }
  SUBCASE("one-point map") {
    const Ring r = uvw_ring();
    const MapSpec spec = make_map(r, {{"u", "v"}, {"u^2", "v^2"}, {"v^2", "w^2"}});
    CHECK(det_cayley(koszul_strand(spec, 3)).poly == P(r, "x2^2*(x0^2*y1 - x1*y0^2)^2").normalized());
  }
  SUBCASE("common zero") {
    const Ring r = uvw_ring();
    const MapSpec spec = make_map(r, {{"u", "v"}, {"u", "v"}, {"u", "v"}});
    CHECK_THROWS_AS(det_cayley(koszul_strand(spec)), NotExactError);
  }
}

TEST_CASE("det_interpolate") {
  const Ring r = uvw_ring();
  SUBCASE("agrees with cayley on the one-point map") {
    const MapSpec spec = make_map(r, {{"u", "v"}, {"u^2", "v^2"}, {"v^2", "w^2"}});
    const Strand s = koszul_strand(spec);
    CHECK(det_interpolate(s, spec.resultant_multidegree()).poly == det_cayley(s).poly);
  }
  SUBCASE("two-point map") {
    const MapSpec spec = make_map(r, {{"u*w", "v^2"}, {"u^2", "v^2"}, {"v^2", "w^2"}});
    const auto res = det_interpolate(koszul_strand(spec), spec.resultant_multidegree());
    CHECK(res.poly == P(r, "y1^2*x2^2*(x2*x0^2*y1 - y2*x1*y0^2)^2").normalized());
  }
  SUBCASE("singular grid points are handled by reselection") {
    const MapSpec spec = make_map(r, {{"u*w", "v^2"}, {"u^2", "v^2"}, {"v^2", "w^2"}});
    const Strand s = koszul_strand(spec);
    std::size_t reselected = 0;
    MPoly first(r);
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      DetOptions opt;
      opt.seed = seed;
      const auto res = det_interpolate(s, spec.resultant_multidegree(), opt);
      reselected += res.certificate.local_reselections;
      if (first.is_zero()) first = res.poly;
      CHECK(res.poly == first);
    }
    CHECK(reselected > 0);
  }
  SUBCASE("bounds that are too small are detected") {
    const MapSpec spec = make_map(r, {{"u", "v"}, {"u^2", "v^2"}, {"v^2", "w^2"}});
    const std::vector<unsigned> low{4, 1, 2};
    CHECK_THROWS_AS(det_interpolate(koszul_strand(spec), low), AlgebraError);
  }
}

TEST_CASE("macaulay_resultant") {
  const Ring r = uvw_ring();
  const MapSpec ex1 = make_map(r, {{"u", "v"}, {"u^2", "v^2"}, {"v^2", "w^2"}});
  const MPoly golden = P(r, "x2^2*(x0^2*y1 - x1*y0^2)^2").normalized();
  SUBCASE("one-point map, every method") {
    for (auto m : {DetMethod::cayley, DetMethod::interpolate, DetMethod::both}) {
      const auto res = macaulay_resultant(ex1, 3, m);
      CHECK(res.poly == golden);
      CHECK(res.diagnostics.empty());
      CHECK(has_pair_multidegree(res.poly, res.multidegree));
    }
  }
  SUBCASE("pair swap relabels the result") {
    const MapSpec swapped = make_map(r, {{"u", "v"}, {"v^2", "w^2"}, {"u^2", "v^2"}});
    CHECK(macaulay_resultant(swapped).poly == P(r, "x1^2*(x0^2*y2 - x2*y0^2)^2").normalized());
  }
  SUBCASE("nu = eta + 2") { CHECK(macaulay_resultant(ex1, 4).poly == golden); }
  SUBCASE("nu at or below eta is rejected") { CHECK_THROWS_AS(macaulay_resultant(ex1, 2), AlgebraError); }
  SUBCASE("zero with a diagnostic") {
    const auto res = macaulay_resultant(make_map(r, {{"u", "v"}, {"u", "v"}, {"u", "v"}}));
    CHECK(res.poly.is_zero());
    REQUIRE(res.diagnostics.size() == 1);
    CHECK(res.diagnostics[0].find("not generically exact") != std::string::npos);
  }
  SUBCASE("Sylvester oracle for n = 1, pairs (u,v), (u^2,v^2)") {
    const Ring r2 = uv_ring();
    const MapSpec spec = make_map(r2, {{"u", "v"}, {"u^2", "v^2"}});
    const auto l = linear_forms(spec);
    CHECK(equal_up_to_unit(macaulay_resultant(spec).poly, sylvester(l[0], l[1], r2)));
  }
}

TEST_CASE("determinant of a complex does not depend on the selection") {
  const Ring r = uvw_ring();
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coord(-9, 9);
  for (int trial = 0; trial < 6; ++trial) {
    const MapSpec spec = random_map(rng, r, {1u + trial % 2, 2, 1});
    const Strand s = koszul_strand(spec, spec.eta() + 1 + trial % 2);
    const auto cert = det_cayley(s).certificate;
    std::vector<Rat> vals(r->num_vars());
    for (std::size_t v = r->num_t(); v < r->num_vars(); ++v) vals[v] = coord(rng);
    const auto rev = reverse_selection(s, vals);
    CHECK(rev != cert.columns);
    const auto a = det_at_point(s, cert.columns, vals);
    const auto b = det_at_point(s, rev, vals);
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK(*a == *b);
  }
}

TEST_CASE("Sylvester oracle for all degree pairs up to 3") {
  const Ring r = uv_ring();
  std::mt19937_64 rng(11);
  for (unsigned d0 = 1; d0 <= 3; ++d0)
    for (unsigned d1 = 1; d1 <= 3; ++d1)
      for (int draw = 0; draw < 50; ++draw) {
        const MapSpec spec = random_map(rng, r, {d0, d1});
        const auto l = linear_forms(spec);
        const auto res = macaulay_resultant(spec);
        CHECK(equal_up_to_unit(res.poly, sylvester(l[0], l[1], r)));
        CHECK(has_pair_multidegree(res.poly, spec.resultant_multidegree()));
      }
}

TEST_CASE("random n = 2 maps") {
  const Ring r = uvw_ring();
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<unsigned> dd(1, 2);
  for (int trial = 0; trial < 10; ++trial) {
    const MapSpec spec = random_map(rng, r, {dd(rng), dd(rng), dd(rng)});
    const auto a = macaulay_resultant(spec, std::nullopt, DetMethod::cayley);
    const auto b = macaulay_resultant(spec, std::nullopt, DetMethod::interpolate);
    CHECK(equal_up_to_unit(a.poly, b.poly));
    CHECK(has_pair_multidegree(a.poly, spec.resultant_multidegree()));
    if (trial < 3) CHECK(equal_up_to_unit(macaulay_resultant(spec, spec.eta() + 2, DetMethod::interpolate).poly, a.poly));
    check_vanishes_on_image(spec, a.poly, rng);
  }
}
