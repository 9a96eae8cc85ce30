#include <algorithm>
#include <random>

#include "kresolve/modp.hpp"
#include "kresolve/polyring.hpp"

namespace kresolve {

namespace {

MPoly from_coefficients(const Ring& ring, const std::vector<MPoly>& coeffs, std::size_t var) {
  std::vector<Term> out;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    for (const auto& t : coeffs[k].terms()) {
      Monomial m = t.mono;
      m.set(var, k);
      out.push_back({m, t.coef});
    }
  }
  return MPoly(ring, std::move(out));
}

void trim(std::vector<MPoly>& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

// Pseudo-remainder of a by b as polynomials in var (scaled by a power of
// lc(b); the scale is irrelevant since callers take primitive parts).
MPoly pseudo_remainder(const MPoly& a, const MPoly& b, std::size_t var) {
  auto ca = a.coefficients_in(var);
  const auto cb = b.coefficients_in(var);
  trim(ca);
  const MPoly& lb = cb.back();
  const std::size_t m = cb.size() - 1;
  while (!ca.empty() && ca.size() - 1 >= m) {
    const std::size_t shift = ca.size() - 1 - m;
    const MPoly lead = ca.back();
    for (auto& c : ca) c *= lb;
    for (std::size_t i = 0; i <= m; ++i) ca[shift + i] -= lead * cb[i];
    trim(ca);
  }
  return from_coefficients(a.ring(), ca, var);
}

MPoly one(const Ring& ring) { return MPoly(ring, Rat(1)); }

MPoly gcd_rec(const MPoly& a, const MPoly& b);

MPoly primitive_in(const MPoly& p, std::size_t var) { return p.divide_exact(content_in(p, var)); }

MPoly gcd_rec(const MPoly& a, const MPoly& b) {
  const Ring& ring = a.ring();
  if (a.is_zero()) return b.normalized();
  if (b.is_zero()) return a.normalized();
  if (a.is_constant() || b.is_constant()) return one(ring);
  if (a.size() == 1 && b.size() == 1) {
    Monomial g;
    for (std::size_t v = 0; v < ring->num_vars(); ++v) g.set(v, std::min(a.leading().mono[v], b.leading().mono[v]));
    return MPoly::monomial(ring, g);
  }
  std::size_t var = 0;
  bool in_a = false, in_b = false;
  for (; var < ring->num_vars(); ++var) {
    in_a = a.involves(var);
    in_b = b.involves(var);
    if (in_a || in_b) break;
  }
  if (!in_b) return gcd_rec(content_in(a, var), b);
  if (!in_a) return gcd_rec(a, content_in(b, var));

  const MPoly ca = content_in(a, var);
  const MPoly cb = content_in(b, var);
  const MPoly g = gcd_rec(ca, cb);
  MPoly pa = a.divide_exact(ca);
  MPoly pb = b.divide_exact(cb);
  if (pa.degree_in(var) < pb.degree_in(var)) std::swap(pa, pb);
  // Try the cheaper candidate first: if pb | pa we are done.
  if (auto q = pa.try_divide(pb)) return (pb * g).normalized();
  while (true) {
    MPoly r = pseudo_remainder(pa, pb, var);
    if (r.is_zero()) break;
    if (!r.involves(var)) return g.normalized();
    pa = std::move(pb);
    pb = primitive_in(r, var);
  }
  return (primitive_in(pb, var) * g).normalized();
}

}  // namespace

MPoly content_in(const MPoly& p, std::size_t var) {
  if (p.is_zero()) return p;
  auto coeffs = p.coefficients_in(var);
  // Smallest coefficients first keeps the running gcd small.
  std::sort(coeffs.begin(), coeffs.end(), [](const MPoly& x, const MPoly& y) { return x.size() < y.size(); });
  MPoly g(p.ring());
  for (const auto& c : coeffs) {
    if (c.is_zero()) continue;
    g = gcd_rec(g, c);
    if (g.is_constant()) return one(p.ring());
  }
  return g;
}

MPoly multivariate_gcd(const MPoly& a, const MPoly& b) {
  if (!same_ring(a.ring(), b.ring())) throw AlgebraError("gcd: ring mismatch");
  if (a.is_zero() && b.is_zero()) throw AlgebraError("gcd: both inputs are zero");
  return gcd_rec(a, b);
}

MPoly SquarefreeDecomp::reconstruct() const {
  MPoly out(ring, Rat(1));
  for (const auto& p : parts) out *= p.part.pow(p.multiplicity);
  return out;
}

bool certainly_squarefree(const MPoly& p) {
  if (p.is_zero()) return false;
  if (p.is_constant()) return true;
  const Ring& ring = p.ring();
  const std::size_t nv = ring->num_vars();
  const unsigned deg = p.total_degree();
  std::mt19937_64 rng(0x5eed'c0ffeeULL ^ p.size());
  std::uniform_int_distribution<long long> dist(-1000, 1000);
  for (std::size_t attempt = 0; attempt < 3; ++attempt) {
    const modp::Field f(modp::large_prime(attempt));
    std::vector<std::uint64_t> coef;
    coef.reserve(p.size());
    bool ok = true;
    for (const auto& t : p.terms()) {
      auto c = f.from_mpq(t.coef);
      if (!c) {
        ok = false;
        break;
      }
      coef.push_back(*c);
    }
    if (!ok) continue;
    std::vector<long long> base(nv), dir(nv);
    for (std::size_t v = 0; v < nv; ++v) {
      base[v] = dist(rng);
      dir[v] = dist(rng);
    }
    std::vector<std::uint64_t> xs, ys;
    for (unsigned k = 0; k <= deg; ++k) {
      const std::uint64_t s = f.from_int(static_cast<long long>(k) + 1);
      std::vector<std::uint64_t> point(nv);
      for (std::size_t v = 0; v < nv; ++v) point[v] = f.add(f.from_int(base[v]), f.mul(s, f.from_int(dir[v])));
      std::uint64_t sum = 0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        std::uint64_t term = coef[i];
        const auto& m = p.terms()[i].mono;
        for (std::size_t v = 0; v < nv; ++v)
          if (m[v]) term = f.mul(term, f.pow(point[v], m[v]));
        sum = f.add(sum, term);
      }
      xs.push_back(s);
      ys.push_back(sum);
    }
    auto g = modp::interpolate(f, xs, ys);
    modp::trim(g);
    if (g.size() != deg + 1) continue;
    if (modp::gcd(f, g, modp::derivative(f, g)).size() == 1) return true;
  }
  return false;
}

namespace {

void add_part(std::vector<SquarefreePart>& parts, MPoly q, unsigned mult) {
  if (q.is_constant()) return;
  for (auto& existing : parts) {
    if (existing.multiplicity == mult) {
      existing.part = (existing.part * q).normalized();
      return;
    }
  }
  parts.push_back({q.normalized(), mult});
}

void decompose_into(const MPoly& p, std::vector<SquarefreePart>& parts) {
  if (p.is_constant()) return;
  const Ring& ring = p.ring();
  if (certainly_squarefree(p)) {
    add_part(parts, p, 1);
    return;
  }
  std::size_t var = 0;
  while (!p.involves(var)) ++var;
  const MPoly content = content_in(p, var);
  const MPoly prim = p.divide_exact(content);

  // Yun's algorithm in `var`; prim has no factor free of var.
  const MPoly dp = prim.derivative(var);
  const MPoly a0 = multivariate_gcd(prim, dp);
  MPoly b = prim.divide_exact(a0);
  MPoly c = dp.divide_exact(a0);
  MPoly d = c - b.derivative(var);
  unsigned mult = 1;
  while (b.involves(var)) {
    const MPoly a = d.is_zero() ? b.normalized() : multivariate_gcd(b, d);
    add_part(parts, a, mult);
    b = b.divide_exact(a);
    c = d.divide_exact(a);
    d = c - b.derivative(var);
    ++mult;
  }
  (void)ring;
  decompose_into(content, parts);
}

}  // namespace

SquarefreeDecomp squarefree_decompose(const MPoly& p) {
  if (p.is_zero()) throw AlgebraError("squarefree_decompose: zero input");
  SquarefreeDecomp out{p.ring(), {}};
  decompose_into(p, out.parts);
  std::sort(out.parts.begin(), out.parts.end(), [](const auto& x, const auto& y) { return x.multiplicity < y.multiplicity; });
  return out;
}

MPoly kth_root(const MPoly& p, unsigned k) {
  if (p.is_zero()) throw AlgebraError("kth_root: zero input");
  if (k == 0) throw AlgebraError("kth_root: k must be positive");
  if (k == 1) return p.normalized();
  const auto dec = squarefree_decompose(p);
  MPoly root(p.ring(), Rat(1));
  for (const auto& part : dec.parts) {
    if (part.multiplicity % k != 0) throw AlgebraError("kth_root: polynomial is not a " + std::to_string(k) + "-th power");
    root *= part.part.pow(part.multiplicity / k);
  }
  if (!equal_up_to_unit(root.pow(k), p)) throw AlgebraError("kth_root: polynomial is not a " + std::to_string(k) + "-th power");
  return root.normalized();
}

}  // namespace kresolve
