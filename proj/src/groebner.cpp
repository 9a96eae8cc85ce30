#include "kresolve/groebner.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>

namespace kresolve {

TermOrder TermOrder::degrevlex_t(const Ring& ring) {
  TermOrder o;
  o.vars.resize(ring->num_t());
  std::iota(o.vars.begin(), o.vars.end(), 0);
  return o;
}

TermOrder TermOrder::degrevlex_all(const Ring& ring) {
  TermOrder o;
  o.vars.resize(ring->num_vars());
  std::iota(o.vars.begin(), o.vars.end(), 0);
  return o;
}

TermOrder TermOrder::lex(std::vector<std::size_t> vars) {
  TermOrder o;
  o.kind = OrderKind::lex;
  o.vars = std::move(vars);
  return o;
}

bool TermOrder::greater(const Monomial& a, const Monomial& b) const {
  if (kind == OrderKind::degrevlex) {
    unsigned da = 0, db = 0;
    for (auto v : vars) {
      da += a[v];
      db += b[v];
    }
    if (da != db) return da > db;
    for (auto it = vars.rbegin(); it != vars.rend(); ++it)
      if (a[*it] != b[*it]) return a[*it] < b[*it];
  } else {
    for (auto v : vars)
      if (a[v] != b[v]) return a[v] > b[v];
  }
  // Variables outside the list form a smaller block, ordered by graded lex.
  return a > b;
}

namespace {

struct ITerm {
  Monomial m;
  mpz_class c;
};
using IPoly = std::vector<ITerm>;

class Engine {
 public:
  explicit Engine(const TermOrder& order) : order_(order) {}

  IPoly from_mpoly(const MPoly& p) const {
    IPoly out;
    const MPoly q = p.normalized();
    for (const auto& t : q.terms()) out.push_back({t.mono, t.coef.get_num()});
    std::sort(out.begin(), out.end(), [&](const ITerm& a, const ITerm& b) { return order_.greater(a.m, b.m); });
    return out;
  }

  MPoly to_monic(const Ring& ring, const IPoly& p) const {
    std::vector<Term> terms;
    terms.reserve(p.size());
    const mpz_class& lc = p.front().c;
    for (const auto& t : p) {
      Rat c(t.c, lc);
      c.canonicalize();
      terms.push_back({t.m, std::move(c)});
    }
    return MPoly(ring, std::move(terms));
  }

  // a * f[from..] - b * shift * g
  IPoly combine(const IPoly& f, std::size_t from, const mpz_class& a, const mpz_class& b, const Monomial& shift, const IPoly& g) const {
    IPoly out;
    out.reserve(f.size() - from + g.size());
    std::size_t i = from, j = 0;
    while (i < f.size() || j < g.size()) {
      if (j == g.size()) {
        out.push_back({f[i].m, a * f[i].c});
        ++i;
        continue;
      }
      const Monomial gm = g[j].m * shift;
      if (i == f.size() || order_.greater(gm, f[i].m)) {
        out.push_back({gm, -b * g[j].c});
        ++j;
      } else if (gm == f[i].m) {
        mpz_class c = a * f[i].c - b * g[j].c;
        if (c != 0) out.push_back({gm, std::move(c)});
        ++i;
        ++j;
      } else {
        out.push_back({f[i].m, a * f[i].c});
        ++i;
      }
    }
    return out;
  }

  // Divides out the content (sign included); returns the divisor.
  static mpz_class make_primitive(IPoly& p) {
    if (p.empty()) return 1;
    mpz_class g = 0;
    for (const auto& t : p) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
      if (g == 1) break;
    }
    if (p.front().c < 0) g = -g;
    if (g != 1)
      for (auto& t : p) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), g.get_mpz_t());
    return g;
  }

  // Fraction-free full reduction; skip excludes one basis element. The
  // result equals scale * (true remainder of f) when scale is requested.
  IPoly reduce(IPoly f, const std::vector<IPoly>& basis, std::size_t skip = SIZE_MAX, Rat* scale = nullptr) const {
    if (scale) *scale = 1;
    IPoly done;
    std::size_t pos = 0;
    while (pos < f.size()) {
      const ITerm& lead = f[pos];
      const IPoly* divisor = nullptr;
      for (std::size_t k = 0; k < basis.size(); ++k) {
        if (k == skip || basis[k].empty()) continue;
        if (basis[k].front().m.divides(lead.m)) {
          divisor = &basis[k];
          break;
        }
      }
      if (!divisor) {
        done.push_back(lead);
        ++pos;
        continue;
      }
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), lead.c.get_mpz_t(), divisor->front().c.get_mpz_t());
      mpz_class a = divisor->front().c / g, b = lead.c / g;
      if (a < 0) {
        a = -a;
        b = -b;
      }
      const Monomial shift = divisor->front().m.quotient_of(lead.m);
      if (a != 1)
        for (auto& t : done) t.c *= a;
      if (scale) *scale *= a;
      f = combine(f, pos, a, b, shift, *divisor);
      pos = 0;
      // Keep coefficients small.
      mpz_class cont = 0;
      for (const auto& t : done) {
        mpz_gcd(cont.get_mpz_t(), cont.get_mpz_t(), t.c.get_mpz_t());
        if (cont == 1) break;
      }
      if (cont != 1)
        for (const auto& t : f) {
          mpz_gcd(cont.get_mpz_t(), cont.get_mpz_t(), t.c.get_mpz_t());
          if (cont == 1) break;
        }
      if (cont > 1) {
        if (scale) *scale /= cont;
        for (auto& t : done) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), cont.get_mpz_t());
        for (auto& t : f) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), cont.get_mpz_t());
      }
    }
    const mpz_class g = make_primitive(done);
    if (scale) *scale /= g;
    return done;
  }

  IPoly spoly(const IPoly& f, const IPoly& g) const {
    const Monomial l = f.front().m.lcm(g.front().m);
    mpz_class gc;
    mpz_gcd(gc.get_mpz_t(), f.front().c.get_mpz_t(), g.front().c.get_mpz_t());
    const mpz_class a = g.front().c / gc, b = f.front().c / gc;
    // a * (l/lm f) * f - b * (l/lm g) * g
    IPoly fs;
    fs.reserve(f.size());
    const Monomial sf = f.front().m.quotient_of(l);
    for (const auto& t : f) fs.push_back({t.m * sf, t.c});
    IPoly out = combine(fs, 0, a, b, g.front().m.quotient_of(l), g);
    make_primitive(out);
    return out;
  }

 private:
  const TermOrder& order_;
};

void check_in_subring(const MPoly& p, const TermOrder& order) {
  const std::size_t nv = p.ring()->num_vars();
  std::vector<bool> allowed(nv, false);
  for (auto v : order.vars) {
    if (v >= nv) throw AlgebraError("term order names a variable outside the ring");
    allowed[v] = true;
  }
  for (std::size_t v = 0; v < nv; ++v)
    if (!allowed[v] && p.involves(v)) throw AlgebraError("generator outside the declared subring: " + p.to_string());
}

}  // namespace

bool GroebnerBasis::is_unit() const { return generators.size() == 1 && generators.front().is_constant() && !generators.front().is_zero(); }

std::vector<Monomial> GroebnerBasis::leading_monomials() const {
  std::vector<Monomial> out;
  for (const auto& g : generators) out.push_back(leading_monomial(g, order));
  return out;
}

Monomial leading_monomial(const MPoly& p, const TermOrder& order) {
  if (p.is_zero()) throw AlgebraError("leading monomial of zero");
  const Monomial* best = &p.terms().front().mono;
  for (const auto& t : p.terms())
    if (order.greater(t.mono, *best)) best = &t.mono;
  return *best;
}

MPoly s_polynomial(const MPoly& f, const MPoly& g, const TermOrder& order) {
  const Monomial lf = leading_monomial(f, order), lg = leading_monomial(g, order);
  Rat cf, cg;
  for (const auto& t : f.terms())
    if (t.mono == lf) cf = t.coef;
  for (const auto& t : g.terms())
    if (t.mono == lg) cg = t.coef;
  const Monomial l = lf.lcm(lg);
  return MPoly::monomial(f.ring(), lf.quotient_of(l), 1 / cf) * f - MPoly::monomial(g.ring(), lg.quotient_of(l), 1 / cg) * g;
}

GroebnerBasis buchberger(std::span<const MPoly> gens, const TermOrder& order) {
  if (gens.empty()) throw AlgebraError("buchberger: empty generator list");
  const Ring ring = gens.front().ring();
  for (const auto& g : gens) {
    if (!same_ring(ring, g.ring())) throw AlgebraError("buchberger: ring mismatch");
    check_in_subring(g, order);
  }
  GroebnerBasis out{order, {}, std::vector<MPoly>(gens.begin(), gens.end())};
  const Engine eng(out.order);

  std::vector<IPoly> basis;
  std::set<std::tuple<unsigned, std::size_t, std::size_t>> queue;  // (lcm degree, j, i), i < j
  std::set<std::pair<std::size_t, std::size_t>> pending;
  bool unit = false;

  auto add = [&](IPoly h) {
    const std::size_t k = basis.size();
    if (h.front().m.is_one()) unit = true;
    basis.push_back(std::move(h));
    for (std::size_t i = 0; i < k; ++i) {
      queue.insert({basis[i].front().m.lcm(basis[k].front().m).degree(), k, i});
      pending.insert({i, k});
    }
  };

  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    IPoly h = eng.reduce(eng.from_mpoly(g), basis);
    if (!h.empty()) add(std::move(h));
    if (unit) break;
  }

  while (!queue.empty() && !unit) {
    const auto [deg, j, i] = *queue.begin();
    queue.erase(queue.begin());
    pending.erase({i, j});
    const Monomial& mi = basis[i].front().m;
    const Monomial& mj = basis[j].front().m;
    if (mi.coprime(mj)) continue;
    const Monomial l = mi.lcm(mj);
    bool chain = false;
    for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
      if (k == i || k == j) continue;
      if (!basis[k].front().m.divides(l)) continue;
      if (pending.count({std::min(i, k), std::max(i, k)}) || pending.count({std::min(j, k), std::max(j, k)})) continue;
      chain = true;
    }
    if (chain) continue;
    IPoly h = eng.reduce(eng.spoly(basis[i], basis[j]), basis);
    if (!h.empty()) add(std::move(h));
  }

  if (unit) {
    out.generators.push_back(MPoly(ring, Rat(1)));
    return out;
  }

  // Minimalize, then interreduce.
  std::vector<IPoly> minimal;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    bool redundant = false;
    for (std::size_t o = 0; o < basis.size() && !redundant; ++o) {
      if (o == k) continue;
      const Monomial& mo = basis[o].front().m;
      const Monomial& mk = basis[k].front().m;
      if (mo.divides(mk) && (mo != mk || o < k)) redundant = true;
    }
    if (!redundant) minimal.push_back(basis[k]);
  }
  std::sort(minimal.begin(), minimal.end(), [&](const IPoly& a, const IPoly& b) { return order.greater(b.front().m, a.front().m); });
  std::vector<IPoly> reduced(minimal.size());
  for (std::size_t k = 0; k < minimal.size(); ++k) reduced[k] = eng.reduce(minimal[k], minimal, k);
  for (const auto& r : reduced) out.generators.push_back(eng.to_monic(ring, r));
  return out;
}

MPoly normal_form(const MPoly& f, const GroebnerBasis& gb) {
  if (f.is_zero()) return f;
  if (gb.is_unit()) return MPoly(f.ring());
  const Engine eng(gb.order);
  std::vector<IPoly> basis;
  for (const auto& g : gb.generators) basis.push_back(eng.from_mpoly(g));
  Rat scale;
  const IPoly r = eng.reduce(eng.from_mpoly(f), basis, SIZE_MAX, &scale);
  const Rat unit = f.unit_to_normalized() / scale;
  std::vector<Term> terms;
  for (const auto& t : r) terms.push_back({t.m, Rat(t.c) * unit});
  return MPoly(f.ring(), std::move(terms));
}

int projective_codimension(std::span<const MPoly> gens) {
  if (gens.empty()) throw AlgebraError("projective_codimension: empty generator list");
  const Ring& ring = gens.front().ring();
  const int n1 = static_cast<int>(ring->num_t());
  bool any = false;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    if (!g.only_t_vars()) throw AlgebraError("projective_codimension: generator outside the t-variables");
    if (!g.multidegree().t_deg) throw AlgebraError("projective_codimension: non-homogeneous generator " + g.to_string());
    any = true;
  }
  if (!any) return 0;
  const GroebnerBasis gb = buchberger(gens, TermOrder::degrevlex_t(ring));
  if (gb.is_unit()) return n1;
  const auto lms = gb.leading_monomials();
  int best = 0;
  for (unsigned mask = 0; mask < (1u << n1); ++mask) {
    const int size = std::popcount(mask);
    if (size <= best) continue;
    bool independent = true;
    for (const auto& m : lms) {
      bool inside = true;
      for (int v = 0; v < n1 && inside; ++v)
        if (m[v] && !(mask >> v & 1u)) inside = false;
      if (inside) {
        independent = false;
        break;
      }
    }
    if (independent) best = size;
  }
  return n1 - best;
}

int projective_dimension(std::span<const MPoly> gens) {
  const int n1 = static_cast<int>(gens.front().ring()->num_t());
  return n1 - projective_codimension(gens) - 1;
}

std::vector<MPoly> ideal_power(std::span<const MPoly> gens, unsigned e) {
  if (e == 0) throw AlgebraError("ideal_power: exponent must be positive");
  if (gens.empty()) throw AlgebraError("ideal_power: empty generator list");
  std::vector<MPoly> base;
  for (const auto& g : gens)
    if (!g.is_zero()) base.push_back(g);
  std::vector<MPoly> out;
  if (base.empty()) return {MPoly(gens.front().ring())};
  std::vector<std::size_t> idx(e, 0);
  while (true) {
    MPoly prod(base.front().ring(), Rat(1));
    for (auto k : idx) prod *= base[k];
    prod = prod.normalized();
    if (std::find(out.begin(), out.end(), prod) == out.end()) out.push_back(std::move(prod));
    // Next non-decreasing index tuple.
    std::size_t pos = e;
    while (pos > 0 && idx[pos - 1] == base.size() - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t q = pos; q < e; ++q) idx[q] = idx[pos - 1];
  }
  return out;
}

bool ideal_member(const MPoly& f, std::span<const MPoly> gens) {
  if (f.is_zero()) return true;
  if (gens.empty()) return false;
  const GroebnerBasis gb = buchberger(gens, TermOrder::degrevlex_all(f.ring()));
  return normal_form(f, gb).is_zero();
}

ProjPoint::ProjPoint(std::vector<Rat> coords) : coords_(std::move(coords)) {
  std::size_t last = coords_.size();
  for (std::size_t i = coords_.size(); i-- > 0;)
    if (coords_[i] != 0) {
      last = i;
      break;
    }
  if (last == coords_.size()) throw std::invalid_argument("projective point with all coordinates zero");
  const Rat s = coords_[last];
  for (auto& c : coords_) c /= s;
}

bool ProjPoint::operator<(const ProjPoint& other) const {
  return std::lexicographical_compare(coords_.begin(), coords_.end(), other.coords_.begin(), other.coords_.end());
}

std::string ProjPoint::to_string() const {
  Integer scale = 1;
  for (const auto& c : coords_) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> nums;
  Integer g = 0;
  for (const auto& c : coords_) {
    const Rat v = c * scale;
    nums.push_back(v.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), nums.back().get_mpz_t());
  }
  for (const auto& v : nums)
    if (v != 0) {
      if (v < 0) g = -g;
      break;
    }
  std::string s = "(";
  for (std::size_t i = 0; i < nums.size(); ++i) {
    if (i) s += ":";
    s += (g == 0 ? nums[i] : Integer(nums[i] / g)).get_str();
  }
  return s + ")";
}

std::vector<Rat> ProjPoint::ring_values(const Ring& ring) const {
  if (coords_.size() != ring->num_t()) throw AlgebraError("point dimension does not match the t-block");
  std::vector<Rat> out(ring->num_vars());
  std::copy(coords_.begin(), coords_.end(), out.begin());
  return out;
}

namespace {

std::vector<mpz_class> divisors(mpz_class a) {
  a = abs(a);
  std::vector<std::pair<mpz_class, unsigned>> factors;
  for (unsigned long p = 2; p <= 1000000 && p * p <= a; p += (p == 2 ? 1 : 2)) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(a.get_mpz_t(), p)) {
      a /= p;
      ++e;
    }
    if (e) factors.push_back({mpz_class(p), e});
  }
  if (a > 1) factors.push_back({a, 1});
  std::vector<mpz_class> out{1};
  for (const auto& [p, e] : factors) {
    const std::size_t n = out.size();
    mpz_class pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < n; ++i) out.push_back(out[i] * pk);
    }
  }
  return out;
}

}  // namespace

std::vector<Rat> rational_roots(const MPoly& p, std::size_t var) {
  if (p.is_zero()) throw AlgebraError("rational_roots: zero polynomial");
  for (std::size_t v = 0; v < p.ring()->num_vars(); ++v)
    if (v != var && p.involves(v)) throw AlgebraError("rational_roots: polynomial is not univariate");
  const MPoly q = p.normalized();
  std::vector<mpz_class> c(q.degree_in(var) + 1);
  for (const auto& t : q.terms()) c[t.mono[var]] = t.coef.get_num();
  std::vector<Rat> roots;
  std::size_t low = 0;
  while (c[low] == 0) ++low;
  if (low > 0) roots.push_back(Rat(0));
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(low));
  if (c.size() > 1) {
    auto eval = [&](const Rat& x) {
      Rat acc = 0;
      for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
      return acc;
    };
    const auto num = divisors(c.front()), den = divisors(c.back());
    std::set<Rat> found;
    for (const auto& a : num)
      for (const auto& b : den)
        for (int s : {1, -1}) {
          Rat r(s * a, b);
          r.canonicalize();
          if (!found.count(r) && eval(r) == 0) found.insert(r);
        }
    roots.insert(roots.end(), found.begin(), found.end());
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

namespace {

void solve_affine(const std::vector<MPoly>& polys, std::vector<std::size_t> vars, std::map<std::size_t, Rat>& partial,
                  std::vector<std::map<std::size_t, Rat>>& sols, std::size_t& unresolved) {
  std::vector<MPoly> live;
  for (const auto& p : polys) {
    if (p.is_zero()) continue;
    if (p.is_constant()) return;
    live.push_back(p);
  }
  if (vars.empty() || live.empty()) {
    if (!vars.empty()) throw AlgebraError("rational_zero_locus: ideal is not zero-dimensional projectively");
    sols.push_back(partial);
    return;
  }
  const GroebnerBasis gb = buchberger(live, TermOrder::lex(vars));
  if (gb.is_unit()) return;
  const std::size_t last = vars.back();
  const MPoly* uni = nullptr;
  for (const auto& g : gb.generators) {
    bool only_last = true;
    for (auto v : vars)
      if (v != last && g.involves(v)) only_last = false;
    if (only_last) {
      uni = &g;
      break;
    }
  }
  if (!uni) throw AlgebraError("rational_zero_locus: ideal is not zero-dimensional projectively");
  const MPoly sqf = uni->divide_exact(multivariate_gcd(*uni, uni->derivative(last)));
  const auto roots = rational_roots(sqf, last);
  unresolved += sqf.degree_in(last) - roots.size();
  vars.pop_back();
  for (const auto& r : roots) {
    std::vector<MPoly> next;
    for (const auto& g : gb.generators) next.push_back(evaluate(g, {{last, r}}));
    partial[last] = r;
    solve_affine(next, vars, partial, sols, unresolved);
    partial.erase(last);
  }
}

}  // namespace

ZeroLocus rational_zero_locus(std::span<const MPoly> gens) {
  ZeroLocus out;
  const int codim = projective_codimension(gens);
  const Ring& ring = gens.front().ring();
  const std::size_t n1 = ring->num_t();
  if (codim == static_cast<int>(n1)) return out;
  if (codim < static_cast<int>(n1) - 1) throw AlgebraError("rational_zero_locus: ideal is not zero-dimensional projectively");
  for (std::size_t j = 0; j < n1; ++j) {
    // Chart: t_j = 1, t_k = 0 for k > j.
    Assignment chart;
    chart[j] = Rat(1);
    for (std::size_t k = j + 1; k < n1; ++k) chart[k] = Rat(0);
    std::vector<MPoly> polys;
    for (const auto& g : gens) polys.push_back(evaluate(g, chart));
    std::vector<std::size_t> vars(j);
    std::iota(vars.begin(), vars.end(), 0);
    std::map<std::size_t, Rat> partial;
    std::vector<std::map<std::size_t, Rat>> sols;
    solve_affine(polys, vars, partial, sols, out.unresolved);
    for (const auto& s : sols) {
      std::vector<Rat> c(n1, Rat(0));
      c[j] = 1;
      for (const auto& [v, r] : s) c[v] = r;
      out.points.emplace_back(std::move(c));
    }
  }
  std::sort(out.points.begin(), out.points.end());
  return out;
}

}  // namespace kresolve
