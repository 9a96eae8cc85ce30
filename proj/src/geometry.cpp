#include "kresolve/geometry.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

namespace kresolve {

namespace {

std::vector<Subset> subsets_of_size(std::size_t n, std::size_t k) {
  std::vector<Subset> out;
  Subset cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<Subset> nonempty_subsets(std::size_t n) {
  std::vector<Subset> out;
  for (std::size_t k = 1; k <= n; ++k)
    for (auto& s : subsets_of_size(n, k)) out.push_back(std::move(s));
  return out;
}

bool contains(const Subset& s, std::size_t i) { return std::find(s.begin(), s.end(), i) != s.end(); }

std::vector<MPoly> sum_ideal(const MapSpec& spec, const Subset& alpha) {
  std::vector<MPoly> gens;
  for (auto i : alpha)
    for (const auto& p : spec.pair_ideal(i))
      if (!p.is_zero()) gens.push_back(p);
  return gens;
}

std::vector<MPoly> product_ideal(const MapSpec& spec, const Subset& s) {
  std::vector<MPoly> gens{MPoly(spec.ring(), Rat(1))};
  for (auto i : s) {
    std::vector<MPoly> next;
    for (const auto& a : gens)
      for (const auto& p : spec.pair_ideal(i))
        if (!p.is_zero()) next.push_back(a * p);
    gens = std::move(next);
  }
  return gens;
}

/// Projective dimension of X_alpha for every nonempty alpha.
class SubsetLoci {
 public:
  explicit SubsetLoci(const MapSpec& spec) : spec_(spec) {}

  int dimension(const Subset& alpha) {
    auto it = dims_.find(alpha);
    if (it != dims_.end()) return it->second;
    const auto gens = sum_ideal(spec_, alpha);
    return dims_[alpha] = projective_dimension(gens);
  }
  int codim(const Subset& alpha) { return static_cast<int>(spec_.size()) - 1 - dimension(alpha); }

 private:
  const MapSpec& spec_;
  std::map<Subset, int> dims_;
};

std::string points_to_string(const std::vector<ProjPoint>& pts) {
  std::string s;
  for (std::size_t i = 0; i < pts.size(); ++i) s += (i ? ", " : "") + pts[i].to_string();
  return s;
}

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

MPoly restrict_to(const MPoly& p, const LinearParam& lp) {
  const Ring& r = p.ring();
  Assignment a;
  for (std::size_t j = 0; j < r->num_t(); ++j) {
    MPoly v(r);
    for (std::size_t l = 0; l < lp.params(); ++l)
      if (lp.matrix[j][l] != 0) v += MPoly::variable(r, l) * lp.matrix[j][l];
    a[j] = v;
  }
  return evaluate(p, a);
}

/// Coordinate subspace t_j = 0 (j in J) on which exactly the pairs in alpha
/// vanish identically.
std::optional<LinearParam> coordinate_param(const MapSpec& spec, const Subset& alpha, int dim) {
  const std::size_t m = spec.ring()->num_t();
  const std::size_t cut = m - 1 - static_cast<std::size_t>(dim);
  for (const auto& zero : subsets_of_size(m, cut)) {
    LinearParam lp;
    lp.matrix.assign(m, std::vector<Rat>(m - cut, Rat(0)));
    std::size_t col = 0;
    for (std::size_t j = 0; j < m; ++j)
      if (!contains(zero, j)) lp.matrix[j][col++] = 1;
    bool ok = true;
    for (std::size_t i = 0; i < spec.size() && ok; ++i) {
      const bool vanish = restrict_to(spec.pair(i).f, lp).is_zero() && restrict_to(spec.pair(i).g, lp).is_zero();
      ok = vanish == contains(alpha, i);
    }
    if (ok) return lp;
  }
  return std::nullopt;
}

}  // namespace

std::string subset_to_string(const Subset& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

ConditionReport check_acyclicity(const MapSpec& spec) {
  ConditionReport rep;
  const std::size_t m = spec.size();
  const int n = static_cast<int>(m) - 1;
  SubsetLoci loci(spec);

  rep.avramov_ok = true;
  for (std::size_t r = 1; r <= m; ++r) {
    std::vector<MPoly> gens;
    for (const auto& s : subsets_of_size(m, r))
      for (auto& g : product_ideal(spec, s)) gens.push_back(std::move(g));
    MinorRow row;
    row.r = static_cast<int>(r);
    row.codim = projective_codimension(gens);
    row.required = static_cast<int>(m - r + 1);
    row.ok = row.codim >= row.required;
    rep.avramov_ok &= row.ok;
    if (!row.ok)
      rep.diagnostics.push_back("codim I_" + std::to_string(r) + " = " + std::to_string(row.codim) + " < " +
                                std::to_string(row.required));
    rep.avramov.push_back(row);
  }

  rep.geometric_ok = true;
  for (std::size_t r = 1; r <= m; ++r) {
    IntersectionRow row;
    row.r = static_cast<int>(r);
    row.dimension = -1;
    for (const auto& t : subsets_of_size(m, m + 1 - r)) row.dimension = std::max(row.dimension, loci.dimension(t));
    row.allowed = static_cast<int>(r) - 2;
    row.ok = row.dimension <= row.allowed;
    rep.geometric_ok &= row.ok;
    rep.geometric.push_back(row);
  }

  for (std::size_t k = 0; k < m; ++k)
    if (rep.avramov[k].codim != n - rep.geometric[k].dimension || rep.avramov[k].ok != rep.geometric[k].ok)
      throw std::logic_error("minor-ideal and intersection views disagree at r = " + std::to_string(k + 1));
  if (rep.avramov_ok != rep.geometric_ok) throw std::logic_error("minor-ideal and intersection views disagree");

  Subset all(m);
  for (std::size_t i = 0; i < m; ++i) all[i] = i;
  rep.x_dimension = loci.dimension(all);
  if (rep.x_dimension == 0) {
    const auto gens = sum_ideal(spec, all);
    rep.x_points = rational_zero_locus(gens).points;
    rep.diagnostics.push_back("X nonempty: " + points_to_string(rep.x_points));
  } else if (rep.x_dimension > 0) {
    rep.diagnostics.push_back("X nonempty: dimension " + std::to_string(rep.x_dimension));
  }
  return rep;
}

void check_strict_codim(const MapSpec& spec, ConditionReport& rep) {
  const std::size_t m = spec.size();
  SubsetLoci loci(spec);
  rep.strict_checked = true;
  rep.strict_ok = true;
  rep.subset_codims.clear();
  rep.strict_witnesses.clear();
  bool lemma = true;
  for (const auto& alpha : nonempty_subsets(m)) {
    const int c = loci.codim(alpha);
    rep.subset_codims.push_back({alpha, c});
    if (c < static_cast<int>(alpha.size())) lemma = false;
    if (alpha.size() < m && c <= static_cast<int>(alpha.size())) {
      rep.strict_ok = false;
      rep.strict_witnesses.push_back(alpha);
      rep.diagnostics.push_back("strict codimension fails: codim " + subset_to_string(alpha) + " = " + std::to_string(c));
    }
  }
  if (rep.avramov_ok) {
    rep.lemma_ok = lemma;
    if (!lemma) throw std::logic_error("weak codimension inequality fails although the minor conditions hold");
  }
}

ConditionReport check_strict_codim(const MapSpec& spec) {
  ConditionReport rep = check_acyclicity(spec);
  check_strict_codim(spec, rep);
  return rep;
}

Subset vanishing_pairs(const ProjPoint& p, const MapSpec& spec) {
  const auto vals = p.ring_values(spec.ring());
  Subset out;
  for (std::size_t i = 0; i < spec.size(); ++i)
    if (evaluate_at(spec.pair(i).f, vals) == 0 && evaluate_at(spec.pair(i).g, vals) == 0) out.push_back(i);
  return out;
}

int fibre_dimension(const ProjPoint& p, const MapSpec& spec) { return static_cast<int>(vanishing_pairs(p, spec).size()); }

MPoly point_factor(const ProjPoint& p, std::size_t i, const MapSpec& spec) {
  const Ring& r = spec.ring();
  const auto vals = p.ring_values(r);
  const Rat f = evaluate_at(spec.pair(i).f, vals);
  const Rat g = evaluate_at(spec.pair(i).g, vals);
  if (f == 0 && g == 0) throw AlgebraError("pair " + std::to_string(i) + " vanishes at " + p.to_string());
  return (MPoly::variable(r, r->x_index(i)) * g - MPoly::variable(r, r->y_index(i)) * f).normalized();
}

std::vector<BaseComponent> base_points(const MapSpec& spec) {
  const std::size_t m = spec.size();
  SubsetLoci loci(spec);
  std::vector<BaseComponent> out;
  for (const auto& alpha : nonempty_subsets(m)) {
    const int dim = loci.dimension(alpha);
    if (dim < 0 || loci.codim(alpha) != static_cast<int>(alpha.size())) continue;
    BaseComponent comp;
    comp.alpha = alpha;
    comp.dimension = dim;
    if (dim == 0) {
      const auto gens = sum_ideal(spec, alpha);
      const ZeroLocus z = rational_zero_locus(gens);
      for (const auto& p : z.points)
        if (vanishing_pairs(p, spec) == alpha) comp.points.push_back(p);
      comp.unresolved = z.unresolved;
      if (comp.points.empty() && comp.unresolved == 0) continue;
    } else {
      comp.param = coordinate_param(spec, alpha, dim);
    }
    out.push_back(std::move(comp));
  }
  return out;
}

unsigned factor_exponent(const MPoly& p, const MPoly& factor) {
  if (p.is_zero() || factor.is_constant()) return 0;
  unsigned e = 0;
  MPoly cur = p;
  while (auto q = cur.try_divide(factor)) {
    cur = std::move(*q);
    ++e;
  }
  return e;
}

ImplicitReport extract_implicit(const MapSpec& spec, const ResultantPoly& res, const std::vector<BaseComponent>& comps) {
  if (res.poly.is_zero()) throw AlgebraError("extract_implicit: the resultant is zero");
  const std::size_t m = spec.size();
  ImplicitReport rep(res);
  MPoly rest = res.poly;

  auto attribute = [&](const BaseComponent& comp, std::optional<ProjPoint> point, const MPoly& factor) {
    const unsigned e = factor_exponent(rest, factor);
    if (e == 0) return;
    rest = rest.divide_exact(factor.pow(e));
    rep.attributions.push_back({comp, std::move(point), factor, e});
  };

  for (const auto& comp : comps) {
    if (comp.dimension == 0 && comp.alpha.size() + 1 == m) {
      std::size_t i = 0;
      while (contains(comp.alpha, i)) ++i;
      for (const auto& p : comp.points) attribute(comp, p, point_factor(p, i, spec));
    } else if (comp.dimension > 0 && comp.param) {
      try {
        attribute(comp, std::nullopt, implicitize_restricted(spec, *comp.param, comp.alpha));
      } catch (const AlgebraError& e) {
        rep.diagnostics.push_back("component " + subset_to_string(comp.alpha) + ": " + e.what());
      }
    } else if (comp.dimension > 0) {
      rep.diagnostics.push_back("component " + subset_to_string(comp.alpha) + " of dimension " +
                                std::to_string(comp.dimension) + " has no linear parametrization");
    }
    if (comp.unresolved > 0)
      rep.diagnostics.push_back("component " + subset_to_string(comp.alpha) + " has " + std::to_string(comp.unresolved) +
                                " irrational points");
  }

  if (rest.is_constant()) {
    rep.diagnostics.push_back("no residual factor after removing base-locus factors");
    return rep;
  }
  SquarefreeDecomp sq = squarefree_decompose(rest);
  if (sq.parts.size() == 1) {
    rep.H = sq.parts[0].part.normalized();
    rep.deg_phi = sq.parts[0].multiplicity;
  } else {
    std::string s = "mixed multiplicities in the residual factor:";
    for (const auto& part : sq.parts) s += " (" + part.part.to_string() + ")^" + std::to_string(part.multiplicity);
    rep.diagnostics.push_back(s);
  }
  rep.residual = std::move(sq);

  if (rep.H) {
    const auto e = spec.resultant_multidegree();
    for (std::size_t i = 0; i < m; ++i) {
      unsigned total = rep.H->pair_degree(i) * rep.deg_phi;
      for (const auto& a : rep.attributions) total += a.factor.pair_degree(i) * a.exponent;
      if (total != e[i])
        rep.diagnostics.push_back("degree identity fails in pair " + std::to_string(i) + ": " + std::to_string(total) +
                                  " != " + std::to_string(e[i]));
    }
  }
  return rep;
}

MuBound mu_lower_bound(const MapSpec& spec, const Subset& alpha, const std::vector<MPoly>& alpha_gens, unsigned max_power) {
  const std::size_t m = spec.size();
  if (alpha_gens.size() != alpha.size())
    throw AlgebraError("mu_lower_bound: need " + std::to_string(alpha.size()) + " generators for " + subset_to_string(alpha));
  const auto l = linear_forms(spec);
  std::vector<MPoly> g = alpha_gens;
  for (std::size_t i = 0; i < m; ++i)
    if (!contains(alpha, i)) g.push_back(l[i]);

  MuBound out(general_resultant(g));
  out.mu.assign(m, 1);
  for (auto j : alpha) {
    unsigned e = 0;
    while (e < max_power) {
      const auto power = ideal_power(g, e + 1);
      if (!ideal_member(l[j], power)) break;
      ++e;
    }
    if (e == 0) out.diagnostics.push_back("L_" + std::to_string(j) + " is not in the ideal G");
    if (e == max_power) out.diagnostics.push_back("L_" + std::to_string(j) + " membership search reached the bound " + std::to_string(max_power));
    out.mu[j] = e;
  }
  for (auto x : out.mu) out.product *= x;
  return out;
}

MPoly implicitize_restricted(const MapSpec& spec, const LinearParam& subspace, const Subset& alpha) {
  const Ring& r = spec.ring();
  const std::size_t m = spec.size();
  const std::size_t k1 = subspace.params();
  if (subspace.matrix.size() != r->num_t() || k1 == 0 || k1 > r->num_t())
    throw AlgebraError("implicitize_restricted: parametrization has the wrong shape");
  for (const auto& row : subspace.matrix)
    if (row.size() != k1) throw AlgebraError("implicitize_restricted: ragged parametrization");
  {
    std::vector<std::vector<Rat>> cols(k1, std::vector<Rat>(r->num_t()));
    for (std::size_t j = 0; j < r->num_t(); ++j)
      for (std::size_t l = 0; l < k1; ++l) cols[l][j] = subspace.matrix[j][l];
    if (rank_of(cols) != k1) throw AlgebraError("implicitize_restricted: parametrization is not injective");
  }

  MPoly constants(r, Rat(1));
  std::vector<std::size_t> moving;
  std::vector<std::pair<MPoly, MPoly>> rest;
  for (std::size_t i = 0; i < m; ++i) {
    MPoly f = restrict_to(spec.pair(i).f, subspace);
    MPoly g = restrict_to(spec.pair(i).g, subspace);
    const bool vanish = f.is_zero() && g.is_zero();
    if (contains(alpha, i)) {
      if (!vanish) throw AlgebraError("not a base component: pair " + std::to_string(i) + " does not vanish on it");
      continue;
    }
    if (vanish) throw AlgebraError("not a base component: pair " + std::to_string(i) + " also vanishes on it");
    if (!f.is_zero() && !g.is_zero()) {
      const MPoly c = multivariate_gcd(f, g);
      f = f.divide_exact(c);
      g = g.divide_exact(c);
    } else {
      f = f.is_zero() ? f : MPoly(r, Rat(1));
      g = g.is_zero() ? g : MPoly(r, Rat(1));
    }
    if (f.is_constant() && g.is_constant()) {
      constants *= MPoly::variable(r, r->x_index(i)) * g.constant_value() - MPoly::variable(r, r->y_index(i)) * f.constant_value();
    } else {
      moving.push_back(i);
      rest.emplace_back(std::move(f), std::move(g));
    }
  }
  if (moving.empty()) return constants.normalized();
  if (moving.size() > k1) throw AlgebraError("restricted image is not a hypersurface");

  if (moving.size() < k1) {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<int> coord(-50, 50);
    std::size_t best = 0;
    for (int attempt = 0; attempt < 3 && best < moving.size(); ++attempt) {
      std::vector<Rat> vals(r->num_vars());
      for (std::size_t l = 0; l < k1; ++l) vals[l] = coord(rng);
      std::vector<std::vector<Rat>> jac;
      for (const auto& [f, g] : rest) {
        const Rat fv = evaluate_at(f, vals), gv = evaluate_at(g, vals);
        std::vector<Rat> row;
        for (std::size_t l = 0; l < k1; ++l) row.push_back(gv * evaluate_at(f.derivative(l), vals) - fv * evaluate_at(g.derivative(l), vals));
        jac.push_back(std::move(row));
      }
      best = std::max(best, rank_of(jac));
    }
    if (best < moving.size()) throw AlgebraError("restricted map not generically finite");
    return constants.normalized();
  }

  std::vector<std::string> t_names(r->t_vars().begin(), r->t_vars().begin() + static_cast<std::ptrdiff_t>(k1));
  std::vector<std::pair<std::string, std::string>> pair_names;
  for (auto i : moving) pair_names.push_back(r->pairs()[i]);
  const Ring sub = std::make_shared<const RingSpec>(t_names, pair_names);
  std::vector<std::pair<MPoly, MPoly>> sub_pairs;
  for (const auto& [f, g] : rest) sub_pairs.emplace_back(change_ring(f, sub), change_ring(g, sub));
  const MapSpec sub_spec(sub, std::move(sub_pairs));
  const ResultantPoly res = macaulay_resultant(sub_spec);
  if (res.poly.is_zero()) throw AlgebraError("restricted map not generically finite");
  const ImplicitReport inner = extract_implicit(sub_spec, res, base_points(sub_spec));
  if (!inner.H) throw AlgebraError("restricted map: no implicit equation found");
  return (constants * change_ring(*inner.H, r)).normalized();
}

ImplicitReport implicitize(const MapSpec& spec, const ImplicitOptions& opt) {
  using clock = std::chrono::steady_clock;
  auto since = [](clock::time_point t0) {
    return static_cast<long long>(std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - t0).count());
  };
  auto t0 = clock::now();
  ConditionReport cond = check_acyclicity(spec);
  check_strict_codim(spec, cond);
  for (const auto& w : spec.warnings()) cond.diagnostics.push_back(w);
  const long long t_cond = since(t0);
  if (!cond.avramov_ok) {
    ImplicitReport rep(ResultantPoly{MPoly(spec.ring()), spec.resultant_multidegree(), opt.nu.value_or(spec.eta() + 1), spec.eta(), {}, {}});
    rep.conditions = std::move(cond);
    rep.diagnostics.push_back("Koszul complex is not acyclic; resultant not computed");
    rep.timings_ms["conditions"] = t_cond;
    return rep;
  }
  t0 = clock::now();
  const ResultantPoly res = macaulay_resultant(spec, opt.nu, opt.method, opt.det);
  const long long t_res = since(t0);
  if (res.poly.is_zero()) {
    ImplicitReport rep(res);
    rep.conditions = std::move(cond);
    rep.diagnostics = res.diagnostics;
    rep.timings_ms = {{"conditions", t_cond}, {"resultant", t_res}};
    return rep;
  }
  t0 = clock::now();
  ImplicitReport rep = extract_implicit(spec, res, base_points(spec));
  rep.conditions = std::move(cond);
  rep.timings_ms = {{"conditions", t_cond}, {"resultant", t_res}, {"analysis", since(t0)}};
  return rep;
}

}  // namespace kresolve
