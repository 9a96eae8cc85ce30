#include "kresolve/koszul.hpp"

#include <map>

namespace kresolve {

MapSpec::MapSpec(Ring ring, std::vector<std::pair<MPoly, MPoly>> pairs, CoprimeMode mode) : ring_(std::move(ring)), mode_(mode) {
  if (ring_->num_pairs() != ring_->num_t())
    throw AlgebraError("ring must have as many pairs as t-variables (" + std::to_string(ring_->num_t()) + ")");
  if (pairs.size() != ring_->num_t())
    throw AlgebraError("expected " + std::to_string(ring_->num_t()) + " pairs, got " + std::to_string(pairs.size()));
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto& [f, g] = pairs[i];
    const std::string tag = "pair " + std::to_string(i);
    if (!same_ring(f.ring(), ring_) || !same_ring(g.ring(), ring_)) throw AlgebraError(tag + ": ring mismatch");
    if (f.is_zero() && g.is_zero()) throw AlgebraError(tag + ": f and g are both zero");
    if (!f.only_t_vars() || !g.only_t_vars()) throw AlgebraError(tag + ": f and g must involve only t-variables");
    const auto df = f.multidegree().t_deg, dg = g.multidegree().t_deg;
    if (!df || !dg) throw AlgebraError(tag + ": f and g must be homogeneous");
    unsigned d;
    if (f.is_zero())
      d = static_cast<unsigned>(*dg);
    else if (g.is_zero())
      d = static_cast<unsigned>(*df);
    else if (*df != *dg)
      throw AlgebraError(tag + ": deg f = " + std::to_string(*df) + " differs from deg g = " + std::to_string(*dg));
    else
      d = static_cast<unsigned>(*df);
    const MPoly common = multivariate_gcd(f, g);
    if (!common.is_constant()) {
      const std::string msg = tag + ": f and g share the common factor " + common.to_string();
      if (mode == CoprimeMode::strict) throw AlgebraError(msg);
      warnings_.push_back(msg);
    }
    pairs_.push_back({f, g, d});
  }
}

std::vector<unsigned> MapSpec::degrees() const {
  std::vector<unsigned> out;
  for (const auto& p : pairs_) out.push_back(p.d);
  return out;
}

int MapSpec::eta() const {
  int eta = 0;
  for (const auto& p : pairs_) eta += static_cast<int>(p.d) - 1;
  return eta;
}

std::vector<unsigned> MapSpec::resultant_multidegree() const {
  std::vector<unsigned> e(pairs_.size(), 1);
  for (std::size_t i = 0; i < pairs_.size(); ++i)
    for (std::size_t j = 0; j < pairs_.size(); ++j)
      if (j != i) e[i] *= pairs_[j].d;
  return e;
}

std::vector<MPoly> linear_forms(const MapSpec& spec) {
  const Ring& r = spec.ring();
  std::vector<MPoly> out;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const auto& p = spec.pair(i);
    out.push_back(p.g * MPoly::variable(r, r->x_index(i)) - p.f * MPoly::variable(r, r->y_index(i)));
  }
  return out;
}

PolyMatrix::PolyMatrix(const Ring& ring, std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, MPoly(ring)) {}

std::vector<std::size_t> Strand::ranks() const {
  std::vector<std::size_t> out;
  for (const auto& b : bases) out.push_back(b.size());
  return out;
}

int Strand::euler_characteristic() const {
  long sum = 0;
  for (std::size_t k = 0; k < bases.size(); ++k) sum += (k % 2 ? -1 : 1) * static_cast<long>(bases[k].size());
  return static_cast<int>(sum);
}

std::size_t count_monomials(int deg, std::size_t m) {
  if (deg < 0 || m == 0) return deg == 0 ? 1 : 0;
  // C(deg + m - 1, m - 1)
  std::size_t num = 1;
  for (std::size_t k = 1; k < m; ++k) num = num * (static_cast<std::size_t>(deg) + k) / k;
  return num;
}

std::vector<Monomial> t_monomials(int deg, std::size_t m) {
  std::vector<Monomial> out;
  if (deg < 0 || m == 0) {
    if (deg == 0) out.emplace_back();
    return out;
  }
  Monomial cur;
  auto rec = [&](auto&& self, std::size_t v, unsigned left) -> void {
    if (v + 1 == m) {
      cur.set(v, left);
      out.push_back(cur);
      return;
    }
    for (unsigned e = left + 1; e-- > 0;) {
      cur.set(v, e);
      self(self, v + 1, left - e);
    }
    cur.set(v, 0);
  };
  rec(rec, 0, static_cast<unsigned>(deg));
  return out;
}

namespace {

std::vector<std::vector<std::size_t>> subsets_of_size(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
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

unsigned mask_of(const std::vector<std::size_t>& s) {
  unsigned m = 0;
  for (auto i : s) m |= 1u << i;
  return m;
}

}  // namespace

Strand koszul_strand(std::span<const MPoly> forms, int nu, bool allow_low_nu) {
  if (forms.empty()) throw AlgebraError("koszul_strand: no forms");
  const Ring& ring = forms.front().ring();
  const std::size_t m = ring->num_t();
  if (forms.size() != m) throw AlgebraError("koszul_strand: need one form per t-variable");

  // Split each form by t-monomial: P_i = sum tm * coefficient(X).
  std::vector<std::vector<std::pair<Monomial, MPoly>>> parts(forms.size());
  std::vector<unsigned> degrees;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    const MPoly& p = forms[i];
    if (!same_ring(p.ring(), ring)) throw AlgebraError("koszul_strand: ring mismatch");
    if (p.is_zero()) throw AlgebraError("koszul_strand: form " + std::to_string(i) + " is zero");
    const auto td = p.multidegree().t_deg;
    if (!td) throw AlgebraError("koszul_strand: form " + std::to_string(i) + " is not homogeneous in t");
    degrees.push_back(static_cast<unsigned>(*td));
    std::map<Monomial, std::vector<Term>> groups;
    for (const auto& t : p.terms()) {
      Monomial tm, xm;
      for (std::size_t v = 0; v < ring->num_vars(); ++v) (v < m ? tm : xm).set(v, t.mono[v]);
      groups[tm].push_back({xm, t.coef});
    }
    for (auto& [tm, terms] : groups) parts[i].emplace_back(tm, MPoly(ring, std::move(terms)));
  }
  int eta = 0;
  for (auto d : degrees) eta += static_cast<int>(d) - 1;
  if (nu <= eta && !allow_low_nu)
    throw AlgebraError("koszul_strand: nu = " + std::to_string(nu) + " must exceed eta = " + std::to_string(eta));

  Strand s;
  s.ring = ring;
  s.nu = nu;
  s.degrees = degrees;
  const std::size_t len = forms.size();
  std::vector<std::map<std::pair<unsigned, Monomial>, std::size_t>> index(len + 1);
  for (std::size_t k = 0; k <= len; ++k) {
    std::vector<StrandBasisElem> basis;
    for (const auto& subset : subsets_of_size(len, k)) {
      int deg = nu;
      for (auto i : subset) deg -= static_cast<int>(degrees[i]);
      for (const auto& tm : t_monomials(deg, m)) {
        index[k][{mask_of(subset), tm}] = basis.size();
        basis.push_back({subset, tm});
      }
    }
    s.bases.push_back(std::move(basis));
  }

  s.maps.emplace_back();
  for (std::size_t k = 1; k <= len; ++k) {
    PolyMatrix mat(ring, s.bases[k - 1].size(), s.bases[k].size());
    for (std::size_t c = 0; c < s.bases[k].size(); ++c) {
      const auto& [subset, mono] = s.bases[k][c];
      const unsigned mask = mask_of(subset);
      for (std::size_t j = 0; j < subset.size(); ++j) {
        const std::size_t i = subset[j];
        const unsigned target = mask & ~(1u << i);
        for (const auto& [tm, coef] : parts[i]) {
          const auto it = index[k - 1].find({target, tm * mono});
          if (it == index[k - 1].end()) throw AlgebraError("koszul_strand: basis bookkeeping failed");
          if (j % 2)
            mat.at(it->second, c) -= coef;
          else
            mat.at(it->second, c) += coef;
        }
      }
    }
    s.maps.push_back(std::move(mat));
  }
  return s;
}

Strand koszul_strand(const MapSpec& spec, std::optional<int> nu) {
  const auto forms = linear_forms(spec);
  return koszul_strand(forms, nu.value_or(spec.eta() + 1));
}

SanityReport strand_sanity(const Strand& s) {
  SanityReport rep;
  for (std::size_t k = 1; k + 1 < s.maps.size(); ++k) {
    const PolyMatrix& a = s.maps[k];
    const PolyMatrix& b = s.maps[k + 1];
    for (std::size_t r = 0; r < a.rows(); ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) {
        MPoly sum(s.ring);
        for (std::size_t mid = 0; mid < a.cols(); ++mid) {
          if (a.at(r, mid).is_zero() || b.at(mid, c).is_zero()) continue;
          sum += a.at(r, mid) * b.at(mid, c);
        }
        if (!sum.is_zero()) {
          rep.ok = false;
          rep.level = k;
          rep.row = r;
          rep.col = c;
          rep.message = "d" + std::to_string(k) + "*d" + std::to_string(k + 1) + " is nonzero at (" + std::to_string(r) + ", " +
                        std::to_string(c) + "): " + sum.to_string();
          return rep;
        }
      }
  }
  if (const int chi = s.euler_characteristic(); chi != 0) {
    rep.ok = false;
    rep.message = "alternating rank sum is " + std::to_string(chi);
  }
  return rep;
}

}  // namespace kresolve
