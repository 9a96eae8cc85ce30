#include "kresolve/detcx.hpp"

#include <atomic>
#include <random>
#include <thread>

#include "kresolve/modp.hpp"

namespace kresolve {

std::string to_string(DetMethod m) {
  switch (m) {
    case DetMethod::cayley:
      return "cayley";
    case DetMethod::interpolate:
      return "interpolate";
    case DetMethod::both:
      return "both";
  }
  return "";
}

std::optional<DetMethod> parse_det_method(std::string_view s) {
  if (s == "cayley") return DetMethod::cayley;
  if (s == "interpolate") return DetMethod::interpolate;
  if (s == "both") return DetMethod::both;
  return std::nullopt;
}

int shuffle_sign(std::span<const std::size_t> subset, std::size_t n) {
  std::size_t inversions = 0;
  for (std::size_t k = 0; k < subset.size(); ++k) {
    if (subset[k] >= n) throw std::out_of_range("shuffle_sign: index out of range");
    inversions += subset[k] - k;
  }
  return inversions % 2 ? -1 : 1;
}

bool has_pair_multidegree(const MPoly& p, std::span<const unsigned> e) {
  if (p.is_zero() || !p.only_pair_vars()) return false;
  const MultiDeg md = p.multidegree();
  if (md.pair_degs.size() != e.size()) return false;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (md.pair_degs[i] != static_cast<int>(e[i])) return false;
  return true;
}

namespace {

using Columns = std::vector<std::vector<std::size_t>>;

struct CTerm {
  mpz_class coef;
  std::vector<std::pair<std::uint16_t, std::uint16_t>> powers;  // (var, exponent)
};
struct CEntry {
  std::size_t row, col;
  std::vector<CTerm> terms;
};
struct CLevel {
  std::size_t rows = 0, cols = 0;
  mpz_class scale = 1;  // entries of maps[k] multiplied by this
  std::vector<CEntry> entries;
};

// Integer form of the strand maps (index 0 unused).
std::vector<CLevel> compile(const Strand& s) {
  std::vector<CLevel> out(s.maps.size());
  for (std::size_t k = 1; k < s.maps.size(); ++k) {
    const PolyMatrix& m = s.maps[k];
    CLevel& lv = out[k];
    lv.rows = m.rows();
    lv.cols = m.cols();
    mpz_class den = 1;
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c)
        for (const auto& t : m.at(r, c).terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coef.get_den_mpz_t());
    lv.scale = den;
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) {
        const MPoly& e = m.at(r, c);
        if (e.is_zero()) continue;
        CEntry ce{r, c, {}};
        for (const auto& t : e.terms()) {
          CTerm ct;
          ct.coef = t.coef.get_num() * (den / t.coef.get_den());
          for (std::size_t v = 0; v < kMaxVars; ++v)
            if (t.mono[v]) ct.powers.emplace_back(static_cast<std::uint16_t>(v), t.mono[v]);
          ce.terms.push_back(std::move(ct));
        }
        lv.entries.push_back(std::move(ce));
      }
  }
  return out;
}

struct ModTerm {
  std::uint64_t coef;
  const std::vector<std::pair<std::uint16_t, std::uint16_t>>* powers;
};

// Coefficients of the compiled strand reduced mod p.
struct ModLevels {
  std::vector<std::vector<std::vector<ModTerm>>> terms;  // [level][entry][term]

  ModLevels(const std::vector<CLevel>& levels, const modp::Field& f) : terms(levels.size()) {
    for (std::size_t k = 1; k < levels.size(); ++k)
      for (const auto& e : levels[k].entries) {
        std::vector<ModTerm> ts;
        for (const auto& t : e.terms) ts.push_back({f.from_mpz(t.coef), &t.powers});
        terms[k].push_back(std::move(ts));
      }
  }
};

using Dense = std::vector<std::uint64_t>;

std::vector<Dense> eval_mod(const std::vector<CLevel>& levels, const ModLevels& ml, const modp::Field& f,
                            const std::vector<std::uint64_t>& vals) {
  std::vector<Dense> out(levels.size());
  for (std::size_t k = 1; k < levels.size(); ++k) {
    out[k].assign(levels[k].rows * levels[k].cols, 0);
    for (std::size_t e = 0; e < levels[k].entries.size(); ++e) {
      std::uint64_t acc = 0;
      for (const auto& t : ml.terms[k][e]) {
        std::uint64_t x = t.coef;
        for (const auto& [v, ex] : *t.powers) x = f.mul(x, ex == 1 ? vals[v] : f.pow(vals[v], ex));
        acc = f.add(acc, x);
      }
      const auto& ce = levels[k].entries[e];
      out[k][ce.row * levels[k].cols + ce.col] = acc;
    }
  }
  return out;
}

std::vector<std::size_t> complement(const std::vector<std::size_t>& sel, std::size_t n) {
  std::vector<bool> in(n, false);
  for (auto i : sel) in[i] = true;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i)
    if (!in[i]) out.push_back(i);
  return out;
}

// Greedy left-to-right column selection making rows x cols nonsingular.
std::optional<std::vector<std::size_t>> select_level(const modp::Field& f, const Dense& a, std::size_t ncols,
                                                     const std::vector<std::size_t>& rows) {
  const std::size_t r = rows.size();
  std::vector<std::size_t> chosen;
  if (r == 0) return chosen;
  std::vector<std::vector<std::uint64_t>> basis;
  std::vector<std::size_t> pivots;
  std::vector<std::uint64_t> v(r);
  for (std::size_t c = 0; c < ncols && chosen.size() < r; ++c) {
    bool any = false;
    for (std::size_t i = 0; i < r; ++i) {
      v[i] = a[rows[i] * ncols + c];
      any |= v[i] != 0;
    }
    if (!any) continue;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const std::uint64_t x = v[pivots[b]];
      if (!x) continue;
      for (std::size_t i = 0; i < r; ++i)
        if (basis[b][i]) v[i] = f.sub(v[i], f.mul(x, basis[b][i]));
    }
    std::size_t piv = r;
    for (std::size_t i = 0; i < r; ++i)
      if (v[i]) {
        piv = i;
        break;
      }
    if (piv == r) continue;
    const std::uint64_t inv = f.inv(v[piv]);
    for (auto& x : v) x = f.mul(x, inv);
    basis.push_back(v);
    pivots.push_back(piv);
    chosen.push_back(c);
  }
  if (chosen.size() < r) return std::nullopt;
  return chosen;
}

std::optional<Columns> select_all(const modp::Field& f, const std::vector<CLevel>& levels, const std::vector<Dense>& mats) {
  Columns cols(levels.size());
  std::vector<std::size_t> prev;
  for (std::size_t k = 1; k < levels.size(); ++k) {
    const auto rows = complement(prev, levels[k].rows);
    auto sel = select_level(f, mats[k], levels[k].cols, rows);
    if (!sel) return std::nullopt;
    cols[k] = *sel;
    prev = *sel;
  }
  // The last map must be injective.
  if (levels.size() > 1 && prev.size() != levels.back().cols) return std::nullopt;
  return cols;
}

std::uint64_t det_mod(const modp::Field& f, std::vector<std::uint64_t> a, std::size_t n) {
  std::uint64_t det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv * n + c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a[piv * n + k], a[c * n + k]);
      det = f.neg(det);
    }
    const std::uint64_t p = a[c * n + c];
    det = f.mul(det, p);
    const std::uint64_t inv = f.inv(p);
    for (std::size_t r = c + 1; r < n; ++r) {
      std::uint64_t x = a[r * n + c];
      if (!x) continue;
      x = f.mul(x, inv);
      std::uint64_t* dst = &a[r * n];
      const std::uint64_t* src = &a[c * n];
      for (std::size_t k = c + 1; k < n; ++k)
        if (src[k]) dst[k] = f.sub(dst[k], f.mul(x, src[k]));
    }
  }
  return det;
}

std::optional<std::uint64_t> complex_det_mod(const modp::Field& f, const std::vector<CLevel>& levels, const std::vector<Dense>& mats,
                                             const Columns& cols) {
  std::uint64_t num = 1, den = 1;
  std::vector<std::size_t> prev;
  for (std::size_t k = 1; k < levels.size(); ++k) {
    const auto rows = complement(prev, levels[k].rows);
    const auto& cs = cols[k];
    const std::size_t n = rows.size();
    std::uint64_t d = 1;
    if (n) {
      std::vector<std::uint64_t> minor(n * n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) minor[i * n + j] = mats[k][rows[i] * levels[k].cols + cs[j]];
      d = det_mod(f, std::move(minor), n);
      if (d == 0) return std::nullopt;
    }
    if (shuffle_sign(cs, levels[k].cols) < 0) d = f.neg(d);
    if (k % 2)
      num = f.mul(num, d);
    else
      den = f.mul(den, d);
    prev = cs;
  }
  return f.mul(num, f.inv(den));
}

// Fraction-free determinant over Z.
mpz_class bareiss(std::vector<mpz_class> a, std::size_t n) {
  if (n == 0) return 1;
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t c = 0; c + 1 < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv * n + c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a[piv * n + k], a[c * n + k]);
      sign = -sign;
    }
    for (std::size_t r = c + 1; r < n; ++r) {
      for (std::size_t k = c + 1; k < n; ++k) {
        mpz_class t = a[c * n + c] * a[r * n + k] - a[r * n + c] * a[c * n + k];
        mpz_divexact(a[r * n + k].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[r * n + c] = 0;
    }
    prev = a[c * n + c];
  }
  return sign * a[n * n - 1];
}

// Exact determinant of the compiled (scaled) complex at an integer point.
std::optional<Rat> complex_det_exact(const std::vector<CLevel>& levels, const Columns& cols, const std::vector<mpz_class>& vals) {
  Rat out = 1;
  std::vector<std::size_t> prev;
  for (std::size_t k = 1; k < levels.size(); ++k) {
    const auto& lv = levels[k];
    std::vector<mpz_class> full(lv.rows * lv.cols);
    for (const auto& e : lv.entries) {
      mpz_class acc = 0;
      for (const auto& t : e.terms) {
        mpz_class x = t.coef;
        for (const auto& [v, ex] : t.powers) {
          mpz_class pw;
          mpz_pow_ui(pw.get_mpz_t(), vals[v].get_mpz_t(), ex);
          x *= pw;
        }
        acc += x;
      }
      full[e.row * lv.cols + e.col] = acc;
    }
    const auto rows = complement(prev, lv.rows);
    const auto& cs = cols[k];
    const std::size_t n = rows.size();
    std::vector<mpz_class> minor(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) minor[i * n + j] = full[rows[i] * lv.cols + cs[j]];
    mpz_class d = bareiss(std::move(minor), n);
    if (d == 0) return std::nullopt;
    if (shuffle_sign(cs, lv.cols) < 0) d = -d;
    if (k % 2)
      out *= d;
    else
      out /= d;
    prev = cs;
  }
  return out;
}

// Fraction-free determinant over k[X].
MPoly poly_bareiss(std::vector<MPoly> a, std::size_t n, const Ring& ring) {
  if (n == 0) return MPoly(ring, Rat(1));
  int sign = 1;
  MPoly prev(ring, Rat(1));
  for (std::size_t c = 0; c + 1 < n; ++c) {
    std::size_t piv = n;
    for (std::size_t r = c; r < n; ++r)
      if (!a[r * n + c].is_zero() && (piv == n || a[r * n + c].size() < a[piv * n + c].size())) piv = r;
    if (piv == n) return MPoly(ring);
    if (piv != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a[piv * n + k], a[c * n + k]);
      sign = -sign;
    }
    const MPoly& p = a[c * n + c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const MPoly& x = a[r * n + c];
      for (std::size_t k = c + 1; k < n; ++k) {
        MPoly t = p * a[r * n + k];
        if (!x.is_zero() && !a[c * n + k].is_zero()) t -= x * a[c * n + k];
        a[r * n + k] = prev.is_constant() ? t * (1 / prev.constant_value()) : t.divide_exact(prev);
      }
      a[r * n + c] = MPoly(ring);
    }
    prev = a[c * n + c];
  }
  MPoly d = a[n * n - 1];
  return sign < 0 ? -d : d;
}

std::vector<std::uint64_t> point_mod(const modp::Field& f, const std::vector<long long>& v) {
  std::vector<std::uint64_t> out;
  for (auto x : v) out.push_back(f.from_int(x));
  return out;
}

unsigned thread_count(const DetOptions& opt) {
  unsigned t = opt.threads ? opt.threads : std::thread::hardware_concurrency();
  return t ? t : 1;
}

}  // namespace

std::optional<Rat> det_at_point(const Strand& s, const Columns& columns, std::span<const Rat> values) {
  Rat out = 1;
  std::vector<std::size_t> prev;
  for (std::size_t k = 1; k < s.maps.size(); ++k) {
    const PolyMatrix& m = s.maps[k];
    const auto rows = complement(prev, m.rows());
    const auto& cs = columns.at(k);
    const std::size_t n = rows.size();
    if (cs.size() != n) throw AlgebraError("det_at_point: selection does not match the strand");
    std::vector<mpz_class> minor(n * n);
    mpz_class scale = 1;
    std::vector<Rat> vals(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        vals[i * n + j] = evaluate_at(m.at(rows[i], cs[j]), values);
        mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), vals[i * n + j].get_den_mpz_t());
      }
    for (std::size_t i = 0; i < n * n; ++i) minor[i] = vals[i].get_num() * (scale / vals[i].get_den());
    Rat d(bareiss(std::move(minor), n));
    if (d == 0) return std::nullopt;
    mpz_class total;
    mpz_pow_ui(total.get_mpz_t(), scale.get_mpz_t(), n);
    d /= Rat(total);
    if (shuffle_sign(cs, m.cols()) < 0) d = -d;
    if (k % 2)
      out *= d;
    else
      out /= d;
    prev = cs;
  }
  return out;
}

DetResult det_cayley(const Strand& s, const DetOptions& opt) {
  const Ring& ring = s.ring;
  const auto levels = compile(s);
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<long long> dist(-1000, 1000);
  DetResult out{MPoly(ring), {}};
  out.certificate.method = "cayley";
  std::optional<Columns> cols;
  for (std::size_t attempt = 0; attempt < 5 && !cols; ++attempt) {
    const modp::Field f(modp::large_prime(attempt));
    std::vector<long long> pt(ring->num_vars());
    for (std::size_t v = ring->num_t(); v < ring->num_vars(); ++v) pt[v] = dist(rng);
    const ModLevels ml(levels, f);
    cols = select_all(f, levels, eval_mod(levels, ml, f, point_mod(f, pt)));
    out.certificate.pilot = pt;
    out.certificate.primes = {f.prime()};
  }
  if (!cols) throw NotExactError("strand is not generically exact (no valid subset selection)");
  out.certificate.columns = *cols;

  MPoly num(ring, Rat(1)), den(ring, Rat(1));
  std::vector<std::size_t> prev;
  for (std::size_t k = 1; k < s.maps.size(); ++k) {
    const PolyMatrix& m = s.maps[k];
    const auto rows = complement(prev, m.rows());
    const auto& cs = (*cols)[k];
    const std::size_t n = rows.size();
    std::vector<MPoly> minor;
    minor.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) minor.push_back(m.at(rows[i], cs[j]));
    MPoly d = poly_bareiss(std::move(minor), n, ring);
    if (d.is_zero()) throw AlgebraError("det_cayley: selected minor vanishes identically");
    if (shuffle_sign(cs, m.cols()) < 0) d = -d;
    if (k % 2)
      num *= d;
    else
      den *= d;
    prev = cs;
  }
  auto q = num.try_divide(den);
  if (!q) throw AlgebraError("det_cayley: alternating product is not a polynomial");
  out.poly = q->normalized();
  return out;
}

DetResult det_interpolate(const Strand& s, std::span<const unsigned> bounds, const DetOptions& opt) {
  const Ring& ring = s.ring;
  const std::size_t np = ring->num_pairs();
  if (bounds.size() != np) throw AlgebraError("det_interpolate: one degree bound per pair required");
  for (std::size_t k = 1; k < s.maps.size(); ++k)
    for (std::size_t r = 0; r < s.maps[k].rows(); ++r)
      for (std::size_t c = 0; c < s.maps[k].cols(); ++c) {
        const MPoly& e = s.maps[k].at(r, c);
        if (e.is_zero()) continue;
        const MultiDeg md = e.multidegree();
        int total = 0;
        bool ok = e.only_pair_vars();
        for (const auto& d : md.pair_degs) {
          if (!d) ok = false;
          total += d.value_or(0);
        }
        if (!ok || total != 1) throw AlgebraError("det_interpolate: strand entries must be linear in a single pair");
      }

  const auto levels = compile(s);
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<long long> dist(-1000, 1000);
  DetResult out{MPoly(ring), {}};
  DetCertificate& cert = out.certificate;
  cert.method = "interpolate";

  // Pilot selection at a random point of the chart y_i = 1.
  std::optional<Columns> pilot;
  for (std::size_t attempt = 0; attempt < 5 && !pilot; ++attempt) {
    const modp::Field f(modp::large_prime(attempt));
    std::vector<long long> pt(ring->num_vars(), 0);
    for (std::size_t i = 0; i < np; ++i) {
      pt[ring->x_index(i)] = dist(rng);
      pt[ring->y_index(i)] = 1;
    }
    const ModLevels ml(levels, f);
    pilot = select_all(f, levels, eval_mod(levels, ml, f, point_mod(f, pt)));
    cert.pilot = pt;
  }
  if (!pilot) throw NotExactError("strand is not generically exact (no valid subset selection)");
  cert.columns = *pilot;

  std::vector<std::size_t> dims(np);
  std::size_t grid = 1;
  for (std::size_t i = 0; i < np; ++i) {
    dims[i] = bounds[i] + 1;
    grid *= dims[i];
  }
  cert.grid_points = grid;

  std::vector<mpz_class> acc(grid, 0), lifted(grid, 0), previous;
  mpz_class modulus = 1;
  const unsigned nthreads = thread_count(opt);
  std::atomic<std::size_t> reselections{0}, singular{0};

  for (std::size_t pi = 0;; ++pi) {
    if (pi >= opt.max_primes) throw AlgebraError("det_interpolate: coefficients did not stabilise");
    const modp::Field f(modp::large_prime(pi + 5));
    cert.primes.push_back(f.prime());
    const ModLevels ml(levels, f);
    std::vector<std::uint64_t> values(grid);
    auto work = [&](std::size_t begin, std::size_t end) {
      std::vector<std::uint64_t> vals(ring->num_vars(), 0);
      for (std::size_t i = 0; i < np; ++i) vals[ring->y_index(i)] = 1;
      for (std::size_t idx = begin; idx < end; ++idx) {
        std::size_t rest = idx;
        for (std::size_t i = np; i-- > 0;) {
          vals[ring->x_index(i)] = rest % dims[i];
          rest /= dims[i];
        }
        const auto mats = eval_mod(levels, ml, f, vals);
        auto v = complex_det_mod(f, levels, mats, *pilot);
        if (!v) {
          ++reselections;
          const auto local = select_all(f, levels, mats);
          if (local) {
            v = complex_det_mod(f, levels, mats, *local);
          } else {
            ++singular;
            v = 0;
          }
        }
        values[idx] = *v;
      }
    };
    if (nthreads <= 1 || grid < 64) {
      work(0, grid);
    } else {
      std::vector<std::thread> pool;
      const std::size_t chunk = (grid + nthreads - 1) / nthreads;
      for (unsigned t = 0; t < nthreads; ++t) {
        const std::size_t b = t * chunk, e = std::min(grid, b + chunk);
        if (b < e) pool.emplace_back(work, b, e);
      }
      for (auto& th : pool) th.join();
    }

    // Tensor Newton interpolation, one axis at a time.
    std::size_t stride = 1;
    for (std::size_t i = np; i-- > 0;) {
      std::vector<std::uint64_t> xs(dims[i]);
      for (std::size_t k = 0; k < dims[i]; ++k) xs[k] = k;
      const std::size_t block = stride * dims[i];
      for (std::size_t base = 0; base < grid; base += block)
        for (std::size_t off = 0; off < stride; ++off) {
          std::vector<std::uint64_t> ys(dims[i]);
          for (std::size_t k = 0; k < dims[i]; ++k) ys[k] = values[base + off + k * stride];
          auto coef = modp::interpolate(f, xs, ys);
          coef.resize(dims[i], 0);
          for (std::size_t k = 0; k < dims[i]; ++k) values[base + off + k * stride] = coef[k];
        }
      stride = block;
    }

    // Chinese remaindering with the symmetric lift.
    const mpz_class p = static_cast<unsigned long>(f.prime());
    mpz_class inv;
    const mpz_class mod_p = modulus % p;
    mpz_invert(inv.get_mpz_t(), mod_p.get_mpz_t(), p.get_mpz_t());
    for (std::size_t k = 0; k < grid; ++k) {
      mpz_class diff = (mpz_class(static_cast<unsigned long>(values[k])) - acc[k]) % p;
      if (diff < 0) diff += p;
      mpz_class t = (diff * inv) % p;
      acc[k] += modulus * t;
    }
    modulus *= p;
    const mpz_class half = modulus / 2;
    for (std::size_t k = 0; k < grid; ++k) lifted[k] = acc[k] > half ? acc[k] - modulus : acc[k];
    if (pi > 0 && lifted == previous) break;
    previous = lifted;
  }
  cert.local_reselections = reselections;
  cert.singular_points = singular;

  // Exact spot check at an off-grid point.
  bool checked = false;
  for (int attempt = 0; attempt < 5 && !checked; ++attempt) {
    std::vector<mpz_class> pt(ring->num_vars(), 0);
    for (std::size_t i = 0; i < np; ++i) {
      pt[ring->x_index(i)] = static_cast<long>(dist(rng));
      pt[ring->y_index(i)] = 1;
    }
    const auto exact = complex_det_exact(levels, *pilot, pt);
    if (!exact) continue;
    mpz_class sum = 0;
    for (std::size_t idx = 0; idx < grid; ++idx) {
      if (lifted[idx] == 0) continue;
      mpz_class term = lifted[idx];
      std::size_t rest = idx;
      for (std::size_t i = np; i-- > 0;) {
        mpz_class pw;
        mpz_pow_ui(pw.get_mpz_t(), pt[ring->x_index(i)].get_mpz_t(), rest % dims[i]);
        term *= pw;
        rest /= dims[i];
      }
      sum += term;
    }
    if (Rat(sum) != *exact) throw AlgebraError("det_interpolate: inconsistent interpolation (degree bounds too small?)");
    checked = true;
  }
  if (!checked) throw AlgebraError("det_interpolate: no usable spot-check point");

  // Rehomogenize each pair to degree bounds[i].
  std::vector<Term> terms;
  for (std::size_t idx = 0; idx < grid; ++idx) {
    if (lifted[idx] == 0) continue;
    Monomial m;
    std::size_t rest = idx;
    for (std::size_t i = np; i-- > 0;) {
      const unsigned a = static_cast<unsigned>(rest % dims[i]);
      rest /= dims[i];
      m.set(ring->x_index(i), a);
      m.set(ring->y_index(i), bounds[i] - a);
    }
    terms.push_back({m, Rat(lifted[idx])});
  }
  out.poly = MPoly(ring, std::move(terms)).normalized();
  if (out.poly.is_zero()) throw NotExactError("strand determinant vanishes identically");
  return out;
}

ResultantPoly macaulay_resultant(const MapSpec& spec, std::optional<int> nu, DetMethod method, const DetOptions& opt) {
  ResultantPoly out{MPoly(spec.ring()), spec.resultant_multidegree(), nu.value_or(spec.eta() + 1), spec.eta(), {}, {}};
  const Strand s = koszul_strand(spec, out.nu);
  try {
    switch (method) {
      case DetMethod::cayley: {
        auto r = det_cayley(s, opt);
        out.poly = r.poly;
        out.certificate = r.certificate;
        break;
      }
      case DetMethod::interpolate: {
        auto r = det_interpolate(s, out.multidegree, opt);
        out.poly = r.poly;
        out.certificate = r.certificate;
        break;
      }
      case DetMethod::both: {
        auto a = det_cayley(s, opt);
        auto b = det_interpolate(s, out.multidegree, opt);
        if (!equal_up_to_unit(a.poly, b.poly)) throw AlgebraError("determinant backends disagree");
        out.poly = a.poly;
        out.certificate = b.certificate;
        out.certificate.method = "both";
        break;
      }
    }
  } catch (const NotExactError& e) {
    out.poly = MPoly(spec.ring());
    out.diagnostics.push_back(std::string("Res = 0: ") + e.what());
  }
  if (!out.poly.is_zero() && !has_pair_multidegree(out.poly, out.multidegree))
    out.diagnostics.push_back("resultant does not have the expected multidegree");
  return out;
}

ResultantPoly general_resultant(std::span<const MPoly> forms, const DetOptions& opt) {
  if (forms.empty()) throw AlgebraError("general_resultant: no forms");
  int eta = 0;
  for (const auto& p : forms) {
    const auto d = p.multidegree().t_deg;
    if (!d) throw AlgebraError("general_resultant: form is not homogeneous in t");
    eta += *d - 1;
  }
  const Ring& ring = forms.front().ring();
  ResultantPoly out{MPoly(ring), {}, eta + 1, eta, {}, {}};
  const Strand s = koszul_strand(forms, out.nu);
  try {
    auto r = det_cayley(s, opt);
    out.poly = r.poly;
    out.certificate = r.certificate;
  } catch (const NotExactError& e) {
    out.diagnostics.push_back(std::string("Res = 0: ") + e.what());
  }
  return out;
}

}  // namespace kresolve
