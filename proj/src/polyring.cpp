#include "kresolve/polyring.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace kresolve {

namespace {

bool valid_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

}  // namespace

// ---------------------------------------------------------------- RingSpec

RingSpec::RingSpec(std::vector<std::string> t_vars, std::vector<std::pair<std::string, std::string>> pairs)
    : t_vars_(std::move(t_vars)), pairs_(std::move(pairs)) {
  names_ = t_vars_;
  for (const auto& [x, y] : pairs_) {
    names_.push_back(x);
    names_.push_back(y);
  }
  if (names_.size() > kMaxVars) throw std::invalid_argument("RingSpec: too many variables (max " + std::to_string(kMaxVars) + ")");
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (!valid_identifier(n)) throw std::invalid_argument("RingSpec: invalid variable name '" + n + "'");
    if (!seen.insert(n).second) throw std::invalid_argument("RingSpec: duplicate variable name '" + n + "'");
  }
}

std::shared_ptr<const RingSpec> RingSpec::with_default_pairs(std::vector<std::string> t_vars, std::size_t pair_count) {
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i < pair_count; ++i) pairs.emplace_back("x" + std::to_string(i), "y" + std::to_string(i));
  return std::make_shared<const RingSpec>(std::move(t_vars), std::move(pairs));
}

std::optional<std::size_t> RingSpec::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

// ---------------------------------------------------------------- Monomial

void Monomial::set(std::size_t var, unsigned e) {
  if (e > 0xFFFF) throw AlgebraError("exponent overflow");
  degree_ = degree_ - exp_[var] + e;
  exp_[var] = static_cast<std::uint16_t>(e);
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    const unsigned e = unsigned{exp_[i]} + other.exp_[i];
    if (e > 0xFFFF) throw AlgebraError("exponent overflow");
    r.exp_[i] = static_cast<std::uint16_t>(e);
  }
  r.degree_ = degree_ + other.degree_;
  return r;
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (exp_[i] > other.exp_[i]) return false;
  return true;
}

Monomial Monomial::quotient_of(const Monomial& other) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.exp_[i] = static_cast<std::uint16_t>(other.exp_[i] - exp_[i]);
  r.degree_ = other.degree_ - degree_;
  return r;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial r;
  unsigned d = 0;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    r.exp_[i] = std::max(exp_[i], other.exp_[i]);
    d += r.exp_[i];
  }
  r.degree_ = d;
  return r;
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (exp_[i] && other.exp_[i]) return false;
  return true;
}

bool MultiDeg::homogeneous() const {
  if (!t_deg) return false;
  return std::all_of(pair_degs.begin(), pair_degs.end(), [](const auto& d) { return d.has_value(); });
}

// ---------------------------------------------------------------- MPoly

bool same_ring(const Ring& a, const Ring& b) { return a == b || (a && b && *a == *b); }

MPoly::MPoly(Ring ring) : ring_(std::move(ring)) {
  if (!ring_) throw std::invalid_argument("MPoly: null ring");
}

MPoly::MPoly(Ring ring, const Rat& constant) : MPoly(std::move(ring)) {
  if (constant != 0) terms_.push_back({Monomial{}, constant});
}

MPoly::MPoly(Ring ring, std::vector<Term> terms) : MPoly(std::move(ring)) {
  terms_ = std::move(terms);
  canonicalize();
}

MPoly from_sum(Ring ring, std::vector<Term> terms) { return MPoly(std::move(ring), std::move(terms)); }

MPoly MPoly::variable(Ring ring, std::size_t var) {
  if (var >= ring->num_vars()) throw std::out_of_range("MPoly::variable");
  Monomial m;
  m.set(var, 1);
  return monomial(std::move(ring), m);
}

MPoly MPoly::monomial(Ring ring, const Monomial& m, const Rat& coef) {
  MPoly p(std::move(ring));
  if (coef != 0) p.terms_.push_back({m, coef});
  return p;
}

void MPoly::canonicalize() {
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.mono > b.mono; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms_.size();) {
    Term acc = std::move(terms_[i]);
    std::size_t j = i + 1;
    for (; j < terms_.size() && terms_[j].mono == acc.mono; ++j) acc.coef += terms_[j].coef;
    if (acc.coef != 0) terms_[out++] = std::move(acc);
    i = j;
  }
  terms_.resize(out);
}

void MPoly::check_ring(const MPoly& other) const {
  if (!same_ring(ring_, other.ring_)) throw AlgebraError("ring mismatch");
}

Rat MPoly::constant_value() const {
  if (!is_constant()) throw AlgebraError("constant_value: polynomial is not constant");
  return terms_.empty() ? Rat(0) : terms_[0].coef;
}

const Term& MPoly::leading() const {
  if (terms_.empty()) throw AlgebraError("leading term of zero polynomial");
  return terms_.front();
}

unsigned MPoly::total_degree() const { return terms_.empty() ? 0 : terms_.front().mono.degree(); }

unsigned MPoly::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max<unsigned>(d, t.mono[var]);
  return d;
}

unsigned MPoly::t_degree() const {
  unsigned d = 0;
  for (const auto& t : terms_) {
    unsigned s = 0;
    for (std::size_t v = 0; v < ring_->num_t(); ++v) s += t.mono[v];
    d = std::max(d, s);
  }
  return d;
}

unsigned MPoly::pair_degree(std::size_t pair) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max<unsigned>(d, t.mono[ring_->x_index(pair)] + t.mono[ring_->y_index(pair)]);
  return d;
}

bool MPoly::only_t_vars() const {
  for (const auto& t : terms_)
    for (std::size_t v = ring_->num_t(); v < ring_->num_vars(); ++v)
      if (t.mono[v]) return false;
  return true;
}

bool MPoly::only_pair_vars() const {
  for (const auto& t : terms_)
    for (std::size_t v = 0; v < ring_->num_t(); ++v)
      if (t.mono[v]) return false;
  return true;
}

MPoly MPoly::operator-() const {
  MPoly r(*this);
  for (auto& t : r.terms_) t.coef = -t.coef;
  return r;
}

namespace {

template <class Combine>
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, Combine sign) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].mono > b[j].mono)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].mono > a[i].mono) {
      out.push_back({b[j].mono, sign(b[j].coef)});
      ++j;
    } else {
      Rat c = a[i].coef + sign(b[j].coef);
      if (c != 0) out.push_back({a[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

MPoly& MPoly::operator+=(const MPoly& other) {
  check_ring(other);
  terms_ = merge_terms(terms_, other.terms_, [](const Rat& c) { return c; });
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& other) {
  check_ring(other);
  terms_ = merge_terms(terms_, other.terms_, [](const Rat& c) { return Rat(-c); });
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  a.check_ring(b);
  MPoly r(a.ring_);
  if (a.is_zero() || b.is_zero()) return r;
  if (a.terms_.size() * b.terms_.size() <= (1u << 16)) {
    r.terms_.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) r.terms_.push_back({s.mono * t.mono, s.coef * t.coef});
    r.canonicalize();
    return r;
  }
  std::map<Monomial, Rat, std::greater<>> acc;
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) acc[s.mono * t.mono] += s.coef * t.coef;
  for (auto& [m, c] : acc)
    if (c != 0) r.terms_.push_back({m, std::move(c)});
  return r;
}

MPoly& MPoly::operator*=(const MPoly& other) { return *this = *this * other; }

MPoly& MPoly::operator*=(const Rat& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.coef *= c;
  }
  return *this;
}

bool MPoly::operator==(const MPoly& other) const {
  if (!same_ring(ring_, other.ring_) || terms_.size() != other.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].mono != other.terms_[i].mono || terms_[i].coef != other.terms_[i].coef) return false;
  return true;
}

MPoly MPoly::pow(unsigned e) const {
  MPoly result(ring_, Rat(1));
  MPoly base(*this);
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

MPoly MPoly::derivative(std::size_t var) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    const unsigned e = t.mono[var];
    if (e == 0) continue;
    Monomial m = t.mono;
    m.set(var, e - 1);
    out.push_back({m, t.coef * e});
  }
  return MPoly(ring_, std::move(out));
}

std::vector<MPoly> MPoly::coefficients_in(std::size_t var) const {
  std::vector<std::vector<Term>> buckets(degree_in(var) + 1);
  for (const auto& t : terms_) {
    Monomial m = t.mono;
    const unsigned e = m[var];
    m.set(var, 0);
    buckets[e].push_back({m, t.coef});
  }
  std::vector<MPoly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.emplace_back(ring_, std::move(b));
  return out;
}

MPoly MPoly::t_coefficient(const Monomial& t_mono) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    bool match = true;
    for (std::size_t v = 0; v < ring_->num_t() && match; ++v) match = t.mono[v] == t_mono[v];
    if (!match) continue;
    Monomial m = t.mono;
    for (std::size_t v = 0; v < ring_->num_t(); ++v) m.set(v, 0);
    out.push_back({m, t.coef});
  }
  return MPoly(ring_, std::move(out));
}

std::optional<MPoly> MPoly::try_divide(const MPoly& divisor) const {
  check_ring(divisor);
  if (divisor.is_zero()) throw AlgebraError("division by zero polynomial");
  MPoly q(ring_);
  if (is_zero()) return q;
  if (divisor.is_constant()) {
    q = *this;
    q *= Rat(1) / divisor.terms_[0].coef;
    return q;
  }
  const Term& lead = divisor.terms_.front();
  // Quick degree rejection per variable.
  for (std::size_t v = 0; v < ring_->num_vars(); ++v)
    if (divisor.degree_in(v) > degree_in(v)) return std::nullopt;
  std::map<Monomial, Rat, std::greater<>> rem;
  for (const auto& t : terms_) rem.emplace(t.mono, t.coef);
  std::vector<Term> quot;
  while (!rem.empty()) {
    auto it = rem.begin();
    if (!lead.mono.divides(it->first)) return std::nullopt;
    const Monomial qm = lead.mono.quotient_of(it->first);
    const Rat qc = it->second / lead.coef;
    rem.erase(it);
    for (std::size_t k = 1; k < divisor.terms_.size(); ++k) {
      const Monomial m = divisor.terms_[k].mono * qm;
      auto [pos, inserted] = rem.try_emplace(m, 0);
      pos->second -= qc * divisor.terms_[k].coef;
      if (pos->second == 0) rem.erase(pos);
    }
    quot.push_back({qm, qc});
  }
  q.terms_ = std::move(quot);  // produced in decreasing order
  return q;
}

MPoly MPoly::divide_exact(const MPoly& divisor) const {
  auto q = try_divide(divisor);
  if (!q) throw AlgebraError("inexact polynomial division");
  return std::move(*q);
}

Rat MPoly::unit_to_normalized() const {
  if (terms_.empty()) return Rat(1);
  Integer den_lcm = 1, num_gcd = 0;
  for (const auto& t : terms_) {
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coef.get_den_mpz_t());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coef.get_num_mpz_t());
  }
  Rat unit(num_gcd, den_lcm);
  unit.canonicalize();
  if (terms_.front().coef < 0) unit = -unit;
  return unit;
}

MPoly MPoly::normalized() const {
  MPoly r(*this);
  if (r.is_zero()) return r;
  r *= Rat(1) / unit_to_normalized();
  return r;
}

MPoly MPoly::monic() const {
  MPoly r(*this);
  if (!r.is_zero()) r *= Rat(1) / terms_.front().coef;
  return r;
}

MultiDeg MPoly::multidegree() const {
  MultiDeg md;
  md.pair_degs.assign(ring_->num_pairs(), 0);
  md.t_deg = 0;
  bool first = true;
  for (const auto& t : terms_) {
    int td = 0;
    for (std::size_t v = 0; v < ring_->num_t(); ++v) td += t.mono[v];
    if (first) {
      md.t_deg = td;
    } else if (md.t_deg && *md.t_deg != td) {
      md.t_deg.reset();
    }
    for (std::size_t i = 0; i < ring_->num_pairs(); ++i) {
      const int pd = t.mono[ring_->x_index(i)] + t.mono[ring_->y_index(i)];
      if (first) {
        md.pair_degs[i] = pd;
      } else if (md.pair_degs[i] && *md.pair_degs[i] != pd) {
        md.pair_degs[i].reset();
      }
    }
    first = false;
  }
  return md;
}

std::string MPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rat c = t.coef;
    const bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    std::string mono;
    for (std::size_t v = 0; v < ring_->num_vars(); ++v) {
      const unsigned e = t.mono[v];
      if (!e) continue;
      if (!mono.empty()) mono += '*';
      mono += ring_->name(v);
      if (e > 1) mono += '^' + std::to_string(e);
    }
    if (mono.empty()) {
      os << c.get_str();
    } else if (c == 1) {
      os << mono;
    } else {
      os << c.get_str() << '*' << mono;
    }
  }
  return os.str();
}

bool equal_up_to_unit(const MPoly& a, const MPoly& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return a.normalized() == b.normalized();
}

// ---------------------------------------------------------------- evaluation

MPoly evaluate(const MPoly& p, const Assignment& assignment) {
  const Ring& ring = p.ring();
  for (const auto& [var, value] : assignment) {
    if (var >= ring->num_vars()) throw std::out_of_range("evaluate: variable index");
    if (const auto* q = std::get_if<MPoly>(&value); q && !same_ring(q->ring(), ring)) throw AlgebraError("evaluate: ring mismatch");
  }
  // Powers of substituted values, built lazily.
  std::map<std::size_t, std::vector<MPoly>> powers;
  auto power_of = [&](std::size_t var, unsigned e) -> const MPoly& {
    auto& list = powers[var];
    if (list.empty()) {
      const auto& v = assignment.at(var);
      list.push_back(MPoly(ring, Rat(1)));
      list.push_back(std::holds_alternative<Rat>(v) ? MPoly(ring, std::get<Rat>(v)) : std::get<MPoly>(v));
    }
    while (list.size() <= e) list.push_back(list.back() * list[1]);
    return list[e];
  };
  MPoly out(ring);
  std::vector<Term> plain;
  for (const auto& t : p.terms()) {
    Monomial rest = t.mono;
    MPoly factor(ring, t.coef);
    bool substituted = false;
    for (const auto& [var, value] : assignment) {
      const unsigned e = t.mono[var];
      if (!e) continue;
      rest.set(var, 0);
      substituted = true;
      factor *= power_of(var, e);
    }
    if (!substituted) {
      plain.push_back(t);
      continue;
    }
    out += factor * MPoly::monomial(ring, rest);
  }
  out += MPoly(ring, std::move(plain));
  return out;
}

Rat evaluate_at(const MPoly& p, std::span<const Rat> values) {
  const Ring& ring = p.ring();
  if (values.size() != ring->num_vars()) throw std::invalid_argument("evaluate_at: wrong number of values");
  std::vector<std::vector<Rat>> powers(values.size());
  Rat sum = 0;
  for (const auto& t : p.terms()) {
    Rat term = t.coef;
    for (std::size_t v = 0; v < values.size() && term != 0; ++v) {
      const unsigned e = t.mono[v];
      if (!e) continue;
      auto& pw = powers[v];
      if (pw.empty()) pw.push_back(Rat(1));
      while (pw.size() <= e) pw.push_back(pw.back() * values[v]);
      term *= pw[e];
    }
    sum += term;
  }
  return sum;
}

MPoly change_ring(const MPoly& p, const Ring& target) {
  const Ring& src = p.ring();
  std::vector<std::optional<std::size_t>> map(src->num_vars());
  for (std::size_t v = 0; v < src->num_vars(); ++v) map[v] = target->index_of(src->name(v));
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    Monomial m;
    for (std::size_t v = 0; v < src->num_vars(); ++v) {
      if (!t.mono[v]) continue;
      if (!map[v]) throw AlgebraError("change_ring: variable '" + src->name(v) + "' missing from target ring");
      m.set(*map[v], m[*map[v]] + t.mono[v]);
    }
    out.push_back({m, t.coef});
  }
  return MPoly(target, std::move(out));
}

// ---------------------------------------------------------------- parser

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Ring& ring) : text_(text), ring_(ring) {}

  MPoly parse() {
    MPoly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("parse error at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  MPoly expr() {
    MPoly acc = term();
    while (true) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  MPoly term() {
    MPoly acc = unary();
    while (accept('*')) acc *= unary();
    return acc;
  }

  MPoly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  MPoly power() {
    MPoly base = primary();
    if (accept('^')) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '-') fail("negative exponent");
      const Integer e = integer_literal();
      if (e > 10000) fail("exponent too large");
      return base.pow(static_cast<unsigned>(e.get_ui()));
    }
    return base;
  }

  Integer integer_literal() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  MPoly primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      MPoly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Rat value(integer_literal());
      if (accept('/')) {
        const Integer den = integer_literal();
        if (den == 0) fail("zero denominator");
        value /= Rat(den);
      }
      return MPoly(ring_, value);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      const auto idx = ring_->index_of(name);
      if (!idx) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      return MPoly::variable(ring_, *idx);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const Ring& ring_;
  std::size_t pos_ = 0;
};

}  // namespace

MPoly parse_poly(std::string_view text, const Ring& ring) { return Parser(text, ring).parse(); }

}  // namespace kresolve
