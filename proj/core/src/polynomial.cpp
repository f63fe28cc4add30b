#include "cmv/polynomial.hpp"

#include <algorithm>
#include <cassert>
#include <random>
#include <stdexcept>
#include <utility>

namespace cmv {

// ---------------------------------------------------------------- Monomial

Monomial Monomial::variable(std::size_t slot, unsigned power) {
  Monomial m;
  if (power == 0) return m;
  m.exps_.assign(slot + 1, 0);
  m.exps_[slot] = static_cast<std::uint16_t>(power);
  m.degree_ = power;
  return m;
}

void Monomial::trim() {
  while (!exps_.empty() && exps_.back() == 0) exps_.pop_back();
}

bool Monomial::divides(const Monomial& other) const {
  if (exps_.size() > other.exps_.size()) return false;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

Monomial Monomial::with_exponent(std::size_t slot, unsigned e) const {
  Monomial m = *this;
  if (slot >= m.exps_.size()) {
    if (e == 0) return m;
    m.exps_.resize(slot + 1, 0);
  }
  m.degree_ = m.degree_ - m.exps_[slot] + e;
  m.exps_[slot] = static_cast<std::uint16_t>(e);
  m.trim();
  return m;
}

Monomial Monomial::operator*(const Monomial& rhs) const {
  Monomial m;
  m.exps_.resize(std::max(exps_.size(), rhs.exps_.size()), 0);
  for (std::size_t i = 0; i < exps_.size(); ++i) m.exps_[i] += exps_[i];
  for (std::size_t i = 0; i < rhs.exps_.size(); ++i) m.exps_[i] += rhs.exps_[i];
  m.degree_ = degree_ + rhs.degree_;
  return m;
}

Monomial Monomial::operator/(const Monomial& rhs) const {
  assert(rhs.divides(*this));
  Monomial m = *this;
  for (std::size_t i = 0; i < rhs.exps_.size(); ++i) m.exps_[i] -= rhs.exps_[i];
  m.degree_ = degree_ - rhs.degree_;
  m.trim();
  return m;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  Monomial m;
  const std::size_t n = std::min(a.exps_.size(), b.exps_.size());
  m.exps_.resize(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    m.exps_[i] = std::min(a.exps_[i], b.exps_[i]);
    m.degree_ += m.exps_[i];
  }
  m.trim();
  return m;
}

int compare_grlex(const Monomial& a, const Monomial& b) {
  if (a.degree_ != b.degree_) return a.degree_ < b.degree_ ? -1 : 1;
  const std::size_t n = std::max(a.exps_.size(), b.exps_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const unsigned ea = a.exponent(i);
    const unsigned eb = b.exponent(i);
    if (ea != eb) return ea < eb ? -1 : 1;
  }
  return 0;
}

// -------------------------------------------------------------- Polynomial

Polynomial::Polynomial(const mpq_class& c) {
  if (c != 0) terms_.emplace(Monomial{}, c);
}

Polynomial Polynomial::term(const Monomial& m, const mpq_class& c) {
  Polynomial p;
  if (c != 0) p.terms_.emplace(m, c);
  return p;
}

void Polynomial::add_term(const Monomial& m, const mpq_class& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

mpq_class Polynomial::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? mpq_class(0) : it->second;
}

unsigned Polynomial::degree_in(std::size_t slot) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(slot));
  return d;
}

Polynomial Polynomial::coefficient_in(std::size_t slot, unsigned d) const {
  Polynomial p;
  for (const auto& [m, c] : terms_) {
    if (m.exponent(slot) == d) p.terms_.emplace(m.with_exponent(slot, 0), c);
  }
  return p;
}

std::size_t Polynomial::width() const {
  std::size_t w = 0;
  for (const auto& [m, c] : terms_) w = std::max(w, m.width());
  return w;
}

bool Polynomial::uses_slot(std::size_t slot) const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [slot](const auto& t) { return t.first.exponent(slot) != 0; });
}

bool Polynomial::uses_trig() const { return width() > kMaxCoords; }

Polynomial Polynomial::derivative(std::size_t slot) const {
  Polynomial p;
  for (const auto& [m, c] : terms_) {
    const unsigned e = m.exponent(slot);
    if (e == 0) continue;
    p.add_term(m.with_exponent(slot, e - 1), c * e);
  }
  return p;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  const mpq_class lc = leading_coefficient();
  if (lc == 1) return *this;
  return scaled(1 / lc);
}

Polynomial Polynomial::scaled(const mpq_class& c) const {
  if (c == 0) return {};
  Polynomial p = *this;
  for (auto& [m, coeff] : p.terms_) coeff *= c;
  return p;
}

Polynomial Polynomial::times(const Monomial& mono) const {
  Polynomial p;
  for (const auto& [m, c] : terms_) p.terms_.emplace_hint(p.terms_.end(), m * mono, c);
  return p;
}

Polynomial Polynomial::operator-() const { return scaled(-1); }

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial p;
  if (a.is_zero() || b.is_zero()) return p;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) p.add_term(ma * mb, ca * cb);
  }
  return p;
}

// --------------------------------------------------------------- algorithms

std::optional<Polynomial> exact_divide(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw std::invalid_argument("exact_divide: zero divisor");
  if (a.is_zero()) return Polynomial{};
  if (b.is_constant()) return a.scaled(1 / b.leading_coefficient());
  Polynomial quotient;
  Polynomial rest = a;
  const Monomial& lb = b.leading_monomial();
  const mpq_class& cb = b.leading_coefficient();
  while (!rest.is_zero()) {
    const Monomial& lr = rest.leading_monomial();
    if (!lb.divides(lr)) return std::nullopt;
    const Polynomial q = Polynomial::term(lr / lb, rest.leading_coefficient() / cb);
    quotient += q;
    rest -= q * b;
  }
  return quotient;
}

namespace {

Polynomial must_divide(const Polynomial& a, const Polynomial& b) {
  auto q = exact_divide(a, b);
  if (!q) throw std::logic_error("polynomial gcd: inexact division");
  return *std::move(q);
}

Polynomial content_in(const Polynomial& p, std::size_t slot) {
  Polynomial g;
  for (unsigned d = p.degree_in(slot) + 1; d-- > 0;) {
    Polynomial c = p.coefficient_in(slot, d);
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant()) return Polynomial(1);
  }
  return g;
}

// Scales p to integer coefficients with no common factor, keeping PRS
// coefficients from growing.
Polynomial integer_primitive(const Polynomial& p) {
  mpz_class den = 1, num = 0;
  for (const auto& [m, c] : p.terms()) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num_mpz_t());
  }
  if (num == 0) return p;
  mpq_class s(den, num);
  s.canonicalize();
  return p.scaled(s);
}

Polynomial primitive_part(const Polynomial& p, std::size_t slot) {
  const Polynomial c = content_in(p, slot);
  return integer_primitive(c.is_constant() ? p : must_divide(p, c));
}

Polynomial leading_coefficient_in(const Polynomial& p, std::size_t slot) {
  return p.coefficient_in(slot, p.degree_in(slot));
}

Polynomial power(const Polynomial& p, unsigned e) {
  Polynomial out(1);
  for (unsigned k = 0; k < e; ++k) out = out * p;
  return out;
}

// lc(b)^(deg a - deg b + 1) a mod b, viewed as univariate in slot.
Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, std::size_t slot) {
  const unsigned db = b.degree_in(slot);
  const Polynomial lb = leading_coefficient_in(b, slot);
  Polynomial r = a;
  unsigned steps = a.degree_in(slot) - db + 1;
  while (!r.is_zero()) {
    const unsigned dr = r.degree_in(slot);
    if (dr < db) break;
    const Polynomial lr = leading_coefficient_in(r, slot);
    r = lb * r - (lr * b).times(Monomial::variable(slot, dr - db));
    --steps;
  }
  return steps == 0 ? r : r * power(lb, steps);
}

using Univariate = std::vector<mpq_class>;

void trim(Univariate& u) {
  while (!u.empty() && u.back() == 0) u.pop_back();
}

// Image of p in Q[slot] after substituting values for every other slot.
Univariate specialize(const Polynomial& p, std::size_t slot, const std::vector<mpq_class>& values) {
  Univariate u(p.degree_in(slot) + 1);
  for (const auto& [mono, coeff] : p.terms()) {
    mpq_class t = coeff;
    for (std::size_t s = 0; s < mono.width(); ++s) {
      if (s == slot) continue;
      for (unsigned k = mono.exponent(s); k > 0; --k) t *= values[s];
    }
    u[mono.exponent(slot)] += t;
  }
  trim(u);
  return u;
}

std::size_t univariate_gcd_degree(Univariate a, Univariate b) {
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    while (a.size() >= b.size()) {
      const mpq_class f = a.back() / b.back();
      const std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
      a.pop_back();
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a.empty() ? 0 : a.size() - 1;
}

// True when a and b are certainly coprime: for every shared slot some
// specialization with nonvanishing leading coefficients has coprime images,
// which bounds the degree of the gcd in that slot by zero.
bool coprime_by_specialization(const Polynomial& a, const Polynomial& b) {
  const std::size_t width = std::max(a.width(), b.width());
  std::mt19937_64 gen(0x9e3779b97f4a7c15ULL);
  std::vector<mpq_class> values(width);
  for (std::size_t slot = 0; slot < width; ++slot) {
    const unsigned da = a.degree_in(slot), db = b.degree_in(slot);
    if (da == 0 || db == 0) continue;
    bool coprime = false;
    for (int attempt = 0; attempt < 3 && !coprime; ++attempt) {
      for (auto& v : values) v = static_cast<long>(gen() % 61) - 30;
      const Univariate ua = specialize(a, slot, values);
      const Univariate ub = specialize(b, slot, values);
      if (ua.size() != da + 1 || ub.size() != db + 1) continue;
      coprime = univariate_gcd_degree(ua, ub) == 0;
    }
    if (!coprime) return false;
  }
  return true;
}

Polynomial monomial_gcd(const Monomial& m, const Polynomial& other) {
  Monomial g = m;
  for (const auto& [mono, c] : other.terms()) {
    g = Monomial::gcd(g, mono);
    if (g.is_one()) break;
  }
  return Polynomial::term(g);
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Polynomial(1);
  if (a.is_monomial()) return monomial_gcd(a.leading_monomial(), b);
  if (b.is_monomial()) return monomial_gcd(b.leading_monomial(), a);
  if (a.monic() == b.monic()) return a.monic();
  if (coprime_by_specialization(a, b)) return Polynomial(1);

  const std::size_t slot = std::max(a.width(), b.width()) - 1;
  if (!a.uses_slot(slot)) return gcd(a, content_in(b, slot));
  if (!b.uses_slot(slot)) return gcd(content_in(a, slot), b);

  const Polynomial ca = content_in(a, slot);
  const Polynomial cb = content_in(b, slot);
  const Polynomial content = gcd(ca, cb);

  Polynomial pa = integer_primitive(ca.is_constant() ? a : must_divide(a, ca));
  Polynomial pb = integer_primitive(cb.is_constant() ? b : must_divide(b, cb));
  if (pa.degree_in(slot) < pb.degree_in(slot)) std::swap(pa, pb);

  // Subresultant remainder sequence.
  Polynomial g(1), h(1);
  while (true) {
    const unsigned d = pa.degree_in(slot) - pb.degree_in(slot);
    Polynomial r = pseudo_remainder(pa, pb, slot);
    if (r.is_zero()) break;
    if (r.degree_in(slot) == 0) {
      pb = Polynomial(1);
      break;
    }
    pa = std::move(pb);
    pb = must_divide(r, g * power(h, d));
    g = leading_coefficient_in(pa, slot);
    h = d == 0 ? h : must_divide(power(g, d), power(h, d - 1));
  }
  return (content * primitive_part(pb, slot)).monic();
}

Polynomial reduce_pythagorean(const Polynomial& p) {
  if (!p.uses_trig()) return p;
  Polynomial current = p;
  bool changed = true;
  while (changed) {
    changed = false;
    Polynomial next;
    for (const auto& [m, c] : current.terms()) {
      std::size_t hit = 0;
      bool found = false;
      for (std::size_t s = kMaxCoords + 1; s < m.width(); s += 2) {
        if (m.exponent(s) >= 2) {
          hit = s;
          found = true;
          break;
        }
      }
      if (!found) {
        next += Polynomial::term(m, c);
        continue;
      }
      changed = true;
      const Monomial base = m.with_exponent(hit, m.exponent(hit) - 2);
      const std::size_t sin_s = hit - 1;
      next += Polynomial::term(base, c);
      next -= Polynomial::term(base * Monomial::variable(sin_s, 2), c);
    }
    current = std::move(next);
  }
  return current;
}

}  // namespace cmv
