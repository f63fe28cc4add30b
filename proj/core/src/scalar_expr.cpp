#include "cmv/scalar_expr.hpp"

#include "cmv/errors.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cmv {

Chart::Chart(std::vector<std::string> names) {
  if (names.size() > kMaxCoords) {
    throw ParseError("at most " + std::to_string(kMaxCoords) + " coordinates are supported");
  }
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (find(names[i])) throw ParseError("repeated coordinate name '" + names[i] + "'");
    coords_.push_back(Coord{names[i], i});
  }
}

std::optional<std::size_t> Chart::find(std::string_view name) const {
  for (const auto& c : coords_) {
    if (c.name == name) return c.index;
  }
  return std::nullopt;
}

std::vector<std::string> Chart::names() const {
  std::vector<std::string> out;
  out.reserve(coords_.size());
  for (const auto& c : coords_) out.push_back(c.name);
  return out;
}

// -------------------------------------------------------------- ScalarExpr

ScalarExpr ScalarExpr::coordinate(std::size_t index) {
  return ScalarExpr(Polynomial::variable(index), Polynomial(1));
}

ScalarExpr ScalarExpr::sine(std::size_t index) {
  return ScalarExpr(Polynomial::variable(sin_slot(index)), Polynomial(1));
}

ScalarExpr ScalarExpr::cosine(std::size_t index) {
  return ScalarExpr(Polynomial::variable(cos_slot(index)), Polynomial(1));
}

ScalarExpr ScalarExpr::fraction(const Polynomial& num, const Polynomial& den) {
  ScalarExpr e(num, den);
  e.canonicalize();
  return e;
}

void ScalarExpr::canonicalize() {
  num_ = reduce_pythagorean(num_);
  den_ = reduce_pythagorean(den_);
  if (den_.is_zero()) throw DivisionByZeroFunction();
  if (num_.is_zero()) {
    den_ = Polynomial(1);
    return;
  }
  if (!den_.is_constant()) {
    const Polynomial g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = *exact_divide(num_, g);
      den_ = *exact_divide(den_, g);
    }
  }
  const mpq_class lc = den_.leading_coefficient();
  if (lc != 1) {
    num_ = num_.scaled(1 / lc);
    den_ = den_.scaled(1 / lc);
  }
}

bool ScalarExpr::is_coordinate_free(std::size_t dim) const {
  if (is_constant()) return true;
  for (std::size_t i = 0; i < dim; ++i) {
    if (!diff(i).is_zero()) return false;
  }
  return true;
}

std::optional<mpq_class> ScalarExpr::constant_value() const {
  if (!is_constant()) return std::nullopt;
  return num_.constant_term() / den_.constant_term();
}

namespace {

Polynomial total_partial(const Polynomial& p, std::size_t coord) {
  Polynomial d = p.derivative(coord);
  if (p.uses_trig()) {
    const std::size_t s = sin_slot(coord);
    const std::size_t c = cos_slot(coord);
    d += p.derivative(s) * Polynomial::variable(c);
    d -= p.derivative(c) * Polynomial::variable(s);
  }
  return d;
}

}  // namespace

ScalarExpr ScalarExpr::diff(std::size_t coord) const {
  const Polynomial dn = total_partial(num_, coord);
  if (den_.is_constant()) return fraction(dn, den_);
  const Polynomial dd = total_partial(den_, coord);
  return fraction(dn * den_ - num_ * dd, den_ * den_);
}

mpq_class ScalarExpr::eval(const ExactPoint& point) const {
  auto lookup = [&point](std::size_t slot) -> mpq_class {
    auto it = point.find(slot);
    if (it == point.end()) {
      throw std::invalid_argument("no value supplied for variable slot " + std::to_string(slot));
    }
    return it->second;
  };
  const mpq_class d = den_.evaluate(lookup);
  if (d == 0) throw DomainPole("denominator vanishes at the evaluation point");
  return num_.evaluate(lookup) / d;
}

double ScalarExpr::eval_double(std::span<const double> coords) const {
  auto lookup = [coords](std::size_t slot) -> double {
    const std::size_t c = coord_of_slot(slot);
    if (c >= coords.size()) throw std::invalid_argument("coordinate index out of range");
    if (!is_trig_slot(slot)) return coords[c];
    return (slot - kMaxCoords) % 2 == 0 ? std::sin(coords[c]) : std::cos(coords[c]);
  };
  const double d = den_.evaluate_double(lookup);
  if (d == 0.0) throw DomainPole("denominator vanishes at the evaluation point");
  return num_.evaluate_double(lookup) / d;
}

ScalarExpr ScalarExpr::operator-() const { return ScalarExpr(-num_, den_); }

ScalarExpr& ScalarExpr::operator+=(const ScalarExpr& rhs) {
  if (rhs.is_zero()) return *this;
  if (is_zero()) return *this = rhs;
  if (den_ == rhs.den_) {
    num_ += rhs.num_;
  } else {
    num_ = num_ * rhs.den_ + rhs.num_ * den_;
    den_ = den_ * rhs.den_;
  }
  canonicalize();
  return *this;
}

ScalarExpr& ScalarExpr::operator-=(const ScalarExpr& rhs) { return *this += -rhs; }

ScalarExpr& ScalarExpr::operator*=(const ScalarExpr& rhs) {
  if (is_zero()) return *this;
  if (rhs.is_zero()) return *this = ScalarExpr();
  num_ = num_ * rhs.num_;
  den_ = den_ * rhs.den_;
  canonicalize();
  return *this;
}

ScalarExpr& ScalarExpr::operator/=(const ScalarExpr& rhs) {
  if (rhs.is_zero()) throw DivisionByZeroFunction();
  num_ = num_ * rhs.den_;
  den_ = den_ * rhs.num_;
  canonicalize();
  return *this;
}

bool operator==(const ScalarExpr& a, const ScalarExpr& b) {
  if (a.same_form(b)) return true;
  if (!a.uses_trig() && !b.uses_trig()) return false;
  return (a - b).is_zero();
}

// ---------------------------------------------------------------- rendering

namespace {

std::string slot_name(std::size_t slot, std::span<const std::string> names) {
  const std::size_t c = coord_of_slot(slot);
  const std::string base = c < names.size() ? names[c] : "x" + std::to_string(c);
  if (!is_trig_slot(slot)) return base;
  return ((slot - kMaxCoords) % 2 == 0 ? "sin(" : "cos(") + base + ")";
}

std::string render_monomial(const Monomial& m, std::span<const std::string> names) {
  std::string out;
  for (std::size_t s = 0; s < m.width(); ++s) {
    const unsigned e = m.exponent(s);
    if (e == 0) continue;
    if (!out.empty()) out += '*';
    out += slot_name(s, names);
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

bool single_factor(const Polynomial& p) {
  if (!p.is_monomial()) return false;
  const auto& [m, c] = *p.terms().begin();
  if (m.is_one()) return c.get_den() == 1;
  if (c != 1) return false;
  std::size_t factors = 0;
  for (std::size_t s = 0; s < m.width(); ++s) factors += m.exponent(s) != 0 ? 1 : 0;
  return factors == 1;
}

}  // namespace

std::string render_polynomial(const Polynomial& p, std::span<const std::string> names) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    const bool negative = c < 0;
    const mpq_class mag = abs(c);
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (m.is_one()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += render_monomial(m, names);
    } else {
      out += mag.get_str() + "*" + render_monomial(m, names);
    }
  }
  return out;
}

std::string ScalarExpr::render(std::span<const std::string> names) const {
  const std::string num = render_polynomial(num_, names);
  if (den_ == Polynomial(1)) return num;
  std::string out = num_.term_count() > 1 ? "(" + num + ")" : num;
  const std::string den = render_polynomial(den_, names);
  out += "/";
  out += single_factor(den_) ? den : "(" + den + ")";
  return out;
}

std::string ScalarExpr::render(const Chart& chart) const {
  const auto names = chart.names();
  return render(std::span<const std::string>(names));
}

// -------------------------------------------------------------------- locus

Polynomial combine_locus(const Polynomial& acc, const Polynomial& factor) {
  if (factor.is_constant()) return acc;
  if (acc.is_constant()) return factor.monic();
  const Polynomial g = gcd(acc, factor);
  return (*exact_divide(acc * factor, g)).monic();
}

Polynomial squarefree_part(const Polynomial& p, std::size_t dim) {
  if (p.is_constant() || p.uses_trig()) return p.monic();
  Polynomial g = p;
  for (std::size_t i = 0; i < dim && !g.is_constant(); ++i) g = gcd(g, p.derivative(i));
  if (g.is_constant()) return p.monic();
  return exact_divide(p, g)->monic();
}

}  // namespace cmv
