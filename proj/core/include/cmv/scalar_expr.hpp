#pragma once

#include "cmv/polynomial.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cmv {

struct Coord {
  std::string name;
  std::size_t index = 0;
};

/// Ordered coordinate names of a chart.
class Chart {
 public:
  Chart() = default;
  /// Throws ParseError on duplicate names or more than kMaxCoords entries.
  explicit Chart(std::vector<std::string> names);

  std::size_t dim() const { return coords_.size(); }
  const std::vector<Coord>& coords() const { return coords_; }
  const Coord& operator[](std::size_t i) const { return coords_[i]; }
  std::optional<std::size_t> find(std::string_view name) const;
  std::vector<std::string> names() const;

 private:
  std::vector<Coord> coords_;
};

/// Values for variable slots: coordinates and, when present, the trig
/// generators sin/cos of each coordinate.
using ExactPoint = std::map<std::size_t, mpq_class>;

/// A rational function over Q in the chart coordinates, optionally extended by
/// sin/cos generators. Always canonical: numerator and denominator coprime,
/// denominator monic, every cos exponent at most 1.
class ScalarExpr {
 public:
  ScalarExpr() : den_(1) {}
  ScalarExpr(long v) : num_(mpq_class(v)), den_(1) {}            // NOLINT
  ScalarExpr(const mpq_class& v) : num_(v), den_(1) {}           // NOLINT

  static ScalarExpr coordinate(std::size_t index);
  static ScalarExpr sine(std::size_t index);
  static ScalarExpr cosine(std::size_t index);
  /// Canonicalizes num/den. Throws DivisionByZeroFunction for a zero den.
  static ScalarExpr fraction(const Polynomial& num, const Polynomial& den);

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  /// No variables at all in the canonical form.
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  /// Every partial derivative vanishes (robust under the trig relation).
  bool is_coordinate_free(std::size_t dim) const;
  std::optional<mpq_class> constant_value() const;
  bool uses_trig() const { return num_.uses_trig() || den_.uses_trig(); }

  ScalarExpr diff(std::size_t coord) const;

  /// Exact substitution. Throws DomainPole when the denominator vanishes and
  /// std::invalid_argument when a needed slot has no value.
  mpq_class eval(const ExactPoint& point) const;
  /// Floating evaluation at coordinate values; sin/cos are computed.
  double eval_double(std::span<const double> coords) const;

  /// Canonical text: expanded numerator "/" expanded denominator.
  std::string render(std::span<const std::string> names) const;
  std::string render(const Chart& chart) const;

  ScalarExpr operator-() const;
  ScalarExpr& operator+=(const ScalarExpr& rhs);
  ScalarExpr& operator-=(const ScalarExpr& rhs);
  ScalarExpr& operator*=(const ScalarExpr& rhs);
  ScalarExpr& operator/=(const ScalarExpr& rhs);
  friend ScalarExpr operator+(ScalarExpr a, const ScalarExpr& b) { return a += b; }
  friend ScalarExpr operator-(ScalarExpr a, const ScalarExpr& b) { return a -= b; }
  friend ScalarExpr operator*(ScalarExpr a, const ScalarExpr& b) { return a *= b; }
  friend ScalarExpr operator/(ScalarExpr a, const ScalarExpr& b) { return a /= b; }

  /// Equality as functions.
  friend bool operator==(const ScalarExpr& a, const ScalarExpr& b);
  /// Identical canonical forms.
  bool same_form(const ScalarExpr& other) const {
    return num_ == other.num_ && den_ == other.den_;
  }

 private:
  ScalarExpr(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {}
  void canonicalize();

  Polynomial num_;
  Polynomial den_;
};

std::string render_polynomial(const Polynomial& p, std::span<const std::string> names);

/// Distinct denominator factors' least common multiple, reduced to its
/// square-free part when no trig generators occur.
Polynomial combine_locus(const Polynomial& acc, const Polynomial& factor);
Polynomial squarefree_part(const Polynomial& p, std::size_t dim);

}  // namespace cmv
