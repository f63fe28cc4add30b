#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace cmv {

// Variable slots: coordinates occupy [0, kMaxCoords), trig generators follow.
inline constexpr std::size_t kMaxCoords = 16;

constexpr std::size_t sin_slot(std::size_t coord) { return kMaxCoords + 2 * coord; }
constexpr std::size_t cos_slot(std::size_t coord) { return kMaxCoords + 2 * coord + 1; }
constexpr bool is_trig_slot(std::size_t slot) { return slot >= kMaxCoords; }
constexpr std::size_t coord_of_slot(std::size_t slot) {
  return slot < kMaxCoords ? slot : (slot - kMaxCoords) / 2;
}

/// Exponent vector over variable slots, trailing zeros trimmed.
class Monomial {
 public:
  Monomial() = default;

  static Monomial variable(std::size_t slot, unsigned power = 1);

  unsigned exponent(std::size_t slot) const {
    return slot < exps_.size() ? exps_[slot] : 0U;
  }
  unsigned degree() const { return degree_; }
  /// One past the highest slot with a nonzero exponent.
  std::size_t width() const { return exps_.size(); }
  bool is_one() const { return exps_.empty(); }

  bool divides(const Monomial& other) const;
  Monomial with_exponent(std::size_t slot, unsigned e) const;

  Monomial operator*(const Monomial& rhs) const;
  /// Requires divides(lhs).
  Monomial operator/(const Monomial& rhs) const;

  static Monomial gcd(const Monomial& a, const Monomial& b);

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.exps_ == b.exps_;
  }

  /// Graded lexicographic comparison; lower slots dominate within a degree.
  friend int compare_grlex(const Monomial& a, const Monomial& b);

 private:
  void trim();

  std::vector<std::uint16_t> exps_;
  unsigned degree_ = 0;
};

struct GrlexDescending {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return compare_grlex(a, b) > 0;
  }
};

/// Sparse multivariate polynomial with exact rational coefficients, terms kept
/// in descending graded-lex order.
class Polynomial {
 public:
  using Terms = std::map<Monomial, mpq_class, GrlexDescending>;

  Polynomial() = default;
  Polynomial(const mpq_class& c);  // NOLINT(google-explicit-constructor)
  Polynomial(long c) : Polynomial(mpq_class(c)) {}  // NOLINT

  static Polynomial term(const Monomial& m, const mpq_class& c = 1);
  static Polynomial variable(std::size_t slot) { return term(Monomial::variable(slot)); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
  }
  bool is_monomial() const { return terms_.size() == 1; }
  std::size_t term_count() const { return terms_.size(); }
  const Terms& terms() const { return terms_; }

  /// Requires !is_zero().
  const Monomial& leading_monomial() const { return terms_.begin()->first; }
  const mpq_class& leading_coefficient() const { return terms_.begin()->second; }
  mpq_class constant_term() const;

  unsigned degree_in(std::size_t slot) const;
  /// Coefficient of slot^d, as a polynomial free of that slot.
  Polynomial coefficient_in(std::size_t slot, unsigned d) const;
  /// Highest slot present plus one; 0 for constants.
  std::size_t width() const;
  bool uses_slot(std::size_t slot) const;
  bool uses_trig() const;

  /// Formal partial derivative in one slot.
  Polynomial derivative(std::size_t slot) const;
  /// Scaled so the leading coefficient is 1 (zero stays zero).
  Polynomial monic() const;
  Polynomial scaled(const mpq_class& c) const;
  Polynomial times(const Monomial& m) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.terms_ == b.terms_;
  }

  /// Substitutes exact values for every slot present.
  template <class Lookup>
  mpq_class evaluate(Lookup&& value_of_slot) const {
    mpq_class sum = 0;
    for (const auto& [mono, coeff] : terms_) {
      mpq_class prod = coeff;
      for (std::size_t s = 0; s < mono.width(); ++s) {
        unsigned e = mono.exponent(s);
        if (e == 0) continue;
        const mpq_class v = value_of_slot(s);
        for (unsigned k = 0; k < e; ++k) prod *= v;
      }
      sum += prod;
    }
    return sum;
  }

  template <class Lookup>
  double evaluate_double(Lookup&& value_of_slot) const {
    double sum = 0.0;
    for (const auto& [mono, coeff] : terms_) {
      double prod = coeff.get_d();
      for (std::size_t s = 0; s < mono.width(); ++s) {
        unsigned e = mono.exponent(s);
        if (e == 0) continue;
        const double v = value_of_slot(s);
        for (unsigned k = 0; k < e; ++k) prod *= v;
      }
      sum += prod;
    }
    return sum;
  }

 private:
  void add_term(const Monomial& m, const mpq_class& c);

  Terms terms_;
};

/// Returns a / b when b divides a exactly, otherwise nullopt. b must be nonzero.
std::optional<Polynomial> exact_divide(const Polynomial& a, const Polynomial& b);

/// Monic greatest common divisor over Q[x...]. gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// Rewrites cos_i^2 -> 1 - sin_i^2 until every cos exponent is at most 1.
Polynomial reduce_pythagorean(const Polynomial& p);

}  // namespace cmv
