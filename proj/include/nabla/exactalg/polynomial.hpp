#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nabla/exactalg/field.hpp"
#include "nabla/exactalg/monomial.hpp"

namespace nabla {

struct Term {
  Monomial mono;
  Rational coeff;
};

/// Multivariate polynomial over a ring's ground field. Terms are kept sorted in
/// descending grevlex order with no zero coefficients, so structural equality is
/// mathematical equality.
class Polynomial {
 public:
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  static Polynomial zero(RingPtr ring) { return Polynomial(std::move(ring)); }
  static Polynomial constant(RingPtr ring, const Rational& c);
  static Polynomial variable(RingPtr ring, std::size_t index);
  static Polynomial monomial(RingPtr ring, Monomial m, const Rational& c);
  /// Combines duplicate monomials and normalizes coefficients into the field.
  static Polynomial from_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const noexcept { return ring_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept { return terms_.empty() || terms_.front().mono.is_one(); }
  /// -1 for the zero polynomial.
  long total_degree() const;
  Rational constant_term() const;

  const Term& leading_term(const MonomialOrder& order) const;
  Polynomial monic(const MonomialOrder& order) const;

  /// Variables with a positive exponent somewhere.
  std::vector<bool> support() const;
  bool uses_variable(std::size_t i) const;
  /// Homogeneous component of the given total degree.
  Polynomial homogeneous_part(unsigned degree) const;

  Polynomial operator-() const;
  Polynomial scaled(const Rational& c) const;
  Polynomial shifted(const Monomial& m) const;
  Polynomial pow(unsigned k) const;
  Polynomial derivative(std::size_t var) const;

  Rational evaluate(std::span<const Rational> point) const;

  /// Ring homomorphism image: variable i maps to images[i], all in `target`.
  Polynomial substitute(std::span<const Polynomial> images, const RingPtr& target) const;
  /// Renames variable i to target variable index_map[i].
  Polynomial rename(const RingPtr& target, std::span<const std::size_t> index_map) const;

  std::string to_string() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b);

 private:
  Polynomial(RingPtr ring, std::vector<Term> sorted_terms)
      : ring_(std::move(ring)), terms_(std::move(sorted_terms)) {}

  RingPtr ring_;
  std::vector<Term> terms_;
};

enum class CombineOp { Add, Sub, Mul };

/// Checked ring arithmetic: throws RingMismatch when rings differ.
Polynomial poly_combine(CombineOp op, const Polynomial& f, const Polynomial& g);

/// Substitution keyed by variable name; every variable of f's ring used by f must
/// have an image (MissingAssignment otherwise).
Polynomial substitute(const Polynomial& f, const std::map<std::string, Polynomial>& assignment,
                      const RingPtr& target);

namespace detail {

/// Merge helpers over term lists sorted descending by `order`.
std::vector<Term> add_terms(const FieldSpec& field, const MonomialOrder& order,
                            const std::vector<Term>& a, const std::vector<Term>& b);
/// a - c * m * b
std::vector<Term> sub_mul_terms(const FieldSpec& field, const MonomialOrder& order,
                                std::span<const Term> a, const Rational& c, const Monomial& m,
                                std::span<const Term> b);
void sort_terms(const MonomialOrder& order, std::vector<Term>& terms);

}  // namespace detail

}  // namespace nabla
