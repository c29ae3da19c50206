#pragma once

#include <vector>

#include "nabla/exactalg/field.hpp"

namespace nabla {

/// Dense univariate polynomial, coefficient i multiplies t^i. Only the pieces
/// needed for squarefree parts of minimal polynomials.
class Univariate {
 public:
  Univariate(FieldSpec field, std::vector<Rational> coeffs);

  const FieldSpec& field() const noexcept { return field_; }
  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
  const Rational& leading() const { return coeffs_.back(); }

  Univariate monic() const;
  Univariate derivative() const;
  Rational evaluate(const Rational& t) const;

  /// Quotient and remainder; divisor must be nonzero.
  std::pair<Univariate, Univariate> divmod(const Univariate& divisor) const;

  friend bool operator==(const Univariate& a, const Univariate& b) {
    return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void trim();

  FieldSpec field_;
  std::vector<Rational> coeffs_;
};

Univariate gcd(const Univariate& a, const Univariate& b);

/// f / gcd(f, f'), monic. Valid in characteristic 0, or in characteristic p when
/// deg f < p (every multiplicity is then below p).
Univariate squarefree_part(const Univariate& f);

/// Rational roots (QQ: rational root test; F_p: exhaustive for p <= 65536).
std::vector<Rational> rational_roots(const Univariate& f);

}  // namespace nabla
