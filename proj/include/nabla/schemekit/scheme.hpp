#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nabla/idealkit/ideal.hpp"

namespace nabla {

/// Affine scheme Spec(ring/ideal).
class SchemePresentation {
 public:
  explicit SchemePresentation(Ideal ideal, std::string label = "")
      : ideal_(std::move(ideal)), label_(std::move(label)) {}

  static SchemePresentation affine_space(FieldSpec field, std::vector<std::string> variables,
                                         std::string label = "");

  const RingPtr& ring() const noexcept { return ideal_.ring(); }
  const Ideal& ideal() const noexcept { return ideal_; }
  const std::string& label() const noexcept { return label_; }
  std::size_t num_variables() const { return ring()->size(); }

  bool is_empty() const { return ideal_.is_unit(); }
  long dimension() const { return krull_dim(ideal_); }

  SchemePresentation relabeled(std::string label) const { return SchemePresentation(ideal_, std::move(label)); }

 private:
  Ideal ideal_;
  std::string label_;
};

/// Spectrum of a local artinian algebra with residue field the ground field.
/// The basis is the grevlex standard-monomial basis, e_0 = 1.
class FatPoint {
 public:
  const SchemePresentation& presentation() const noexcept { return presentation_; }
  const RingPtr& ring() const noexcept { return presentation_.ring(); }
  std::size_t length() const noexcept { return basis_.size(); }
  const std::vector<Monomial>& basis() const noexcept { return basis_; }
  /// The unique closed point.
  const std::vector<Rational>& point() const noexcept { return point_; }

  /// Coordinates of e_i * e_j in the basis.
  const std::vector<Rational>& product(std::size_t i, std::size_t j) const {
    return table_[i * basis_.size() + j];
  }
  std::optional<std::size_t> index_of(const Monomial& m) const;
  /// Coordinates of the residue class of f.
  std::vector<Rational> coordinates(const Polynomial& f) const;

 private:
  friend FatPoint make_fatpoint(const SchemePresentation& presentation);

  explicit FatPoint(SchemePresentation p) : presentation_(std::move(p)) {}

  SchemePresentation presentation_;
  std::vector<Monomial> basis_;
  std::vector<std::vector<Rational>> table_;
  std::vector<Rational> point_;
};

/// Validates and tabulates. Errors: NotArtinian, NotLocal, ResidueNotGroundField.
FatPoint make_fatpoint(const SchemePresentation& presentation);

/// κ[x]/(x^n).
FatPoint line_point(FieldSpec field, unsigned n, const std::string& variable = "x");

/// Spec(A / M_o^n) with o translated to the origin. Errors: PointNotOnScheme.
FatPoint jet_at_point(const SchemePresentation& scheme, std::span<const Rational> point, unsigned n);

/// Fiber product over the ground field; clashing variable names of the second
/// factor get a "_2" suffix.
SchemePresentation scheme_product(const SchemePresentation& x, const SchemePresentation& y);

struct ReductionResult {
  SchemePresentation reduced;
  bool certified = false;
  std::string certificate;
};

ReductionResult reduce_scheme(const SchemePresentation& scheme);

/// Ideal of X plus the c×c minors of the Jacobian of its generators, c the
/// codimension for the asserted dimension d.
Ideal singular_locus(const SchemePresentation& scheme, long asserted_dim);

/// I : f^∞, via 1 - t f and elimination of t.
Ideal saturation(const Ideal& ideal, const Polynomial& f);

/// Pair (f, g) with f, g not in √I and f*g in √I, so V(I) is reducible over the
/// algebraic closure. f ranges over the variables, g over the saturation I : f^∞.
std::optional<std::pair<Polynomial, Polynomial>> reducibility_witness(const Ideal& ideal);

/// Jacobian of the given generators evaluated at a point, and its rank.
long jacobian_rank_at(const std::vector<Polynomial>& generators, std::span<const Rational> point);

}  // namespace nabla
