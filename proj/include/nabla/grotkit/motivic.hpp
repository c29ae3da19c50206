#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nabla/arckit/arc.hpp"

namespace nabla {

using Integer = mpz_class;

/// One indecomposable factor of an atom: a canonical scheme, or a constructible
/// cone 𝔠_Z(F) with F ⊇ Z on the same coordinates. Canonical presentations live
/// in rings with variables v1..vk, every variable used by some generator.
struct ClassFactor {
  enum class Kind { Plain, Cone };

  Kind kind;
  SchemePresentation ambient;
  /// Meaningful for cones only.
  std::optional<SchemePresentation> sub;
  /// Canonical display, also the identity of the factor.
  std::string key;
  long dimension = 0;

  bool operator<(const ClassFactor& o) const { return key < o.key; }
  bool operator==(const ClassFactor& o) const { return key == o.key; }
};

/// Product of factors, sorted by key. No factors means the class of Spec κ.
struct ClassAtom {
  std::vector<ClassFactor> factors;

  std::string key() const;
  long dimension() const;
  bool is_unit() const { return factors.empty(); }
};

ClassAtom atom_product(const ClassAtom& a, const ClassAtom& b);

/// Finite Z-linear combination of atoms times powers of L. [∅] = 0 never
/// appears, affine-space factors are always folded into L powers.
class MotivicClass {
 public:
  MotivicClass() = default;

  static MotivicClass zero() { return {}; }
  static MotivicClass one() { return lefschetz_power(0); }
  static MotivicClass lefschetz_power(long e);
  static MotivicClass of_atom(ClassAtom atom, long l_exp = 0, Integer coeff = 1);

  struct Term {
    const ClassAtom* atom;
    long l_exp;
    Integer coeff;
  };
  /// Terms ordered by atom key, then by descending L exponent.
  std::vector<Term> terms() const;

  bool is_zero() const noexcept { return coeffs_.empty(); }
  std::string to_string() const;

  friend MotivicClass operator+(const MotivicClass& a, const MotivicClass& b);
  friend MotivicClass operator-(const MotivicClass& a, const MotivicClass& b);
  friend MotivicClass operator*(const MotivicClass& a, const MotivicClass& b);
  MotivicClass operator-() const;
  MotivicClass scale_l(long e) const;
  MotivicClass scaled(const Integer& c) const;

  friend bool operator==(const MotivicClass& a, const MotivicClass& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void add_term(const ClassAtom& atom, long l_exp, const Integer& c);

  std::map<std::string, ClassAtom> atoms_;
  // (atom key, L exponent) -> nonzero coefficient
  std::map<std::pair<std::string, long>, Integer> coeffs_;
};

MotivicClass class_of_scheme(const SchemePresentation& x);

/// Errors: ContainmentViolated when F's ideal does not contain Z's.
MotivicClass cone_class(const SchemePresentation& z, const SchemePresentation& f);

enum class CombineKind { Add, Sub, Mul, ScaleL };

/// ScaleL multiplies `a` by L^e and ignores `b`.
MotivicClass class_combine(CombineKind op, const MotivicClass& a, const MotivicClass& b, long e = 0);

/// nullopt stands for -∞ (the zero class).
std::optional<long> class_dim(const MotivicClass& a);

std::string dim_to_string(const std::optional<long>& d);

bool filtration_member(const MotivicClass& a, long m);

/// Plain [X] -> [X^red], cone 𝔠_Z(F) -> [F^red], L -> L. Errors: UncertifiedReduction.
MotivicClass sigma_reduce(const MotivicClass& a);

struct Measure {
  MotivicClass value;
  unsigned level = 0;
  std::size_t length = 0;
  StabilizedTrace trace;
};

/// [trace quotient at the member of length s] * L^{-s d}. Errors:
/// TraceNotStabilized, DimensionMismatch, InvalidArgument (no member of length s).
Measure measure_stable(const SchemePresentation& x, const PointSystem& system, std::size_t s, long d,
                       unsigned max_depth);

/// 𝔠_{∇_n X}((trace)^red) * L^{-d ℓ(n) - l}. Errors: TraceNotStabilized,
/// UncertifiedReduction, DimensionMismatch.
Measure measure_rational_lax(const SchemePresentation& x, const PointSystem& system, unsigned n, long d,
                             long l_value, unsigned max_depth);

}  // namespace nabla
