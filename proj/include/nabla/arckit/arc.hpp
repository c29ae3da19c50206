#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nabla/schemekit/scheme.hpp"

namespace nabla {

/// Arc space along a fat point. Variable a<i>_<j> is the coefficient of basis
/// element e_j in the image of base variable x_i (i is 1-based, j is 0-based).
struct ArcSpace {
  SchemePresentation presentation;
  SchemePresentation base;
  FatPoint point;

  std::size_t coordinate(std::size_t base_var, std::size_t basis_index) const {
    return base_var * point.length() + basis_index;
  }
};

std::string arc_variable_name(std::size_t base_var, std::size_t basis_index);

/// Equations are all basis coefficients of the generators of X evaluated at
/// x_i = sum_j a<i>_<j> e_j. Errors: FieldMismatch.
ArcSpace weil_restrict(const SchemePresentation& x, const FatPoint& point);

ArcSpace auto_arc(const FatPoint& point);

enum class SystemKind { LSystem, JetSystem };

/// Directed system of nested fat points; members are built on demand and shared
/// between copies.
class PointSystem {
 public:
  SystemKind kind() const noexcept { return kind_; }
  const FieldSpec& field() const noexcept { return field_; }
  /// Base scheme and point of a jet system.
  const std::optional<SchemePresentation>& jet_base() const noexcept { return base_; }
  const std::vector<Rational>& jet_point() const noexcept { return point_; }
  std::string describe() const;

  /// Member n >= 1.
  const FatPoint& member(unsigned n) const;

 private:
  friend PointSystem make_lsystem(FieldSpec field);
  friend PointSystem make_jet_system(const SchemePresentation& y, std::vector<Rational> point);

  struct Members;

  SystemKind kind_ = SystemKind::LSystem;
  FieldSpec field_ = FieldSpec::rationals();
  std::optional<SchemePresentation> base_;
  std::vector<Rational> point_;
  std::shared_ptr<Members> members_;
};

/// member(n) = κ[x]/(x^n).
PointSystem make_lsystem(FieldSpec field);
/// member(n) = J^n_o(Y). Errors: PointNotOnScheme.
PointSystem make_jet_system(const SchemePresentation& y, std::vector<Rational> point);

/// π: ∇_{member(m)}X → ∇_{member(n)}X. images[k] expresses target coordinate k
/// as a linear form in the source coordinates.
struct TruncationMap {
  ArcSpace source;
  ArcSpace target;
  std::vector<Polynomial> images;
  bool is_coordinate_projection = false;
};

/// Errors: InvalidArgument (n > m), BasisNotNested.
TruncationMap truncation_map(const SchemePresentation& x, const PointSystem& system, unsigned m,
                             unsigned n);

/// Zariski closure of the image, as an ideal on the target coordinates.
Ideal image_closure(const TruncationMap& map);

struct StabilizedTrace {
  unsigned level = 0;
  /// Arc space at the level; the trace ideal lives in its ring.
  ArcSpace arc;
  Ideal ideal;
  bool stabilized = false;
  unsigned probe_depth = 0;
};

StabilizedTrace stabilized_trace(const SchemePresentation& x, const PointSystem& system, unsigned n,
                                 unsigned max_depth);

/// dim ∇_n X - d ℓ(n). Errors: DimensionMismatch when d != dim X.
long defect(const SchemePresentation& x, const FatPoint& point, long d);

enum class Simplicity { Simple, NotSimple, Inconclusive };

struct SimplicityVerdict {
  Simplicity verdict = Simplicity::Inconclusive;
  /// Affine dimension when Simple.
  long affine_dim = -1;
  /// Certificate for NotSimple, reason for Inconclusive, description for Simple.
  std::string detail;
  std::optional<std::vector<Rational>> witness;
};

std::string to_string(Simplicity s);

SimplicityVerdict classify_simple(const FatPoint& point);

enum class StepEvidence { VerifiedTrivialProduct, DimensionConsistent, Inconsistent };

std::string to_string(StepEvidence e);

struct StabilityReport {
  std::vector<unsigned> levels;
  std::vector<std::size_t> lengths;
  std::vector<long> dims;
  std::vector<long> defects;
  /// evidence[k] is for the step levels[k] -> levels[k+1].
  std::vector<StepEvidence> evidence;
};

StabilityReport stability_probe(const SchemePresentation& x, const PointSystem& system, unsigned n_max);

}  // namespace nabla
