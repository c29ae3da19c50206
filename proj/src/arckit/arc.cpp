#include "nabla/arckit/arc.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "nabla/error.hpp"

namespace nabla {

std::string arc_variable_name(std::size_t base_var, std::size_t basis_index) {
  return "a" + std::to_string(base_var + 1) + "_" + std::to_string(basis_index);
}

namespace {

// Elements of κ[a] ⊗ B as coefficient vectors over the fat-point basis.
class ArcAlgebra {
 public:
  ArcAlgebra(RingPtr ring, const FatPoint& point) : ring_(std::move(ring)), point_(point) {}

  using Element = std::vector<Polynomial>;

  Element one() const {
    Element e(point_.length(), Polynomial::zero(ring_));
    e[0] = Polynomial::constant(ring_, Rational(1));
    return e;
  }

  Element multiply(const Element& u, const Element& v) const {
    const std::size_t l = point_.length();
    Element out(l, Polynomial::zero(ring_));
    for (std::size_t a = 0; a < l; ++a) {
      if (u[a].is_zero()) continue;
      for (std::size_t b = 0; b < l; ++b) {
        if (v[b].is_zero()) continue;
        const auto& row = point_.product(a, b);
        auto p = u[a] * v[b];
        for (std::size_t k = 0; k < l; ++k) {
          if (row[k] != 0) out[k] = out[k] + p.scaled(row[k]);
        }
      }
    }
    return out;
  }

 private:
  RingPtr ring_;
  const FatPoint& point_;
};

}  // namespace

ArcSpace weil_restrict(const SchemePresentation& x, const FatPoint& point) {
  if (x.ring()->field() != point.ring()->field()) {
    throw Error(ErrorCode::FieldMismatch, "arc space over a fat point of another field");
  }
  const std::size_t g = x.num_variables();
  const std::size_t l = point.length();
  std::vector<std::string> names;
  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t j = 0; j < l; ++j) names.push_back(arc_variable_name(i, j));
  }
  auto ring = make_ring(x.ring()->field(), names);
  ArcAlgebra alg(ring, point);

  std::vector<std::vector<ArcAlgebra::Element>> powers(g);
  for (std::size_t i = 0; i < g; ++i) {
    ArcAlgebra::Element xi;
    for (std::size_t j = 0; j < l; ++j) xi.push_back(Polynomial::variable(ring, i * l + j));
    powers[i].push_back(alg.one());
    powers[i].push_back(std::move(xi));
  }
  auto power = [&](std::size_t i, std::size_t e) -> const ArcAlgebra::Element& {
    while (powers[i].size() <= e) powers[i].push_back(alg.multiply(powers[i].back(), powers[i][1]));
    return powers[i][e];
  };

  std::vector<Polynomial> equations;
  for (const auto& f : x.ideal().generators()) {
    ArcAlgebra::Element acc(l, Polynomial::zero(ring));
    for (const auto& t : f.terms()) {
      auto term = alg.one();
      for (std::size_t i = 0; i < g; ++i) {
        if (t.mono[i] != 0) term = alg.multiply(term, power(i, t.mono[i]));
      }
      for (std::size_t k = 0; k < l; ++k) acc[k] = acc[k] + term[k].scaled(t.coeff);
    }
    for (auto& c : acc) {
      if (!c.is_zero()) equations.push_back(std::move(c));
    }
  }
  std::string label;
  if (!x.label().empty() || !point.presentation().label().empty()) {
    label = "nabla(" + point.presentation().label() + ", " + x.label() + ")";
  }
  return ArcSpace{SchemePresentation(Ideal(ring, std::move(equations)), label), x, point};
}

ArcSpace auto_arc(const FatPoint& point) { return weil_restrict(point.presentation(), point); }

struct PointSystem::Members {
  std::mutex mutex;
  std::map<unsigned, FatPoint> built;
};

namespace {

constexpr unsigned kNestingChecks = 3;

void assert_nesting(const PointSystem& s) {
  for (unsigned n = 1; n < kNestingChecks; ++n) {
    if (!ideal_contains(s.member(n).presentation().ideal(), s.member(n + 1).presentation().ideal())) {
      throw Error(ErrorCode::BasisNotNested, "point system members are not nested");
    }
  }
}

}  // namespace

const FatPoint& PointSystem::member(unsigned n) const {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "point system levels start at 1");
  std::lock_guard lock(members_->mutex);
  auto it = members_->built.find(n);
  if (it != members_->built.end()) return it->second;
  FatPoint fp = kind_ == SystemKind::LSystem ? line_point(field_, n) : jet_at_point(*base_, point_, n);
  return members_->built.emplace(n, std::move(fp)).first->second;
}

std::string PointSystem::describe() const {
  if (kind_ == SystemKind::LSystem) return "lsystem";
  std::ostringstream os;
  os << "jets(" << (base_->label().empty() ? "Y" : base_->label()) << ", [";
  for (std::size_t i = 0; i < point_.size(); ++i) os << (i ? ", " : "") << to_string(point_[i]);
  os << "])";
  return os.str();
}

PointSystem make_lsystem(FieldSpec field) {
  PointSystem s;
  s.kind_ = SystemKind::LSystem;
  s.field_ = field;
  s.members_ = std::make_shared<PointSystem::Members>();
  assert_nesting(s);
  return s;
}

PointSystem make_jet_system(const SchemePresentation& y, std::vector<Rational> point) {
  PointSystem s;
  s.kind_ = SystemKind::JetSystem;
  s.field_ = y.ring()->field();
  s.base_ = y;
  for (auto& c : point) c = s.field_.normalize(c);
  s.point_ = std::move(point);
  s.members_ = std::make_shared<PointSystem::Members>();
  s.member(1);  // validates the point
  assert_nesting(s);
  return s;
}

TruncationMap truncation_map(const SchemePresentation& x, const PointSystem& system, unsigned m,
                             unsigned n) {
  if (n < 1 || n > m) throw Error(ErrorCode::InvalidArgument, "truncation needs 1 <= n <= m");
  const auto& bm = system.member(m);
  const auto& bn = system.member(n);
  if (!ideal_contains(bn.presentation().ideal(), bm.presentation().ideal())) {
    throw Error(ErrorCode::BasisNotNested, "level " + std::to_string(n) + " is not a quotient of level " +
                                               std::to_string(m));
  }
  auto source = weil_restrict(x, bm);
  auto target = weil_restrict(x, bn);
  const std::size_t g = x.num_variables();
  const std::size_t lm = bm.length();
  const std::size_t ln = bn.length();
  const auto& sring = source.presentation.ring();
  // proj[j] = coordinates of e_j (level m) in the level-n basis
  std::vector<std::vector<Rational>> proj;
  for (const auto& mono : bm.basis()) proj.push_back(bn.coordinates(Polynomial::monomial(bm.ring(), mono, 1)));

  std::vector<Polynomial> images;
  bool coordinate = true;
  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t k = 0; k < ln; ++k) {
      auto img = Polynomial::zero(sring);
      for (std::size_t j = 0; j < lm; ++j) {
        if (proj[j][k] != 0) img = img + Polynomial::variable(sring, i * lm + j).scaled(proj[j][k]);
      }
      if (img.terms().size() != 1 || img.terms().front().coeff != 1) coordinate = false;
      images.push_back(std::move(img));
    }
  }
  // Arc equations at level n pull back into the level-m ideal.
  for (const auto& h : target.presentation.ideal().generators()) {
    if (!ideal_member(h.substitute(images, sring), source.presentation.ideal())) {
      throw Error(ErrorCode::BasisNotNested, "truncation does not respect the arc equations");
    }
  }
  return TruncationMap{std::move(source), std::move(target), std::move(images), coordinate};
}

Ideal image_closure(const TruncationMap& map) {
  const auto& sideal = map.source.presentation.ideal();
  const auto& sring = sideal.ring();
  const auto& tring = map.target.presentation.ring();
  if (map.is_coordinate_projection) {
    std::vector<bool> drop(sring->size(), true);
    std::vector<std::size_t> target_of(sring->size(), 0);
    for (std::size_t k = 0; k < map.images.size(); ++k) {
      const auto& mono = map.images[k].terms().front().mono;
      std::size_t v = 0;
      while (mono[v] == 0) ++v;
      drop[v] = false;
      target_of[v] = k;
    }
    auto elim = eliminate(sideal, drop);
    std::vector<std::size_t> index_map;
    for (std::size_t v = 0; v < sring->size(); ++v) {
      if (!drop[v]) index_map.push_back(target_of[v]);
    }
    return elim.rename(tring, index_map);
  }
  // Graph of the linear map, then project away the source coordinates.
  std::vector<std::string> names = sring->variables();
  for (const auto& t : tring->variables()) names.push_back("t_" + t);
  auto graph_ring = make_ring(sring->field(), names);
  std::vector<std::size_t> first(sring->size());
  for (std::size_t v = 0; v < first.size(); ++v) first[v] = v;
  std::vector<Polynomial> gens;
  for (const auto& f : sideal.generators()) gens.push_back(f.rename(graph_ring, first));
  for (std::size_t k = 0; k < map.images.size(); ++k) {
    gens.push_back(Polynomial::variable(graph_ring, sring->size() + k) - map.images[k].rename(graph_ring, first));
  }
  std::vector<bool> drop(graph_ring->size(), false);
  for (std::size_t v = 0; v < sring->size(); ++v) drop[v] = true;
  auto elim = eliminate(Ideal(graph_ring, std::move(gens)), drop);
  std::vector<std::size_t> identity(tring->size());
  for (std::size_t k = 0; k < identity.size(); ++k) identity[k] = k;
  return elim.rename(tring, identity);
}

StabilizedTrace stabilized_trace(const SchemePresentation& x, const PointSystem& system, unsigned n,
                                 unsigned max_depth) {
  if (n < 1 || n >= max_depth) throw Error(ErrorCode::InvalidArgument, "trace needs 1 <= n < max_depth");
  std::optional<TruncationMap> first;
  std::optional<Ideal> previous;
  for (unsigned depth = n + 1; depth <= max_depth; ++depth) {
    auto map = truncation_map(x, system, depth, n);
    auto image = image_closure(map);
    if (previous && ideal_equal(*previous, image)) {
      return StabilizedTrace{n, std::move(map.target), std::move(image), true, depth - 1};
    }
    previous = std::move(image);
    if (!first) first = std::move(map);
  }
  return StabilizedTrace{n, first->target, *previous, false, max_depth};
}

long defect(const SchemePresentation& x, const FatPoint& point, long d) {
  const long dim = x.dimension();
  if (dim != d) {
    throw Error(ErrorCode::DimensionMismatch,
                "asserted dimension " + std::to_string(d) + " but krull_dim is " + std::to_string(dim));
  }
  return krull_dim(weil_restrict(x, point).presentation.ideal()) - d * static_cast<long>(point.length());
}

std::string to_string(Simplicity s) {
  switch (s) {
    case Simplicity::Simple: return "simple";
    case Simplicity::NotSimple: return "not_simple";
    case Simplicity::Inconclusive: return "inconclusive";
  }
  return "";
}

namespace {

// Jacobian minors are only attempted when there are at most this many.
constexpr double kMaxMinors = 2000;

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  double r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

}  // namespace

SimplicityVerdict classify_simple(const FatPoint& point) {
  auto arc = auto_arc(point);
  auto red = reduce_scheme(arc.presentation);
  SimplicityVerdict v;
  const auto& j = red.reduced.ideal();
  // Reducibility is decided on √I directly, so it needs no certified radical.
  auto reducible = [&]() {
    auto w = reducibility_witness(j);
    if (!w) return false;
    v.verdict = Simplicity::NotSimple;
    v.detail = "reduced auto-arc space is reducible: " + w->first.to_string() + " and " +
               w->second.to_string() + " are not nilpotent but their product is";
    return true;
  };
  if (!red.certified) {
    if (reducible()) return v;
    v.detail = "reduction of the auto-arc space is not certified radical (" + red.certificate + ")";
    return v;
  }
  auto strip = strip_linear_variables(j);
  if (strip.ideal.is_zero()) {
    v.verdict = Simplicity::Simple;
    v.affine_dim = static_cast<long>(strip.kept.size());
    std::ostringstream os;
    if (strip.kept.empty()) {
      os << "reduced auto-arc space is a point";
    } else {
      os << "reduced auto-arc space is affine in";
      for (auto k : strip.kept) os << " " << arc.presentation.ring()->variable(k);
    }
    v.detail = os.str();
    return v;
  }
  // Constant arc at the closed point.
  const auto& ring = j.ring();
  std::vector<Rational> witness(ring->size(), Rational(0));
  for (std::size_t i = 0; i < point.point().size(); ++i) witness[arc.coordinate(i, 0)] = point.point()[i];
  const long dim = krull_dim(j);
  const long codim = static_cast<long>(ring->size()) - dim;
  const auto& gb = j.groebner().basis;
  const long rank = jacobian_rank_at(gb, witness);
  if (rank < codim) {
    v.verdict = Simplicity::NotSimple;
    v.witness = witness;
    v.detail = "singular point at the constant arc: Jacobian rank " + std::to_string(rank) +
               " < codimension " + std::to_string(codim);
    return v;
  }
  const auto c = static_cast<std::size_t>(codim);
  if (binomial(gb.size(), c) * binomial(ring->size(), c) <= kMaxMinors) {
    auto sing = singular_locus(red.reduced, dim);
    if (!sing.is_unit()) {
      v.verdict = Simplicity::NotSimple;
      v.detail = "Jacobian minors of size " + std::to_string(codim) + " have a common zero";
      return v;
    }
  }
  if (reducible()) return v;
  v.detail = "reduced auto-arc space is not recognized as affine space";
  return v;
}

std::string to_string(StepEvidence e) {
  switch (e) {
    case StepEvidence::VerifiedTrivialProduct: return "verified-trivial-product";
    case StepEvidence::DimensionConsistent: return "dimension-consistent";
    case StepEvidence::Inconsistent: return "inconsistent";
  }
  return "";
}

StabilityReport stability_probe(const SchemePresentation& x, const PointSystem& system, unsigned n_max) {
  if (n_max < 2) throw Error(ErrorCode::InvalidArgument, "stability probe needs n_max >= 2");
  const long d = x.dimension();
  StabilityReport r;
  for (unsigned n = 1; n <= n_max; ++n) {
    const auto& member = system.member(n);
    auto arc = weil_restrict(x, member);
    const long dim = krull_dim(arc.presentation.ideal());
    r.levels.push_back(n);
    r.lengths.push_back(member.length());
    r.dims.push_back(dim);
    r.defects.push_back(dim - d * static_cast<long>(member.length()));
  }
  for (unsigned n = 1; n < n_max; ++n) {
    auto map = truncation_map(x, system, n + 1, n);
    const std::size_t k = n - 1;
    StepEvidence e = StepEvidence::Inconsistent;
    if (map.is_coordinate_projection) {
      const auto& sring = map.source.presentation.ring();
      std::vector<Polynomial> pulled;
      for (const auto& h : map.target.presentation.ideal().generators()) {
        pulled.push_back(h.substitute(map.images, sring));
      }
      if (ideal_equal(map.source.presentation.ideal(), Ideal(sring, std::move(pulled)))) {
        e = StepEvidence::VerifiedTrivialProduct;
      }
    }
    if (e == StepEvidence::Inconsistent) {
      const long step = r.dims[k + 1] - r.dims[k];
      const long expected = d * static_cast<long>(r.lengths[k + 1] - r.lengths[k]);
      if (step == expected) e = StepEvidence::DimensionConsistent;
    }
    r.evidence.push_back(e);
  }
  return r;
}

}  // namespace nabla
