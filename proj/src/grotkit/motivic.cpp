#include "nabla/grotkit/motivic.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

#include "nabla/error.hpp"

namespace nabla {

std::string ClassAtom::key() const {
  std::string k;
  for (std::size_t i = 0; i < factors.size(); ++i) k += (i ? "*" : "") + factors[i].key;
  return k;
}

long ClassAtom::dimension() const {
  long d = 0;
  for (const auto& f : factors) d += f.dimension;
  return d;
}

ClassAtom atom_product(const ClassAtom& a, const ClassAtom& b) {
  ClassAtom out;
  out.factors.reserve(a.factors.size() + b.factors.size());
  std::merge(a.factors.begin(), a.factors.end(), b.factors.begin(), b.factors.end(),
             std::back_inserter(out.factors));
  return out;
}

MotivicClass MotivicClass::lefschetz_power(long e) { return of_atom(ClassAtom{}, e, 1); }

MotivicClass MotivicClass::of_atom(ClassAtom atom, long l_exp, Integer coeff) {
  MotivicClass c;
  c.add_term(atom, l_exp, coeff);
  return c;
}

void MotivicClass::add_term(const ClassAtom& atom, long l_exp, const Integer& c) {
  if (c == 0) return;
  auto key = atom.key();
  auto k = std::make_pair(key, l_exp);
  auto it = coeffs_.find(k);
  if (it == coeffs_.end()) {
    coeffs_.emplace(k, c);
    atoms_.emplace(key, atom);
    return;
  }
  it->second += c;
  if (it->second == 0) {
    coeffs_.erase(it);
    auto lo = coeffs_.lower_bound(std::make_pair(key, std::numeric_limits<long>::min()));
    if (lo == coeffs_.end() || lo->first.first != key) atoms_.erase(key);
  }
}

std::vector<MotivicClass::Term> MotivicClass::terms() const {
  std::vector<Term> out;
  for (auto it = coeffs_.begin(); it != coeffs_.end(); ++it) {
    out.push_back({&atoms_.at(it->first.first), it->first.second, it->second});
  }
  std::stable_sort(out.begin(), out.end(), [](const Term& a, const Term& b) {
    if (a.atom != b.atom) return a.atom->key() < b.atom->key();
    return a.l_exp > b.l_exp;
  });
  return out;
}

namespace {

std::string l_power(long e) {
  if (e == 1) return "L";
  return "L^" + std::to_string(e);
}

}  // namespace

std::string MotivicClass::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms()) {
    Integer c = t.coeff;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (c < 0) c = -c;
    std::vector<std::string> parts;
    if (c != 1) parts.push_back(c.get_str());
    for (const auto& f : t.atom->factors) parts.push_back("[" + f.key + "]");
    if (t.l_exp != 0) parts.push_back(l_power(t.l_exp));
    if (parts.empty()) parts.push_back("1");
    for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? "*" : "") << parts[i];
    first = false;
  }
  return os.str();
}

MotivicClass operator+(const MotivicClass& a, const MotivicClass& b) {
  MotivicClass out = a;
  for (const auto& t : b.terms()) out.add_term(*t.atom, t.l_exp, t.coeff);
  return out;
}

MotivicClass MotivicClass::operator-() const { return scaled(-1); }

MotivicClass operator-(const MotivicClass& a, const MotivicClass& b) { return a + (-b); }

MotivicClass operator*(const MotivicClass& a, const MotivicClass& b) {
  MotivicClass out;
  for (const auto& s : a.terms()) {
    for (const auto& t : b.terms()) {
      out.add_term(atom_product(*s.atom, *t.atom), s.l_exp + t.l_exp, s.coeff * t.coeff);
    }
  }
  return out;
}

MotivicClass MotivicClass::scale_l(long e) const {
  MotivicClass out;
  for (const auto& t : terms()) out.add_term(*t.atom, t.l_exp + e, t.coeff);
  return out;
}

MotivicClass MotivicClass::scaled(const Integer& c) const {
  MotivicClass out;
  for (const auto& t : terms()) out.add_term(*t.atom, t.l_exp, t.coeff * c);
  return out;
}

namespace {

// Connected components of the used variables, linked through generator supports.
std::vector<std::vector<std::size_t>> variable_blocks(std::size_t nvars,
                                                      const std::vector<const Polynomial*>& gens) {
  std::vector<std::size_t> parent(nvars);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
    return parent[v] == v ? v : parent[v] = find(parent[v]);
  };
  std::vector<bool> used(nvars, false);
  for (const auto* g : gens) {
    auto s = g->support();
    std::optional<std::size_t> first;
    for (std::size_t v = 0; v < nvars; ++v) {
      if (!s[v]) continue;
      used[v] = true;
      if (first) {
        parent[find(v)] = find(*first);
      } else {
        first = v;
      }
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> by_root;
  for (std::size_t v = 0; v < nvars; ++v) {
    if (used[v]) by_root[find(v)].push_back(v);
  }
  std::vector<std::vector<std::size_t>> blocks;
  for (auto& [root, vars] : by_root) blocks.push_back(std::move(vars));
  std::sort(blocks.begin(), blocks.end());
  return blocks;
}

std::size_t count_unused(std::size_t nvars, const std::vector<std::vector<std::size_t>>& blocks) {
  std::size_t used = 0;
  for (const auto& b : blocks) used += b.size();
  return nvars - used;
}

RingPtr canonical_ring(const FieldSpec& field, std::size_t k) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < k; ++i) names.push_back("v" + std::to_string(i + 1));
  return make_ring(field, names);
}

// Generators of `gb` supported in `block`, moved to v1..vk.
Ideal restrict_to_block(const std::vector<Polynomial>& gb, const std::vector<std::size_t>& block,
                        const RingPtr& source, const RingPtr& target) {
  std::vector<std::size_t> index(source->size(), 0);
  std::vector<bool> in_block(source->size(), false);
  for (std::size_t k = 0; k < block.size(); ++k) {
    index[block[k]] = k;
    in_block[block[k]] = true;
  }
  std::vector<Polynomial> gens;
  for (const auto& g : gb) {
    auto s = g.support();
    bool inside = false;
    for (std::size_t v = 0; v < s.size(); ++v) inside = inside || (s[v] && in_block[v]);
    if (inside) gens.push_back(g.rename(target, index));
  }
  return Ideal(target, std::move(gens));
}

std::string ideal_key(const Ideal& ideal) {
  std::string k = "V(";
  const auto& gb = ideal.groebner().basis;
  for (std::size_t i = 0; i < gb.size(); ++i) k += (i ? ", " : "") + gb[i].to_string();
  return k + ")";
}

ClassFactor plain_factor(const Ideal& ideal) {
  return ClassFactor{ClassFactor::Kind::Plain, SchemePresentation(ideal), std::nullopt, ideal_key(ideal),
                     krull_dim(ideal)};
}

ClassFactor cone_factor(const Ideal& z, const Ideal& sub) {
  return ClassFactor{ClassFactor::Kind::Cone, SchemePresentation(z), SchemePresentation(sub),
                     "C(" + ideal_key(z) + " | " + ideal_key(sub) + ")", krull_dim(sub)};
}

bool is_certified_reduction(const Ideal& z, const Ideal& f) {
  auto rc = radical_closure(z);
  return rc.certified && ideal_equal(rc.ideal, f);
}

}  // namespace

MotivicClass class_of_scheme(const SchemePresentation& x) {
  if (x.ideal().is_unit()) return MotivicClass::zero();
  auto strip = strip_linear_variables(x.ideal());
  const auto& ring = strip.ideal.ring();
  const auto& gb = strip.ideal.groebner().basis;
  std::vector<const Polynomial*> gens;
  for (const auto& g : gb) gens.push_back(&g);
  auto blocks = variable_blocks(ring->size(), gens);
  ClassAtom atom;
  for (const auto& block : blocks) {
    auto target = canonical_ring(ring->field(), block.size());
    atom.factors.push_back(plain_factor(restrict_to_block(gb, block, ring, target)));
  }
  std::sort(atom.factors.begin(), atom.factors.end());
  return MotivicClass::of_atom(std::move(atom), static_cast<long>(count_unused(ring->size(), blocks)));
}

MotivicClass cone_class(const SchemePresentation& z, const SchemePresentation& f) {
  require_same_ring(z.ring(), f.ring());
  if (!ideal_contains(f.ideal(), z.ideal())) {
    throw Error(ErrorCode::ContainmentViolated, "cone needs the sub-scheme ideal to contain the ambient ideal");
  }
  if (z.ideal().is_unit() || f.ideal().is_unit()) return MotivicClass::zero();
  if (is_certified_reduction(z.ideal(), f.ideal())) return class_of_scheme(z);

  const auto& ring = z.ring();
  const auto& gz = z.ideal().groebner().basis;
  const auto& gf = f.ideal().groebner().basis;
  std::vector<const Polynomial*> gens;
  for (const auto& g : gz) gens.push_back(&g);
  for (const auto& g : gf) gens.push_back(&g);
  auto blocks = variable_blocks(ring->size(), gens);
  auto result = MotivicClass::lefschetz_power(static_cast<long>(count_unused(ring->size(), blocks)));
  ClassAtom cones;
  for (const auto& block : blocks) {
    auto target = canonical_ring(ring->field(), block.size());
    auto zb = restrict_to_block(gz, block, ring, target);
    auto fb = restrict_to_block(gf, block, ring, target);
    if (is_certified_reduction(zb, fb)) {
      result = result * class_of_scheme(SchemePresentation(zb));
    } else {
      cones.factors.push_back(cone_factor(zb, fb));
    }
  }
  std::sort(cones.factors.begin(), cones.factors.end());
  return result * MotivicClass::of_atom(std::move(cones));
}

MotivicClass class_combine(CombineKind op, const MotivicClass& a, const MotivicClass& b, long e) {
  switch (op) {
    case CombineKind::Add: return a + b;
    case CombineKind::Sub: return a - b;
    case CombineKind::Mul: return a * b;
    case CombineKind::ScaleL: return a.scale_l(e);
  }
  return a;
}

std::optional<long> class_dim(const MotivicClass& a) {
  std::optional<long> best;
  for (const auto& t : a.terms()) {
    long d = t.atom->dimension() + t.l_exp;
    if (!best || d > *best) best = d;
  }
  return best;
}

std::string dim_to_string(const std::optional<long>& d) { return d ? std::to_string(*d) : "-inf"; }

bool filtration_member(const MotivicClass& a, long m) {
  auto d = class_dim(a);
  return !d || *d < m;
}

namespace {

MotivicClass reduced_class(const SchemePresentation& x) {
  auto red = reduce_scheme(x);
  if (!red.certified) {
    throw Error(ErrorCode::UncertifiedReduction, "reduction not certified: " + red.certificate);
  }
  return class_of_scheme(red.reduced);
}

}  // namespace

MotivicClass sigma_reduce(const MotivicClass& a) {
  MotivicClass out;
  for (const auto& t : a.terms()) {
    auto image = MotivicClass::lefschetz_power(t.l_exp).scaled(t.coeff);
    for (const auto& f : t.atom->factors) {
      image = image * reduced_class(f.kind == ClassFactor::Kind::Plain ? f.ambient : *f.sub);
    }
    out = out + image;
  }
  return out;
}

namespace {

void check_dimension(const SchemePresentation& x, long d) {
  const long dim = x.dimension();
  if (dim != d) {
    throw Error(ErrorCode::DimensionMismatch,
                "asserted dimension " + std::to_string(d) + " but krull_dim is " + std::to_string(dim));
  }
}

StabilizedTrace stable_trace_or_throw(const SchemePresentation& x, const PointSystem& system, unsigned n,
                                      unsigned max_depth) {
  auto tr = stabilized_trace(x, system, n, max_depth);
  if (!tr.stabilized) {
    throw Error(ErrorCode::TraceNotStabilized,
                "trace at level " + std::to_string(n) + " did not stabilize by depth " + std::to_string(max_depth));
  }
  return tr;
}

}  // namespace

Measure measure_stable(const SchemePresentation& x, const PointSystem& system, std::size_t s, long d,
                       unsigned max_depth) {
  check_dimension(x, d);
  std::optional<unsigned> level;
  for (unsigned n = 1; n < max_depth && !level; ++n) {
    if (system.member(n).length() == s) level = n;
  }
  if (!level) {
    throw Error(ErrorCode::InvalidArgument, "no system member of length " + std::to_string(s) +
                                                " below depth " + std::to_string(max_depth));
  }
  auto tr = stable_trace_or_throw(x, system, *level, max_depth);
  auto value = class_of_scheme(SchemePresentation(tr.ideal)).scale_l(-static_cast<long>(s) * d);
  return Measure{std::move(value), *level, s, std::move(tr)};
}

Measure measure_rational_lax(const SchemePresentation& x, const PointSystem& system, unsigned n, long d,
                             long l_value, unsigned max_depth) {
  check_dimension(x, d);
  auto tr = stable_trace_or_throw(x, system, n, max_depth);
  auto rc = radical_closure(tr.ideal);
  if (!rc.certified) {
    throw Error(ErrorCode::UncertifiedReduction, "reduced trace not certified: " + rc.certificate);
  }
  const auto length = system.member(n).length();
  auto value = cone_class(tr.arc.presentation, SchemePresentation(rc.ideal))
                   .scale_l(-d * static_cast<long>(length) - l_value);
  return Measure{std::move(value), n, length, std::move(tr)};
}

}  // namespace nabla
