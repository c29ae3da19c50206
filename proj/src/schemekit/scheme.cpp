#include "nabla/schemekit/scheme.hpp"

#include <algorithm>
#include <functional>

#include "nabla/error.hpp"
#include "nabla/exactalg/univariate.hpp"

namespace nabla {

SchemePresentation SchemePresentation::affine_space(FieldSpec field,
                                                    std::vector<std::string> variables,
                                                    std::string label) {
  return SchemePresentation(Ideal(make_ring(field, std::move(variables))), std::move(label));
}

std::optional<std::size_t> FatPoint::index_of(const Monomial& m) const {
  auto it = std::find(basis_.begin(), basis_.end(), m);
  if (it == basis_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - basis_.begin());
}

std::vector<Rational> FatPoint::coordinates(const Polynomial& f) const {
  auto r = normal_form(f, presentation_.ideal().groebner());
  std::vector<Rational> v(basis_.size(), Rational(0));
  for (const auto& t : r.terms()) v[*index_of(t.mono)] = t.coeff;
  return v;
}

namespace {

// The minimal polynomial of each coordinate must be (t - c)^k with c in κ.
std::vector<Rational> locate_single_point(const Ideal& ideal) {
  const auto& ring = ideal.ring();
  std::vector<Rational> point;
  for (std::size_t i = 0; i < ring->size(); ++i) {
    Univariate mp(ring->field(), minimal_polynomial(ideal, i));
    auto roots = rational_roots(mp);
    if (roots.empty()) {
      throw Error(ErrorCode::ResidueNotGroundField,
                  "coordinate " + ring->variable(i) + " has no value in the ground field");
    }
    const auto& c = roots.front();
    Univariate power(ring->field(), {Rational(1)});
    for (long k = 0; k < mp.degree(); ++k) {
      std::vector<Rational> next(power.coeffs().size() + 1, Rational(0));
      for (std::size_t j = 0; j < power.coeffs().size(); ++j) {
        const auto& f = ring->field();
        next[j + 1] = f.add(next[j + 1], power.coeffs()[j]);
        next[j] = f.sub(next[j], f.mul(c, power.coeffs()[j]));
      }
      power = Univariate(ring->field(), std::move(next));
    }
    if (roots.size() > 1 || !(power == mp.monic())) {
      throw Error(ErrorCode::NotLocal, "coordinate " + ring->variable(i) +
                                           " takes more than one value on the scheme");
    }
    point.push_back(c);
  }
  return point;
}

}  // namespace

FatPoint make_fatpoint(const SchemePresentation& presentation) {
  const auto& ideal = presentation.ideal();
  long dim = krull_dim(ideal);
  if (dim < 0) throw Error(ErrorCode::NotLocal, "empty scheme has no point");
  if (dim > 0) throw Error(ErrorCode::NotArtinian, "scheme has dimension " + std::to_string(dim));

  FatPoint fp(presentation);
  fp.point_ = locate_single_point(ideal);
  fp.basis_ = standard_monomials(ideal);
  const std::size_t l = fp.basis_.size();
  const auto& ring = presentation.ring();
  fp.table_.reserve(l * l);
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t j = 0; j < l; ++j) {
      if (j < i) {
        fp.table_.push_back(fp.table_[j * l + i]);
        continue;
      }
      fp.table_.push_back(fp.coordinates(Polynomial::monomial(ring, fp.basis_[i] * fp.basis_[j], 1)));
    }
  }
  // Associativity on all basis triples.
  const auto& field = ring->field();
  auto times = [&](const std::vector<Rational>& u, std::size_t k) {
    std::vector<Rational> out(l, Rational(0));
    for (std::size_t a = 0; a < l; ++a) {
      if (u[a] == 0) continue;
      const auto& row = fp.product(a, k);
      for (std::size_t b = 0; b < l; ++b) out[b] = field.add(out[b], field.mul(u[a], row[b]));
    }
    return out;
  };
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t j = 0; j < l; ++j) {
      for (std::size_t k = 0; k < l; ++k) {
        if (times(fp.product(i, j), k) != times(fp.product(j, k), i)) {
          throw Error(ErrorCode::InvalidArgument, "multiplication table is not associative");
        }
      }
    }
  }
  return fp;
}

FatPoint line_point(FieldSpec field, unsigned n, const std::string& variable) {
  auto ring = make_ring(field, {variable});
  Ideal ideal(ring, {Polynomial::monomial(ring, Monomial::variable(1, 0, n), 1)});
  return make_fatpoint(SchemePresentation(ideal, "l" + std::to_string(n)));
}

FatPoint jet_at_point(const SchemePresentation& scheme, std::span<const Rational> point, unsigned n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "jet order must be positive");
  const auto& ring = scheme.ring();
  if (point.size() != ring->size()) {
    throw Error(ErrorCode::MismatchedVariables, "point has wrong number of coordinates");
  }
  std::vector<Rational> pt;
  for (const auto& c : point) pt.push_back(ring->field().normalize(c));
  for (const auto& g : scheme.ideal().generators()) {
    if (g.evaluate(pt) != 0) throw Error(ErrorCode::PointNotOnScheme, "generator " + g.to_string() + " does not vanish");
  }
  std::vector<Polynomial> shift;
  for (std::size_t i = 0; i < ring->size(); ++i) {
    shift.push_back(Polynomial::variable(ring, i) + Polynomial::constant(ring, pt[i]));
  }
  std::vector<Polynomial> gens;
  for (const auto& g : scheme.ideal().generators()) gens.push_back(g.substitute(shift, ring));
  // All monomials of degree n.
  std::function<void(std::size_t, unsigned, std::vector<Monomial::Exponent>&)> emit =
      [&](std::size_t var, unsigned left, std::vector<Monomial::Exponent>& e) {
        if (var + 1 == ring->size()) {
          e[var] = left;
          gens.push_back(Polynomial::monomial(ring, Monomial(e), 1));
          return;
        }
        for (unsigned k = 0; k <= left; ++k) {
          e[var] = k;
          emit(var + 1, left - k, e);
        }
        e[var] = 0;
      };
  if (ring->size() > 0) {
    std::vector<Monomial::Exponent> e(ring->size(), 0);
    emit(0, n, e);
  }
  std::string label = "J^" + std::to_string(n) + "(" + (scheme.label().empty() ? "X" : scheme.label()) + ")";
  return make_fatpoint(SchemePresentation(Ideal(ring, std::move(gens)), label));
}

SchemePresentation scheme_product(const SchemePresentation& x, const SchemePresentation& y) {
  if (x.ring()->field() != y.ring()->field()) {
    throw Error(ErrorCode::FieldMismatch, "product of schemes over different fields");
  }
  std::vector<std::string> names = x.ring()->variables();
  for (auto name : y.ring()->variables()) {
    while (std::find(names.begin(), names.end(), name) != names.end()) name += "_2";
    names.push_back(name);
  }
  auto ring = make_ring(x.ring()->field(), names);
  std::vector<std::size_t> left(x.num_variables()), right(y.num_variables());
  for (std::size_t i = 0; i < left.size(); ++i) left[i] = i;
  for (std::size_t i = 0; i < right.size(); ++i) right[i] = left.size() + i;
  std::vector<Polynomial> gens;
  for (const auto& g : x.ideal().generators()) gens.push_back(g.rename(ring, left));
  for (const auto& g : y.ideal().generators()) gens.push_back(g.rename(ring, right));
  std::string label;
  if (!x.label().empty() || !y.label().empty()) label = x.label() + " x " + y.label();
  return SchemePresentation(Ideal(ring, std::move(gens)), label);
}

ReductionResult reduce_scheme(const SchemePresentation& scheme) {
  auto res = radical_closure(scheme.ideal());
  std::string label = scheme.label().empty() ? "" : scheme.label() + "^red";
  return {SchemePresentation(res.ideal, label), res.certified, res.certificate};
}

namespace {

Polynomial determinant(const std::vector<std::vector<Polynomial>>& m, const RingPtr& ring) {
  const std::size_t n = m.size();
  if (n == 0) return Polynomial::constant(ring, Rational(1));
  if (n == 1) return m[0][0];
  Polynomial det = Polynomial::zero(ring);
  for (std::size_t col = 0; col < n; ++col) {
    if (m[0][col].is_zero()) continue;
    std::vector<std::vector<Polynomial>> sub;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Polynomial> row;
      for (std::size_t c = 0; c < n; ++c) {
        if (c != col) row.push_back(m[r][c]);
      }
      sub.push_back(std::move(row));
    }
    auto term = m[0][col] * determinant(sub, ring);
    det = (col % 2 == 0) ? det + term : det - term;
  }
  return det;
}

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> idx(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == k) {
      f(idx);
      return;
    }
    for (std::size_t i = start; i + (k - depth) <= n; ++i) {
      idx[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
}

}  // namespace

Ideal singular_locus(const SchemePresentation& scheme, long asserted_dim) {
  const long dim = scheme.dimension();
  if (dim != asserted_dim) {
    throw Error(ErrorCode::NotEquidimensionalAssertionFailed,
                "asserted dimension " + std::to_string(asserted_dim) + " but krull_dim is " +
                    std::to_string(dim));
  }
  const auto& ring = scheme.ring();
  if (dim < 0) return scheme.ideal();
  const auto& gens = scheme.ideal().groebner().basis;
  const std::size_t n = ring->size();
  const std::size_t c = n - static_cast<std::size_t>(dim);
  std::vector<std::vector<Polynomial>> jac;
  for (const auto& g : gens) {
    std::vector<Polynomial> row;
    for (std::size_t v = 0; v < n; ++v) row.push_back(g.derivative(v));
    jac.push_back(std::move(row));
  }
  std::vector<Polynomial> minors;
  if (c <= gens.size()) {
    for_each_subset(gens.size(), c, [&](const std::vector<std::size_t>& rows) {
      for_each_subset(n, c, [&](const std::vector<std::size_t>& cols) {
        std::vector<std::vector<Polynomial>> m;
        for (auto r : rows) {
          std::vector<Polynomial> row;
          for (auto col : cols) row.push_back(jac[r][col]);
          m.push_back(std::move(row));
        }
        auto d = determinant(m, ring);
        if (!d.is_zero()) minors.push_back(std::move(d));
      });
    });
  }
  return Ideal(ring, scheme.ideal().with(minors).groebner().basis);
}

Ideal saturation(const Ideal& ideal, const Polynomial& f) {
  const auto& ring = ideal.ring();
  require_same_ring(ring, f.ring());
  auto ext = extend_ring(ring, {"_sat"});
  std::vector<std::size_t> into(ring->size());
  for (std::size_t i = 0; i < into.size(); ++i) into[i] = i;
  std::vector<Polynomial> gens;
  for (const auto& g : ideal.generators()) gens.push_back(g.rename(ext, into));
  auto t = Polynomial::variable(ext, ring->size());
  gens.push_back(Polynomial::constant(ext, Rational(1)) - t * f.rename(ext, into));
  std::vector<bool> drop(ext->size(), false);
  drop.back() = true;
  return eliminate(Ideal(ext, std::move(gens)), drop).rename(ring, into);
}

std::optional<std::pair<Polynomial, Polynomial>> reducibility_witness(const Ideal& ideal) {
  const auto& ring = ideal.ring();
  const auto& gb = ideal.groebner();
  if (gb.is_unit() || gb.is_zero()) return std::nullopt;
  std::vector<bool> used(ring->size(), false);
  for (const auto& g : gb.basis) {
    auto s = g.support();
    for (std::size_t i = 0; i < used.size(); ++i) used[i] = used[i] || s[i];
  }
  for (std::size_t v = 0; v < ring->size(); ++v) {
    if (!used[v]) continue;
    auto f = Polynomial::variable(ring, v);
    if (radical_member(f, ideal)) continue;
    auto sat = saturation(ideal, f);
    for (const auto& g : sat.groebner().basis) {
      if (!radical_member(g, ideal)) return std::make_pair(f, g);
    }
  }
  return std::nullopt;
}

long jacobian_rank_at(const std::vector<Polynomial>& generators, std::span<const Rational> point) {
  if (generators.empty()) return 0;
  const auto& ring = generators.front().ring();
  const auto& field = ring->field();
  const std::size_t n = ring->size();
  std::vector<std::vector<Rational>> rows;
  for (const auto& g : generators) {
    std::vector<Rational> row;
    for (std::size_t v = 0; v < n; ++v) row.push_back(g.derivative(v).evaluate(point));
    rows.push_back(std::move(row));
  }
  long rank = 0;
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < rows.size(); ++col) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    Rational inv = field.inv(rows[r][col]);
    for (std::size_t k = r + 1; k < rows.size(); ++k) {
      Rational f = field.mul(rows[k][col], inv);
      if (f == 0) continue;
      for (std::size_t j = col; j < n; ++j) rows[k][j] = field.sub(rows[k][j], field.mul(f, rows[r][j]));
    }
    ++r;
    ++rank;
  }
  return rank;
}

}  // namespace nabla
