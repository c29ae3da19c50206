#include "nabla/idealkit/ideal.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <set>

#include "nabla/error.hpp"
#include "nabla/exactalg/univariate.hpp"

namespace nabla {

Ideal::Ideal(RingPtr ring, std::vector<Polynomial> generators)
    : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {
  for (auto& g : generators) {
    require_same_ring(g.ring(), ring_);
    if (!g.is_zero()) gens_.push_back(std::move(g));
  }
}

const ReducedGB& Ideal::groebner(const MonomialOrder& order) const {
  const std::string key = order.key();
  {
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->entries.find(key);
    if (it != cache_->entries.end()) return *it->second;
  }
  auto computed = std::make_shared<const ReducedGB>(reduced_groebner(*this, order));
  std::lock_guard lock(cache_->mutex);
  auto [it, inserted] = cache_->entries.emplace(key, std::move(computed));
  return *it->second;
}

Ideal Ideal::with(const Polynomial& f) const { return with(std::vector<Polynomial>{f}); }

Ideal Ideal::with(const std::vector<Polynomial>& fs) const {
  std::vector<Polynomial> g = gens_;
  g.insert(g.end(), fs.begin(), fs.end());
  return Ideal(ring_, std::move(g));
}

Ideal operator+(const Ideal& a, const Ideal& b) {
  require_same_ring(a.ring_, b.ring_);
  return a.with(b.gens_);
}

Ideal Ideal::rename(const RingPtr& target, std::span<const std::size_t> index_map) const {
  std::vector<Polynomial> g;
  g.reserve(gens_.size());
  for (const auto& f : gens_) g.push_back(f.rename(target, index_map));
  return Ideal(target, std::move(g));
}

RingPtr subring(const RingPtr& ring, const std::vector<bool>& keep) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < ring->size(); ++i) {
    if (keep.at(i)) names.push_back(ring->variable(i));
  }
  return make_ring(ring->field(), std::move(names));
}

RingPtr extend_ring(const RingPtr& ring, const std::vector<std::string>& extra) {
  std::vector<std::string> names = ring->variables();
  for (auto name : extra) {
    while (std::find(names.begin(), names.end(), name) != names.end()) name += "_";
    names.push_back(name);
  }
  return make_ring(ring->field(), std::move(names));
}

bool ideal_member(const Polynomial& f, const Ideal& ideal) {
  require_same_ring(f.ring(), ideal.ring());
  return normal_form(f, ideal.groebner()).is_zero();
}

bool ideal_equal(const Ideal& a, const Ideal& b) {
  require_same_ring(a.ring(), b.ring());
  return a.groebner().basis == b.groebner().basis;
}

bool ideal_contains(const Ideal& big, const Ideal& small) {
  require_same_ring(big.ring(), small.ring());
  const auto& gb = big.groebner();
  return std::all_of(small.generators().begin(), small.generators().end(),
                     [&](const Polynomial& f) { return normal_form(f, gb).is_zero(); });
}

Ideal eliminate(const Ideal& ideal, const std::vector<bool>& drop) {
  const auto& ring = ideal.ring();
  if (drop.size() != ring->size()) {
    throw Error(ErrorCode::MismatchedVariables, "elimination mask size differs from ring size");
  }
  std::vector<bool> keep(drop.size());
  std::vector<std::size_t> index_map(drop.size(), 0);
  std::size_t next = 0;
  for (std::size_t i = 0; i < drop.size(); ++i) {
    keep[i] = !drop[i];
    if (keep[i]) index_map[i] = next++;
  }
  auto target = subring(ring, keep);
  const bool nothing_dropped = std::none_of(drop.begin(), drop.end(), [](bool b) { return b; });
  const auto& gb = nothing_dropped ? ideal.groebner()
                                   : ideal.groebner(MonomialOrder::block_elimination(drop));
  std::vector<Polynomial> kept;
  for (const auto& g : gb.basis) {
    auto s = g.support();
    bool uses_dropped = false;
    for (std::size_t i = 0; i < s.size(); ++i) uses_dropped = uses_dropped || (s[i] && drop[i]);
    if (!uses_dropped) kept.push_back(g.rename(target, index_map));
  }
  return Ideal(target, std::move(kept));
}

bool radical_member(const Polynomial& f, const Ideal& ideal) {
  require_same_ring(f.ring(), ideal.ring());
  if (f.is_zero()) return true;
  if (ideal_member(f, ideal)) return true;
  const auto& ring = ideal.ring();
  auto ext = extend_ring(ring, {"_rabinowitsch"});
  std::vector<std::size_t> map(ring->size());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = i;
  std::vector<Polynomial> gens;
  for (const auto& g : ideal.groebner().basis) gens.push_back(g.rename(ext, map));
  auto t = Polynomial::variable(ext, ring->size());
  gens.push_back(Polynomial::constant(ext, Rational(1)) - t * f.rename(ext, map));
  return Ideal(ext, std::move(gens)).is_unit();
}

std::vector<std::size_t> max_independent_set(const std::vector<Monomial>& leads, std::size_t nvars) {
  if (nvars > 64) throw Error(ErrorCode::InvalidArgument, "independent sets limited to 64 variables");
  std::vector<std::uint64_t> supports;
  for (const auto& m : leads) {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < nvars; ++i) {
      if (m[i] != 0) s |= std::uint64_t{1} << i;
    }
    supports.push_back(s);
  }
  std::uint64_t best = 0;
  int best_size = -1;
  auto ok = [&](std::uint64_t set) {
    return std::none_of(supports.begin(), supports.end(),
                        [&](std::uint64_t s) { return (s & ~set) == 0; });
  };
  // Depth-first over variables, including before excluding, with a size bound.
  auto search = [&](auto&& self, std::size_t i, std::uint64_t set, int size) -> void {
    if (size + static_cast<int>(nvars - i) <= best_size) return;
    if (i == nvars) {
      best = set;
      best_size = size;
      return;
    }
    std::uint64_t with = set | (std::uint64_t{1} << i);
    if (ok(with)) self(self, i + 1, with, size + 1);
    self(self, i + 1, set, size);
  };
  if (!ok(0)) return {};
  search(search, 0, 0, 0);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nvars; ++i) {
    if (best & (std::uint64_t{1} << i)) out.push_back(i);
  }
  return out;
}

long krull_dim(const Ideal& ideal) {
  const auto& gb = ideal.groebner();
  if (gb.is_unit()) return -1;
  return static_cast<long>(max_independent_set(gb.leads, ideal.ring()->size()).size());
}

std::vector<Monomial> standard_monomials(const Ideal& ideal, const MonomialOrder& order) {
  if (krull_dim(ideal) > 0) {
    throw Error(ErrorCode::NotArtinian, "ring/I is infinite dimensional over the field");
  }
  const auto& gb = ideal.groebner(order);
  if (gb.is_unit()) return {};
  const std::size_t n = ideal.ring()->size();
  auto standard = [&](const Monomial& m) {
    return std::none_of(gb.leads.begin(), gb.leads.end(),
                        [&](const Monomial& l) { return l.divides(m); });
  };
  std::set<Monomial> seen;
  std::deque<Monomial> queue{Monomial(n)};
  seen.insert(Monomial(n));
  std::vector<Monomial> out;
  while (!queue.empty()) {
    Monomial m = std::move(queue.front());
    queue.pop_front();
    out.push_back(m);
    for (std::size_t i = 0; i < n; ++i) {
      Monomial next = m * Monomial::variable(n, i);
      if (standard(next) && seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  std::sort(out.begin(), out.end(),
            [&](const Monomial& a, const Monomial& b) { return order.greater(b, a); });
  return out;
}

std::vector<Rational> minimal_polynomial(const Ideal& ideal, std::size_t var) {
  const auto& ring = ideal.ring();
  const auto& field = ring->field();
  auto basis = standard_monomials(ideal);
  if (basis.empty()) return {Rational(1)};
  const auto& gb = ideal.groebner();
  auto coords = [&](const Polynomial& p) {
    std::vector<Rational> v(basis.size(), Rational(0));
    for (const auto& t : p.terms()) {
      auto it = std::find(basis.begin(), basis.end(), t.mono);
      v[static_cast<std::size_t>(it - basis.begin())] = t.coeff;
    }
    return v;
  };
  struct Row {
    std::vector<Rational> vec;
    std::vector<Rational> combo;
    std::size_t pivot;
  };
  std::vector<Row> rows;
  Polynomial power = normal_form(Polynomial::constant(ring, Rational(1)), gb);
  const Polynomial x = Polynomial::variable(ring, var);
  for (std::size_t k = 0; k <= basis.size(); ++k) {
    if (k > 0) power = normal_form(power * x, gb);
    std::vector<Rational> vec = coords(power);
    std::vector<Rational> combo(k + 1, Rational(0));
    combo[k] = 1;
    for (const auto& row : rows) {
      const Rational c = vec[row.pivot];
      if (c == 0) continue;
      for (std::size_t i = 0; i < vec.size(); ++i) vec[i] = field.sub(vec[i], field.mul(c, row.vec[i]));
      for (std::size_t i = 0; i < row.combo.size(); ++i) {
        combo[i] = field.sub(combo[i], field.mul(c, row.combo[i]));
      }
    }
    auto nz = std::find_if(vec.begin(), vec.end(), [](const Rational& r) { return r != 0; });
    if (nz == vec.end()) return combo;
    const std::size_t pivot = static_cast<std::size_t>(nz - vec.begin());
    Rational inv = field.inv(vec[pivot]);
    for (auto& r : vec) r = field.mul(r, inv);
    for (auto& r : combo) r = field.mul(r, inv);
    rows.push_back({std::move(vec), std::move(combo), pivot});
  }
  throw Error(ErrorCode::NotZeroDimensional, "no minimal polynomial found");
}

Ideal zero_dim_radical(const Ideal& ideal) {
  if (krull_dim(ideal) != 0) {
    if (ideal.is_unit()) return ideal;
    throw Error(ErrorCode::NotZeroDimensional, "zero_dim_radical needs a zero-dimensional ideal");
  }
  const auto& ring = ideal.ring();
  const auto& field = ring->field();
  std::vector<Polynomial> extra;
  for (std::size_t i = 0; i < ring->size(); ++i) {
    Univariate mp(field, minimal_polynomial(ideal, i));
    if (!field.is_rationals() && static_cast<std::uint64_t>(mp.degree()) >= field.characteristic()) {
      throw Error(ErrorCode::InseparableCase,
                  "minimal polynomial of " + ring->variable(i) +
                      " has degree >= characteristic; separability not decided");
    }
    Univariate sq = squarefree_part(mp);
    if (sq.degree() == mp.degree()) continue;
    std::vector<Term> terms;
    for (std::size_t k = 0; k < sq.coeffs().size(); ++k) {
      if (sq.coeffs()[k] == 0) continue;
      terms.push_back(
          {Monomial::variable(ring->size(), i, static_cast<Monomial::Exponent>(k)), sq.coeffs()[k]});
    }
    extra.push_back(Polynomial::from_terms(ring, std::move(terms)));
  }
  return Ideal(ring, ideal.with(extra).groebner().basis);
}

}  // namespace nabla
