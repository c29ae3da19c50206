#include <algorithm>
#include <numeric>

#include "nabla/error.hpp"
#include "nabla/exactalg/univariate.hpp"
#include "nabla/idealkit/ideal.hpp"

namespace nabla {

namespace {

bool squarefree_initial_ideal(const Ideal& ideal, const MonomialOrder& order) {
  const auto& leads = ideal.groebner(order).leads;
  return std::all_of(leads.begin(), leads.end(), [](const Monomial& m) {
    return std::all_of(m.exponents().begin(), m.exponents().end(),
                       [](Monomial::Exponent e) { return e <= 1; });
  });
}

std::optional<std::size_t> single_variable(const Polynomial& p) {
  auto s = p.support();
  auto n = std::count(s.begin(), s.end(), true);
  if (n != 1) return std::nullopt;
  return static_cast<std::size_t>(std::find(s.begin(), s.end(), true) - s.begin());
}

// Every generator is univariate in its own variable and squarefree.
bool separated_squarefree_univariates(const Ideal& ideal) {
  const auto& ring = ideal.ring();
  const auto& field = ring->field();
  std::vector<bool> used(ring->size(), false);
  for (const auto& g : ideal.groebner().basis) {
    auto v = single_variable(g);
    if (!v || used[*v]) return false;
    used[*v] = true;
    std::vector<Rational> coeffs(static_cast<std::size_t>(g.total_degree()) + 1, Rational(0));
    for (const auto& t : g.terms()) coeffs[t.mono[*v]] = t.coeff;
    Univariate u(field, std::move(coeffs));
    if (!field.is_rationals() && static_cast<std::uint64_t>(u.degree()) >= field.characteristic()) {
      return false;
    }
    if (gcd(u, u.derivative()).degree() > 0) return false;
  }
  return true;
}

struct BlockResult {
  Ideal ideal;
  bool certified;
  std::string certificate;
};

BlockResult close_block(const Ideal& block) {
  const auto& ring = block.ring();
  if (krull_dim(block) == 0) {
    try {
      return {zero_dim_radical(block), true, "zero-dimensional (Seidenberg)"};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InseparableCase) throw;
    }
  }
  Ideal current(ring, block.groebner().basis);
  std::vector<bool> vars(ring->size(), false);
  for (const auto& g : block.generators()) {
    auto s = g.support();
    for (std::size_t i = 0; i < s.size(); ++i) vars[i] = vars[i] || s[i];
  }
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<Polynomial> candidates;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (vars[i]) candidates.push_back(Polynomial::variable(ring, i));
    }
    for (const auto& g : current.groebner().basis) {
      if (g.constant_term() == 0) {
        auto lin = g.homogeneous_part(1);
        if (!lin.is_zero()) candidates.push_back(lin);
      }
      if (g.size() == 1 && !g.terms().front().mono.is_one()) {
        candidates.push_back(Polynomial::monomial(ring, g.terms().front().mono.support(), 1));
      }
    }
    for (const auto& c : candidates) {
      if (ideal_member(c, current)) continue;
      if (radical_member(c, current)) {
        current = Ideal(ring, current.with(c).groebner().basis);
        changed = true;
      }
    }
  }
  if (krull_dim(current) == 0) {
    try {
      return {zero_dim_radical(current), true, "zero-dimensional (Seidenberg)"};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InseparableCase) throw;
    }
  }
  auto cert = radical_certificate(current);
  if (cert.empty()) {
    return {current, false, "no radicality criterion applies; result is a sub-radical ideal"};
  }
  return {current, true, cert};
}

}  // namespace

LinearStrip strip_linear_variables(const Ideal& ideal) {
  Ideal current = ideal;
  std::vector<std::size_t> kept(ideal.ring()->size());
  for (std::size_t i = 0; i < kept.size(); ++i) kept[i] = i;
  for (;;) {
    const auto& gb = current.groebner();
    if (gb.is_unit()) break;
    const auto& ring = current.ring();
    const std::size_t n = ring->size();
    std::optional<std::pair<std::size_t, std::size_t>> hit;  // (generator, variable)
    for (std::size_t v = 0; v < n && !hit; ++v) {
      for (std::size_t g = 0; g < gb.basis.size() && !hit; ++g) {
        const auto& f = gb.basis[g];
        bool linear = false, other = false;
        for (const auto& t : f.terms()) {
          if (t.mono[v] == 0) continue;
          if (t.mono[v] == 1 && t.mono.degree() == 1) {
            linear = true;
          } else {
            other = true;
          }
        }
        if (linear && !other) hit = std::make_pair(g, v);
      }
    }
    if (!hit) break;
    const auto [g, v] = *hit;
    const auto& f = gb.basis[g];
    const auto& field = ring->field();
    Rational c = 0;
    for (const auto& t : f.terms()) {
      if (t.mono[v] == 1) c = t.coeff;
    }
    // x_v = -(f - c x_v) / c
    auto xv = Polynomial::variable(ring, v);
    auto image = (f - xv.scaled(c)).scaled(field.neg(field.inv(c)));
    std::vector<bool> keep(n, true);
    keep[v] = false;
    auto sub = subring(ring, keep);
    std::vector<std::size_t> to_sub(n, 0);
    for (std::size_t i = 0, k = 0; i < n; ++i) {
      if (keep[i]) to_sub[i] = k++;
    }
    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < n; ++i) images.push_back(i == v ? image : Polynomial::variable(ring, i));
    std::vector<Polynomial> gens;
    for (std::size_t k = 0; k < gb.basis.size(); ++k) {
      if (k == g) continue;
      auto h = gb.basis[k].substitute(images, ring);
      if (!h.is_zero()) gens.push_back(h.rename(sub, to_sub));
    }
    kept.erase(kept.begin() + static_cast<long>(v));
    current = Ideal(sub, std::move(gens));
  }
  return {current, kept};
}

std::string radical_certificate(const Ideal& ideal) {
  if (ideal.is_unit()) return "unit ideal";
  if (ideal.groebner().is_zero()) return "zero ideal";
  if (squarefree_initial_ideal(ideal, MonomialOrder::grevlex())) {
    return "squarefree initial ideal (grevlex)";
  }
  if (separated_squarefree_univariates(ideal)) {
    return "variables and squarefree univariates";
  }
  if (krull_dim(ideal) == 0) {
    try {
      if (ideal_equal(zero_dim_radical(ideal), ideal)) return "zero-dimensional (Seidenberg)";
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InseparableCase) throw;
    }
    return "";
  }
  if (squarefree_initial_ideal(ideal, MonomialOrder::lex())) return "squarefree initial ideal (lex)";
  auto strip = strip_linear_variables(ideal);
  if (strip.kept.size() < ideal.ring()->size()) {
    auto inner = radical_certificate(strip.ideal);
    if (!inner.empty()) return "after eliminating linear variables: " + inner;
  }
  return "";
}

RadicalClosure radical_closure(const Ideal& ideal) {
  const auto& ring = ideal.ring();
  const auto& gb = ideal.groebner();
  if (gb.is_unit()) return {ideal, true, "unit ideal"};
  if (gb.is_zero()) return {ideal, true, "zero ideal"};

  // Generators sharing no variables are closed independently.
  const std::size_t n = ring->size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::size_t> anchor;
  for (const auto& g : gb.basis) {
    auto s = g.support();
    std::size_t first = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!s[i]) continue;
      if (first == n) {
        first = i;
      } else {
        parent[find(i)] = find(first);
      }
    }
    anchor.push_back(first);
  }
  std::vector<std::size_t> roots;
  for (auto a : anchor) {
    auto r = find(a);
    if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
  }

  std::vector<Polynomial> generators;
  bool certified = true;
  std::vector<std::string> certs;
  for (auto r : roots) {
    std::vector<Polynomial> block;
    for (std::size_t k = 0; k < gb.basis.size(); ++k) {
      if (find(anchor[k]) == r) block.push_back(gb.basis[k]);
    }
    auto res = close_block(Ideal(ring, std::move(block)));
    certified = certified && res.certified;
    if (std::find(certs.begin(), certs.end(), res.certificate) == certs.end()) {
      certs.push_back(res.certificate);
    }
    const auto& b = res.ideal.groebner().basis;
    generators.insert(generators.end(), b.begin(), b.end());
  }
  Ideal joined(ring, std::move(generators));
  std::string certificate;
  for (const auto& c : certs) certificate += (certificate.empty() ? "" : "; ") + c;
  return {Ideal(ring, joined.groebner().basis), certified, certificate};
}

}  // namespace nabla
