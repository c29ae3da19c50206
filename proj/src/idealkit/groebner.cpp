#include <algorithm>
#include <cstdint>

#include "nabla/error.hpp"
#include "nabla/idealkit/ideal.hpp"

namespace nabla {

namespace {

struct Pair {
  std::size_t i;
  std::size_t j;
  Monomial lcm;
  std::uint32_t sugar = 0;
};

class Buchberger {
 public:
  Buchberger(const RingPtr& ring, const MonomialOrder& order)
      : ring_(ring), field_(ring->field()), order_(order) {}

  ReducedGB run(const std::vector<Polynomial>& generators) {
    for (const auto& g : generators) {
      std::vector<Term> terms = g.terms();
      detail::sort_terms(order_, terms);
      auto h = reduce(std::move(terms), active_);
      if (h.empty()) continue;
      if (insert(std::move(h), static_cast<std::uint32_t>(g.total_degree()))) return finish();
    }
    while (!pairs_.empty()) {
      // Sugar strategy, ties broken by lcm then by index.
      auto best = std::min_element(pairs_.begin(), pairs_.end(), [&](const Pair& a, const Pair& b) {
        if (a.sugar != b.sugar) return a.sugar < b.sugar;
        auto c = order_.compare(a.lcm, b.lcm);
        if (c != 0) return c < 0;
        return std::tie(a.j, a.i) < std::tie(b.j, b.i);
      });
      Pair p = *best;
      pairs_.erase(best);
      auto h = reduce(s_polynomial(p), active_);
      if (h.empty()) continue;
      if (insert(std::move(h), p.sugar)) return finish();
    }
    return finish();
  }

 private:
  const Monomial& lead(std::size_t k) const { return polys_[k].front().mono; }

  std::vector<Term> s_polynomial(const Pair& p) const {
    const auto& f = polys_[p.i];
    const auto& g = polys_[p.j];
    std::vector<Term> fs;
    fs.reserve(f.size());
    Monomial mf = p.lcm.quotient(f.front().mono);
    for (std::size_t k = 1; k < f.size(); ++k) fs.push_back({f[k].mono * mf, f[k].coeff});
    Monomial mg = p.lcm.quotient(g.front().mono);
    return detail::sub_mul_terms(field_, order_, fs, Rational(1), mg,
                                 std::span<const Term>(g).subspan(1));
  }

  // Full reduction modulo the polynomials listed in `basis`.
  std::vector<Term> reduce(std::vector<Term> h, const std::vector<std::size_t>& basis) const {
    std::vector<Term> rem;
    std::size_t start = 0;
    while (start < h.size()) {
      const Term& t = h[start];
      const std::vector<Term>* divisor = nullptr;
      for (auto k : basis) {
        if (lead(k).divides(t.mono)) {
          divisor = &polys_[k];
          break;
        }
      }
      if (!divisor) {
        rem.push_back(t);
        ++start;
        continue;
      }
      Monomial q = t.mono.quotient(divisor->front().mono);
      Rational c = t.coeff;
      h = detail::sub_mul_terms(field_, order_, std::span<const Term>(h).subspan(start + 1), c, q,
                                std::span<const Term>(*divisor).subspan(1));
      start = 0;
    }
    if (!rem.empty()) {
      Rational inv = field_.inv(rem.front().coeff);
      for (auto& t : rem) t.coeff = field_.mul(t.coeff, inv);
    }
    return rem;
  }

  // Gebauer–Möller update. Returns true when the ideal became the unit ideal.
  bool insert(std::vector<Term> h, std::uint32_t sugar) {
    const std::size_t hi = polys_.size();
    const bool unit = h.front().mono.is_one();
    polys_.push_back(std::move(h));
    sugar_.push_back(std::max<std::uint32_t>(sugar, lead(hi).degree()));
    if (unit) {
      active_ = {hi};
      pairs_.clear();
      return true;
    }
    const Monomial& lh = lead(hi);

    std::vector<Pair> candidates;
    for (auto g : active_) {
      Monomial l = lh.lcm(lead(g));
      std::uint32_t s = std::max(sugar_[g] + l.degree() - lead(g).degree(), sugar_[hi] + l.degree() - lh.degree());
      candidates.push_back({g, hi, std::move(l), s});
    }
    std::vector<Pair> kept;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      const auto& p = candidates[c];
      bool keep = lh.coprime(lead(p.i));
      if (!keep) {
        keep = true;
        for (std::size_t d = c + 1; d < candidates.size() && keep; ++d) {
          if (candidates[d].lcm.divides(p.lcm)) keep = false;
        }
        for (std::size_t d = 0; d < kept.size() && keep; ++d) {
          if (kept[d].lcm.divides(p.lcm)) keep = false;
        }
      }
      if (keep) kept.push_back(p);
    }
    std::vector<Pair> fresh;
    for (auto& p : kept) {
      if (!lh.coprime(lead(p.i))) fresh.push_back(std::move(p));
    }

    std::vector<Pair> remaining;
    remaining.reserve(pairs_.size() + fresh.size());
    for (auto& p : pairs_) {
      bool drop = lh.divides(p.lcm) && !(lead(p.i).lcm(lh) == p.lcm) &&
                  !(lh.lcm(lead(p.j)) == p.lcm);
      if (!drop) remaining.push_back(std::move(p));
    }
    for (auto& p : fresh) remaining.push_back(std::move(p));
    pairs_ = std::move(remaining);

    std::vector<std::size_t> next;
    for (auto g : active_) {
      if (!lh.divides(lead(g))) next.push_back(g);
    }
    next.push_back(hi);
    active_ = std::move(next);
    return false;
  }

  ReducedGB finish() {
    ReducedGB gb;
    gb.ring = ring_;
    gb.order = order_;
    std::vector<std::size_t> basis = active_;
    std::sort(basis.begin(), basis.end(),
              [&](std::size_t a, std::size_t b) { return order_.greater(lead(b), lead(a)); });
    std::vector<std::vector<Term>> reduced;
    for (auto k : basis) {
      std::vector<std::size_t> others;
      for (auto o : basis) {
        if (o != k) others.push_back(o);
      }
      const auto& p = polys_[k];
      std::vector<Term> tail(p.begin() + 1, p.end());
      auto r = reduce_tail(std::move(tail), others);
      std::vector<Term> full;
      full.reserve(r.size() + 1);
      full.push_back(p.front());
      for (auto& t : r) full.push_back(std::move(t));
      reduced.push_back(std::move(full));
    }
    for (auto& terms : reduced) {
      gb.leads.push_back(terms.front().mono);
      gb.basis.push_back(Polynomial::from_terms(ring_, terms));
      gb.sorted_terms.push_back(std::move(terms));
    }
    return gb;
  }

  // Like reduce() but without making the result monic.
  std::vector<Term> reduce_tail(std::vector<Term> h, const std::vector<std::size_t>& basis) const {
    std::vector<Term> rem;
    std::size_t start = 0;
    while (start < h.size()) {
      const Term& t = h[start];
      const std::vector<Term>* divisor = nullptr;
      for (auto k : basis) {
        if (lead(k).divides(t.mono)) {
          divisor = &polys_[k];
          break;
        }
      }
      if (!divisor) {
        rem.push_back(t);
        ++start;
        continue;
      }
      Monomial q = t.mono.quotient(divisor->front().mono);
      Rational c = t.coeff;
      h = detail::sub_mul_terms(field_, order_, std::span<const Term>(h).subspan(start + 1), c, q,
                                std::span<const Term>(*divisor).subspan(1));
      start = 0;
    }
    return rem;
  }

  RingPtr ring_;
  const FieldSpec& field_;
  MonomialOrder order_;
  std::vector<std::vector<Term>> polys_;
  std::vector<std::uint32_t> sugar_;
  std::vector<std::size_t> active_;
  std::vector<Pair> pairs_;
};

}  // namespace

ReducedGB reduced_groebner(const Ideal& ideal, const MonomialOrder& order) {
  if (order.kind() == MonomialOrder::Kind::BlockElimination &&
      order.front().size() != ideal.ring()->size()) {
    throw Error(ErrorCode::MismatchedVariables, "block order size differs from ring size");
  }
  return Buchberger(ideal.ring(), order).run(ideal.generators());
}

Polynomial normal_form(const Polynomial& f, const ReducedGB& gb) {
  require_same_ring(f.ring(), gb.ring);
  const auto& field = gb.ring->field();
  std::vector<Term> h = f.terms();
  detail::sort_terms(gb.order, h);
  std::vector<Term> rem;
  std::size_t start = 0;
  while (start < h.size()) {
    const Term& t = h[start];
    std::size_t k = 0;
    while (k < gb.leads.size() && !gb.leads[k].divides(t.mono)) ++k;
    if (k == gb.leads.size()) {
      rem.push_back(t);
      ++start;
      continue;
    }
    const auto& g = gb.sorted_terms[k];
    Monomial q = t.mono.quotient(g.front().mono);
    Rational c = t.coeff;
    h = detail::sub_mul_terms(field, gb.order, std::span<const Term>(h).subspan(start + 1), c, q,
                              std::span<const Term>(g).subspan(1));
    start = 0;
  }
  return Polynomial::from_terms(gb.ring, std::move(rem));
}

}  // namespace nabla
