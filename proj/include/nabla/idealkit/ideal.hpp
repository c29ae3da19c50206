#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "nabla/exactalg/polynomial.hpp"

namespace nabla {

/// Reduced Gröbner basis: monic, inter-reduced, sorted by ascending leading
/// monomial. `sorted_terms[i]` holds basis[i]'s terms ordered by `order`.
struct ReducedGB {
  RingPtr ring;
  MonomialOrder order = MonomialOrder::grevlex();
  std::vector<Polynomial> basis;
  std::vector<Monomial> leads;
  std::vector<std::vector<Term>> sorted_terms;

  bool is_unit() const { return basis.size() == 1 && basis.front().is_constant(); }
  bool is_zero() const { return basis.empty(); }
};

/// A finitely generated ideal. Generators never include the zero polynomial.
/// Gröbner bases are cached per monomial order and shared between copies.
class Ideal {
 public:
  explicit Ideal(RingPtr ring, std::vector<Polynomial> generators = {});

  static Ideal unit(RingPtr ring) {
    return Ideal(ring, {Polynomial::constant(ring, Rational(1))});
  }

  const RingPtr& ring() const noexcept { return ring_; }
  const std::vector<Polynomial>& generators() const noexcept { return gens_; }

  const ReducedGB& groebner(const MonomialOrder& order = MonomialOrder::grevlex()) const;

  bool is_unit() const { return groebner().is_unit(); }
  bool is_zero() const { return gens_.empty(); }

  Ideal with(const Polynomial& f) const;
  Ideal with(const std::vector<Polynomial>& fs) const;
  friend Ideal operator+(const Ideal& a, const Ideal& b);

  /// Moves generators into `target` via Polynomial::rename.
  Ideal rename(const RingPtr& target, std::span<const std::size_t> index_map) const;

 private:
  struct Cache {
    std::mutex mutex;
    std::map<std::string, std::shared_ptr<const ReducedGB>> entries;
  };

  RingPtr ring_;
  std::vector<Polynomial> gens_;
  std::shared_ptr<Cache> cache_;
};

/// Subring keeping the variables with keep[i] == true, in their original order.
RingPtr subring(const RingPtr& ring, const std::vector<bool>& keep);

/// Ring with extra variables appended (names made unique with trailing '_').
RingPtr extend_ring(const RingPtr& ring, const std::vector<std::string>& extra);

ReducedGB reduced_groebner(const Ideal& ideal, const MonomialOrder& order);

Polynomial normal_form(const Polynomial& f, const ReducedGB& gb);

bool ideal_member(const Polynomial& f, const Ideal& ideal);
bool ideal_equal(const Ideal& a, const Ideal& b);
/// small ⊆ big
bool ideal_contains(const Ideal& big, const Ideal& small);

/// I ∩ κ[kept variables], as an ideal of the subring of kept variables.
Ideal eliminate(const Ideal& ideal, const std::vector<bool>& drop);

/// Rabinowitsch: f ∈ √I iff 1 ∈ I + (1 - t f).
bool radical_member(const Polynomial& f, const Ideal& ideal);

/// Krull dimension of ring/I; -1 for the unit ideal.
long krull_dim(const Ideal& ideal);

/// Maximum cardinality set of variables with no leading monomial supported on it.
std::vector<std::size_t> max_independent_set(const std::vector<Monomial>& leads, std::size_t nvars);

/// κ-basis of ring/I in increasing order; NotArtinian when infinite.
std::vector<Monomial> standard_monomials(const Ideal& ideal,
                                         const MonomialOrder& order = MonomialOrder::grevlex());

/// Minimal polynomial of variable `var` modulo a zero-dimensional ideal.
std::vector<Rational> minimal_polynomial(const Ideal& ideal, std::size_t var);

struct LinearStrip {
  /// Isomorphic presentation in the surviving variables.
  Ideal ideal;
  /// Original indices of the surviving variables.
  std::vector<std::size_t> kept;
};

/// Repeatedly removes a variable x_i occurring in some generator only as c*x_i,
/// substituting its graph into the rest. The quotient ring is unchanged up to
/// isomorphism.
LinearStrip strip_linear_variables(const Ideal& ideal);

/// Seidenberg: adjoin the squarefree part of each variable's minimal polynomial.
Ideal zero_dim_radical(const Ideal& ideal);

struct RadicalClosure {
  Ideal ideal;
  bool certified = false;
  /// How radicality was established, or why it was not.
  std::string certificate;
};

/// Sound under-approximation I ⊆ J ⊆ √I, certified equal to √I when one of the
/// implemented radicality criteria applies.
RadicalClosure radical_closure(const Ideal& ideal);

/// Sufficient criteria for a radical ideal. Returns the criterion name or "".
std::string radical_certificate(const Ideal& ideal);

}  // namespace nabla
