#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace nabla {

class Monomial {
 public:
  using Exponent = std::uint32_t;

  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<Exponent> exps);
  Monomial(std::initializer_list<Exponent> exps) : Monomial(std::vector<Exponent>(exps)) {}

  static Monomial variable(std::size_t nvars, std::size_t index, Exponent power = 1);

  std::size_t size() const noexcept { return exps_.size(); }
  Exponent operator[](std::size_t i) const { return exps_[i]; }
  Exponent degree() const noexcept { return degree_; }
  bool is_one() const noexcept { return degree_ == 0; }
  const std::vector<Exponent>& exponents() const noexcept { return exps_; }

  bool divides(const Monomial& other) const;
  /// Precondition: divides(other) would hold for (*this / divisor).
  Monomial quotient(const Monomial& divisor) const;
  Monomial lcm(const Monomial& other) const;
  bool coprime(const Monomial& other) const;
  /// Squarefree part: every positive exponent set to 1.
  Monomial support() const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }

  /// Lexicographic comparison of exponent vectors; used only as a container key.
  friend bool operator<(const Monomial& a, const Monomial& b) { return a.exps_ < b.exps_; }

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  std::vector<Exponent> exps_;
  Exponent degree_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

/// Lex, graded reverse lex, or a two-block elimination order in which the
/// "front" variables are compared first (grevlex within each block).
class MonomialOrder {
 public:
  enum class Kind { Lex, GrevLex, BlockElimination };

  static MonomialOrder lex() { return MonomialOrder(Kind::Lex, {}); }
  static MonomialOrder grevlex() { return MonomialOrder(Kind::GrevLex, {}); }
  static MonomialOrder block_elimination(std::vector<bool> front) {
    return MonomialOrder(Kind::BlockElimination, std::move(front));
  }

  Kind kind() const noexcept { return kind_; }
  const std::vector<bool>& front() const noexcept { return front_; }

  /// No size checks; callers must pass monomials of equal length.
  std::strong_ordering compare(const Monomial& a, const Monomial& b) const;
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  /// Stable textual key, e.g. "grevlex" or "block:1100".
  std::string key() const;

  friend bool operator==(const MonomialOrder& a, const MonomialOrder& b) {
    return a.kind_ == b.kind_ && a.front_ == b.front_;
  }

 private:
  MonomialOrder(Kind kind, std::vector<bool> front) : kind_(kind), front_(std::move(front)) {}

  Kind kind_;
  std::vector<bool> front_;
};

/// Checked comparison: throws MismatchedVariables when sizes differ.
std::strong_ordering compare_monomials(const MonomialOrder& order, const Monomial& a,
                                       const Monomial& b);

}  // namespace nabla
