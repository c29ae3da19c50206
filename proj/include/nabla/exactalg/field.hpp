#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace nabla {

using Integer = mpz_class;
using Rational = mpq_class;

/// The ground field: either QQ or F_p. Elements of F_p are stored as rationals
/// with canonical integer representatives in [0, p).
class FieldSpec {
 public:
  enum class Kind { Rationals, PrimeField };

  static FieldSpec rationals() { return FieldSpec(Kind::Rationals, 0); }
  static FieldSpec prime_field(std::uint64_t p);

  Kind kind() const noexcept { return kind_; }
  std::uint64_t characteristic() const noexcept { return p_; }
  bool is_rationals() const noexcept { return kind_ == Kind::Rationals; }

  Rational normalize(const Rational& value) const;
  Rational add(const Rational& a, const Rational& b) const { return normalize(a + b); }
  Rational sub(const Rational& a, const Rational& b) const { return normalize(a - b); }
  Rational mul(const Rational& a, const Rational& b) const { return normalize(a * b); }
  Rational neg(const Rational& a) const { return normalize(-a); }
  Rational inv(const Rational& a) const;
  Rational div(const Rational& a, const Rational& b) const { return mul(a, inv(b)); }

  /// "QQ" or "F<p>".
  std::string name() const;

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
    return a.kind_ == b.kind_ && a.p_ == b.p_;
  }

 private:
  FieldSpec(Kind kind, std::uint64_t p) : kind_(kind), p_(p) {}

  Kind kind_;
  std::uint64_t p_;
};

bool is_prime(std::uint64_t n);

std::string to_string(const Rational& q);

/// A polynomial ring: ground field plus an ordered list of variable names.
/// Variable identity is positional.
class Ring {
 public:
  Ring(FieldSpec field, std::vector<std::string> variables);

  const FieldSpec& field() const noexcept { return field_; }
  const std::vector<std::string>& variables() const noexcept { return vars_; }
  std::size_t size() const noexcept { return vars_.size(); }
  const std::string& variable(std::size_t i) const { return vars_.at(i); }
  std::optional<std::size_t> index_of(const std::string& name) const;

  friend bool operator==(const Ring& a, const Ring& b) {
    return a.field_ == b.field_ && a.vars_ == b.vars_;
  }

 private:
  FieldSpec field_;
  std::vector<std::string> vars_;
};

using RingPtr = std::shared_ptr<const Ring>;

inline RingPtr make_ring(FieldSpec field, std::vector<std::string> variables) {
  return std::make_shared<const Ring>(field, std::move(variables));
}

inline bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || *a == *b; }

void require_same_ring(const RingPtr& a, const RingPtr& b);

}  // namespace nabla
