#include "nabla/exactalg/field.hpp"

#include <set>

#include "nabla/error.hpp"

namespace nabla {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

FieldSpec FieldSpec::prime_field(std::uint64_t p) {
  if (!is_prime(p)) {
    throw Error(ErrorCode::InvalidArgument, "field characteristic " + std::to_string(p) +
                                                " is not prime");
  }
  return FieldSpec(Kind::PrimeField, p);
}

Rational FieldSpec::normalize(const Rational& value) const {
  if (kind_ == Kind::Rationals) return value;
  Integer p(static_cast<unsigned long>(p_));
  Integer num = value.get_num() % p;
  Integer den = value.get_den() % p;
  if (den == 0) throw Error(ErrorCode::DivisionByZero, "denominator divisible by p");
  Integer den_inv;
  mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
  Integer r = (num * den_inv) % p;
  if (r < 0) r += p;
  return Rational(r);
}

Rational FieldSpec::inv(const Rational& a) const {
  Rational na = normalize(a);
  if (na == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  return normalize(Rational(1) / na);
}

std::string FieldSpec::name() const {
  return kind_ == Kind::Rationals ? std::string("QQ") : "F" + std::to_string(p_);
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Ring::Ring(FieldSpec field, std::vector<std::string> variables)
    : field_(field), vars_(std::move(variables)) {
  std::set<std::string> seen;
  for (const auto& v : vars_) {
    if (v.empty() || !seen.insert(v).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate or empty variable name '" + v + "'");
    }
  }
}

std::optional<std::size_t> Ring::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i] == name) return i;
  }
  return std::nullopt;
}

void require_same_ring(const RingPtr& a, const RingPtr& b) {
  if (!same_ring(a, b)) throw Error(ErrorCode::RingMismatch, "operands live in different rings");
}

}  // namespace nabla
