#include "nabla/exactalg/univariate.hpp"

#include <algorithm>
#include <set>

#include "nabla/error.hpp"

namespace nabla {

Univariate::Univariate(FieldSpec field, std::vector<Rational> coeffs)
    : field_(field), coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c = field_.normalize(c);
  trim();
}

void Univariate::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Univariate Univariate::monic() const {
  if (is_zero()) return *this;
  Rational inv = field_.inv(leading());
  std::vector<Rational> c = coeffs_;
  for (auto& x : c) x = field_.mul(x, inv);
  return Univariate(field_, std::move(c));
}

Univariate Univariate::derivative() const {
  std::vector<Rational> c;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) c.push_back(coeffs_[i] * Rational(i));
  return Univariate(field_, std::move(c));
}

Rational Univariate::evaluate(const Rational& t) const {
  Rational v = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) v = field_.normalize(v * t + coeffs_[i]);
  return v;
}

std::pair<Univariate, Univariate> Univariate::divmod(const Univariate& divisor) const {
  if (divisor.is_zero()) throw Error(ErrorCode::DivisionByZero, "univariate division by zero");
  std::vector<Rational> rem = coeffs_;
  const long dd = divisor.degree();
  if (degree() < dd) return {Univariate(field_, {}), *this};
  std::vector<Rational> quot(static_cast<std::size_t>(degree() - dd + 1), Rational(0));
  Rational lead_inv = field_.inv(divisor.leading());
  for (long k = degree() - dd; k >= 0; --k) {
    Rational q = field_.mul(rem[static_cast<std::size_t>(k + dd)], lead_inv);
    quot[static_cast<std::size_t>(k)] = q;
    if (q == 0) continue;
    for (long i = 0; i <= dd; ++i) {
      auto& r = rem[static_cast<std::size_t>(k + i)];
      r = field_.sub(r, field_.mul(q, divisor.coeffs_[static_cast<std::size_t>(i)]));
    }
  }
  return {Univariate(field_, std::move(quot)), Univariate(field_, std::move(rem))};
}

Univariate gcd(const Univariate& a, const Univariate& b) {
  Univariate x = a;
  Univariate y = b;
  while (!y.is_zero()) {
    auto r = x.divmod(y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

Univariate squarefree_part(const Univariate& f) {
  if (f.is_zero()) return f;
  auto g = gcd(f, f.derivative());
  return f.divmod(g).first.monic();
}

namespace {

std::vector<Integer> positive_divisors(Integer n) {
  if (n < 0) n = -n;
  std::vector<Integer> out;
  if (n == 0) return out;
  for (Integer d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  return out;
}

}  // namespace

std::vector<Rational> rational_roots(const Univariate& f) {
  std::set<Rational> roots;
  if (f.degree() < 1) return {};
  const auto& field = f.field();
  if (!field.is_rationals()) {
    const auto p = field.characteristic();
    if (p > 65536) throw Error(ErrorCode::InvalidArgument, "root search over large prime field");
    for (std::uint64_t t = 0; t < p; ++t) {
      Rational r(static_cast<unsigned long>(t));
      if (f.evaluate(r) == 0) roots.insert(r);
    }
    return {roots.begin(), roots.end()};
  }
  // Strip factors of t, then clear denominators.
  std::size_t shift = 0;
  while (f.coeffs()[shift] == 0) ++shift;
  if (shift > 0) roots.insert(Rational(0));
  Integer lcm_den = 1;
  for (const auto& c : f.coeffs()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> ints;
  for (std::size_t i = shift; i < f.coeffs().size(); ++i) {
    Rational v = f.coeffs()[i] * lcm_den;
    ints.push_back(v.get_num());
  }
  for (const auto& p : positive_divisors(ints.front())) {
    for (const auto& q : positive_divisors(ints.back())) {
      for (int sign : {1, -1}) {
        Rational r(p * sign, q);
        r.canonicalize();
        if (f.evaluate(r) == 0) roots.insert(r);
      }
    }
  }
  return {roots.begin(), roots.end()};
}

}  // namespace nabla
