#include "nabla/exactalg/polynomial.hpp"

#include <algorithm>
#include <unordered_map>

#include "nabla/error.hpp"

namespace nabla {

namespace {

const MonomialOrder& canonical_order() {
  static const MonomialOrder order = MonomialOrder::grevlex();
  return order;
}

}  // namespace

namespace detail {

void sort_terms(const MonomialOrder& order, std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(),
            [&](const Term& a, const Term& b) { return order.greater(a.mono, b.mono); });
}

std::vector<Term> add_terms(const FieldSpec& field, const MonomialOrder& order,
                            const std::vector<Term>& a, const std::vector<Term>& b) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    auto c = order.compare(a[i].mono, b[j].mono);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(b[j++]);
    } else {
      Rational s = field.add(a[i].coeff, b[j].coeff);
      if (s != 0) out.push_back({a[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.push_back(b[j]);
  return out;
}

std::vector<Term> sub_mul_terms(const FieldSpec& field, const MonomialOrder& order,
                                std::span<const Term> a, const Rational& c, const Monomial& m,
                                std::span<const Term> b) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  Monomial bj;
  bool have_bj = false;
  while (i < a.size() || j < b.size()) {
    if (j < b.size() && !have_bj) {
      bj = b[j].mono * m;
      have_bj = true;
    }
    if (j >= b.size()) {
      out.push_back(a[i++]);
      continue;
    }
    auto cmp = i < a.size() ? order.compare(a[i].mono, bj) : std::strong_ordering::less;
    if (cmp > 0) {
      out.push_back(a[i++]);
    } else if (cmp < 0) {
      out.push_back({std::move(bj), field.neg(field.mul(c, b[j].coeff))});
      ++j;
      have_bj = false;
    } else {
      Rational s = field.sub(a[i].coeff, field.mul(c, b[j].coeff));
      if (s != 0) out.push_back({a[i].mono, std::move(s)});
      ++i;
      ++j;
      have_bj = false;
    }
  }
  return out;
}

}  // namespace detail

Polynomial Polynomial::constant(RingPtr ring, const Rational& c) {
  return monomial(ring, Monomial(ring->size()), c);
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t index) {
  auto n = ring->size();
  return monomial(std::move(ring), Monomial::variable(n, index), Rational(1));
}

Polynomial Polynomial::monomial(RingPtr ring, Monomial m, const Rational& c) {
  if (m.size() != ring->size()) {
    throw Error(ErrorCode::MismatchedVariables, "monomial size differs from ring size");
  }
  Rational v = ring->field().normalize(c);
  std::vector<Term> terms;
  if (v != 0) terms.push_back({std::move(m), std::move(v)});
  return Polynomial(std::move(ring), std::move(terms));
}

Polynomial Polynomial::from_terms(RingPtr ring, std::vector<Term> terms) {
  const auto& field = ring->field();
  for (const auto& t : terms) {
    if (t.mono.size() != ring->size()) {
      throw Error(ErrorCode::MismatchedVariables, "term size differs from ring size");
    }
  }
  detail::sort_terms(canonical_order(), terms);
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty()) {
        out.back().coeff = field.normalize(out.back().coeff);
        if (out.back().coeff == 0) out.pop_back();
      }
      out.push_back(std::move(t));
    }
  }
  if (!out.empty()) {
    out.back().coeff = field.normalize(out.back().coeff);
    if (out.back().coeff == 0) out.pop_back();
  }
  return Polynomial(std::move(ring), std::move(out));
}

long Polynomial::total_degree() const {
  long d = -1;
  for (const auto& t : terms_) d = std::max<long>(d, t.mono.degree());
  return d;
}

Rational Polynomial::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
  return Rational(0);
}

const Term& Polynomial::leading_term(const MonomialOrder& order) const {
  if (terms_.empty()) throw Error(ErrorCode::InvalidArgument, "leading term of zero polynomial");
  if (order.kind() == MonomialOrder::Kind::GrevLex) return terms_.front();
  const Term* best = &terms_.front();
  for (const auto& t : terms_) {
    if (order.greater(t.mono, best->mono)) best = &t;
  }
  return *best;
}

Polynomial Polynomial::monic(const MonomialOrder& order) const {
  if (is_zero()) return *this;
  return scaled(ring_->field().inv(leading_term(order).coeff));
}

std::vector<bool> Polynomial::support() const {
  std::vector<bool> s(ring_->size(), false);
  for (const auto& t : terms_) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (t.mono[i] != 0) s[i] = true;
    }
  }
  return s;
}

bool Polynomial::uses_variable(std::size_t i) const {
  return std::any_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.mono[i] != 0; });
}

Polynomial Polynomial::homogeneous_part(unsigned degree) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.mono.degree() == degree) out.push_back(t);
  }
  return Polynomial(ring_, std::move(out));
}

Polynomial Polynomial::operator-() const { return scaled(Rational(-1)); }

Polynomial Polynomial::scaled(const Rational& c) const {
  const auto& field = ring_->field();
  Rational v = field.normalize(c);
  if (v == 0) return zero(ring_);
  std::vector<Term> out = terms_;
  for (auto& t : out) t.coeff = field.mul(t.coeff, v);
  return Polynomial(ring_, std::move(out));
}

Polynomial Polynomial::shifted(const Monomial& m) const {
  std::vector<Term> out = terms_;
  for (auto& t : out) t.mono = t.mono * m;
  return Polynomial(ring_, std::move(out));
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial result = constant(ring_, Rational(1));
  Polynomial base = *this;
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.mono[var] == 0) continue;
    std::vector<Monomial::Exponent> e = t.mono.exponents();
    Rational c = t.coeff * Rational(e[var]);
    --e[var];
    out.push_back({Monomial(std::move(e)), c});
  }
  return from_terms(ring_, std::move(out));
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  if (point.size() != ring_->size()) {
    throw Error(ErrorCode::MismatchedVariables, "evaluation point has wrong size");
  }
  const auto& field = ring_->field();
  Rational sum = 0;
  for (const auto& t : terms_) {
    Rational v = t.coeff;
    for (std::size_t i = 0; i < point.size(); ++i) {
      for (unsigned k = 0; k < t.mono[i]; ++k) v *= point[i];
    }
    sum += v;
  }
  return field.normalize(sum);
}

Polynomial Polynomial::substitute(std::span<const Polynomial> images, const RingPtr& target) const {
  if (images.size() != ring_->size()) {
    throw Error(ErrorCode::MissingAssignment, "substitution needs one image per variable");
  }
  for (const auto& img : images) require_same_ring(img.ring(), target);
  std::vector<std::vector<Polynomial>> powers(images.size());
  auto power = [&](std::size_t var, unsigned e) -> const Polynomial& {
    auto& cache = powers[var];
    if (cache.empty()) cache.push_back(constant(target, Rational(1)));
    while (cache.size() <= e) cache.push_back(cache.back() * images[var]);
    return cache[e];
  };
  std::vector<Term> acc;
  for (const auto& t : terms_) {
    Polynomial prod = constant(target, t.coeff);
    for (std::size_t i = 0; i < images.size() && !prod.is_zero(); ++i) {
      if (t.mono[i] != 0) prod = prod * power(i, t.mono[i]);
    }
    acc.insert(acc.end(), prod.terms_.begin(), prod.terms_.end());
  }
  return from_terms(target, std::move(acc));
}

Polynomial Polynomial::rename(const RingPtr& target, std::span<const std::size_t> index_map) const {
  if (index_map.size() != ring_->size()) {
    throw Error(ErrorCode::MissingAssignment, "renaming needs one index per variable");
  }
  if (target->field() != ring_->field()) throw Error(ErrorCode::FieldMismatch, "rename");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    std::vector<Monomial::Exponent> e(target->size(), 0);
    for (std::size_t i = 0; i < index_map.size(); ++i) {
      if (t.mono[i] == 0) continue;
      if (index_map[i] >= target->size()) {
        throw Error(ErrorCode::MissingAssignment, "renaming target index out of range");
      }
      e[index_map[i]] += t.mono[i];
    }
    out.push_back({Monomial(std::move(e)), t.coeff});
  }
  return from_terms(target, std::move(out));
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (t.mono.is_one()) {
      out += nabla::to_string(c);
    } else {
      if (c != 1) out += nabla::to_string(c) + "*";
      out += t.mono.to_string(ring_->variables());
    }
  }
  return out;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  require_same_ring(a.ring_, b.ring_);
  return Polynomial(a.ring_,
                    detail::add_terms(a.ring_->field(), canonical_order(), a.terms_, b.terms_));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  require_same_ring(a.ring_, b.ring_);
  return Polynomial(a.ring_, detail::sub_mul_terms(a.ring_->field(), canonical_order(), a.terms_,
                                                   Rational(1), Monomial(a.ring_->size()),
                                                   b.terms_));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same_ring(a.ring_, b.ring_);
  if (a.is_zero() || b.is_zero()) return Polynomial::zero(a.ring_);
  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  acc.reserve(a.size() * b.size());
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) acc[s.mono * t.mono] += s.coeff * t.coeff;
  }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc) terms.push_back({m, std::move(c)});
  return Polynomial::from_terms(a.ring_, std::move(terms));
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (!same_ring(a.ring_, b.ring_) || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) {
      return false;
    }
  }
  return true;
}

Polynomial poly_combine(CombineOp op, const Polynomial& f, const Polynomial& g) {
  require_same_ring(f.ring(), g.ring());
  switch (op) {
    case CombineOp::Add: return f + g;
    case CombineOp::Sub: return f - g;
    case CombineOp::Mul: return f * g;
  }
  return f;
}

Polynomial substitute(const Polynomial& f, const std::map<std::string, Polynomial>& assignment,
                      const RingPtr& target) {
  const auto& vars = f.ring()->variables();
  auto used = f.support();
  std::vector<Polynomial> images;
  images.reserve(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) {
    auto it = assignment.find(vars[i]);
    if (it == assignment.end()) {
      if (used[i]) throw Error(ErrorCode::MissingAssignment, "no image for variable " + vars[i]);
      images.push_back(Polynomial::zero(target));
    } else {
      images.push_back(it->second);
    }
  }
  return f.substitute(images, target);
}

}  // namespace nabla
