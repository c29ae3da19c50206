#include "nabla/exactalg/monomial.hpp"

#include <algorithm>
#include <numeric>

#include "nabla/error.hpp"

namespace nabla {

Monomial::Monomial(std::vector<Exponent> exps) : exps_(std::move(exps)) {
  degree_ = std::accumulate(exps_.begin(), exps_.end(), Exponent{0});
}

Monomial Monomial::variable(std::size_t nvars, std::size_t index, Exponent power) {
  Monomial m(nvars);
  m.exps_.at(index) = power;
  m.degree_ = power;
  return m;
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

Monomial Monomial::quotient(const Monomial& divisor) const {
  Monomial q(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) q.exps_[i] -= divisor.exps_[i];
  q.degree_ -= divisor.degree_;
  return q;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial r(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    r.exps_[i] = std::max(exps_[i], other.exps_[i]);
    r.degree_ += r.exps_[i];
  }
  return r;
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] != 0 && other.exps_[i] != 0) return false;
  }
  return true;
}

Monomial Monomial::support() const {
  Monomial r(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] != 0) {
      r.exps_[i] = 1;
      ++r.degree_;
    }
  }
  return r;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r(a);
  for (std::size_t i = 0; i < a.exps_.size(); ++i) r.exps_[i] += b.exps_[i];
  r.degree_ += b.degree_;
  return r;
}

std::string Monomial::to_string(const std::vector<std::string>& names) const {
  if (is_one()) return "1";
  std::string out;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += names.at(i);
    if (exps_[i] > 1) out += "^" + std::to_string(exps_[i]);
  }
  return out;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (auto e : m.exponents()) h = (h ^ e) * 1099511628211ull;
  return h;
}

namespace {

// Graded reverse lex restricted to variables with mask[i] == want (all when mask is empty).
std::strong_ordering grevlex_on(const Monomial& a, const Monomial& b, const std::vector<bool>& mask,
                                bool want) {
  Monomial::Exponent da = 0;
  Monomial::Exponent db = 0;
  const std::size_t n = a.size();
  if (mask.empty()) {
    da = a.degree();
    db = b.degree();
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      if (mask[i] == want) {
        da += a[i];
        db += b[i];
      }
    }
  }
  if (da != db) return da <=> db;
  for (std::size_t k = n; k-- > 0;) {
    if (!mask.empty() && mask[k] != want) continue;
    if (a[k] != b[k]) return b[k] <=> a[k];
  }
  return std::strong_ordering::equal;
}

}  // namespace

std::strong_ordering MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  switch (kind_) {
    case Kind::Lex:
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] <=> b[i];
      }
      return std::strong_ordering::equal;
    case Kind::GrevLex:
      return grevlex_on(a, b, {}, true);
    case Kind::BlockElimination: {
      auto c = grevlex_on(a, b, front_, true);
      if (c != 0) return c;
      return grevlex_on(a, b, front_, false);
    }
  }
  return std::strong_ordering::equal;
}

std::string MonomialOrder::key() const {
  switch (kind_) {
    case Kind::Lex: return "lex";
    case Kind::GrevLex: return "grevlex";
    case Kind::BlockElimination: {
      std::string k = "block:";
      for (bool f : front_) k += f ? '1' : '0';
      return k;
    }
  }
  return "?";
}

std::strong_ordering compare_monomials(const MonomialOrder& order, const Monomial& a,
                                       const Monomial& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::MismatchedVariables, "monomials have " + std::to_string(a.size()) +
                                                    " and " + std::to_string(b.size()) +
                                                    " variables");
  }
  if (order.kind() == MonomialOrder::Kind::BlockElimination && order.front().size() != a.size()) {
    throw Error(ErrorCode::MismatchedVariables, "block order size differs from monomial size");
  }
  return order.compare(a, b);
}

}  // namespace nabla
