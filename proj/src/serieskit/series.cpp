#include "nabla/serieskit/series.hpp"

#include <sstream>

#include "nabla/error.hpp"

namespace nabla {

std::string to_string(SeriesKind k) {
  switch (k) {
    case SeriesKind::IgusaZeta: return "igusa_zeta";
    case SeriesKind::Poincare: return "poincare";
    case SeriesKind::AutoIgusaWeightless: return "auto_igusa_weightless";
    case SeriesKind::Reduced: return "sigma";
  }
  return "";
}

MotivicClass RationalSeriesForm::coefficient(std::size_t n) const {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "series indices start at 1");
  if (n <= tail.k) return polynomial.at(n - 1);
  return tail.numerator.scale_l(tail.b + tail.q * static_cast<long>(n));
}

std::vector<MotivicClass> RationalSeriesForm::expand(std::size_t order) const {
  std::vector<MotivicClass> out;
  for (std::size_t n = 1; n <= order; ++n) out.push_back(coefficient(n));
  return out;
}

namespace {

std::string parenthesized(const MotivicClass& c) {
  auto s = c.to_string();
  return c.terms().size() > 1 ? "(" + s + ")" : s;
}

std::string l_power_t(long q) {
  if (q == 0) return "t";
  return (q == 1 ? std::string("L") : "L^" + std::to_string(q)) + "*t";
}

}  // namespace

std::string RationalSeriesForm::to_string() const {
  std::ostringstream os;
  for (std::size_t n = 1; n <= polynomial.size(); ++n) {
    if (polynomial[n - 1].is_zero()) continue;
    os << parenthesized(polynomial[n - 1]) << "*t^" << n << " + ";
  }
  auto numerator = tail.numerator.scale_l(tail.b);
  const auto lt = l_power_t(tail.q);
  const auto base = tail.q == 0 ? lt : "(" + lt + ")";
  if (numerator.is_zero()) return os.str() + "0";
  if (!(numerator == MotivicClass::one())) os << parenthesized(numerator) << "*";
  os << base;
  if (tail.k > 0) os << "^" << tail.k + 1;
  os << "/(1 - " << lt << ")";
  return os.str();
}

namespace {

void check_dimension(const SchemePresentation& x, long d) {
  const long dim = x.dimension();
  if (dim != d) {
    throw Error(ErrorCode::DimensionMismatch,
                "asserted dimension " + std::to_string(d) + " but krull_dim is " + std::to_string(dim));
  }
}

}  // namespace

TruncatedSeries igusa_zeta_truncated(const SchemePresentation& x, const PointSystem& system, std::size_t order,
                                     long d) {
  check_dimension(x, d);
  TruncatedSeries s{SeriesKind::IgusaZeta, x.label(), system.describe(), {}, {}};
  for (std::size_t n = 1; n <= order; ++n) {
    const auto& fp = system.member(static_cast<unsigned>(n));
    auto arc = weil_restrict(x, fp);
    s.coefficients.push_back(class_of_scheme(arc.presentation).scale_l(-d * static_cast<long>(fp.length())));
    s.lengths.push_back(fp.length());
  }
  return s;
}

TruncatedSeries poincare_truncated(const SchemePresentation& x, const PointSystem& system, std::size_t order,
                                   long d, unsigned max_depth) {
  check_dimension(x, d);
  TruncatedSeries s{SeriesKind::Poincare, x.label(), system.describe(), {}, {}};
  for (std::size_t n = 1; n <= order; ++n) {
    const auto level = static_cast<unsigned>(n);
    auto tr = stabilized_trace(x, system, level, std::max(max_depth, level + 2));
    if (!tr.stabilized) {
      throw Error(ErrorCode::TraceNotStabilized, "trace at level " + std::to_string(n) + " did not stabilize");
    }
    const auto length = system.member(level).length();
    s.coefficients.push_back(
        class_of_scheme(SchemePresentation(tr.ideal)).scale_l(-d * static_cast<long>(length)));
    s.lengths.push_back(length);
  }
  return s;
}

TruncatedSeries auto_igusa_weightless_truncated(const PointSystem& system, std::size_t order) {
  TruncatedSeries s{SeriesKind::AutoIgusaWeightless, "", system.describe(), {}, {}};
  for (std::size_t n = 1; n <= order; ++n) {
    const auto& fp = system.member(static_cast<unsigned>(n));
    auto arc = auto_arc(fp);
    s.coefficients.push_back(class_of_scheme(arc.presentation).scale_l(-arc.presentation.dimension()));
    s.lengths.push_back(fp.length());
  }
  return s;
}

namespace {

std::optional<std::size_t> first_tail_mismatch(const TruncatedSeries& series, const RationalSeriesForm& form) {
  for (std::size_t n = form.tail.k + 1; n <= series.order(); ++n) {
    if (!(form.coefficient(n) == series.coefficient(n))) return n;
  }
  return std::nullopt;
}

RationalSeriesForm form_with_tail(const TruncatedSeries& series, SeriesTail tail) {
  RationalSeriesForm form;
  form.polynomial.assign(series.coefficients.begin(),
                         series.coefficients.begin() + static_cast<long>(tail.k));
  form.tail = std::move(tail);
  return form;
}

}  // namespace

RationalSeriesForm stable_closed_form(const TruncatedSeries& series, std::size_t k, const MotivicClass& mu,
                                      long q, long b) {
  if (k >= series.order()) {
    throw Error(ErrorCode::InvalidArgument, "tail start " + std::to_string(k) + " must be below the truncation order " +
                                                std::to_string(series.order()));
  }
  auto form = form_with_tail(series, SeriesTail{mu, q, b, k});
  if (auto bad = first_tail_mismatch(series, form)) {
    throw Error(ErrorCode::TailMismatch, "tail disagrees with the series at index " + std::to_string(*bad));
  }
  return form;
}

std::optional<RationalSeriesForm> recognize_rational(const TruncatedSeries& series) {
  const std::size_t order = series.order();
  for (std::size_t k = 0; k + 3 <= order; ++k) {
    for (long step = 0; step <= 16; ++step) {
      const long q = step % 2 == 1 ? (step + 1) / 2 : -(step / 2);
      auto mu = series.coefficient(k + 1).scale_l(-q * static_cast<long>(k + 1));
      auto form = form_with_tail(series, SeriesTail{mu, q, 0, k});
      if (!first_tail_mismatch(series, form)) return form;
    }
  }
  return std::nullopt;
}

TruncatedSeries sigma_series(const TruncatedSeries& series) {
  TruncatedSeries out = series;
  out.kind = SeriesKind::Reduced;
  for (auto& c : out.coefficients) c = sigma_reduce(c);
  return out;
}

}  // namespace nabla
