#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nabla/grotkit/motivic.hpp"

namespace nabla {

enum class SeriesKind { IgusaZeta, Poincare, AutoIgusaWeightless, Reduced };

std::string to_string(SeriesKind k);

/// Coefficients of t^1..t^N; coefficients[n - 1] belongs to t^n.
struct TruncatedSeries {
  SeriesKind kind = SeriesKind::IgusaZeta;
  /// Scheme label (empty for auto-arc series) and system description.
  std::string scheme;
  std::string system;
  std::vector<MotivicClass> coefficients;
  /// Length of the system member used for each coefficient.
  std::vector<std::size_t> lengths;

  std::size_t order() const noexcept { return coefficients.size(); }
  const MotivicClass& coefficient(std::size_t n) const { return coefficients.at(n - 1); }
};

/// numerator * L^b * (L^q t)^{k+1} / (1 - L^q t), i.e. numerator * L^{b + q n} t^n for n > k.
struct SeriesTail {
  MotivicClass numerator;
  long q = 0;
  long b = 0;
  std::size_t k = 0;
};

struct RationalSeriesForm {
  /// Coefficients of t^1..t^k.
  std::vector<MotivicClass> polynomial;
  SeriesTail tail;

  MotivicClass coefficient(std::size_t n) const;
  std::vector<MotivicClass> expand(std::size_t order) const;
  std::string to_string() const;
};

/// Coefficient n is [∇_{member(n)} X] L^{-d ℓ(n)}. Errors: DimensionMismatch.
TruncatedSeries igusa_zeta_truncated(const SchemePresentation& x, const PointSystem& system, std::size_t order,
                                     long d);

/// Coefficient n is [trace at level n] L^{-d ℓ(n)}. Each level probes up to
/// max(max_depth, n + 2). Errors: TraceNotStabilized, DimensionMismatch.
TruncatedSeries poincare_truncated(const SchemePresentation& x, const PointSystem& system, std::size_t order,
                                   long d, unsigned max_depth);

/// Coefficient n is [∇_{member(n)} member(n)] L^{-dim}.
TruncatedSeries auto_igusa_weightless_truncated(const PointSystem& system, std::size_t order);

/// Errors: InvalidArgument (k >= N), TailMismatch (first disagreeing index).
RationalSeriesForm stable_closed_form(const TruncatedSeries& series, std::size_t k, const MotivicClass& mu,
                                      long q, long b);

/// Smallest k, then q by increasing |q| in [-8, 8] (b = 0), whose tail solved
/// from coefficient k+1 reproduces the rest; requires N >= k + 3.
std::optional<RationalSeriesForm> recognize_rational(const TruncatedSeries& series);

/// σ applied coefficientwise. Errors: UncertifiedReduction.
TruncatedSeries sigma_series(const TruncatedSeries& series);

}  // namespace nabla
