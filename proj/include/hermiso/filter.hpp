#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace hermiso {

enum class FilterKind { smooth_bump };

/// C-infinity low-pass cutoff: 1 on [0, 1/2], 0 on [1, inf), strictly
/// decreasing in between. Only the smooth-bump quotient is shipped; the
/// enumeration is open for extensions.
struct FilterSpec {
  FilterKind kind = FilterKind::smooth_bump;
};

namespace detail {
inline double bump_g(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }
}  // namespace detail

inline double filter_eval(const FilterSpec&, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("filter_eval: t must be finite and >= 0");
  }
  if (t <= 0.5) return 1.0;
  if (t >= 1.0) return 0.0;
  const double a = detail::bump_g(1.0 - t);
  const double b = detail::bump_g(t - 0.5);
  return a / (a + b);
}

inline FilterKind filter_kind_from_string(const std::string& s) {
  if (s == "smooth_bump") return FilterKind::smooth_bump;
  throw std::invalid_argument("unknown filter kind: " + s);
}

inline const char* to_string(FilterKind k) {
  switch (k) {
    case FilterKind::smooth_bump: return "smooth_bump";
  }
  return "?";
}

}  // namespace hermiso
