#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace agilelint {

// Rating functions map violation counts and ratios onto [0, 100]. Every
// result is clamped into that range.

/// max(0, 100 - violations * weight)
double threshold_linear(double violations, double weight);

/// max(0, 100 - violations / total * 100 * extra_factor * weight), or nullopt
/// when total is zero.
std::optional<double> ratio_linear(double violations, double total, double weight, double extra_factor = 1.0);

/// min(100, x * weight)
double capped_linear(double x, double weight);

/// clamp(weight_a * quota - weight_b * quota^2, 0, 100)
double cutoff_parabola(double quota, double weight_a, double weight_b);

enum class RatingKind { threshold_linear, ratio_linear, capped_linear, cutoff_parabola };

std::string_view to_string(RatingKind kind);

class RatingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A rating function bound to the names of the operands it reads:
///   threshold_linear: violations, weight
///   ratio_linear:     violations, total, weight, extra_factor
///   capped_linear:    x, weight
///   cutoff_parabola:  quota, weight_a, weight_b
struct RatingFunction {
  RatingKind kind;

  /// Throws RatingError when an operand is missing. Returns nullopt when the
  /// rating is undefined (zero denominator).
  std::optional<double> operator()(const std::map<std::string, double>& operands) const;
};

}  // namespace agilelint
