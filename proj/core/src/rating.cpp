#include "agilelint/rating.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace agilelint {

namespace {

double clamp_score(double value) { return std::clamp(value, 0.0, 100.0); }

double operand(const std::map<std::string, double>& operands, const char* name, RatingKind kind) {
  auto it = operands.find(name);
  if (it == operands.end())
    throw RatingError(fmt::format("{} rating needs operand '{}'", to_string(kind), name));
  return it->second;
}

}  // namespace

double threshold_linear(double violations, double weight) {
  return clamp_score(100.0 - violations * weight);
}

std::optional<double> ratio_linear(double violations, double total, double weight, double extra_factor) {
  if (total == 0.0) return std::nullopt;
  return clamp_score(100.0 - violations / total * 100.0 * extra_factor * weight);
}

double capped_linear(double x, double weight) { return clamp_score(x * weight); }

double cutoff_parabola(double quota, double weight_a, double weight_b) {
  return clamp_score(weight_a * quota - weight_b * quota * quota);
}

std::string_view to_string(RatingKind kind) {
  switch (kind) {
    case RatingKind::threshold_linear: return "threshold_linear";
    case RatingKind::ratio_linear: return "ratio_linear";
    case RatingKind::capped_linear: return "capped_linear";
    case RatingKind::cutoff_parabola: return "cutoff_parabola";
  }
  return "unknown";
}

std::optional<double> RatingFunction::operator()(const std::map<std::string, double>& operands) const {
  switch (kind) {
    case RatingKind::threshold_linear:
      return threshold_linear(operand(operands, "violations", kind), operand(operands, "weight", kind));
    case RatingKind::ratio_linear:
      return ratio_linear(operand(operands, "violations", kind), operand(operands, "total", kind),
                          operand(operands, "weight", kind), operand(operands, "extra_factor", kind));
    case RatingKind::capped_linear:
      return capped_linear(operand(operands, "x", kind), operand(operands, "weight", kind));
    case RatingKind::cutoff_parabola:
      return cutoff_parabola(operand(operands, "quota", kind), operand(operands, "weight_a", kind),
                             operand(operands, "weight_b", kind));
  }
  throw RatingError("unknown rating kind");
}

}  // namespace agilelint
