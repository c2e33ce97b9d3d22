#include "bgcs/ladder_function.hpp"

#include <cmath>

#include "bgcs/errors.hpp"

namespace bgcs {

LadderFunction LadderFunction::unit() {
  return {Tag::unit, "unit", [](int) { return 1.0; }};
}

LadderFunction LadderFunction::shift1() {
  return {Tag::shift1, "shift1", [](int n) {
            if (n <= 0) return 0.0;
            return std::sqrt(static_cast<double>(n - 1) / static_cast<double>(n));
          }};
}

LadderFunction LadderFunction::shift2() {
  return {Tag::shift2, "shift2", [](int n) {
            if (n <= 0) return 0.0;
            const double m = static_cast<double>(n);
            return (m - 2.0) * std::sqrt((m - 1.0) / m);
          }};
}

LadderFunction LadderFunction::custom(std::string name, std::function<double(int)> fn) {
  if (!fn) throw ValidationError("custom ladder function needs an evaluator");
  return {Tag::custom, std::move(name), std::move(fn)};
}

LadderFunction LadderFunction::from_name(std::string_view name) {
  if (name == "unit") return unit();
  if (name == "shift1") return shift1();
  if (name == "shift2") return shift2();
  throw ValidationError("unknown ladder function '" + std::string(name) +
                        "' (expected unit, shift1 or shift2)");
}

double generalized_factorial(const std::function<double(int)>& q, int s) {
  if (s < 0) throw ValidationError("generalized_factorial: negative order");
  double product = 1.0;
  for (int j = 1; j <= s; ++j) product *= q(j);
  return product;
}

}  // namespace bgcs
