#pragma once

#include <functional>
#include <string>
#include <string_view>

namespace bgcs {

/// Real function f(n) of the number operator that parameterizes the
/// deformed annihilation/creation operators.
///
///   unit   : f(n) = 1
///   shift1 : f(n) = sqrt(n-1)/sqrt(n),          f(1) = 0
///   shift2 : f(n) = (n-2) sqrt(n-1)/sqrt(n),    f(1) = f(2) = 0
///
/// Arguments n <= 0 evaluate to 0 for the shifted choices; every operator in
/// this library multiplies f(0) by a vanishing matrix element.
class LadderFunction {
 public:
  enum class Tag { unit, shift1, shift2, custom };

  static LadderFunction unit();
  static LadderFunction shift1();
  static LadderFunction shift2();
  static LadderFunction custom(std::string name, std::function<double(int)> fn);

  /// Parses "unit", "shift1" or "shift2".
  static LadderFunction from_name(std::string_view name);

  double operator()(int n) const { return fn_(n); }
  Tag tag() const { return tag_; }
  const std::string& name() const { return name_; }

 private:
  LadderFunction(Tag tag, std::string name, std::function<double(int)> fn)
      : tag_(tag), name_(std::move(name)), fn_(std::move(fn)) {}

  Tag tag_;
  std::string name_;
  std::function<double(int)> fn_;
};

/// Generalized factorial [q(s)]! = q(1) q(2) ... q(s), with [q(0)]! = 1.
double generalized_factorial(const std::function<double(int)>& q, int s);

}  // namespace bgcs
