#ifndef PROBEQ_REGRET_HPP
#define PROBEQ_REGRET_HPP

#include <optional>
#include <string>
#include <vector>

#include "probeq/rv.hpp"

namespace probeq {

/// Regret function psi(x, y): zero on the diagonal, strictly increasing
/// in x, strictly decreasing in y. Built-in forms:
///   difference      x - y (exact rational)
///   utility_diff    u(x) - u(y), u power (on a shifted-positive domain)
///                   or exponential 1 - e^(-beta x)
///   table           bilinear interpolation of a user grid
class RegretFunction {
 public:
  enum class Form { Difference, UtilityDiff, Table };
  enum class Utility { Power, Exponential };

  static RegretFunction difference();
  static RegretFunction utility_power(double alpha);
  static RegretFunction utility_exponential(double beta);
  static RegretFunction table(std::vector<Rat> grid_x, std::vector<Rat> grid_y,
                              std::vector<std::vector<double>> values);

  Form form() const { return form_; }
  Utility utility() const { return utility_; }
  double parameter() const { return param_; }
  const std::vector<Rat>& grid_x() const { return grid_x_; }
  const std::vector<Rat>& grid_y() const { return grid_y_; }
  const std::vector<std::vector<double>>& grid_values() const { return values_; }

  /// Bounds fix the shift of the power utility; other forms ignore them.
  double eval(const Rat& x, const Rat& y, const OutcomeBounds& bounds) const;

  bool has_exact_eval() const { return form_ == Form::Difference; }
  Rat eval_exact(const Rat& x, const Rat& y) const;

 private:
  RegretFunction() = default;
  double utility_value(const Rat& t, const OutcomeBounds& bounds) const;
  double table_value(const Rat& x, const Rat& y) const;

  Form form_ = Form::Difference;
  Utility utility_ = Utility::Power;
  double param_ = 1.0;
  std::vector<Rat> grid_x_, grid_y_;
  std::vector<std::vector<double>> values_;
};

struct PsiIssue {
  std::string what;
};

struct PsiValidation {
  std::vector<PsiIssue> issues;
  bool ok() const { return issues.empty(); }
};

/// Checks psi(x,x) = 0 on a diagonal grid and strict monotonicity in each
/// argument on a grid_n x grid_n grid over the bounds. grid_n >= 3.
PsiValidation validate_regret_function(const RegretFunction& psi,
                                       const OutcomeBounds& bounds, int grid_n);

/// Finite lottery of regret values. Canonical: values ascending, equal
/// values merged, probabilities positive and summing to exactly 1.
struct RegretLottery {
  struct Atom {
    double value;
    Scalar prob;
    friend bool operator==(const Atom& a, const Atom& b) = default;
  };
  std::vector<Atom> atoms;

  friend bool operator==(const RegretLottery& a, const RegretLottery& b) = default;
};

/// Psi(X, Y) over the common refinement of x and y, canonicalized.
RegretLottery regret_lottery(const RegretFunction& psi, const SimpleRV& x,
                             const SimpleRV& y);

/// Functional V over regret lotteries: expectation or rank-dependent with
/// weight w(p) = p^gamma applied to tail probabilities from the top.
class RegretFunctional {
 public:
  enum class Form { Expectation, RankDependent };

  static RegretFunctional expectation();
  static RegretFunctional rank_dependent(double gamma);

  Form form() const { return form_; }
  double gamma() const { return gamma_; }

  double eval(const RegretLottery& lottery) const;

 private:
  Form form_ = Form::Expectation;
  double gamma_ = 1.0;
};

enum class PreferVerdict { Prefer, Indifferent, Disprefer };

struct Preference {
  PreferVerdict verdict;
  double value;
  std::optional<Scalar> exact;  // exact V, available for difference + expectation
  RegretLottery lottery;
};

/// Decides X vs Y by the sign of V(Psi(X, Y)). Probabilities stay exact
/// until the final functional evaluation; for the difference regret
/// function with expectation the value itself is exact and the verdict
/// ignores tol. Requires x and y on the same OutcomeBounds and a psi that
/// passes validation.
Preference prefer(const RegretFunction& psi, const RegretFunctional& v,
                  const SimpleRV& x, const SimpleRV& y, double tol = 1e-9);

}  // namespace probeq

#endif
