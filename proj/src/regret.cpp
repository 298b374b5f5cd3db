#include "probeq/regret.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace probeq {
namespace {

RegretLottery canonicalize(std::vector<RegretLottery::Atom> atoms) {
  std::sort(atoms.begin(), atoms.end(),
            [](const auto& a, const auto& b) { return a.value < b.value; });
  RegretLottery out;
  for (auto& a : atoms) {
    if (!out.atoms.empty() && out.atoms.back().value == a.value)
      out.atoms.back().prob += a.prob;
    else
      out.atoms.push_back(std::move(a));
  }
  return out;
}

std::string grid_point(double x, double y) {
  return "(" + std::to_string(x) + ", " + std::to_string(y) + ")";
}

}  // namespace

RegretFunction RegretFunction::difference() {
  RegretFunction f;
  f.form_ = Form::Difference;
  return f;
}

RegretFunction RegretFunction::utility_power(double alpha) {
  RegretFunction f;
  f.form_ = Form::UtilityDiff;
  f.utility_ = Utility::Power;
  f.param_ = alpha;
  return f;
}

RegretFunction RegretFunction::utility_exponential(double beta) {
  RegretFunction f;
  f.form_ = Form::UtilityDiff;
  f.utility_ = Utility::Exponential;
  f.param_ = beta;
  return f;
}

RegretFunction RegretFunction::table(std::vector<Rat> grid_x, std::vector<Rat> grid_y,
                                     std::vector<std::vector<double>> values) {
  if (grid_x.size() < 2 || grid_y.size() < 2)
    throw std::invalid_argument("table psi: need at least a 2x2 grid");
  if (values.size() != grid_x.size())
    throw std::invalid_argument("table psi: row count != grid_x size");
  for (const auto& row : values)
    if (row.size() != grid_y.size())
      throw std::invalid_argument("table psi: column count != grid_y size");
  for (std::size_t i = 1; i < grid_x.size(); ++i)
    if (!(grid_x[i - 1] < grid_x[i]))
      throw std::invalid_argument("table psi: grid_x must be strictly increasing");
  for (std::size_t j = 1; j < grid_y.size(); ++j)
    if (!(grid_y[j - 1] < grid_y[j]))
      throw std::invalid_argument("table psi: grid_y must be strictly increasing");
  RegretFunction f;
  f.form_ = Form::Table;
  f.grid_x_ = std::move(grid_x);
  f.grid_y_ = std::move(grid_y);
  f.values_ = std::move(values);
  return f;
}

double RegretFunction::utility_value(const Rat& t, const OutcomeBounds& bounds) const {
  const double td = rat_to_double(t);
  if (utility_ == Utility::Power) {
    // Shift so the domain starts at 1; keeps the power monotone for any
    // sign of the raw outcomes.
    const double shifted = td - rat_to_double(bounds.lo) + 1.0;
    return std::pow(shifted, param_);
  }
  return 1.0 - std::exp(-param_ * td);
}

double RegretFunction::table_value(const Rat& x, const Rat& y) const {
  if (x < grid_x_.front() || grid_x_.back() < x || y < grid_y_.front() ||
      grid_y_.back() < y)
    throw std::invalid_argument("table psi: point outside grid hull");
  const auto locate = [](const std::vector<Rat>& grid, const Rat& t) {
    std::size_t i = std::upper_bound(grid.begin(), grid.end(), t) - grid.begin();
    if (i > 0) --i;
    if (i + 1 >= grid.size()) i = grid.size() - 2;
    return i;
  };
  const std::size_t i = locate(grid_x_, x);
  const std::size_t j = locate(grid_y_, y);
  const double u = rat_to_double(Rat(x - grid_x_[i])) /
                   rat_to_double(Rat(grid_x_[i + 1] - grid_x_[i]));
  const double v = rat_to_double(Rat(y - grid_y_[j])) /
                   rat_to_double(Rat(grid_y_[j + 1] - grid_y_[j]));
  return values_[i][j] * (1 - u) * (1 - v) + values_[i][j + 1] * (1 - u) * v +
         values_[i + 1][j] * u * (1 - v) + values_[i + 1][j + 1] * u * v;
}

double RegretFunction::eval(const Rat& x, const Rat& y, const OutcomeBounds& bounds) const {
  switch (form_) {
    case Form::Difference:
      return rat_to_double(Rat(x - y));
    case Form::UtilityDiff:
      return utility_value(x, bounds) - utility_value(y, bounds);
    case Form::Table:
      return table_value(x, y);
  }
  throw std::logic_error("unreachable");
}

Rat RegretFunction::eval_exact(const Rat& x, const Rat& y) const {
  if (form_ != Form::Difference)
    throw std::logic_error("eval_exact: only the difference form is exact");
  return x - y;
}

PsiValidation validate_regret_function(const RegretFunction& psi,
                                       const OutcomeBounds& bounds, int grid_n) {
  if (grid_n < 3) throw std::invalid_argument("validate_regret_function: grid_n >= 3");
  PsiValidation report;
  if (psi.form() == RegretFunction::Form::Table) {
    if (psi.grid_x().front() > bounds.lo || psi.grid_x().back() < bounds.hi ||
        psi.grid_y().front() > bounds.lo || psi.grid_y().back() < bounds.hi) {
      report.issues.push_back({"table grid does not cover the outcome bounds"});
      return report;
    }
  }
  std::vector<Rat> grid;
  const Rat span = bounds.hi - bounds.lo;
  for (int i = 0; i < grid_n; ++i)
    grid.push_back(bounds.lo + span * i / (grid_n - 1));

  // Table values carry user floats; everything else hits 0 exactly.
  const double diag_tol = psi.form() == RegretFunction::Form::Table ? 1e-12 : 0.0;
  for (const auto& g : grid) {
    const double v = psi.eval(g, g, bounds);
    if (std::abs(v) > diag_tol) {
      report.issues.push_back({"diagonal violation: psi" +
                               grid_point(rat_to_double(g), rat_to_double(g)) + " = " +
                               std::to_string(v)});
      break;
    }
  }
  for (int a = 0; a < grid_n && report.issues.size() < 8; ++a) {
    for (int b = 0; b + 1 < grid_n; ++b) {
      const double lo_x = psi.eval(grid[b], grid[a], bounds);
      const double hi_x = psi.eval(grid[b + 1], grid[a], bounds);
      if (!(lo_x < hi_x)) {
        report.issues.push_back({"not strictly increasing in x at " +
                                 grid_point(rat_to_double(grid[b]), rat_to_double(grid[a]))});
        break;
      }
    }
    for (int b = 0; b + 1 < grid_n; ++b) {
      const double lo_y = psi.eval(grid[a], grid[b], bounds);
      const double hi_y = psi.eval(grid[a], grid[b + 1], bounds);
      if (!(hi_y < lo_y)) {
        report.issues.push_back({"not strictly decreasing in y at " +
                                 grid_point(rat_to_double(grid[a]), rat_to_double(grid[b]))});
        break;
      }
    }
  }
  return report;
}

RegretLottery regret_lottery(const RegretFunction& psi, const SimpleRV& x,
                             const SimpleRV& y) {
  if (!(x.bounds() == y.bounds()))
    throw std::invalid_argument("regret_lottery: x and y must share OutcomeBounds");
  std::vector<RegretLottery::Atom> atoms;
  for (const auto& cell : common_refinement(x, y))
    atoms.push_back({psi.eval(cell.x_val, cell.y_val, x.bounds()), cell.event.measure()});
  return canonicalize(std::move(atoms));
}

RegretFunctional RegretFunctional::expectation() { return RegretFunctional{}; }

RegretFunctional RegretFunctional::rank_dependent(double gamma) {
  if (!(gamma > 0)) throw std::invalid_argument("rank_dependent: gamma must be positive");
  RegretFunctional f;
  f.form_ = Form::RankDependent;
  f.gamma_ = gamma;
  return f;
}

double RegretFunctional::eval(const RegretLottery& lottery) const {
  if (form_ == Form::Expectation) {
    long double acc = 0;
    for (const auto& a : lottery.atoms)
      acc += static_cast<long double>(a.prob.to_double()) * a.value;
    return static_cast<double>(acc);
  }
  // Rank-dependent: atoms ascend, tails are exact until the final
  // conversion; weight_i = w(G_i) - w(G_{i+1}) with G_i the tail mass of
  // values >= value_i.
  const std::size_t n = lottery.atoms.size();
  std::vector<Scalar> tail(n + 1, Scalar(0));
  for (std::size_t i = n; i-- > 0;) tail[i] = tail[i + 1] + lottery.atoms[i].prob;
  const auto w = [&](const Scalar& p) { return std::pow(p.to_double(), gamma_); };
  long double acc = 0;
  for (std::size_t i = 0; i < n; ++i)
    acc += static_cast<long double>(w(tail[i]) - w(tail[i + 1])) * lottery.atoms[i].value;
  return static_cast<double>(acc);
}

Preference prefer(const RegretFunction& psi, const RegretFunctional& v,
                  const SimpleRV& x, const SimpleRV& y, double tol) {
  const PsiValidation check = validate_regret_function(psi, x.bounds(), 9);
  if (!check.ok())
    throw std::invalid_argument("prefer: invalid regret function: " +
                                check.issues.front().what);
  Preference out{PreferVerdict::Indifferent, 0.0, std::nullopt,
                 regret_lottery(psi, x, y)};
  out.value = v.eval(out.lottery);
  if (psi.has_exact_eval() && v.form() == RegretFunctional::Form::Expectation) {
    Scalar exact(0);
    for (const auto& cell : common_refinement(x, y))
      exact += cell.event.measure() * Scalar(psi.eval_exact(cell.x_val, cell.y_val));
    out.exact = exact;
    out.value = exact.to_double();
    const int s = exact.sign();
    out.verdict = s == 0 ? PreferVerdict::Indifferent
                         : (s > 0 ? PreferVerdict::Prefer : PreferVerdict::Disprefer);
    return out;
  }
  if (std::abs(out.value) <= tol)
    out.verdict = PreferVerdict::Indifferent;
  else
    out.verdict = out.value > 0 ? PreferVerdict::Prefer : PreferVerdict::Disprefer;
  return out;
}

}  // namespace probeq
