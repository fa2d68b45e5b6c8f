#include "urllc/conic/program.hpp"

#include <charconv>
#include <ostream>

namespace urllc::conic {

double AffineExpr::eval(const Eigen::VectorXd& x) const {
  double v = constant;
  for (const auto& t : terms) v += t.coef * x[t.var];
  return v;
}

int ConicProgram::add_variables(int count) {
  const int first = num_vars;
  num_vars += count;
  cost.conservativeResize(num_vars);
  cost.tail(count).setZero();
  return first;
}

std::vector<std::string> ConicProgram::structural_errors() const {
  std::vector<std::string> errors;
  if (num_vars < 0) errors.push_back("negative variable count");
  if (cost.size() != num_vars) errors.push_back("cost vector length differs from num_vars");
  auto check = [&](const AffineExpr& e, const std::string& where) {
    for (const auto& t : e.terms)
      if (t.var < 0 || t.var >= num_vars) {
        errors.push_back(where + ": variable index " + std::to_string(t.var) + " out of range");
        return;
      }
  };
  for (std::size_t i = 0; i < equalities.size(); ++i) check(equalities[i].expr, "equality " + std::to_string(i));
  for (int j : nonnegative)
    if (j < 0 || j >= num_vars) errors.push_back("nonnegative index " + std::to_string(j) + " out of range");
  for (std::size_t i = 0; i < inequalities.size(); ++i)
    check(inequalities[i].expr, "inequality " + std::to_string(i));
  for (std::size_t c = 0; c < cones.size(); ++c) {
    const std::string where = "cone " + std::to_string(c);
    check(cones[c].head, where + " head");
    for (const auto& row : cones[c].tail) check(row, where + " tail");
  }
  return errors;
}

namespace {

std::string num(double v) {
  char buf[40];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

void write_triplets(std::ostream& out, const ConicProgram& p) {
  out << "conic-program 1\n";
  out << "vars " << p.num_vars << '\n';
  for (int j = 0; j < p.num_vars; ++j)
    if (p.cost[j] != 0.0) out << "c " << j << ' ' << num(p.cost[j]) << '\n';

  auto rows = [&](const std::string& tag, std::size_t row, const AffineExpr& e) {
    for (const auto& t : e.terms) out << tag << ' ' << row << ' ' << t.var << ' ' << num(t.coef) << '\n';
    out << tag << "-rhs " << row << ' ' << num(e.constant) << '\n';
  };
  for (std::size_t i = 0; i < p.equalities.size(); ++i) rows("eq", i, p.equalities[i].expr);

  std::size_t lp = 0;
  for (int j : p.nonnegative) rows("lp", lp++, AffineExpr().add(j, 1.0));
  for (const auto& ineq : p.inequalities) rows("lp", lp++, ineq.expr);

  for (std::size_t c = 0; c < p.cones.size(); ++c) {
    const auto& cone = p.cones[c];
    out << "soc-dim " << c << ' ' << cone.tail.size() + 1 << '\n';
    auto cone_row = [&](std::size_t r, const AffineExpr& e) {
      for (const auto& t : e.terms) out << "soc " << c << ' ' << r << ' ' << t.var << ' ' << num(t.coef) << '\n';
      out << "soc-rhs " << c << ' ' << r << ' ' << num(e.constant) << '\n';
    };
    cone_row(0, cone.head);
    for (std::size_t r = 0; r < cone.tail.size(); ++r) cone_row(r + 1, cone.tail[r]);
  }
}

}  // namespace urllc::conic
