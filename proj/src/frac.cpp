#include "lca/frac.hpp"

#include <algorithm>

namespace lca {

Frac::Frac(Poly num) : num_(std::move(num)), den_(num_.constant_like(1)) {}

Frac::Frac(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error("fraction with zero denominator");
  normalize();
}

void Frac::normalize() {
  if (num_.is_zero()) {
    den_ = den_.constant_like(1);
    return;
  }
  if (!den_.is_constant()) {
    Poly g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = *divide_exact(num_, g);
      den_ = *divide_exact(den_, g);
    }
  }
  Rational lc = den_.leading_coefficient();
  if (lc != 1) {
    num_ *= Rational(1) / lc;
    den_ *= Rational(1) / lc;
  }
}

Poly Frac::to_poly() const {
  if (!is_polynomial()) throw Error("fraction " + to_string() + " is not a polynomial");
  return num_ * (Rational(1) / den_.leading_coefficient());
}

Frac Frac::operator-() const {
  Frac r = *this;
  r.num_ = -r.num_;
  return r;
}

Frac operator+(const Frac& a, const Frac& b) {
  if (a.den_ == b.den_) return Frac(a.num_ + b.num_, a.den_);
  return Frac(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Frac operator-(const Frac& a, const Frac& b) { return a + (-b); }

Frac operator*(const Frac& a, const Frac& b) { return Frac(a.num_ * b.num_, a.den_ * b.den_); }

Frac operator/(const Frac& a, const Frac& b) {
  if (b.is_zero()) throw Error("division by zero fraction");
  return Frac(a.num_ * b.den_, a.den_ * b.num_);
}

std::string Frac::to_string() const {
  if (den_.is_constant()) return to_poly().to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

LinearSolution solve_linear(std::vector<std::vector<Frac>> rows, std::vector<Frac> rhs, std::size_t unknowns) {
  LinearSolution sol;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < unknowns && r < rows.size(); ++c) {
    // prefer a constant pivot so that side conditions stay minimal
    std::optional<std::size_t> pick;
    for (std::size_t i = r; i < rows.size(); ++i) {
      if (rows[i][c].is_zero()) continue;
      if (!pick) pick = i;
      if (rows[i][c].num().is_constant()) {
        pick = i;
        break;
      }
    }
    if (!pick) continue;
    std::swap(rows[r], rows[*pick]);
    std::swap(rhs[r], rhs[*pick]);
    Frac p = rows[r][c];
    if (!p.num().is_constant()) sol.side_conditions.push_back(make_monic(p.num()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      Frac f = rows[i][c] / p;
      for (std::size_t k = c; k < unknowns; ++k)
        if (!rows[r][k].is_zero()) rows[i][k] = rows[i][k] - f * rows[r][k];
      rhs[i] = rhs[i] - f * rhs[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows.size(); ++i)
    if (!rhs[i].is_zero()) sol.consistent = false;
  Poly zero = rhs.empty() ? Poly() : rhs.front().num().constant_like(0);
  sol.values.assign(unknowns, Frac(zero));
  std::vector<bool> is_pivot(unknowns, false);
  for (std::size_t i = 0; i < pivot_col.size(); ++i) {
    is_pivot[pivot_col[i]] = true;
    sol.values[pivot_col[i]] = rhs[i] / rows[i][pivot_col[i]];
  }
  for (std::size_t c = 0; c < unknowns; ++c)
    if (!is_pivot[c]) sol.free_unknowns.push_back(c);
  std::sort(sol.side_conditions.begin(), sol.side_conditions.end(),
            [](const Poly& a, const Poly& b) { return a.to_string() < b.to_string(); });
  sol.side_conditions.erase(std::unique(sol.side_conditions.begin(), sol.side_conditions.end()),
                            sol.side_conditions.end());
  return sol;
}

}  // namespace lca
