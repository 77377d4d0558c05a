// Rational functions over Q and exact linear solves over the parameter
// fraction field.
#ifndef LCA_FRAC_HPP
#define LCA_FRAC_HPP

#include <optional>
#include <string>
#include <vector>

#include "lca/poly.hpp"

namespace lca {

// Reduced fraction: gcd(num, den) = 1 and den is monic.
class Frac {
 public:
  Frac() = default;
  explicit Frac(Poly num);
  Frac(Poly num, Poly den);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  // Numerator divided by a constant denominator; throws otherwise.
  Poly to_poly() const;

  Frac operator-() const;
  friend Frac operator+(const Frac& a, const Frac& b);
  friend Frac operator-(const Frac& a, const Frac& b);
  friend Frac operator*(const Frac& a, const Frac& b);
  friend Frac operator/(const Frac& a, const Frac& b);
  friend bool operator==(const Frac& a, const Frac& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  std::string to_string() const;

 private:
  void normalize();
  Poly num_;
  Poly den_;
};

struct LinearSolution {
  bool consistent = true;
  std::vector<Frac> values;
  // Non-constant pivots used during elimination; the solution is valid
  // only where every one of them is nonzero.
  std::vector<Poly> side_conditions;
  // Unknowns left free (set to zero in `values`).
  std::vector<std::size_t> free_unknowns;
};

// Solves rows * x = rhs by Gaussian elimination over the fraction field.
LinearSolution solve_linear(std::vector<std::vector<Frac>> rows, std::vector<Frac> rhs, std::size_t unknowns);

}  // namespace lca

#endif  // LCA_FRAC_HPP
