// Exact multivariate polynomials over Q.
//
// Every polynomial lives over a VarTable: the five formal variables
// (lam, mu, gam, t, del) followed by user-declared symbolic parameters.
// Terms are kept in a sparse map keyed by dense exponent vectors, ordered
// lexicographically over the declared variable order, so two equal
// polynomials always have identical term maps.
#ifndef LCA_POLY_HPP
#define LCA_POLY_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace lca {

using Rational = mpq_class;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t position)
      : Error(msg + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Index of an indeterminate inside a VarTable.
struct Var {
  std::size_t index;
  friend bool operator==(Var, Var) = default;
};

namespace vars {
inline constexpr Var lam{0};
inline constexpr Var mu{1};
inline constexpr Var gam{2};
inline constexpr Var t{3};
inline constexpr Var del{4};
inline constexpr std::size_t formal_count = 5;
}  // namespace vars

class VarTable {
 public:
  static std::shared_ptr<const VarTable> make(std::vector<std::string> params = {});

  std::size_t size() const { return names_.size(); }
  const std::string& name(Var v) const { return names_.at(v.index); }
  std::optional<Var> find(std::string_view name) const;
  Var require(std::string_view name) const;
  bool is_param(Var v) const { return v.index >= vars::formal_count; }
  std::span<const std::string> params() const;
  std::span<const std::string> formal_vars() const;
  static bool is_reserved(std::string_view name);

  friend bool operator==(const VarTable& a, const VarTable& b) { return a.names_ == b.names_; }

 private:
  explicit VarTable(std::vector<std::string> names) : names_(std::move(names)) {}
  std::vector<std::string> names_;
};

using VarTablePtr = std::shared_ptr<const VarTable>;

using Exponents = std::vector<std::uint32_t>;

class Poly {
 public:
  using TermMap = std::map<Exponents, Rational, std::greater<>>;

  Poly() = default;
  explicit Poly(VarTablePtr vt) : vt_(std::move(vt)) {}

  static Poly constant(VarTablePtr vt, const Rational& c);
  static Poly variable(VarTablePtr vt, Var v);
  static Poly variable(VarTablePtr vt, std::string_view name);
  static Poly monomial(VarTablePtr vt, Exponents exps, const Rational& c);

  const VarTablePtr& table() const { return vt_; }
  const TermMap& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  bool uses(Var v) const;
  std::uint32_t degree(Var v) const;
  std::uint32_t total_degree(std::span<const Var> among) const;
  std::uint32_t total_degree() const;
  std::vector<Var> variables() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  Poly pow(unsigned e) const;
  Poly constant_like(const Rational& c) const;
  Poly var_like(Var v) const;

  // Replaces v by the given polynomial.
  Poly substitute(Var v, const Poly& replacement) const;
  Poly substitute(std::string_view var, const Poly& replacement) const;
  // Simultaneous substitution; variables not listed are kept.
  Poly substitute(const std::vector<std::pair<Var, Poly>>& replacements) const;

  // Coefficient of v^k, a polynomial free of v.
  Poly coeff(Var v, std::uint32_t k) const;
  Poly coeff(std::string_view var, std::uint32_t k) const;
  // Coefficient of the monomial in `among` with the given exponents, as a
  // polynomial in the remaining variables.
  Poly coeff_monomial(std::span<const Var> among, std::span<const std::uint32_t> exps) const;
  // Drops every term whose total degree in `among` exceeds max_degree.
  Poly truncate(std::span<const Var> among, std::uint32_t max_degree) const;
  // Groups terms by their exponents in `among`.
  std::map<Exponents, Poly, std::greater<>> split(std::span<const Var> among) const;

  // Leading term under the lex order; the polynomial must be nonzero.
  const Exponents& leading_exponents() const { return terms_.begin()->first; }
  const Rational& leading_coefficient() const { return terms_.begin()->second; }

  std::string to_string() const;
  // Collects terms by their formal-variable monomial, printing the parameter
  // coefficient of each group in parentheses when it has several terms.
  std::string to_grouped_string() const;

 private:
  void adopt(const Poly& o);
  void add_term(const Exponents& e, const Rational& c);

  VarTablePtr vt_;
  TermMap terms_;
};

std::ostream& operator<<(std::ostream& os, const Poly& p);

Poly parse(std::string_view text, const VarTablePtr& vt);

// Exact quotient a / b, or nullopt when b does not divide a.
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);
// Pseudo-remainder of a by b with respect to v.
Poly pseudo_remainder(const Poly& a, const Poly& b, Var v);
// Content with respect to v: gcd of the coefficients of the powers of v.
Poly content(const Poly& p, Var v);
// Monic gcd (leading coefficient 1 under the lex order); gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);

// Same term structure but scaled so the leading coefficient is 1.
Poly make_monic(const Poly& p);

Rational factorial(unsigned n);
Rational binomial(unsigned n, unsigned k);

}  // namespace lca

#endif  // LCA_POLY_HPP
