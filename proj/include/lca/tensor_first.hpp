// The module F0(M, N) = C[t] (x) M (x) N, its lambda-action, and the finite
// quotient obtained by rewriting under an assumed truncation table.
#ifndef LCA_TENSOR_FIRST_HPP
#define LCA_TENSOR_FIRST_HPP

#include <functional>
#include <optional>

#include "lca/intertwining.hpp"

namespace lca {

// t^n (x) del^a u_i (x) del^b v_j. In a reduced element a is always 0 and b
// counts powers of the total derivative: (del^x)^b (t^n (x) u_i (x) v_j).
struct StringKey {
  std::uint32_t n;
  std::uint32_t a;
  std::size_t i;
  std::uint32_t b;
  std::size_t j;
  auto operator<=>(const StringKey&) const = default;
};

class StringElement {
 public:
  StringElement(ModulePtr left, ModulePtr right, bool reduced = false);
  static StringElement basis(ModulePtr left, ModulePtr right, const StringKey& k);

  const ModulePtr& left() const { return left_; }
  const ModulePtr& right() const { return right_; }
  bool reduced() const { return reduced_; }
  const std::map<StringKey, Poly>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const StringKey& k, const Poly& c);
  StringElement& operator+=(const StringElement& o);
  StringElement& operator-=(const StringElement& o);
  friend StringElement operator+(StringElement a, const StringElement& b) { return a += b; }
  friend StringElement operator-(StringElement a, const StringElement& b) { return a -= b; }
  friend StringElement operator*(const Poly& c, StringElement x);
  friend bool operator==(const StringElement& a, const StringElement& b) {
    return a.reduced_ == b.reduced_ && a.terms_ == b.terms_;
  }
  // t^n (x) del u (x) v + t^n (x) u (x) del v
  StringElement derivative() const;
  StringElement truncate(std::span<const Var> among, std::uint32_t max_degree) const;
  StringElement substitute(Var v, const Poly& p) const;
  std::string to_string() const;

 private:
  ModulePtr left_, right_;
  bool reduced_;
  std::map<StringKey, Poly> terms_;
};

struct TruncationTable {
  std::vector<std::vector<std::uint32_t>> l;  // [left generator][right generator]

  static TruncationTable uniform(const ConformalModule& m, const ConformalModule& n, std::uint32_t k);
  std::uint32_t at(std::size_t i, std::size_t j) const { return l.at(i).at(j); }
  std::uint32_t max() const;
  std::string to_string() const;
};

using BinomialRule = std::function<Rational(unsigned, unsigned)>;

// a_lam x up to lam-degree `degree`, built from the n-th products
//   a_(m)(t^n u v) = sum_i binom(m, i) t^{n+m-i} a_(i)u v + t^n u a_(m)v.
StringElement f0_action(const AlgElement& a, const StringElement& x, std::string_view var, unsigned degree,
                        const BinomialRule& binom = {});

// Sesquilinearity and Jacobi on every basis string with all exponents
// at most `degree_bound`, comparing series up to that total degree.
Report check_f0_module(const ModulePtr& m, const ModulePtr& n, unsigned degree_bound, const BinomialRule& binom = {});

class StepBudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Default 1e6 rewriting steps; LCA_STEP_BUDGET overrides.
std::size_t step_budget();

StringElement normalize(const StringElement& x, const TruncationTable& trunc, std::optional<std::size_t> budget = {});

struct InducedModule {
  ModulePtr module;  // null on closure failure
  std::optional<IntertwiningOperator> canonical;
  std::vector<StringKey> generators;  // reduced keys (r, 0, i, 0, j)
  Report report;
};

InducedModule induced_module(const ModulePtr& m, const ModulePtr& n, const TruncationTable& trunc);

}  // namespace lca

#endif  // LCA_TENSOR_FIRST_HPP
