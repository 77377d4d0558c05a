// Finite Lie conformal algebras given by structure constants.
//
// A free C[del]-module on generators g_1..g_n with
//   [g_i lam g_j] = sum_k P_ijk(lam, del) g_k.
// Elements are vectors of polynomials over the generators; del acting on an
// element multiplies every component by del.
#ifndef LCA_ALGEBRA_HPP
#define LCA_ALGEBRA_HPP

#include <memory>
#include <string>
#include <vector>

#include "lca/poly.hpp"
#include "lca/report.hpp"

namespace lca {

// table[i][j][k]
using Table3 = std::vector<std::vector<std::vector<Poly>>>;
using Matrix = std::vector<std::vector<Poly>>;

namespace detail {

// Sesquilinear extension of a generator table:
//   sum_{i,j} x_i(-s) * y_j(s + del) * table_ijk(s, del)
// where `s` is the shift expression replacing `table_var`.
std::vector<Poly> sesquilinear(const std::vector<Poly>& x, const std::vector<Poly>& y, const Table3& table,
                               Var table_var, const Poly& shift, std::size_t out_rank);

// Throws unless `name` is a formal variable that may serve as a fresh
// lambda-variable and occurs in none of the given components.
Var fresh_variable(const VarTablePtr& vt, std::string_view name,
                   std::initializer_list<const std::vector<Poly>*> in_use);

void check_table_vars(const Table3& table, std::initializer_list<Var> allowed, const std::string& what);

std::vector<Poly> zeros(const VarTablePtr& vt, std::size_t n);

}  // namespace detail

class LieConformalAlgebra {
 public:
  LieConformalAlgebra(std::string name, VarTablePtr vt, std::vector<std::string> gens, Table3 bracket);

  const std::string& name() const { return name_; }
  const VarTablePtr& table() const { return vt_; }
  const std::vector<std::string>& gens() const { return gens_; }
  std::size_t rank() const { return gens_.size(); }
  const Table3& bracket_table() const { return bracket_; }
  std::size_t gen_index(std::string_view name) const;

 private:
  std::string name_;
  VarTablePtr vt_;
  std::vector<std::string> gens_;
  Table3 bracket_;
};

using AlgebraPtr = std::shared_ptr<const LieConformalAlgebra>;

struct AlgElement {
  AlgebraPtr parent;
  std::vector<Poly> comps;

  static AlgElement zero(const AlgebraPtr& a);
  static AlgElement generator(const AlgebraPtr& a, std::size_t i);
  static AlgElement generator(const AlgebraPtr& a, std::string_view name);

  bool is_zero() const;
  AlgElement derivative() const;
  AlgElement& operator+=(const AlgElement& o);
  friend AlgElement operator+(AlgElement a, const AlgElement& b) { return a += b; }
  friend AlgElement operator-(AlgElement a, const AlgElement& b);
  friend AlgElement operator*(const Poly& c, AlgElement a);
  friend bool operator==(const AlgElement& a, const AlgElement& b) { return a.comps == b.comps; }
  std::string to_string() const;
};

// [x_var y]; var must be fresh (not lam in x or y, never del or t).
AlgElement bracket(const AlgElement& x, const AlgElement& y, std::string_view var);
// [x_s y] for an arbitrary shift expression s, e.g. lam + mu inside Jacobi.
AlgElement bracket_at(const AlgElement& x, const AlgElement& y, const Poly& shift);

// x_(n) y = n! * coefficient of lam^n in [x_lam y].
AlgElement nth_product(const AlgElement& x, const AlgElement& y, unsigned n);

// [a_lam b] = -[b_{-lam-del} a] on every generator pair.
Report check_skew(const LieConformalAlgebra& a);
// [a_lam [b_mu c]] = [[a_lam b]_{lam+mu} c] + [b_mu [a_lam c]] on every triple.
Report check_jacobi(const LieConformalAlgebra& a);

AlgebraPtr virasoro(const VarTablePtr& vt, std::string name = "Vir");
AlgebraPtr abelian(const VarTablePtr& vt, std::size_t rank, std::string name = "Ab");

}  // namespace lca

#endif  // LCA_ALGEBRA_HPP
