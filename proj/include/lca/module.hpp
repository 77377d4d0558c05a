// Finite free conformal modules over a Lie conformal algebra and the
// ordinary tensor product of two such modules.
#ifndef LCA_MODULE_HPP
#define LCA_MODULE_HPP

#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "lca/algebra.hpp"

namespace lca {

class ConformalModule;
using ModulePtr = std::shared_ptr<const ConformalModule>;

// g_a lam v_j = sum_k A[a][j][k](lam, del) v_k
class ConformalModule {
 public:
  ConformalModule(std::string name, AlgebraPtr parent, std::vector<std::string> gens, Table3 action,
                  ModulePtr dual_of = nullptr);

  const std::string& name() const { return name_; }
  const AlgebraPtr& algebra() const { return parent_; }
  const VarTablePtr& table() const { return parent_->table(); }
  const std::vector<std::string>& gens() const { return gens_; }
  std::size_t rank() const { return gens_.size(); }
  const Table3& action_table() const { return action_; }
  std::size_t gen_index(std::string_view name) const;
  // Set when this module was built as the conformal dual of another one.
  const ModulePtr& dual_of() const { return dual_of_; }

 private:
  std::string name_;
  AlgebraPtr parent_;
  std::vector<std::string> gens_;
  Table3 action_;
  ModulePtr dual_of_;
};

struct ModElement {
  ModulePtr parent;
  std::vector<Poly> comps;

  static ModElement zero(const ModulePtr& m);
  static ModElement generator(const ModulePtr& m, std::size_t i);
  static ModElement generator(const ModulePtr& m, std::string_view name);

  bool is_zero() const;
  ModElement derivative() const;
  ModElement& operator+=(const ModElement& o);
  friend ModElement operator+(ModElement a, const ModElement& b) { return a += b; }
  friend ModElement operator-(ModElement a, const ModElement& b);
  friend ModElement operator*(const Poly& c, ModElement a);
  friend bool operator==(const ModElement& a, const ModElement& b) { return a.comps == b.comps; }
  std::string to_string() const;
};

ModElement action(const AlgElement& a, const ModElement& v, std::string_view var);
ModElement action_at(const AlgElement& a, const ModElement& v, const Poly& shift);

// a_lam (b_mu v) = [a_lam b]_{lam+mu} v + b_mu (a_lam v) on every
// (generator, generator, module generator) triple.
Report check_module(const ConformalModule& m);

// M_{Delta,alpha} = C[del] m with L_lam m = (Delta lam + del + alpha) m.
ModulePtr rank1_virasoro(const AlgebraPtr& vir, const Poly& delta, const Poly& alpha, std::string name = "M");
ModulePtr trivial_module(const AlgebraPtr& a, std::size_t rank, std::string name = "T");
// The algebra as a module over itself.
ModulePtr regular_module(const AlgebraPtr& a);

// Basis string del^a u_i (x) del^b v_j.
struct TensorKey {
  std::uint32_t a;
  std::size_t i;
  std::uint32_t b;
  std::size_t j;
  auto operator<=>(const TensorKey&) const = default;
};

// Element of the ordinary tensor product U (x) V over C. Coefficients are
// free of del; derivatives are carried by the key exponents.
class TensorElement {
 public:
  TensorElement(ModulePtr left, ModulePtr right);
  static TensorElement pure(const ModElement& u, const ModElement& v);

  const ModulePtr& left() const { return left_; }
  const ModulePtr& right() const { return right_; }
  const std::map<TensorKey, Poly>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const TensorKey& k, const Poly& c);
  TensorElement& operator+=(const TensorElement& o);
  TensorElement& operator-=(const TensorElement& o);
  friend TensorElement operator*(const Poly& c, TensorElement x);
  friend bool operator==(const TensorElement& a, const TensorElement& b) { return a.terms_ == b.terms_; }
  // del (x) 1 + 1 (x) del
  TensorElement total_derivative() const;
  std::string to_string() const;

 private:
  ModulePtr left_, right_;
  std::map<TensorKey, Poly> terms_;
};

// r_lam (u (x) v) = r_lam u (x) v + u (x) r_lam v
TensorElement ordinary_tensor_action(const AlgElement& a, const TensorElement& x, std::string_view var);
TensorElement ordinary_tensor_action_at(const AlgElement& a, const TensorElement& x, const Poly& shift);

}  // namespace lca

#endif  // LCA_MODULE_HPP
