#include "lca/poly.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <ostream>
#include <sstream>

namespace lca {

namespace {

constexpr std::array<const char*, vars::formal_count> kFormalNames = {"lam", "mu", "gam", "t", "del"};

void check_tables(const VarTablePtr& a, const VarTablePtr& b) {
  if (a && b && a != b && !(*a == *b)) throw Error("polynomials over different variable tables");
}

}  // namespace

// ---------------------------------------------------------------- VarTable

std::shared_ptr<const VarTable> VarTable::make(std::vector<std::string> params) {
  std::vector<std::string> names(kFormalNames.begin(), kFormalNames.end());
  for (auto& p : params) {
    if (is_reserved(p)) throw Error("parameter name '" + p + "' is reserved");
    if (p.empty() || !(std::isalpha(static_cast<unsigned char>(p[0])) || p[0] == '_'))
      throw Error("invalid parameter name '" + p + "'");
    if (std::find(names.begin(), names.end(), p) != names.end())
      throw Error("duplicate parameter name '" + p + "'");
    names.push_back(std::move(p));
  }
  return std::shared_ptr<const VarTable>(new VarTable(std::move(names)));
}

std::optional<Var> VarTable::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return Var{i};
  return std::nullopt;
}

Var VarTable::require(std::string_view name) const {
  if (auto v = find(name)) return *v;
  throw Error("unknown variable '" + std::string(name) + "'");
}

std::span<const std::string> VarTable::params() const {
  return std::span<const std::string>(names_).subspan(vars::formal_count);
}

std::span<const std::string> VarTable::formal_vars() const {
  return std::span<const std::string>(names_).first(vars::formal_count);
}

bool VarTable::is_reserved(std::string_view name) {
  return std::find(kFormalNames.begin(), kFormalNames.end(), name) != kFormalNames.end();
}

// ---------------------------------------------------------------- Poly

Poly Poly::constant(VarTablePtr vt, const Rational& c) {
  Poly p(vt);
  if (c != 0) p.terms_.emplace(Exponents(vt->size(), 0), c);
  return p;
}

Poly Poly::variable(VarTablePtr vt, Var v) {
  Exponents e(vt->size(), 0);
  e.at(v.index) = 1;
  return monomial(std::move(vt), std::move(e), 1);
}

Poly Poly::variable(VarTablePtr vt, std::string_view name) {
  Var v = vt->require(name);
  return variable(std::move(vt), v);
}

Poly Poly::monomial(VarTablePtr vt, Exponents exps, const Rational& c) {
  if (exps.size() != vt->size()) throw Error("exponent vector has wrong length");
  Poly p(std::move(vt));
  if (c != 0) p.terms_.emplace(std::move(exps), c);
  return p;
}

Poly Poly::constant_like(const Rational& c) const {
  if (!vt_) {
    if (c == 0) return {};
    throw Error("constant needs a variable table");
  }
  return constant(vt_, c);
}

Poly Poly::var_like(Var v) const {
  if (!vt_) throw Error("variable needs a variable table");
  return variable(vt_, v);
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](auto x) { return x == 0; });
}

Rational Poly::constant_term() const {
  if (terms_.empty()) return 0;
  auto it = terms_.find(Exponents(vt_->size(), 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

bool Poly::uses(Var v) const {
  return std::any_of(terms_.begin(), terms_.end(), [&](const auto& t) { return t.first.at(v.index) != 0; });
}

std::uint32_t Poly::degree(Var v) const {
  std::uint32_t d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.at(v.index));
  return d;
}

std::uint32_t Poly::total_degree(std::span<const Var> among) const {
  std::uint32_t d = 0;
  for (const auto& [e, c] : terms_) {
    std::uint32_t s = 0;
    for (Var v : among) s += e.at(v.index);
    d = std::max(d, s);
  }
  return d;
}

std::uint32_t Poly::total_degree() const {
  std::uint32_t d = 0;
  for (const auto& [e, c] : terms_) {
    std::uint32_t s = 0;
    for (auto x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

std::vector<Var> Poly::variables() const {
  std::vector<Var> out;
  if (!vt_) return out;
  for (std::size_t i = 0; i < vt_->size(); ++i)
    if (uses(Var{i})) out.push_back(Var{i});
  return out;
}

void Poly::adopt(const Poly& o) {
  check_tables(vt_, o.vt_);
  if (!vt_) vt_ = o.vt_;
}

void Poly::add_term(const Exponents& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  adopt(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  adopt(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  check_tables(a.vt_, b.vt_);
  Poly r(a.vt_ ? a.vt_ : b.vt_);
  if (a.is_zero() || b.is_zero()) return r;
  Exponents e(r.vt_->size());
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, x] : terms_) x *= c;
  return *this;
}

Poly Poly::pow(unsigned e) const {
  Poly result = constant_like(1);
  if (!vt_) return e == 0 ? result : Poly();
  Poly base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return result;
}

Poly Poly::substitute(Var v, const Poly& replacement) const {
  return substitute(std::vector<std::pair<Var, Poly>>{{v, replacement}});
}

Poly Poly::substitute(std::string_view var, const Poly& replacement) const {
  if (!vt_) return *this;
  return substitute(vt_->require(var), replacement);
}

Poly Poly::substitute(const std::vector<std::pair<Var, Poly>>& replacements) const {
  if (terms_.empty()) return *this;
  for (const auto& [v, r] : replacements) {
    check_tables(vt_, r.vt_);
    if (v.index >= vt_->size()) throw Error("substitution variable out of range");
  }
  // power caches, one per replaced variable
  std::vector<std::vector<Poly>> powers(replacements.size());
  auto power_of = [&](std::size_t slot, std::uint32_t e) -> const Poly& {
    auto& cache = powers[slot];
    if (cache.empty()) cache.push_back(constant(vt_, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * replacements[slot].second);
    return cache[e];
  };
  Poly result(vt_);
  for (const auto& [e, c] : terms_) {
    Exponents kept = e;
    for (const auto& [v, r] : replacements) kept[v.index] = 0;
    Poly term = monomial(vt_, kept, c);
    for (std::size_t s = 0; s < replacements.size(); ++s) {
      std::uint32_t k = e[replacements[s].first.index];
      if (k > 0) term *= power_of(s, k);
    }
    result += term;
  }
  return result;
}

Poly Poly::coeff(Var v, std::uint32_t k) const {
  Poly r(vt_);
  for (const auto& [e, c] : terms_) {
    if (e[v.index] != k) continue;
    Exponents f = e;
    f[v.index] = 0;
    r.add_term(f, c);
  }
  return r;
}

Poly Poly::coeff(std::string_view var, std::uint32_t k) const {
  if (!vt_) return *this;
  return coeff(vt_->require(var), k);
}

Poly Poly::coeff_monomial(std::span<const Var> among, std::span<const std::uint32_t> exps) const {
  Poly r(vt_);
  for (const auto& [e, c] : terms_) {
    bool match = true;
    for (std::size_t i = 0; i < among.size() && match; ++i) match = e[among[i].index] == exps[i];
    if (!match) continue;
    Exponents f = e;
    for (Var v : among) f[v.index] = 0;
    r.add_term(f, c);
  }
  return r;
}

Poly Poly::truncate(std::span<const Var> among, std::uint32_t max_degree) const {
  Poly r(vt_);
  for (const auto& [e, c] : terms_) {
    std::uint32_t s = 0;
    for (Var v : among) s += e[v.index];
    if (s <= max_degree) r.terms_.emplace(e, c);
  }
  return r;
}

std::map<Exponents, Poly, std::greater<>> Poly::split(std::span<const Var> among) const {
  std::map<Exponents, Poly, std::greater<>> out;
  for (const auto& [e, c] : terms_) {
    Exponents key(among.size());
    Exponents rest = e;
    for (std::size_t i = 0; i < among.size(); ++i) {
      key[i] = e[among[i].index];
      rest[among[i].index] = 0;
    }
    auto [it, inserted] = out.try_emplace(key, Poly(vt_));
    it->second.add_term(rest, c);
  }
  return out;
}

// ---------------------------------------------------------------- printing

namespace {

std::vector<std::size_t> print_order(const VarTable& vt) {
  std::vector<std::size_t> order;
  for (std::size_t i = vars::formal_count; i < vt.size(); ++i) order.push_back(i);
  for (std::size_t i = 0; i < vars::formal_count; ++i) order.push_back(i);
  return order;
}

std::string monomial_string(const VarTable& vt, const Exponents& e) {
  std::string s;
  for (std::size_t i : print_order(vt)) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += vt.name(Var{i});
    if (e[i] > 1) s += '^' + std::to_string(e[i]);
  }
  return s;
}

// One signed term; `first` controls whether a leading " + " is emitted.
void append_term(std::string& out, const Rational& c, const std::string& mono, bool first) {
  Rational mag = abs(c);
  bool neg = c < 0;
  if (first) {
    if (neg) out += '-';
  } else {
    out += neg ? " - " : " + ";
  }
  if (mono.empty()) {
    out += mag.get_str();
  } else if (mag == 1) {
    out += mono;
  } else {
    out += mag.get_str() + "*" + mono;
  }
}

}  // namespace

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    append_term(out, c, monomial_string(*vt_, e), first);
    first = false;
  }
  return out;
}

std::string Poly::to_grouped_string() const {
  if (terms_.empty()) return "0";
  std::vector<Var> formal;
  for (std::size_t i = 0; i < vars::formal_count; ++i) formal.push_back(Var{i});
  auto groups = split(formal);
  std::string out;
  bool first = true;
  for (const auto& [key, coef] : groups) {
    Exponents full(vt_->size(), 0);
    for (std::size_t i = 0; i < key.size(); ++i) full[i] = key[i];
    std::string mono = monomial_string(*vt_, full);
    if (coef.terms_.size() == 1) {
      const auto& [ce, cc] = *coef.terms_.begin();
      std::string pm = monomial_string(*vt_, ce);
      std::string joined = pm.empty() ? mono : (mono.empty() ? pm : pm + "*" + mono);
      append_term(out, cc, joined, first);
    } else if (mono.empty()) {
      if (!first) out += " + ";
      out += "(" + coef.to_string() + ")";
    } else {
      if (!first) out += " + ";
      out += "(" + coef.to_string() + ")*" + mono;
    }
    first = false;
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

// ---------------------------------------------------------------- parsing

namespace {

class Parser {
 public:
  Parser(std::string_view text, const VarTablePtr& vt) : text_(text), vt_(vt) {}

  Poly run() {
    skip();
    if (pos_ >= text_.size()) throw ParseError("empty expression", pos_);
    Poly p = expr();
    skip();
    if (pos_ < text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return p;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    Poly acc = term();
    while (true) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Poly term() {
    Poly acc = unary();
    while (true) {
      if (accept('*')) {
        acc *= unary();
      } else if (accept('/')) {
        skip();
        std::size_t at = pos_;
        mpz_class d = integer();
        if (d == 0) throw ParseError("division by zero", at);
        acc *= Rational(1, 1) / Rational(d);
      } else {
        return acc;
      }
    }
  }

  Poly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Poly power() {
    Poly base = primary();
    if (accept('^')) {
      skip();
      std::size_t at = pos_;
      mpz_class e = integer();
      if (!e.fits_uint_p() || e > 1000) throw ParseError("exponent too large", at);
      return base.pow(static_cast<unsigned>(e.get_ui()));
    }
    return base;
  }

  mpz_class integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected integer", start);
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  Poly primary() {
    skip();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of expression", pos_);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return Poly::constant(vt_, Rational(integer()));
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      auto v = vt_->find(name);
      if (!v) throw ParseError("unknown identifier '" + name + "'", start);
      return Poly::variable(vt_, *v);
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  std::string_view text_;
  const VarTablePtr& vt_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse(std::string_view text, const VarTablePtr& vt) { return Parser(text, vt).run(); }

// ---------------------------------------------------------------- division and gcd

namespace {

bool exps_divide(const Exponents& d, const Exponents& n) {
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] > n[i]) return false;
  return true;
}

// Highest-ranked variable used by p, or nullopt for constants.
std::optional<Var> main_var(const Poly& p) {
  if (p.is_zero()) return std::nullopt;
  for (std::size_t i = 0; i < p.table()->size(); ++i)
    if (p.uses(Var{i})) return Var{i};
  return std::nullopt;
}

Rational rational_content(const Poly& p) {
  mpz_class num = 0, den = 1;
  for (const auto& [e, c] : p.terms()) {
    mpz_class n = c.get_num(), d = c.get_den();
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), n.get_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
  }
  return Rational(num, den);
}

Poly primitive_part(const Poly& p, Var v) {
  if (p.is_zero()) return p;
  Poly c = content(p, v);
  auto q = divide_exact(p, c);
  if (!q) throw Error("internal: content does not divide polynomial");
  return *q;
}

}  // namespace

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw Error("division by zero polynomial");
  Poly q(a.table() ? a.table() : b.table());
  if (a.is_zero()) return q;
  Poly r = a;
  const auto& lb = b.leading_exponents();
  const auto& lc = b.leading_coefficient();
  while (!r.is_zero()) {
    const auto& lr = r.leading_exponents();
    if (!exps_divide(lb, lr)) return std::nullopt;
    Exponents e(lr.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = lr[i] - lb[i];
    Poly t = Poly::monomial(b.table(), e, r.leading_coefficient() / lc);
    q += t;
    r -= t * b;
  }
  return q;
}

Poly pseudo_remainder(const Poly& a, const Poly& b, Var v) {
  std::uint32_t db = b.degree(v);
  Poly lc = b.coeff(v, db);
  Poly r = a;
  while (!r.is_zero() && r.degree(v) >= db) {
    std::uint32_t dr = r.degree(v);
    Poly lr = r.coeff(v, dr);
    r = lc * r - lr * b.var_like(v).pow(dr - db) * b;
  }
  return r;
}

Poly content(const Poly& p, Var v) {
  Poly g(p.table());
  for (std::uint32_t k = 0; k <= p.degree(v); ++k) {
    Poly c = p.coeff(v, k);
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant() && !g.is_zero()) break;
  }
  return g;
}

Poly make_monic(const Poly& p) {
  if (p.is_zero()) return p;
  return p * (Rational(1) / p.leading_coefficient());
}

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return make_monic(b);
  if (b.is_zero()) return make_monic(a);
  if (a.is_constant() || b.is_constant()) return a.constant_like(1);
  auto va = main_var(a), vb = main_var(b);
  Var v = va->index <= vb->index ? *va : *vb;
  if (!a.uses(v)) return gcd(a, content(b, v));
  if (!b.uses(v)) return gcd(content(a, v), b);
  Poly c = gcd(content(a, v), content(b, v));
  Poly p = primitive_part(a, v), q = primitive_part(b, v);
  if (p.degree(v) < q.degree(v)) std::swap(p, q);
  while (!q.is_zero()) {
    Poly r = pseudo_remainder(p, q, v);
    p = std::move(q);
    q = r.is_zero() ? r : primitive_part(r, v);
    if (!q.is_zero()) q *= Rational(1) / rational_content(q);
  }
  return make_monic(c * primitive_part(p, v));
}

Rational factorial(unsigned n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return Rational(r);
}

Rational binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return Rational(r);
}

}  // namespace lca
