#include "lca/workspace.hpp"

#include <fstream>
#include <regex>
#include <set>
#include <sstream>

namespace lca {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

// Splits on `sep` outside parentheses.
std::vector<std::string> split_top(std::string_view s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (s[i] == sep && depth == 0) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  out.push_back(trim(s.substr(start)));
  return out;
}

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == ',') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

bool only_vars(const Poly& p, std::initializer_list<Var> allowed) {
  for (Var v : p.variables()) {
    if (p.table()->is_param(v)) continue;
    if (std::find(allowed.begin(), allowed.end(), v) == allowed.end()) return false;
  }
  return true;
}

Table3 zero_table(const VarTablePtr& vt, std::size_t a, std::size_t b, std::size_t c) {
  return Table3(a, std::vector<std::vector<Poly>>(b, detail::zeros(vt, c)));
}

}  // namespace

// ---------------------------------------------------------------- workspace

Workspace Workspace::builtin() {
  Workspace ws(VarTable::make({"Delta", "alpha", "Delta2", "alpha2"}));
  ws.add_algebra(virasoro(ws.table(), "Vir"));
  return ws;
}

void Workspace::add_algebra(AlgebraPtr a) {
  if (algebras_.count(a->name())) throw Error("duplicate algebra '" + a->name() + "'");
  algebras_.emplace(a->name(), std::move(a));
}

void Workspace::add_module(ModulePtr m) {
  if (modules_.count(m->name())) throw Error("duplicate module '" + m->name() + "'");
  modules_.emplace(m->name(), std::move(m));
}

void Workspace::add_operator(IntertwiningOperator op) {
  if (operators_.count(op.name)) throw Error("duplicate operator '" + op.name + "'");
  std::string name = op.name;
  operators_.emplace(name, std::move(op));
}

void Workspace::add_map(std::string name, ConformalLinearMap phi) {
  if (maps_.count(name)) throw Error("duplicate map '" + name + "'");
  maps_.emplace(std::move(name), std::move(phi));
}

AlgebraPtr Workspace::algebra(std::string_view name) const {
  auto it = algebras_.find(std::string(name));
  if (it == algebras_.end()) throw Error("unknown algebra '" + std::string(name) + "'");
  return it->second;
}

ModulePtr Workspace::module(std::string_view ref) {
  std::string r = trim(ref);
  if (auto it = modules_.find(r); it != modules_.end()) return it->second;
  static const std::regex builtin_ref(R"(^M\s*\((.*)\)$)");
  std::smatch match;
  if (!std::regex_match(r, match, builtin_ref)) throw Error("unknown module '" + r + "'");
  auto args = split_top(match[1].str(), ',');
  if (args.size() != 2) throw Error("module reference '" + r + "' needs two arguments");
  Poly delta = parse(args[0], vt_), alpha = parse(args[1], vt_);
  std::string name = "M(" + delta.to_string() + "," + alpha.to_string() + ")";
  if (auto it = modules_.find(name); it != modules_.end()) return it->second;
  auto m = rank1_virasoro(algebra("Vir"), delta, alpha, name);
  modules_.emplace(name, m);
  return m;
}

const IntertwiningOperator& Workspace::iop(std::string_view name) const {
  auto it = operators_.find(std::string(name));
  if (it == operators_.end()) throw Error("unknown operator '" + std::string(name) + "'");
  return it->second;
}

const ConformalLinearMap& Workspace::map(std::string_view name) const {
  auto it = maps_.find(std::string(name));
  if (it == maps_.end()) throw Error("unknown map '" + std::string(name) + "'");
  return it->second;
}

AlgElement Workspace::parse_element(const AlgebraPtr& a, std::string_view text) const {
  std::vector<std::string> names(vt_->params().begin(), vt_->params().end());
  for (const auto& g : a->gens()) {
    if (std::find(names.begin(), names.end(), g) != names.end())
      throw Error("generator '" + g + "' clashes with a parameter name");
    names.push_back(g);
  }
  VarTablePtr ext = VarTable::make(names);
  Poly p = parse(text, ext);
  AlgElement out = AlgElement::zero(a);
  Poly rest = p;
  for (std::size_t g = 0; g < a->rank(); ++g) {
    Var v = ext->require(a->gens()[g]);
    if (p.degree(v) > 1) throw Error("element '" + std::string(text) + "' is not linear in the generators");
    Poly c = p.coeff(v, 1);
    rest -= c * Poly::variable(ext, v);
    for (std::size_t h = 0; h < a->rank(); ++h)
      if (c.uses(ext->require(a->gens()[h])))
        throw Error("element '" + std::string(text) + "' is not linear in the generators");
    if (!only_vars(c, {vars::del})) throw Error("coefficients of an element may only use del and parameters");
    out.comps[g] = parse(c.to_string(), vt_);
  }
  if (!rest.is_zero()) throw Error("element '" + std::string(text) + "' has a term without a generator");
  return out;
}

// ---------------------------------------------------------------- config loader

namespace {

struct SourceLine {
  std::size_t no;
  std::string text;  // comment stripped, trimmed
  std::size_t indent;
};

class ConfigLoader {
 public:
  ConfigLoader(std::string_view text, std::string source) : source_(std::move(source)) {
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t no = 0;
    while (std::getline(in, raw)) {
      ++no;
      std::string body = raw.substr(0, raw.find('#'));
      std::size_t indent = body.find_first_not_of(" \t");
      std::string t = trim(body);
      if (!t.empty()) lines_.push_back({no, t, indent == std::string::npos ? 0 : indent});
    }
  }

  Workspace run() {
    std::vector<std::string> params;
    bool in_params = false;
    for (const auto& l : lines_) {
      if (l.text.front() == '[') {
        in_params = l.text == "[params]";
        continue;
      }
      if (in_params)
        for (auto& w : words(l.text)) params.push_back(w);
    }
    VarTablePtr vt;
    try {
      vt = VarTable::make(params);
    } catch (const Error& e) {
      throw ParseError(source_ + ": " + e.what(), 0);
    }
    Workspace ws(vt);
    for (std::size_t i = 0; i < lines_.size();) {
      const auto& head = lines_[i];
      if (head.text.front() != '[' || head.text.back() != ']') fail(head, 0, "expected a section header");
      std::size_t j = i + 1;
      while (j < lines_.size() && lines_[j].text.front() != '[') ++j;
      std::vector<SourceLine> body(lines_.begin() + static_cast<long>(i) + 1, lines_.begin() + static_cast<long>(j));
      section(ws, head, body);
      i = j;
    }
    return ws;
  }

 private:
  [[noreturn]] void fail(const SourceLine& l, std::size_t col, const std::string& msg) const {
    throw ParseError(source_ + ":" + std::to_string(l.no) + ":" + std::to_string(l.indent + col + 1) + ": " + msg,
                     col);
  }

  Poly expr(const SourceLine& l, std::size_t offset, std::string_view text, const VarTablePtr& vt) const {
    try {
      return parse(text, vt);
    } catch (const ParseError& e) {
      fail(l, offset + e.position(), e.what());
    } catch (const Error& e) {
      fail(l, offset, e.what());
    }
  }

  struct Entry {
    std::vector<std::string> sources;
    std::string target;  // empty for "lhs = expr"
    Poly value;
  };

  Entry entry(const SourceLine& l, const VarTablePtr& vt) const {
    std::size_t eq = l.text.find('=');
    if (eq == std::string::npos) fail(l, 0, "expected '='");
    std::string lhs = l.text.substr(0, eq);
    std::size_t off = eq + 1;
    while (off < l.text.size() && l.text[off] == ' ') ++off;
    Entry e{{}, {}, expr(l, off, std::string_view(l.text).substr(off), vt)};
    std::size_t arrow = lhs.find("->");
    if (arrow != std::string::npos) {
      e.sources = words(lhs.substr(0, arrow));
      auto t = words(lhs.substr(arrow + 2));
      if (t.size() != 1) fail(l, arrow + 2, "expected a single target generator");
      e.target = t[0];
    } else {
      e.sources = words(lhs);
    }
    return e;
  }

  std::vector<std::string> gens_line(const std::vector<SourceLine>& body, const SourceLine& head) const {
    if (body.empty() || body[0].text.rfind("gens:", 0) != 0) fail(head, 0, "section must start with a 'gens:' line");
    auto g = words(body[0].text.substr(5));
    std::set<std::string> seen;
    for (const auto& x : g)
      if (!seen.insert(x).second) fail(body[0], 0, "duplicate generator '" + x + "'");
    return g;
  }

  std::size_t gen(const SourceLine& l, const std::vector<std::string>& gens, const std::string& name,
                  const std::string& what) const {
    auto it = std::find(gens.begin(), gens.end(), name);
    if (it == gens.end()) fail(l, l.text.find(name), what + " has no generator '" + name + "'");
    return static_cast<std::size_t>(it - gens.begin());
  }

  void check_vars(const SourceLine& l, const Poly& p, std::initializer_list<Var> allowed) const {
    if (!only_vars(p, allowed))
      fail(l, l.text.find('=') + 1, "expression " + p.to_string() + " uses a variable not allowed here");
  }

  void assign(const SourceLine& l, std::set<std::vector<std::size_t>>& done, std::vector<std::size_t> key) const {
    if (!done.insert(std::move(key)).second) fail(l, 0, "entry assigned twice");
  }

  ModulePtr module_ref(Workspace& ws, const SourceLine& l, const std::string& ref) const {
    try {
      return ws.module(ref);
    } catch (const Error& e) {
      fail(l, l.text.find(ref), e.what());
    }
  }

  void section(Workspace& ws, const SourceLine& head, const std::vector<SourceLine>& body) {
    std::string inner = trim(head.text.substr(1, head.text.size() - 2));
    auto w = words(inner);
    if (w.empty()) fail(head, 0, "empty section header");
    const VarTablePtr& vt = ws.table();
    try {
      if (w[0] == "params") {
        return;
      } else if (w[0] == "algebra") {
        if (w.size() != 2) fail(head, 0, "expected [algebra <name>]");
        auto gens = gens_line(body, head);
        Table3 t = zero_table(vt, gens.size(), gens.size(), gens.size());
        std::set<std::vector<std::size_t>> done;
        for (std::size_t k = 1; k < body.size(); ++k) {
          Entry e = entry(body[k], vt);
          if (e.sources.size() != 2 || e.target.empty()) fail(body[k], 0, "expected 'a b -> c = expr'");
          std::size_t a = gen(body[k], gens, e.sources[0], "algebra " + w[1]);
          std::size_t b = gen(body[k], gens, e.sources[1], "algebra " + w[1]);
          std::size_t c = gen(body[k], gens, e.target, "algebra " + w[1]);
          check_vars(body[k], e.value, {vars::lam, vars::del});
          assign(body[k], done, {a, b, c});
          t[a][b][c] = e.value;
        }
        ws.add_algebra(std::make_shared<const LieConformalAlgebra>(w[1], vt, gens, std::move(t)));
      } else if (w[0] == "module") {
        if (w.size() != 4 || w[2] != "over") fail(head, 0, "expected [module <name> over <algebra>]");
        AlgebraPtr alg;
        try {
          alg = ws.algebra(w[3]);
        } catch (const Error& e) {
          fail(head, head.text.find(w[3]), e.what());
        }
        auto gens = gens_line(body, head);
        Table3 t = zero_table(vt, alg->rank(), gens.size(), gens.size());
        std::set<std::vector<std::size_t>> done;
        for (std::size_t k = 1; k < body.size(); ++k) {
          Entry e = entry(body[k], vt);
          if (e.sources.size() != 2 || e.target.empty()) fail(body[k], 0, "expected 'g v -> w = expr'");
          std::size_t a = gen(body[k], alg->gens(), e.sources[0], "algebra " + alg->name());
          std::size_t b = gen(body[k], gens, e.sources[1], "module " + w[1]);
          std::size_t c = gen(body[k], gens, e.target, "module " + w[1]);
          check_vars(body[k], e.value, {vars::lam, vars::del});
          assign(body[k], done, {a, b, c});
          t[a][b][c] = e.value;
        }
        ws.add_module(std::make_shared<const ConformalModule>(w[1], alg, gens, std::move(t)));
      } else if (w[0] == "iop") {
        std::string rest = trim(inner.substr(3));
        std::size_t colon = rest.find(':');
        if (colon == std::string::npos) fail(head, 0, "expected [iop <name> : W ; M , N]");
        std::string name = trim(rest.substr(0, colon));
        auto parts = split_top(rest.substr(colon + 1), ';');
        if (parts.size() != 2) fail(head, 0, "expected [iop <name> : W ; M , N]");
        auto mn = split_top(parts[1], ',');
        if (mn.size() != 2) fail(head, 0, "expected [iop <name> : W ; M , N]");
        ModulePtr W = module_ref(ws, head, parts[0]), M = module_ref(ws, head, mn[0]), N = module_ref(ws, head, mn[1]);
        IntertwiningOperator op = IntertwiningOperator::zero(name, W, M, N);
        std::set<std::vector<std::size_t>> done;
        for (const auto& l : body) {
          Entry e = entry(l, vt);
          if (e.sources.size() != 2 || e.target.empty()) fail(l, 0, "expected 'u v -> w = expr'");
          std::size_t a = gen(l, M->gens(), e.sources[0], "module " + M->name());
          std::size_t b = gen(l, N->gens(), e.sources[1], "module " + N->name());
          std::size_t c = gen(l, W->gens(), e.target, "module " + W->name());
          check_vars(l, e.value, {vars::gam, vars::del});
          assign(l, done, {a, b, c});
          op.table[a][b][c] = e.value;
        }
        ws.add_operator(std::move(op));
      } else if (w[0] == "map") {
        std::string rest = trim(inner.substr(3));
        std::size_t colon = rest.find(':');
        if (colon == std::string::npos) fail(head, 0, "expected [map <name> : U -> V]");
        std::string name = trim(rest.substr(0, colon));
        std::string sig = rest.substr(colon + 1);
        std::size_t arrow = sig.find("->");
        if (arrow == std::string::npos) fail(head, 0, "expected [map <name> : U -> V]");
        std::string tgt = trim(sig.substr(arrow + 2));
        ModulePtr U = module_ref(ws, head, trim(sig.substr(0, arrow)));
        ModulePtr V = (tgt == "scalar" || tgt == "C") ? nullptr : module_ref(ws, head, tgt);
        ConformalLinearMap phi = ConformalLinearMap::zero(U, V);
        std::set<std::vector<std::size_t>> done;
        for (const auto& l : body) {
          Entry e = entry(l, vt);
          if (e.sources.size() != 1 || (V != nullptr) == e.target.empty())
            fail(l, 0, V ? "expected 'u -> v = expr'" : "expected 'u = expr'");
          std::size_t j = gen(l, U->gens(), e.sources[0], "module " + U->name());
          std::size_t i = V ? gen(l, V->gens(), e.target, "module " + V->name()) : 0;
          if (V)
            check_vars(l, e.value, {vars::mu, vars::del});
          else
            check_vars(l, e.value, {vars::mu});
          assign(l, done, {i, j});
          phi.matrix[i][j] = e.value;
        }
        ws.add_map(name, std::move(phi));
      } else {
        fail(head, 0, "unknown section kind '" + w[0] + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      fail(head, 0, e.what());
    }
  }

  std::string source_;
  std::vector<SourceLine> lines_;
};

}  // namespace

Workspace load_config(std::string_view text, const std::string& source) { return ConfigLoader(text, source).run(); }

namespace {

Table3 table_from_json(const nlohmann::json& j, const VarTablePtr& vt, std::size_t a, std::size_t b, std::size_t c,
                       const std::string& what) {
  if (!j.is_array() || j.size() != a) throw ParseError(what + ": table has the wrong shape", 0);
  Table3 t = zero_table(vt, a, b, c);
  for (std::size_t x = 0; x < a; ++x) {
    if (!j[x].is_array() || j[x].size() != b) throw ParseError(what + ": table has the wrong shape", 0);
    for (std::size_t y = 0; y < b; ++y) {
      if (!j[x][y].is_array() || j[x][y].size() != c) throw ParseError(what + ": table has the wrong shape", 0);
      for (std::size_t z = 0; z < c; ++z) t[x][y][z] = parse(j[x][y][z].get<std::string>(), vt);
    }
  }
  return t;
}

nlohmann::ordered_json table_to_json(const Table3& t) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& plane : t) {
    nlohmann::ordered_json p = nlohmann::ordered_json::array();
    for (const auto& row : plane) {
      nlohmann::ordered_json r = nlohmann::ordered_json::array();
      for (const auto& e : row) r.push_back(e.to_string());
      p.push_back(std::move(r));
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

Workspace load_json(const nlohmann::json& j) {
  try {
    Workspace ws(VarTable::make(j.value("params", std::vector<std::string>{})));
    const VarTablePtr& vt = ws.table();
    for (const auto& a : j.value("algebras", nlohmann::json::array())) {
      auto gens = a.at("gens").get<std::vector<std::string>>();
      std::string name = a.at("name");
      ws.add_algebra(std::make_shared<const LieConformalAlgebra>(
          name, vt, gens, table_from_json(a.at("bracket"), vt, gens.size(), gens.size(), gens.size(), name)));
    }
    for (const auto& m : j.value("modules", nlohmann::json::array())) {
      auto gens = m.at("gens").get<std::vector<std::string>>();
      std::string name = m.at("name");
      AlgebraPtr alg = ws.algebra(m.at("algebra").get<std::string>());
      ws.add_module(std::make_shared<const ConformalModule>(
          name, alg, gens, table_from_json(m.at("action"), vt, alg->rank(), gens.size(), gens.size(), name)));
    }
    for (const auto& o : j.value("operators", nlohmann::json::array())) {
      std::string name = o.at("name");
      ModulePtr W = ws.module(o.at("W").get<std::string>());
      ModulePtr M = ws.module(o.at("M").get<std::string>());
      ModulePtr N = ws.module(o.at("N").get<std::string>());
      ws.add_operator({name, W, M, N, table_from_json(o.at("table"), vt, M->rank(), N->rank(), W->rank(), name)});
    }
    return ws;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed workspace JSON: ") + e.what(), 0);
  }
}

Workspace load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(path + ": " + e.what(), e.byte);
    }
    return load_json(j);
  }
  return load_config(text, path);
}

TruncationTable parse_truncation(const std::string& desc, const ConformalModule& m, const ConformalModule& n) {
  if (desc.rfind("uniform:", 0) == 0) {
    std::string k = desc.substr(8);
    if (k.empty() || k.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("bad truncation '" + desc + "'", 8);
    return TruncationTable::uniform(m, n, static_cast<std::uint32_t>(std::stoul(k)));
  }
  std::ifstream in(desc);
  if (!in) throw ParseError("truncation must be uniform:<k> or a readable file, got '" + desc + "'", 0);
  TruncationTable t;
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    std::string body = trim(line.substr(0, line.find('#')));
    if (body.empty()) continue;
    std::vector<std::uint32_t> row;
    for (const auto& w : words(body)) {
      if (w.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError(desc + ":" + std::to_string(no) + ": expected non-negative integers", 0);
      row.push_back(static_cast<std::uint32_t>(std::stoul(w)));
    }
    if (row.size() != n.rank())
      throw ParseError(desc + ":" + std::to_string(no) + ": expected " + std::to_string(n.rank()) + " entries", 0);
    t.l.push_back(std::move(row));
  }
  if (t.l.size() != m.rank()) throw ParseError(desc + ": expected " + std::to_string(m.rank()) + " rows", 0);
  return t;
}

nlohmann::ordered_json algebra_json(const LieConformalAlgebra& a) {
  return {{"name", a.name()}, {"gens", a.gens()}, {"bracket", table_to_json(a.bracket_table())}};
}

nlohmann::ordered_json module_json(const ConformalModule& m) {
  return {{"name", m.name()},
          {"algebra", m.algebra()->name()},
          {"gens", m.gens()},
          {"action", table_to_json(m.action_table())}};
}

nlohmann::ordered_json operator_json(const IntertwiningOperator& op) {
  return {{"name", op.name},
          {"W", op.W->name()},
          {"M", op.M->name()},
          {"N", op.N->name()},
          {"table", table_to_json(op.table)}};
}

std::string presentation_string(const ConformalModule& m) {
  std::string out;
  const auto& alg = m.algebra();
  for (std::size_t g = 0; g < alg->rank(); ++g)
    for (std::size_t k = 0; k < m.rank(); ++k) {
      std::string rhs;
      for (std::size_t k2 = 0; k2 < m.rank(); ++k2) {
        const Poly& p = m.action_table()[g][k][k2];
        if (p.is_zero()) continue;
        if (!rhs.empty()) rhs += " + ";
        rhs += "(" + p.to_grouped_string() + ")*" + m.gens()[k2];
      }
      out += "  " + alg->gens()[g] + "_lam " + m.gens()[k] + " = " + (rhs.empty() ? "0" : rhs) + "\n";
    }
  return out;
}

std::string operator_string(const IntertwiningOperator& op) {
  std::string out;
  for (std::size_t i = 0; i < op.M->rank(); ++i)
    for (std::size_t j = 0; j < op.N->rank(); ++j) {
      std::string rhs;
      for (std::size_t k = 0; k < op.W->rank(); ++k) {
        const Poly& p = op.table[i][j][k];
        if (p.is_zero()) continue;
        if (!rhs.empty()) rhs += " + ";
        rhs += "(" + p.to_grouped_string() + ")*" + op.W->gens()[k];
      }
      out += "  " + op.name + "_gam(" + op.M->gens()[i] + ", " + op.N->gens()[j] + ") = " + (rhs.empty() ? "0" : rhs) +
             "\n";
    }
  return out;
}

// ---------------------------------------------------------------- commands

namespace {

void add_report(CommandResult& r, Report rep) {
  if (!rep.passed) r.status = 1;
  r.reports.push_back(std::move(rep));
}

}  // namespace

CommandResult cmd_check_algebra(Workspace& ws, const std::string& name) {
  CommandResult r;
  AlgebraPtr a = ws.algebra(name);
  add_report(r, check_skew(*a));
  add_report(r, check_jacobi(*a));
  return r;
}

CommandResult cmd_check_module(Workspace& ws, const std::string& ref) {
  CommandResult r;
  ModulePtr m = ws.module(ref);
  r.text = "module " + m->name() + "\n" + presentation_string(*m);
  add_report(r, check_module(*m));
  return r;
}

CommandResult cmd_check_iop(Workspace& ws, const std::string& name) {
  CommandResult r;
  const IntertwiningOperator& op = ws.iop(name);
  r.text = "operator " + op.name + " of type " + op.type_string() + "\n" + operator_string(op);
  add_report(r, check_iop(op));
  return r;
}

CommandResult cmd_dual(Workspace& ws, const std::string& ref) {
  CommandResult r;
  ModulePtr m = ws.module(ref);
  DualModule d = dual_module(m);
  r.text = "dual of " + m->name() + "\n" + presentation_string(*d.dual);
  r.modules.push_back(d.dual);
  add_report(r, d.verification);
  add_report(r, check_module(*d.dual));
  return r;
}

CommandResult cmd_chom_act(Workspace& ws, const std::string& element, const std::string& map) {
  CommandResult r;
  const ConformalLinearMap& phi = ws.map(map);
  AlgElement a = ws.parse_element(phi.source->algebra(), element);
  ConformalLinearMap res = chom_action(a, phi, "lam");
  r.text = "(" + a.to_string() + ")_lam " + map + ": " + res.to_string() + "\n";
  add_report(r, check_chom_laws(a, a, phi));
  return r;
}

CommandResult cmd_tensor(Workspace& ws, const std::string& left, const std::string& right, const std::string& method,
                         const std::string& trunc) {
  if (method != "first" && method != "second" && method != "both")
    throw ParseError("method must be first, second or both", 0);
  CommandResult r;
  ModulePtr m = ws.module(left), n = ws.module(right);
  std::optional<InducedModule> first;
  std::optional<TensorSecond> second;
  if (method != "second") {
    TruncationTable t = parse_truncation(trunc, *m, *n);
    first = induced_module(m, n, t);
    r.text += "first construction (conditional on truncation table [" + t.to_string() + "])\n";
    if (first->module) {
      r.text += "  module " + first->module->name() + "\n" + presentation_string(*first->module);
      r.text += "  canonical operator\n" + operator_string(*first->canonical);
      r.modules.push_back(first->module);
      r.operators.push_back(*first->canonical);
    }
    add_report(r, first->report);
  }
  if (method != "first") {
    second = tensor_second(m, n);
    r.text += "second construction\n";
    if (second->candidate.module)
      r.text += "  candidate " + second->candidate.module->name() + "\n" +
                presentation_string(*second->candidate.module);
    if (second->module) {
      r.text += "  module " + second->module->name() + "\n" + presentation_string(*second->module);
      r.text += "  canonical operator\n" + operator_string(*second->canonical);
      r.modules.push_back(second->candidate.module);
      r.modules.push_back(second->module);
      r.operators.push_back(*second->canonical);
    }
    add_report(r, second->report);
  }
  if (first && second) {
    Report c = compare_constructions(*first, *second);
    r.text += std::string("cross-check: ") + (c.passed ? "match up to rescaling" : "mismatch") + "\n";
    add_report(r, std::move(c));
  }
  return r;
}

CommandResult cmd_report(Workspace& ws) {
  CommandResult r;
  for (const auto& [name, a] : ws.algebras()) {
    add_report(r, check_skew(*a));
    add_report(r, check_jacobi(*a));
  }
  for (const auto& [name, m] : ws.modules()) add_report(r, check_module(*m));
  for (const auto& [name, op] : ws.operators()) add_report(r, check_iop(op));
  return r;
}

nlohmann::ordered_json result_json(const Workspace& ws, const std::string& command, const CommandResult& r) {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["status"] = r.status;
  j["passed"] = r.status == 0;
  j["reports"] = nlohmann::ordered_json::array();
  for (const auto& rep : r.reports) j["reports"].push_back(rep.to_json());
  j["params"] = std::vector<std::string>(ws.table()->params().begin(), ws.table()->params().end());
  j["algebras"] = nlohmann::ordered_json::array();
  for (const auto& [name, a] : ws.algebras()) j["algebras"].push_back(algebra_json(*a));

  std::vector<ModulePtr> mods;
  std::set<std::string> names;
  auto add = [&](const ModulePtr& m) {
    if (m && names.insert(m->name()).second) mods.push_back(m);
  };
  for (const auto& [name, m] : ws.modules()) add(m);
  for (const auto& m : r.modules) add(m);
  for (const auto& op : r.operators) {
    add(op.W);
    add(op.M);
    add(op.N);
  }
  j["modules"] = nlohmann::ordered_json::array();
  for (const auto& m : mods) j["modules"].push_back(module_json(*m));
  j["operators"] = nlohmann::ordered_json::array();
  std::set<std::string> op_names;
  for (const auto& op : r.operators)
    if (op_names.insert(op.name).second) j["operators"].push_back(operator_json(op));
  for (const auto& [name, op] : ws.operators())
    if (op_names.insert(op.name).second) j["operators"].push_back(operator_json(op));
  return j;
}

}  // namespace lca
