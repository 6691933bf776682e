#include "logic.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <tuple>

namespace etendue {

struct Formula::Node {
  Kind kind;
  std::string name;      // variable, binder, or constant label
  Formula a, b;          // operands; forall body in a
  ObjectSieve constant;
  std::vector<std::string> free;
};

namespace {

std::vector<std::string> merge_free(const std::vector<std::string>& x,
                                    const std::vector<std::string>& y) {
  std::vector<std::string> out;
  std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return out;
}

bool binds_var(const Formula& f, const std::string& name) {
  if (!f) return false;
  switch (f.kind()) {
    case Formula::Kind::bottom:
    case Formula::Kind::top:
    case Formula::Kind::var_:
    case Formula::Kind::const_subterminal:
      return false;
    case Formula::Kind::forall_omega:
      return f.var_name() == name || binds_var(f.body(), name);
    default:
      return binds_var(f.lhs(), name) || binds_var(f.rhs(), name);
  }
}

}  // namespace

Formula Formula::bottom() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::bottom;
  return Formula(std::move(n));
}

Formula Formula::top() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::top;
  return Formula(std::move(n));
}

Formula Formula::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::var_;
  n->free = {name};
  n->name = std::move(name);
  return Formula(std::move(n));
}

Formula Formula::and_(Formula a, Formula b) {
  internal_check(static_cast<bool>(a) && static_cast<bool>(b), "empty formula operand");
  auto n = std::make_shared<Node>();
  n->kind = Kind::and_;
  n->free = merge_free(a.free_vars(), b.free_vars());
  n->a = std::move(a);
  n->b = std::move(b);
  return Formula(std::move(n));
}

Formula Formula::or_(Formula a, Formula b) {
  internal_check(static_cast<bool>(a) && static_cast<bool>(b), "empty formula operand");
  auto n = std::make_shared<Node>();
  n->kind = Kind::or_;
  n->free = merge_free(a.free_vars(), b.free_vars());
  n->a = std::move(a);
  n->b = std::move(b);
  return Formula(std::move(n));
}

Formula Formula::implies(Formula a, Formula b) {
  internal_check(static_cast<bool>(a) && static_cast<bool>(b), "empty formula operand");
  auto n = std::make_shared<Node>();
  n->kind = Kind::implies;
  n->free = merge_free(a.free_vars(), b.free_vars());
  n->a = std::move(a);
  n->b = std::move(b);
  return Formula(std::move(n));
}

Formula Formula::forall(std::string name, Formula body) {
  internal_check(static_cast<bool>(body), "empty formula operand");
  if (binds_var(body, name))
    fail(ErrorCode::malformed_input, "variable bound twice along a path: " + name);
  auto n = std::make_shared<Node>();
  n->kind = Kind::forall_omega;
  n->free = body.free_vars();
  n->free.erase(std::remove(n->free.begin(), n->free.end(), name), n->free.end());
  n->name = std::move(name);
  n->a = std::move(body);
  return Formula(std::move(n));
}

Formula Formula::constant(ObjectSieve u, std::string label) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::const_subterminal;
  n->constant = std::move(u);
  n->name = std::move(label);
  return Formula(std::move(n));
}

Formula Formula::gamma(Formula a, Formula b) { return or_(a, implies(a, std::move(b))); }

Formula Formula::ibd(ExtNat n) {
  if (n.is_neg_inf()) return bottom();
  if (n.is_pos_inf()) return top();
  if (n.value() > 1024) fail(ErrorCode::budget_exceeded, "bounded-depth index too large");
  Formula acc = bottom();
  for (std::int64_t k = 0; k <= n.value(); ++k) {
    std::string name = "x" + std::to_string(k);
    acc = forall(name, gamma(var(name), std::move(acc)));
  }
  return acc;
}

Formula::Kind Formula::kind() const { return n_->kind; }
const std::string& Formula::var_name() const { return n_->name; }
const Formula& Formula::lhs() const { return n_->a; }
const Formula& Formula::rhs() const { return n_->b; }
const Formula& Formula::body() const { return n_->a; }
const ObjectSieve& Formula::constant_set() const { return n_->constant; }
const std::vector<std::string>& Formula::free_vars() const { return n_->free; }

namespace {

// Precedence: => and forall lowest (0), \/ (1), /\ (2), atoms (3).
void print_formula(const Formula& f, int ambient, std::string& out) {
  auto wrap = [&](int prec, auto&& body) {
    if (ambient > prec) out += "(";
    body();
    if (ambient > prec) out += ")";
  };
  switch (f.kind()) {
    case Formula::Kind::bottom:
      out += "bot";
      break;
    case Formula::Kind::top:
      out += "top";
      break;
    case Formula::Kind::var_:
      out += f.var_name();
      break;
    case Formula::Kind::const_subterminal:
      out += "const(";
      if (!f.var_name().empty()) {
        out += f.var_name();
      } else {
        for (char c : f.constant_set().members) out += (c ? '1' : '0');
      }
      out += ")";
      break;
    case Formula::Kind::and_:
      wrap(2, [&] {
        print_formula(f.lhs(), 2, out);
        out += " /\\ ";
        print_formula(f.rhs(), 3, out);
      });
      break;
    case Formula::Kind::or_:
      wrap(1, [&] {
        print_formula(f.lhs(), 1, out);
        out += " \\/ ";
        print_formula(f.rhs(), 2, out);
      });
      break;
    case Formula::Kind::implies:
      wrap(0, [&] {
        print_formula(f.lhs(), 1, out);
        out += " => ";
        print_formula(f.rhs(), 0, out);
      });
      break;
    case Formula::Kind::forall_omega:
      wrap(0, [&] {
        out += "forall " + f.var_name() + ". ";
        print_formula(f.body(), 0, out);
      });
      break;
  }
}

}  // namespace

std::string Formula::to_string() const {
  std::string out;
  print_formula(*this, 0, out);
  return out;
}

namespace {

class Evaluator {
 public:
  Evaluator(const FinCategory& cat, std::size_t budget)
      : cat_(cat), om_(cat.omega()), budget_(budget) {}

  bool eval(const Formula& f, ObjId stage, const Environment& env) {
    if (++steps_ > budget_)
      fail(ErrorCode::budget_exceeded, "forcing evaluation exceeded its budget");
    switch (f.kind()) {
      case Formula::Kind::bottom:
        return false;
      case Formula::Kind::top:
        return true;
      case Formula::Kind::var_: {
        auto it = env.find(f.var_name());
        if (it == env.end())
          fail(ErrorCode::unknown_name, "unbound variable: " + f.var_name());
        return om_.is_max[stage][it->second] != 0;
      }
      case Formula::Kind::const_subterminal: {
        check_constant(f);
        return f.constant_set().contains(stage);
      }
      default:
        break;
    }
    // Composite node: memoize on the node, the stage, and the values of the
    // node's free variables (closed subformulas hit the cache per stage).
    std::vector<int> key_vals;
    key_vals.reserve(f.free_vars().size());
    for (const std::string& name : f.free_vars()) {
      auto it = env.find(name);
      if (it == env.end()) fail(ErrorCode::unknown_name, "unbound variable: " + name);
      key_vals.push_back(it->second);
    }
    MemoKey key{f.handle(), stage, std::move(key_vals)};
    auto hit = memo_.find(key);
    if (hit != memo_.end()) return hit->second;
    bool value = true;
    switch (f.kind()) {
      case Formula::Kind::and_:
        value = eval(f.lhs(), stage, env) && eval(f.rhs(), stage, env);
        break;
      case Formula::Kind::or_:
        value = eval(f.lhs(), stage, env) || eval(f.rhs(), stage, env);
        break;
      case Formula::Kind::implies: {
        for (MorId g : cat_.into(stage)) {
          Environment moved = restrict_env(env, f, g);
          if (eval(f.lhs(), cat_.dom(g), moved) && !eval(f.rhs(), cat_.dom(g), moved)) {
            value = false;
            break;
          }
        }
        break;
      }
      case Formula::Kind::forall_omega: {
        for (MorId g : cat_.into(stage)) {
          const ObjId e = cat_.dom(g);
          Environment moved = restrict_env(env, f, g);
          for (int s = 0; value && s < om_.count(e); ++s) {
            moved[f.var_name()] = s;
            value = eval(f.body(), e, moved);
          }
          if (!value) break;
        }
        break;
      }
      default:
        internal_check(false, "unhandled formula kind");
    }
    memo_.emplace(std::move(key), value);
    return value;
  }

 private:
  using MemoKey = std::tuple<const void*, ObjId, std::vector<int>>;

  Environment restrict_env(const Environment& env, const Formula& node, MorId g) {
    Environment out;
    for (const std::string& name : node.free_vars()) {
      auto it = env.find(name);
      if (it == env.end()) fail(ErrorCode::unknown_name, "unbound variable: " + name);
      out.emplace(name, om_.restr[g][it->second]);
    }
    return out;
  }

  void check_constant(const Formula& f) {
    const void* id = f.handle();
    if (checked_consts_.count(id)) return;
    const ObjectSieve& u = f.constant_set();
    if (static_cast<int>(u.members.size()) != cat_.object_count())
      fail(ErrorCode::malformed_input, "constant object set has the wrong shape");
    if (!object_sieve_closed(cat_, u))
      fail(ErrorCode::malformed_input, "constant object set is not downward closed");
    checked_consts_.insert(id);
  }

  const FinCategory& cat_;
  const OmegaTable& om_;
  std::size_t budget_;
  std::size_t steps_ = 0;
  std::map<MemoKey, bool> memo_;
  std::set<const void*> checked_consts_;
};

}  // namespace

bool forces(const FinCategory& cat, ObjId stage, const Environment& env, const Formula& f,
            std::size_t budget) {
  if (!f) fail(ErrorCode::malformed_input, "empty formula");
  if (stage < 0 || stage >= cat.object_count())
    fail(ErrorCode::unknown_name, "forcing stage out of range");
  const OmegaTable& om = cat.omega();
  for (const auto& [name, idx] : env)
    if (idx < 0 || idx >= om.count(stage))
      fail(ErrorCode::malformed_input, "binding out of range for variable " + name);
  Evaluator ev(cat, budget);
  return ev.eval(f, stage, env);
}

ObjectSieve sentence_value(const FinCategory& cat, const Formula& f, std::size_t budget) {
  if (!f) fail(ErrorCode::malformed_input, "empty formula");
  if (!f.free_vars().empty())
    fail(ErrorCode::unknown_name, "sentence has a free variable: " + f.free_vars().front());
  Evaluator ev(cat, budget);
  ObjectSieve out;
  out.members.resize(cat.object_count());
  for (ObjId d = 0; d < cat.object_count(); ++d) out.members[d] = ev.eval(f, d, {});
  internal_check(object_sieve_closed(cat, out), "sentence value must be downward closed");
  return out;
}

bool satisfies(const FinCategory& cat, const Formula& f, std::size_t budget) {
  ObjectSieve v = sentence_value(cat, f, budget);
  return v.count() == cat.object_count();
}

ObjectSieve ibd_sieve_char(const FinCategory& cat, ExtNat n) {
  ObjectSieve out;
  out.members.assign(cat.object_count(), 0);
  if (n.is_neg_inf()) return out;
  if (n.is_pos_inf()) {
    out.members.assign(cat.object_count(), 1);
    return out;
  }
  // Longest chain of non-isos ending at each object; a non-iso cycle that
  // reaches an object makes its chains unbounded.
  constexpr std::int64_t kUnbounded = -1;
  std::vector<std::int64_t> longest(cat.object_count(), 0);
  std::vector<char> color(cat.object_count(), 0);  // 0 white, 1 gray, 2 black
  auto dfs = [&](auto&& self, ObjId d) -> void {
    color[d] = 1;
    std::int64_t best = 0;
    for (MorId f : cat.into(d)) {
      if (cat.class_of(f).iso) continue;
      const ObjId c = cat.dom(f);
      if (color[c] == 1) {
        best = kUnbounded;  // back edge: d lies on a non-iso cycle
        continue;
      }
      if (color[c] == 0) self(self, c);
      if (longest[c] == kUnbounded)
        best = kUnbounded;
      else if (best != kUnbounded)
        best = std::max(best, longest[c] + 1);
    }
    longest[d] = best;
    color[d] = 2;
  };
  for (ObjId d = 0; d < cat.object_count(); ++d)
    if (color[d] == 0) dfs(dfs, d);
  for (ObjId d = 0; d < cat.object_count(); ++d)
    out.members[d] = (longest[d] != kUnbounded && ExtNat::of(longest[d]) <= n);
  return out;
}

int EnumeratedLattice::implies(int a, int b) const {
  int r = bottom;
  for (int u = 0; u < size(); ++u)
    if (leq(meet[u][a], b)) r = join[r][u];
  return r;
}

namespace {

EnumeratedLattice lattice_from_bitsets(std::vector<std::vector<char>> bits,
                                       const char* what) {
  const int n = static_cast<int>(bits.size());
  std::map<std::vector<char>, int> index;
  for (int i = 0; i < n; ++i) {
    if (!index.emplace(bits[i], i).second)
      fail(ErrorCode::malformed_input, std::string(what) + ": duplicate lattice element");
  }
  EnumeratedLattice h;
  h.meet.assign(n, std::vector<int>(n, -1));
  h.join.assign(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::vector<char> lo = bits[i], hi = bits[i];
      for (std::size_t k = 0; k < lo.size(); ++k) {
        lo[k] = lo[k] && bits[j][k];
        hi[k] = hi[k] || bits[j][k];
      }
      auto mi = index.find(lo), ji = index.find(hi);
      if (mi == index.end() || ji == index.end())
        fail(ErrorCode::malformed_input,
             std::string(what) + ": not closed under meet/join");
      h.meet[i][j] = mi->second;
      h.join[i][j] = ji->second;
    }
  }
  for (int i = 0; i < n; ++i) {
    bool bot = true, top = true;
    for (int j = 0; j < n; ++j) {
      bot = bot && h.meet[i][j] == i;
      top = top && h.join[i][j] == i;
    }
    if (bot) h.bottom = i;
    if (top) h.top = i;
  }
  internal_check(n == 0 || (h.bottom >= 0 && h.top >= 0), "lattice has no bounds");
  return h;
}

std::vector<char> flatten(const std::vector<std::vector<char>>& member) {
  std::vector<char> out;
  for (const auto& stage : member) out.insert(out.end(), stage.begin(), stage.end());
  return out;
}

}  // namespace

EnumeratedLattice lattice_of_subobjects(const std::vector<Subpresheaf>& subs) {
  std::vector<std::vector<char>> bits;
  bits.reserve(subs.size());
  for (const auto& s : subs) {
    if (!subs.empty() && !s.parent.same(subs.front().parent))
      fail(ErrorCode::parent_mismatch, "lattice elements have different parents");
    bits.push_back(flatten(s.member));
  }
  return lattice_from_bitsets(std::move(bits), "subobject lattice");
}

EnumeratedLattice lattice_of_object_sieves(const FinCategory& cat,
                                           const std::vector<ObjectSieve>& sieves) {
  std::vector<std::vector<char>> bits;
  bits.reserve(sieves.size());
  for (const auto& u : sieves) {
    if (static_cast<int>(u.members.size()) != cat.object_count() ||
        !object_sieve_closed(cat, u))
      fail(ErrorCode::malformed_input, "not a downward-closed object set");
    bits.push_back(u.members);
  }
  return lattice_from_bitsets(std::move(bits), "object-set lattice");
}

EnumeratedLattice lattice_of_sieves_on(const FinCategory& cat, ObjId d) {
  if (d < 0 || d >= cat.object_count())
    fail(ErrorCode::unknown_name, "sieve lattice at an unknown object");
  const OmegaTable& om = cat.omega();
  const int nmor = cat.morphism_count();
  std::vector<std::vector<char>> bits;
  bits.reserve(om.count(d));
  for (int i = 0; i < om.count(d); ++i) {
    std::vector<char> row(nmor, 0);
    for (MorId f : om.sieves[d][i]) row[f] = 1;
    bits.push_back(std::move(row));
  }
  return lattice_from_bitsets(std::move(bits), "sieve lattice");
}

bool widespread_by_definition(const EnumeratedLattice& h, int w) {
  if (w < 0 || w >= h.size()) fail(ErrorCode::unknown_name, "element not in the lattice");
  for (int v = 0; v < h.size(); ++v) {
    if (!h.leq(w, v)) continue;
    bool found = false;
    for (int u = 0; !found && u < h.size(); ++u)
      found = h.leq(w, u) && h.meet[v][u] == w && h.join[v][u] == h.top;
    if (!found) return false;
  }
  return true;
}

bool widespread_by_gamma(const EnumeratedLattice& h, int w) {
  if (w < 0 || w >= h.size()) fail(ErrorCode::unknown_name, "element not in the lattice");
  for (int v = 0; v < h.size(); ++v)
    if (h.join[v][h.implies(v, w)] != h.top) return false;
  return true;
}

bool widespread_sieve_by_sections(const FinCategory& cat, ObjId d,
                                  const std::vector<MorId>& sieve_members) {
  if (d < 0 || d >= cat.object_count())
    fail(ErrorCode::unknown_name, "sieve apex out of range");
  std::vector<char> in_sieve(cat.morphism_count(), 0);
  for (MorId f : sieve_members) {
    if (f < 0 || f >= cat.morphism_count() || cat.cod(f) != d)
      fail(ErrorCode::malformed_input, "sieve member does not target the apex");
    in_sieve[f] = 1;
  }
  for (MorId f : cat.into(d)) {
    if (in_sieve[f]) continue;
    bool has_section = false;
    for (MorId s : cat.hom(d, cat.dom(f))) {
      if (cat.compose(f, s) == cat.identity(d)) {
        has_section = true;
        break;
      }
    }
    if (!has_section) return false;
  }
  return true;
}

bool widespread_element(const EnumeratedLattice& h, int w) {
  return widespread_by_definition(h, w);
}

ObjectSieve meaning_sieve(const FinCategory& cat, const ObjectSieve& u) {
  if (static_cast<int>(u.members.size()) != cat.object_count() ||
      !object_sieve_closed(cat, u))
    fail(ErrorCode::malformed_input, "not a downward-closed object set");
  ObjectSieve out;
  out.members.resize(cat.object_count());
  for (ObjId d = 0; d < cat.object_count(); ++d) {
    bool ok = true;
    for (MorId f : cat.into(d)) {
      if (!u.contains(cat.dom(f)) && !cat.class_of(f).iso) {
        ok = false;
        break;
      }
    }
    out.members[d] = ok;
  }
  internal_check(object_sieve_closed(cat, out), "meaning sieve must be downward closed");
  return out;
}

bool internally_widespread(const FinCategory& cat, const ObjectSieve& u) {
  return meaning_sieve(cat, u).count() == cat.object_count();
}

Subpresheaf higgs_object(const FinCategory& cat) {
  Presheaf om = omega_presheaf(cat);
  const OmegaTable& table = cat.omega();
  Formula phi = Formula::forall("x", Formula::gamma(Formula::var("x"), Formula::var("y")));
  Evaluator ev(cat, std::size_t{1} << 26);
  Subpresheaf out;
  out.parent = om;
  out.member.resize(cat.object_count());
  for (ObjId d = 0; d < cat.object_count(); ++d) {
    out.member[d].resize(table.count(d));
    for (int s = 0; s < table.count(d); ++s) {
      Environment env;
      env.emplace("y", s);
      out.member[d][s] = ev.eval(phi, d, env);
    }
  }
  internal_check(sub_is_closed(out), "widespread sections must be action-closed");
  return out;
}

// ---------------------------------------------------------------------------
// Surface-syntax parser.

namespace {

struct Parser {
  std::string_view src;
  std::size_t pos = 0;
  const std::function<ObjectSieve(std::string_view)>& resolve;

  [[noreturn]] void err(const std::string& what) {
    fail(ErrorCode::parse_error,
         what + " at offset " + std::to_string(pos) + " in formula");
  }

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }

  bool eat(std::string_view tok) {
    skip_ws();
    if (src.substr(pos, tok.size()) == tok) {
      pos += tok.size();
      return true;
    }
    return false;
  }

  bool peek_ident_is(std::string_view word) {
    skip_ws();
    std::size_t save = pos;
    std::string id = try_ident();
    pos = save;
    return id == word;
  }

  std::string try_ident() {
    skip_ws();
    std::size_t start = pos;
    auto ok_first = [](char c) {
      return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    };
    auto ok_rest = [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    };
    if (pos < src.size() && ok_first(src[pos])) {
      ++pos;
      while (pos < src.size() && ok_rest(src[pos])) ++pos;
      return std::string(src.substr(start, pos - start));
    }
    return {};
  }

  std::string expect_ident() {
    std::string id = try_ident();
    if (id.empty()) err("expected an identifier");
    return id;
  }

  void expect(std::string_view tok) {
    if (!eat(tok)) err("expected '" + std::string(tok) + "'");
  }

  // Raw token up to the matching ')': constant names and ibd arguments.
  std::string raw_paren_content() {
    expect("(");
    std::size_t start = pos;
    while (pos < src.size() && src[pos] != ')') ++pos;
    if (pos >= src.size()) err("unterminated '('");
    std::string inner(src.substr(start, pos - start));
    ++pos;  // consume ')'
    while (!inner.empty() && std::isspace(static_cast<unsigned char>(inner.front())))
      inner.erase(inner.begin());
    while (!inner.empty() && std::isspace(static_cast<unsigned char>(inner.back())))
      inner.pop_back();
    return inner;
  }

  Formula parse_implies() {
    Formula left = parse_or();
    if (eat("=>")) return Formula::implies(std::move(left), parse_implies());
    return left;
  }

  Formula parse_or() {
    Formula left = parse_and();
    while (eat("\\/")) left = Formula::or_(std::move(left), parse_and());
    return left;
  }

  Formula parse_and() {
    Formula left = parse_atom();
    while (eat("/\\")) left = Formula::and_(std::move(left), parse_atom());
    return left;
  }

  Formula parse_atom() {
    skip_ws();
    if (eat("(")) {
      Formula inner = parse_implies();
      expect(")");
      return inner;
    }
    std::string id = try_ident();
    if (id.empty()) err("expected a formula");
    if (id == "bot") return Formula::bottom();
    if (id == "top") return Formula::top();
    if (id == "ibd") {
      std::string arg = raw_paren_content();
      auto n = ExtNat::parse(arg);
      if (!n) err("bad bounded-depth index '" + arg + "'");
      return Formula::ibd(*n);
    }
    if (id == "gamma") {
      expect("(");
      Formula a = parse_implies();
      expect(",");
      Formula b = parse_implies();
      expect(")");
      return Formula::gamma(std::move(a), std::move(b));
    }
    if (id == "const") {
      std::string name = raw_paren_content();
      if (!resolve) err("no constant resolver for '" + name + "'");
      return Formula::constant(resolve(name), name);
    }
    if (id == "forall") {
      std::string v = expect_ident();
      expect(".");
      return Formula::forall(std::move(v), parse_implies());
    }
    return Formula::var(std::move(id));
  }
};

}  // namespace

Formula parse_formula(std::string_view src,
                      const std::function<ObjectSieve(std::string_view)>& resolve_const) {
  Parser p{src, 0, resolve_const};
  Formula f = p.parse_implies();
  p.skip_ws();
  if (p.pos != src.size()) p.err("unexpected trailing input");
  return f;
}

}  // namespace etendue
