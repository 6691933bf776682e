#include "presheaf.hpp"

#include <algorithm>
#include <numeric>

namespace etendue {

struct Presheaf::Data {
  FinCategory base;
  std::vector<std::vector<std::string>> names;  // per stage
  std::vector<std::map<std::string, ElemId, std::less<>>> index;
  std::vector<std::vector<ElemId>> act;  // per morphism, indexed by cod-stage element
  int total = 0;
};

const FinCategory& Presheaf::base() const { return d_->base; }
int Presheaf::size(ObjId stage) const { return static_cast<int>(d_->names[stage].size()); }
int Presheaf::total_size() const { return d_->total; }

const std::string& Presheaf::element_name(ObjId stage, ElemId x) const {
  return d_->names[stage][x];
}

std::optional<ElemId> Presheaf::find_element(ObjId stage, std::string_view name) const {
  const auto& idx = d_->index[stage];
  auto it = idx.find(name);
  if (it == idx.end()) return std::nullopt;
  return it->second;
}

ElemId Presheaf::act(MorId f, ElemId x) const { return d_->act[f][x]; }

PresheafBuilder::PresheafBuilder(FinCategory base) : base_(std::move(base)) {
  internal_check(static_cast<bool>(base_), "presheaf over an empty handle");
  names_.resize(base_.object_count());
  index_.resize(base_.object_count());
  act_.resize(base_.morphism_count());
}

ElemId PresheafBuilder::add_element(ObjId stage, std::string name) {
  if (stage < 0 || stage >= base_.object_count())
    fail(ErrorCode::malformed_input, "element stage out of range: " + name);
  for (const auto& column : act_)
    if (!column.empty())
      fail(ErrorCode::malformed_input, "elements must be declared before actions");
  ElemId id = static_cast<ElemId>(names_[stage].size());
  if (!index_[stage].emplace(name, id).second)
    fail(ErrorCode::malformed_input,
         "duplicate element id at " + base_.object_name(stage) + ": " + name);
  names_[stage].push_back(std::move(name));
  return id;
}

void PresheafBuilder::set_action(MorId f, ElemId at_cod, ElemId at_dom) {
  if (f < 0 || f >= base_.morphism_count())
    fail(ErrorCode::malformed_input, "action references an unknown morphism");
  auto& column = act_[f];
  if (column.empty()) column.assign(names_[base_.cod(f)].size(), kNoElem);
  if (at_cod < 0 || at_cod >= static_cast<ElemId>(column.size()) || at_dom < 0 ||
      at_dom >= static_cast<ElemId>(names_[base_.dom(f)].size()))
    fail(ErrorCode::malformed_input,
         "action entry out of range on " + base_.morphism_name(f));
  if (column[at_cod] != kNoElem && column[at_cod] != at_dom)
    fail(ErrorCode::malformed_input,
         "conflicting action entries on " + base_.morphism_name(f));
  column[at_cod] = at_dom;
}

Presheaf PresheafBuilder::finish() {
  auto d = std::make_shared<Presheaf::Data>();
  d->base = base_;
  d->names = names_;
  d->index = index_;
  d->act = act_;
  for (const auto& stage_names : d->names) d->total += static_cast<int>(stage_names.size());
  auto elem_ref = [&](ObjId stage, ElemId x) {
    return d->names[stage][x] + "@" + base_.object_name(stage);
  };
  for (MorId f = 0; f < base_.morphism_count(); ++f) {
    auto& column = d->act[f];
    column.resize(d->names[base_.cod(f)].size(), kNoElem);
    for (ElemId x = 0; x < static_cast<ElemId>(column.size()); ++x) {
      if (base_.is_identity(f)) {
        if (column[x] == kNoElem) column[x] = x;
        if (column[x] != x)
          fail(ErrorCode::axiom_violation,
               "identity acts non-trivially on " + elem_ref(base_.cod(f), x));
      } else if (column[x] == kNoElem) {
        fail(ErrorCode::axiom_violation, "missing action of " + base_.morphism_name(f) +
                                             " on " + elem_ref(base_.cod(f), x));
      }
    }
  }
  // Contravariant functoriality on every composable pair.
  for (MorId g = 0; g < base_.morphism_count(); ++g) {
    for (MorId f = 0; f < base_.morphism_count(); ++f) {
      if (!base_.composable(g, f)) continue;
      MorId gf = base_.compose(g, f);
      const ObjId e = base_.cod(g);
      for (ElemId z = 0; z < static_cast<ElemId>(d->names[e].size()); ++z) {
        if (d->act[gf][z] != d->act[f][d->act[g][z]])
          fail(ErrorCode::axiom_violation,
               "action is not functorial on (" + base_.morphism_name(g) + ", " +
                   base_.morphism_name(f) + ") at " + elem_ref(e, z));
      }
    }
  }
  return Presheaf(std::move(d));
}

std::optional<std::string> naturality_violation(const PresheafMap& m) {
  internal_check(static_cast<bool>(m.dom) && static_cast<bool>(m.cod), "map between empty handles");
  if (!m.dom.base().same(m.cod.base())) return "map endpoints live over different bases";
  const FinCategory& cat = m.dom.base();
  if (static_cast<int>(m.comp.size()) != cat.object_count()) return "component list size mismatch";
  for (ObjId a = 0; a < cat.object_count(); ++a) {
    if (static_cast<int>(m.comp[a].size()) != m.dom.size(a)) return "component size mismatch";
    for (ElemId x : m.comp[a])
      if (x < 0 || x >= m.cod.size(a)) return "component value out of range";
  }
  for (MorId f = 0; f < cat.morphism_count(); ++f) {
    const ObjId c = cat.dom(f), dd = cat.cod(f);
    for (ElemId x = 0; x < m.dom.size(dd); ++x) {
      if (m.comp[c][m.dom.act(f, x)] != m.cod.act(f, m.comp[dd][x]))
        return "naturality fails along " + cat.morphism_name(f) + " at element " +
               m.dom.element_name(dd, x) + "@" + cat.object_name(dd);
    }
  }
  return std::nullopt;
}

PresheafMap map_compose(const PresheafMap& outer, const PresheafMap& inner) {
  if (!inner.cod.same(outer.dom))
    fail(ErrorCode::parent_mismatch, "map composition endpoints disagree");
  PresheafMap r;
  r.dom = inner.dom;
  r.cod = outer.cod;
  r.comp.resize(inner.comp.size());
  for (std::size_t a = 0; a < inner.comp.size(); ++a) {
    r.comp[a].resize(inner.comp[a].size());
    for (std::size_t x = 0; x < inner.comp[a].size(); ++x)
      r.comp[a][x] = outer.comp[a][inner.comp[a][x]];
  }
  return r;
}

Presheaf empty_presheaf(const FinCategory& cat) { return PresheafBuilder(cat).finish(); }

Presheaf terminal_presheaf(const FinCategory& cat) {
  PresheafBuilder b(cat);
  for (ObjId a = 0; a < cat.object_count(); ++a) b.add_element(a, "*");
  for (MorId f = 0; f < cat.morphism_count(); ++f) b.set_action(f, 0, 0);
  return b.finish();
}

Presheaf yoneda(const FinCategory& cat, ObjId c) {
  if (c < 0 || c >= cat.object_count())
    fail(ErrorCode::unknown_name, "representable at an unknown object");
  PresheafBuilder b(cat);
  // Element i at stage D is hom(D, c)[i], named after the morphism.
  for (ObjId d = 0; d < cat.object_count(); ++d)
    for (MorId g : cat.hom(d, c)) b.add_element(d, cat.morphism_name(g));
  auto pos = [&](ObjId d, MorId g) {
    const auto& h = cat.hom(d, c);
    return static_cast<ElemId>(std::find(h.begin(), h.end(), g) - h.begin());
  };
  for (MorId f = 0; f < cat.morphism_count(); ++f) {
    const auto& h = cat.hom(cat.cod(f), c);
    for (ElemId i = 0; i < static_cast<ElemId>(h.size()); ++i)
      b.set_action(f, i, pos(cat.dom(f), cat.compose(h[i], f)));
  }
  return b.finish();
}

Coproduct coproduct(const Presheaf& x, const Presheaf& y) {
  if (!x.base().same(y.base()))
    fail(ErrorCode::parent_mismatch, "coproduct over different bases");
  const FinCategory& cat = x.base();
  PresheafBuilder b(cat);
  for (ObjId a = 0; a < cat.object_count(); ++a) {
    for (ElemId i = 0; i < x.size(a); ++i) b.add_element(a, "l:" + x.element_name(a, i));
    for (ElemId i = 0; i < y.size(a); ++i) b.add_element(a, "r:" + y.element_name(a, i));
  }
  for (MorId f = 0; f < cat.morphism_count(); ++f) {
    const ObjId cd = cat.cod(f);
    for (ElemId i = 0; i < x.size(cd); ++i) b.set_action(f, i, x.act(f, i));
    for (ElemId i = 0; i < y.size(cd); ++i)
      b.set_action(f, x.size(cd) + i, x.size(cat.dom(f)) + y.act(f, i));
  }
  Coproduct out;
  out.presheaf = b.finish();
  out.left.dom = x;
  out.left.cod = out.presheaf;
  out.right.dom = y;
  out.right.cod = out.presheaf;
  out.left.comp.resize(cat.object_count());
  out.right.comp.resize(cat.object_count());
  for (ObjId a = 0; a < cat.object_count(); ++a) {
    out.left.comp[a].resize(x.size(a));
    std::iota(out.left.comp[a].begin(), out.left.comp[a].end(), 0);
    out.right.comp[a].resize(y.size(a));
    std::iota(out.right.comp[a].begin(), out.right.comp[a].end(), x.size(a));
  }
  return out;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

Quotient coequalizer(const PresheafMap& p, const PresheafMap& q) {
  if (!p.dom.same(q.dom) || !p.cod.same(q.cod))
    fail(ErrorCode::parent_mismatch, "coequalizer legs must be parallel");
  for (const PresheafMap* m : {&p, &q})
    if (auto why = naturality_violation(*m)) fail(ErrorCode::not_natural, *why);
  const Presheaf& x = p.cod;
  const FinCategory& cat = x.base();
  std::vector<UnionFind> uf;
  uf.reserve(cat.object_count());
  for (ObjId a = 0; a < cat.object_count(); ++a) uf.emplace_back(x.size(a));
  for (ObjId a = 0; a < cat.object_count(); ++a)
    for (ElemId t = 0; t < p.dom.size(a); ++t) uf[a].unite(p.comp[a][t], q.comp[a][t]);
  // The generated equivalence must also be a congruence for the action:
  // close under x ~ y  =>  x.f ~ y.f until stable.
  bool changed = true;
  while (changed) {
    changed = false;
    for (MorId f = 0; f < cat.morphism_count(); ++f) {
      const ObjId c = cat.dom(f), d = cat.cod(f);
      // Group cod-stage elements by class; within a class, actions must merge.
      std::vector<ElemId> seen(x.size(d), kNoElem);
      for (ElemId e = 0; e < x.size(d); ++e) {
        int root = uf[d].find(e);
        if (seen[root] == kNoElem) {
          seen[root] = e;
        } else if (uf[c].find(x.act(f, e)) != uf[c].find(x.act(f, seen[root]))) {
          uf[c].unite(x.act(f, e), x.act(f, seen[root]));
          changed = true;
        }
      }
    }
  }
  // Canonical classes: ordered by least member id, named by least member name.
  std::vector<std::vector<ElemId>> class_index(cat.object_count());
  std::vector<std::vector<ElemId>> rep(cat.object_count());
  PresheafBuilder b(cat);
  for (ObjId a = 0; a < cat.object_count(); ++a) {
    class_index[a].assign(x.size(a), kNoElem);
    for (ElemId e = 0; e < x.size(a); ++e) {
      int root = uf[a].find(e);
      if (class_index[a][root] == kNoElem) {
        class_index[a][root] = static_cast<ElemId>(rep[a].size());
        rep[a].push_back(e);
      }
      class_index[a][e] = class_index[a][root];
    }
    for (ElemId cls = 0; cls < static_cast<ElemId>(rep[a].size()); ++cls) {
      std::string least = x.element_name(a, rep[a][cls]);
      for (ElemId e = 0; e < x.size(a); ++e)
        if (class_index[a][e] == cls) least = std::min(least, x.element_name(a, e));
      b.add_element(a, least);
    }
  }
  for (MorId f = 0; f < cat.morphism_count(); ++f) {
    const ObjId c = cat.dom(f), d = cat.cod(f);
    for (ElemId cls = 0; cls < static_cast<ElemId>(rep[d].size()); ++cls)
      b.set_action(f, cls, class_index[c][x.act(f, rep[d][cls])]);
  }
  Quotient out;
  out.presheaf = b.finish();
  out.proj.dom = x;
  out.proj.cod = out.presheaf;
  out.proj.comp = class_index;
  return out;
}

PushoutResult pushout(const PresheafMap& f, const PresheafMap& g) {
  if (!f.dom.same(g.dom)) fail(ErrorCode::parent_mismatch, "pushout legs must share their source");
  Coproduct cop = coproduct(f.cod, g.cod);
  Quotient ce = coequalizer(map_compose(cop.left, f), map_compose(cop.right, g));
  PushoutResult out;
  out.presheaf = ce.presheaf;
  out.from_left = map_compose(ce.proj, cop.left);
  out.from_right = map_compose(ce.proj, cop.right);
  return out;
}

int Subpresheaf::total() const {
  int t = 0;
  for (const auto& stage : member)
    for (char c : stage) t += (c != 0);
  return t;
}

namespace {

Subpresheaf make_sub(const Presheaf& x, bool full) {
  Subpresheaf s;
  s.parent = x;
  s.member.resize(x.base().object_count());
  for (ObjId a = 0; a < x.base().object_count(); ++a)
    s.member[a].assign(x.size(a), full ? 1 : 0);
  return s;
}

void require_same_parent(const Subpresheaf& a, const Subpresheaf& b) {
  if (!a.parent.same(b.parent))
    fail(ErrorCode::parent_mismatch, "subpresheaf arguments have different parents");
}

}  // namespace

Subpresheaf sub_bottom(const Presheaf& x) { return make_sub(x, false); }
Subpresheaf sub_top(const Presheaf& x) { return make_sub(x, true); }

Subpresheaf sub_closure(const Presheaf& x, std::vector<std::vector<char>> raw) {
  const FinCategory& cat = x.base();
  internal_check(static_cast<int>(raw.size()) == cat.object_count(), "closure input shape");
  std::vector<std::pair<ObjId, ElemId>> work;
  for (ObjId a = 0; a < cat.object_count(); ++a) {
    internal_check(static_cast<int>(raw[a].size()) == x.size(a), "closure input shape");
    for (ElemId e = 0; e < x.size(a); ++e)
      if (raw[a][e]) work.emplace_back(a, e);
  }
  while (!work.empty()) {
    auto [d, e] = work.back();
    work.pop_back();
    for (MorId f : cat.into(d)) {
      ElemId img = x.act(f, e);
      if (!raw[cat.dom(f)][img]) {
        raw[cat.dom(f)][img] = 1;
        work.emplace_back(cat.dom(f), img);
      }
    }
  }
  Subpresheaf s;
  s.parent = x;
  s.member = std::move(raw);
  return s;
}

bool sub_is_closed(const Subpresheaf& a) {
  const FinCategory& cat = a.parent.base();
  for (MorId f = 0; f < cat.morphism_count(); ++f)
    for (ElemId e = 0; e < a.parent.size(cat.cod(f)); ++e)
      if (a.member[cat.cod(f)][e] && !a.member[cat.dom(f)][a.parent.act(f, e)]) return false;
  return true;
}

bool sub_leq(const Subpresheaf& a, const Subpresheaf& b) {
  require_same_parent(a, b);
  for (std::size_t s = 0; s < a.member.size(); ++s)
    for (std::size_t e = 0; e < a.member[s].size(); ++e)
      if (a.member[s][e] && !b.member[s][e]) return false;
  return true;
}

bool sub_eq(const Subpresheaf& a, const Subpresheaf& b) {
  require_same_parent(a, b);
  return a.member == b.member;
}

Subpresheaf sub_meet(const Subpresheaf& a, const Subpresheaf& b) {
  require_same_parent(a, b);
  Subpresheaf s = a;
  for (std::size_t st = 0; st < s.member.size(); ++st)
    for (std::size_t e = 0; e < s.member[st].size(); ++e)
      s.member[st][e] = s.member[st][e] && b.member[st][e];
  return s;
}

Subpresheaf sub_join(const Subpresheaf& a, const Subpresheaf& b) {
  require_same_parent(a, b);
  Subpresheaf s = a;
  for (std::size_t st = 0; st < s.member.size(); ++st)
    for (std::size_t e = 0; e < s.member[st].size(); ++e)
      s.member[st][e] = s.member[st][e] || b.member[st][e];
  return s;
}

Subpresheaf sub_implies(const Subpresheaf& a, const Subpresheaf& b) {
  require_same_parent(a, b);
  const Presheaf& x = a.parent;
  const FinCategory& cat = x.base();
  Subpresheaf s = make_sub(x, false);
  for (ObjId d = 0; d < cat.object_count(); ++d) {
    for (ElemId e = 0; e < x.size(d); ++e) {
      bool ok = true;
      for (MorId f : cat.into(d)) {
        ElemId img = x.act(f, e);
        if (a.member[cat.dom(f)][img] && !b.member[cat.dom(f)][img]) {
          ok = false;
          break;
        }
      }
      s.member[d][e] = ok;
    }
  }
  return s;
}

Subpresheaf sub_not(const Subpresheaf& a) { return sub_implies(a, sub_bottom(a.parent)); }

Subpresheaf sub_subtract(const Subpresheaf& a, const Subpresheaf& b) {
  require_same_parent(a, b);
  std::vector<std::vector<char>> raw = a.member;
  for (std::size_t st = 0; st < raw.size(); ++st)
    for (std::size_t e = 0; e < raw[st].size(); ++e)
      raw[st][e] = a.member[st][e] && !b.member[st][e];
  return sub_closure(a.parent, std::move(raw));
}

Subpresheaf sub_boundary(const Subpresheaf& a) {
  return sub_meet(a, sub_subtract(sub_top(a.parent), a));
}

Subpresheaf sub_gamma(const Subpresheaf& a, const Subpresheaf& b) {
  return sub_join(a, sub_implies(a, b));
}

Subpresheaf image_of_element(const Presheaf& x, ObjId stage, ElemId elem) {
  if (stage < 0 || stage >= x.base().object_count() || elem < 0 || elem >= x.size(stage))
    fail(ErrorCode::unknown_name, "image of an unknown element");
  Subpresheaf s = sub_bottom(x);
  for (MorId g : x.base().into(stage)) s.member[x.base().dom(g)][x.act(g, elem)] = 1;
  internal_check(sub_is_closed(s), "principal image must be action-closed");
  return s;
}

Realized sub_realize(const Subpresheaf& u) {
  if (!sub_is_closed(u))
    fail(ErrorCode::malformed_input, "cannot realize an element set that is not action-closed");
  const Presheaf& x = u.parent;
  const FinCategory& cat = x.base();
  PresheafBuilder b(cat);
  std::vector<std::vector<ElemId>> down(cat.object_count());  // parent id -> new id
  Realized out;
  out.inclusion.comp.resize(cat.object_count());
  for (ObjId a = 0; a < cat.object_count(); ++a) {
    down[a].assign(x.size(a), kNoElem);
    for (ElemId e = 0; e < x.size(a); ++e) {
      if (!u.member[a][e]) continue;
      down[a][e] = b.add_element(a, x.element_name(a, e));
      out.inclusion.comp[a].push_back(e);
    }
  }
  for (MorId f = 0; f < cat.morphism_count(); ++f)
    for (ElemId e = 0; e < x.size(cat.cod(f)); ++e)
      if (u.member[cat.cod(f)][e])
        b.set_action(f, down[cat.cod(f)][e], down[cat.dom(f)][x.act(f, e)]);
  out.presheaf = b.finish();
  out.inclusion.dom = out.presheaf;
  out.inclusion.cod = x;
  return out;
}

std::vector<Subpresheaf> subobject_lattice(const Presheaf& x, std::size_t budget) {
  const FinCategory& cat = x.base();
  std::map<std::vector<std::vector<char>>, int> seen;
  std::vector<Subpresheaf> found;
  found.push_back(sub_bottom(x));
  seen.emplace(found.front().member, 0);
  for (std::size_t i = 0; i < found.size(); ++i) {
    if (found.size() > budget)
      fail(ErrorCode::budget_exceeded, "subobject enumeration exceeded its budget");
    Subpresheaf base_sub = found[i];
    for (ObjId a = 0; a < cat.object_count(); ++a) {
      for (ElemId e = 0; e < x.size(a); ++e) {
        if (base_sub.member[a][e]) continue;
        std::vector<std::vector<char>> raw = base_sub.member;
        raw[a][e] = 1;
        Subpresheaf closed = sub_closure(x, std::move(raw));
        if (seen.emplace(closed.member, 0).second) found.push_back(std::move(closed));
      }
    }
  }
  std::sort(found.begin(), found.end(), [](const Subpresheaf& a, const Subpresheaf& b) {
    int ta = a.total(), tb = b.total();
    if (ta != tb) return ta < tb;
    return a.member < b.member;
  });
  return found;
}

ElementsCategory elements_category(const Presheaf& x) {
  const FinCategory& cat = x.base();
  ElementsCategory out;
  CategoryBuilder b;
  out.object_of.resize(cat.object_count());
  for (ObjId a = 0; a < cat.object_count(); ++a) {
    out.object_of[a].resize(x.size(a));
    for (ElemId e = 0; e < x.size(a); ++e) {
      out.object_of[a][e] =
          b.add_object(x.element_name(a, e) + "@" + cat.object_name(a));
      out.label.emplace_back(a, e);
    }
  }
  // One morphism (y.f, C) -> (y, D) per base f: C -> D and y at D.
  std::vector<std::vector<MorId>> idx(cat.morphism_count());
  for (MorId f = 0; f < cat.morphism_count(); ++f) {
    const ObjId c = cat.dom(f), d = cat.cod(f);
    idx[f].resize(x.size(d));
    for (ElemId y = 0; y < x.size(d); ++y) {
      idx[f][y] = b.add_morphism(cat.morphism_name(f) + "@" + x.element_name(d, y),
                                 out.object_of[c][x.act(f, y)], out.object_of[d][y]);
      out.base_morphism.push_back(f);
    }
  }
  for (ObjId a = 0; a < cat.object_count(); ++a)
    for (ElemId e = 0; e < x.size(a); ++e)
      b.set_identity(out.object_of[a][e], idx[cat.identity(a)][e]);
  for (MorId g = 0; g < cat.morphism_count(); ++g) {
    for (MorId f = 0; f < cat.morphism_count(); ++f) {
      if (!cat.composable(g, f)) continue;
      const MorId gf = cat.compose(g, f);
      for (ElemId z = 0; z < x.size(cat.cod(g)); ++z)
        b.set_compose(idx[g][z], idx[f][x.act(g, z)], idx[gf][z]);
    }
  }
  out.cat = b.finish();
  return out;
}

Presheaf omega_presheaf(const FinCategory& cat) {
  const OmegaTable& om = cat.omega();
  PresheafBuilder b(cat);
  for (ObjId a = 0; a < cat.object_count(); ++a)
    for (int i = 0; i < om.count(a); ++i) b.add_element(a, "s" + std::to_string(i));
  for (MorId f = 0; f < cat.morphism_count(); ++f)
    for (int i = 0; i < om.count(cat.cod(f)); ++i)
      b.set_action(f, i, om.restr[f][i]);
  return b.finish();
}

PresheafMap characteristic(const Subpresheaf& u) {
  const Presheaf& x = u.parent;
  const FinCategory& cat = x.base();
  const OmegaTable& om = cat.omega();
  PresheafMap m;
  m.dom = x;
  m.cod = omega_presheaf(cat);
  m.comp.resize(cat.object_count());
  for (ObjId d = 0; d < cat.object_count(); ++d) {
    m.comp[d].resize(x.size(d));
    for (ElemId e = 0; e < x.size(d); ++e) {
      std::vector<MorId> members;
      for (MorId f : cat.into(d))
        if (u.member[cat.dom(f)][x.act(f, e)]) members.push_back(f);
      m.comp[d][e] = om.index_of(d, members);
    }
  }
  return m;
}

int ObjectSieve::count() const {
  int t = 0;
  for (char c : members) t += (c != 0);
  return t;
}

bool object_sieve_closed(const FinCategory& cat, const ObjectSieve& u) {
  internal_check(static_cast<int>(u.members.size()) == cat.object_count(), "object sieve shape");
  for (MorId f = 0; f < cat.morphism_count(); ++f)
    if (u.members[cat.cod(f)] && !u.members[cat.dom(f)]) return false;
  return true;
}

std::vector<ObjectSieve> all_object_sieves(const FinCategory& cat) {
  auto close = [&](std::vector<char>& s) {
    std::vector<ObjId> work;
    for (ObjId a = 0; a < cat.object_count(); ++a)
      if (s[a]) work.push_back(a);
    while (!work.empty()) {
      ObjId d = work.back();
      work.pop_back();
      for (MorId f : cat.into(d)) {
        if (!s[cat.dom(f)]) {
          s[cat.dom(f)] = 1;
          work.push_back(cat.dom(f));
        }
      }
    }
  };
  std::map<std::vector<char>, int> seen;
  std::vector<std::vector<char>> found;
  found.emplace_back(cat.object_count(), 0);
  seen.emplace(found.front(), 0);
  for (std::size_t i = 0; i < found.size(); ++i) {
    std::vector<char> base_set = found[i];
    for (ObjId a = 0; a < cat.object_count(); ++a) {
      if (base_set[a]) continue;
      std::vector<char> s = base_set;
      s[a] = 1;
      close(s);
      if (seen.emplace(s, 0).second) found.push_back(std::move(s));
    }
  }
  std::sort(found.begin(), found.end(), [](const std::vector<char>& a, const std::vector<char>& b) {
    int ta = static_cast<int>(std::count(a.begin(), a.end(), 1));
    int tb = static_cast<int>(std::count(b.begin(), b.end(), 1));
    if (ta != tb) return ta < tb;
    return a < b;
  });
  std::vector<ObjectSieve> out;
  out.reserve(found.size());
  for (auto& f : found) out.push_back(ObjectSieve{std::move(f)});
  return out;
}

Subpresheaf object_sieve_subterminal(const Presheaf& terminal, const ObjectSieve& u) {
  const FinCategory& cat = terminal.base();
  internal_check(static_cast<int>(u.members.size()) == cat.object_count(), "object sieve shape");
  if (!object_sieve_closed(cat, u))
    fail(ErrorCode::malformed_input, "object set is not downward closed");
  Subpresheaf s;
  s.parent = terminal;
  s.member.resize(cat.object_count());
  for (ObjId a = 0; a < cat.object_count(); ++a) {
    if (terminal.size(a) != 1)
      fail(ErrorCode::parent_mismatch, "subterminal parent must be terminal-shaped");
    s.member[a].assign(1, u.members[a]);
  }
  return s;
}

}  // namespace etendue
