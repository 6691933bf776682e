#include "fincat.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>

namespace etendue {

struct FinCategory::Data {
  std::vector<std::string> objects;
  std::vector<std::string> mor_names;
  std::vector<ObjId> dom, cod;
  std::vector<MorId> identity;  // per object
  std::vector<char> is_id;      // per morphism
  std::vector<MorId> table;     // n*n, outer-major
  std::vector<std::vector<MorId>> hom;  // nobj*nobj buckets, ids ascending
  std::vector<std::vector<MorId>> in, out;
  std::map<std::string, ObjId, std::less<>> obj_index;
  std::map<std::string, MorId, std::less<>> mor_index;

  int nobj() const { return static_cast<int>(objects.size()); }
  int nmor() const { return static_cast<int>(dom.size()); }
  MorId comp(MorId g, MorId f) const { return table[static_cast<std::size_t>(g) * nmor() + f]; }

  mutable std::once_flag basic_once, strong_once, height_once, omega_once;
  mutable std::vector<MorphismClass> cls;
  mutable std::vector<int> iso_cls;
  mutable int iso_cls_count = 0;
  mutable std::vector<int> heights;
  mutable std::unique_ptr<OmegaTable> omega;
  mutable std::string omega_error;

  void ensure_basic() const;
  void ensure_strong() const;
  void ensure_heights() const;
  void ensure_omega(std::size_t max_sieves) const;
  bool orthogonal_to_all_monos(MorId f) const;
  std::string mor_ref(MorId f) const {
    return mor_names[f] + " : " + objects[dom[f]] + " -> " + objects[cod[f]];
  }
};

namespace {

// Duplicate detection buffer reusable across scans.
struct Stamps {
  std::vector<int> mark;
  int epoch = 0;
  explicit Stamps(std::size_t n) : mark(n, -1) {}
  void next() { ++epoch; }
  bool seen(int v) {
    if (mark[v] == epoch) return true;
    mark[v] = epoch;
    return false;
  }
};

}  // namespace

void FinCategory::Data::ensure_basic() const {
  std::call_once(basic_once, [this] {
    const int nm = nmor();
    cls.assign(nm, MorphismClass{});
    Stamps st(static_cast<std::size_t>(nm));
    for (MorId f = 0; f < nm; ++f) {
      MorphismClass& c = cls[f];
      // mono: postcomposition with f is injective on every hom set into dom f.
      c.mono = true;
      for (ObjId x = 0; x < nobj() && c.mono; ++x) {
        st.next();
        for (MorId g : hom[static_cast<std::size_t>(x) * nobj() + dom[f]]) {
          if (st.seen(comp(f, g))) {
            c.mono = false;
            break;
          }
        }
      }
      // epi: precomposition with f is injective on every hom set out of cod f.
      c.epi = true;
      for (ObjId x = 0; x < nobj() && c.epi; ++x) {
        st.next();
        for (MorId g : hom[static_cast<std::size_t>(cod[f]) * nobj() + x]) {
          if (st.seen(comp(g, f))) {
            c.epi = false;
            break;
          }
        }
      }
      for (MorId r : hom[static_cast<std::size_t>(cod[f]) * nobj() + dom[f]]) {
        if (comp(r, f) == identity[dom[f]]) c.split_mono = true;
        if (comp(f, r) == identity[cod[f]]) c.split_epi = true;
        if (c.split_mono && c.split_epi) break;
      }
      // A section that is also a retraction exists as soon as both exist.
      c.iso = c.split_mono && c.split_epi;
    }
  });
}

bool FinCategory::Data::orthogonal_to_all_monos(MorId f) const {
  const ObjId a = dom[f], b = cod[f];
  for (MorId m = 0; m < nmor(); ++m) {
    if (!cls[m].mono) continue;
    const ObjId c = dom[m], d = cod[m];
    for (MorId u : hom[static_cast<std::size_t>(a) * nobj() + c]) {
      const MorId mu = comp(m, u);
      for (MorId v : hom[static_cast<std::size_t>(b) * nobj() + d]) {
        if (comp(v, f) != mu) continue;
        bool filled = false;
        for (MorId diag : hom[static_cast<std::size_t>(b) * nobj() + c]) {
          if (comp(diag, f) == u && comp(m, diag) == v) {
            filled = true;
            break;
          }
        }
        if (!filled) return false;
      }
    }
  }
  return true;
}

void FinCategory::Data::ensure_strong() const {
  std::call_once(strong_once, [this] {
    ensure_basic();
    for (MorId f = 0; f < nmor(); ++f) {
      MorphismClass& c = cls[f];
      if (!c.epi) continue;
      c.strong_epi = c.split_epi || orthogonal_to_all_monos(f);
    }
  });
}

void FinCategory::Data::ensure_heights() const {
  std::call_once(height_once, [this] {
    ensure_basic();
    // Iso classes by union-find over iso edges.
    std::vector<int> parent(nobj());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (MorId f = 0; f < nmor(); ++f)
      if (cls[f].iso) parent[find(dom[f])] = find(cod[f]);
    iso_cls.assign(nobj(), -1);
    iso_cls_count = 0;
    for (ObjId a = 0; a < nobj(); ++a) {
      int r = find(a);
      if (iso_cls[r] < 0) iso_cls[r] = iso_cls_count++;
      iso_cls[a] = iso_cls[r];
    }
    // Edges between classes along non-iso monos; acyclic in a finite
    // category because a composite around a cycle would be a non-iso monic
    // endo up to iso.
    std::vector<std::vector<int>> preds(iso_cls_count);
    for (MorId f = 0; f < nmor(); ++f) {
      if (!cls[f].mono || cls[f].iso) continue;
      int s = iso_cls[dom[f]], t = iso_cls[cod[f]];
      internal_check(s != t, "non-iso mono between isomorphic objects");
      preds[t].push_back(s);
    }
    for (auto& p : preds) {
      std::sort(p.begin(), p.end());
      p.erase(std::unique(p.begin(), p.end()), p.end());
    }
    std::vector<int> dp(iso_cls_count, -1), state(iso_cls_count, 0);
    auto longest = [&](auto&& self, int c) -> int {
      if (state[c] == 2) return dp[c];
      internal_check(state[c] == 0, "cycle in the mono chain order");
      state[c] = 1;
      int best = 0;
      for (int p : preds[c]) best = std::max(best, 1 + self(self, p));
      state[c] = 2;
      return dp[c] = best;
    };
    heights.assign(nobj(), 0);
    for (ObjId a = 0; a < nobj(); ++a) heights[a] = longest(longest, iso_cls[a]);
  });
}

int OmegaTable::index_of(ObjId d, const std::vector<MorId>& sorted_members) const {
  auto it = index[d].find(sorted_members);
  internal_check(it != index[d].end(), "unknown sieve");
  return it->second;
}

void FinCategory::Data::ensure_omega(std::size_t max_sieves) const {
  std::call_once(omega_once, [this, max_sieves] {
    auto om = std::make_unique<OmegaTable>();
    om->sieves.resize(nobj());
    om->is_max.resize(nobj());
    om->max_index.assign(nobj(), -1);
    om->empty_index.assign(nobj(), -1);
    om->index.resize(nobj());
    for (ObjId d = 0; d < nobj(); ++d) {
      const auto& ins = in[d];
      const int k = static_cast<int>(ins.size());
      std::vector<int> pos(nmor(), -1);
      for (int i = 0; i < k; ++i) pos[ins[i]] = i;
      auto close = [&](std::vector<char>& s) {
        std::vector<int> work;
        for (int i = 0; i < k; ++i)
          if (s[i]) work.push_back(i);
        while (!work.empty()) {
          int i = work.back();
          work.pop_back();
          MorId f = ins[i];
          for (MorId g : in[dom[f]]) {
            int j = pos[comp(f, g)];
            if (!s[j]) {
              s[j] = 1;
              work.push_back(j);
            }
          }
        }
      };
      std::map<std::vector<char>, int> seen;
      std::vector<std::vector<char>> found;
      std::vector<char> empty(static_cast<std::size_t>(k), 0);
      seen.emplace(empty, 0);
      found.push_back(empty);
      for (std::size_t i = 0; i < found.size(); ++i) {
        if (found.size() > max_sieves) {
          omega_error = "sieve enumeration exceeded budget on object " + objects[d];
          return;
        }
        std::vector<char> base = found[i];
        for (int j = 0; j < k; ++j) {
          if (base[j]) continue;
          std::vector<char> s = base;
          s[j] = 1;
          close(s);
          if (seen.emplace(s, 0).second) found.push_back(std::move(s));
        }
      }
      std::vector<std::vector<MorId>> members;
      members.reserve(found.size());
      for (const auto& s : found) {
        std::vector<MorId> ms;
        for (int i = 0; i < k; ++i)
          if (s[i]) ms.push_back(ins[i]);
        members.push_back(std::move(ms));  // ins ascending keeps members sorted
      }
      std::sort(members.begin(), members.end(), [](const auto& x, const auto& y) {
        if (x.size() != y.size()) return x.size() < y.size();
        return x < y;
      });
      om->is_max[d].assign(members.size(), 0);
      for (int i = 0; i < static_cast<int>(members.size()); ++i) {
        om->index[d].emplace(members[i], i);
        if (members[i].empty()) om->empty_index[d] = i;
        if (static_cast<int>(members[i].size()) == k) {
          om->is_max[d][i] = 1;
          om->max_index[d] = i;
        }
      }
      om->sieves[d] = std::move(members);
    }
    // Restriction along every morphism, as an index table.
    om->restr.resize(nmor());
    for (MorId f = 0; f < nmor(); ++f) {
      const ObjId c = dom[f], d = cod[f];
      om->restr[f].resize(om->sieves[d].size());
      for (std::size_t si = 0; si < om->sieves[d].size(); ++si) {
        const auto& s = om->sieves[d][si];
        std::vector<MorId> r;
        for (MorId g : in[c]) {
          if (std::binary_search(s.begin(), s.end(), comp(f, g))) r.push_back(g);
        }
        om->restr[f][si] = om->index_of(c, r);
      }
    }
    omega = std::move(om);
  });
  if (!omega) fail(ErrorCode::budget_exceeded, omega_error);
}

int FinCategory::object_count() const { return d_->nobj(); }
int FinCategory::morphism_count() const { return d_->nmor(); }
const std::string& FinCategory::object_name(ObjId a) const { return d_->objects[a]; }
const std::string& FinCategory::morphism_name(MorId f) const { return d_->mor_names[f]; }

std::optional<ObjId> FinCategory::find_object(std::string_view name) const {
  auto it = d_->obj_index.find(name);
  if (it == d_->obj_index.end()) return std::nullopt;
  return it->second;
}

std::optional<MorId> FinCategory::find_morphism(std::string_view name) const {
  auto it = d_->mor_index.find(name);
  if (it == d_->mor_index.end()) return std::nullopt;
  return it->second;
}

ObjId FinCategory::dom(MorId f) const { return d_->dom[f]; }
ObjId FinCategory::cod(MorId f) const { return d_->cod[f]; }
MorId FinCategory::identity(ObjId a) const { return d_->identity[a]; }
bool FinCategory::is_identity(MorId f) const { return d_->is_id[f] != 0; }

MorId FinCategory::compose(MorId g, MorId f) const {
  internal_check(composable(g, f), "compose on non-composable pair");
  return d_->comp(g, f);
}

const std::vector<MorId>& FinCategory::hom(ObjId a, ObjId b) const {
  return d_->hom[static_cast<std::size_t>(a) * d_->nobj() + b];
}
const std::vector<MorId>& FinCategory::into(ObjId b) const { return d_->in[b]; }
const std::vector<MorId>& FinCategory::from(ObjId a) const { return d_->out[a]; }

const MorphismClass& FinCategory::class_of(MorId f) const {
  d_->ensure_strong();
  return d_->cls[f];
}

int FinCategory::iso_class(ObjId a) const {
  d_->ensure_heights();
  return d_->iso_cls[a];
}

int FinCategory::iso_class_count() const {
  d_->ensure_heights();
  return d_->iso_cls_count;
}

int FinCategory::height(ObjId a) const {
  d_->ensure_heights();
  return d_->heights[a];
}

const OmegaTable& FinCategory::omega(std::size_t max_sieves_per_object) const {
  d_->ensure_omega(max_sieves_per_object);
  return *d_->omega;
}

ObjId CategoryBuilder::add_object(std::string name) {
  if (!obj_index_.emplace(name, object_count()).second)
    fail(ErrorCode::malformed_input, "duplicate object id: " + name);
  objects_.push_back(std::move(name));
  identity_.push_back(kNoMor);
  return object_count() - 1;
}

MorId CategoryBuilder::add_morphism(std::string name, ObjId dom, ObjId cod) {
  if (dom < 0 || dom >= object_count() || cod < 0 || cod >= object_count())
    fail(ErrorCode::malformed_input, "morphism endpoints out of range: " + name);
  if (!mor_index_.emplace(name, morphism_count()).second)
    fail(ErrorCode::malformed_input, "duplicate morphism id: " + name);
  mor_names_.push_back(std::move(name));
  dom_.push_back(dom);
  cod_.push_back(cod);
  return morphism_count() - 1;
}

void CategoryBuilder::set_identity(ObjId a, MorId f) {
  if (a < 0 || a >= object_count() || f < 0 || f >= morphism_count())
    fail(ErrorCode::malformed_input, "identity entry references an unknown id");
  if (dom_[f] != a || cod_[f] != a)
    fail(ErrorCode::malformed_input,
         "identity of " + objects_[a] + " must be an endomorphism of it: " + mor_names_[f]);
  if (identity_[a] != kNoMor && identity_[a] != f)
    fail(ErrorCode::malformed_input, "conflicting identity for object " + objects_[a]);
  identity_[a] = f;
}

void CategoryBuilder::set_compose(MorId outer, MorId inner, MorId result) {
  for (MorId f : {outer, inner, result})
    if (f < 0 || f >= morphism_count())
      fail(ErrorCode::malformed_input, "compose entry references an unknown morphism id");
  if (table_.empty()) table_.assign(static_cast<std::size_t>(morphism_count()) * morphism_count(), kNoMor);
  if (dom_[outer] != cod_[inner])
    fail(ErrorCode::malformed_input, "compose entry on non-composable pair (" + mor_names_[outer] +
                                         ", " + mor_names_[inner] + ")");
  if (dom_[result] != dom_[inner] || cod_[result] != cod_[outer])
    fail(ErrorCode::malformed_input, "composite " + mor_names_[result] +
                                         " has wrong endpoints for (" + mor_names_[outer] + ", " +
                                         mor_names_[inner] + ")");
  MorId& slot = table_[static_cast<std::size_t>(outer) * morphism_count() + inner];
  if (slot != kNoMor && slot != result)
    fail(ErrorCode::malformed_input, "conflicting compose entries for (" + mor_names_[outer] + ", " +
                                         mor_names_[inner] + ")");
  slot = result;
}

void CategoryBuilder::structural_errors(std::vector<std::string>* out) const {
  for (ObjId a = 0; a < object_count(); ++a)
    if (identity_[a] == kNoMor) out->push_back("object " + objects_[a] + " has no identity");
}

std::shared_ptr<FinCategory::Data> CategoryBuilder::assemble() const {
  auto d = std::make_shared<FinCategory::Data>();
  d->objects = objects_;
  d->mor_names = mor_names_;
  d->dom = dom_;
  d->cod = cod_;
  d->identity = identity_;
  d->table = table_;
  if (d->table.empty())
    d->table.assign(static_cast<std::size_t>(morphism_count()) * morphism_count(), kNoMor);
  d->is_id.assign(morphism_count(), 0);
  for (ObjId a = 0; a < object_count(); ++a)
    if (identity_[a] != kNoMor) d->is_id[identity_[a]] = 1;
  d->obj_index = obj_index_;
  d->mor_index = mor_index_;
  const int n = morphism_count();
  d->hom.assign(static_cast<std::size_t>(object_count()) * object_count(), {});
  d->in.assign(object_count(), {});
  d->out.assign(object_count(), {});
  for (MorId f = 0; f < n; ++f) {
    d->hom[static_cast<std::size_t>(dom_[f]) * object_count() + cod_[f]].push_back(f);
    d->in[cod_[f]].push_back(f);
    d->out[dom_[f]].push_back(f);
  }
  return d;
}

FinCategory CategoryBuilder::finish() {
  std::vector<std::string> errs;
  structural_errors(&errs);
  internal_check(errs.empty(), "builder finished without identities");
  auto d = assemble();
  // Unit composites may be omitted by callers; derive them.
  for (MorId f = 0; f < d->nmor(); ++f) {
    MorId& left = d->table[static_cast<std::size_t>(d->identity[d->cod[f]]) * d->nmor() + f];
    MorId& right = d->table[static_cast<std::size_t>(f) * d->nmor() + d->identity[d->dom[f]]];
    internal_check(left == kNoMor || left == f, "identity not a left unit");
    internal_check(right == kNoMor || right == f, "identity not a right unit");
    left = f;
    right = f;
  }
  for (MorId g = 0; g < d->nmor(); ++g)
    for (MorId f = 0; f < d->nmor(); ++f)
      if (d->dom[g] == d->cod[f])
        internal_check(d->comp(g, f) != kNoMor, "builder left a composable pair unset");
  return FinCategory(std::move(d));
}

ValidationResult CategoryBuilder::finish_validated() {
  ValidationResult res;
  structural_errors(&res.violations);
  if (!res.violations.empty()) return res;
  auto d = assemble();
  const auto ref = [&](MorId f) { return d->mor_ref(f); };
  constexpr std::size_t kMaxWitnesses = 25;
  auto report = [&](std::string msg) {
    if (res.violations.size() < kMaxWitnesses) res.violations.push_back(std::move(msg));
  };
  // Unit laws; the table may omit identity composites, conflicts are real
  // violations.
  for (MorId f = 0; f < d->nmor(); ++f) {
    MorId& left = d->table[static_cast<std::size_t>(d->identity[d->cod[f]]) * d->nmor() + f];
    if (left != kNoMor && left != f)
      report("identity is not a left unit on " + ref(f) + ": table gives " + d->mor_names[left]);
    left = f;
    MorId& right = d->table[static_cast<std::size_t>(f) * d->nmor() + d->identity[d->dom[f]]];
    if (right != kNoMor && right != f)
      report("identity is not a right unit on " + ref(f) + ": table gives " + d->mor_names[right]);
    right = f;
  }
  for (MorId g = 0; g < d->nmor() && res.violations.size() < kMaxWitnesses; ++g)
    for (MorId f = 0; f < d->nmor(); ++f)
      if (d->dom[g] == d->cod[f] && d->comp(g, f) == kNoMor)
        report("missing composite for (" + d->mor_names[g] + ", " + d->mor_names[f] + ")");
  if (!res.violations.empty()) return res;
  // Associativity over all composable triples.
  for (ObjId b = 0; b < d->nobj() && res.violations.size() < kMaxWitnesses; ++b) {
    for (MorId g : d->out[b]) {
      for (MorId h : d->out[d->cod[g]]) {
        const MorId hg = d->comp(h, g);
        for (MorId f : d->in[b]) {
          if (d->comp(hg, f) != d->comp(h, d->comp(g, f))) {
            report("associativity fails on (" + d->mor_names[h] + ", " + d->mor_names[g] + ", " +
                   d->mor_names[f] + ")");
            break;
          }
        }
      }
    }
  }
  if (!res.violations.empty()) return res;
  res.category = FinCategory(std::move(d));
  return res;
}

namespace {

bool audit_is_mono(const FinCategory& cat, MorId m) {
  const ObjId a = cat.dom(m);
  for (ObjId x = 0; x < cat.object_count(); ++x)
    for (MorId g : cat.hom(x, a))
      for (MorId h : cat.hom(x, a))
        if (g != h && cat.compose(m, g) == cat.compose(m, h)) return false;
  return true;
}

}  // namespace

MorphismClass classify_morphism_audit(const FinCategory& cat, MorId f) {
  MorphismClass c;
  const ObjId a = cat.dom(f), b = cat.cod(f);
  c.mono = true;
  c.epi = true;
  for (ObjId x = 0; x < cat.object_count(); ++x) {
    for (MorId g : cat.hom(x, a))
      for (MorId h : cat.hom(x, a))
        if (g != h && cat.compose(f, g) == cat.compose(f, h)) c.mono = false;
    for (MorId g : cat.hom(b, x))
      for (MorId h : cat.hom(b, x))
        if (g != h && cat.compose(g, f) == cat.compose(h, f)) c.epi = false;
  }
  for (MorId r : cat.hom(b, a)) {
    if (cat.compose(r, f) == cat.identity(a)) c.split_mono = true;
    if (cat.compose(f, r) == cat.identity(b)) c.split_epi = true;
    if (cat.compose(r, f) == cat.identity(a) && cat.compose(f, r) == cat.identity(b)) c.iso = true;
  }
  // Diagonal filler against every mono, squares enumerated literally.
  bool orth = true;
  for (MorId m = 0; m < cat.morphism_count() && orth; ++m) {
    if (!audit_is_mono(cat, m)) continue;
    const ObjId mc = cat.dom(m), md = cat.cod(m);
    for (MorId u : cat.hom(a, mc)) {
      for (MorId v : cat.hom(b, md)) {
        if (cat.compose(m, u) != cat.compose(v, f)) continue;
        bool filled = false;
        for (MorId diag : cat.hom(b, mc))
          if (cat.compose(diag, f) == u && cat.compose(m, diag) == v) filled = true;
        if (!filled) orth = false;
      }
    }
  }
  c.strong_epi = c.epi && orth;
  return c;
}

std::optional<std::pair<MorId, MorId>> factorize(const FinCategory& cat, MorId f, EpiMode mode) {
  for (MorId e : cat.from(cat.dom(f))) {
    const MorphismClass& ec = cat.class_of(e);
    if (mode == EpiMode::split ? !ec.split_epi : !ec.strong_epi) continue;
    for (MorId m : cat.hom(cat.cod(e), cat.cod(f))) {
      if (cat.compose(m, e) == f && cat.class_of(m).mono) return std::make_pair(e, m);
    }
  }
  return std::nullopt;
}

bool is_extreme(const FinCategory& cat, ObjId a) {
  for (MorId f : cat.from(a))
    if (!cat.class_of(f).iso) return false;
  return true;
}

bool is_minimal_object(const FinCategory& cat, ObjId a) {
  for (MorId f : cat.from(a))
    if (!cat.class_of(f).mono) return false;
  return true;
}

FullSubcat full_subcategory(const FinCategory& cat, std::vector<ObjId> objects) {
  std::sort(objects.begin(), objects.end());
  objects.erase(std::unique(objects.begin(), objects.end()), objects.end());
  FullSubcat sub;
  sub.object_of = objects;
  sub.to_sub.assign(cat.object_count(), -1);
  CategoryBuilder b;
  for (ObjId a : objects) sub.to_sub[a] = b.add_object(cat.object_name(a));
  std::vector<MorId> to_sub_mor(cat.morphism_count(), kNoMor);
  for (MorId f = 0; f < cat.morphism_count(); ++f) {
    if (sub.to_sub[cat.dom(f)] < 0 || sub.to_sub[cat.cod(f)] < 0) continue;
    to_sub_mor[f] = b.add_morphism(cat.morphism_name(f), sub.to_sub[cat.dom(f)], sub.to_sub[cat.cod(f)]);
    sub.morphism_of.push_back(f);
  }
  for (ObjId a : objects) b.set_identity(sub.to_sub[a], to_sub_mor[cat.identity(a)]);
  for (MorId g : sub.morphism_of)
    for (MorId f : sub.morphism_of)
      if (cat.composable(g, f))
        b.set_compose(to_sub_mor[g], to_sub_mor[f], to_sub_mor[cat.compose(g, f)]);
  sub.cat = b.finish();
  return sub;
}

FullSubcat min_full_subcategory(const FinCategory& cat) {
  std::vector<ObjId> keep;
  for (ObjId a = 0; a < cat.object_count(); ++a)
    if (is_minimal_object(cat, a)) keep.push_back(a);
  return full_subcategory(cat, std::move(keep));
}

namespace {

// Cycle detection over an implicit graph given by a successor callback.
template <typename Succ>
bool has_cycle(int n, Succ succ, std::vector<int>* cycle_witness) {
  std::vector<int> state(n, 0), stack;
  bool found = false;
  auto dfs = [&](auto&& self, int v) -> void {
    if (found) return;
    state[v] = 1;
    stack.push_back(v);
    succ(v, [&](int w) {
      if (found) return;
      if (state[w] == 1) {
        found = true;
        if (cycle_witness) {
          auto it = std::find(stack.begin(), stack.end(), w);
          cycle_witness->assign(it, stack.end());
        }
        return;
      }
      if (state[w] == 0) self(self, w);
    });
    stack.pop_back();
    state[v] = 2;
  };
  for (int v = 0; v < n && !found; ++v)
    if (state[v] == 0) dfs(dfs, v);
  return found;
}

}  // namespace

HypothesisReport check_hypotheses(const FinCategory& cat) {
  HypothesisReport rep;
  rep.split_epi_mono_factorization = true;
  rep.strong_epi_mono_factorization = true;
  for (MorId f = 0; f < cat.morphism_count(); ++f) {
    if (rep.split_epi_mono_factorization && !factorize(cat, f, EpiMode::split)) {
      rep.split_epi_mono_factorization = false;
      rep.witnesses.push_back("no split epi / mono factorization for " + cat.morphism_name(f));
    }
    if (rep.strong_epi_mono_factorization && !factorize(cat, f, EpiMode::strong)) {
      rep.strong_epi_mono_factorization = false;
      rep.witnesses.push_back("no strong epi / mono factorization for " + cat.morphism_name(f));
    }
  }
  // Ascending chains of monos under a monic cone stabilize iff the state
  // graph (cone leg, stepped by non-iso monos compatible with it) is acyclic.
  rep.acc = true;
  for (ObjId c = 0; c < cat.object_count() && rep.acc; ++c) {
    std::vector<MorId> legs;
    for (MorId i : cat.into(c))
      if (cat.class_of(i).mono) legs.push_back(i);
    std::vector<int> wit;
    auto succ = [&](int vi, auto&& visit) {
      const MorId i = legs[vi];
      for (int wi = 0; wi < static_cast<int>(legs.size()); ++wi) {
        const MorId j = legs[wi];
        for (MorId m : cat.hom(cat.dom(i), cat.dom(j))) {
          const MorphismClass& mc = cat.class_of(m);
          if (mc.mono && !mc.iso && cat.compose(j, m) == i) {
            visit(wi);
            break;
          }
        }
      }
    };
    if (has_cycle(static_cast<int>(legs.size()), succ, &wit)) {
      rep.acc = false;
      std::string msg = "unbounded mono chain under cone into " + cat.object_name(c) + ":";
      for (int v : wit) msg += " " + cat.morphism_name(legs[v]);
      rep.witnesses.push_back(std::move(msg));
    }
  }
  // Descending chains of strong epis stabilize iff the non-iso strong epi
  // relation on iso classes is acyclic.
  std::vector<std::vector<int>> adj(cat.iso_class_count());
  for (MorId f = 0; f < cat.morphism_count(); ++f) {
    const MorphismClass& c = cat.class_of(f);
    if (c.strong_epi && !c.iso) adj[cat.iso_class(cat.dom(f))].push_back(cat.iso_class(cat.cod(f)));
  }
  std::vector<int> wit;
  auto succ = [&](int v, auto&& visit) {
    for (int w : adj[v]) visit(w);
  };
  rep.well_founded = !has_cycle(cat.iso_class_count(), succ, &wit);
  if (!rep.well_founded) rep.witnesses.push_back("non-iso strong epi cycle between objects");
  return rep;
}

namespace {

std::vector<char> two_sided_ideal_of(const FinCategory& cat, MorId g) {
  std::vector<char> in_set(cat.morphism_count(), 0);
  std::vector<MorId> work{g};
  in_set[g] = 1;
  while (!work.empty()) {
    MorId h = work.back();
    work.pop_back();
    for (MorId a : cat.from(cat.cod(h))) {
      MorId c = cat.compose(a, h);
      if (!in_set[c]) in_set[c] = 1, work.push_back(c);
    }
    for (MorId b : cat.into(cat.dom(h))) {
      MorId c = cat.compose(h, b);
      if (!in_set[c]) in_set[c] = 1, work.push_back(c);
    }
  }
  return in_set;
}

}  // namespace

std::vector<Level> enumerate_levels(const FinCategory& cat, int morphism_budget,
                                    std::size_t level_cap) {
  const int nm = cat.morphism_count();
  if (nm > morphism_budget)
    fail(ErrorCode::budget_exceeded,
         "level enumeration budget: " + std::to_string(nm) + " morphisms > " +
             std::to_string(morphism_budget));
  // Divisibility classes: f and g are equivalent when each lies in the
  // two-sided ideal of the other.
  std::vector<std::vector<char>> ideal(nm);
  for (MorId f = 0; f < nm; ++f) ideal[f] = two_sided_ideal_of(cat, f);
  std::vector<int> cls(nm, -1);
  std::vector<MorId> rep;
  for (MorId f = 0; f < nm; ++f) {
    if (cls[f] >= 0) continue;
    cls[f] = static_cast<int>(rep.size());
    for (MorId g = f + 1; g < nm; ++g)
      if (cls[g] < 0 && ideal[f][g] && ideal[g][f]) cls[g] = cls[f];
    rep.push_back(f);
  }
  const int nc = static_cast<int>(rep.size());
  // Linear extension: strictly smaller classes have strictly smaller ideals.
  std::vector<int> order(nc), ideal_size(nc, 0);
  for (int c = 0; c < nc; ++c)
    ideal_size[c] = static_cast<int>(std::count(ideal[rep[c]].begin(), ideal[rep[c]].end(), 1));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (ideal_size[a] != ideal_size[b]) return ideal_size[a] < ideal_size[b];
    return a < b;
  });
  // Strict predecessors: classes strictly below a, i.e. inside a's ideal.
  std::vector<std::vector<int>> preds(nc);
  for (int a = 0; a < nc; ++a)
    for (int b = 0; b < nc; ++b)
      if (a != b && ideal[rep[a]][rep[b]]) preds[a].push_back(b);

  // Down-sets of the class poset.
  std::vector<std::vector<char>> downsets;
  std::vector<char> chosen(nc, 0);
  auto dfs = [&](auto&& self, int i) -> void {
    if (downsets.size() > level_cap)
      fail(ErrorCode::budget_exceeded, "level enumeration exceeded the level cap");
    if (i == nc) {
      downsets.push_back(chosen);
      return;
    }
    const int c = order[i];
    self(self, i + 1);
    for (int p : preds[c])
      if (!chosen[p]) return;
    chosen[c] = 1;
    self(self, i + 1);
    chosen[c] = 0;
  };
  dfs(dfs, 0);

  std::vector<Level> out;
  for (const auto& ds : downsets) {
    std::vector<char> members(nm, 0);
    Level lvl;
    for (MorId f = 0; f < nm; ++f)
      if (ds[cls[f]]) {
        members[f] = 1;
        lvl.ideal.push_back(f);
      }
    // Idempotency: every member factors as a composite of two members.
    std::vector<char> composite(nm, 0);
    for (MorId a : lvl.ideal)
      for (MorId b : lvl.ideal)
        if (cat.composable(a, b)) composite[cat.compose(a, b)] = 1;
    bool idem = true;
    for (MorId f : lvl.ideal)
      if (!composite[f]) idem = false;
    if (!idem) continue;
    // Objects whose identities lie in the ideal; attach them when they
    // generate it back.
    std::vector<ObjId> objs;
    for (ObjId a = 0; a < cat.object_count(); ++a)
      if (members[cat.identity(a)]) objs.push_back(a);
    std::vector<char> generated(nm, 0);
    for (ObjId o : objs)
      for (MorId b : cat.into(o))
        for (MorId a : cat.from(o)) generated[cat.compose(a, b)] = 1;
    if (generated == members) lvl.subcategory = objs;
    out.push_back(std::move(lvl));
  }
  std::sort(out.begin(), out.end(), [](const Level& a, const Level& b) {
    if (a.ideal.size() != b.ideal.size()) return a.ideal.size() < b.ideal.size();
    return a.ideal < b.ideal;
  });
  // level-e: the largest level generated by a full subcategory all of whose
  // maps are monic in it; flagged only when one such level contains every
  // other qualifying one.
  std::vector<int> qualifying;
  for (int i = 0; i < static_cast<int>(out.size()); ++i) {
    if (!out[i].subcategory) continue;
    FullSubcat sub = full_subcategory(cat, *out[i].subcategory);
    bool all_monic = true;
    for (MorId f = 0; f < sub.cat.morphism_count(); ++f)
      if (!sub.cat.class_of(f).mono) all_monic = false;
    if (all_monic) qualifying.push_back(i);
  }
  if (!qualifying.empty()) {
    int best = qualifying.front();
    for (int i : qualifying)
      if (out[i].ideal.size() > out[best].ideal.size()) best = i;
    bool contains_all = true;
    for (int i : qualifying)
      if (!std::includes(out[best].ideal.begin(), out[best].ideal.end(), out[i].ideal.begin(),
                         out[i].ideal.end()))
        contains_all = false;
    if (contains_all) out[best].level_e = true;
  }
  return out;
}

}  // namespace etendue
