#include "presheaf_enum.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace etendue::testsupport {

namespace {

using Column = std::vector<ElemId>;  // action X(cod f) -> X(dom f)
using Table = std::vector<std::optional<Column>>;

// Derive every composite action determined by the assigned columns;
// false on a conflict between two derivations of the same morphism.
bool close_table(const FinCategory& cat, Table& col) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (MorId g = 0; g < cat.morphism_count(); ++g) {
      if (!col[g]) continue;
      for (MorId f = 0; f < cat.morphism_count(); ++f) {
        if (!col[f] || cat.dom(g) != cat.cod(f)) continue;
        const MorId h = cat.compose(g, f);
        Column d(col[g]->size());
        for (std::size_t y = 0; y < d.size(); ++y) d[y] = (*col[f])[(*col[g])[y]];
        if (col[h]) {
          if (*col[h] != d) return false;
        } else {
          col[h] = std::move(d);
          changed = true;
        }
      }
    }
  }
  return true;
}

std::vector<Column> all_columns(int length, int alphabet) {
  std::vector<Column> out;
  if (length == 0) {
    out.push_back({});
    return out;
  }
  if (alphabet == 0) return out;
  Column c(length, 0);
  while (true) {
    out.push_back(c);
    int i = length - 1;
    while (i >= 0 && c[i] == alphabet - 1) c[i--] = 0;
    if (i < 0) break;
    ++c[i];
  }
  return out;
}

struct Enumerator {
  const FinCategory& cat;
  std::vector<MorId> gens;       // assignment order
  std::vector<int> size_of;      // per object
  int cap;
  const std::function<void(const Presheaf&)>& visit;
  std::set<std::string> seen;
  int count = 0;

  bool emit(const Table& col) {
    std::string key = canonical_key(col);
    if (!seen.insert(std::move(key)).second) return true;
    PresheafBuilder b(cat);
    for (ObjId d = 0; d < cat.object_count(); ++d)
      for (int i = 0; i < size_of[d]; ++i)
        b.add_element(d, "x" + std::to_string(d) + "_" + std::to_string(i));
    for (MorId f = 0; f < cat.morphism_count(); ++f) {
      if (cat.is_identity(f)) continue;
      for (ElemId y = 0; y < static_cast<ElemId>(col[f]->size()); ++y)
        b.set_action(f, y, (*col[f])[y]);
    }
    visit(b.finish());
    return ++count < cap;
  }

  std::string canonical_key(const Table& col) const {
    std::vector<std::vector<std::vector<int>>> perms(cat.object_count());
    for (ObjId d = 0; d < cat.object_count(); ++d) {
      std::vector<int> p(size_of[d]);
      std::iota(p.begin(), p.end(), 0);
      do perms[d].push_back(p);
      while (std::next_permutation(p.begin(), p.end()));
    }
    std::string best;
    std::vector<const std::vector<int>*> pick(cat.object_count());
    std::string cur;
    auto rec = [&](auto&& self, ObjId d) -> void {
      if (d == cat.object_count()) {
        cur.clear();
        for (int s : size_of) cur += static_cast<char>('0' + s);
        for (MorId f = 0; f < cat.morphism_count(); ++f) {
          const std::vector<int>& pd = *pick[cat.dom(f)];
          const std::vector<int>& pc = *pick[cat.cod(f)];
          // relabeled action: y' = pc[y] maps to pd[col[y]]
          std::string part(col[f]->size(), '0');
          for (std::size_t y = 0; y < col[f]->size(); ++y)
            part[pc[y]] = static_cast<char>('0' + pd[(*col[f])[y]]);
          cur += part;
        }
        if (best.empty() || cur < best) best = cur;
        return;
      }
      for (const auto& p : perms[d]) {
        pick[d] = &p;
        self(self, d + 1);
      }
    };
    rec(rec, 0);
    return best;
  }

  bool dfs(std::size_t gi, const Table& col) {
    if (gi == gens.size()) {
      for (MorId f = 0; f < cat.morphism_count(); ++f)
        internal_check(col[f].has_value(), "generators span the site");
      return emit(col);
    }
    const MorId g = gens[gi];
    for (const Column& c : all_columns(size_of[cat.cod(g)], size_of[cat.dom(g)])) {
      Table next = col;
      next[g] = c;
      if (!close_table(cat, next)) continue;
      if (!dfs(gi + 1, next)) return false;
    }
    return true;
  }

  bool run_sizes(const std::vector<int>& sizes) {
    size_of = sizes;
    seen.clear();
    Table col(cat.morphism_count());
    for (ObjId d = 0; d < cat.object_count(); ++d) {
      Column id(size_of[d]);
      std::iota(id.begin(), id.end(), 0);
      col[cat.identity(d)] = std::move(id);
    }
    if (!close_table(cat, col))
      fail(ErrorCode::internal, "identity actions cannot conflict");
    return dfs(0, col);
  }
};

}  // namespace

int enumerate_presheaves_delta2(const FinCategory& base, int max_per_stage, int cap,
                                const std::function<void(const Presheaf&)>& visit) {
  std::vector<MorId> gens;
  for (const char* name :
       {"d1:0", "d1:1", "d0:00", "d1:001", "d1:011", "d2:01", "d2:02", "d2:12"}) {
    auto f = base.find_morphism(name);
    if (!f) fail(ErrorCode::incompatible_base, "enumeration needs the 2-truncated simplex site");
    gens.push_back(*f);
  }
  std::vector<ObjId> stages;
  for (const char* name : {"[0]", "[1]", "[2]"}) {
    auto c = base.find_object(name);
    if (!c || base.object_count() != 3)
      fail(ErrorCode::incompatible_base, "enumeration needs the 2-truncated simplex site");
    stages.push_back(*c);
  }

  std::vector<std::vector<int>> triples;
  for (int a = 0; a <= max_per_stage; ++a)
    for (int b = 0; b <= max_per_stage; ++b)
      for (int c = 0; c <= max_per_stage; ++c) triples.push_back({a, b, c});
  std::stable_sort(triples.begin(), triples.end(),
                   [](const std::vector<int>& l, const std::vector<int>& r) {
                     const int sl = l[0] + l[1] + l[2], sr = r[0] + r[1] + r[2];
                     return sl != sr ? sl < sr : l < r;
                   });

  Enumerator e{base, gens, {}, cap, visit, {}, 0};
  for (const std::vector<int>& t : triples) {
    std::vector<int> by_obj(3);
    for (int i = 0; i < 3; ++i) by_obj[stages[i]] = t[i];
    if (!e.run_sizes(by_obj)) break;
  }
  return e.count;
}

}  // namespace etendue::testsupport
