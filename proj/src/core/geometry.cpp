#include "geometry.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace etendue {

namespace {

void check_figure(const Presheaf& x, ObjId stage, ElemId e) {
  if (stage < 0 || stage >= x.base().object_count() || e < 0 || e >= x.size(stage))
    fail(ErrorCode::unknown_name, "no such element");
}

std::string figure_ref(const Presheaf& x, ObjId stage, ElemId e) {
  return x.element_name(stage, e) + "@" + x.base().object_name(stage);
}

// A pair of distinct parallel maps the element fails to separate, if any.
std::optional<std::pair<MorId, MorId>> inseparable_pair(const Presheaf& x, ObjId stage,
                                                        ElemId e) {
  const FinCategory& cat = x.base();
  for (ObjId b = 0; b < cat.object_count(); ++b) {
    const std::vector<MorId>& hom = cat.hom(b, stage);
    for (std::size_t i = 0; i < hom.size(); ++i)
      for (std::size_t j = i + 1; j < hom.size(); ++j)
        if (x.act(hom[i], e) == x.act(hom[j], e)) return std::make_pair(hom[i], hom[j]);
  }
  return std::nullopt;
}

ExtNat depth_of_site(const FinCategory& site) {
  if (site.object_count() == 0) return ExtNat::neg_inf();
  for (int n = 0; n <= site.object_count(); ++n)
    if (ibd_sieve_char(site, ExtNat::of(n)).count() == site.object_count())
      return ExtNat::of(n);
  fail(ErrorCode::internal, "a finite site of monos attains a finite depth");
}

}  // namespace

bool is_minimal_element(const Presheaf& x, ObjId stage, ElemId e) {
  check_figure(x, stage, e);
  const FinCategory& cat = x.base();
  for (MorId f : cat.from(stage)) {
    if (cat.class_of(f).mono) continue;
    const ObjId d = cat.cod(f);
    for (ElemId y = 0; y < x.size(d); ++y)
      if (x.act(f, y) == e) return false;
  }
  return true;
}

bool is_preterminal_element(const Presheaf& x, ObjId stage, ElemId e) {
  check_figure(x, stage, e);
  return !inseparable_pair(x, stage, e).has_value();
}

std::vector<Figure> minimal_elements(const Presheaf& x) {
  std::vector<Figure> out;
  for (ObjId d = 0; d < x.base().object_count(); ++d)
    for (ElemId e = 0; e < x.size(d); ++e)
      if (is_minimal_element(x, d, e)) out.push_back({d, e});
  return out;
}

std::vector<Figure> preterminal_elements(const Presheaf& x) {
  std::vector<Figure> out;
  for (ObjId d = 0; d < x.base().object_count(); ++d)
    for (ElemId e = 0; e < x.size(d); ++e)
      if (is_preterminal_element(x, d, e)) out.push_back({d, e});
  return out;
}

namespace {

// Is the element-category map (x . f, dom f) -> (x, cod f) induced by f
// monic there? Cancellation against every parallel pair the element category
// offers: pairs g, h into dom f that restrict the source element equally and
// are equalized by f in the base.
bool element_map_monic(const Presheaf& x, MorId f, ElemId e_at_cod) {
  const FinCategory& cat = x.base();
  const ObjId b = cat.dom(f);
  const ElemId z = x.act(f, e_at_cod);
  for (ObjId a = 0; a < cat.object_count(); ++a) {
    const std::vector<MorId>& hom = cat.hom(a, b);
    for (std::size_t i = 0; i < hom.size(); ++i)
      for (std::size_t j = i + 1; j < hom.size(); ++j) {
        if (x.act(hom[i], z) != x.act(hom[j], z)) continue;
        if (cat.compose(f, hom[i]) == cat.compose(f, hom[j])) return false;
      }
  }
  return true;
}

}  // namespace

RegularityReport strong_regularity(const Presheaf& x) {
  const FinCategory& cat = x.base();
  RegularityReport r;
  for (const Figure& fig : minimal_elements(x)) {
    for (MorId f : cat.into(fig.stage)) {
      const ObjId b = cat.dom(f);
      const ElemId z = x.act(f, fig.elem);
      if (is_minimal_element(x, b, z)) continue;
      if (!element_map_monic(x, f, fig.elem)) continue;
      r.holds = false;
      r.witnesses.push_back("monic " + cat.morphism_name(f) + "@" +
                            figure_ref(x, fig.stage, fig.elem) +
                            " has non-minimal domain " + figure_ref(x, b, z));
    }
  }
  return r;
}

RegularityReport non_singularity(const Presheaf& x) {
  RegularityReport r;
  for (const Figure& fig : minimal_elements(x)) {
    auto pair = inseparable_pair(x, fig.stage, fig.elem);
    if (!pair) continue;
    r.holds = false;
    r.witnesses.push_back("minimal " + figure_ref(x, fig.stage, fig.elem) +
                          " is not preterminal: " + x.base().morphism_name(pair->first) +
                          " and " + x.base().morphism_name(pair->second) +
                          " restrict it equally");
  }
  return r;
}

bool is_strongly_regular(const Presheaf& x) { return strong_regularity(x).holds; }
bool is_non_singular(const Presheaf& x) { return non_singularity(x).holds; }

MinSite min_site(const Presheaf& x) {
  const FinCategory& cat = x.base();
  MinSite ms;
  ms.figures = minimal_elements(x);

  std::vector<std::vector<ObjId>> site_obj(cat.object_count());
  for (ObjId d = 0; d < cat.object_count(); ++d)
    site_obj[d].assign(x.size(d), -1);

  CategoryBuilder b;
  for (std::size_t i = 0; i < ms.figures.size(); ++i) {
    const Figure& fig = ms.figures[i];
    site_obj[fig.stage][fig.elem] =
        b.add_object(figure_ref(x, fig.stage, fig.elem));
  }
  // One morphism per base map carrying one minimal figure onto another.
  std::vector<std::pair<MorId, ElemId>> tags;  // per site morphism: (f, elem at cod f)
  std::map<std::pair<MorId, ElemId>, MorId> site_mor;
  for (const Figure& fig : ms.figures)
    for (MorId f : cat.into(fig.stage)) {
      const ObjId src = site_obj[cat.dom(f)][x.act(f, fig.elem)];
      if (src < 0) continue;
      MorId m = b.add_morphism(
          cat.morphism_name(f) + "@" + x.element_name(fig.stage, fig.elem), src,
          site_obj[fig.stage][fig.elem]);
      site_mor[{f, fig.elem}] = m;
      tags.push_back({f, fig.elem});
      if (cat.is_identity(f)) b.set_identity(site_obj[fig.stage][fig.elem], m);
    }
  for (MorId outer = 0; outer < static_cast<MorId>(tags.size()); ++outer)
    for (MorId inner = 0; inner < static_cast<MorId>(tags.size()); ++inner) {
      const auto& [g, zg] = tags[outer];
      const auto& [f, zf] = tags[inner];
      if (cat.dom(g) != cat.cod(f) || x.act(g, zg) != zf) continue;
      b.set_compose(outer, inner, site_mor.at({cat.compose(g, f), zg}));
    }
  ms.site_cat = b.finish();
  ms.base_morphism.reserve(tags.size());
  for (const auto& [f, e] : tags) ms.base_morphism.push_back(f);

  const FinCategory& s = ms.site_cat;
  ms.etendue = true;
  for (MorId m = 0; m < s.morphism_count(); ++m)
    ms.etendue = ms.etendue && s.class_of(m).mono;
  internal_check(ms.etendue, "maps between minimal elements must be monic");

  ms.localic = true;
  for (ObjId a = 0; a < s.object_count() && ms.localic; ++a)
    for (ObjId c = 0; c < s.object_count() && ms.localic; ++c)
      ms.localic = s.hom(a, c).size() <= 1;
  return ms;
}

Subpresheaf skeleton(const Presheaf& x, ExtNat n) {
  if (n.is_pos_inf()) return sub_top(x);
  if (n.is_neg_inf()) return sub_bottom(x);
  const FinCategory& cat = x.base();
  const std::int64_t nv = n.value();

  // low[f]: f factors through an object of height at most n.
  std::vector<char> low(cat.morphism_count(), 0);
  for (MorId f = 0; f < cat.morphism_count(); ++f)
    for (ObjId m = 0; m < cat.object_count() && !low[f]; ++m) {
      if (cat.height(m) > nv) continue;
      for (MorId a : cat.hom(cat.dom(f), m)) {
        for (MorId b : cat.hom(m, cat.cod(f)))
          if (cat.compose(b, a) == f) {
            low[f] = 1;
            break;
          }
        if (low[f]) break;
      }
    }

  Subpresheaf sk = sub_bottom(x);
  for (ObjId d = 0; d < cat.object_count(); ++d)
    for (MorId f : cat.from(d)) {
      if (!low[f]) continue;
      for (ElemId y = 0; y < x.size(cat.cod(f)); ++y) sk.member[d][x.act(f, y)] = 1;
    }
  internal_check(sub_is_closed(sk), "skeleta must be action-closed");
  return sk;
}

Subpresheaf skeleton_by_strong_epis(const Presheaf& x, ExtNat n) {
  if (n.is_pos_inf()) return sub_top(x);
  if (n.is_neg_inf()) return sub_bottom(x);
  const FinCategory& cat = x.base();
  const std::int64_t nv = n.value();
  Subpresheaf sk = sub_bottom(x);
  for (ObjId d = 0; d < cat.object_count(); ++d)
    for (MorId g : cat.from(d)) {
      if (!cat.class_of(g).strong_epi || cat.height(cat.cod(g)) > nv) continue;
      for (ElemId y = 0; y < x.size(cat.cod(g)); ++y) sk.member[d][x.act(g, y)] = 1;
    }
  return sk;
}

ExtNat dim(const Presheaf& x) {
  if (x.total_size() == 0) return ExtNat::neg_inf();
  const FinCategory& cat = x.base();
  std::int64_t hmax = 0;
  for (ObjId a = 0; a < cat.object_count(); ++a)
    hmax = std::max<std::int64_t>(hmax, cat.height(a));
  Subpresheaf everything = sub_top(x);
  for (std::int64_t n = 0; n <= hmax; ++n)
    if (sub_eq(skeleton(x, ExtNat::of(n)), everything)) return ExtNat::of(n);
  fail(ErrorCode::internal, "a nonempty presheaf is skeletal at the maximal base height");
}

ExtNat depth(const Presheaf& x) { return depth_of_site(min_site(x).site()); }

MinimalCover minimal_cover(const Presheaf& x, ObjId stage, ElemId e) {
  check_figure(x, stage, e);
  if (is_minimal_element(x, stage, e)) return {x.base().identity(stage), {stage, e}};
  const FinCategory& cat = x.base();
  for (MorId f : cat.from(stage)) {
    if (!cat.class_of(f).strong_epi) continue;
    const ObjId d = cat.cod(f);
    for (ElemId y = 0; y < x.size(d); ++y)
      if (x.act(f, y) == e && is_minimal_element(x, d, y)) return {f, {d, y}};
  }
  fail(ErrorCode::hypothesis_failed,
       "no minimal element covers " + figure_ref(x, stage, e) +
           " through a strong epi; the base must factor maps as strong epi "
           "then mono and be well-founded");
}

DimensionReport verify_dimension_theorem(const Presheaf& x, std::optional<int> n_max) {
  HypothesisReport hyp = check_hypotheses(x.base());
  if (!hyp.all()) {
    std::string msg = "base hypotheses fail";
    for (const std::string& w : hyp.witnesses) msg += "; " + w;
    fail(ErrorCode::hypothesis_failed, msg);
  }

  MinSite ms = min_site(x);
  RegularityReport sr = strong_regularity(x);
  RegularityReport ns = non_singularity(x);

  DimensionReport rep;
  rep.dim = dim(x);
  rep.depth = depth_of_site(ms.site());
  rep.strongly_regular = sr.holds;
  rep.non_singular = ns.holds;
  rep.localic = ms.localic;
  rep.etendue = ms.etendue;
  rep.witnesses = std::move(sr.witnesses);
  rep.witnesses.insert(rep.witnesses.end(), ns.witnesses.begin(), ns.witnesses.end());

  // Largest base height among minimal figures; neg_inf when there are none.
  ExtNat tallest = ExtNat::neg_inf();
  for (const Figure& fig : ms.figures)
    tallest = std::max(tallest, ExtNat::of(x.base().height(fig.stage)));

  const int nm = n_max.value_or(ms.site().object_count() + 1);
  Subpresheaf everything = sub_top(x);
  rep.equivalent = true;
  for (int n = 0; n <= nm; ++n) {
    DimensionRow row;
    row.n = n;
    row.dim_le_n = sub_eq(skeleton(x, ExtNat::of(n)), everything);
    row.ibd_n = satisfies(ms.site(), Formula::ibd(ExtNat::of(n)));
    internal_check(row.dim_le_n == (rep.dim <= ExtNat::of(n)),
                   "skeleton table disagrees with the computed dimension");

    if (row.dim_le_n && !row.ibd_n)
      fail(ErrorCode::theorem_violation,
           "dimension bound " + std::to_string(n) + " holds but the sentence fails");
    if (sr.holds && row.dim_le_n != row.ibd_n)
      fail(ErrorCode::theorem_violation,
           "equivalence fails at " + std::to_string(n) + " despite strong regularity");

    const bool heights_le_n = tallest <= ExtNat::of(n);
    if (heights_le_n && !row.ibd_n)
      fail(ErrorCode::theorem_violation,
           "all minimal figures sit at height <= " + std::to_string(n) +
               " but the sentence fails");
    if (sr.holds && row.ibd_n && !heights_le_n)
      fail(ErrorCode::theorem_violation,
           "sentence holds at " + std::to_string(n) +
               " but a minimal figure exceeds that height despite strong regularity");

    rep.equivalent = rep.equivalent && (row.dim_le_n == row.ibd_n);
    rep.table.push_back(row);
  }

  if (rep.depth > rep.dim)
    fail(ErrorCode::theorem_violation, "depth exceeds dimension");
  if (sr.holds && rep.depth != rep.dim)
    fail(ErrorCode::theorem_violation,
         "depth differs from dimension despite strong regularity");
  return rep;
}

FinCategory level_e_site(const FinCategory& cat) {
  HypothesisReport hyp = check_hypotheses(cat);
  if (!hyp.split_epi_mono_factorization || !hyp.acc) {
    std::string msg = "base lacks split-epi/mono factorization or the chain condition";
    for (const std::string& w : hyp.witnesses) msg += "; " + w;
    fail(ErrorCode::hypothesis_failed, msg);
  }
  FullSubcat sub = min_full_subcategory(cat);
  for (MorId m = 0; m < sub.cat.morphism_count(); ++m)
    internal_check(sub.cat.class_of(m).mono,
                   "maps between minimal objects must be monic");
  // Maximality: no all-monic full subcategory reaches outside the minimal
  // objects, because any outside object already has a non-cancellable
  // endomorphism among its own endos.
  for (ObjId a = 0; a < cat.object_count(); ++a) {
    if (sub.to_sub[a] >= 0) continue;
    FullSubcat single = full_subcategory(cat, {a});
    bool has_non_mono = false;
    for (MorId m = 0; m < single.cat.morphism_count(); ++m)
      has_non_mono = has_non_mono || !single.cat.class_of(m).mono;
    internal_check(has_non_mono,
                   "an all-monic full subcategory escapes the minimal objects");
  }
  return sub.cat;
}

}  // namespace etendue
