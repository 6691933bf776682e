#include "examples.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "sites.hpp"

namespace etendue {

namespace {

ObjId require_object(const FinCategory& base, const std::string& name,
                     const char* wanted_for) {
  if (auto c = base.find_object(name)) return *c;
  fail(ErrorCode::incompatible_base,
       std::string(wanted_for) + " needs an object named " + name);
}

}  // namespace

PresheafMap yoneda_map(const Presheaf& y_dom, const Presheaf& y_cod, MorId f) {
  const FinCategory& cat = y_dom.base();
  if (!cat.same(y_cod.base()))
    fail(ErrorCode::parent_mismatch, "representables live over different bases");
  PresheafMap m;
  m.dom = y_dom;
  m.cod = y_cod;
  m.comp.resize(cat.object_count());
  for (ObjId b = 0; b < cat.object_count(); ++b) {
    m.comp[b].resize(y_dom.size(b));
    for (ElemId i = 0; i < y_dom.size(b); ++i) {
      MorId g = *cat.find_morphism(y_dom.element_name(b, i));
      MorId fg = cat.compose(f, g);
      m.comp[b][i] = *y_cod.find_element(b, cat.morphism_name(fg));
    }
  }
  if (auto why = naturality_violation(m)) fail(ErrorCode::internal, *why);
  return m;
}

Presheaf representable_example(const FinCategory& base, std::string_view object) {
  if (auto c = base.find_object(object)) return yoneda(base, *c);
  fail(ErrorCode::incompatible_base,
       "representable needs an object named " + std::string(object));
}

Presheaf boundary_example(const FinCategory& base, int n) {
  ObjId c = require_object(base, "[" + std::to_string(n) + "]", "boundary");
  Presheaf yc = yoneda(base, c);
  Subpresheaf join = sub_bottom(yc);
  for (MorId f : base.into(c)) {
    const MorphismClass& mc = base.class_of(f);
    if (!mc.mono || mc.iso) continue;
    ElemId e = *yc.find_element(base.dom(f), base.morphism_name(f));
    join = sub_join(join, image_of_element(yc, base.dom(f), e));
  }
  return sub_realize(join).presheaf;
}

Presheaf loop_example(const FinCategory& base) {
  ObjId v = require_object(base, "[0]", "loop_Y");
  ObjId edge = require_object(base, "[1]", "loop_Y");
  Presheaf y0 = yoneda(base, v);
  Presheaf y1 = yoneda(base, edge);
  const std::vector<MorId>& points = base.hom(v, edge);
  internal_check(points.size() == 2, "the interval has two endpoints");
  Quotient q = coequalizer(yoneda_map(y0, y1, points[0]), yoneda_map(y0, y1, points[1]));
  return q.presheaf;
}

Presheaf collapsed_example(const FinCategory& base) {
  ObjId c = require_object(base, "[2]", "collapsed_Z");
  Presheaf yc = yoneda(base, c);
  Subpresheaf join = sub_bottom(yc);
  for (MorId f : base.into(c)) {
    const MorphismClass& mc = base.class_of(f);
    if (!mc.mono || mc.iso) continue;
    ElemId e = *yc.find_element(base.dom(f), base.morphism_name(f));
    join = sub_join(join, image_of_element(yc, base.dom(f), e));
  }
  Realized rim = sub_realize(join);
  Presheaf point = terminal_presheaf(base);
  PresheafMap bang;
  bang.dom = rim.presheaf;
  bang.cod = point;
  bang.comp.resize(base.object_count());
  for (ObjId d = 0; d < base.object_count(); ++d)
    bang.comp[d].assign(rim.presheaf.size(d), 0);
  return pushout(rim.inclusion, bang).presheaf;
}

Presheaf example_by_name(const FinCategory& base, std::string_view spec) {
  auto arg_of = [&](std::string_view head) -> std::optional<std::string> {
    if (spec.size() < head.size() + 2 || spec.substr(0, head.size()) != head ||
        spec[head.size()] != '(' || spec.back() != ')')
      return std::nullopt;
    return std::string(spec.substr(head.size() + 1, spec.size() - head.size() - 2));
  };
  if (spec == "loop_Y") return loop_example(base);
  if (spec == "collapsed_Z") return collapsed_example(base);
  if (auto obj = arg_of("representable")) return representable_example(base, *obj);
  if (auto num = arg_of("boundary")) {
    auto n = ExtNat::parse(*num);
    if (!n || !n->is_finite())
      fail(ErrorCode::malformed_input, "boundary expects a natural number");
    return boundary_example(base, static_cast<int>(n->value()));
  }
  fail(ErrorCode::unknown_name, "unknown example: " + std::string(spec));
}

std::vector<NamedPresheaf> seed_corpus() {
  std::vector<NamedPresheaf> out;
  auto add_family = [&out](const std::string& base_ref, const FinCategory& base,
                           const std::vector<std::string>& specs) {
    std::vector<Presheaf> built;
    for (const std::string& s : specs) {
      built.push_back(example_by_name(base, s));
      out.push_back({s, base_ref, built.back()});
    }
    for (std::size_t i = 0; i < specs.size(); ++i)
      for (std::size_t j = i; j < specs.size(); ++j)
        out.push_back({specs[i] + " + " + specs[j], base_ref,
                       coproduct(built[i], built[j]).presheaf});
  };

  add_family("delta:1", build_delta(1), {"loop_Y"});
  add_family("delta:2", build_delta(2), {"boundary(2)", "collapsed_Z"});
  add_family("delta:3", build_delta(3),
             {"representable([0])", "representable([1])", "representable([2])",
              "representable([3])"});
  add_family("finset:2", build_finset(2), {"representable(1)", "representable(2)"});
  return out;
}

}  // namespace etendue
