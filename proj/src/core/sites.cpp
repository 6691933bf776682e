#include "sites.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace etendue {

namespace {

using Tuple = std::vector<signed char>;

std::string tuple_name(char prefix, int cod_label, const Tuple& t) {
  std::string s;
  s += prefix;
  s += std::to_string(cod_label);
  s += ':';
  for (signed char v : t) s += static_cast<char>('0' + v);
  return s;
}

// All value tuples of the given length over 0..max_value, lexicographic;
// monotone restricts to nondecreasing ones.
std::vector<Tuple> all_tuples(int length, int max_value, bool monotone) {
  std::vector<Tuple> out;
  if (max_value < 0) {
    if (length == 0) out.push_back({});
    return out;
  }
  Tuple cur(static_cast<std::size_t>(length), 0);
  auto rec = [&](auto&& self, int i) -> void {
    if (i == length) {
      out.push_back(cur);
      return;
    }
    signed char lo = (monotone && i > 0) ? cur[i - 1] : static_cast<signed char>(0);
    for (signed char v = lo; v <= max_value; ++v) {
      cur[i] = v;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

// Shared skeleton: objects are labeled sizes; a map of arity a into an
// object of size s is a tuple of a values below s.
FinCategory build_function_site(int k, int soft_max, int hard_max, char prefix, bool monotone,
                                int first_label, const std::string& what) {
  if (k < first_label)
    fail(ErrorCode::malformed_input, what + " truncation needs at least one object");
  if (k > soft_max || k > hard_max)
    fail(ErrorCode::budget_exceeded,
         what + " truncation guard: " + std::to_string(k) + " > " +
             std::to_string(std::min(soft_max, hard_max)));
  const int nobj = k - first_label + 1;
  auto arity = [&](int obj) { return monotone ? obj + first_label + 1 : obj + first_label; };
  auto size = arity;  // elements of the object an incoming tuple draws from

  CategoryBuilder b;
  for (int o = 0; o < nobj; ++o) {
    int label = o + first_label;
    b.add_object(monotone ? "[" + std::to_string(label) + "]" : std::to_string(label));
  }
  // Tuples grouped by (dom, cod), ascending, values lexicographic.
  std::vector<std::vector<Tuple>> tuples;  // per morphism id
  std::vector<std::map<Tuple, MorId>> lookup(static_cast<std::size_t>(nobj) * nobj);
  std::vector<Tuple> tuple_of;
  std::vector<int> dom_of, cod_of;
  for (int d = 0; d < nobj; ++d) {
    for (int c = 0; c < nobj; ++c) {
      for (Tuple& t : all_tuples(arity(d), size(c) - 1, monotone)) {
        MorId f = b.add_morphism(tuple_name(prefix, c + first_label, t), d, c);
        lookup[static_cast<std::size_t>(d) * nobj + c].emplace(t, f);
        tuple_of.push_back(std::move(t));
        dom_of.push_back(d);
        cod_of.push_back(c);
      }
    }
  }
  for (int o = 0; o < nobj; ++o) {
    Tuple id(static_cast<std::size_t>(arity(o)));
    for (int i = 0; i < arity(o); ++i) id[i] = static_cast<signed char>(i);
    b.set_identity(o, lookup[static_cast<std::size_t>(o) * nobj + o].at(id));
  }
  const int nmor = static_cast<int>(tuple_of.size());
  Tuple comp;
  for (MorId g = 0; g < nmor; ++g) {
    for (MorId f = 0; f < nmor; ++f) {
      if (cod_of[f] != dom_of[g]) continue;
      const Tuple& tf = tuple_of[f];
      const Tuple& tg = tuple_of[g];
      comp.resize(tf.size());
      for (std::size_t i = 0; i < tf.size(); ++i) comp[i] = tg[tf[i]];
      b.set_compose(g, f, lookup[static_cast<std::size_t>(dom_of[f]) * nobj + cod_of[g]].at(comp));
    }
  }
  return b.finish();
}

}  // namespace

FinCategory build_delta(int k, int soft_max) {
  return build_function_site(k, soft_max, 9, 'd', true, 0, "simplex");
}

FinCategory build_finset(int k, int soft_max) {
  return build_function_site(k, soft_max, 9, 'f', false, 1, "finite-set");
}

}  // namespace etendue
