#include "fixtures.hpp"

namespace finsite::fix {

Cat one_cat() {
  Cat c;
  c.add_object("*");
  c.add_arrow("id_*", "*", "*");
  c.set_identity("*", "id_*");
  c.set_compose("id_*", "id_*", "id_*");
  return c;
}

Cat two_cat() {
  Cat c;
  c.add_object("0");
  c.add_object("1");
  c.add_arrow("id_0", "0", "0");
  c.add_arrow("id_1", "1", "1");
  c.add_arrow("t", "0", "1");
  c.set_identity("0", "id_0");
  c.set_identity("1", "id_1");
  c.set_compose("id_0", "id_0", "id_0");
  c.set_compose("id_1", "id_1", "id_1");
  c.set_compose("t", "id_0", "t");
  c.set_compose("id_1", "t", "t");
  return c;
}

Cat chain(int n) {
  Cat c;
  auto name = [](int i) { return std::to_string(i); };
  for (int i = 0; i < n; ++i) {
    c.add_object(name(i));
    c.add_arrow("id_" + name(i), name(i), name(i));
    c.set_identity(name(i), "id_" + name(i));
  }
  auto arr = [&](int i, int j) {
    return i == j ? "id_" + name(i) : "c" + name(i) + name(j);
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) c.add_arrow(arr(i, j), name(i), name(j));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j; k < n; ++k) c.set_compose(arr(j, k), arr(i, j), arr(i, k));
  return c;
}

Cat parallel_pair() {
  Cat c;
  c.add_object("0");
  c.add_object("1");
  c.add_arrow("id_0", "0", "0");
  c.add_arrow("id_1", "1", "1");
  c.add_arrow("f", "0", "1");
  c.add_arrow("g", "0", "1");
  c.set_identity("0", "id_0");
  c.set_identity("1", "id_1");
  c.set_compose("id_0", "id_0", "id_0");
  c.set_compose("id_1", "id_1", "id_1");
  for (auto a : {"f", "g"}) {
    c.set_compose(a, "id_0", a);
    c.set_compose("id_1", a, a);
  }
  return c;
}

Cat walking_iso() {
  Cat c;
  c.add_object("x");
  c.add_object("y");
  c.add_arrow("id_x", "x", "x");
  c.add_arrow("id_y", "y", "y");
  c.add_arrow("u", "x", "y");
  c.add_arrow("v", "y", "x");
  c.set_identity("x", "id_x");
  c.set_identity("y", "id_y");
  c.set_compose("id_x", "id_x", "id_x");
  c.set_compose("id_y", "id_y", "id_y");
  c.set_compose("u", "id_x", "u");
  c.set_compose("id_y", "u", "u");
  c.set_compose("v", "id_y", "v");
  c.set_compose("id_x", "v", "v");
  c.set_compose("v", "u", "id_x");
  c.set_compose("u", "v", "id_y");
  return c;
}

Cat discrete(int n) {
  Cat c;
  for (int i = 0; i < n; ++i) {
    std::string x = "d" + std::to_string(i);
    c.add_object(x);
    c.add_arrow("id_" + x, x, x);
    c.set_identity(x, "id_" + x);
    c.set_compose("id_" + x, "id_" + x, "id_" + x);
  }
  return c;
}

Cat square_poset() {
  Cat c;
  for (auto x : {"00", "01", "10", "11"}) {
    c.add_object(x);
    c.add_arrow(std::string("id_") + x, x, x);
    c.set_identity(x, std::string("id_") + x);
  }
  c.add_arrow("a", "00", "01");
  c.add_arrow("b", "00", "10");
  c.add_arrow("p", "01", "11");
  c.add_arrow("q", "10", "11");
  c.add_arrow("d", "00", "11");
  for (const Arrow& g : c.arrows())
    for (const Arrow& f : c.arrows()) {
      if (f.dst != g.src) continue;
      if (c.is_identity(f.id))
        c.set_compose(g.id, f.id, g.id);
      else if (c.is_identity(g.id))
        c.set_compose(g.id, f.id, f.id);
      else
        c.set_compose(g.id, f.id, "d");  // only 00 -> 11 composites remain
    }
  return c;
}

bool exists_iso_functor(const Cat& a, const Cat& b) {
  for (const Functor& f : all_functors(a, b))
    if (is_isomorphism_functor(f)) return true;
  return false;
}

bool exists_equivalence(const Cat& a, const Cat& b) {
  for (const Functor& f : all_functors(a, b))
    if (is_equivalence(f).ok) return true;
  return false;
}

Indexed constant_one_indexed(const Cat& base) {
  std::map<std::string, Cat> fibres;
  std::map<std::string, Functor> transitions;
  Cat one = one_cat();
  for (const std::string& x : base.objects()) fibres[x] = one;
  for (const Arrow& y : base.arrows()) transitions[y.id] = identity_functor(one);
  return strict_indexed(base, std::move(fibres), std::move(transitions));
}

Indexed fibre_two_indexed() {
  Cat f1;
  f1.add_object("a0");
  f1.add_object("a1");
  f1.add_arrow("id_a0", "a0", "a0");
  f1.add_arrow("id_a1", "a1", "a1");
  f1.add_arrow("t'", "a0", "a1");
  f1.set_identity("a0", "id_a0");
  f1.set_identity("a1", "id_a1");
  f1.set_compose("id_a0", "id_a0", "id_a0");
  f1.set_compose("id_a1", "id_a1", "id_a1");
  f1.set_compose("t'", "id_a0", "t'");
  f1.set_compose("id_a1", "t'", "t'");
  Cat f0 = one_cat();
  Functor t{f1, f0, {{"a0", "*"}, {"a1", "*"}},
            {{"id_a0", "id_*"}, {"id_a1", "id_*"}, {"t'", "id_*"}}};
  return strict_indexed(two_cat(),
                        {{"0", f0}, {"1", f1}},
                        {{"id_0", identity_functor(f0)},
                         {"id_1", identity_functor(f1)},
                         {"t", t}});
}

Indexed nonstrict_indexed() {
  Cat w = walking_iso();
  Cat one = one_cat();
  Functor swap{w, w, {{"x", "y"}, {"y", "x"}},
               {{"id_x", "id_y"}, {"id_y", "id_x"}, {"u", "v"}, {"v", "u"}}};
  Functor pickx{one, w, {{"*", "x"}}, {{"id_*", "id_x"}}};
  Indexed d;
  d.base = two_cat();
  d.fibre = {{"0", w}, {"1", one}};
  d.transition = {{"id_0", swap}, {"id_1", identity_functor(one)}, {"t", pickx}};
  d.unit_iso["1"] = identity_nat(identity_functor(one));
  d.unit_iso["1"].dst = d.tr("id_1");
  d.unit_iso["0"] = NatTrans{identity_functor(w), swap, {{"x", "u"}, {"y", "v"}}};
  d.comp_iso[{"id_0", "id_0"}] =
      NatTrans{compose_functors(swap, swap), swap, {{"x", "u"}, {"y", "v"}}};
  d.comp_iso[{"id_1", "id_1"}] = NatTrans{
      compose_functors(identity_functor(one), identity_functor(one)),
      identity_functor(one),
      {{"*", "id_*"}}};
  d.comp_iso[{"id_1", "t"}] =
      NatTrans{compose_functors(pickx, identity_functor(one)), pickx, {{"*", "id_x"}}};
  d.comp_iso[{"t", "id_0"}] = NatTrans{compose_functors(swap, pickx), pickx, {{"*", "v"}}};
  return d;
}

}  // namespace finsite::fix
