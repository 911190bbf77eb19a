#include <doctest.h>

#include "finsite/indexed.hpp"
#include "finsite/presheaf.hpp"
#include "fixtures.hpp"

using namespace finsite;

TEST_CASE("representable presheaves") {
  Presheaf y1 = representable(fix::two_cat(), "1");
  CHECK(validate_presheaf(y1).empty());
  CHECK(y1.at("0") == std::vector<std::string>{"t"});
  CHECK(y1.at("1") == std::vector<std::string>{"id_1"});
  Presheaf y0 = representable(fix::two_cat(), "0");
  CHECK(y0.at("1").empty());
  Presheaf yo = representable(fix::one_cat(), "*");
  CHECK(yo.at("*").size() == 1);
}

TEST_CASE("elements: of a representable is the slice") {
  for (auto& [c, x] : std::vector<std::pair<Cat, std::string>>{
           {fix::one_cat(), "*"}, {fix::two_cat(), "1"}, {fix::chain(3), "1"}}) {
    auto el = elements(representable(c, x));
    auto sl = slice(c, x);
    CHECK(validate_category(el.cat).empty());
    CHECK(fix::exists_iso_functor(el.cat, sl.cat));
  }
}

TEST_CASE("elements: terminal presheaf gives the base, empty gives the empty category") {
  Cat c = fix::two_cat();
  auto el = elements(terminal_presheaf(c));
  CHECK(fix::exists_iso_functor(el.cat, c));
  auto e2 = elements(empty_presheaf(c));
  CHECK(e2.cat.objects().empty());
}

TEST_CASE("elements projection is a discrete Grothendieck fibration") {
  for (const Presheaf& p :
       {representable(fix::two_cat(), "1"), terminal_presheaf(fix::chain(3)),
        representable(fix::parallel_pair(), "1")}) {
    auto el = elements(p);
    CHECK(is_grothendieck_fibration(el.proj));
    for (const Arrow& a : el.cat.arrows())
      if (el.proj.dst.is_identity(el.proj.on_arr(a.id)))
        CHECK(el.cat.is_identity(a.id));  // fibres are discrete
  }
}

TEST_CASE("restrict: along the identity and pointwise values") {
  Presheaf y1 = representable(fix::two_cat(), "1");
  Presheaf same = restrict_presheaf(y1, identity_functor(fix::two_cat()));
  CHECK(same.value == y1.value);
  Functor pick0{fix::one_cat(), fix::two_cat(), {{"*", "0"}}, {{"id_*", "id_0"}}};
  Presheaf r = restrict_presheaf(y1, pick0);
  CHECK(validate_presheaf(r).empty());
  CHECK(r.at("*") == std::vector<std::string>{"t"});
  // restrict(-, F) . restrict(-, G) = restrict(-, G . F) structurally
  Functor pick1{fix::one_cat(), fix::two_cat(), {{"*", "1"}}, {{"id_*", "id_1"}}};
  Presheaf a = restrict_presheaf(restrict_presheaf(y1, identity_functor(fix::two_cat())), pick1);
  Presheaf b = restrict_presheaf(y1, compose_functors(identity_functor(fix::two_cat()), pick1));
  CHECK(a.value == b.value);
  CHECK(a.action == b.action);
}

TEST_CASE("lan: along the identity is the identity up to iso") {
  Presheaf y1 = representable(fix::two_cat(), "1");
  auto lr = lan(identity_functor(fix::two_cat()), y1);
  CHECK(validate_presheaf(lr.psh).empty());
  CHECK(find_psh_iso(y1, lr.psh).has_value());
  CHECK(validate_psh_map(lr.unit).empty());
}

TEST_CASE("lan: along One -> Two picking 0, of the singleton presheaf") {
  Functor pick0{fix::one_cat(), fix::two_cat(), {{"*", "0"}}, {{"id_*", "id_0"}}};
  auto lr = lan(pick0, terminal_presheaf(fix::one_cat()));
  CHECK(lr.psh.at("0").size() == 1);
  CHECK(lr.psh.at("1").empty());
}

TEST_CASE("lan preserves representables") {
  Functor pick1{fix::one_cat(), fix::two_cat(), {{"*", "1"}}, {{"id_*", "id_1"}}};
  auto lr = lan(pick1, representable(fix::one_cat(), "*"));
  CHECK(find_psh_iso(lr.psh, representable(fix::two_cat(), "1")).has_value());

  Cat three = fix::chain(3);
  Functor incl{fix::two_cat(), three, {{"0", "0"}, {"1", "2"}},
               {{"id_0", "id_0"}, {"id_1", "id_2"}, {"t", "c02"}}};
  REQUIRE(validate_functor(incl).empty());
  for (const std::string& x : std::vector<std::string>{"0", "1"}) {
    auto l = lan(incl, representable(fix::two_cat(), x));
    CHECK(find_psh_iso(l.psh, representable(three, incl.on_obj(x))).has_value());
  }
}

TEST_CASE("lan -| restrict triangle identities") {
  Functor incl{fix::two_cat(), fix::chain(3), {{"0", "0"}, {"1", "2"}},
               {{"id_0", "id_0"}, {"id_1", "id_2"}, {"t", "c02"}}};
  for (const Presheaf& p : {representable(fix::two_cat(), "1"),
                            terminal_presheaf(fix::two_cat()),
                            representable(fix::two_cat(), "0")}) {
    LanResult lr = lan(incl, p);
    PshMap lu = lan_map(incl, lr.unit);
    PshMap eps = lan_counit(incl, lr.psh);
    PshMap tri = compose_psh_maps(eps, lu);
    CHECK(tri.comp == identity_psh_map(lr.psh).comp);
  }
  for (const Presheaf& q :
       {representable(fix::chain(3), "1"), terminal_presheaf(fix::chain(3))}) {
    Presheaf rq = restrict_presheaf(q, incl);
    LanResult lr = lan(incl, rq);
    PshMap eps = lan_counit(incl, q);
    PshMap tri = compose_psh_maps(restrict_map(eps, incl), lr.unit);
    CHECK(tri.comp == identity_psh_map(rq).comp);
    CHECK(validate_psh_map(eps).empty());
  }
}

TEST_CASE("pi0_indexed: discrete input is itself; connected fibres collapse") {
  Presheaf p = representable(fix::two_cat(), "1");
  Indexed d = discrete_indexed(p);
  Presheaf q = pi0_indexed(d);
  CHECK(find_psh_iso(p, q).has_value());

  Indexed e = strict_indexed(fix::one_cat(), {{"*", fix::two_cat()}},
                             {{"id_*", identity_functor(fix::two_cat())}});
  CHECK(pi0_indexed(e).at("*").size() == 1);

  Cat oo = coproduct(fix::one_cat(), fix::one_cat(), "l.", "r.");
  Indexed f = strict_indexed(fix::two_cat(), {{"0", oo}, {"1", oo}},
                             {{"id_0", identity_functor(oo)},
                              {"id_1", identity_functor(oo)},
                              {"t", identity_functor(oo)}});
  Presheaf pf = pi0_indexed(f);
  CHECK(pf.at("0").size() == 2);
  CHECK(pf.at("1").size() == 2);
  CHECK(validate_presheaf(pf).empty());
}

TEST_CASE("presheaf colimit oracle") {
  CHECK(presheaf_colimit_size(representable(fix::chain(3), "2")) == 1);
  CHECK(presheaf_colimit_size(empty_presheaf(fix::two_cat())) == 0);
  Presheaf p = terminal_presheaf(fix::two_cat());
  p.value["0"] = {"a", "b"};
  p.value["1"] = {"a", "b"};
  p.action["id_0"] = {{"a", "a"}, {"b", "b"}};
  p.action["id_1"] = {{"a", "a"}, {"b", "b"}};
  p.action["t"] = {{"a", "a"}, {"b", "b"}};
  CHECK(presheaf_colimit_size(p) == 2);
}
