#include <doctest.h>

#include "finsite/fractions.hpp"
#include "finsite/presheaf.hpp"
#include "fixtures.hpp"

using namespace finsite;
using namespace finsite::fix;

namespace {

std::set<std::string> identities_of(const Cat& c) {
  std::set<std::string> w;
  for (const std::string& x : c.objects()) w.insert(c.identity(x));
  return w;
}

std::set<std::string> isos_of(const Cat& c) {
  std::set<std::string> w;
  for (const Arrow& a : c.arrows())
    if (c.is_iso(a.id)) w.insert(a.id);
  return w;
}

}  // namespace

TEST_CASE("check_right_fractions: isos always work, bare {t} lacks identities") {
  Cat w = walking_iso();
  CHECK(check_right_fractions(w, isos_of(w)).ok);
  Cat two = two_cat();
  FractionsReport r = check_right_fractions(two, {"t"});
  CHECK(!r.ok);
  CHECK(r.counterexample.find("identity") != std::string::npos);
  std::set<std::string> widened = identities_of(two);
  widened.insert("t");
  CHECK(check_right_fractions(two, widened).ok);
}

TEST_CASE("check_right_fractions: all arrows of a category with pullbacks and equalizers") {
  Cat sq = square_poset();
  std::set<std::string> all;
  for (const Arrow& a : sq.arrows()) all.insert(a.id);
  CHECK(check_right_fractions(sq, all).ok);
  // the parallel pair has no equalizing bound, cancellation fails
  Cat pp = parallel_pair();
  std::set<std::string> allp;
  for (const Arrow& a : pp.arrows()) allp.insert(a.id);
  CHECK(!check_right_fractions(pp, allp).ok);
}

TEST_CASE("localize: at identities and at isos is the identity up to equivalence") {
  Cat two = two_cat();
  Localization l = localize(two, identities_of(two));
  CHECK(validate_category(l.cat).empty());
  CHECK(is_equivalence(l.j).ok);
  Cat w = walking_iso();
  Localization l2 = localize(w, isos_of(w));
  CHECK(validate_category(l2.cat).empty());
  CHECK(is_equivalence(l2.j).ok);
}

TEST_CASE("localize: Two at {ids, t} collapses to the point") {
  Cat two = two_cat();
  std::set<std::string> w = identities_of(two);
  w.insert("t");
  Localization l = localize(two, w);
  CHECK(validate_category(l.cat).empty());
  CHECK(exists_equivalence(l.cat, one_cat()));
  CHECK(l.cat.is_iso(l.j.on_arr("t")));
  CHECK(inverted_arrows(l) == std::set<std::string>{"id_0", "id_1", "t"});
}

TEST_CASE("localize: refuses without a right calculus of fractions") {
  CHECK_THROWS_AS((void)localize(two_cat(), {"t"}), finsite::error);
}

TEST_CASE("localize: fraction composition is representative independent") {
  Cat sq = square_poset();
  std::set<std::string> w = identities_of(sq);
  w.insert("a");  // 00 -> 01; Ore holds in the poset
  REQUIRE(check_right_fractions(sq, w).ok);
  Localization l = localize(sq, w);
  CHECK(validate_category(l.cat).empty());
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> members;
  for (const auto& [span, cls] : l.class_of) members[cls].push_back(span);
  auto ore = [&](const std::string& f,
                 const std::string& wv) -> std::pair<std::string, std::string> {
    for (const std::string& t : w) {
      if (sq.dst(t) != sq.src(f)) continue;
      for (const std::string& s : sq.hom(sq.src(t), sq.src(wv)))
        if (sq.compose(f, t) == sq.compose(wv, s)) return {t, s};
    }
    throw finsite::error("no completion");
  };
  for (const Arrow& cls2 : l.cat.arrows())
    for (const Arrow& cls1 : l.cat.arrows()) {
      if (cls1.dst != cls2.src) continue;
      std::string expected = l.cat.compose(cls2.id, cls1.id);
      for (const auto& [v1, f1] : members.at(cls1.id))
        for (const auto& [v2, f2] : members.at(cls2.id)) {
          auto [t, s] = ore(f1, v2);
          CHECK(l.class_of.at({sq.compose(v1, t), sq.compose(f2, s)}) == expected);
        }
    }
}

TEST_CASE("localize: universal property against tiny targets") {
  Cat two = two_cat();
  std::set<std::string> w = identities_of(two);
  w.insert("t");
  Localization l = localize(two, w);
  for (const Cat& target : {one_cat(), walking_iso(), two_cat()}) {
    for (const Functor& h : all_functors(two, target)) {
      bool inverts = true;
      for (const std::string& a : w)
        if (!target.is_iso(h.on_arr(a))) inverts = false;
      if (!inverts) continue;
      Functor bar = factor_through_localization(l, h);
      CHECK(validate_functor(bar).empty());
      CHECK(compose_functors(bar, l.j) == h);
      // uniqueness up to natural isomorphism
      for (const Functor& k : all_functors(l.cat, target)) {
        if (validate_functor(k).empty() &&
            find_nat_iso(compose_functors(k, l.j), h).has_value())
          CHECK(find_nat_iso(k, bar).has_value());
      }
    }
  }
}

TEST_CASE("localize_fibration: vertical isos leave the fibration unchanged") {
  GrothResult g = grothendieck(nonstrict_indexed());
  std::set<std::string> w;
  for (const Arrow& a : g.fib.total().arrows())
    if (g.fib.base().is_identity(g.fib.proj.on_arr(a.id)) && g.fib.total().is_iso(a.id))
      w.insert(a.id);
  LocalizedFibration lf = localize_fibration(g.fib, w);
  CHECK(validate_fibration(lf.fib).empty());
  CHECK(validate_fib_morphism(g.fib, lf.fib, lf.jmor).empty());
  CHECK(is_equivalence(lf.loc.j).ok);
}

TEST_CASE("localize_fibration: fibrewise localization collapses the fibre") {
  Indexed d = fibre_two_indexed();
  GrothResult g = grothendieck(d);
  std::set<std::string> w;
  for (const std::string& x : g.fib.total().objects()) w.insert(g.fib.total().identity(x));
  w.insert(g.arrow_of("id_1", "t'", "1", "a1"));
  REQUIRE(check_right_fractions(g.fib.total(), w).ok);
  LocalizedFibration lf = localize_fibration(g.fib, w);
  CHECK(validate_fibration(lf.fib).empty());
  EssentialFibre e = essential_fibre(lf.fib.proj, "1");
  CHECK(connected_components(e.cat).size() == 1);
  // discrete fibrations only allow vertical isos as the localized class
  auto el = elements(representable(two_cat(), "1"));
  Fibration disc = make_fibration(el.proj);
  std::set<std::string> bad;
  for (const std::string& x : disc.total().objects()) bad.insert(disc.total().identity(x));
  LocalizedFibration lf2 = localize_fibration(disc, bad);
  CHECK(is_equivalence(lf2.loc.j).ok);
}

TEST_CASE("lax_colimit: total is the grothendieck total; cocone validates") {
  for (const Indexed& d :
       {fibre_two_indexed(), nonstrict_indexed(), constant_one_indexed(two_cat())}) {
    LaxColimitResult l = lax_colimit(d);
    CHECK(l.groth.fib.total() == grothendieck(d).fib.total());
    for (const auto& [x, leg] : l.legs) CHECK(validate_functor(leg).empty());
    for (const auto& [y, n] : l.transforms) CHECK(validate_nat(n).empty());
  }
  LaxColimitResult l = lax_colimit(constant_one_indexed(two_cat()));
  CHECK(exists_iso_functor(l.groth.fib.total(), two_cat()));
}

TEST_CASE("oplax_colimit: opposite of the dual construction; discrete case") {
  Indexed d = fibre_two_indexed();
  OplaxColimitResult o = oplax_colimit(d);
  CHECK(validate_category(o.cat).empty());
  for (const auto& [x, leg] : o.legs) CHECK(validate_functor(leg).empty());
  for (const auto& [y, n] : o.transforms) CHECK(validate_nat(n).empty());
  Presheaf p = representable(two_cat(), "1");
  Indexed disc = discrete_indexed(p);
  OplaxColimitResult od = oplax_colimit(disc);
  CHECK(exists_iso_functor(od.cat, opposite(elements(p).cat)));
  LaxColimitResult ld = lax_colimit(disc);
  CHECK(exists_iso_functor(ld.groth.fib.total(), elements(p).cat));
}

TEST_CASE("pseudo_colimit: discrete weight gives pi0 = set colimit") {
  for (const Presheaf& p : {representable(two_cat(), "1"), terminal_presheaf(chain(3)),
                            representable(square_poset(), "11")}) {
    Indexed d = discrete_indexed(p);
    GrothResult g = grothendieck(d);
    Localization l = pseudo_colimit(d, g);
    CHECK(validate_category(l.cat).empty());
    CHECK(connected_components(l.cat).size() == presheaf_colimit_size(p));
    for (const Arrow& a : l.cat.arrows()) CHECK(l.cat.is_iso(a.id));
  }
}

TEST_CASE("pseudo_colimit: constant fibre over One, terminal fibres over Two") {
  Indexed e = strict_indexed(one_cat(), {{"*", fix::two_cat()}},
                             {{"id_*", identity_functor(fix::two_cat())}});
  GrothResult ge = grothendieck(e);
  Localization le = pseudo_colimit(e, ge);
  CHECK(exists_equivalence(le.cat, fix::two_cat()));

  Indexed d = constant_one_indexed(two_cat());
  GrothResult g = grothendieck(d);
  Localization l = pseudo_colimit(d, g);
  CHECK(exists_equivalence(l.cat, one_cat()));
}

TEST_CASE("weighted_ps_colimit: terminal weight and diagram give the point") {
  Indexed d = constant_one_indexed(one_cat());
  Indexed r = constant_one_indexed(opposite(one_cat()));
  WeightedResult w = weighted_ps_colimit(d, r);
  CHECK(validate_category(w.triple).empty());
  CHECK(exists_equivalence(w.loc.cat, one_cat()));
}

TEST_CASE("weighted_ps_colimit with the slice weight is the lax colimit") {
  for (const Indexed& d :
       {constant_one_indexed(two_cat()), fibre_two_indexed(),
        discrete_indexed(representable(two_cat(), "1")), nonstrict_indexed()}) {
    Indexed r = slice_weight(d.base);
    REQUIRE(validate_indexed(r).empty());
    WeightedResult w = weighted_ps_colimit(d, r);
    REQUIRE(validate_category(w.triple).empty());
    GrothResult g = grothendieck(d);
    Functor L = slice_weight_comparison(d, g, w);
    REQUIRE(validate_functor(L).empty());
    Functor bar = factor_through_localization(w.loc, L);
    CHECK(validate_functor(bar).empty());
    CHECK(is_equivalence(bar).ok);
  }
}

TEST_CASE("groupoidal conification agrees with the weighted pseudocolimit on discrete data") {
  Indexed d = discrete_indexed(representable(two_cat(), "1"));
  Indexed r = slice_weight(two_cat());
  WeightedResult a = weighted_ps_colimit(d, r);
  WeightedResult b = groupoidal_conification(d, r);
  CHECK(a.triple == b.triple);
  CHECK(a.loc.cat == b.loc.cat);
}

TEST_CASE("groupoidal conification over One is the groupoidification of the fibre") {
  Indexed d = strict_indexed(one_cat(), {{"*", square_poset()}},
                             {{"id_*", identity_functor(square_poset())}});
  Indexed r = constant_one_indexed(opposite(one_cat()));
  WeightedResult w = groupoidal_conification(d, r);
  for (const Arrow& a : w.loc.cat.arrows()) CHECK(w.loc.cat.is_iso(a.id));
  std::set<std::string> all;
  for (const Arrow& a : square_poset().arrows()) all.insert(a.id);
  Localization direct = localize(square_poset(), all);
  CHECK(exists_equivalence(w.loc.cat, direct.cat));
}

TEST_CASE("groupoidal conification: groupoidal fibres match the pseudo colimit") {
  Cat w = walking_iso();
  Indexed d = strict_indexed(one_cat(), {{"*", w}}, {{"id_*", identity_functor(w)}});
  Indexed r = constant_one_indexed(opposite(one_cat()));
  WeightedResult g = groupoidal_conification(d, r);
  GrothResult gr = grothendieck(d);
  Localization ps = pseudo_colimit(d, gr);
  CHECK(exists_equivalence(g.loc.cat, ps.cat));
}
