#include <doctest.h>

#include "finsite/coverage.hpp"
#include "fixtures.hpp"

using namespace finsite;
using namespace finsite::fix;

TEST_CASE("sieve_generated: empty, identity, the singleton {t} on Two") {
  Cat two = two_cat();
  CHECK(sieve_generated(two, "1", {}).arrows.empty());
  CHECK(sieve_generated(two, "1", {"id_1"}) == maximal_sieve(two, "1"));
  Sieve t = sieve_generated(two, "1", {"t"});
  CHECK(t.arrows == std::set<std::string>{"t"});
  CHECK(is_sieve(two, t));
}

TEST_CASE("pullback_sieve: identities, maximal sieves, and t*({t})") {
  Cat two = two_cat();
  Sieve t = sieve_generated(two, "1", {"t"});
  CHECK(pullback_sieve(two, t, "id_1") == t);
  CHECK(pullback_sieve(two, maximal_sieve(two, "1"), "t") == maximal_sieve(two, "0"));
  CHECK(pullback_sieve(two, t, "t") == maximal_sieve(two, "0"));
}

TEST_CASE("saturate: empty coverage gives the trivial topology") {
  for (const Cat& c : {one_cat(), two_cat(), chain(3), parallel_pair()}) {
    Topology j = saturate(c, {});
    CHECK(validate_topology(j).empty());
    for (const std::string& x : c.objects()) CHECK(j.at(x).size() == 1);
  }
}

TEST_CASE("saturate: the {t} coverage on Two gives J2") {
  Cat two = two_cat();
  Topology j2 = saturate(two, {{"1", {sieve_generated(two, "1", {"t"})}}});
  CHECK(validate_topology(j2).empty());
  CHECK(j2.at("1").size() == 2);
  CHECK(j2.at("0").size() == 1);
  CHECK(j2.covers(sieve_generated(two, "1", {"t"})));
  // idempotent
  Topology again = saturate(two, j2.covering);
  CHECK(again.covering == j2.covering);
}

TEST_CASE("saturate: an empty covering sieve swallows everything in range") {
  Cat two = two_cat();
  Topology j = saturate(two, {{"1", {Sieve{"1", {}}}}});
  CHECK(validate_topology(j).empty());
  // every sieve on 1 becomes covering, and the empty sieve propagates to 0
  CHECK(j.at("1").size() == 3);
  CHECK(j.covers(Sieve{"0", {}}));
}

TEST_CASE("is_sheaf: trivial topology accepts everything") {
  Cat two = two_cat();
  Topology triv = trivial_topology(two);
  for (const Presheaf& p : {representable(two, "0"), representable(two, "1"),
                            terminal_presheaf(two), empty_presheaf(two)})
    CHECK(is_sheaf(p, triv));
}

TEST_CASE("is_sheaf on (Two, J2): representable(0) fails, the empty presheaf passes") {
  Cat two = two_cat();
  Topology j2 = saturate(two, {{"1", {sieve_generated(two, "1", {"t"})}}});
  CHECK(!is_sheaf(representable(two, "0"), j2));
  CHECK(is_separated(representable(two, "0"), j2));
  CHECK(is_sheaf(empty_presheaf(two), j2));
  CHECK(is_sheaf(representable(two, "1"), j2));
}

TEST_CASE("sheafify: a sheaf has an invertible unit") {
  Cat two = two_cat();
  Topology j2 = saturate(two, {{"1", {sieve_generated(two, "1", {"t"})}}});
  SheafifyResult r = sheafify(empty_presheaf(two), j2);
  CHECK(psh_map_is_iso(r.unit));
  CHECK(validate_psh_map(r.unit).empty());
}

TEST_CASE("sheafify: representable(0) over (Two, J2)") {
  Cat two = two_cat();
  Topology j2 = saturate(two, {{"1", {sieve_generated(two, "1", {"t"})}}});
  SheafifyResult r = sheafify(representable(two, "0"), j2);
  CHECK(validate_presheaf(r.psh).empty());
  CHECK(is_sheaf(r.psh, j2));
  CHECK(r.psh.at("1").size() == 1);
  CHECK(r.psh.at("0").size() == 1);
  // idempotent up to iso
  SheafifyResult rr = sheafify(r.psh, j2);
  CHECK(psh_map_is_iso(rr.unit));
}

TEST_CASE("sheafify: empty-cover amalgamation collapses the bottom value") {
  // 3-chain frame site: the empty sieve covers the bottom object
  Cat three = chain(3);
  Topology j = saturate(three, {{"0", {Sieve{"0", {}}}}});
  CHECK(validate_topology(j).empty());
  Presheaf p = terminal_presheaf(three);
  p.value["0"] = {"a", "b"};
  p.action["id_0"] = {{"a", "a"}, {"b", "b"}};
  p.action["c01"] = {{"*", "a"}};
  p.action["c02"] = {{"*", "a"}};
  REQUIRE(validate_presheaf(p).empty());
  SheafifyResult r = sheafify(p, j);
  CHECK(r.psh.at("0").size() == 1);
  CHECK(is_sheaf(r.psh, j));
}

TEST_CASE("sheafify unit is componentwise injective iff the input is separated") {
  Cat two = two_cat();
  Topology j2 = saturate(two, {{"1", {sieve_generated(two, "1", {"t"})}}});
  std::vector<Presheaf> fixtures{representable(two, "0"), representable(two, "1"),
                                 terminal_presheaf(two)};
  // a non-separated presheaf: two points over 1 restricting to the same point
  Presheaf bad = terminal_presheaf(two);
  bad.value["1"] = {"p", "q"};
  bad.action["id_1"] = {{"p", "p"}, {"q", "q"}};
  bad.action["t"] = {{"p", "*"}, {"q", "*"}};
  fixtures.push_back(bad);
  for (const Presheaf& p : fixtures) {
    SheafifyResult r = sheafify(p, j2);
    CHECK(psh_map_is_mono(r.unit) == is_separated(p, j2));
  }
}

TEST_CASE("is_subcanonical: trivial yes, J2 no, join covers on a frame yes") {
  Cat two = two_cat();
  CHECK(is_subcanonical(trivial_topology(two)));
  Topology j2 = saturate(two, {{"1", {sieve_generated(two, "1", {"t"})}}});
  CHECK(!is_subcanonical(j2));
  // square poset is a finite frame; join covers: {p,q} covers the top, the
  // empty family covers the bottom
  Cat sq = square_poset();
  Topology can = saturate(sq, {{"11", {sieve_generated(sq, "11", {"p", "q"})}},
                               {"00", {Sieve{"00", {}}}}});
  CHECK(validate_topology(can).empty());
  CHECK(is_subcanonical(can));
}

TEST_CASE("covering sieve inclusions are dense monos") {
  Cat two = two_cat();
  Topology j2 = saturate(two, {{"1", {sieve_generated(two, "1", {"t"})}}});
  for (const std::string& x : two.objects())
    for (const Sieve& s : j2.at(x)) CHECK(is_dense_mono(sieve_inclusion(two, s), j2));
  // identity is dense; the empty inclusion into y(1) is not dense for the
  // trivial topology
  CHECK(is_dense_mono(identity_psh_map(representable(two, "1")), trivial_topology(two)));
  PshMap empty_incl{empty_presheaf(two), representable(two, "1"), {}};
  empty_incl.comp["0"] = {};
  empty_incl.comp["1"] = {};
  CHECK(!is_dense_mono(empty_incl, trivial_topology(two)));
}

TEST_CASE("enumerate_topologies: One has 2, Two has 4, closure under intersection") {
  CHECK(enumerate_topologies(one_cat()).size() == 2);
  Cat two = two_cat();
  std::vector<Topology> all = enumerate_topologies(two);
  CHECK(all.size() == 4);
  Topology j2 = saturate(two, {{"1", {sieve_generated(two, "1", {"t"})}}});
  bool found = false;
  for (const Topology& t : all) {
    CHECK(validate_topology(t).empty());
    if (t.covering == j2.covering) found = true;
  }
  CHECK(found);
  for (const Topology& a : all)
    for (const Topology& b : all) {
      Topology meet = intersect_topologies(a, b);
      bool present = false;
      for (const Topology& t : all)
        if (t.covering == meet.covering) present = true;
      CHECK(present);
    }
}

TEST_CASE("enumerate_topologies: bound is enforced") {
  CHECK_THROWS_AS((void)enumerate_topologies(chain(5), 10), finsite::error);
}
