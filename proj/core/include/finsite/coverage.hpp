#pragma once

#include "finsite/presheaf.hpp"

namespace finsite {

struct Sieve {
  std::string apex;
  std::set<std::string> arrows;  // arrow ids with dst = apex, closed under precomposition
  auto operator<=>(const Sieve&) const = default;
};

bool is_sieve(const Cat& c, const Sieve& s);
Sieve sieve_generated(const Cat& c, const std::string& apex,
                      const std::set<std::string>& family);
Sieve maximal_sieve(const Cat& c, const std::string& apex);
Sieve pullback_sieve(const Cat& c, const Sieve& s, const std::string& f);
Sieve intersect_sieves(const Sieve& a, const Sieve& b);

// All sieves on an apex (guarded: throws when more than `max_arrows` arrows
// point at the apex).
std::vector<Sieve> all_sieves(const Cat& c, const std::string& apex,
                              std::size_t max_arrows = 16);

struct Topology {
  Cat base;
  std::map<std::string, std::set<Sieve>> covering;

  const std::set<Sieve>& at(const std::string& obj) const;
  bool covers(const Sieve& s) const;
};

std::vector<std::string> validate_topology(const Topology& j);
Topology trivial_topology(const Cat& c);
// Least topology containing the coverage (families are closed into sieves
// first; the three axioms are then saturated by fixpoint).
Topology saturate(const Cat& c, const std::map<std::string, std::set<Sieve>>& coverage);
bool topology_leq(const Topology& a, const Topology& b);  // a subset of b
Topology intersect_topologies(const Topology& a, const Topology& b);

struct Site {
  Cat cat;
  Topology top;
};

struct MatchingFamily {
  Sieve sieve;
  std::map<std::string, std::string> assignment;  // arrow in sieve -> element at its source
  auto operator<=>(const MatchingFamily&) const = default;
};

std::vector<MatchingFamily> matching_families(const Presheaf& p, const Sieve& s);
std::vector<std::string> amalgamations(const Presheaf& p, const MatchingFamily& m);

bool is_sheaf(const Presheaf& p, const Topology& j);
bool is_separated(const Presheaf& p, const Topology& j);

// A sieve as a subpresheaf of the representable at its apex.
Presheaf sieve_presheaf(const Cat& c, const Sieve& s);
PshMap sieve_inclusion(const Cat& c, const Sieve& s);

struct SheafifyResult {
  Presheaf psh;
  PshMap unit;  // p -> psh
};

// One application of the plus construction (matching families modulo
// agreement on a common covering refinement).
SheafifyResult plus_construction(const Presheaf& p, const Topology& j);
PshMap plus_map(const PshMap& m, const Topology& j);

// The associated sheaf (plus construction applied twice).
SheafifyResult sheafify(const Presheaf& p, const Topology& j);
PshMap sheafify_map(const PshMap& m, const Topology& j);

bool is_subcanonical(const Topology& j);
bool is_dense_mono(const PshMap& m, const Topology& j);

// All topologies on c (BFS over saturations). Throws when c has more arrows
// than the bound.
std::vector<Topology> enumerate_topologies(const Cat& c, std::size_t arrow_bound = 10);

}  // namespace finsite
