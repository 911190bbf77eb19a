#pragma once

#include "finsite/indexed.hpp"

namespace finsite {

struct FractionsReport {
  bool ok = false;
  std::string counterexample;
};

// Identities, closure under composition, the right Ore condition, and right
// cancellability.
FractionsReport check_right_fractions(const Cat& c, const std::set<std::string>& w);

struct Localization {
  Cat cat;    // objects of c; hom-classes of right fractions (v in W, f)
  Functor j;  // canonical functor c -> cat
  std::map<std::string, std::pair<std::string, std::string>> rep_parts;  // arrow -> (v, f)
  std::map<std::pair<std::string, std::string>, std::string> class_of;   // (v, f) -> arrow
};

// Refuses (throws) unless check_right_fractions passes.
Localization localize(const Cat& c, const std::set<std::string>& w);

// Factor h through the localization; requires h to invert every arrow of the
// localized class (checked on representatives).
Functor factor_through_localization(const Localization& loc, const Functor& h);

// Arrows of the source category sent to isomorphisms by j (the saturation).
std::set<std::string> inverted_arrows(const Localization& loc);

struct LocalizedFibration {
  Fibration fib;
  FibMorphism jmor;  // from the original fibration
  Localization loc;
};

LocalizedFibration localize_fibration(const Fibration& p, const std::set<std::string>& w);

struct LaxColimitResult {
  GrothResult groth;
  std::map<std::string, Functor> legs;         // X -> i_X : fib(X) -> total
  std::map<std::string, NatTrans> transforms;  // y -> i_y : i_Y . D(y) => i_X
};

LaxColimitResult lax_colimit(const Indexed& d);

struct OplaxColimitResult {
  Cat cat;  // opposite of grothendieck(dual(d)).total
  std::map<std::string, Functor> legs;         // j_X
  std::map<std::string, NatTrans> transforms;  // y -> j_y : j_X => j_Y . D(y)
};

OplaxColimitResult oplax_colimit(const Indexed& d);

// Localization of the total category at all cartesian arrows; refuses when
// the cartesian class has no right calculus of fractions.
Localization pseudo_colimit(const Indexed& d, const GrothResult& g);

// Covariant pseudofunctors c -> FinCat are represented as indexed categories
// over opposite(c); transition(y) is then the covariant action R(y) and the
// composition iso for c-arrows y, z is keyed (z, y).
Indexed slice_weight(const Cat& c);

struct WeightedResult {
  Cat triple;  // objects (X, U, B); arrows (y, a, b)
  std::map<std::string, std::array<std::string, 3>> obj_parts;
  std::map<std::string, std::array<std::string, 3>> arr_parts;  // (y, a, b)
  Localization loc;  // at { (y,a,b) : a and b invertible }
};

WeightedResult weighted_ps_colimit(const Indexed& d, const Indexed& r);

// The comparison of Corollary 2.9.8-style weights: triple category over the
// slice weight -> grothendieck total; inverts the localized class.
Functor slice_weight_comparison(const Indexed& d, const GrothResult& g, const WeightedResult& w);

// Fibrewise localization at all fibre arrows (refuses when some fibre fails
// the fractions check).
Indexed groupoidify_fibrewise(const Indexed& d);

// Conified pseudocolimit of R . p_D: the triple category over the fibrewise
// groupoidification, localized at { (y,a,b) : b invertible }.
WeightedResult groupoidal_conification(const Indexed& d, const Indexed& r);

}  // namespace finsite
