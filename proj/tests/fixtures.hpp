#pragma once

#include "finsite/fincat.hpp"
#include "finsite/indexed.hpp"

namespace finsite::fix {

// terminal category: one object "*"
Cat one_cat();
// the arrow category 2: objects "0", "1", one arrow "t"
Cat two_cat();
// chain poset 0 < 1 < ... < n-1, arrows "c<i><j>"
Cat chain(int n);
// two parallel arrows "f","g" from "0" to "1"
Cat parallel_pair();
// free-living isomorphism: objects "x","y", arrows "u","v" inverse to each other
Cat walking_iso();
// discrete category on n objects "d0".."d<n-1>"
Cat discrete(int n);
// commutative square poset: bottom "00", middles "01","10", top "11"
Cat square_poset();

// search helpers (exponential; tiny categories only)
bool exists_iso_functor(const Cat& a, const Cat& b);
bool exists_equivalence(const Cat& a, const Cat& b);

// constant terminal weight over an arbitrary base
Indexed constant_one_indexed(const Cat& base);
// over Two: fibre(1) = (a0 -t'-> a1), fibre(0) = One, transition(t) constant
Indexed fibre_two_indexed();
// over Two: fibre(0) = walking iso with the swap functor as transition(id_0);
// coherence isos are genuinely non-identical
Indexed nonstrict_indexed();

}  // namespace finsite::fix
