#pragma once

#include "finsite/fincat.hpp"

namespace finsite {

struct Indexed;  // indexed.hpp

// Finite-set-valued presheaf: contravariant on its base, with one restriction
// function per arrow (action(y) : value(dst y) -> value(src y)).
struct Presheaf {
  Cat base;
  std::map<std::string, std::vector<std::string>> value;              // obj -> sorted elems
  std::map<std::string, std::map<std::string, std::string>> action;   // arrow -> map

  const std::vector<std::string>& at(const std::string& obj) const;
  const std::string& act(const std::string& arrow, const std::string& elem) const;
};

std::vector<std::string> validate_presheaf(const Presheaf& p);
void require_valid(const Presheaf& p);

struct PshMap {
  Presheaf src, dst;
  std::map<std::string, std::map<std::string, std::string>> comp;  // obj -> function

  const std::string& at(const std::string& obj, const std::string& elem) const;
};

std::vector<std::string> validate_psh_map(const PshMap& m);
bool psh_map_is_iso(const PshMap& m);
bool psh_map_is_mono(const PshMap& m);
PshMap identity_psh_map(const Presheaf& p);
PshMap compose_psh_maps(const PshMap& g, const PshMap& f);

Presheaf terminal_presheaf(const Cat& c);
Presheaf empty_presheaf(const Cat& c);

Presheaf representable(const Cat& c, const std::string& x);

struct ElementsResult {
  Cat cat;  // objects "(X|s)"
  Functor proj;
  std::map<std::pair<std::string, std::string>, std::string> obj_of;  // (X, s) -> object id
};

ElementsResult elements(const Presheaf& p);

// Precomposition with f (f : A -> B, p over B gives a presheaf over A).
Presheaf restrict_presheaf(const Presheaf& p, const Functor& f);

struct LanResult {
  Presheaf psh;  // over the codomain of f
  PshMap unit;   // p -> restrict(lan, f)
  std::map<std::string, std::string> class_of;  // any "<y|x|s>" tag -> representative
  std::map<std::string, std::array<std::string, 3>> rep_parts;  // representative -> (y, x, s)
};

// Left Kan extension along f, computed as a pointwise comma-category colimit
// with classes canonicalized to their least representatives.
LanResult lan(const Functor& f, const Presheaf& p);
std::string lan_class_tag(const std::string& y, const std::string& x, const std::string& s);

// Counit lan(f, restrict(q, f)) -> q of the lan -| restrict adjunction.
PshMap lan_counit(const Functor& f, const Presheaf& q);

// Functorial actions of restriction and left Kan extension on morphisms.
PshMap restrict_map(const PshMap& m, const Functor& f);
PshMap lan_map(const Functor& f, const PshMap& m);

// Presheaf of connected components of an indexed category.
Presheaf pi0_indexed(const Indexed& d);

// Colimit of the underlying diagram of sets: classes of (obj, elem) pairs under
// the action, named by their least representatives.
std::map<std::pair<std::string, std::string>, std::string> presheaf_colimit_classes(
    const Presheaf& p);
std::size_t presheaf_colimit_size(const Presheaf& p);

// Isomorphism search (componentwise bijections commuting with the actions).
std::optional<PshMap> find_psh_iso(const Presheaf& p, const Presheaf& q);

}  // namespace finsite
