#pragma once

#include "finsite/presheaf.hpp"

namespace finsite {

// Pseudofunctor base^op -> FinCat with explicit coherence isomorphisms.
// transition(y) : fibre(dst y) -> fibre(src y); unit_iso[X] : 1 => transition(id_X);
// comp_iso[(y,z)] : transition(z) . transition(y) => transition(y o z) for
// composable y : Y -> X, z : Z -> Y.
struct Indexed {
  Cat base;
  std::map<std::string, Cat> fibre;
  std::map<std::string, Functor> transition;
  std::map<std::string, NatTrans> unit_iso;
  std::map<std::pair<std::string, std::string>, NatTrans> comp_iso;

  const Cat& fib(const std::string& x) const;
  const Functor& tr(const std::string& y) const;
  // component arrows (in the appropriate fibres)
  const std::string& unit_at(const std::string& x, const std::string& u) const;
  const std::string& comp_at(const std::string& y, const std::string& z,
                             const std::string& u) const;
};

std::vector<std::string> validate_indexed(const Indexed& d);
void require_valid(const Indexed& d);

// Strict pseudofunctor: coherence isos filled in as identities (requires the
// transitions to be functorial on the nose).
Indexed strict_indexed(const Cat& base, std::map<std::string, Cat> fibres,
                       std::map<std::string, Functor> transitions);

Indexed discrete_indexed(const Presheaf& p);
bool is_discrete_indexed(const Indexed& d);
Indexed dual(const Indexed& d);

bool is_cartesian(const Functor& p, const std::string& f);
bool is_grothendieck_fibration(const Functor& p);
bool is_street_fibration(const Functor& p);

// Unique k with p(k) = g and f o k = h, where f is p-cartesian.
std::string factor_through_cartesian(const Functor& p, const std::string& f,
                                     const std::string& h, const std::string& g);

// A cloven fibration: the projection together with a cleavage table
//   (x : arrow of base with dst = p(A), A) -> (cartesian f into A, iso theta)
// such that p(f) o theta = x.
struct Fibration {
  Functor proj;
  std::map<std::pair<std::string, std::string>, std::pair<std::string, std::string>> cleavage;

  const Cat& total() const { return proj.src; }
  const Cat& base() const { return proj.dst; }
  // (lift arrow, witnessing iso) for x with dst(x) = p(a)
  const std::pair<std::string, std::string>& lift(const std::string& x,
                                                  const std::string& a) const;
  std::string lift_dom(const std::string& x, const std::string& a) const;
};

// Builds the deterministic cleavage (lexicographically least cartesian lift,
// then least witnessing iso). Throws if p is not a Street fibration.
Fibration make_fibration(const Functor& p);
std::vector<std::string> validate_fibration(const Fibration& p);

// Comparison arrows for composites of cleavage lifts: for x : X -> p(U) and
// z : Z -> X, an arrow dom(lift(xz, U)) -> dom(lift(x, U)) over theta_x z theta_xz^{-1},
// and its factorization through the iterated lift.
std::string lambda_arrow(const Fibration& p, const std::string& x, const std::string& z,
                         const std::string& u);
std::string chi_arrow(const Fibration& p, const std::string& x, const std::string& z,
                      const std::string& u);

struct GrothResult {
  Fibration fib;
  std::map<std::pair<std::string, std::string>, std::string> obj_of;     // (X,U) -> tag
  std::map<std::string, std::pair<std::string, std::string>> obj_parts;  // tag -> (X,U)
  std::map<std::string, std::pair<std::string, std::string>> arr_parts;  // tag -> (y,a)
  std::string arrow_of(const std::string& y, const std::string& a, const std::string& x,
                       const std::string& u) const;
};

GrothResult grothendieck(const Indexed& d);

struct EssentialFibre {
  Cat cat;  // objects "(A|alpha)"
  std::map<std::string, std::pair<std::string, std::string>> parts;  // obj -> (A, alpha)
  std::map<std::pair<std::string, std::string>, std::string> obj_of;
  std::map<std::string, std::string> arr_of;  // fibre arrow id -> total arrow id
};

EssentialFibre essential_fibre(const Functor& p, const std::string& x);

Indexed indexed_of_fibration(const Fibration& p);
// Strict fibres; requires a Grothendieck cleavage (all witnessing isos identities).
Indexed indexed_of_fibration_strict(const Fibration& p);

// Splitting predicate for a cleavage (lifts of isos are identities; lifts
// compose on the nose).
bool is_split_cleavage(const Fibration& p);

struct FibMorphism {
  Functor functor;  // between the totals
  NatTrans phi;     // q . functor => p, invertible
};

std::vector<std::string> validate_fib_morphism(const Fibration& p, const Fibration& q,
                                               const FibMorphism& m);

// Fibred Yoneda: Psi(A, alpha) is a morphism of fibrations slice(base, x) -> p;
// Phi sends such a morphism to the essential-fibre object (F([1_x]), phi_{[1_x]}^{-1}).
FibMorphism fibred_yoneda_psi(const Fibration& p, const std::string& x, const std::string& a,
                              const std::string& alpha);
std::pair<std::string, std::string> fibred_yoneda_phi(const Fibration& p, const std::string& x,
                                                      const FibMorphism& m);

// Invertible 2-cell search between morphisms of fibrations into q: a natural
// isomorphism kappa with m1.phi = m2.phi . (q o kappa).
std::optional<NatTrans> find_fib_2cell_iso(const Fibration& q, const FibMorphism& m1,
                                           const FibMorphism& m2);

// The canonical comparison p.total -> grothendieck(indexed_of_fibration(p)).total,
// A |-> (p(A), (A, 1_{p(A)})), with proj . T = p on the nose.
Functor groth_roundtrip_comparison(const Fibration& p, const GrothResult& g);

// Composite fibration: e lives over grothendieck(d).total; the result is the
// indexed category over d's base whose fibration is the composite projection.
Indexed composite_fibration(const Indexed& d, const Indexed& e);
// The composite projection itself, with its composite Grothendieck cleavage.
Fibration composite_total_fibration(const Indexed& d, const Indexed& e);

// Two-stage limit construction: base limit of the projected diagram, then the
// fibre limit of the transported diagram. Returns the verified limit cone in
// the total category, or throws with a witness when a precondition fails.
Cone limit_in_total(const Indexed& d, const GrothResult& g, const Functor& diagram);

}  // namespace finsite
