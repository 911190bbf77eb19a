#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace finsite {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Arrow {
  std::string id, src, dst;
  auto operator<=>(const Arrow&) const = default;
};

// Finite category with explicit object/arrow sets and a total composition
// table. Object and arrow identity is string identity; every enumeration is
// in lexicographic identifier order.
class Cat {
 public:
  Cat() = default;

  void add_object(const std::string& x);
  void add_arrow(const std::string& id, const std::string& src, const std::string& dst);
  void set_identity(const std::string& obj, const std::string& arrow_id);
  void set_compose(const std::string& g, const std::string& f, const std::string& gf);

  const std::vector<std::string>& objects() const { return objects_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }

  bool has_object(const std::string& x) const;
  bool has_arrow(const std::string& a) const;
  const Arrow& arrow(const std::string& a) const;
  const std::string& src(const std::string& a) const { return arrow(a).src; }
  const std::string& dst(const std::string& a) const { return arrow(a).dst; }
  const std::string& identity(const std::string& obj) const;
  bool is_identity(const std::string& a) const;

  // g after f; requires dst(f) = src(g)
  const std::string& compose(const std::string& g, const std::string& f) const;

  std::vector<std::string> hom(const std::string& x, const std::string& y) const;
  std::vector<std::string> arrows_into(const std::string& x) const;
  std::vector<std::string> arrows_from(const std::string& x) const;

  bool is_iso(const std::string& a) const;
  std::optional<std::string> inverse(const std::string& a) const;
  std::vector<std::string> isos(const std::string& x, const std::string& y) const;

  bool is_preorder() const;  // at most one arrow between any ordered pair

  bool operator==(const Cat&) const = default;

 private:
  std::vector<std::string> objects_;             // sorted
  std::vector<Arrow> arrows_;                    // sorted by id
  std::map<std::string, std::size_t> arrow_ix_;
  std::map<std::string, std::string> identity_;
  std::map<std::pair<std::string, std::string>, std::string> comp_;
};

// Lists every violated axiom; empty iff c is a category.
std::vector<std::string> validate_category(const Cat& c);
void require_valid(const Cat& c);

Cat opposite(const Cat& c);

struct Functor {
  Cat src, dst;
  std::map<std::string, std::string> omap;  // object -> object
  std::map<std::string, std::string> amap;  // arrow -> arrow

  const std::string& on_obj(const std::string& x) const;
  const std::string& on_arr(const std::string& a) const;
  bool operator==(const Functor&) const = default;
};

std::vector<std::string> validate_functor(const Functor& f);
Functor identity_functor(const Cat& c);
// g after f
Functor compose_functors(const Functor& g, const Functor& f);

struct NatTrans {
  Functor src, dst;                          // parallel functors
  std::map<std::string, std::string> comp;   // object of src.src -> arrow of src.dst

  const std::string& at(const std::string& x) const;
  bool operator==(const NatTrans&) const = default;
};

std::vector<std::string> validate_nat(const NatTrans& n);
bool nat_is_iso(const NatTrans& n);
NatTrans identity_nat(const Functor& f);

struct SliceResult {
  Cat cat;       // objects are "[f]" for arrows f into the apex
  Functor proj;  // the projection to the base
  std::map<std::string, std::string> obj_of_arrow;  // arrow id -> slice object id
  // slice arrow id -> (w, z, y) for z : [w] -> [y] with y o z = w
  std::map<std::string, std::array<std::string, 3>> arr_parts;
};

SliceResult slice(const Cat& c, const std::string& x);

struct CommaResult {
  Cat cat;  // objects "(x|y|f)"
  Functor proj_left, proj_right;
  NatTrans phi;  // F proj_left => G proj_right, component at (x|y|f) is f
  std::map<std::string, std::string> obj_of;  // "(x|y|f)" for lookup by triple tag
};

CommaResult comma(const Functor& f, const Functor& g);

std::vector<std::vector<std::string>> connected_components(const Cat& c);

struct EquivalenceReport {
  bool ok = false;
  std::map<std::string, std::string> quasi_inverse;  // object assignment when ok
  std::string reason;                                // witness when not ok
};

EquivalenceReport is_equivalence(const Functor& f);
bool is_isomorphism_functor(const Functor& f);

// Natural isomorphism search between parallel functors (deterministic,
// lexicographically least found first).
std::optional<NatTrans> find_nat_iso(const Functor& f, const Functor& g);

// All functors a -> b, in deterministic order. Intended for tiny categories.
std::vector<Functor> all_functors(const Cat& a, const Cat& b);

// Disjoint union, tagging ids with the given prefixes.
Cat coproduct(const Cat& a, const Cat& b, const std::string& ta, const std::string& tb);

// Diagram in a category: a functor shape -> c. Cones and limits computed by
// exhaustive search.
struct Cone {
  std::string apex;
  std::map<std::string, std::string> legs;  // shape object -> arrow apex -> d(obj)
};

std::vector<Cone> all_cones(const Functor& diagram);
std::optional<Cone> limit_cone(const Functor& diagram);
bool is_limit_cone(const Functor& diagram, const Cone& cone);

}  // namespace finsite
