#include "finsite/fincat.hpp"

#include <algorithm>

namespace finsite {

namespace {

template <typename T>
void insert_sorted(std::vector<T>& v, const T& x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it != v.end() && *it == x) throw error("duplicate entry");
  v.insert(it, x);
}

struct UnionFind {
  std::map<std::string, std::string> parent;
  void add(const std::string& x) { parent.emplace(x, x); }
  const std::string& find(const std::string& x) {
    std::string& p = parent.at(x);
    if (p != x) p = find(p);
    return parent.at(x);
  }
  void unite(const std::string& a, const std::string& b) {
    std::string ra = find(a), rb = find(b);
    if (ra == rb) return;
    // keep the lexicographically least representative
    if (rb < ra) std::swap(ra, rb);
    parent[rb] = ra;
  }
};

}  // namespace

void Cat::add_object(const std::string& x) { insert_sorted(objects_, x); }

void Cat::add_arrow(const std::string& id, const std::string& src, const std::string& dst) {
  Arrow a{id, src, dst};
  auto it = std::lower_bound(arrows_.begin(), arrows_.end(), id,
                             [](const Arrow& a, const std::string& s) { return a.id < s; });
  if (it != arrows_.end() && it->id == id) throw error("duplicate arrow id: " + id);
  arrows_.insert(it, a);
  arrow_ix_.clear();
  for (std::size_t i = 0; i < arrows_.size(); ++i) arrow_ix_[arrows_[i].id] = i;
}

void Cat::set_identity(const std::string& obj, const std::string& arrow_id) {
  identity_[obj] = arrow_id;
}

void Cat::set_compose(const std::string& g, const std::string& f, const std::string& gf) {
  comp_[{g, f}] = gf;
}

bool Cat::has_object(const std::string& x) const {
  return std::binary_search(objects_.begin(), objects_.end(), x);
}

bool Cat::has_arrow(const std::string& a) const { return arrow_ix_.count(a) > 0; }

const Arrow& Cat::arrow(const std::string& a) const {
  auto it = arrow_ix_.find(a);
  if (it == arrow_ix_.end()) throw error("unknown arrow id: " + a);
  return arrows_[it->second];
}

const std::string& Cat::identity(const std::string& obj) const {
  auto it = identity_.find(obj);
  if (it == identity_.end()) throw error("no identity recorded for object: " + obj);
  return it->second;
}

bool Cat::is_identity(const std::string& a) const {
  const Arrow& ar = arrow(a);
  auto it = identity_.find(ar.src);
  return it != identity_.end() && it->second == a;
}

const std::string& Cat::compose(const std::string& g, const std::string& f) const {
  auto it = comp_.find({g, f});
  if (it != comp_.end()) return it->second;
  // identity composites may be omitted from the table
  if (is_identity(g) && dst(f) == src(g)) return f;
  if (is_identity(f) && dst(f) == src(g)) return g;
  throw error("composite not defined: " + g + " o " + f);
}

std::vector<std::string> Cat::hom(const std::string& x, const std::string& y) const {
  std::vector<std::string> out;
  for (const Arrow& a : arrows_)
    if (a.src == x && a.dst == y) out.push_back(a.id);
  return out;
}

std::vector<std::string> Cat::arrows_into(const std::string& x) const {
  std::vector<std::string> out;
  for (const Arrow& a : arrows_)
    if (a.dst == x) out.push_back(a.id);
  return out;
}

std::vector<std::string> Cat::arrows_from(const std::string& x) const {
  std::vector<std::string> out;
  for (const Arrow& a : arrows_)
    if (a.src == x) out.push_back(a.id);
  return out;
}

std::optional<std::string> Cat::inverse(const std::string& a) const {
  const Arrow& ar = arrow(a);
  for (const std::string& b : hom(ar.dst, ar.src)) {
    if (compose(b, a) == identity(ar.src) && compose(a, b) == identity(ar.dst)) return b;
  }
  return std::nullopt;
}

bool Cat::is_iso(const std::string& a) const { return inverse(a).has_value(); }

std::vector<std::string> Cat::isos(const std::string& x, const std::string& y) const {
  std::vector<std::string> out;
  for (const std::string& a : hom(x, y))
    if (is_iso(a)) out.push_back(a);
  return out;
}

bool Cat::is_preorder() const {
  for (const std::string& x : objects_)
    for (const std::string& y : objects_)
      if (hom(x, y).size() > 1) return false;
  return true;
}

std::vector<std::string> validate_category(const Cat& c) {
  std::vector<std::string> report;
  for (const Arrow& a : c.arrows()) {
    if (!c.has_object(a.src)) report.push_back("arrow " + a.id + " has unknown src " + a.src);
    if (!c.has_object(a.dst)) report.push_back("arrow " + a.id + " has unknown dst " + a.dst);
  }
  for (const std::string& x : c.objects()) {
    std::string id;
    try {
      id = c.identity(x);
    } catch (const error&) {
      report.push_back("missing identity for object " + x);
      continue;
    }
    if (!c.has_arrow(id)) {
      report.push_back("identity of " + x + " is a dangling arrow id " + id);
      continue;
    }
    if (c.src(id) != x || c.dst(id) != x)
      report.push_back("identity of " + x + " has wrong endpoints");
  }
  if (!report.empty()) return report;  // endpoint errors make the rest unreliable

  // totality and typing of the composition table
  for (const Arrow& g : c.arrows())
    for (const Arrow& f : c.arrows()) {
      if (f.dst != g.src) continue;
      std::string gf;
      try {
        gf = c.compose(g.id, f.id);
      } catch (const error&) {
        report.push_back("composite missing for (" + g.id + ", " + f.id + ")");
        continue;
      }
      if (!c.has_arrow(gf)) {
        report.push_back("composite (" + g.id + ", " + f.id + ") is a dangling id " + gf);
        continue;
      }
      if (c.src(gf) != f.src || c.dst(gf) != g.dst)
        report.push_back("composite (" + g.id + ", " + f.id + ") has wrong endpoints");
    }

  // unit laws
  for (const Arrow& f : c.arrows()) {
    try {
      if (c.compose(f.id, c.identity(f.src)) != f.id)
        report.push_back("identity law fails at (" + f.id + ", " + c.identity(f.src) + ")");
      if (c.compose(c.identity(f.dst), f.id) != f.id)
        report.push_back("identity law fails at (" + c.identity(f.dst) + ", " + f.id + ")");
    } catch (const error&) {
      // missing composites already reported
    }
  }

  // associativity on all composable triples
  for (const Arrow& h : c.arrows())
    for (const Arrow& g : c.arrows()) {
      if (g.dst != h.src) continue;
      for (const Arrow& f : c.arrows()) {
        if (f.dst != g.src) continue;
        try {
          if (c.compose(c.compose(h.id, g.id), f.id) != c.compose(h.id, c.compose(g.id, f.id)))
            report.push_back("associativity fails on (" + h.id + ", " + g.id + ", " + f.id + ")");
        } catch (const error&) {
        }
      }
    }
  return report;
}

void require_valid(const Cat& c) {
  auto r = validate_category(c);
  if (!r.empty()) throw error("invalid category: " + r.front());
}

Cat opposite(const Cat& c) {
  Cat o;
  for (const std::string& x : c.objects()) o.add_object(x);
  for (const Arrow& a : c.arrows()) o.add_arrow(a.id, a.dst, a.src);
  for (const std::string& x : c.objects()) o.set_identity(x, c.identity(x));
  for (const Arrow& g : c.arrows())
    for (const Arrow& f : c.arrows())
      if (f.dst == g.src) o.set_compose(f.id, g.id, c.compose(g.id, f.id));
  return o;
}

const std::string& Functor::on_obj(const std::string& x) const {
  auto it = omap.find(x);
  if (it == omap.end()) throw error("functor undefined on object " + x);
  return it->second;
}

const std::string& Functor::on_arr(const std::string& a) const {
  auto it = amap.find(a);
  if (it == amap.end()) throw error("functor undefined on arrow " + a);
  return it->second;
}

std::vector<std::string> validate_functor(const Functor& f) {
  std::vector<std::string> report;
  for (const std::string& x : f.src.objects()) {
    if (!f.omap.count(x)) {
      report.push_back("no image for object " + x);
      continue;
    }
    if (!f.dst.has_object(f.on_obj(x)))
      report.push_back("image of object " + x + " not in codomain");
  }
  for (const Arrow& a : f.src.arrows()) {
    if (!f.amap.count(a.id)) {
      report.push_back("no image for arrow " + a.id);
      continue;
    }
    if (!f.dst.has_arrow(f.on_arr(a.id))) {
      report.push_back("image of arrow " + a.id + " not in codomain");
      continue;
    }
    const Arrow& img = f.dst.arrow(f.on_arr(a.id));
    if (img.src != f.on_obj(a.src) || img.dst != f.on_obj(a.dst))
      report.push_back("arrow " + a.id + " image has wrong endpoints");
  }
  if (!report.empty()) return report;
  for (const std::string& x : f.src.objects())
    if (f.on_arr(f.src.identity(x)) != f.dst.identity(f.on_obj(x)))
      report.push_back("identity of " + x + " not preserved");
  for (const Arrow& g : f.src.arrows())
    for (const Arrow& a : f.src.arrows()) {
      if (a.dst != g.src) continue;
      if (f.on_arr(f.src.compose(g.id, a.id)) != f.dst.compose(f.on_arr(g.id), f.on_arr(a.id)))
        report.push_back("composition not preserved on (" + g.id + ", " + a.id + ")");
    }
  return report;
}

Functor identity_functor(const Cat& c) {
  Functor f{c, c, {}, {}};
  for (const std::string& x : c.objects()) f.omap[x] = x;
  for (const Arrow& a : c.arrows()) f.amap[a.id] = a.id;
  return f;
}

Functor compose_functors(const Functor& g, const Functor& f) {
  if (!(f.dst == g.src)) throw error("functors not composable");
  Functor h{f.src, g.dst, {}, {}};
  for (const auto& [x, y] : f.omap) h.omap[x] = g.on_obj(y);
  for (const auto& [a, b] : f.amap) h.amap[a] = g.on_arr(b);
  return h;
}

const std::string& NatTrans::at(const std::string& x) const {
  auto it = comp.find(x);
  if (it == comp.end()) throw error("natural transformation undefined at " + x);
  return it->second;
}

std::vector<std::string> validate_nat(const NatTrans& n) {
  std::vector<std::string> report;
  if (!(n.src.src == n.dst.src) || !(n.src.dst == n.dst.dst))
    return {"functors are not parallel"};
  const Cat& a = n.src.src;
  const Cat& b = n.src.dst;
  for (const std::string& x : a.objects()) {
    if (!n.comp.count(x)) {
      report.push_back("no component at " + x);
      continue;
    }
    const std::string& cx = n.at(x);
    if (!b.has_arrow(cx) || b.src(cx) != n.src.on_obj(x) || b.dst(cx) != n.dst.on_obj(x))
      report.push_back("component at " + x + " has wrong endpoints");
  }
  if (!report.empty()) return report;
  for (const Arrow& y : a.arrows()) {
    if (b.compose(n.at(y.dst), n.src.on_arr(y.id)) !=
        b.compose(n.dst.on_arr(y.id), n.at(y.src)))
      report.push_back("naturality fails at arrow " + y.id);
  }
  return report;
}

bool nat_is_iso(const NatTrans& n) {
  for (const auto& [x, cx] : n.comp)
    if (!n.src.dst.is_iso(cx)) return false;
  return true;
}

NatTrans identity_nat(const Functor& f) {
  NatTrans n{f, f, {}};
  for (const std::string& x : f.src.objects()) n.comp[x] = f.dst.identity(f.on_obj(x));
  return n;
}

SliceResult slice(const Cat& c, const std::string& x) {
  if (!c.has_object(x)) throw error("slice: unknown object " + x);
  SliceResult r;
  r.proj.src = Cat{};
  for (const std::string& f : c.arrows_into(x)) {
    std::string ob = "[" + f + "]";
    r.cat.add_object(ob);
    r.obj_of_arrow[f] = ob;
  }
  // arrows [w] -> [y] are z with y o z = w
  auto said = [](const std::string& w, const std::string& z, const std::string& y) {
    return "[" + w + ">" + z + ">" + y + "]";
  };
  for (const std::string& w : c.arrows_into(x))
    for (const std::string& y : c.arrows_into(x))
      for (const Arrow& z : c.arrows()) {
        if (z.dst != c.src(y) || z.src != c.src(w)) continue;
        if (c.compose(y, z.id) != w) continue;
        r.cat.add_arrow(said(w, z.id, y), r.obj_of_arrow.at(w), r.obj_of_arrow.at(y));
        r.arr_parts[said(w, z.id, y)] = {w, z.id, y};
      }
  for (const std::string& f : c.arrows_into(x))
    r.cat.set_identity(r.obj_of_arrow.at(f), said(f, c.identity(c.src(f)), f));
  // composition: [v >z2> y] o [w >z1> v] = [w > z2 z1 > y]
  for (const Arrow& a : r.cat.arrows())
    for (const Arrow& b : r.cat.arrows()) {
      if (b.dst != a.src) continue;
      const auto& pa = r.arr_parts.at(a.id);
      const auto& pb = r.arr_parts.at(b.id);
      std::string z = c.compose(pa[1], pb[1]);
      r.cat.set_compose(a.id, b.id, said(pb[0], z, pa[2]));
    }
  r.proj = Functor{r.cat, c, {}, {}};
  for (const std::string& f : c.arrows_into(x)) r.proj.omap[r.obj_of_arrow.at(f)] = c.src(f);
  for (const Arrow& a : r.cat.arrows()) r.proj.amap[a.id] = r.arr_parts.at(a.id)[1];
  return r;
}

CommaResult comma(const Functor& f, const Functor& g) {
  if (!(f.dst == g.dst)) throw error("comma: functors do not share a codomain");
  CommaResult r;
  struct Obj {
    std::string x, y, h;
  };
  std::vector<Obj> objs;
  for (const std::string& x : f.src.objects())
    for (const std::string& y : g.src.objects())
      for (const std::string& h : f.dst.hom(f.on_obj(x), g.on_obj(y))) {
        std::string tag = "(" + x + "|" + y + "|" + h + ")";
        r.cat.add_object(tag);
        r.obj_of[tag] = tag;
        objs.push_back({x, y, h});
      }
  auto tag_of = [](const Obj& o) { return "(" + o.x + "|" + o.y + "|" + o.h + ")"; };
  // arrow (u,v): (x,y,h) -> (x',y',h') with h' F(u) = G(v) h
  std::map<std::string, std::pair<std::string, std::string>> parts;
  for (const Obj& a : objs)
    for (const Obj& b : objs)
      for (const std::string& u : f.src.hom(a.x, b.x))
        for (const std::string& v : g.src.hom(a.y, b.y)) {
          if (f.dst.compose(b.h, f.on_arr(u)) != f.dst.compose(g.on_arr(v), a.h)) continue;
          std::string id = "(" + u + "|" + v + ")@" + tag_of(a) + ">" + tag_of(b);
          r.cat.add_arrow(id, tag_of(a), tag_of(b));
          parts[id] = {u, v};
        }
  for (const Obj& a : objs)
    r.cat.set_identity(tag_of(a), "(" + f.src.identity(a.x) + "|" + g.src.identity(a.y) +
                                      ")@" + tag_of(a) + ">" + tag_of(a));
  for (const Arrow& p : r.cat.arrows())
    for (const Arrow& q : r.cat.arrows()) {
      if (q.dst != p.src) continue;
      auto [u2, v2] = parts.at(p.id);
      auto [u1, v1] = parts.at(q.id);
      r.cat.set_compose(p.id, q.id,
                        "(" + f.src.compose(u2, u1) + "|" + g.src.compose(v2, v1) + ")@" +
                            q.src + ">" + p.dst);
    }
  r.proj_left = Functor{r.cat, f.src, {}, {}};
  r.proj_right = Functor{r.cat, g.src, {}, {}};
  for (const Obj& a : objs) {
    r.proj_left.omap[tag_of(a)] = a.x;
    r.proj_right.omap[tag_of(a)] = a.y;
  }
  for (const Arrow& p : r.cat.arrows()) {
    r.proj_left.amap[p.id] = parts.at(p.id).first;
    r.proj_right.amap[p.id] = parts.at(p.id).second;
  }
  r.phi = NatTrans{compose_functors(f, r.proj_left), compose_functors(g, r.proj_right), {}};
  for (const Obj& a : objs) r.phi.comp[tag_of(a)] = a.h;
  return r;
}

std::vector<std::vector<std::string>> connected_components(const Cat& c) {
  UnionFind uf;
  for (const std::string& x : c.objects()) uf.add(x);
  for (const Arrow& a : c.arrows()) uf.unite(a.src, a.dst);
  std::map<std::string, std::vector<std::string>> classes;
  for (const std::string& x : c.objects()) classes[uf.find(x)].push_back(x);
  std::vector<std::vector<std::string>> out;
  for (auto& [root, members] : classes) out.push_back(members);
  return out;
}

EquivalenceReport is_equivalence(const Functor& f) {
  EquivalenceReport rep;
  // fully faithful
  for (const std::string& x : f.src.objects())
    for (const std::string& y : f.src.objects()) {
      auto dom = f.src.hom(x, y);
      auto cod = f.dst.hom(f.on_obj(x), f.on_obj(y));
      std::set<std::string> image;
      for (const std::string& a : dom) image.insert(f.on_arr(a));
      if (image.size() != dom.size()) {
        rep.reason = "not faithful on hom(" + x + ", " + y + ")";
        return rep;
      }
      if (image.size() != cod.size()) {
        rep.reason = "not full on hom(" + x + ", " + y + ")";
        return rep;
      }
    }
  // essentially surjective
  for (const std::string& d : f.dst.objects()) {
    bool hit = false;
    for (const std::string& x : f.src.objects()) {
      if (!f.dst.isos(f.on_obj(x), d).empty()) {
        rep.quasi_inverse.emplace(d, x);
        hit = true;
        break;
      }
    }
    if (!hit) {
      rep.reason = "not essentially surjective at " + d;
      rep.quasi_inverse.clear();
      return rep;
    }
  }
  rep.ok = true;
  return rep;
}

bool is_isomorphism_functor(const Functor& f) {
  if (!validate_functor(f).empty()) return false;
  std::set<std::string> oimg, aimg;
  for (const auto& [x, y] : f.omap) oimg.insert(y);
  for (const auto& [a, b] : f.amap) aimg.insert(b);
  return oimg.size() == f.src.objects().size() && oimg.size() == f.dst.objects().size() &&
         aimg.size() == f.src.arrows().size() && aimg.size() == f.dst.arrows().size();
}

namespace {

bool nat_square_ok(const Functor& f, const Functor& g,
                   const std::map<std::string, std::string>& comp, const Arrow& y) {
  const Cat& b = f.dst;
  return b.compose(comp.at(y.dst), f.on_arr(y.id)) == b.compose(g.on_arr(y.id), comp.at(y.src));
}

bool extend_nat_iso(const Functor& f, const Functor& g, const std::vector<std::string>& objs,
                    std::size_t k, std::map<std::string, std::string>& comp) {
  if (k == objs.size()) return true;
  const std::string& x = objs[k];
  for (const std::string& cand : f.dst.isos(f.on_obj(x), g.on_obj(x))) {
    comp[x] = cand;
    bool ok = true;
    for (const Arrow& y : f.src.arrows()) {
      if (!comp.count(y.src) || !comp.count(y.dst)) continue;
      if (!nat_square_ok(f, g, comp, y)) {
        ok = false;
        break;
      }
    }
    if (ok && extend_nat_iso(f, g, objs, k + 1, comp)) return true;
    comp.erase(x);
  }
  return false;
}

}  // namespace

std::optional<NatTrans> find_nat_iso(const Functor& f, const Functor& g) {
  if (!(f.src == g.src) || !(f.dst == g.dst)) return std::nullopt;
  std::map<std::string, std::string> comp;
  if (!extend_nat_iso(f, g, f.src.objects(), 0, comp)) return std::nullopt;
  return NatTrans{f, g, comp};
}

namespace {

void extend_functor(const Cat& a, const Cat& b, const std::vector<std::string>& objs,
                    std::size_t k, Functor& f, std::vector<Functor>& out) {
  if (k == objs.size()) {
    // assign arrows by backtracking
    std::vector<std::string> arrs;
    for (const Arrow& ar : a.arrows())
      if (!a.is_identity(ar.id)) arrs.push_back(ar.id);
    for (const std::string& x : objs) f.amap[a.identity(x)] = b.identity(f.omap.at(x));
    std::vector<std::size_t> choice(arrs.size(), 0);
    std::vector<std::vector<std::string>> cands;
    for (const std::string& ar : arrs)
      cands.push_back(b.hom(f.omap.at(a.src(ar)), f.omap.at(a.dst(ar))));
    std::size_t i = 0;
    while (true) {
      if (i == arrs.size()) {
        if (validate_functor(f).empty()) out.push_back(f);
        if (i == 0) return;
        --i;
        f.amap.erase(arrs[i]);
        ++choice[i];
        continue;
      }
      if (choice[i] >= cands[i].size()) {
        choice[i] = 0;
        if (i == 0) return;
        --i;
        f.amap.erase(arrs[i]);
        ++choice[i];
        continue;
      }
      f.amap[arrs[i]] = cands[i][choice[i]];
      ++i;
    }
  } else {
    for (const std::string& y : b.objects()) {
      f.omap[objs[k]] = y;
      extend_functor(a, b, objs, k + 1, f, out);
    }
    f.omap.erase(objs[k]);
  }
}

}  // namespace

std::vector<Functor> all_functors(const Cat& a, const Cat& b) {
  std::vector<Functor> out;
  if (a.objects().empty()) {
    out.push_back(Functor{a, b, {}, {}});
    return out;
  }
  if (b.objects().empty()) return out;
  Functor f{a, b, {}, {}};
  extend_functor(a, b, a.objects(), 0, f, out);
  return out;
}

Cat coproduct(const Cat& a, const Cat& b, const std::string& ta, const std::string& tb) {
  Cat c;
  auto copy_in = [&c](const Cat& s, const std::string& t) {
    for (const std::string& x : s.objects()) c.add_object(t + x);
    for (const Arrow& ar : s.arrows()) c.add_arrow(t + ar.id, t + ar.src, t + ar.dst);
    for (const std::string& x : s.objects()) c.set_identity(t + x, t + s.identity(x));
    for (const Arrow& g : s.arrows())
      for (const Arrow& f : s.arrows())
        if (f.dst == g.src) c.set_compose(t + g.id, t + f.id, t + s.compose(g.id, f.id));
  };
  copy_in(a, ta);
  copy_in(b, tb);
  return c;
}

std::vector<Cone> all_cones(const Functor& diagram) {
  const Cat& shape = diagram.src;
  const Cat& c = diagram.dst;
  std::vector<Cone> out;
  for (const std::string& apex : c.objects()) {
    // choose legs by backtracking
    std::vector<std::string> sobjs = shape.objects();
    std::vector<std::vector<std::string>> cands;
    for (const std::string& i : sobjs) cands.push_back(c.hom(apex, diagram.on_obj(i)));
    std::vector<std::size_t> choice(sobjs.size(), 0);
    std::size_t k = 0;
    std::map<std::string, std::string> legs;
    if (sobjs.empty()) {
      out.push_back(Cone{apex, {}});
      continue;
    }
    while (true) {
      if (k == sobjs.size()) {
        bool ok = true;
        for (const Arrow& s : shape.arrows())
          if (c.compose(diagram.on_arr(s.id), legs.at(s.src)) != legs.at(s.dst)) {
            ok = false;
            break;
          }
        if (ok) out.push_back(Cone{apex, legs});
        --k;
        legs.erase(sobjs[k]);
        ++choice[k];
        continue;
      }
      if (choice[k] >= cands[k].size()) {
        choice[k] = 0;
        if (k == 0) break;
        --k;
        legs.erase(sobjs[k]);
        ++choice[k];
        continue;
      }
      legs[sobjs[k]] = cands[k][choice[k]];
      ++k;
    }
  }
  return out;
}

bool is_limit_cone(const Functor& diagram, const Cone& cone) {
  const Cat& c = diagram.dst;
  for (const Cone& other : all_cones(diagram)) {
    int mediating = 0;
    for (const std::string& m : c.hom(other.apex, cone.apex)) {
      bool ok = true;
      for (const auto& [i, leg] : cone.legs)
        if (c.compose(leg, m) != other.legs.at(i)) {
          ok = false;
          break;
        }
      if (ok) ++mediating;
    }
    if (mediating != 1) return false;
  }
  return true;
}

std::optional<Cone> limit_cone(const Functor& diagram) {
  for (const Cone& cone : all_cones(diagram))
    if (is_limit_cone(diagram, cone)) return cone;
  return std::nullopt;
}

}  // namespace finsite
