#include "finsite/fractions.hpp"

#include <algorithm>

namespace finsite {

namespace {

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
    if (rb < ra) std::swap(ra, rb);
    parent[rb] = ra;
  }
};

std::string span_tag(const std::string& v, const std::string& f) {
  return "[" + v + ";" + f + "]";
}

}  // namespace

FractionsReport check_right_fractions(const Cat& c, const std::set<std::string>& w) {
  FractionsReport r;
  for (const std::string& a : w)
    if (!c.has_arrow(a)) {
      r.counterexample = "unknown arrow " + a;
      return r;
    }
  for (const std::string& x : c.objects())
    if (!w.count(c.identity(x))) {
      r.counterexample = "identity of " + x + " is missing";
      return r;
    }
  for (const std::string& u : w)
    for (const std::string& v : w) {
      if (c.dst(v) != c.src(u)) continue;
      if (!w.count(c.compose(u, v))) {
        r.counterexample = "not closed under composition: (" + u + ", " + v + ")";
        return r;
      }
    }
  // right Ore: every cospan (f, w) completes to a square with a W-leg
  for (const Arrow& f : c.arrows())
    for (const std::string& wv : w) {
      if (c.dst(wv) != f.dst) continue;
      bool found = false;
      for (const std::string& v : w) {
        if (c.dst(v) != f.src) continue;
        for (const std::string& g : c.hom(c.src(v), c.src(wv)))
          if (c.compose(f.id, v) == c.compose(wv, g)) {
            found = true;
            break;
          }
        if (found) break;
      }
      if (!found) {
        r.counterexample = "Ore fails on cospan (" + f.id + ", " + wv + ")";
        return r;
      }
    }
  // right cancellability: w f = w g implies f v = g v for some v in W
  for (const std::string& wv : w)
    for (const Arrow& f : c.arrows()) {
      if (f.dst != c.src(wv)) continue;
      for (const std::string& g : c.hom(f.src, f.dst)) {
        if (g == f.id) continue;
        if (c.compose(wv, f.id) != c.compose(wv, g)) continue;
        bool found = false;
        for (const std::string& v : w) {
          if (c.dst(v) != f.src) continue;
          if (c.compose(f.id, v) == c.compose(g, v)) {
            found = true;
            break;
          }
        }
        if (!found) {
          r.counterexample = "cancellation fails for (" + wv + "; " + f.id + ", " + g + ")";
          return r;
        }
      }
    }
  r.ok = true;
  return r;
}

Localization localize(const Cat& c, const std::set<std::string>& w) {
  FractionsReport rep = check_right_fractions(c, w);
  if (!rep.ok) throw error("localize: no right calculus of fractions: " + rep.counterexample);
  Localization out;
  // spans (v : P -> X in W, f : P -> Y) represent arrows X -> Y
  struct Span {
    std::string v, f;
  };
  std::vector<Span> spans;
  UnionFind uf;
  for (const std::string& v : w)
    for (const Arrow& f : c.arrows()) {
      if (f.src != c.src(v)) continue;
      spans.push_back({v, f.id});
      uf.add(span_tag(v, f.id));
    }
  // common refinement relation: (v,f) ~ (v u, f u) for any u composable
  for (const Span& s : spans)
    for (const Arrow& u : c.arrows()) {
      if (u.dst != c.src(s.v)) continue;
      std::string vu = c.compose(s.v, u.id);
      if (!w.count(vu)) continue;
      uf.unite(span_tag(s.v, s.f), span_tag(vu, c.compose(s.f, u.id)));
    }
  out.cat = Cat{};
  for (const std::string& x : c.objects()) out.cat.add_object(x);
  std::set<std::string> reps;
  for (const Span& s : spans) reps.insert(uf.find(span_tag(s.v, s.f)));
  std::map<std::string, Span> rep_span;
  for (const Span& s : spans) {
    std::string t = span_tag(s.v, s.f);
    if (reps.count(t)) rep_span[t] = s;
  }
  for (const std::string& t : reps) {
    const Span& s = rep_span.at(t);
    out.cat.add_arrow(t, c.dst(s.v), c.dst(s.f));
    out.rep_parts[t] = {s.v, s.f};
  }
  for (const Span& s : spans) out.class_of[{s.v, s.f}] = uf.find(span_tag(s.v, s.f));
  for (const std::string& x : c.objects())
    out.cat.set_identity(x, out.class_of.at({c.identity(x), c.identity(x)}));
  // composition via the Ore completion of (f, w)
  auto ore = [&](const std::string& f, const std::string& wv) {
    for (const std::string& t : w) {
      if (c.dst(t) != c.src(f)) continue;
      for (const std::string& s : c.hom(c.src(t), c.src(wv)))
        if (c.compose(f, t) == c.compose(wv, s))
          return std::pair<std::string, std::string>{t, s};
    }
    throw error("localize: Ore completion vanished");
  };
  for (const std::string& t2 : reps)
    for (const std::string& t1 : reps) {
      const Span& b = rep_span.at(t2);  // (w, g) : Y -> Z
      const Span& a = rep_span.at(t1);  // (v, f) : X -> Y
      if (c.dst(a.f) != c.dst(b.v)) continue;
      auto [t, s] = ore(a.f, b.v);
      out.cat.set_compose(t2, t1,
                          out.class_of.at({c.compose(a.v, t), c.compose(b.f, s)}));
    }
  out.j = Functor{c, out.cat, {}, {}};
  for (const std::string& x : c.objects()) out.j.omap[x] = x;
  for (const Arrow& f : c.arrows())
    out.j.amap[f.id] = out.class_of.at({c.identity(f.src), f.id});
  return out;
}

Functor factor_through_localization(const Localization& loc, const Functor& h) {
  Functor out{loc.cat, h.dst, {}, {}};
  for (const std::string& x : loc.cat.objects()) out.omap[x] = h.on_obj(x);
  for (const auto& [arrow, parts] : loc.rep_parts) {
    const auto& [v, f] = parts;
    auto inv = h.dst.inverse(h.on_arr(v));
    if (!inv) throw error("factor_through_localization: functor does not invert " + v);
    out.amap[arrow] = h.dst.compose(h.on_arr(f), *inv);
  }
  return out;
}

std::set<std::string> inverted_arrows(const Localization& loc) {
  std::set<std::string> out;
  for (const Arrow& f : loc.j.src.arrows())
    if (loc.cat.is_iso(loc.j.on_arr(f.id))) out.insert(f.id);
  return out;
}

LocalizedFibration localize_fibration(const Fibration& p, const std::set<std::string>& w) {
  for (const std::string& a : w)
    if (!p.base().is_iso(p.proj.on_arr(a)))
      throw error("localize_fibration: " + a + " is not vertical");
  LocalizedFibration out;
  out.loc = localize(p.total(), w);
  Functor projw{out.loc.cat, p.base(), {}, {}};
  for (const std::string& x : out.loc.cat.objects()) projw.omap[x] = p.proj.on_obj(x);
  for (const auto& [arrow, parts] : out.loc.rep_parts) {
    const auto& [v, f] = parts;
    projw.amap[arrow] =
        p.base().compose(p.proj.on_arr(f), *p.base().inverse(p.proj.on_arr(v)));
  }
  out.fib = make_fibration(projw);
  out.jmor.functor = out.loc.j;
  out.jmor.phi = NatTrans{compose_functors(projw, out.loc.j), p.proj, {}};
  for (const std::string& a : p.total().objects())
    out.jmor.phi.comp[a] = p.base().identity(p.proj.on_obj(a));
  return out;
}

LaxColimitResult lax_colimit(const Indexed& d) {
  LaxColimitResult out;
  out.groth = grothendieck(d);
  const Cat& total = out.groth.fib.total();
  for (const std::string& x : d.base.objects()) {
    Functor leg{d.fib(x), total, {}, {}};
    for (const std::string& u : d.fib(x).objects()) leg.omap[u] = out.groth.obj_of.at({x, u});
    for (const Arrow& g : d.fib(x).arrows())
      leg.amap[g.id] = out.groth.arrow_of(
          d.base.identity(x), d.fib(x).compose(d.unit_at(x, g.dst), g.id), x, g.dst);
    out.legs[x] = leg;
  }
  for (const Arrow& y : d.base.arrows()) {
    NatTrans n{compose_functors(out.legs.at(y.src), d.tr(y.id)), out.legs.at(y.dst), {}};
    for (const std::string& u : d.fib(y.dst).objects())
      n.comp[u] = out.groth.arrow_of(
          y.id, d.fib(y.src).identity(d.tr(y.id).on_obj(u)), y.dst, u);
    out.transforms[y.id] = n;
  }
  return out;
}

OplaxColimitResult oplax_colimit(const Indexed& d) {
  Indexed v = dual(d);
  GrothResult g = grothendieck(v);
  OplaxColimitResult out;
  out.cat = opposite(g.fib.total());
  for (const std::string& x : d.base.objects()) {
    Functor leg{d.fib(x), out.cat, {}, {}};
    for (const std::string& u : d.fib(x).objects()) leg.omap[u] = g.obj_of.at({x, u});
    for (const Arrow& a : d.fib(x).arrows()) {
      // (1_X, a . phi_X(src a)^{-1}) read in the dual fibre
      const Cat& fib = d.fib(x);
      std::string c = fib.compose(a.id, *fib.inverse(d.unit_at(x, a.src)));
      leg.amap[a.id] = g.arrow_of(d.base.identity(x), c, x, a.src);
    }
    out.legs[x] = leg;
  }
  for (const Arrow& y : d.base.arrows()) {
    NatTrans n{out.legs.at(y.dst), compose_functors(out.legs.at(y.src), d.tr(y.id)), {}};
    for (const std::string& u : d.fib(y.dst).objects())
      n.comp[u] =
          g.arrow_of(y.id, d.fib(y.src).identity(d.tr(y.id).on_obj(u)), y.dst, u);
    out.transforms[y.id] = n;
  }
  return out;
}

Localization pseudo_colimit(const Indexed& d, const GrothResult& g) {
  std::set<std::string> cart;
  for (const Arrow& f : g.fib.total().arrows())
    if (is_cartesian(g.fib.proj, f.id)) cart.insert(f.id);
  FractionsReport rep = check_right_fractions(g.fib.total(), cart);
  if (!rep.ok)
    throw error("pseudo_colimit: cartesian arrows admit no right calculus of fractions: " +
                rep.counterexample);
  return localize(g.fib.total(), cart);
}

Indexed slice_weight(const Cat& c) {
  std::map<std::string, Cat> fibres;
  std::map<std::string, SliceResult> slices;
  for (const std::string& x : c.objects()) {
    slices[x] = slice(c, x);
    fibres[x] = slices[x].cat;
  }
  std::map<std::string, Functor> transitions;
  for (const Arrow& y : c.arrows()) {
    // postcomposition slice(src y) -> slice(dst y)
    const SliceResult& sy = slices.at(y.src);
    const SliceResult& sx = slices.at(y.dst);
    Functor t{sy.cat, sx.cat, {}, {}};
    for (const auto& [z, ob] : sy.obj_of_arrow) t.omap[ob] = sx.obj_of_arrow.at(c.compose(y.id, z));
    for (const Arrow& a : sy.cat.arrows()) {
      const auto& [w, u, z] = sy.arr_parts.at(a.id);
      t.amap[a.id] = "[" + c.compose(y.id, w) + ">" + u + ">" + c.compose(y.id, z) + "]";
    }
    transitions[y.id] = t;
  }
  return strict_indexed(opposite(c), std::move(fibres), std::move(transitions));
}

namespace {

std::string triple_obj(const std::string& x, const std::string& u, const std::string& b) {
  return "(" + x + "|" + u + "|" + b + ")";
}

std::string triple_arr(const std::string& y, const std::string& a, const std::string& b,
                       const std::string& src, const std::string& dst) {
  return "(" + y + "|" + a + "|" + b + ")@" + src + ">" + dst;
}

// Builds the category of triples (X, U, B) over d and a covariant weight r
// (indexed over opposite(base)).
struct TripleCat {
  Cat cat;
  std::map<std::string, std::array<std::string, 3>> obj_parts;
  std::map<std::string, std::array<std::string, 3>> arr_parts;
};

TripleCat build_triple(const Indexed& d, const Indexed& r) {
  if (!(r.base == opposite(d.base)))
    throw error("weight must be indexed over the opposite of the base");
  const Cat& base = d.base;
  TripleCat k;
  for (const std::string& x : base.objects())
    for (const std::string& u : d.fib(x).objects())
      for (const std::string& b : r.fib(x).objects()) {
        std::string tag = triple_obj(x, u, b);
        k.cat.add_object(tag);
        k.obj_parts[tag] = {x, u, b};
      }
  // arrows (y, a, b) : (Y, V, A) -> (X, U, B) with a : V -> D(y)(U) in D(Y)
  // and b : R(y)(A) -> B in R(X)
  for (const Arrow& y : base.arrows())
    for (const std::string& u : d.fib(y.dst).objects())
      for (const std::string& bb : r.fib(y.dst).objects())
        for (const std::string& aa : r.fib(y.src).objects()) {
          const std::string ru = d.tr(y.id).on_obj(u);
          const std::string ra = r.tr(y.id).on_obj(aa);
          for (const Arrow& a : d.fib(y.src).arrows()) {
            if (a.dst != ru) continue;
            for (const std::string& b : r.fib(y.dst).hom(ra, bb)) {
              std::string src = triple_obj(y.src, a.src, aa);
              std::string dst = triple_obj(y.dst, u, bb);
              std::string id = triple_arr(y.id, a.id, b, src, dst);
              k.cat.add_arrow(id, src, dst);
              k.arr_parts[id] = {y.id, a.id, b};
            }
          }
        }
  for (const auto& [tag, parts] : k.obj_parts) {
    const auto& [x, u, b] = parts;
    const Cat& rf = r.fib(x);
    k.cat.set_identity(tag, triple_arr(base.identity(x), d.unit_at(x, u),
                                       *rf.inverse(r.unit_at(x, b)), tag, tag));
  }
  for (const Arrow& p : k.cat.arrows())
    for (const Arrow& q : k.cat.arrows()) {
      if (q.dst != p.src) continue;
      const auto& [y, a, b] = k.arr_parts.at(p.id);
      const auto& [z, a2, b2] = k.arr_parts.at(q.id);
      const auto& [x, u, bb] = k.obj_parts.at(p.dst);
      const auto& [zz, w, aprime] = k.obj_parts.at(q.src);
      const Cat& fz = d.fib(zz);
      std::string afull = fz.compose(d.comp_at(y, z, u), fz.compose(d.tr(z).on_arr(a), a2));
      // b . R(y)(b2) . inv(phi^R_{y,z}(A')) with the weight's comp iso keyed (z, y)
      const Cat& fx = r.fib(x);
      std::string bfull =
          fx.compose(b, fx.compose(r.tr(y).on_arr(b2), *fx.inverse(r.comp_at(z, y, aprime))));
      k.cat.set_compose(p.id, q.id,
                        triple_arr(base.compose(y, z), afull, bfull, q.src, p.dst));
    }
  return k;
}

}  // namespace

WeightedResult weighted_ps_colimit(const Indexed& d, const Indexed& r) {
  TripleCat k = build_triple(d, r);
  WeightedResult out;
  out.triple = k.cat;
  out.obj_parts = k.obj_parts;
  out.arr_parts = k.arr_parts;
  std::set<std::string> cls;
  for (const auto& [id, parts] : k.arr_parts) {
    const auto& [y, a, b] = parts;
    const auto& [xs, us, as] = k.obj_parts.at(k.cat.src(id));
    const auto& [xd, ud, bd] = k.obj_parts.at(k.cat.dst(id));
    if (d.fib(xs).is_iso(a) && r.fib(xd).is_iso(b)) cls.insert(id);
  }
  FractionsReport rep = check_right_fractions(k.cat, cls);
  if (!rep.ok)
    throw error("weighted_ps_colimit: localization class fails the fractions check: " +
                rep.counterexample);
  out.loc = localize(k.cat, cls);
  return out;
}

Functor slice_weight_comparison(const Indexed& d, const GrothResult& g,
                                const WeightedResult& w) {
  // triple objects (X, U, [z : Z -> X]) -> (Z, D(z)(U))
  const Cat& base = d.base;
  std::map<std::string, SliceResult> slices;
  for (const std::string& x : base.objects()) slices[x] = slice(base, x);
  auto arrow_of_slice_obj = [&](const std::string& x, const std::string& ob) {
    for (const auto& [z, tag] : slices.at(x).obj_of_arrow)
      if (tag == ob) return z;
    throw error("slice object not found: " + ob);
  };
  Functor L{w.triple, g.fib.total(), {}, {}};
  for (const auto& [tag, parts] : w.obj_parts) {
    const auto& [x, u, ob] = parts;
    std::string z = arrow_of_slice_obj(x, ob);
    L.omap[tag] = g.obj_of.at({base.src(z), d.tr(z).on_obj(u)});
  }
  for (const auto& [id, parts] : w.arr_parts) {
    const auto& [y, a, b] = parts;
    const auto& [xs, v, obz] = w.obj_parts.at(w.triple.src(id));
    const auto& [xd, u, obw] = w.obj_parts.at(w.triple.dst(id));
    std::string z = arrow_of_slice_obj(xs, obz);
    std::string wv = arrow_of_slice_obj(xd, obw);
    const auto& bparts = slices.at(xd).arr_parts.at(b);  // b : [y z] -> [w], middle component
    const std::string& btilde = bparts[1];
    const Cat& fz = d.fib(base.src(z));
    // phi_{w,btilde}(U)^{-1} . phi_{y,z}(U) . D(z)(a)
    std::string second =
        fz.compose(*fz.inverse(d.comp_at(wv, btilde, u)),
                   fz.compose(d.comp_at(y, z, u), d.tr(z).on_arr(a)));
    L.amap[id] = g.arrow_of(btilde, second, base.src(wv), d.tr(wv).on_obj(u));
  }
  return L;
}

Indexed groupoidify_fibrewise(const Indexed& d) {
  Indexed out;
  out.base = d.base;
  std::map<std::string, Localization> locs;
  for (const std::string& x : d.base.objects()) {
    std::set<std::string> all;
    for (const Arrow& a : d.fib(x).arrows()) all.insert(a.id);
    FractionsReport rep = check_right_fractions(d.fib(x), all);
    if (!rep.ok)
      throw error("groupoidify: fibre at " + x + " fails the fractions check: " +
                  rep.counterexample);
    locs[x] = localize(d.fib(x), all);
    out.fibre[x] = locs[x].cat;
  }
  for (const Arrow& y : d.base.arrows()) {
    const Localization& lx = locs.at(y.dst);
    const Localization& ly = locs.at(y.src);
    Functor t{lx.cat, ly.cat, {}, {}};
    for (const std::string& u : lx.cat.objects()) t.omap[u] = d.tr(y.id).on_obj(u);
    for (const auto& [arrow, parts] : lx.rep_parts) {
      const auto& [v, f] = parts;
      t.amap[arrow] = ly.class_of.at({d.tr(y.id).on_arr(v), d.tr(y.id).on_arr(f)});
    }
    out.transition[y.id] = t;
  }
  for (const std::string& x : d.base.objects()) {
    NatTrans n{identity_functor(out.fib(x)), out.tr(d.base.identity(x)), {}};
    for (const std::string& u : out.fib(x).objects())
      n.comp[u] = locs.at(x).j.on_arr(d.unit_at(x, u));
    out.unit_iso[x] = n;
  }
  for (const Arrow& y : d.base.arrows())
    for (const Arrow& z : d.base.arrows()) {
      if (z.dst != y.src) continue;
      NatTrans n{compose_functors(out.tr(z.id), out.tr(y.id)),
                 out.tr(d.base.compose(y.id, z.id)),
                 {}};
      for (const std::string& u : out.fib(y.dst).objects())
        n.comp[u] = locs.at(z.src).j.on_arr(d.comp_at(y.id, z.id, u));
      out.comp_iso[{y.id, z.id}] = n;
    }
  return out;
}

WeightedResult groupoidal_conification(const Indexed& d, const Indexed& r) {
  Indexed bar = groupoidify_fibrewise(d);
  TripleCat k = build_triple(bar, r);
  WeightedResult out;
  out.triple = k.cat;
  out.obj_parts = k.obj_parts;
  out.arr_parts = k.arr_parts;
  std::set<std::string> cls;
  for (const auto& [id, parts] : k.arr_parts) {
    const auto& [y, a, b] = parts;
    const auto& [xd, ud, bd] = k.obj_parts.at(k.cat.dst(id));
    if (r.fib(xd).is_iso(b)) cls.insert(id);
  }
  FractionsReport rep = check_right_fractions(k.cat, cls);
  if (!rep.ok)
    throw error("groupoidal_conification: localization class fails the fractions check: " +
                rep.counterexample);
  out.loc = localize(k.cat, cls);
  return out;
}

}  // namespace finsite
