#include "finsite/indexed.hpp"

#include <algorithm>
#include <functional>

namespace finsite {

const Cat& Indexed::fib(const std::string& x) const {
  auto it = fibre.find(x);
  if (it == fibre.end()) throw error("indexed category has no fibre at " + x);
  return it->second;
}

const Functor& Indexed::tr(const std::string& y) const {
  auto it = transition.find(y);
  if (it == transition.end()) throw error("indexed category has no transition for " + y);
  return it->second;
}

const std::string& Indexed::unit_at(const std::string& x, const std::string& u) const {
  return unit_iso.at(x).at(u);
}

const std::string& Indexed::comp_at(const std::string& y, const std::string& z,
                                    const std::string& u) const {
  auto it = comp_iso.find({y, z});
  if (it == comp_iso.end())
    throw error("indexed category has no composition iso for (" + y + ", " + z + ")");
  return it->second.at(u);
}

std::vector<std::string> validate_indexed(const Indexed& d) {
  std::vector<std::string> report;
  for (const std::string& x : d.base.objects()) {
    if (!d.fibre.count(x)) {
      report.push_back("no fibre at " + x);
      continue;
    }
    for (const std::string& line : validate_category(d.fib(x)))
      report.push_back("fibre at " + x + ": " + line);
  }
  if (!report.empty()) return report;
  for (const Arrow& y : d.base.arrows()) {
    if (!d.transition.count(y.id)) {
      report.push_back("no transition for " + y.id);
      continue;
    }
    const Functor& t = d.tr(y.id);
    if (!(t.src == d.fib(y.dst)) || !(t.dst == d.fib(y.src)))
      report.push_back("transition for " + y.id + " has wrong endpoints");
    for (const std::string& line : validate_functor(t))
      report.push_back("transition for " + y.id + ": " + line);
  }
  if (!report.empty()) return report;
  for (const std::string& x : d.base.objects()) {
    auto it = d.unit_iso.find(x);
    if (it == d.unit_iso.end()) {
      report.push_back("no unit iso at " + x);
      continue;
    }
    const NatTrans& n = it->second;
    if (!(n.src == identity_functor(d.fib(x))) || !(n.dst == d.tr(d.base.identity(x))))
      report.push_back("unit iso at " + x + " has wrong endpoints");
    for (const std::string& line : validate_nat(n))
      report.push_back("unit iso at " + x + ": " + line);
    if (!nat_is_iso(n)) report.push_back("unit iso at " + x + " is not invertible");
  }
  for (const Arrow& y : d.base.arrows())
    for (const Arrow& z : d.base.arrows()) {
      if (z.dst != y.src) continue;
      auto it = d.comp_iso.find({y.id, z.id});
      if (it == d.comp_iso.end()) {
        report.push_back("no composition iso for (" + y.id + ", " + z.id + ")");
        continue;
      }
      const NatTrans& n = it->second;
      if (!(n.src == compose_functors(d.tr(z.id), d.tr(y.id))) ||
          !(n.dst == d.tr(d.base.compose(y.id, z.id))))
        report.push_back("composition iso for (" + y.id + ", " + z.id +
                         ") has wrong endpoints");
      for (const std::string& line : validate_nat(n))
        report.push_back("composition iso for (" + y.id + ", " + z.id + "): " + line);
      if (!nat_is_iso(n))
        report.push_back("composition iso for (" + y.id + ", " + z.id + ") is not invertible");
    }
  if (!report.empty()) return report;

  // unit coherence: phi_{1_X,y}(U) . D(y)(phi_X(U)) = id and
  // phi_{y,1_Y}(U) . phi_Y(D(y)(U)) = id, for y : Y -> X
  for (const Arrow& y : d.base.arrows()) {
    const Cat& fy = d.fib(y.src);
    for (const std::string& u : d.fib(y.dst).objects()) {
      const std::string dyu = d.tr(y.id).on_obj(u);
      if (fy.compose(d.comp_at(d.base.identity(y.dst), y.id, u),
                     d.tr(y.id).on_arr(d.unit_at(y.dst, u))) != fy.identity(dyu))
        report.push_back("unit coherence (left) fails for " + y.id + " at " + u);
      if (fy.compose(d.comp_at(y.id, d.base.identity(y.src), u), d.unit_at(y.src, dyu)) !=
          fy.identity(dyu))
        report.push_back("unit coherence (right) fails for " + y.id + " at " + u);
    }
  }
  // cocycle: phi_{y,zw}(U) . phi_{z,w}(D(y)(U)) = phi_{yz,w}(U) . D(w)(phi_{y,z}(U))
  for (const Arrow& y : d.base.arrows())
    for (const Arrow& z : d.base.arrows()) {
      if (z.dst != y.src) continue;
      for (const Arrow& w : d.base.arrows()) {
        if (w.dst != z.src) continue;
        const Cat& fw = d.fib(w.src);
        for (const std::string& u : d.fib(y.dst).objects()) {
          std::string lhs = fw.compose(d.comp_at(y.id, d.base.compose(z.id, w.id), u),
                                       d.comp_at(z.id, w.id, d.tr(y.id).on_obj(u)));
          std::string rhs = fw.compose(d.comp_at(d.base.compose(y.id, z.id), w.id, u),
                                       d.tr(w.id).on_arr(d.comp_at(y.id, z.id, u)));
          if (lhs != rhs)
            report.push_back("cocycle fails for (" + y.id + ", " + z.id + ", " + w.id +
                             ") at " + u);
        }
      }
    }
  return report;
}

void require_valid(const Indexed& d) {
  auto r = validate_indexed(d);
  if (!r.empty()) throw error("invalid indexed category: " + r.front());
}

Indexed strict_indexed(const Cat& base, std::map<std::string, Cat> fibres,
                       std::map<std::string, Functor> transitions) {
  Indexed d;
  d.base = base;
  d.fibre = std::move(fibres);
  d.transition = std::move(transitions);
  for (const std::string& x : base.objects()) {
    NatTrans n = identity_nat(identity_functor(d.fib(x)));
    n.dst = d.tr(base.identity(x));
    if (!(n.dst == n.src)) throw error("strict_indexed: transition of an identity is not 1");
    d.unit_iso[x] = n;
  }
  for (const Arrow& y : base.arrows())
    for (const Arrow& z : base.arrows()) {
      if (z.dst != y.src) continue;
      Functor comp = compose_functors(d.tr(z.id), d.tr(y.id));
      if (!(comp == d.tr(base.compose(y.id, z.id))))
        throw error("strict_indexed: transitions do not compose strictly");
      NatTrans n = identity_nat(comp);
      n.dst = d.tr(base.compose(y.id, z.id));
      d.comp_iso[{y.id, z.id}] = n;
    }
  return d;
}

Indexed discrete_indexed(const Presheaf& p) {
  std::map<std::string, Cat> fibres;
  for (const std::string& x : p.base.objects()) {
    Cat f;
    for (const std::string& s : p.at(x)) {
      f.add_object(s);
      f.add_arrow("id_" + s, s, s);
      f.set_identity(s, "id_" + s);
      f.set_compose("id_" + s, "id_" + s, "id_" + s);
    }
    fibres[x] = f;
  }
  std::map<std::string, Functor> transitions;
  for (const Arrow& y : p.base.arrows()) {
    Functor t{fibres.at(y.dst), fibres.at(y.src), {}, {}};
    for (const std::string& s : p.at(y.dst)) {
      t.omap[s] = p.act(y.id, s);
      t.amap["id_" + s] = "id_" + p.act(y.id, s);
    }
    transitions[y.id] = t;
  }
  return strict_indexed(p.base, std::move(fibres), std::move(transitions));
}

bool is_discrete_indexed(const Indexed& d) {
  for (const auto& [x, f] : d.fibre)
    for (const Arrow& a : f.arrows())
      if (!f.is_identity(a.id)) return false;
  return true;
}

Indexed dual(const Indexed& d) {
  Indexed v;
  v.base = d.base;
  for (const auto& [x, f] : d.fibre) v.fibre[x] = opposite(f);
  for (const auto& [y, t] : d.transition)
    v.transition[y] =
        Functor{v.fibre.at(d.base.dst(y)), v.fibre.at(d.base.src(y)), t.omap, t.amap};
  for (const auto& [x, n] : d.unit_iso) {
    NatTrans m{identity_functor(v.fib(x)), v.tr(d.base.identity(x)), {}};
    for (const auto& [u, a] : n.comp) m.comp[u] = *d.fib(x).inverse(a);
    v.unit_iso[x] = m;
  }
  for (const auto& [yz, n] : d.comp_iso) {
    const auto& [y, z] = yz;
    NatTrans m{compose_functors(v.tr(z), v.tr(y)), v.tr(d.base.compose(y, z)), {}};
    for (const auto& [u, a] : n.comp) m.comp[u] = *d.fib(d.base.src(z)).inverse(a);
    v.comp_iso[yz] = m;
  }
  return v;
}

bool is_cartesian(const Functor& p, const std::string& f) {
  const Cat& total = p.src;
  const Cat& base = p.dst;
  const std::string a = total.src(f), b = total.dst(f);
  for (const std::string& c : total.objects())
    for (const std::string& h : total.hom(c, b))
      for (const std::string& g : base.hom(p.on_obj(c), p.on_obj(a))) {
        if (p.on_arr(h) != base.compose(p.on_arr(f), g)) continue;
        int count = 0;
        for (const std::string& k : total.hom(c, a))
          if (p.on_arr(k) == g && total.compose(f, k) == h) ++count;
        if (count != 1) return false;
      }
  return true;
}

bool is_grothendieck_fibration(const Functor& p) {
  for (const std::string& a : p.src.objects())
    for (const std::string& x : p.dst.arrows_into(p.on_obj(a))) {
      bool found = false;
      for (const std::string& f : p.src.arrows_into(a))
        if (p.on_arr(f) == x && is_cartesian(p, f)) {
          found = true;
          break;
        }
      if (!found) return false;
    }
  return true;
}

bool is_street_fibration(const Functor& p) {
  for (const std::string& a : p.src.objects())
    for (const Arrow& x : p.dst.arrows()) {
      if (x.dst != p.on_obj(a)) continue;
      bool found = false;
      for (const std::string& f : p.src.arrows_into(a)) {
        if (!is_cartesian(p, f)) continue;
        for (const std::string& th : p.dst.isos(x.src, p.on_obj(p.src.src(f))))
          if (p.dst.compose(p.on_arr(f), th) == x.id) {
            found = true;
            break;
          }
        if (found) break;
      }
      if (!found) return false;
    }
  return true;
}

std::string factor_through_cartesian(const Functor& p, const std::string& f,
                                     const std::string& h, const std::string& g) {
  const Cat& total = p.src;
  std::vector<std::string> hits;
  for (const std::string& k : total.hom(total.src(h), total.src(f)))
    if (p.on_arr(k) == g && total.compose(f, k) == h) hits.push_back(k);
  if (hits.size() != 1)
    throw error("cartesian factorization not unique for (" + f + ", " + h + ", " + g + "): " +
                std::to_string(hits.size()) + " candidates");
  return hits.front();
}

const std::pair<std::string, std::string>& Fibration::lift(const std::string& x,
                                                           const std::string& a) const {
  auto it = cleavage.find({x, a});
  if (it == cleavage.end()) throw error("cleavage has no lift for (" + x + ", " + a + ")");
  return it->second;
}

std::string Fibration::lift_dom(const std::string& x, const std::string& a) const {
  return total().src(lift(x, a).first);
}

Fibration make_fibration(const Functor& p) {
  Fibration fib;
  fib.proj = p;
  std::map<std::string, bool> cart;
  for (const Arrow& f : p.src.arrows()) cart[f.id] = is_cartesian(p, f.id);
  for (const std::string& a : p.src.objects())
    for (const Arrow& x : p.dst.arrows()) {
      if (x.dst != p.on_obj(a)) continue;
      bool found = false;
      for (const std::string& f : p.src.arrows_into(a)) {
        if (!cart.at(f)) continue;
        for (const std::string& th : p.dst.isos(x.src, p.on_obj(p.src.src(f)))) {
          if (p.dst.compose(p.on_arr(f), th) != x.id) continue;
          fib.cleavage[{x.id, a}] = {f, th};
          found = true;
          break;
        }
        if (found) break;
      }
      if (!found)
        throw error("not a Street fibration: no cartesian lift of " + x.id + " at " + a);
    }
  return fib;
}

std::vector<std::string> validate_fibration(const Fibration& p) {
  std::vector<std::string> report;
  for (const std::string& a : p.total().objects())
    for (const Arrow& x : p.base().arrows()) {
      if (x.dst != p.proj.on_obj(a)) continue;
      auto it = p.cleavage.find({x.id, a});
      if (it == p.cleavage.end()) {
        report.push_back("no lift for (" + x.id + ", " + a + ")");
        continue;
      }
      const auto& [f, th] = it->second;
      if (p.total().dst(f) != a)
        report.push_back("lift of (" + x.id + ", " + a + ") has wrong target");
      if (!p.base().is_iso(th))
        report.push_back("witness for (" + x.id + ", " + a + ") is not invertible");
      if (p.base().compose(p.proj.on_arr(f), th) != x.id)
        report.push_back("lift of (" + x.id + ", " + a + ") does not project correctly");
      if (!is_cartesian(p.proj, f))
        report.push_back("lift of (" + x.id + ", " + a + ") is not cartesian");
    }
  return report;
}

std::string lambda_arrow(const Fibration& p, const std::string& x, const std::string& z,
                         const std::string& u) {
  const Cat& base = p.base();
  const auto& [f1, th1] = p.lift(x, u);
  const auto& [f3, th3] = p.lift(base.compose(x, z), u);
  std::string g = base.compose(th1, base.compose(z, *base.inverse(th3)));
  return factor_through_cartesian(p.proj, f1, f3, g);
}

std::string chi_arrow(const Fibration& p, const std::string& x, const std::string& z,
                      const std::string& u) {
  const Cat& base = p.base();
  const auto& [f1, th1] = p.lift(x, u);
  const std::string b1 = p.total().src(f1);
  const auto& [f2, th2] = p.lift(base.compose(th1, z), b1);
  const auto& [f3, th3] = p.lift(base.compose(x, z), u);
  std::string g = base.compose(th2, *base.inverse(th3));
  return factor_through_cartesian(p.proj, p.total().compose(f1, f2), f3, g);
}

namespace {

std::string gobj(const std::string& x, const std::string& u) { return "(" + x + "|" + u + ")"; }

std::string garr(const std::string& y, const std::string& a, const std::string& x,
                 const std::string& u) {
  return "(" + y + "|" + a + ")>" + gobj(x, u);
}

}  // namespace

std::string GrothResult::arrow_of(const std::string& y, const std::string& a,
                                  const std::string& x, const std::string& u) const {
  return garr(y, a, x, u);
}

GrothResult grothendieck(const Indexed& d) {
  GrothResult r;
  Cat total;
  for (const std::string& x : d.base.objects())
    for (const std::string& u : d.fib(x).objects()) {
      total.add_object(gobj(x, u));
      r.obj_of[{x, u}] = gobj(x, u);
      r.obj_parts[gobj(x, u)] = {x, u};
    }
  // arrows (y, a) : (Y, V) -> (X, U) with y : Y -> X and a : V -> D(y)(U)
  for (const Arrow& y : d.base.arrows())
    for (const std::string& u : d.fib(y.dst).objects()) {
      const std::string dyu = d.tr(y.id).on_obj(u);
      for (const Arrow& a : d.fib(y.src).arrows()) {
        if (a.dst != dyu) continue;
        std::string id = garr(y.id, a.id, y.dst, u);
        total.add_arrow(id, gobj(y.src, a.src), gobj(y.dst, u));
        r.arr_parts[id] = {y.id, a.id};
      }
    }
  for (const std::string& x : d.base.objects())
    for (const std::string& u : d.fib(x).objects())
      total.set_identity(gobj(x, u), garr(d.base.identity(x), d.unit_at(x, u), x, u));
  for (const Arrow& p : total.arrows())
    for (const Arrow& q : total.arrows()) {
      if (q.dst != p.src) continue;
      auto [y, a] = r.arr_parts.at(p.id);
      auto [z, b] = r.arr_parts.at(q.id);
      auto [x, u] = r.obj_parts.at(p.dst);
      const Cat& fz = d.fib(d.base.src(z));
      std::string second = fz.compose(d.comp_at(y, z, u), fz.compose(d.tr(z).on_arr(a), b));
      total.set_compose(p.id, q.id, garr(d.base.compose(y, z), second, x, u));
    }
  Functor proj{total, d.base, {}, {}};
  for (const auto& [tag, parts] : r.obj_parts) proj.omap[tag] = parts.first;
  for (const auto& [tag, parts] : r.arr_parts) proj.amap[tag] = parts.first;
  r.fib.proj = proj;
  // canonical cleavage: the lift of y at (X, U) is (y, 1_{D(y)(U)})
  for (const auto& [tag, parts] : r.obj_parts) {
    const auto& [x, u] = parts;
    for (const Arrow& y : d.base.arrows()) {
      if (y.dst != x) continue;
      const std::string dyu = d.tr(y.id).on_obj(u);
      r.fib.cleavage[{y.id, tag}] = {garr(y.id, d.fib(y.src).identity(dyu), x, u),
                                     d.base.identity(y.src)};
    }
  }
  return r;
}

EssentialFibre essential_fibre(const Functor& p, const std::string& x) {
  EssentialFibre e;
  auto tag = [](const std::string& a, const std::string& al) {
    return "(" + a + "|" + al + ")";
  };
  auto aid = [&](const std::string& g, const std::string& from, const std::string& to) {
    return g + "@" + from + ">" + to;
  };
  for (const std::string& a : p.src.objects())
    for (const std::string& al : p.dst.isos(x, p.on_obj(a))) {
      e.cat.add_object(tag(a, al));
      e.parts[tag(a, al)] = {a, al};
      e.obj_of[{a, al}] = tag(a, al);
    }
  // arrow g : (A, alpha) -> (B, p(g) alpha) whenever the composite is invertible
  for (const auto& [from, parts] : e.parts) {
    const auto& [a, al] = parts;
    for (const Arrow& g : p.src.arrows()) {
      if (g.src != a) continue;
      std::string be = p.dst.compose(p.on_arr(g.id), al);
      if (!p.dst.is_iso(be)) continue;
      std::string id = aid(g.id, from, tag(g.dst, be));
      e.cat.add_arrow(id, from, tag(g.dst, be));
      e.arr_of[id] = g.id;
    }
  }
  for (const auto& [from, parts] : e.parts)
    e.cat.set_identity(from, aid(p.src.identity(parts.first), from, from));
  for (const Arrow& q : e.cat.arrows())
    for (const Arrow& r : e.cat.arrows()) {
      if (r.dst != q.src) continue;
      e.cat.set_compose(q.id, r.id,
                        aid(p.src.compose(e.arr_of.at(q.id), e.arr_of.at(r.id)), r.src, q.dst));
    }
  return e;
}

namespace {

std::string efib_arrow(const std::string& g, const std::string& from, const std::string& to) {
  return g + "@" + from + ">" + to;
}

}  // namespace

Indexed indexed_of_fibration(const Fibration& p) {
  Indexed d;
  d.base = p.base();
  std::map<std::string, EssentialFibre> fibres;
  for (const std::string& x : d.base.objects()) {
    fibres[x] = essential_fibre(p.proj, x);
    d.fibre[x] = fibres[x].cat;
  }
  const Cat& base = d.base;
  const Cat& total = p.total();
  for (const Arrow& y : base.arrows()) {
    const EssentialFibre& ex = fibres.at(y.dst);
    const EssentialFibre& ey = fibres.at(y.src);
    Functor t{ex.cat, ey.cat, {}, {}};
    for (const auto& [from, parts] : ex.parts) {
      const auto& [a, al] = parts;
      const auto& [f, th] = p.lift(base.compose(al, y.id), a);
      t.omap[from] = ey.obj_of.at({total.src(f), th});
    }
    for (const Arrow& om : ex.cat.arrows()) {
      const std::string& g = ex.arr_of.at(om.id);
      const auto& [a, al] = ex.parts.at(om.src);
      const auto& [b, be] = ex.parts.at(om.dst);
      const auto& [fa, tha] = p.lift(base.compose(al, y.id), a);
      const auto& [fb, thb] = p.lift(base.compose(be, y.id), b);
      std::string k = factor_through_cartesian(p.proj, fb, total.compose(g, fa),
                                               base.compose(thb, *base.inverse(tha)));
      t.amap[om.id] = efib_arrow(k, t.omap.at(om.src), t.omap.at(om.dst));
    }
    d.transition[y.id] = t;
  }
  for (const std::string& x : base.objects()) {
    const EssentialFibre& ex = fibres.at(x);
    NatTrans n{identity_functor(ex.cat), d.tr(base.identity(x)), {}};
    for (const auto& [from, parts] : ex.parts) {
      const auto& [a, al] = parts;
      const auto& [f, th] = p.lift(al, a);
      auto inv = total.inverse(f);
      if (!inv) throw error("cleavage lift of an isomorphism is not invertible at " + from);
      n.comp[from] = efib_arrow(*inv, from, n.dst.on_obj(from));
    }
    d.unit_iso[x] = n;
  }
  for (const Arrow& y : base.arrows())
    for (const Arrow& z : base.arrows()) {
      if (z.dst != y.src) continue;
      const EssentialFibre& ex = fibres.at(y.dst);
      NatTrans n{compose_functors(d.tr(z.id), d.tr(y.id)), d.tr(base.compose(y.id, z.id)), {}};
      for (const auto& [from, parts] : ex.parts) {
        const auto& [a, al] = parts;
        std::string chi = chi_arrow(p, base.compose(al, y.id), z.id, a);
        auto inv = total.inverse(chi);
        if (!inv) throw error("comparison arrow not invertible at " + from);
        n.comp[from] = efib_arrow(*inv, n.src.on_obj(from), n.dst.on_obj(from));
      }
      d.comp_iso[{y.id, z.id}] = n;
    }
  return d;
}

Indexed indexed_of_fibration_strict(const Fibration& p) {
  for (const auto& [key, val] : p.cleavage)
    if (!p.base().is_identity(val.second))
      throw error("strict fibres need a Grothendieck cleavage (witness at (" + key.first +
                  ", " + key.second + "))");
  Indexed d;
  const Cat& base = p.base();
  const Cat& total = p.total();
  d.base = base;
  for (const std::string& x : base.objects()) {
    Cat f;
    for (const std::string& a : total.objects())
      if (p.proj.on_obj(a) == x) f.add_object(a);
    for (const Arrow& g : total.arrows())
      if (p.proj.on_arr(g.id) == base.identity(x) && f.has_object(g.src))
        f.add_arrow(g.id, g.src, g.dst);
    for (const std::string& a : f.objects()) f.set_identity(a, total.identity(a));
    for (const Arrow& g : f.arrows())
      for (const Arrow& h : f.arrows())
        if (h.dst == g.src) f.set_compose(g.id, h.id, total.compose(g.id, h.id));
    d.fibre[x] = f;
  }
  for (const Arrow& y : base.arrows()) {
    Functor t{d.fib(y.dst), d.fib(y.src), {}, {}};
    for (const std::string& a : d.fib(y.dst).objects()) t.omap[a] = p.lift_dom(y.id, a);
    for (const Arrow& g : d.fib(y.dst).arrows()) {
      const std::string& fa = p.lift(y.id, g.src).first;
      const std::string& fb = p.lift(y.id, g.dst).first;
      t.amap[g.id] =
          factor_through_cartesian(p.proj, fb, total.compose(g.id, fa), base.identity(y.src));
    }
    d.transition[y.id] = t;
  }
  for (const std::string& x : base.objects()) {
    NatTrans n{identity_functor(d.fib(x)), d.tr(base.identity(x)), {}};
    for (const std::string& a : d.fib(x).objects()) {
      auto inv = total.inverse(p.lift(base.identity(x), a).first);
      if (!inv) throw error("identity lift not invertible at " + a);
      n.comp[a] = *inv;
    }
    d.unit_iso[x] = n;
  }
  for (const Arrow& y : base.arrows())
    for (const Arrow& z : base.arrows()) {
      if (z.dst != y.src) continue;
      NatTrans n{compose_functors(d.tr(z.id), d.tr(y.id)), d.tr(base.compose(y.id, z.id)), {}};
      for (const std::string& a : d.fib(y.dst).objects()) {
        auto inv = total.inverse(chi_arrow(p, y.id, z.id, a));
        if (!inv) throw error("comparison arrow not invertible at " + a);
        n.comp[a] = *inv;
      }
      d.comp_iso[{y.id, z.id}] = n;
    }
  return d;
}

bool is_split_cleavage(const Fibration& p) {
  const Cat& base = p.base();
  const Cat& total = p.total();
  // (a) lifts of isomorphisms are identities
  for (const std::string& a : total.objects())
    for (const Arrow& x : base.arrows()) {
      if (x.dst != p.proj.on_obj(a) || !base.is_iso(x.id)) continue;
      const auto& [f, th] = p.lift(x.id, a);
      if (f != total.identity(a) || th != x.id) return false;
    }
  // (b) lifts compose on the nose
  for (const std::string& a : total.objects())
    for (const Arrow& y : base.arrows()) {
      if (y.dst != p.proj.on_obj(a)) continue;
      const auto& [fy, thy] = p.lift(y.id, a);
      for (const Arrow& z : base.arrows()) {
        if (z.dst != y.src) continue;
        const auto& [fz, thz] = p.lift(base.compose(thy, z.id), total.src(fy));
        const auto& [fyz, thyz] = p.lift(base.compose(y.id, z.id), a);
        if (fyz != total.compose(fy, fz) || thyz != thz) return false;
      }
    }
  return true;
}

std::vector<std::string> validate_fib_morphism(const Fibration& p, const Fibration& q,
                                               const FibMorphism& m) {
  std::vector<std::string> report;
  if (!(m.functor.src == p.total()) || !(m.functor.dst == q.total()))
    return {"functor endpoints do not match the fibrations"};
  for (const std::string& line : validate_functor(m.functor)) report.push_back(line);
  if (!report.empty()) return report;
  if (!(m.phi.src == compose_functors(q.proj, m.functor)) || !(m.phi.dst == p.proj))
    report.push_back("phi is not of shape q F => p");
  for (const std::string& line : validate_nat(m.phi)) report.push_back(line);
  if (!nat_is_iso(m.phi)) report.push_back("phi is not invertible");
  for (const Arrow& f : p.total().arrows())
    if (is_cartesian(p.proj, f.id) && !is_cartesian(q.proj, m.functor.on_arr(f.id)))
      report.push_back("cartesian arrow " + f.id + " is not sent to a cartesian arrow");
  return report;
}

FibMorphism fibred_yoneda_psi(const Fibration& p, const std::string& x, const std::string& a,
                              const std::string& alpha) {
  const Cat& base = p.base();
  SliceResult s = slice(base, x);
  Functor f{s.cat, p.total(), {}, {}};
  for (const auto& [y, ob] : s.obj_of_arrow) f.omap[ob] = p.lift_dom(base.compose(alpha, y), a);
  for (const Arrow& ar : s.cat.arrows()) {
    const auto& [w, z, y] = s.arr_parts.at(ar.id);  // z : [yz] -> [y]
    f.amap[ar.id] = lambda_arrow(p, base.compose(alpha, y), z, a);
  }
  NatTrans phi;
  phi.src = compose_functors(p.proj, f);
  phi.dst = s.proj;
  for (const auto& [y, ob] : s.obj_of_arrow)
    phi.comp[ob] = *base.inverse(p.lift(base.compose(alpha, y), a).second);
  return FibMorphism{f, phi};
}

std::pair<std::string, std::string> fibred_yoneda_phi(const Fibration& p, const std::string& x,
                                                      const FibMorphism& m) {
  const Cat& base = p.base();
  std::string ob = "[" + base.identity(x) + "]";
  return {m.functor.on_obj(ob), *base.inverse(m.phi.at(ob))};
}

std::optional<NatTrans> find_fib_2cell_iso(const Fibration& q, const FibMorphism& m1,
                                           const FibMorphism& m2) {
  const Functor& f = m1.functor;
  const Functor& g = m2.functor;
  if (!(f.src == g.src) || !(f.dst == g.dst)) return std::nullopt;
  const Cat& total = q.total();
  const Cat& base = q.base();
  // the projection of every component is forced by the 2-cell axiom
  std::map<std::string, std::string> need;
  for (const std::string& ob : f.src.objects())
    need[ob] = base.compose(*base.inverse(m2.phi.at(ob)), m1.phi.at(ob));
  std::vector<std::string> objs = f.src.objects();
  std::map<std::string, std::string> comp;
  auto squares_ok = [&]() {
    for (const Arrow& y : f.src.arrows()) {
      if (!comp.count(y.src) || !comp.count(y.dst)) continue;
      if (total.compose(comp.at(y.dst), f.on_arr(y.id)) !=
          total.compose(g.on_arr(y.id), comp.at(y.src)))
        return false;
    }
    return true;
  };
  std::function<bool(std::size_t)> go = [&](std::size_t k) {
    if (k == objs.size()) return true;
    const std::string& x = objs[k];
    for (const std::string& cand : total.isos(f.on_obj(x), g.on_obj(x))) {
      if (q.proj.on_arr(cand) != need.at(x)) continue;
      comp[x] = cand;
      if (squares_ok() && go(k + 1)) return true;
      comp.erase(x);
    }
    return false;
  };
  if (!go(0)) return std::nullopt;
  return NatTrans{f, g, comp};
}

Functor groth_roundtrip_comparison(const Fibration& p, const GrothResult& g) {
  const Cat& base = p.base();
  const Cat& total = p.total();
  Functor t{total, g.fib.total(), {}, {}};
  auto efib_obj = [&](const std::string& a) {
    return "(" + a + "|" + base.identity(p.proj.on_obj(a)) + ")";
  };
  for (const std::string& a : total.objects())
    t.omap[a] = g.obj_of.at({p.proj.on_obj(a), efib_obj(a)});
  for (const Arrow& ar : total.arrows()) {
    std::string y = p.proj.on_arr(ar.id);
    const auto& [f, th] = p.lift(y, ar.dst);
    std::string gbar = factor_through_cartesian(p.proj, f, ar.id, th);
    std::string fib_arrow =
        efib_arrow(gbar, efib_obj(ar.src), "(" + total.src(f) + "|" + th + ")");
    t.amap[ar.id] = g.arrow_of(y, fib_arrow, p.proj.on_obj(ar.dst), efib_obj(ar.dst));
  }
  return t;
}

Fibration composite_total_fibration(const Indexed& d, const Indexed& e) {
  GrothResult gd = grothendieck(d);
  if (!(e.base == gd.fib.total()))
    throw error("composite_fibration: e does not live over the total category of d");
  GrothResult ge = grothendieck(e);
  Functor q = compose_functors(gd.fib.proj, ge.fib.proj);
  Fibration comp;
  comp.proj = q;
  for (const std::string& t : ge.fib.total().objects()) {
    const auto& [w, h] = ge.obj_parts.at(t);
    for (const Arrow& y : d.base.arrows()) {
      if (y.dst != q.on_obj(t)) continue;
      const std::string& what = gd.fib.lift(y.id, w).first;
      const std::string& lift2 = ge.fib.lift(what, t).first;
      comp.cleavage[{y.id, t}] = {lift2, d.base.identity(y.src)};
    }
  }
  return comp;
}

Indexed composite_fibration(const Indexed& d, const Indexed& e) {
  return indexed_of_fibration_strict(composite_total_fibration(d, e));
}

Cone limit_in_total(const Indexed& d, const GrothResult& g, const Functor& diagram) {
  if (!(diagram.dst == g.fib.total()))
    throw error("diagram does not land in the total category");
  const Cat& shape = diagram.src;
  Functor base_diag = compose_functors(g.fib.proj, diagram);
  auto base_lim = limit_cone(base_diag);
  if (!base_lim)
    throw error("precondition: base category lacks the limit of the projected diagram");
  const std::string x = base_lim->apex;

  // transported fibre diagram at the base limit apex
  Functor fdiag{shape, d.fib(x), {}, {}};
  for (const std::string& i : shape.objects()) {
    const auto& [xi, ui] = g.obj_parts.at(diagram.on_obj(i));
    fdiag.omap[i] = d.tr(base_lim->legs.at(i)).on_obj(ui);
  }
  for (const Arrow& s : shape.arrows()) {
    const auto& [xs, bs] = g.arr_parts.at(diagram.on_arr(s.id));
    const auto& [xj, uj] = g.obj_parts.at(diagram.on_obj(s.dst));
    const std::string& li = base_lim->legs.at(s.src);
    fdiag.amap[s.id] = d.fib(x).compose(d.comp_at(xs, li, uj), d.tr(li).on_arr(bs));
  }
  {
    auto rep = validate_functor(fdiag);
    if (!rep.empty())
      throw error("transported fibre diagram is not functorial: " + rep.front());
  }
  auto fib_lim = limit_cone(fdiag);
  if (!fib_lim)
    throw error("precondition: fibre at " + x + " lacks the limit of the transported diagram");
  // transitions into x must preserve the fibre limit
  for (const Arrow& y : d.base.arrows()) {
    if (y.dst != x) continue;
    Functor moved = compose_functors(d.tr(y.id), fdiag);
    Cone moved_cone{d.tr(y.id).on_obj(fib_lim->apex), {}};
    for (const auto& [i, leg] : fib_lim->legs) moved_cone.legs[i] = d.tr(y.id).on_arr(leg);
    if (!is_limit_cone(moved, moved_cone))
      throw error("precondition: transition along " + y.id + " does not preserve the limit");
  }

  Cone total_cone{g.obj_of.at({x, fib_lim->apex}), {}};
  for (const std::string& i : shape.objects()) {
    const auto& [xi, ui] = g.obj_parts.at(diagram.on_obj(i));
    total_cone.legs[i] = g.arrow_of(base_lim->legs.at(i), fib_lim->legs.at(i), xi, ui);
  }
  if (!is_limit_cone(diagram, total_cone))
    throw error("assembled cone failed the exhaustive limit check");
  return total_cone;
}

}  // namespace finsite
