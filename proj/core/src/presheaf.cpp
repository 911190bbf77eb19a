#include "finsite/presheaf.hpp"

#include <algorithm>

#include "finsite/indexed.hpp"

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

}  // namespace

const std::vector<std::string>& Presheaf::at(const std::string& obj) const {
  auto it = value.find(obj);
  if (it == value.end()) throw error("presheaf has no value at " + obj);
  return it->second;
}

const std::string& Presheaf::act(const std::string& arrow, const std::string& elem) const {
  auto it = action.find(arrow);
  if (it == action.end()) throw error("presheaf has no action for arrow " + arrow);
  auto jt = it->second.find(elem);
  if (jt == it->second.end())
    throw error("presheaf action for " + arrow + " undefined on " + elem);
  return jt->second;
}

std::vector<std::string> validate_presheaf(const Presheaf& p) {
  std::vector<std::string> report;
  for (const std::string& x : p.base.objects())
    if (!p.value.count(x)) report.push_back("no value at object " + x);
  if (!report.empty()) return report;
  for (const Arrow& a : p.base.arrows()) {
    auto it = p.action.find(a.id);
    if (it == p.action.end()) {
      report.push_back("no action for arrow " + a.id);
      continue;
    }
    for (const std::string& e : p.at(a.dst)) {
      auto jt = it->second.find(e);
      if (jt == it->second.end()) {
        report.push_back("action of " + a.id + " undefined on " + e);
      } else {
        const auto& v = p.at(a.src);
        if (!std::binary_search(v.begin(), v.end(), jt->second))
          report.push_back("action of " + a.id + " maps " + e + " outside value(" + a.src + ")");
      }
    }
  }
  if (!report.empty()) return report;
  for (const std::string& x : p.base.objects())
    for (const std::string& e : p.at(x))
      if (p.act(p.base.identity(x), e) != e)
        report.push_back("identity action is not the identity at " + x + " on " + e);
  for (const Arrow& g : p.base.arrows())
    for (const Arrow& f : p.base.arrows()) {
      if (f.dst != g.src) continue;
      // contravariance: action(g o f) = action(f) . action(g)
      for (const std::string& e : p.at(g.dst))
        if (p.act(p.base.compose(g.id, f.id), e) != p.act(f.id, p.act(g.id, e)))
          report.push_back("contravariance fails on (" + g.id + ", " + f.id + ")");
    }
  return report;
}

void require_valid(const Presheaf& p) {
  auto r = validate_presheaf(p);
  if (!r.empty()) throw error("invalid presheaf: " + r.front());
}

const std::string& PshMap::at(const std::string& obj, const std::string& elem) const {
  auto it = comp.find(obj);
  if (it == comp.end()) throw error("presheaf morphism has no component at " + obj);
  auto jt = it->second.find(elem);
  if (jt == it->second.end())
    throw error("presheaf morphism component at " + obj + " undefined on " + elem);
  return jt->second;
}

std::vector<std::string> validate_psh_map(const PshMap& m) {
  std::vector<std::string> report;
  if (!(m.src.base == m.dst.base)) return {"source and target live over different bases"};
  for (const std::string& x : m.src.base.objects())
    for (const std::string& e : m.src.at(x)) {
      std::string img;
      try {
        img = m.at(x, e);
      } catch (const error&) {
        report.push_back("component missing at " + x + " on " + e);
        continue;
      }
      const auto& v = m.dst.at(x);
      if (!std::binary_search(v.begin(), v.end(), img))
        report.push_back("component at " + x + " maps " + e + " outside the target");
    }
  if (!report.empty()) return report;
  for (const Arrow& a : m.src.base.arrows())
    for (const std::string& e : m.src.at(a.dst))
      if (m.at(a.src, m.src.act(a.id, e)) != m.dst.act(a.id, m.at(a.dst, e)))
        report.push_back("naturality fails at arrow " + a.id + " on " + e);
  return report;
}

bool psh_map_is_iso(const PshMap& m) {
  for (const std::string& x : m.src.base.objects()) {
    std::set<std::string> img;
    for (const std::string& e : m.src.at(x)) img.insert(m.at(x, e));
    if (img.size() != m.src.at(x).size() || img.size() != m.dst.at(x).size()) return false;
  }
  return true;
}

bool psh_map_is_mono(const PshMap& m) {
  for (const std::string& x : m.src.base.objects()) {
    std::set<std::string> img;
    for (const std::string& e : m.src.at(x)) img.insert(m.at(x, e));
    if (img.size() != m.src.at(x).size()) return false;
  }
  return true;
}

PshMap identity_psh_map(const Presheaf& p) {
  PshMap m{p, p, {}};
  for (const std::string& x : p.base.objects()) {
    auto& cx = m.comp[x];
    for (const std::string& e : p.at(x)) cx[e] = e;
  }
  return m;
}

PshMap compose_psh_maps(const PshMap& g, const PshMap& f) {
  PshMap m{f.src, g.dst, {}};
  for (const std::string& x : f.src.base.objects()) {
    auto& cx = m.comp[x];
    for (const std::string& e : f.src.at(x)) cx[e] = g.at(x, f.at(x, e));
  }
  return m;
}

Presheaf terminal_presheaf(const Cat& c) {
  Presheaf p{c, {}, {}};
  for (const std::string& x : c.objects()) p.value[x] = {"*"};
  for (const Arrow& a : c.arrows()) p.action[a.id] = {{"*", "*"}};
  return p;
}

Presheaf empty_presheaf(const Cat& c) {
  Presheaf p{c, {}, {}};
  for (const std::string& x : c.objects()) p.value[x] = {};
  for (const Arrow& a : c.arrows()) p.action[a.id] = {};
  return p;
}

Presheaf representable(const Cat& c, const std::string& x) {
  if (!c.has_object(x)) throw error("representable: unknown object " + x);
  Presheaf p{c, {}, {}};
  for (const std::string& y : c.objects()) p.value[y] = c.hom(y, x);
  for (const Arrow& a : c.arrows()) {
    auto& m = p.action[a.id];
    for (const std::string& f : c.hom(a.dst, x)) m[f] = c.compose(f, a.id);
  }
  return p;
}

ElementsResult elements(const Presheaf& p) {
  require_valid(p);
  ElementsResult r;
  auto tag = [](const std::string& x, const std::string& s) { return "(" + x + "|" + s + ")"; };
  for (const std::string& x : p.base.objects())
    for (const std::string& s : p.at(x)) {
      r.cat.add_object(tag(x, s));
      r.obj_of[{x, s}] = tag(x, s);
    }
  // arrow y : (Y, P(y)(s)) -> (X, s) for each y : Y -> X and s in P(X)
  auto aid = [&](const std::string& y, const std::string& x, const std::string& s) {
    return y + "@" + tag(x, s);
  };
  for (const Arrow& y : p.base.arrows())
    for (const std::string& s : p.at(y.dst))
      r.cat.add_arrow(aid(y.id, y.dst, s), tag(y.src, p.act(y.id, s)), tag(y.dst, s));
  for (const std::string& x : p.base.objects())
    for (const std::string& s : p.at(x))
      r.cat.set_identity(tag(x, s), aid(p.base.identity(x), x, s));
  for (const Arrow& y : p.base.arrows())
    for (const std::string& s : p.at(y.dst))
      for (const Arrow& z : p.base.arrows()) {
        if (z.dst != y.src) continue;
        r.cat.set_compose(aid(y.id, y.dst, s), aid(z.id, y.src, p.act(y.id, s)),
                          aid(p.base.compose(y.id, z.id), y.dst, s));
      }
  r.proj = Functor{r.cat, p.base, {}, {}};
  for (const std::string& x : p.base.objects())
    for (const std::string& s : p.at(x)) r.proj.omap[tag(x, s)] = x;
  for (const Arrow& y : p.base.arrows())
    for (const std::string& s : p.at(y.dst)) r.proj.amap[aid(y.id, y.dst, s)] = y.id;
  return r;
}

Presheaf restrict_presheaf(const Presheaf& p, const Functor& f) {
  if (!(f.dst == p.base)) throw error("restrict: codomain mismatch");
  Presheaf q{f.src, {}, {}};
  for (const std::string& x : f.src.objects()) q.value[x] = p.at(f.on_obj(x));
  for (const Arrow& a : f.src.arrows()) q.action[a.id] = p.action.at(f.on_arr(a.id));
  return q;
}

std::string lan_class_tag(const std::string& y, const std::string& x, const std::string& s) {
  return "<" + y + "|" + x + "|" + s + ">";
}

namespace {

std::string lan_tag(const std::string& y, const std::string& x, const std::string& s) {
  return lan_class_tag(y, x, s);
}

}  // namespace

LanResult lan(const Functor& f, const Presheaf& p) {
  if (!(f.src == p.base)) throw error("lan: presheaf does not live over the domain");
  const Cat& b = f.dst;
  LanResult r;
  r.psh.base = b;

  // comma elements per object d: triples (y : d -> f(x), x, s in p(x))
  // glued by the zigzag generated by arrows of the domain acting on both slots.
  std::map<std::string, UnionFind> uf;
  std::map<std::string, std::array<std::string, 3>> parts;
  for (const std::string& d : b.objects()) {
    UnionFind u;
    for (const std::string& x : f.src.objects())
      for (const std::string& y : b.hom(d, f.on_obj(x)))
        for (const std::string& s : p.at(x)) {
          u.add(lan_tag(y, x, s));
          parts[lan_tag(y, x, s)] = {y, x, s};
        }
    // relation: for a : x -> x2 in the domain, (y, x, p(a)(s2)) ~ (f(a) o y, x2, s2)
    for (const Arrow& a : f.src.arrows())
      for (const std::string& y : b.hom(d, f.on_obj(a.src)))
        for (const std::string& s2 : p.at(a.dst))
          u.unite(lan_tag(y, a.src, p.act(a.id, s2)),
                  lan_tag(b.compose(f.on_arr(a.id), y), a.dst, s2));
    uf.emplace(d, std::move(u));
  }
  for (const std::string& d : b.objects()) {
    std::set<std::string> classes;
    for (auto& [tag, _] : uf.at(d).parent) classes.insert(uf.at(d).find(tag));
    r.psh.value[d] = std::vector<std::string>(classes.begin(), classes.end());
    for (const std::string& cls : r.psh.value[d]) r.rep_parts[cls] = parts.at(cls);
  }
  for (const Arrow& e : b.arrows()) {
    auto& m = r.psh.action[e.id];
    for (const std::string& cls : r.psh.at(e.dst)) {
      const auto& [y, x, s] = r.rep_parts.at(cls);
      m[cls] = uf.at(e.src).find(lan_tag(b.compose(y, e.id), x, s));
    }
  }
  r.unit = PshMap{p, restrict_presheaf(r.psh, f), {}};
  for (const std::string& x : f.src.objects()) {
    auto& cx = r.unit.comp[x];
    for (const std::string& s : p.at(x))
      cx[s] = uf.at(f.on_obj(x)).find(lan_tag(b.identity(f.on_obj(x)), x, s));
  }
  for (const std::string& d : b.objects())
    for (auto& [tag, _] : uf.at(d).parent) r.class_of[tag] = uf.at(d).find(tag);
  return r;
}

PshMap restrict_map(const PshMap& m, const Functor& f) {
  PshMap out{restrict_presheaf(m.src, f), restrict_presheaf(m.dst, f), {}};
  for (const std::string& x : f.src.objects()) out.comp[x] = m.comp.at(f.on_obj(x));
  return out;
}

PshMap lan_map(const Functor& f, const PshMap& m) {
  LanResult lp = lan(f, m.src);
  LanResult lq = lan(f, m.dst);
  PshMap out{lp.psh, lq.psh, {}};
  for (const std::string& d : f.dst.objects()) {
    auto& cd = out.comp[d];
    for (const std::string& cls : lp.psh.at(d)) {
      const auto& [y, x, s] = lp.rep_parts.at(cls);
      cd[cls] = lq.class_of.at(lan_class_tag(y, x, m.at(x, s)));
    }
  }
  return out;
}

PshMap lan_counit(const Functor& f, const Presheaf& q) {
  LanResult lr = lan(f, restrict_presheaf(q, f));
  PshMap eps{lr.psh, q, {}};
  for (const std::string& d : q.base.objects()) {
    auto& cd = eps.comp[d];
    for (const std::string& cls : lr.psh.at(d)) {
      const auto& [y, x, s] = lr.rep_parts.at(cls);  // s in q(f(x)), y : d -> f(x)
      cd[cls] = q.act(y, s);
    }
  }
  return eps;
}

Presheaf pi0_indexed(const Indexed& d) {
  Presheaf p{d.base, {}, {}};
  // class of an object, named by the least member of its component
  std::map<std::string, std::map<std::string, std::string>> cls;  // fibre obj -> rep
  for (const std::string& x : d.base.objects()) {
    auto comps = connected_components(d.fibre.at(x));
    auto& cx = cls[x];
    std::vector<std::string> reps;
    for (const auto& members : comps) {
      const std::string& rep = members.front();
      reps.push_back(rep);
      for (const std::string& m : members) cx[m] = rep;
    }
    std::sort(reps.begin(), reps.end());
    p.value[x] = reps;
  }
  for (const Arrow& y : d.base.arrows()) {
    const Functor& t = d.transition.at(y.id);
    auto& m = p.action[y.id];
    for (const std::string& rep : p.at(y.dst)) m[rep] = cls.at(y.src).at(t.on_obj(rep));
  }
  return p;
}

std::map<std::pair<std::string, std::string>, std::string> presheaf_colimit_classes(
    const Presheaf& p) {
  UnionFind u;
  auto tag = [](const std::string& x, const std::string& s) { return "(" + x + "|" + s + ")"; };
  for (const std::string& x : p.base.objects())
    for (const std::string& s : p.at(x)) u.add(tag(x, s));
  for (const Arrow& y : p.base.arrows())
    for (const std::string& s : p.at(y.dst))
      u.unite(tag(y.dst, s), tag(y.src, p.act(y.id, s)));
  std::map<std::pair<std::string, std::string>, std::string> out;
  for (const std::string& x : p.base.objects())
    for (const std::string& s : p.at(x)) out[{x, s}] = u.find(tag(x, s));
  return out;
}

std::size_t presheaf_colimit_size(const Presheaf& p) {
  std::set<std::string> reps;
  for (auto& [_, rep] : presheaf_colimit_classes(p)) reps.insert(rep);
  return reps.size();
}

namespace {

bool extend_psh_iso(const Presheaf& p, const Presheaf& q, const std::vector<std::string>& objs,
                    std::size_t k, PshMap& m) {
  auto squares_ok = [&]() {
    for (const Arrow& a : p.base.arrows()) {
      if (!m.comp.count(a.src) || !m.comp.count(a.dst)) continue;
      for (const std::string& e : p.at(a.dst))
        if (m.at(a.src, p.act(a.id, e)) != q.act(a.id, m.at(a.dst, e))) return false;
    }
    return true;
  };
  if (k == objs.size()) return squares_ok();
  const std::string& x = objs[k];
  const auto& dom = p.at(x);
  const auto& cod = q.at(x);
  if (dom.size() != cod.size()) return false;
  std::vector<std::string> perm = cod;
  std::sort(perm.begin(), perm.end());
  do {
    auto& cx = m.comp[x];
    cx.clear();
    for (std::size_t i = 0; i < dom.size(); ++i) cx[dom[i]] = perm[i];
    if (squares_ok() && extend_psh_iso(p, q, objs, k + 1, m)) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  m.comp.erase(x);
  return false;
}

}  // namespace

std::optional<PshMap> find_psh_iso(const Presheaf& p, const Presheaf& q) {
  if (!(p.base == q.base)) return std::nullopt;
  PshMap m{p, q, {}};
  if (!extend_psh_iso(p, q, p.base.objects(), 0, m)) return std::nullopt;
  return m;
}

}  // namespace finsite
