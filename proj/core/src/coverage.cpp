#include "finsite/coverage.hpp"

#include <algorithm>

namespace finsite {

bool is_sieve(const Cat& c, const Sieve& s) {
  if (!c.has_object(s.apex)) return false;
  for (const std::string& f : s.arrows) {
    if (!c.has_arrow(f) || c.dst(f) != s.apex) return false;
    for (const Arrow& g : c.arrows())
      if (g.dst == c.src(f) && !s.arrows.count(c.compose(f, g.id))) return false;
  }
  return true;
}

Sieve sieve_generated(const Cat& c, const std::string& apex,
                      const std::set<std::string>& family) {
  Sieve s{apex, {}};
  for (const std::string& f : family) {
    if (c.dst(f) != apex) throw error("sieve_generated: arrow " + f + " does not target " + apex);
    s.arrows.insert(f);
    for (const Arrow& g : c.arrows())
      if (g.dst == c.src(f)) s.arrows.insert(c.compose(f, g.id));
  }
  return s;
}

Sieve maximal_sieve(const Cat& c, const std::string& apex) {
  Sieve s{apex, {}};
  for (const std::string& f : c.arrows_into(apex)) s.arrows.insert(f);
  return s;
}

Sieve pullback_sieve(const Cat& c, const Sieve& s, const std::string& f) {
  if (c.dst(f) != s.apex) throw error("pullback_sieve: arrow does not target the apex");
  Sieve r{c.src(f), {}};
  for (const std::string& g : c.arrows_into(c.src(f)))
    if (s.arrows.count(c.compose(f, g))) r.arrows.insert(g);
  return r;
}

Sieve intersect_sieves(const Sieve& a, const Sieve& b) {
  if (a.apex != b.apex) throw error("intersect_sieves: apex mismatch");
  Sieve r{a.apex, {}};
  std::set_intersection(a.arrows.begin(), a.arrows.end(), b.arrows.begin(), b.arrows.end(),
                        std::inserter(r.arrows, r.arrows.begin()));
  return r;
}

std::vector<Sieve> all_sieves(const Cat& c, const std::string& apex, std::size_t max_arrows) {
  std::vector<std::string> in = c.arrows_into(apex);
  if (in.size() > max_arrows)
    throw error("all_sieves: too many arrows into " + apex + " (" +
                std::to_string(in.size()) + " > " + std::to_string(max_arrows) + ")");
  std::vector<Sieve> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << in.size()); ++mask) {
    Sieve s{apex, {}};
    for (std::size_t i = 0; i < in.size(); ++i)
      if (mask & (std::size_t{1} << i)) s.arrows.insert(in[i]);
    if (is_sieve(c, s)) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

const std::set<Sieve>& Topology::at(const std::string& obj) const {
  auto it = covering.find(obj);
  if (it == covering.end()) throw error("topology has no entry for object " + obj);
  return it->second;
}

bool Topology::covers(const Sieve& s) const { return at(s.apex).count(s) > 0; }

std::vector<std::string> validate_topology(const Topology& j) {
  std::vector<std::string> report;
  const Cat& c = j.base;
  for (const std::string& x : c.objects()) {
    if (!j.covering.count(x)) {
      report.push_back("no covering set at " + x);
      continue;
    }
    for (const Sieve& s : j.at(x))
      if (s.apex != x || !is_sieve(c, s))
        report.push_back("entry at " + x + " is not a sieve on " + x);
  }
  if (!report.empty()) return report;
  for (const std::string& x : c.objects())
    if (!j.covers(maximal_sieve(c, x)))
      report.push_back("maximal sieve on " + x + " is not covering");
  for (const std::string& x : c.objects())
    for (const Sieve& s : j.at(x))
      for (const std::string& f : c.arrows_into(x))
        if (!j.covers(pullback_sieve(c, s, f)))
          report.push_back("stability fails: pullback of a covering sieve on " + x +
                           " along " + f);
  for (const std::string& x : c.objects())
    for (const Sieve& r : all_sieves(c, x)) {
      if (j.covers(r)) continue;
      for (const Sieve& t : j.at(x)) {
        bool all = true;
        for (const std::string& f : t.arrows)
          if (!j.covers(pullback_sieve(c, r, f))) {
            all = false;
            break;
          }
        if (all) {
          report.push_back("transitivity fails: locally covering sieve on " + x +
                           " is not covering");
          break;
        }
      }
    }
  return report;
}

Topology trivial_topology(const Cat& c) {
  Topology j{c, {}};
  for (const std::string& x : c.objects()) j.covering[x] = {maximal_sieve(c, x)};
  return j;
}

Topology saturate(const Cat& c, const std::map<std::string, std::set<Sieve>>& coverage) {
  Topology j = trivial_topology(c);
  for (const auto& [x, sieves] : coverage)
    for (const Sieve& s : sieves) j.covering[x].insert(sieve_generated(c, x, s.arrows));
  std::map<std::string, std::vector<Sieve>> universe;
  for (const std::string& x : c.objects()) universe[x] = all_sieves(c, x);
  bool changed = true;
  while (changed) {
    changed = false;
    // stability
    for (const std::string& x : c.objects())
      for (const Sieve& s : std::vector<Sieve>(j.at(x).begin(), j.at(x).end()))
        for (const std::string& f : c.arrows_into(x)) {
          Sieve pb = pullback_sieve(c, s, f);
          if (j.covering[c.src(f)].insert(pb).second) changed = true;
        }
    // transitivity
    for (const std::string& x : c.objects())
      for (const Sieve& r : universe.at(x)) {
        if (j.covers(r)) continue;
        for (const Sieve& t : std::vector<Sieve>(j.at(x).begin(), j.at(x).end())) {
          bool all = true;
          for (const std::string& f : t.arrows)
            if (!j.covers(pullback_sieve(c, r, f))) {
              all = false;
              break;
            }
          if (all) {
            j.covering[x].insert(r);
            changed = true;
            break;
          }
        }
      }
  }
  return j;
}

bool topology_leq(const Topology& a, const Topology& b) {
  for (const auto& [x, sieves] : a.covering)
    for (const Sieve& s : sieves)
      if (!b.covers(s)) return false;
  return true;
}

Topology intersect_topologies(const Topology& a, const Topology& b) {
  Topology j{a.base, {}};
  for (const auto& [x, sieves] : a.covering) {
    auto& out = j.covering[x];
    for (const Sieve& s : sieves)
      if (b.covers(s)) out.insert(s);
  }
  return j;
}

namespace {

void extend_matching(const Presheaf& p, const Cat& c, const std::vector<std::string>& arrows,
                     std::size_t k, std::map<std::string, std::string>& partial,
                     std::vector<MatchingFamily>& out, const Sieve& s) {
  if (k == arrows.size()) {
    // full compatibility check: assignment(f o g) = P(g)(assignment(f))
    for (const std::string& f : arrows)
      for (const Arrow& g : c.arrows()) {
        if (g.dst != c.src(f)) continue;
        if (partial.at(c.compose(f, g.id)) != p.act(g.id, partial.at(f))) return;
      }
    out.push_back(MatchingFamily{s, partial});
    return;
  }
  const std::string& f = arrows[k];
  for (const std::string& e : p.at(c.src(f))) {
    partial[f] = e;
    bool ok = true;
    for (const Arrow& g : c.arrows()) {
      if (g.dst != c.src(f)) continue;
      auto it = partial.find(c.compose(f, g.id));
      if (it != partial.end() && it->second != p.act(g.id, e)) {
        ok = false;
        break;
      }
    }
    if (ok) extend_matching(p, c, arrows, k + 1, partial, out, s);
    partial.erase(f);
  }
}

}  // namespace

std::vector<MatchingFamily> matching_families(const Presheaf& p, const Sieve& s) {
  std::vector<std::string> arrows(s.arrows.begin(), s.arrows.end());
  std::vector<MatchingFamily> out;
  std::map<std::string, std::string> partial;
  extend_matching(p, p.base, arrows, 0, partial, out, s);
  return out;
}

std::vector<std::string> amalgamations(const Presheaf& p, const MatchingFamily& m) {
  std::vector<std::string> out;
  for (const std::string& x : p.at(m.sieve.apex)) {
    bool ok = true;
    for (const std::string& f : m.sieve.arrows)
      if (p.act(f, x) != m.assignment.at(f)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(x);
  }
  return out;
}

namespace {

bool sheaf_check(const Presheaf& p, const Topology& j, bool exact) {
  if (!(p.base == j.base)) throw error("sheaf check: base mismatch");
  for (const std::string& x : p.base.objects())
    for (const Sieve& s : j.at(x))
      for (const MatchingFamily& m : matching_families(p, s)) {
        std::size_t n = amalgamations(p, m).size();
        if (exact ? n != 1 : n > 1) return false;
      }
  return true;
}

}  // namespace

bool is_sheaf(const Presheaf& p, const Topology& j) { return sheaf_check(p, j, true); }
bool is_separated(const Presheaf& p, const Topology& j) { return sheaf_check(p, j, false); }

Presheaf sieve_presheaf(const Cat& c, const Sieve& s) {
  Presheaf p{c, {}, {}};
  for (const std::string& x : c.objects()) {
    std::vector<std::string> v;
    for (const std::string& f : s.arrows)
      if (c.src(f) == x) v.push_back(f);
    std::sort(v.begin(), v.end());
    p.value[x] = v;
  }
  for (const Arrow& a : c.arrows()) {
    auto& m = p.action[a.id];
    for (const std::string& f : p.at(a.dst)) m[f] = c.compose(f, a.id);
  }
  return p;
}

PshMap sieve_inclusion(const Cat& c, const Sieve& s) {
  PshMap m{sieve_presheaf(c, s), representable(c, s.apex), {}};
  for (const std::string& x : c.objects()) {
    auto& cx = m.comp[x];
    for (const std::string& f : m.src.at(x)) cx[f] = f;
  }
  return m;
}

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

std::string family_tag(const MatchingFamily& m) {
  std::string tag = "{";
  bool first = true;
  for (const std::string& f : m.sieve.arrows) {
    if (!first) tag += ",";
    first = false;
    tag += f + ":" + m.assignment.at(f);
  }
  return tag + "}";
}

struct PlusData {
  Presheaf psh;
  PshMap unit;
  std::map<std::string, std::map<std::string, std::string>> class_of;
  std::map<std::string, std::map<std::string, MatchingFamily>> family_of;
};

bool agree_on(const MatchingFamily& a, const MatchingFamily& b, const Sieve& u) {
  for (const std::string& f : u.arrows)
    if (a.assignment.at(f) != b.assignment.at(f)) return false;
  return true;
}

PlusData plus_data(const Presheaf& p, const Topology& j) {
  if (!(p.base == j.base)) throw error("plus construction: base mismatch");
  const Cat& c = p.base;
  PlusData out;
  out.psh.base = c;
  std::map<std::string, UnionFind> uf;
  for (const std::string& x : c.objects()) {
    std::vector<MatchingFamily> all;
    for (const Sieve& s : j.at(x))
      for (const MatchingFamily& m : matching_families(p, s)) all.push_back(m);
    UnionFind u;
    auto& fam = out.family_of[x];
    for (const MatchingFamily& m : all) {
      u.add(family_tag(m));
      fam[family_tag(m)] = m;
    }
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t k = i + 1; k < all.size(); ++k) {
        Sieve meet = intersect_sieves(all[i].sieve, all[k].sieve);
        for (const Sieve& refinement : j.at(x)) {
          if (!std::includes(meet.arrows.begin(), meet.arrows.end(),
                             refinement.arrows.begin(), refinement.arrows.end()))
            continue;
          if (agree_on(all[i], all[k], refinement)) {
            u.unite(family_tag(all[i]), family_tag(all[k]));
            break;
          }
        }
      }
    std::set<std::string> reps;
    for (auto& [tag, _] : u.parent) reps.insert(u.find(tag));
    out.psh.value[x] = std::vector<std::string>(reps.begin(), reps.end());
    auto& cls = out.class_of[x];
    for (auto& [tag, _] : u.parent) cls[tag] = u.find(tag);
    uf.emplace(x, std::move(u));
  }
  // action: restrict the family along y (assignment g -> kappa(y o g))
  for (const Arrow& y : c.arrows()) {
    auto& m = out.psh.action[y.id];
    for (const std::string& rep : out.psh.at(y.dst)) {
      const MatchingFamily& mf = out.family_of.at(y.dst).at(rep);
      MatchingFamily moved;
      moved.sieve = pullback_sieve(c, mf.sieve, y.id);
      for (const std::string& g : moved.sieve.arrows)
        moved.assignment[g] = mf.assignment.at(c.compose(y.id, g));
      m[rep] = out.class_of.at(y.src).at(family_tag(moved));
    }
  }
  // unit: x -> class of the total family of x
  out.unit = PshMap{p, out.psh, {}};
  for (const std::string& x : c.objects()) {
    auto& cx = out.unit.comp[x];
    for (const std::string& e : p.at(x)) {
      MatchingFamily total{maximal_sieve(c, x), {}};
      for (const std::string& f : total.sieve.arrows) total.assignment[f] = p.act(f, e);
      cx[e] = out.class_of.at(x).at(family_tag(total));
    }
  }
  return out;
}

}  // namespace

SheafifyResult plus_construction(const Presheaf& p, const Topology& j) {
  PlusData d = plus_data(p, j);
  return SheafifyResult{d.psh, d.unit};
}

PshMap plus_map(const PshMap& m, const Topology& j) {
  PlusData dp = plus_data(m.src, j);
  PlusData dq = plus_data(m.dst, j);
  PshMap out{dp.psh, dq.psh, {}};
  for (const std::string& x : m.src.base.objects()) {
    auto& cx = out.comp[x];
    for (const std::string& rep : dp.psh.at(x)) {
      const MatchingFamily& mf = dp.family_of.at(x).at(rep);
      MatchingFamily img{mf.sieve, {}};
      for (const auto& [f, e] : mf.assignment) img.assignment[f] = m.at(m.src.base.src(f), e);
      cx[rep] = dq.class_of.at(x).at(family_tag(img));
    }
  }
  return out;
}

SheafifyResult sheafify(const Presheaf& p, const Topology& j) {
  SheafifyResult once = plus_construction(p, j);
  SheafifyResult twice = plus_construction(once.psh, j);
  return SheafifyResult{twice.psh, compose_psh_maps(twice.unit, once.unit)};
}

PshMap sheafify_map(const PshMap& m, const Topology& j) {
  return plus_map(plus_map(m, j), j);
}

bool is_subcanonical(const Topology& j) {
  for (const std::string& x : j.base.objects())
    if (!is_sheaf(representable(j.base, x), j)) return false;
  return true;
}

bool is_dense_mono(const PshMap& m, const Topology& j) {
  if (!psh_map_is_mono(m)) throw error("is_dense_mono: input is not componentwise injective");
  return psh_map_is_iso(sheafify_map(m, j));
}

std::vector<Topology> enumerate_topologies(const Cat& c, std::size_t arrow_bound) {
  if (c.arrows().size() > arrow_bound)
    throw error("enumerate_topologies: bound exceeded (" + std::to_string(c.arrows().size()) +
                " arrows > " + std::to_string(arrow_bound) + ")");
  std::vector<std::pair<std::string, Sieve>> universe;
  for (const std::string& x : c.objects())
    for (const Sieve& s : all_sieves(c, x)) universe.emplace_back(x, s);
  std::set<std::map<std::string, std::set<Sieve>>> seen;
  std::vector<Topology> out;
  std::vector<Topology> queue{saturate(c, {})};
  seen.insert(queue.front().covering);
  while (!queue.empty()) {
    Topology t = queue.back();
    queue.pop_back();
    out.push_back(t);
    for (const auto& [x, s] : universe) {
      if (t.covers(s)) continue;
      std::map<std::string, std::set<Sieve>> gen = t.covering;
      gen[x].insert(s);
      Topology bigger = saturate(c, gen);
      if (seen.insert(bigger.covering).second) queue.push_back(bigger);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Topology& a, const Topology& b) { return a.covering < b.covering; });
  return out;
}

}  // namespace finsite
