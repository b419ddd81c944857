#include "cloakforge/procomonad.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "cloakforge/parallel.hpp"

namespace cloakforge::procomonad {

using fincat::FinCategory;
using fincat::Functor;
using magmal::MagmalCategory;
using prof::Composite;
using prof::ModMor;
using prof::Presheaf;
using prof::Profunctor;
using prof::PshMor;

namespace {

int hom_pos(const FinCategory& c, Id x, Id y, Id f) {
  const auto& h = c.hom(x, y);
  for (size_t i = 0; i < h.size(); ++i)
    if (h[i] == f) return static_cast<int>(i);
  throw Error("MalformedTable", "morphism not in hom set");
}

// all flat representatives of a coend class
std::vector<prof::CoendCell::Triple> class_reps(const prof::CoendCell& cell,
                                                int cls) {
  std::vector<prof::CoendCell::Triple> out;
  for (int flat = 0; flat < static_cast<int>(cell.cls.size()); ++flat)
    if (cell.cls[flat] == cls) out.push_back(cell.decode(flat));
  return out;
}

}  // namespace

// -------------------------------------------------------------- procomonad

std::vector<std::string> Procomonad::validate() const {
  std::vector<std::string> bad;
  for (auto& m : gamma.validate()) bad.push_back("gamma: " + m);
  if (!bad.empty()) return bad;
  Profunctor hom = prof::hom_prof(base());
  for (auto& m : prof::validate_modmor(gamma, hom, eps))
    bad.push_back("eps: " + m);
  for (auto& m : prof::validate_modmor(gamma, sq.p, delta))
    bad.push_back("delta: " + m);
  if (!bad.empty()) return bad;

  const auto& c = *base();
  // counit laws, verified on every representative of δ(γ)
  for (Id y = 0; y < c.n_obj(); ++y)
    for (Id z = 0; z < c.n_obj(); ++z)
      for (int g = 0; g < gamma.size[y][z]; ++g) {
        int cls = delta.comp[y][z][g];
        for (auto& t : class_reps(sq.cells[y][z], cls)) {
          Id e1 = c.hom(t.b, z)[eps.comp[t.b][z][t.m]];
          if (gamma.apply_r(e1, y, t.n) != g) {
            bad.push_back("counit law (eps on first leg) fails");
            break;
          }
          Id e2 = c.hom(y, t.b)[eps.comp[y][t.b][t.n]];
          if (gamma.apply_l(e2, z, t.m) != g) {
            bad.push_back("counit law (eps on second leg) fails");
            break;
          }
        }
      }
  if (!bad.empty()) return bad;

  // coassociativity through the associator
  Composite left = prof::compose_prof(sq.p, gamma);   // triples (x, Γ², γ)
  Composite right = prof::compose_prof(gamma, sq.p);  // triples (x, γ, Γ²)
  ModMor route1 = prof::compose_modmor(
      gamma, sq.p, left.p, prof::whisker_m(sq, left, delta), delta);
  ModMor route2 = prof::compose_modmor(
      gamma, sq.p, right.p, prof::whisker_n(sq, right, delta), delta);
  Composite mn = prof::compose_prof(gamma, gamma);
  ModMor assoc = prof::associator(gamma, gamma, gamma, mn, mn, left, right);
  ModMor route2assoc = prof::compose_modmor(gamma, right.p, left.p, assoc,
                                            route2);
  if (!prof::modmor_equal(route1, route2assoc))
    bad.push_back("coassociativity fails");
  return bad;
}

Procomonad hom_procomonad(const CatPtr& c) {
  Procomonad p;
  p.gamma = prof::hom_prof(c);
  p.eps = prof::identity_modmor(p.gamma);
  p.sq = prof::compose_prof(p.gamma, p.gamma);
  p.delta.comp.resize(c->n_obj());
  for (Id y = 0; y < c->n_obj(); ++y) {
    p.delta.comp[y].resize(c->n_obj());
    for (Id z = 0; z < c->n_obj(); ++z) {
      const auto& homs = c->hom(y, z);
      p.delta.comp[y][z].resize(homs.size());
      for (size_t i = 0; i < homs.size(); ++i)
        p.delta.comp[y][z][i] =
            p.sq.inject(y, z, y, static_cast<int>(i), hom_pos(*c, y, y, c->id(y)));
    }
  }
  auto bad = p.validate();
  if (!bad.empty()) throw Error("LawViolation", "hom procomonad: " + bad[0]);
  return p;
}

Procomonad gamma_from_comonad(const magmal::MagmalComonad& g) {
  const auto& c = *g.carrier().base;
  const Functor& u = g.g.underlying;
  Procomonad p;
  p.gamma = prof::lower_star(u);  // Γ(y,z) = C(y,Gz)
  p.eps.comp.resize(c.n_obj());
  for (Id y = 0; y < c.n_obj(); ++y) {
    p.eps.comp[y].resize(c.n_obj());
    for (Id z = 0; z < c.n_obj(); ++z) {
      const auto& homs = c.hom(y, u.ob(z));
      p.eps.comp[y][z].resize(homs.size());
      for (size_t i = 0; i < homs.size(); ++i)
        p.eps.comp[y][z][i] =
            hom_pos(c, y, z, c.compose(g.eps.at(z), homs[i]));
    }
  }
  p.sq = prof::compose_prof(p.gamma, p.gamma);
  p.delta.comp.resize(c.n_obj());
  for (Id y = 0; y < c.n_obj(); ++y) {
    p.delta.comp[y].resize(c.n_obj());
    for (Id z = 0; z < c.n_obj(); ++z) {
      const auto& homs = c.hom(y, u.ob(z));
      p.delta.comp[y][z].resize(homs.size());
      for (size_t i = 0; i < homs.size(); ++i) {
        int m = hom_pos(c, u.ob(z), u.ob(z), c.id(u.ob(z)));
        int n = hom_pos(c, y, u.ob(u.ob(z)),
                        c.compose(g.delta.at(z), homs[i]));
        p.delta.comp[y][z][i] = p.sq.inject(y, z, u.ob(z), m, n);
      }
    }
  }
  auto bad = p.validate();
  if (!bad.empty()) throw Error("LawViolation", "G_*: " + bad[0]);
  return p;
}

Procomonad gamma_from_monad(const em::OpmagmalMonad& t) {
  const auto& c = *t.carrier.base;
  Procomonad p;
  p.gamma = prof::upper_star(t.t);  // Γ(y,z) = C(Ty,z)
  p.eps.comp.resize(c.n_obj());
  for (Id y = 0; y < c.n_obj(); ++y) {
    p.eps.comp[y].resize(c.n_obj());
    for (Id z = 0; z < c.n_obj(); ++z) {
      const auto& homs = c.hom(t.t.ob(y), z);
      p.eps.comp[y][z].resize(homs.size());
      for (size_t i = 0; i < homs.size(); ++i)
        p.eps.comp[y][z][i] = hom_pos(c, y, z, c.compose(homs[i], t.eta.at(y)));
    }
  }
  p.sq = prof::compose_prof(p.gamma, p.gamma);
  p.delta.comp.resize(c.n_obj());
  for (Id y = 0; y < c.n_obj(); ++y) {
    p.delta.comp[y].resize(c.n_obj());
    for (Id z = 0; z < c.n_obj(); ++z) {
      const auto& homs = c.hom(t.t.ob(y), z);
      p.delta.comp[y][z].resize(homs.size());
      for (size_t i = 0; i < homs.size(); ++i) {
        Id ty = t.t.ob(y);
        int m = hom_pos(c, t.t.ob(ty), z,
                        c.compose(homs[i], t.mu.at(y)));
        int n = hom_pos(c, ty, ty, c.id(ty));
        p.delta.comp[y][z][i] = p.sq.inject(y, z, ty, m, n);
      }
    }
  }
  auto bad = p.validate();
  if (!bad.empty()) throw Error("LawViolation", "T^*: " + bad[0]);
  return p;
}

// ---------------------------------------------------------- algebra category

Id GammaAlgCat::find_algebra(Id carrier, int coaction) const {
  for (size_t i = 0; i < algebras.size(); ++i)
    if (algebras[i].carrier == carrier && algebras[i].coaction == coaction)
      return static_cast<Id>(i);
  return kNone;
}

Id GammaAlgCat::lift_mor(Id x, Id y, Id f) const {
  for (Id m : cat->hom(x, y))
    if (base_mor[m] == f) return m;
  return kNone;
}

GammaAlgCat build_gamma_algebras(const Procomonad& p) {
  const auto& c = *p.base();
  GammaAlgCat out;
  for (Id x = 0; x < c.n_obj(); ++x)
    for (int g = 0; g < p.gamma.size[x][x]; ++g) {
      bool ax1 = c.hom(x, x)[p.eps.comp[x][x][g]] == c.id(x);
      bool ax2 = p.delta.comp[x][x][g] == p.sq.inject(x, x, x, g, g);
      if (ax1 && ax2) out.algebras.push_back({x, g});
    }
  const int n = static_cast<int>(out.algebras.size());
  FinCategory cat;
  cat.name = c.name + "^Γ";
  for (auto& a : out.algebras)
    cat.obj_names.push_back("(" + c.obj_name(a.carrier) + ",γ" +
                            std::to_string(a.coaction) + ")");
  for (Id i = 0; i < n; ++i)
    for (Id j = 0; j < n; ++j) {
      const auto& ai = out.algebras[i];
      const auto& aj = out.algebras[j];
      for (Id f : c.hom(ai.carrier, aj.carrier))
        if (p.gamma.apply_r(f, ai.carrier, ai.coaction) ==
            p.gamma.apply_l(f, aj.carrier, aj.coaction)) {
          cat.mor_src.push_back(i);
          cat.mor_dst.push_back(j);
          cat.mor_names.push_back(c.mor_name(f));
          out.base_mor.push_back(f);
        }
    }
  cat.identity.assign(n, kNone);
  const int nm = static_cast<int>(cat.mor_src.size());
  for (Id m = 0; m < nm; ++m)
    if (cat.mor_src[m] == cat.mor_dst[m] &&
        out.base_mor[m] == c.id(out.algebras[cat.mor_src[m]].carrier))
      cat.identity[cat.mor_src[m]] = m;
  cat.compose_table.assign(static_cast<size_t>(nm) * nm, kNone);
  for (Id m2 = 0; m2 < nm; ++m2)
    for (Id m1 = 0; m1 < nm; ++m1)
      if (cat.mor_dst[m1] == cat.mor_src[m2]) {
        Id comp = c.compose(out.base_mor[m2], out.base_mor[m1]);
        for (Id m3 = 0; m3 < nm; ++m3)
          if (cat.mor_src[m3] == cat.mor_src[m1] &&
              cat.mor_dst[m3] == cat.mor_dst[m2] && out.base_mor[m3] == comp) {
            cat.compose_table[static_cast<size_t>(m2) * nm + m1] = m3;
            break;
          }
      }
  out.cat = fincat::make_category(std::move(cat));
  out.und.dom = out.cat;
  out.und.cod = p.base();
  for (auto& a : out.algebras) out.und.obj_map.push_back(a.carrier);
  out.und.mor_map = out.base_mor;
  {
    auto bad = out.und.validate();
    if (!bad.empty()) throw Error("LawViolation", "und (Γ): " + bad[0]);
  }
  return out;
}

bool algebras_match_em(const GammaAlgCat& g, const em::EMCategory& emc) {
  if (g.algebras.size() != emc.coalgebras.size()) return false;
  const auto& c = *g.und.cod;
  std::vector<Id> map(g.algebras.size(), kNone);
  for (size_t i = 0; i < g.algebras.size(); ++i) {
    Id x = g.algebras[i].carrier;
    // coaction as a base arrow x → Gx: Γ(x,x) = C(x,Gx)
    Id gx = emc.und.underlying.obj_map.empty() ? kNone : kNone;
    (void)gx;
    Id arrow = kNone;
    // recover through the cell listing of C(x, G x)
    const auto& cell = c.hom(x, emc.cofree.dom == g.und.cod
                                    ? emc.und.underlying.ob(
                                          emc.cofree.ob(x) >= 0 ? x : x)
                                    : x);
    (void)cell;
    // Γ = G_*: Γ(x,x) lists hom(x, Gx) in order
    Id gxx = emc.coalgebras[emc.cofree.ob(x)].carrier;  // = G x
    arrow = c.hom(x, gxx)[g.algebras[i].coaction];
    map[i] = emc.find_coalgebra(x, arrow);
    if (map[i] == kNone) return false;
  }
  std::vector<int> seen(emc.coalgebras.size(), 0);
  for (Id m : map) seen[m]++;
  for (int s : seen)
    if (s != 1) return false;
  // hom-level: same underlying base morphisms
  if (g.cat->n_mor() != emc.cat.base->n_mor()) return false;
  for (Id m = 0; m < g.cat->n_mor(); ++m)
    if (emc.lift_mor(map[g.cat->src(m)], map[g.cat->dst(m)], g.base_mor[m]) ==
        kNone)
      return false;
  return true;
}

bool algebras_match_em(const GammaAlgCat& g, const em::EMAlgebraCategory& emc) {
  if (g.algebras.size() != emc.algebras.size()) return false;
  const auto& c = *g.und.cod;
  std::vector<Id> map(g.algebras.size(), kNone);
  for (size_t i = 0; i < g.algebras.size(); ++i) {
    Id x = g.algebras[i].carrier;
    Id tx = emc.algebras[emc.free.ob(x)].carrier;  // = T x
    Id arrow = c.hom(tx, x)[g.algebras[i].coaction];
    map[i] = emc.find_algebra(x, arrow);
    if (map[i] == kNone) return false;
  }
  std::vector<int> seen(emc.algebras.size(), 0);
  for (Id m : map) seen[m]++;
  for (int s : seen)
    if (s != 1) return false;
  if (g.cat->n_mor() != emc.cat.base->n_mor()) return false;
  for (Id m = 0; m < g.cat->n_mor(); ++m)
    if (emc.lift_mor(map[g.cat->src(m)], map[g.cat->dst(m)], g.base_mor[m]) ==
        kNone)
      return false;
  return true;
}

UndAdjoints und_adjoints(const GammaAlgCat& g) {
  UndAdjoints r;
  r.left = fincat::find_left_adjoint(g.und).has_value();
  r.right = fincat::find_right_adjoint(g.und).has_value();
  return r;
}

// ------------------------------------------------------------- Γ pullback

PullbackResult gamma_pullback(const fincat::Functor& w, const Procomonad& p) {
  const auto& dcat = *w.dom;
  const auto& ccat = *w.cod;
  PullbackResult out;

  Profunctor wl = prof::lower_star(w);
  Profunctor wu = prof::upper_star(w);
  Composite step1 = prof::compose_prof(wl, p.gamma);   // Γ∘W_* : D ↛ C
  Composite step2 = prof::compose_prof(step1.p, wu);   // W^*∘Γ∘W_* : D ↛ D

  // collapsed presentation: Γ_W(d',d) := Γ(Wd',Wd)
  Profunctor gw;
  gw.dom = gw.cod = w.dom;
  gw.size.assign(dcat.n_obj(), std::vector<int>(dcat.n_obj()));
  for (Id d2 = 0; d2 < dcat.n_obj(); ++d2)
    for (Id d = 0; d < dcat.n_obj(); ++d)
      gw.size[d2][d] = p.gamma.size[w.ob(d2)][w.ob(d)];
  gw.lact.assign(dcat.n_mor(), std::vector<std::vector<int>>(dcat.n_obj()));
  gw.ract.assign(dcat.n_mor(), std::vector<std::vector<int>>(dcat.n_obj()));
  for (Id f = 0; f < dcat.n_mor(); ++f)
    for (Id d = 0; d < dcat.n_obj(); ++d) {
      gw.lact[f][d] = p.gamma.lact[w.mor(f)][w.ob(d)];
      gw.ract[f][d] = p.gamma.ract[w.mor(f)][w.ob(d)];
    }

  // Yoneda collapse iso, verified cell by cell
  out.collapse_iso = true;
  for (Id d2 = 0; d2 < dcat.n_obj() && out.collapse_iso; ++d2)
    for (Id d = 0; d < dcat.n_obj() && out.collapse_iso; ++d) {
      if (step2.p.size[d2][d] != gw.size[d2][d]) {
        out.collapse_iso = false;
        break;
      }
      std::vector<char> hit(step2.p.size[d2][d], 0);
      for (int g = 0; g < gw.size[d2][d]; ++g) {
        int inner = step1.inject(
            w.ob(d2), d, w.ob(d),
            hom_pos(ccat, w.ob(d), w.ob(d), ccat.id(w.ob(d))), g);
        int cls = step2.inject(
            d2, d, w.ob(d2), inner,
            hom_pos(ccat, w.ob(d2), w.ob(d2), ccat.id(w.ob(d2))));
        if (hit[cls]) {
          out.collapse_iso = false;
          break;
        }
        hit[cls] = 1;
      }
    }

  // transported counit: unique W-preimage of ε(γ)
  out.structure_ok = true;
  ModMor eps_w;
  eps_w.comp.resize(dcat.n_obj());
  for (Id d2 = 0; d2 < dcat.n_obj(); ++d2) {
    eps_w.comp[d2].resize(dcat.n_obj());
    for (Id d = 0; d < dcat.n_obj(); ++d) {
      eps_w.comp[d2][d].resize(gw.size[d2][d]);
      for (int g = 0; g < gw.size[d2][d]; ++g) {
        Id arrow =
            ccat.hom(w.ob(d2), w.ob(d))[p.eps.comp[w.ob(d2)][w.ob(d)][g]];
        std::vector<int> pre;
        const auto& dh = dcat.hom(d2, d);
        for (size_t i = 0; i < dh.size(); ++i)
          if (w.mor(dh[i]) == arrow) pre.push_back(static_cast<int>(i));
        if (pre.size() != 1) {
          out.structure_ok = false;
          eps_w.comp[d2][d][g] = 0;
        } else {
          eps_w.comp[d2][d][g] = pre[0];
        }
      }
    }
  }

  // transported comultiplication by mediator repair
  Composite sqw = prof::compose_prof(gw, gw);
  ModMor delta_w;
  delta_w.comp.resize(dcat.n_obj());
  for (Id d2 = 0; d2 < dcat.n_obj(); ++d2) {
    delta_w.comp[d2].resize(dcat.n_obj());
    for (Id d = 0; d < dcat.n_obj(); ++d) {
      delta_w.comp[d2][d].resize(gw.size[d2][d]);
      for (int g = 0; g < gw.size[d2][d]; ++g) {
        int cls = p.delta.comp[w.ob(d2)][w.ob(d)][g];
        std::vector<int> candidates;
        for (auto& t : class_reps(p.sq.cells[w.ob(d2)][w.ob(d)], cls))
          for (Id dm = 0; dm < dcat.n_obj(); ++dm)
            if (w.ob(dm) == t.b) {
              int cand = sqw.inject(d2, d, dm, t.m, t.n);
              if (std::find(candidates.begin(), candidates.end(), cand) ==
                  candidates.end())
                candidates.push_back(cand);
            }
        if (candidates.size() != 1) {
          out.structure_ok = false;
          delta_w.comp[d2][d][g] = candidates.empty() ? 0 : candidates[0];
        } else {
          delta_w.comp[d2][d][g] = candidates[0];
        }
      }
    }
  }

  out.gamma_w.gamma = gw;
  out.gamma_w.eps = eps_w;
  out.gamma_w.sq = sqw;
  out.gamma_w.delta = delta_w;
  if (out.structure_ok)
    out.structure_ok = out.gamma_w.validate().empty();

  if (out.structure_ok) {
    GammaAlgCat dg = build_gamma_algebras(out.gamma_w);
    GammaAlgCat cg = build_gamma_algebras(p);
    // strict pullback category D ×_C C^Γ
    std::vector<std::pair<Id, Id>> objs;  // (d, algebra idx)
    for (Id d = 0; d < dcat.n_obj(); ++d)
      for (Id j = 0; j < static_cast<Id>(cg.algebras.size()); ++j)
        if (cg.algebras[j].carrier == w.ob(d)) objs.emplace_back(d, j);
    bool verdict = objs.size() == dg.algebras.size();
    for (size_t i = 0; i < dg.algebras.size() && verdict; ++i) {
      Id d = dg.algebras[i].carrier;
      Id j = cg.find_algebra(w.ob(d), dg.algebras[i].coaction);
      verdict = j != kNone &&
                std::find(objs.begin(), objs.end(), std::pair<Id, Id>{d, j}) !=
                    objs.end();
    }
    if (verdict) {
      // morphisms: pairs (f in D, m in C^Γ) with W f = base of m
      size_t pair_count = 0;
      for (Id f = 0; f < dcat.n_mor(); ++f)
        for (Id m = 0; m < cg.cat->n_mor(); ++m)
          if (cg.base_mor[m] == w.mor(f) &&
              cg.algebras[cg.cat->src(m)].carrier == w.ob(dcat.src(f)) &&
              cg.algebras[cg.cat->dst(m)].carrier == w.ob(dcat.dst(f)))
            ++pair_count;
      verdict = pair_count == static_cast<size_t>(dg.cat->n_mor());
    }
    out.pullback_verdict = verdict;
  }
  return out;
}

// ---------------------------------------------------------------- Γ^A

PowerResult gamma_power(const CatPtr& a, const Procomonad& p) {
  PowerResult out;
  out.fc = fincat::functor_category(a, p.base());
  const auto& fcat = *out.fc.cat;
  const auto& acat = *a;
  const int nf = fcat.n_obj();

  // end cells: families (γ_x ∈ Γ(F'x, Fx))_x with the wedge condition
  std::vector<std::vector<std::vector<std::vector<int>>>> fam(nf);
  Profunctor gp;
  gp.dom = gp.cod = out.fc.cat;
  gp.size.assign(nf, std::vector<int>(nf, 0));
  for (Id i = 0; i < nf; ++i) {
    fam[i].resize(nf);
    const Functor& fp = out.fc.objects[i];
    for (Id j = 0; j < nf; ++j) {
      const Functor& f = out.fc.objects[j];
      std::vector<int> cur(acat.n_obj(), 0);
      bool empty = false;
      for (Id x = 0; x < acat.n_obj(); ++x)
        if (p.gamma.size[fp.ob(x)][f.ob(x)] == 0) empty = true;
      if (empty) continue;
      while (true) {
        bool wedge = true;
        for (Id h = 0; h < acat.n_mor() && wedge; ++h) {
          Id x = acat.src(h), x2 = acat.dst(h);
          wedge = p.gamma.apply_r(f.mor(h), fp.ob(x), cur[x]) ==
                  p.gamma.apply_l(fp.mor(h), f.ob(x2), cur[x2]);
        }
        if (wedge) fam[i][j].push_back(cur);
        int k = acat.n_obj() - 1;
        while (k >= 0 &&
               cur[k] == p.gamma.size[fp.ob(k)][f.ob(k)] - 1)
          cur[k--] = 0;
        if (k < 0) break;
        ++cur[k];
      }
      gp.size[i][j] = static_cast<int>(fam[i][j].size());
    }
  }
  auto find_family = [&](Id i, Id j, const std::vector<int>& v) {
    for (size_t k = 0; k < fam[i][j].size(); ++k)
      if (fam[i][j][k] == v) return static_cast<int>(k);
    return -1;
  };
  gp.lact.assign(fcat.n_mor(), std::vector<std::vector<int>>(nf));
  gp.ract.assign(fcat.n_mor(), std::vector<std::vector<int>>(nf));
  for (Id m = 0; m < fcat.n_mor(); ++m) {
    const auto& sigma = out.fc.morphisms[m];
    Id i0 = fcat.src(m), i1 = fcat.dst(m);
    for (Id j = 0; j < nf; ++j) {
      auto& v = gp.lact[m][j];
      v.resize(gp.size[i1][j]);
      for (int e = 0; e < gp.size[i1][j]; ++e) {
        std::vector<int> img(acat.n_obj());
        for (Id x = 0; x < acat.n_obj(); ++x)
          img[x] = p.gamma.apply_l(sigma.at(x),
                                   out.fc.objects[j].ob(x), fam[i1][j][e][x]);
        int f = find_family(i0, j, img);
        if (f < 0) throw Error("LawViolation", "Γ^A action left the end");
        v[e] = f;
      }
    }
    for (Id i = 0; i < nf; ++i) {
      auto& v = gp.ract[m][i];
      v.resize(gp.size[i][i0]);
      for (int e = 0; e < gp.size[i][i0]; ++e) {
        std::vector<int> img(acat.n_obj());
        for (Id x = 0; x < acat.n_obj(); ++x)
          img[x] = p.gamma.apply_r(sigma.at(x),
                                   out.fc.objects[i].ob(x), fam[i][i0][e][x]);
        int f = find_family(i, i1, img);
        if (f < 0) throw Error("LawViolation", "Γ^A action left the end");
        v[e] = f;
      }
    }
  }

  out.structure_ok = true;
  // counit: pointwise ε must assemble into a natural transformation
  ModMor eps_p;
  eps_p.comp.resize(nf);
  for (Id i = 0; i < nf; ++i) {
    eps_p.comp[i].resize(nf);
    for (Id j = 0; j < nf; ++j) {
      eps_p.comp[i][j].resize(gp.size[i][j]);
      for (int e = 0; e < gp.size[i][j]; ++e) {
        fincat::NatTrans t;
        t.dom = out.fc.objects[i];
        t.cod = out.fc.objects[j];
        t.components.resize(acat.n_obj());
        for (Id x = 0; x < acat.n_obj(); ++x) {
          Id fpx = out.fc.objects[i].ob(x), fx = out.fc.objects[j].ob(x);
          t.components[x] =
              p.base()->hom(fpx, fx)[p.eps.comp[fpx][fx][fam[i][j][e][x]]];
        }
        Id mor = out.fc.find_morphism(t);
        if (mor == kNone) {
          out.structure_ok = false;
          eps_p.comp[i][j][e] = 0;
        } else {
          eps_p.comp[i][j][e] = hom_pos(fcat, i, j, mor);
        }
      }
    }
  }

  Composite sqp = prof::compose_prof(gp, gp);
  ModMor delta_p;
  delta_p.comp.resize(nf);
  for (Id i = 0; i < nf; ++i) {
    delta_p.comp[i].resize(nf);
    for (Id j = 0; j < nf; ++j) {
      delta_p.comp[i][j].resize(gp.size[i][j]);
      for (int e = 0; e < gp.size[i][j]; ++e) {
        // pointwise targets
        std::vector<int> target(acat.n_obj());
        for (Id x = 0; x < acat.n_obj(); ++x)
          target[x] = p.delta.comp[out.fc.objects[i].ob(x)]
                                  [out.fc.objects[j].ob(x)][fam[i][j][e][x]];
        std::vector<int> candidates;
        for (Id mid = 0; mid < nf; ++mid)
          for (int be = 0; be < gp.size[mid][j]; ++be)
            for (int al = 0; al < gp.size[i][mid]; ++al) {
              bool match = true;
              for (Id x = 0; x < acat.n_obj() && match; ++x)
                match = p.sq.inject(out.fc.objects[i].ob(x),
                                    out.fc.objects[j].ob(x),
                                    out.fc.objects[mid].ob(x),
                                    fam[mid][j][be][x],
                                    fam[i][mid][al][x]) == target[x];
              if (match) {
                int cand = sqp.inject(i, j, mid, be, al);
                if (std::find(candidates.begin(), candidates.end(), cand) ==
                    candidates.end())
                  candidates.push_back(cand);
              }
            }
        if (candidates.size() != 1) {
          out.structure_ok = false;
          delta_p.comp[i][j][e] = candidates.empty() ? 0 : candidates[0];
        } else {
          delta_p.comp[i][j][e] = candidates[0];
        }
      }
    }
  }
  out.gamma_power.gamma = gp;
  out.gamma_power.eps = eps_p;
  out.gamma_power.sq = sqp;
  out.gamma_power.delta = delta_p;
  if (out.structure_ok)
    out.structure_ok = out.gamma_power.validate().empty();

  if (out.structure_ok) {
    GammaAlgCat lhs = build_gamma_algebras(out.gamma_power);
    GammaAlgCat cg = build_gamma_algebras(p);
    auto rhs = fincat::functor_category(a, cg.cat);
    bool verdict = lhs.algebras.size() == rhs.objects.size();
    std::vector<Id> map(rhs.objects.size(), kNone);
    for (size_t r = 0; r < rhs.objects.size() && verdict; ++r) {
      const Functor& phi = rhs.objects[r];
      Functor under = fincat::compose(cg.und, phi);
      Id fidx = out.fc.find_object(under);
      if (fidx == kNone) {
        verdict = false;
        break;
      }
      std::vector<int> family(acat.n_obj());
      for (Id x = 0; x < acat.n_obj(); ++x)
        family[x] = cg.algebras[phi.ob(x)].coaction;
      int fe = find_family(fidx, fidx, family);
      Id alg = fe < 0 ? kNone : lhs.find_algebra(fidx, fe);
      if (alg == kNone) verdict = false;
      map[r] = alg;
    }
    if (verdict) {
      std::vector<int> seen(lhs.algebras.size(), 0);
      for (Id m : map) seen[m]++;
      for (int s : seen)
        if (s != 1) verdict = false;
    }
    if (verdict && rhs.cat->n_mor() != lhs.cat->n_mor()) verdict = false;
    out.verdict = verdict;
  }
  return out;
}

// ------------------------------------------------------- magmal procomonad

std::vector<std::string> MagmalProcomonad::validate() const {
  std::vector<std::string> bad;
  for (auto& m : pro.validate()) bad.push_back(m);
  if (!bad.empty()) return bad;
  const auto& b = *c.base;
  const Profunctor& g = pro.gamma;
  // shapes
  for (Id d = 0; d < b.n_obj(); ++d)
    for (Id dp = 0; dp < b.n_obj(); ++dp)
      for (Id cc = 0; cc < b.n_obj(); ++cc)
        for (Id cp = 0; cp < b.n_obj(); ++cp) {
          if (static_cast<int>(m2[d][dp][cc][cp].size()) !=
              g.size[d][cc] * g.size[dp][cp])
            return {"m2 table has wrong size"};
          for (int e : m2[d][dp][cc][cp])
            if (e < 0 || e >= g.size[c.tob(d, dp)][c.tob(cc, cp)])
              return {"m2 out of range"};
        }
  // naturality in all four variables
  for (Id f = 0; f < b.n_mor(); ++f) {
    Id s = b.src(f), t = b.dst(f);
    for (Id dp = 0; dp < b.n_obj(); ++dp)
      for (Id cc = 0; cc < b.n_obj(); ++cc)
        for (Id cp = 0; cp < b.n_obj(); ++cp) {
          for (int e1 = 0; e1 < g.size[t][cc]; ++e1)
            for (int e2 = 0; e2 < g.size[dp][cp]; ++e2) {
              // contravariant in the first cod index
              int lhs = m2_at(s, dp, cc, cp, g.apply_l(f, cc, e1), e2);
              int rhs = g.apply_l(c.tmor(f, b.id(dp)), c.tob(cc, cp),
                                  m2_at(t, dp, cc, cp, e1, e2));
              if (lhs != rhs) {
                bad.push_back("m2 not natural (first contravariant)");
                goto done;
              }
            }
          for (int e1 = 0; e1 < g.size[dp][cc]; ++e1)
            for (int e2 = 0; e2 < g.size[t][cp]; ++e2) {
              int lhs = m2_at(dp, s, cc, cp, e1, g.apply_l(f, cp, e2));
              int rhs = g.apply_l(c.tmor(b.id(dp), f), c.tob(cc, cp),
                                  m2_at(dp, t, cc, cp, e1, e2));
              if (lhs != rhs) {
                bad.push_back("m2 not natural (second contravariant)");
                goto done;
              }
            }
          for (int e1 = 0; e1 < g.size[dp][s]; ++e1)
            for (int e2 = 0; e2 < g.size[cc][cp]; ++e2) {
              int lhs = m2_at(dp, cc, t, cp, g.apply_r(f, dp, e1), e2);
              int rhs = g.apply_r(c.tmor(f, b.id(cp)), c.tob(dp, cc),
                                  m2_at(dp, cc, s, cp, e1, e2));
              if (lhs != rhs) {
                bad.push_back("m2 not natural (first covariant)");
                goto done;
              }
            }
          for (int e1 = 0; e1 < g.size[dp][cc]; ++e1)
            for (int e2 = 0; e2 < g.size[cp][s]; ++e2) {
              int lhs = m2_at(dp, cp, cc, t, e1, g.apply_r(f, cp, e2));
              int rhs = g.apply_r(c.tmor(b.id(cc), f), c.tob(dp, cp),
                                  m2_at(dp, cp, cc, s, e1, e2));
              if (lhs != rhs) {
                bad.push_back("m2 not natural (second covariant)");
                goto done;
              }
            }
        }
  }
done:
  if (!bad.empty()) return bad;
  // eps and delta magmal
  for (Id d = 0; d < b.n_obj(); ++d)
    for (Id dp = 0; dp < b.n_obj(); ++dp)
      for (Id cc = 0; cc < b.n_obj(); ++cc)
        for (Id cp = 0; cp < b.n_obj(); ++cp)
          for (int e1 = 0; e1 < g.size[d][cc]; ++e1)
            for (int e2 = 0; e2 < g.size[dp][cp]; ++e2) {
              int me = m2_at(d, dp, cc, cp, e1, e2);
              Id l = b.hom(c.tob(d, dp), c.tob(cc, cp))
                         [pro.eps.comp[c.tob(d, dp)][c.tob(cc, cp)][me]];
              Id r = c.tmor(b.hom(d, cc)[pro.eps.comp[d][cc][e1]],
                            b.hom(dp, cp)[pro.eps.comp[dp][cp][e2]]);
              if (l != r) {
                bad.push_back("eps not magmal");
                goto done2;
              }
              // δ(m2(γ,γ')) must contain the rep (x⊗x', m2 of legs)
              int dm = pro.delta.comp[c.tob(d, dp)][c.tob(cc, cp)][me];
              bool ok = false;
              auto reps1 = class_reps(pro.sq.cells[d][cc],
                                      pro.delta.comp[d][cc][e1]);
              auto reps2 = class_reps(pro.sq.cells[dp][cp],
                                      pro.delta.comp[dp][cp][e2]);
              for (auto& t1 : reps1)
                for (auto& t2 : reps2)
                  if (pro.sq.inject(c.tob(d, dp), c.tob(cc, cp),
                                    c.tob(t1.b, t2.b),
                                    m2_at(t1.b, t2.b, cc, cp, t1.m, t2.m),
                                    m2_at(d, dp, t1.b, t2.b, t1.n, t2.n)) ==
                      dm) {
                    ok = true;
                    break;
                  }
              if (!ok) {
                bad.push_back("delta not magmal");
                goto done2;
              }
            }
done2:
  return bad;
}

namespace {

MagmalProcomonad wrap_magmal(const MagmalCategory& c, Procomonad pro,
                             const std::function<int(Id, Id, Id, Id, int, int)>&
                                 mk) {
  MagmalProcomonad g;
  g.c = c;
  g.pro = std::move(pro);
  const auto& b = *c.base;
  const auto& gm = g.pro.gamma;
  g.m2.resize(b.n_obj());
  for (Id d = 0; d < b.n_obj(); ++d) {
    g.m2[d].resize(b.n_obj());
    for (Id dp = 0; dp < b.n_obj(); ++dp) {
      g.m2[d][dp].resize(b.n_obj());
      for (Id cc = 0; cc < b.n_obj(); ++cc) {
        g.m2[d][dp][cc].resize(b.n_obj());
        for (Id cp = 0; cp < b.n_obj(); ++cp) {
          auto& v = g.m2[d][dp][cc][cp];
          v.resize(static_cast<size_t>(gm.size[d][cc]) * gm.size[dp][cp]);
          for (int e1 = 0; e1 < gm.size[d][cc]; ++e1)
            for (int e2 = 0; e2 < gm.size[dp][cp]; ++e2)
              v[e1 * gm.size[dp][cp] + e2] = mk(d, dp, cc, cp, e1, e2);
        }
      }
    }
  }
  auto bad = g.validate();
  if (!bad.empty())
    throw Error("LawViolation", "magmal procomonad: " + bad[0]);
  return g;
}

}  // namespace

MagmalProcomonad magmal_hom_procomonad(const MagmalCategory& c) {
  Procomonad pro = hom_procomonad(c.base);
  const auto& b = *c.base;
  return wrap_magmal(c, pro, [&](Id d, Id dp, Id cc, Id cp, int e1, int e2) {
    Id f = b.hom(d, cc)[e1];
    Id fp = b.hom(dp, cp)[e2];
    return hom_pos(b, c.tob(d, dp), c.tob(cc, cp), c.tmor(f, fp));
  });
}

MagmalProcomonad magmal_gamma_from_comonad(const magmal::MagmalComonad& g) {
  const MagmalCategory& c = g.carrier();
  const auto& b = *c.base;
  Procomonad pro = gamma_from_comonad(g);
  return wrap_magmal(c, pro, [&](Id d, Id dp, Id cc, Id cp, int e1, int e2) {
    Id f = b.hom(d, g.g.ob(cc))[e1];
    Id fp = b.hom(dp, g.g.ob(cp))[e2];
    Id comp = b.compose(g.g.s2[cc][cp], c.tmor(f, fp));
    return hom_pos(b, c.tob(d, dp), g.g.ob(c.tob(cc, cp)), comp);
  });
}

MagmalProcomonad magmal_gamma_from_monad(const em::OpmagmalMonad& t) {
  const MagmalCategory& c = t.carrier;
  const auto& b = *c.base;
  Procomonad pro = gamma_from_monad(t);
  return wrap_magmal(c, pro, [&](Id d, Id dp, Id cc, Id cp, int e1, int e2) {
    Id f = b.hom(t.t.ob(d), cc)[e1];
    Id fp = b.hom(t.t.ob(dp), cp)[e2];
    Id comp = b.compose(c.tmor(f, fp), t.t2[d][dp]);
    return hom_pos(b, t.t.ob(c.tob(d, dp)), c.tob(cc, cp), comp);
  });
}

bool m2_presentations_consistent(const MagmalProcomonad& g) {
  const auto& b = *g.c.base;
  const Profunctor& gm = g.pro.gamma;
  // M₂^{D''} : ∫^{d,d'} Γ(d,C)⊗Γ(d',C')⊗hom(D'', d⊗d') → Γ(D'', C⊗C');
  // computed on every summand element; well-definedness = the map is constant
  // on the generated classes, checked through the generating relations, and
  // plugging h = id recovers M₂.
  for (Id cc = 0; cc < b.n_obj(); ++cc)
    for (Id cp = 0; cp < b.n_obj(); ++cp) {
      // generating relations in the first coend variable
      for (Id f = 0; f < b.n_mor(); ++f) {
        Id s = b.src(f), t = b.dst(f);
        for (Id dp = 0; dp < b.n_obj(); ++dp)
          for (Id dpp = 0; dpp < b.n_obj(); ++dpp)
            for (int e1 = 0; e1 < gm.size[t][cc]; ++e1)
              for (int e2 = 0; e2 < gm.size[dp][cp]; ++e2)
                for (Id h : b.hom(dpp, g.c.tob(s, dp))) {
                  int left = gm.apply_l(
                      h, g.c.tob(cc, cp),
                      g.m2_at(s, dp, cc, cp, gm.apply_l(f, cc, e1), e2));
                  int right = gm.apply_l(
                      b.compose(g.c.tmor(f, b.id(dp)), h), g.c.tob(cc, cp),
                      g.m2_at(t, dp, cc, cp, e1, e2));
                  if (left != right) return false;
                }
      }
      // recovery at the identity
      for (Id d = 0; d < b.n_obj(); ++d)
        for (Id dp = 0; dp < b.n_obj(); ++dp)
          for (int e1 = 0; e1 < gm.size[d][cc]; ++e1)
            for (int e2 = 0; e2 < gm.size[dp][cp]; ++e2)
              if (gm.apply_l(b.id(g.c.tob(d, dp)), g.c.tob(cc, cp),
                             g.m2_at(d, dp, cc, cp, e1, e2)) !=
                  g.m2_at(d, dp, cc, cp, e1, e2))
                return false;
    }
  // M₂ collapsed on the codomain side: recovery at the identity and
  // constancy along the generating relations
  for (Id d = 0; d < b.n_obj(); ++d)
    for (Id dp = 0; dp < b.n_obj(); ++dp)
      for (Id f = 0; f < b.n_mor(); ++f) {
        Id s = b.src(f), t = b.dst(f);
        for (Id cp = 0; cp < b.n_obj(); ++cp)
          for (int e1 = 0; e1 < gm.size[d][s]; ++e1)
            for (int e2 = 0; e2 < gm.size[dp][cp]; ++e2) {
              int left = g.m2_at(d, dp, t, cp, gm.apply_r(f, d, e1), e2);
              int right = gm.apply_r(g.c.tmor(f, b.id(cp)), g.c.tob(d, dp),
                                     g.m2_at(d, dp, s, cp, e1, e2));
              if (left != right) return false;
            }
      }
  return true;
}

MagmalGammaAlgCat build_magmal_gamma_algebras(const MagmalProcomonad& g) {
  MagmalGammaAlgCat out;
  out.plain = build_gamma_algebras(g.pro);
  const auto& b = *g.c.base;
  const int n = static_cast<int>(out.plain.algebras.size());
  auto prod = fincat::product_category(out.plain.cat, out.plain.cat);
  Functor tensor;
  tensor.dom = prod.prod;
  tensor.cod = out.plain.cat;
  tensor.obj_map.resize(prod.prod->n_obj());
  tensor.mor_map.resize(prod.prod->n_mor());
  for (Id q = 0; q < prod.prod->n_obj(); ++q) {
    const auto& ai = out.plain.algebras[prod.ob_left(q)];
    const auto& aj = out.plain.algebras[prod.ob_right(q)];
    Id carrier = g.c.tob(ai.carrier, aj.carrier);
    int coact = g.m2_at(ai.carrier, aj.carrier, ai.carrier, aj.carrier,
                        ai.coaction, aj.coaction);
    Id obj = out.plain.find_algebra(carrier, coact);
    if (obj == kNone)
      throw Error("LawViolation", "tensor of Γ-algebras is not an algebra");
    tensor.obj_map[q] = obj;
  }
  for (Id m = 0; m < prod.prod->n_mor(); ++m) {
    Id f = out.plain.base_mor[prod.mor_left(m)];
    Id h = out.plain.base_mor[prod.mor_right(m)];
    Id lifted = out.plain.lift_mor(tensor.obj_map[prod.prod->src(m)],
                                   tensor.obj_map[prod.prod->dst(m)],
                                   g.c.tmor(f, h));
    if (lifted == kNone)
      throw Error("LawViolation", "tensor of Γ-algebra morphisms not a map");
    tensor.mor_map[m] = lifted;
  }
  out.cat = magmal::make_magmal(out.plain.cat, tensor, prod);
  out.und.dom = out.cat;
  out.und.cod = g.c;
  out.und.underlying = out.plain.und;
  out.und.s2.assign(n, std::vector<Id>(n));
  for (Id i = 0; i < n; ++i)
    for (Id j = 0; j < n; ++j)
      out.und.s2[i][j] = b.id(g.c.tob(out.plain.algebras[i].carrier,
                                      out.plain.algebras[j].carrier));
  {
    auto bad = out.und.validate();
    if (!bad.empty()) throw Error("LawViolation", "und (magmal Γ): " + bad[0]);
  }
  return out;
}

// ------------------------------------------------------------------- Γ̄

BarApplied bar_apply(const MagmalProcomonad& g, const Presheaf& f) {
  return {prof::bar(g.pro.gamma, f)};
}

PshMor bar_eps(const MagmalProcomonad& g, const Presheaf& f,
               const BarApplied& gf) {
  const auto& b = *g.c.base;
  PshMor r;
  r.comp.resize(b.n_obj());
  for (Id x = 0; x < b.n_obj(); ++x) {
    const auto& cell = gf.res.witness.cells[x][0];
    r.comp[x].resize(cell.classes());
    for (int k = 0; k < cell.classes(); ++k) {
      auto t = cell.decode(cell.rep[k]);
      Id arrow = b.hom(x, t.b)[g.pro.eps.comp[x][t.b][t.n]];
      r.comp[x][k] = f.apply(arrow, t.m);
    }
  }
  return r;
}

PshMor bar_delta(const MagmalProcomonad& g, const Presheaf& f,
                 const BarApplied& gf, const BarApplied& ggf) {
  const auto& b = *g.c.base;
  PshMor r;
  r.comp.resize(b.n_obj());
  for (Id x = 0; x < b.n_obj(); ++x) {
    const auto& cell = gf.res.witness.cells[x][0];
    r.comp[x].resize(cell.classes());
    for (int k = 0; k < cell.classes(); ++k) {
      auto t = cell.decode(cell.rep[k]);
      int dcls = g.pro.delta.comp[x][t.b][t.n];
      auto reps = class_reps(g.pro.sq.cells[x][t.b], dcls);
      const auto& u = reps.front();
      int inner = gf.res.witness.inject(u.b, 0, t.b, t.m, u.m);
      r.comp[x][k] = ggf.res.witness.inject(x, 0, u.b, inner, u.n);
    }
  }
  return r;
}

bool bar_comonad_laws(const MagmalProcomonad& g, const Presheaf& f) {
  const auto& b = *g.c.base;
  BarApplied gf = bar_apply(g, f);
  BarApplied ggf = bar_apply(g, gf.res.p);
  PshMor eps_f = bar_eps(g, f, gf);
  PshMor eps_gf = bar_eps(g, gf.res.p, ggf);
  PshMor delta_f = bar_delta(g, f, gf, ggf);
  if (!prof::validate_pshmor(gf.res.p, f, eps_f).empty()) return false;
  if (!prof::validate_pshmor(gf.res.p, ggf.res.p, delta_f).empty())
    return false;
  // Γ̄(ε_F)∘δ = id and ε_{Γ̄F}∘δ = id
  for (Id x = 0; x < b.n_obj(); ++x)
    for (int e = 0; e < gf.res.p.size[x]; ++e) {
      int d = delta_f.comp[x][e];
      auto t = ggf.res.witness.cells[x][0].decode(
          ggf.res.witness.cells[x][0].rep[d]);
      // Γ̄(ε_F): (u, ξ', γ2) ↦ (u, ε_F(ξ'), γ2)
      int via_inner = gf.res.witness.inject(
          x, 0, t.b, eps_f.comp[t.b][t.m], t.n);
      if (via_inner != e) return false;
      if (eps_gf.comp[x][d] != e) return false;
    }
  // coassociativity on this presheaf
  BarApplied gggf = bar_apply(g, ggf.res.p);
  PshMor delta_gf = bar_delta(g, gf.res.p, ggf, gggf);
  for (Id x = 0; x < b.n_obj(); ++x)
    for (int e = 0; e < gf.res.p.size[x]; ++e) {
      int d = delta_f.comp[x][e];
      // route 1: δ_{Γ̄F} after δ
      int r1 = delta_gf.comp[x][d];
      // route 2: Γ̄(δ_F) after δ
      auto t = ggf.res.witness.cells[x][0].decode(
          ggf.res.witness.cells[x][0].rep[d]);
      int r2 = gggf.res.witness.inject(x, 0, t.b, delta_f.comp[t.b][t.m], t.n);
      if (r1 != r2) return false;
    }
  return true;
}

namespace {

// Γ̄₂ on one Day class: day(Γ̄F, Γ̄F')(w) → Γ̄(F∗F')(w)
int gbar2_class(const MagmalProcomonad& g, const Presheaf& f,
                const Presheaf& f2, const BarApplied& gf,
                const BarApplied& gf2, const prof::DayResult& day_lhs,
                const prof::DayResult& day_rhs, const BarApplied& bar_rhs,
                Id w, int cls) {
  const auto& b = *g.c.base;
  auto t = day_lhs.witness.cells[w][0].decode(day_lhs.witness.cells[w][0].rep[cls]);
  Id x = g.c.prod.ob_left(t.b), y = g.c.prod.ob_right(t.b);
  int gy = day_lhs.g_size[y];
  int xi = gy == 0 ? 0 : t.m / gy, psi = gy == 0 ? 0 : t.m % gy;
  Id h = b.hom(w, g.c.tob(x, y))[t.n];
  auto tx = gf.res.witness.cells[x][0].decode(gf.res.witness.cells[x][0].rep[xi]);
  auto ty = gf2.res.witness.cells[y][0].decode(gf2.res.witness.cells[y][0].rep[psi]);
  // (u, fx, γ) and (v, fy, γ'): target ((F∗F')(u⊗v)-elt, Γ₂(γ,γ') acted by h)
  Id uv = g.c.tob(tx.b, ty.b);
  int w_elt = day_rhs.inject(uv, tx.b, ty.b, b.id(uv), tx.m, ty.m);
  int gamma2 = g.pro.gamma.apply_l(h, uv,
                                   g.m2_at(x, y, tx.b, ty.b, tx.n, ty.n));
  return bar_rhs.res.witness.inject(w, 0, uv, w_elt, gamma2);
}

}  // namespace

bool bar_magmal_laws(const MagmalProcomonad& g, const Presheaf& f,
                     const Presheaf& f2) {
  const auto& b = *g.c.base;
  BarApplied gf = bar_apply(g, f);
  BarApplied gf2 = bar_apply(g, f2);
  prof::DayResult lhs = prof::day_convolution(g.c, gf.res.p, gf2.res.p);
  prof::DayResult rhs_day = prof::day_convolution(g.c, f, f2);
  BarApplied bar_rhs = bar_apply(g, rhs_day.p);
  // Γ̄₂ must be well-defined (constant on classes; checked by recomputation
  // over all representatives) and natural; eps/delta magmality on these cells
  for (Id w = 0; w < b.n_obj(); ++w) {
    const auto& cell = lhs.witness.cells[w][0];
    for (int cls = 0; cls < cell.classes(); ++cls) {
      int value = gbar2_class(g, f, f2, gf, gf2, lhs, rhs_day, bar_rhs, w, cls);
      // well-definedness across every representative
      for (int flat = 0; flat < static_cast<int>(cell.cls.size()); ++flat)
        if (cell.cls[flat] == cls) {
          // recompute from this representative by re-injecting
          auto t = cell.decode(flat);
          Id x = g.c.prod.ob_left(t.b), y = g.c.prod.ob_right(t.b);
          int gy = lhs.g_size[y];
          int xi = gy == 0 ? 0 : t.m / gy, psi = gy == 0 ? 0 : t.m % gy;
          Id h = b.hom(w, g.c.tob(x, y))[t.n];
          auto tx = gf.res.witness.cells[x][0].decode(
              gf.res.witness.cells[x][0].rep[xi]);
          auto ty = gf2.res.witness.cells[y][0].decode(
              gf2.res.witness.cells[y][0].rep[psi]);
          Id uv = g.c.tob(tx.b, ty.b);
          int w_elt = rhs_day.inject(uv, tx.b, ty.b, b.id(uv), tx.m, ty.m);
          int gamma2 = g.pro.gamma.apply_l(
              h, uv, g.m2_at(x, y, tx.b, ty.b, tx.n, ty.n));
          if (bar_rhs.res.witness.inject(w, 0, uv, w_elt, gamma2) != value)
            return false;
        }
      // counit magmality: ε(Γ̄₂(s)) = day(ε,ε)(s)
      PshMor eps_l = bar_eps(g, rhs_day.p, bar_rhs);
      PshMor eps_f_m = bar_eps(g, f, gf);
      PshMor eps_f2_m = bar_eps(g, f2, gf2);
      PshMor pair = prof::day_map(lhs, rhs_day, eps_f_m, eps_f2_m);
      if (eps_l.comp[w][value] != pair.comp[w][cls]) return false;
    }
  }
  return true;
}

bool bar_representable_identities(const MagmalProcomonad& g) {
  const auto& b = *g.c.base;
  for (Id y = 0; y < b.n_obj(); ++y) {
    BarApplied by = bar_apply(g, prof::yoneda(g.c.base, y));
    // (Γ̄ yo Y)X ≅ Γ(X,Y) via (b, f : b→Y, γ) ↦ Γ(1,f)(γ)
    for (Id x = 0; x < b.n_obj(); ++x) {
      if (by.res.p.size[x] != g.pro.gamma.size[x][y]) return false;
      std::vector<char> hit(g.pro.gamma.size[x][y], 0);
      for (int e = 0; e < by.res.p.size[x]; ++e) {
        auto t = by.res.witness.cells[x][0].decode(
            by.res.witness.cells[x][0].rep[e]);
        Id arrow = b.hom(t.b, y)[t.m];
        int v = g.pro.gamma.apply_r(arrow, x, t.n);
        if (hit[v]) return false;
        hit[v] = 1;
      }
    }
  }
  // Γ̄₂ on a pair of representables matches Γ₂ under the Yoneda isos
  for (Id y = 0; y < b.n_obj(); ++y)
    for (Id z = 0; z < b.n_obj(); ++z) {
      Presheaf fy = prof::yoneda(g.c.base, y);
      Presheaf fz = prof::yoneda(g.c.base, z);
      BarApplied gy = bar_apply(g, fy);
      BarApplied gz = bar_apply(g, fz);
      prof::DayResult lhs = prof::day_convolution(g.c, gy.res.p, gz.res.p);
      prof::DayResult rhs_day = prof::day_convolution(g.c, fy, fz);
      BarApplied bar_rhs = bar_apply(g, rhs_day.p);
      for (Id w = 0; w < b.n_obj(); ++w) {
        const auto& cell = lhs.witness.cells[w][0];
        for (int cls = 0; cls < cell.classes(); ++cls) {
          int value =
              gbar2_class(g, fy, fz, gy, gz, lhs, rhs_day, bar_rhs, w, cls);
          // collapse both sides to Γ(w, y⊗z) and compare with m2
          auto t = cell.decode(cell.rep[cls]);
          Id x = g.c.prod.ob_left(t.b), y2 = g.c.prod.ob_right(t.b);
          int gyv = lhs.g_size[y2];
          int xi = gyv == 0 ? 0 : t.m / gyv, psi = gyv == 0 ? 0 : t.m % gyv;
          Id h = b.hom(w, g.c.tob(x, y2))[t.n];
          auto tx = gy.res.witness.cells[x][0].decode(
              gy.res.witness.cells[x][0].rep[xi]);
          auto ty = gz.res.witness.cells[y2][0].decode(
              gz.res.witness.cells[y2][0].rep[psi]);
          int gam1 = g.pro.gamma.apply_r(b.hom(tx.b, y)[tx.m], x, tx.n);
          int gam2 = g.pro.gamma.apply_r(b.hom(ty.b, z)[ty.m], y2, ty.n);
          int expected = g.pro.gamma.apply_l(
              h, g.c.tob(y, z), g.m2_at(x, y2, y, z, gam1, gam2));
          // collapse `value` ∈ Γ̄(yoY∗yoZ)(w) through yoY∗yoZ ≅ yo(y⊗z)
          auto tv = bar_rhs.res.witness.cells[w][0].decode(
              bar_rhs.res.witness.cells[w][0].rep[value]);
          auto tw = rhs_day.witness.cells[tv.b][0].decode(
              rhs_day.witness.cells[tv.b][0].rep[tv.m]);
          Id xu = g.c.prod.ob_left(tw.b), yv = g.c.prod.ob_right(tw.b);
          int gyy = rhs_day.g_size[yv];
          int xi2 = gyy == 0 ? 0 : tw.m / gyy, psi2 = gyy == 0 ? 0 : tw.m % gyy;
          Id harr = b.hom(tv.b, g.c.tob(xu, yv))[tw.n];
          Id farr = b.hom(xu, y)[xi2];
          Id garr = b.hom(yv, z)[psi2];
          Id collapse = b.compose(g.c.tmor(farr, garr), harr);
          int got = g.pro.gamma.apply_r(collapse, w, tv.n);
          if (got != expected) return false;
        }
      }
    }
  return true;
}

// ------------------------------------------------------------------ fusion

namespace {

// the coend ∫^U C(U⊗Y,Z)⊗Γ(X,U) as a one-cell composite
Composite fusion_source(const MagmalProcomonad& g, Id x, Id y, Id z) {
  const auto& b = *g.c.base;
  // M : 𝕀 ↛ C, value(u,*) = C(u⊗y, z) (contravariant in u)
  Presheaf m;
  m.base = g.c.base;
  m.size.resize(b.n_obj());
  for (Id u = 0; u < b.n_obj(); ++u)
    m.size[u] = static_cast<int>(b.hom(g.c.tob(u, y), z).size());
  m.act.resize(b.n_mor());
  for (Id f = 0; f < b.n_mor(); ++f) {
    Id u = b.src(f), u2 = b.dst(f);
    for (Id h : b.hom(g.c.tob(u2, y), z))
      m.act[f].push_back(hom_pos(b, g.c.tob(u, y), z,
                                 b.compose(h, g.c.tmor(f, b.id(y)))));
  }
  // N : C ↛ 𝕀, value(*,u) = Γ(x,u) (covariant in u)
  Profunctor n;
  n.dom = g.c.base;
  n.cod = prof::unit_category();
  n.size.resize(1);
  n.size[0].resize(b.n_obj());
  for (Id u = 0; u < b.n_obj(); ++u) n.size[0][u] = g.pro.gamma.size[x][u];
  n.lact.resize(1);
  n.lact[0].resize(b.n_obj());
  for (Id u = 0; u < b.n_obj(); ++u) {
    n.lact[0][u].resize(n.size[0][u]);
    std::iota(n.lact[0][u].begin(), n.lact[0][u].end(), 0);
  }
  n.ract.resize(b.n_mor());
  for (Id f = 0; f < b.n_mor(); ++f)
    n.ract[f] = {g.pro.gamma.ract[f][x]};
  return prof::compose_prof(prof::as_profunctor(m), n);
}

}  // namespace

GammaFusion gamma_fusion(const MagmalProcomonad& g,
                         const magmal::CloakTable& cloaks, Id x,
                         const GammaAlgebra& ya, Id z) {
  const auto& b = *g.c.base;
  Id y = ya.carrier;
  GammaFusion out;
  out.source = fusion_source(g, x, y, z);
  const auto& cell = out.source.cells[0][0];
  Id xy = g.c.tob(x, y);
  out.map.resize(cell.classes());
  for (int cls = 0; cls < cell.classes(); ++cls) {
    bool first = true;
    for (auto& t : class_reps(cell, cls)) {
      Id u = t.b;
      Id f = b.hom(g.c.tob(u, y), z)[t.m];
      int val = g.pro.gamma.apply_r(f, xy,
                                    g.m2_at(x, y, u, y, t.n, ya.coaction));
      if (first) {
        out.map[cls] = val;
        first = false;
      } else if (out.map[cls] != val) {
        throw Error("LawViolation", "fusion map not constant on classes");
      }
    }
  }
  {
    std::vector<char> hit(g.pro.gamma.size[xy][z], 0);
    out.invertible = cell.classes() == g.pro.gamma.size[xy][z];
    for (int v : out.map) {
      if (v < 0 || hit[v]) out.invertible = false;
      else hit[v] = 1;
    }
    if (cell.classes() == 0 && g.pro.gamma.size[xy][z] == 0)
      out.invertible = true;
  }

  if (cloaks.at[y][z]) {
    out.has_cloaked = true;
    const magmal::Cloak& k = *cloaks.at[y][z];
    out.cloaked_map.resize(g.pro.gamma.size[x][k.hom_obj]);
    for (int e = 0; e < g.pro.gamma.size[x][k.hom_obj]; ++e)
      out.cloaked_map[e] = g.pro.gamma.apply_r(
          k.ev, xy, g.m2_at(x, y, k.hom_obj, y, e, ya.coaction));
    std::vector<char> hit(g.pro.gamma.size[xy][z], 0);
    out.cloaked_invertible =
        static_cast<int>(out.cloaked_map.size()) == g.pro.gamma.size[xy][z];
    for (int v : out.cloaked_map) {
      if (hit[v]) out.cloaked_invertible = false;
      else hit[v] = 1;
    }
    // canonical iso source ≅ Γ(X,[Y,Z]) and agreement of the two variants
    out.variants_agree = cell.classes() == g.pro.gamma.size[x][k.hom_obj];
    if (out.variants_agree) {
      std::vector<char> hit2(g.pro.gamma.size[x][k.hom_obj], 0);
      for (int cls = 0; cls < cell.classes() && out.variants_agree; ++cls) {
        auto t = cell.decode(cell.rep[cls]);
        Id f = b.hom(g.c.tob(t.b, y), z)[t.m];
        Id ftilde = magmal::transpose(g.c, k, t.b, f);
        int img = g.pro.gamma.apply_r(ftilde, x, t.n);
        if (hit2[img]) {
          out.variants_agree = false;
          break;
        }
        hit2[img] = 1;
        if (out.cloaked_map[img] != out.map[cls]) out.variants_agree = false;
      }
    }
  }
  return out;
}

HopfAtReport hopf_at(const MagmalProcomonad& g,
                     const magmal::CloakTable& cloaks, const GammaAlgebra& ya,
                     bool with_l511,
                     const std::vector<prof::Presheaf>& tests) {
  const auto& b = *g.c.base;
  HopfAtReport rep;
  const int n = b.n_obj();
  std::vector<char> ok(static_cast<size_t>(n) * n, 0);
  par::parallel_for(n * n, [&](int i) {
    Id x = i / n, z = i % n;
    ok[i] = gamma_fusion(g, cloaks, x, ya, z).invertible;
  });
  for (int i = 0; i < n * n; ++i)
    if (!ok[i]) rep.failures.emplace_back(i / n, i % n);
  rep.hopf = rep.failures.empty();

  if (!with_l511) return rep;
  for (Id z = 0; z < n; ++z)
    if (!cloaks.at[ya.carrier][z])
      throw Error("MissingCloak", "L5.11 needs [Y,z] for all z");

  // Wood fusion of Γ̄ at the representable coalgebra, over the test set
  Id y = ya.carrier;
  Presheaf h = prof::yoneda(g.c.base, y);
  bool all_inv = true;
  for (const auto& k : tests) {
    prof::PshCloak hk = prof::presheaf_cloak(g.c, h, k);
    BarApplied ghk = bar_apply(g, hk.p);
    BarApplied gk = bar_apply(g, k);
    prof::PshCloak hgk = prof::presheaf_cloak(g.c, h, gk.res.p);
    // w(ξ)_v(α) = Γ̄(ev)(Γ̄₂((ξ, ρ(α)) at id))
    BarApplied gh = bar_apply(g, h);
    prof::DayResult mixed = prof::day_convolution(g.c, ghk.res.p, gh.res.p);
    prof::DayResult rhs_day = prof::day_convolution(g.c, hk.p, h);
    BarApplied bar_rhs = bar_apply(g, rhs_day.p);
    for (Id xx = 0; xx < n && all_inv; ++xx) {
      if (ghk.res.p.size[xx] != hgk.p.size[xx]) {
        all_inv = false;
        break;
      }
      std::vector<char> hit(hgk.p.size[xx], 0);
      for (int xi = 0; xi < ghk.res.p.size[xx]; ++xi) {
        // build the family v ↦ (H(v) → Γ̄K(x⊗v))
        std::vector<std::vector<int>> family(n);
        for (Id v = 0; v < n; ++v) {
          family[v].resize(h.size[v]);
          for (int al = 0; al < h.size[v]; ++al) {
            Id xv = g.c.tob(xx, v);
            // ρ(α) ∈ Γ̄H(v): class of (y, id_y, Γ(α,1)(υ))
            Id alpha = b.hom(v, y)[al];
            int rho = gh.res.witness.inject(
                v, 0, y, hom_pos(b, y, y, b.id(y)),
                g.pro.gamma.apply_l(alpha, y, ya.coaction));
            int cls = mixed.inject(xv, xx, v, b.id(xv), xi, rho);
            int g2 = gbar2_class(g, hk.p, h, ghk, gh, mixed, rhs_day, bar_rhs,
                                 xv, cls);
            // Γ̄(ev): Γ̄(HK∗H) ⇒ Γ̄K
            auto tv = bar_rhs.res.witness.cells[xv][0].decode(
                bar_rhs.res.witness.cells[xv][0].rep[g2]);
            family[v][al] = gk.res.witness.inject(
                xv, 0, tv.b, hk.ev.comp[tv.b][tv.m], tv.n);
          }
        }
        int found = -1;
        for (size_t j = 0; j < hgk.family[xx].size(); ++j)
          if (hgk.family[xx][j] == family) {
            found = static_cast<int>(j);
            break;
          }
        if (found < 0 || hit[found]) {
          all_inv = false;
          break;
        }
        hit[found] = 1;
      }
    }
    if (!all_inv) break;
  }
  rep.l511_checked = true;
  rep.l511_consistent = all_inv == rep.hopf;
  return rep;
}

OmegaReport omega_and_theorem(const MagmalProcomonad& g,
                              const magmal::CloakTable& cloaks,
                              const GammaAlgebra& ya, const GammaAlgebra& za) {
  const auto& b = *g.c.base;
  Id y = ya.carrier, z = za.carrier;
  for (Id zz = 0; zz < b.n_obj(); ++zz)
    if (!cloaks.at[y][zz])
      throw Error("MissingCloak", "T5.12 needs [Y,z] for all z");
  OmegaReport rep;
  HopfAtReport hopf = hopf_at(g, cloaks, ya, false, {});
  rep.hopf = hopf.hopf;

  MagmalGammaAlgCat alg = build_magmal_gamma_algebras(g);
  Id ya_idx = alg.plain.find_algebra(y, ya.coaction);
  rep.creation_side = true;
  for (Id ez = 0; ez < static_cast<Id>(alg.plain.algebras.size()); ++ez)
    if (!em::creation_check(alg.und, cloaks, ya_idx, ez).created) {
      rep.creation_side = false;
      break;
    }
  rep.iff_holds = rep.hopf == rep.creation_side;

  if (!rep.hopf) return rep;  // construction half needs Hopf

  const magmal::Cloak& k = *cloaks.at[y][z];
  auto fusion = gamma_fusion(g, cloaks, k.hom_obj, ya, z);
  if (!fusion.has_cloaked || !fusion.cloaked_invertible)
    throw Error("NotHopf", "cloaked fusion at [Y,Z] is not invertible");
  // ω: unique solution of w(ω) = Γ(ev,1)(ζ)
  int target = g.pro.gamma.apply_l(k.ev, z, za.coaction);
  int omega = -1;
  // cloaked map at X = [Y,Z] sends Γ([Y,Z],[Y,Z]) → Γ([Y,Z]⊗Y, Z)
  for (int e = 0; e < g.pro.gamma.size[k.hom_obj][k.hom_obj]; ++e)
    if (fusion.cloaked_map[e] == target) {
      if (omega >= 0)
        throw Error("LawViolation", "omega square has two solutions");
      omega = e;
    }
  rep.omega_defined = omega >= 0;
  if (!rep.omega_defined)
    throw Error("LawViolation",
                "omega square unsolvable although fusion is invertible");
  rep.omega = omega;

  Id obj = alg.plain.find_algebra(k.hom_obj, omega);
  rep.is_algebra = obj != kNone;
  if (!rep.is_algebra)
    throw Error("LawViolation",
                "omega fails the Γ-algebra axioms (would falsify T5.12)");
  Id za_idx = alg.plain.find_algebra(z, za.coaction);
  Id ev_em = alg.plain.lift_mor(alg.cat.tob(obj, ya_idx), za_idx, k.ev);
  rep.is_cloak =
      ev_em != kNone && magmal::is_cloak(alg.cat, ya_idx, za_idx, obj, ev_em);
  return rep;
}

}  // namespace cloakforge::procomonad
