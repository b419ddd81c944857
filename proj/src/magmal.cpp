#include "cloakforge/magmal.hpp"

#include <algorithm>

#include "cloakforge/parallel.hpp"

namespace cloakforge::magmal {

using fincat::FinCategory;
using fincat::Functor;
using fincat::NatTrans;

std::vector<std::string> MagmalCategory::validate() const {
  std::vector<std::string> bad;
  if (!(tensor.dom == prod.prod) || !(tensor.cod == base))
    bad.push_back("tensor has wrong boundary");
  for (auto& m : tensor.validate()) bad.push_back("tensor: " + m);
  return bad;
}

MagmalCategory make_magmal(const CatPtr& base, const fincat::Functor& tensor,
                           const fincat::ProductIndex& prod) {
  MagmalCategory c{base, prod, tensor};
  auto bad = c.validate();
  if (!bad.empty()) throw Error("LawViolation", "magmal category: " + bad[0]);
  return c;
}

MagmalCategory meet_magmal(const fincat::Poset& p) {
  if (!p.is_lattice) throw Error("LawViolation", "meet tensor needs a lattice");
  auto prod = fincat::product_category(p.cat, p.cat);
  Functor t;
  t.dom = prod.prod;
  t.cod = p.cat;
  t.obj_map.resize(prod.prod->n_obj());
  t.mor_map.resize(prod.prod->n_mor());
  for (Id q = 0; q < prod.prod->n_obj(); ++q)
    t.obj_map[q] = p.meet[prod.ob_left(q)][prod.ob_right(q)];
  for (Id m = 0; m < prod.prod->n_mor(); ++m) {
    Id f = prod.mor_left(m), g = prod.mor_right(m);
    t.mor_map[m] = p.arrow[p.meet[p.cat->src(f)][p.cat->src(g)]]
                          [p.meet[p.cat->dst(f)][p.cat->dst(g)]];
  }
  return make_magmal(p.cat, t, prod);
}

MagmalCategory opposite_magmal(const MagmalCategory& c) {
  auto opbase = fincat::opposite(c.base);
  auto opprod = fincat::product_category(opbase, opbase);
  Functor t;
  t.dom = opprod.prod;
  t.cod = opbase;
  t.obj_map.resize(opprod.prod->n_obj());
  t.mor_map.resize(opprod.prod->n_mor());
  for (Id q = 0; q < opprod.prod->n_obj(); ++q)
    t.obj_map[q] = c.tob(opprod.ob_left(q), opprod.ob_right(q));
  for (Id m = 0; m < opprod.prod->n_mor(); ++m)
    t.mor_map[m] = c.tmor(opprod.mor_left(m), opprod.mor_right(m));
  return make_magmal(opbase, t, opprod);
}

// ------------------------------------------------------------------ cloaks

bool is_cloak(const MagmalCategory& c, Id y, Id z, Id hom_obj, Id ev) {
  const auto& b = *c.base;
  if (b.src(ev) != c.tob(hom_obj, y) || b.dst(ev) != z) return false;
  for (Id x = 0; x < b.n_obj(); ++x) {
    const auto& fs = b.hom(x, hom_obj);
    const auto& gs = b.hom(c.tob(x, y), z);
    if (fs.size() != gs.size()) return false;
    // injectivity of f ↦ ev∘(f⊗1) suffices at equal sizes
    std::vector<Id> seen;
    for (Id f : fs) {
      Id g = b.compose(ev, c.tmor(f, b.id(y)));
      if (std::find(seen.begin(), seen.end(), g) != seen.end()) return false;
      seen.push_back(g);
    }
  }
  return true;
}

std::optional<Cloak> find_cloak(const MagmalCategory& c, Id y, Id z) {
  const auto& b = *c.base;
  std::optional<Cloak> first;
  int passing = 0;
  for (Id h = 0; h < b.n_obj(); ++h)
    for (Id e : b.hom(c.tob(h, y), z))
      if (is_cloak(c, y, z, h, e)) {
        ++passing;
        if (!first) first = Cloak{y, z, h, e, 0};
      }
  if (first) first->passing_candidates = passing;
  return first;
}

const Cloak& CloakTable::require(Id y, Id z) const {
  if (!at[y][z])
    throw Error("MissingCloaks", "no cloak [" + std::to_string(y) + "," +
                                     std::to_string(z) + "]");
  return *at[y][z];
}

bool CloakTable::total_by(Id y) const {
  for (const auto& k : at[y])
    if (!k) return false;
  return true;
}

bool CloakTable::total() const {
  for (size_t y = 0; y < at.size(); ++y)
    if (!total_by(static_cast<Id>(y))) return false;
  return true;
}

CloakTable compute_cloaks(const MagmalCategory& c) {
  const int n = c.base->n_obj();
  CloakTable t;
  t.at.assign(n, std::vector<std::optional<Cloak>>(n));
  par::parallel_for(n * n, [&](int i) {
    Id y = i / n, z = i % n;
    t.at[y][z] = find_cloak(c, y, z);
  });
  return t;
}

CloakalReport is_left_cloakal(const CloakTable& t) {
  CloakalReport r;
  for (size_t y = 0; y < t.at.size(); ++y)
    for (size_t z = 0; z < t.at.size(); ++z)
      if (!t.at[y][z])
        r.missing.emplace_back(static_cast<Id>(y), static_cast<Id>(z));
  return r;
}

CloakalReport is_left_cloakal(const MagmalCategory& c) {
  return is_left_cloakal(compute_cloaks(c));
}

Id transpose(const MagmalCategory& c, const Cloak& k, Id x, Id g) {
  const auto& b = *c.base;
  for (Id f : b.hom(x, k.hom_obj))
    if (b.compose(k.ev, c.tmor(f, b.id(k.y))) == g) return f;
  throw Error("MissingCloaks", "transpose failed; not a cloak?");
}

Id untranspose(const MagmalCategory& c, const Cloak& k, Id f) {
  return c.base->compose(k.ev, c.tmor(f, c.base->id(k.y)));
}

Id ve_component(const MagmalCategory& c, const Cloak& k_of_xy, Id x) {
  return transpose(c, k_of_xy, x, c.base->id(c.tob(x, k_of_xy.y)));
}

Id cloak_post(const MagmalCategory& c, const Cloak& from, const Cloak& to,
              Id h) {
  // [1,h] = transpose of h∘ev_from
  return transpose(c, to, from.hom_obj, c.base->compose(h, from.ev));
}

Id cloak_pre(const MagmalCategory& c, const Cloak& from_by_yp,
             const Cloak& to_by_y, Id k) {
  // [k,1] = transpose of ev_from∘(1⊗k) : [y',z]⊗y → z
  const auto& b = *c.base;
  Id step = c.tmor(b.id(from_by_yp.hom_obj), k);
  return transpose(c, to_by_y, from_by_yp.hom_obj,
                   b.compose(from_by_yp.ev, step));
}

// ---------------------------------------------------------------- functors

std::vector<std::string> MagmalFunctor::validate() const {
  std::vector<std::string> bad;
  for (auto& m : underlying.validate()) bad.push_back("underlying: " + m);
  if (!(underlying.dom == dom.base) || !(underlying.cod == cod.base))
    bad.push_back("underlying functor has wrong boundary");
  if (!bad.empty()) return bad;
  const auto& b = *cod.base;
  const auto& d = *dom.base;
  if (static_cast<int>(s2.size()) != d.n_obj())
    return {"s2 table has wrong size"};
  for (Id x = 0; x < d.n_obj(); ++x) {
    if (static_cast<int>(s2[x].size()) != d.n_obj())
      return {"s2 table has wrong size"};
    for (Id y = 0; y < d.n_obj(); ++y) {
      Id m = s2[x][y];
      if (m < 0 || m >= b.n_mor() || b.src(m) != cod.tob(ob(x), ob(y)) ||
          b.dst(m) != ob(dom.tob(x, y)))
        bad.push_back("s2[" + d.obj_name(x) + "," + d.obj_name(y) +
                      "] has wrong endpoints");
    }
  }
  if (!bad.empty()) return bad;
  for (Id f = 0; f < d.n_mor(); ++f)
    for (Id g = 0; g < d.n_mor(); ++g) {
      Id lhs = b.compose(mor(dom.tmor(f, g)), s2[d.src(f)][d.src(g)]);
      Id rhs = b.compose(s2[d.dst(f)][d.dst(g)], cod.tmor(mor(f), mor(g)));
      if (lhs != rhs)
        bad.push_back("s2 not natural at (" + d.mor_name(f) + "," +
                      d.mor_name(g) + ")");
    }
  return bad;
}

bool MagmalFunctor::is_strong() const {
  for (const auto& row : s2)
    for (Id m : row)
      if (!fincat::two_sided_inverse(*cod.base, m)) return false;
  return true;
}

MagmalFunctor identity_magmal(const MagmalCategory& c) {
  MagmalFunctor f;
  f.dom = f.cod = c;
  f.underlying = fincat::identity_functor(c.base);
  f.s2.assign(c.base->n_obj(), std::vector<Id>(c.base->n_obj()));
  for (Id x = 0; x < c.base->n_obj(); ++x)
    for (Id y = 0; y < c.base->n_obj(); ++y)
      f.s2[x][y] = c.base->id(c.tob(x, y));
  return f;
}

MagmalFunctor compose(const MagmalFunctor& g, const MagmalFunctor& f) {
  MagmalFunctor r;
  r.dom = f.dom;
  r.cod = g.cod;
  r.underlying = fincat::compose(g.underlying, f.underlying);
  const auto& b = *g.cod.base;
  const int n = f.dom.base->n_obj();
  r.s2.assign(n, std::vector<Id>(n));
  for (Id x = 0; x < n; ++x)
    for (Id y = 0; y < n; ++y)
      r.s2[x][y] = b.compose(g.mor(f.s2[x][y]), g.s2[f.ob(x)][f.ob(y)]);
  return r;
}

std::optional<MagmalFunctor> strict_magmal(const MagmalCategory& dom,
                                           const MagmalCategory& cod,
                                           const fincat::Functor& u) {
  MagmalFunctor r;
  r.dom = dom;
  r.cod = cod;
  r.underlying = u;
  const int n = dom.base->n_obj();
  r.s2.assign(n, std::vector<Id>(n));
  for (Id x = 0; x < n; ++x)
    for (Id y = 0; y < n; ++y) {
      if (cod.tob(u.ob(x), u.ob(y)) != u.ob(dom.tob(x, y)))
        return std::nullopt;
      r.s2[x][y] = cod.base->id(u.ob(dom.tob(x, y)));
    }
  if (!r.validate().empty()) return std::nullopt;
  return r;
}

std::vector<std::string> check_magmal_nat(const MagmalFunctor& s,
                                          const MagmalFunctor& t,
                                          const fincat::NatTrans& theta) {
  std::vector<std::string> bad;
  for (auto& m : theta.validate()) bad.push_back("naturality: " + m);
  if (!bad.empty()) return bad;
  const auto& b = *s.cod.base;
  const auto& d = *s.dom.base;
  for (Id x = 0; x < d.n_obj(); ++x)
    for (Id y = 0; y < d.n_obj(); ++y) {
      Id lhs = b.compose(theta.at(s.dom.tob(x, y)), s.s2[x][y]);
      Id rhs = b.compose(t.s2[x][y], s.cod.tmor(theta.at(x), theta.at(y)));
      if (lhs != rhs)
        bad.push_back("magmality fails at (" + d.obj_name(x) + "," +
                      d.obj_name(y) + ")");
    }
  return bad;
}

// ---------------------------------------------------------------- comonads

std::vector<std::string> MagmalComonad::validate() const {
  std::vector<std::string> bad;
  for (auto& m : g.validate()) bad.push_back("G: " + m);
  if (!bad.empty()) return bad;
  const auto& b = *g.dom.base;
  const Functor& u = g.underlying;
  if (!(eps.dom == u) || !(eps.cod == fincat::identity_functor(g.dom.base)))
    bad.push_back("eps has wrong shape");
  if (!(delta.dom == u) || !(delta.cod == fincat::compose(u, u)))
    bad.push_back("delta has wrong shape");
  for (auto& m : eps.validate()) bad.push_back("eps: " + m);
  for (auto& m : delta.validate()) bad.push_back("delta: " + m);
  if (!bad.empty()) return bad;
  for (Id x = 0; x < b.n_obj(); ++x) {
    if (b.compose(eps.at(u.ob(x)), delta.at(x)) != b.id(u.ob(x)))
      bad.push_back("counit law (eps·G) fails at " + b.obj_name(x));
    if (b.compose(u.mor(eps.at(x)), delta.at(x)) != b.id(u.ob(x)))
      bad.push_back("counit law (G·eps) fails at " + b.obj_name(x));
    if (b.compose(delta.at(u.ob(x)), delta.at(x)) !=
        b.compose(u.mor(delta.at(x)), delta.at(x)))
      bad.push_back("coassociativity fails at " + b.obj_name(x));
  }
  for (Id x = 0; x < b.n_obj(); ++x)
    for (Id y = 0; y < b.n_obj(); ++y) {
      Id lhs = b.compose(eps.at(g.dom.tob(x, y)), g.s2[x][y]);
      Id rhs = g.dom.tmor(eps.at(x), eps.at(y));
      if (lhs != rhs)
        bad.push_back("eps not magmal at (" + b.obj_name(x) + "," +
                      b.obj_name(y) + ")");
      // (GG)₂ = G(G₂)∘G₂ at (Gx,Gy)
      Id gg2 = b.compose(u.mor(g.s2[x][y]), g.s2[u.ob(x)][u.ob(y)]);
      Id l2 = b.compose(delta.at(g.dom.tob(x, y)), g.s2[x][y]);
      Id r2 = b.compose(gg2, g.dom.tmor(delta.at(x), delta.at(y)));
      if (l2 != r2)
        bad.push_back("delta not magmal at (" + b.obj_name(x) + "," +
                      b.obj_name(y) + ")");
    }
  return bad;
}

std::optional<MagmalComonad> poset_comonad(const MagmalCategory& c,
                                           const std::vector<Id>& op) {
  const auto& b = *c.base;
  MagmalFunctor g;
  g.dom = g.cod = c;
  g.underlying.dom = g.underlying.cod = c.base;
  g.underlying.obj_map = op;
  g.underlying.mor_map.assign(b.n_mor(), kNone);
  for (Id m = 0; m < b.n_mor(); ++m) {
    const auto& h = b.hom(op[b.src(m)], op[b.dst(m)]);
    if (h.size() != 1) return std::nullopt;  // not monotone
    g.underlying.mor_map[m] = h[0];
  }
  g.s2.assign(b.n_obj(), std::vector<Id>(b.n_obj(), kNone));
  for (Id x = 0; x < b.n_obj(); ++x)
    for (Id y = 0; y < b.n_obj(); ++y) {
      const auto& h = b.hom(c.tob(op[x], op[y]), op[c.tob(x, y)]);
      if (h.size() != 1) return std::nullopt;  // g(x)∧g(y) ≰ g(x∧y)
      g.s2[x][y] = h[0];
    }
  MagmalComonad k;
  k.g = std::move(g);
  k.eps.dom = k.g.underlying;
  k.eps.cod = fincat::identity_functor(c.base);
  k.delta.dom = k.g.underlying;
  k.delta.cod = fincat::compose(k.g.underlying, k.g.underlying);
  k.eps.components.assign(b.n_obj(), kNone);
  k.delta.components.assign(b.n_obj(), kNone);
  for (Id x = 0; x < b.n_obj(); ++x) {
    const auto& e = b.hom(op[x], x);
    const auto& d = b.hom(op[x], op[op[x]]);
    if (e.size() != 1 || d.size() != 1) return std::nullopt;
    k.eps.components[x] = e[0];
    k.delta.components[x] = d[0];
  }
  if (!k.validate().empty()) return std::nullopt;
  return k;
}

// -------------------------------------------------------- cloak-side mates

std::vector<Id> s2l_from_s2(const MagmalFunctor& s, const CloakTable& dom_t,
                            const CloakTable& cod_t, Id y) {
  const auto& b = *s.cod.base;
  const int n = s.dom.base->n_obj();
  std::vector<Id> s2l(n, kNone);
  for (Id z = 0; z < n; ++z) {
    const Cloak& kd = dom_t.require(y, z);
    const Cloak& kc = cod_t.require(s.ob(y), s.ob(z));
    Id e = b.compose(s.mor(kd.ev), s.s2[kd.hom_obj][y]);
    s2l[z] = transpose(s.cod, kc, s.ob(kd.hom_obj), e);
  }
  return s2l;
}

std::vector<Id> s2_from_s2l(const MagmalFunctor& s, const CloakTable& dom_t,
                            const CloakTable& cod_t, Id y,
                            const std::vector<Id>& s2l) {
  const auto& b = *s.cod.base;
  const int n = s.dom.base->n_obj();
  std::vector<Id> out(n, kNone);
  for (Id x = 0; x < n; ++x) {
    Id xy = s.dom.tob(x, y);
    const Cloak& kd = dom_t.require(y, xy);
    const Cloak& kc = cod_t.require(s.ob(y), s.ob(xy));
    Id ve = ve_component(s.dom, kd, x);
    Id f = b.compose(s2l[xy], s.mor(ve));
    out[x] = untranspose(s.cod, kc, f);
  }
  return out;
}

bool preserves_cloak(const MagmalFunctor& s, const CloakTable& dom_t, Id y,
                     Id z) {
  const auto& kd = dom_t.at[y][z];
  if (!kd) throw Error("MissingCloak", "domain cloak absent");
  const auto& b = *s.cod.base;
  Id e = b.compose(s.mor(kd->ev), s.s2[kd->hom_obj][y]);
  return is_cloak(s.cod, s.ob(y), s.ob(z), s.ob(kd->hom_obj), e);
}

}  // namespace cloakforge::magmal
