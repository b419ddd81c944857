#include "cloakforge/fincat.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>

namespace cloakforge {

Limits& limits() {
  static Limits l = [] {
    Limits init;
    if (const char* env = std::getenv("CLOAKFORGE_SIZE_LIMIT")) {
      int v = std::atoi(env);
      if (v > 0) init.functor_category_objects = v;
    }
    return init;
  }();
  return l;
}

namespace fincat {

Id FinCategory::compose(Id g, Id f) const {
  if (g < 0 || f < 0 || g >= n_mor() || f >= n_mor())
    throw Error("MalformedTable", "morphism id out of range");
  Id r = compose_table[static_cast<size_t>(g) * n_mor() + f];
  if (r == kNone)
    throw Error("MalformedTable",
                "compose(" + mor_name(g) + ", " + mor_name(f) + ") undefined");
  return r;
}

const std::vector<Id>& FinCategory::hom(Id x, Id y) const {
  return hom_cache_[x][y];
}
const std::vector<Id>& FinCategory::from(Id x) const { return from_cache_[x]; }
const std::vector<Id>& FinCategory::into(Id y) const { return into_cache_[y]; }

std::string FinCategory::obj_name(Id x) const {
  if (x >= 0 && x < static_cast<Id>(obj_names.size()) && !obj_names[x].empty())
    return obj_names[x];
  return "#" + std::to_string(x);
}
std::string FinCategory::mor_name(Id f) const {
  if (f >= 0 && f < static_cast<Id>(mor_names.size()) && !mor_names[f].empty())
    return mor_names[f];
  return "m" + std::to_string(f);
}

void FinCategory::freeze() {
  if (frozen_) return;
  hom_cache_.assign(n_obj(), std::vector<std::vector<Id>>(n_obj()));
  from_cache_.assign(n_obj(), {});
  into_cache_.assign(n_obj(), {});
  for (Id f = 0; f < n_mor(); ++f) {
    hom_cache_[mor_src[f]][mor_dst[f]].push_back(f);
    from_cache_[mor_src[f]].push_back(f);
    into_cache_[mor_dst[f]].push_back(f);
  }
  frozen_ = true;
}

std::vector<std::string> FinCategory::validate() const {
  std::vector<std::string> bad;
  const int no = n_obj(), nm = n_mor();
  if (static_cast<int>(mor_dst.size()) != nm)
    bad.push_back("src/dst tables disagree on morphism count");
  if (static_cast<int>(compose_table.size()) !=
      static_cast<int>(static_cast<size_t>(nm) * nm)) {
    bad.push_back("compose table has wrong size");
    return bad;
  }
  for (Id f = 0; f < nm; ++f)
    if (mor_src[f] < 0 || mor_src[f] >= no || mor_dst[f] < 0 || mor_dst[f] >= no)
      bad.push_back("morphism " + mor_name(f) + " has out-of-range endpoint");
  for (Id x = 0; x < no; ++x) {
    Id e = identity[x];
    if (e < 0 || e >= nm) {
      bad.push_back("identity of " + obj_name(x) + " out of range");
      continue;
    }
    if (mor_src[e] != x || mor_dst[e] != x)
      bad.push_back("identity of " + obj_name(x) + " is not an endomorphism");
  }
  if (!bad.empty()) return bad;

  for (Id g = 0; g < nm; ++g)
    for (Id f = 0; f < nm; ++f) {
      Id r = compose_table[static_cast<size_t>(g) * nm + f];
      bool comp = composable(g, f);
      if (comp && r == kNone)
        bad.push_back("compose(" + mor_name(g) + "," + mor_name(f) +
                      ") missing although composable");
      if (!comp && r != kNone)
        bad.push_back("compose(" + mor_name(g) + "," + mor_name(f) +
                      ") defined although not composable");
      if (r != kNone) {
        if (r < 0 || r >= nm) {
          bad.push_back("compose(" + mor_name(g) + "," + mor_name(f) +
                        ") references unknown id");
          continue;
        }
        if (comp && (mor_src[r] != mor_src[f] || mor_dst[r] != mor_dst[g]))
          bad.push_back("compose(" + mor_name(g) + "," + mor_name(f) +
                        ") has wrong endpoints");
      }
    }
  if (!bad.empty()) return bad;

  for (Id f = 0; f < nm; ++f) {
    if (compose_table[static_cast<size_t>(f) * nm + identity[mor_src[f]]] != f)
      bad.push_back("identity law fails: " + mor_name(f) + " ∘ id");
    if (compose_table[static_cast<size_t>(identity[mor_dst[f]]) * nm + f] != f)
      bad.push_back("identity law fails: id ∘ " + mor_name(f));
  }
  // associativity over composable triples
  std::vector<std::vector<Id>> by_src(no);
  for (Id f = 0; f < nm; ++f) by_src[mor_src[f]].push_back(f);
  for (Id f = 0; f < nm; ++f)
    for (Id g : by_src[mor_dst[f]]) {
      Id gf = compose_table[static_cast<size_t>(g) * nm + f];
      for (Id h : by_src[mor_dst[g]]) {
        Id hg = compose_table[static_cast<size_t>(h) * nm + g];
        if (compose_table[static_cast<size_t>(h) * nm + gf] !=
            compose_table[static_cast<size_t>(hg) * nm + f])
          bad.push_back("associativity fails on (" + mor_name(h) + "," +
                        mor_name(g) + "," + mor_name(f) + ")");
      }
    }
  return bad;
}

std::vector<std::string> validate_category(const FinCategory& raw) {
  return raw.validate();
}

CatPtr make_category(FinCategory raw) {
  auto bad = raw.validate();
  if (!bad.empty()) {
    std::string msg = raw.name;
    for (auto& b : bad) msg += "\n  " + b;
    throw Error("LawViolation", msg);
  }
  raw.freeze();
  return std::make_shared<FinCategory>(std::move(raw));
}

// ---------------------------------------------------------------- functors

std::vector<std::string> Functor::validate() const {
  std::vector<std::string> bad;
  if (static_cast<int>(obj_map.size()) != dom->n_obj() ||
      static_cast<int>(mor_map.size()) != dom->n_mor()) {
    bad.push_back("functor maps have wrong size");
    return bad;
  }
  for (Id x : obj_map)
    if (x < 0 || x >= cod->n_obj()) bad.push_back("object image out of range");
  for (Id f : mor_map)
    if (f < 0 || f >= cod->n_mor()) bad.push_back("morphism image out of range");
  if (!bad.empty()) return bad;
  for (Id f = 0; f < dom->n_mor(); ++f) {
    if (cod->src(mor_map[f]) != obj_map[dom->src(f)] ||
        cod->dst(mor_map[f]) != obj_map[dom->dst(f)])
      bad.push_back("endpoints not preserved at " + dom->mor_name(f));
  }
  for (Id x = 0; x < dom->n_obj(); ++x)
    if (mor_map[dom->id(x)] != cod->id(obj_map[x]))
      bad.push_back("identity not preserved at " + dom->obj_name(x));
  for (Id g = 0; g < dom->n_mor(); ++g)
    for (Id f = 0; f < dom->n_mor(); ++f)
      if (dom->composable(g, f)) {
        if (mor_map[dom->compose(g, f)] != cod->compose(mor_map[g], mor_map[f]))
          bad.push_back("composite not preserved at (" + dom->mor_name(g) +
                        "," + dom->mor_name(f) + ")");
      }
  return bad;
}

Functor identity_functor(const CatPtr& c) {
  Functor f;
  f.dom = f.cod = c;
  f.obj_map.resize(c->n_obj());
  f.mor_map.resize(c->n_mor());
  std::iota(f.obj_map.begin(), f.obj_map.end(), 0);
  std::iota(f.mor_map.begin(), f.mor_map.end(), 0);
  return f;
}

Functor compose(const Functor& g, const Functor& f) {
  if (f.cod != g.dom) throw Error("ShapeMismatch", "functor composition");
  Functor r;
  r.dom = f.dom;
  r.cod = g.cod;
  r.obj_map.reserve(f.obj_map.size());
  r.mor_map.reserve(f.mor_map.size());
  for (Id x : f.obj_map) r.obj_map.push_back(g.obj_map[x]);
  for (Id m : f.mor_map) r.mor_map.push_back(g.mor_map[m]);
  return r;
}

Functor constant_functor(const CatPtr& dom, const CatPtr& cod, Id at) {
  Functor f;
  f.dom = dom;
  f.cod = cod;
  f.obj_map.assign(dom->n_obj(), at);
  f.mor_map.assign(dom->n_mor(), cod->id(at));
  return f;
}

bool is_fully_faithful(const Functor& f) {
  for (Id x = 0; x < f.dom->n_obj(); ++x)
    for (Id y = 0; y < f.dom->n_obj(); ++y) {
      const auto& h = f.dom->hom(x, y);
      const auto& k = f.cod->hom(f.ob(x), f.ob(y));
      if (h.size() != k.size()) return false;
      std::vector<Id> imgs;
      for (Id m : h) imgs.push_back(f.mor(m));
      std::sort(imgs.begin(), imgs.end());
      if (std::adjacent_find(imgs.begin(), imgs.end()) != imgs.end())
        return false;
    }
  return true;
}

// ------------------------------------------------------------- nat. trans.

std::vector<std::string> NatTrans::validate() const {
  std::vector<std::string> bad;
  if (!(dom.dom == cod.dom) || !(dom.cod == cod.cod)) {
    bad.push_back("functors not parallel");
    return bad;
  }
  const auto& a = *dom.dom;
  const auto& c = *dom.cod;
  if (static_cast<int>(components.size()) != a.n_obj()) {
    bad.push_back("component table has wrong size");
    return bad;
  }
  for (Id x = 0; x < a.n_obj(); ++x) {
    Id t = components[x];
    if (t < 0 || t >= c.n_mor() || c.src(t) != dom.ob(x) ||
        c.dst(t) != cod.ob(x))
      bad.push_back("component at " + a.obj_name(x) + " has wrong endpoints");
  }
  if (!bad.empty()) return bad;
  for (Id f = 0; f < a.n_mor(); ++f) {
    Id x = a.src(f), y = a.dst(f);
    if (c.compose(components[y], dom.mor(f)) !=
        c.compose(cod.mor(f), components[x]))
      bad.push_back("naturality fails at " + a.mor_name(f));
  }
  return bad;
}

NatTrans identity_nat(const Functor& f) {
  NatTrans a;
  a.dom = a.cod = f;
  a.components.reserve(f.obj_map.size());
  for (Id x : f.obj_map) a.components.push_back(f.cod->id(x));
  return a;
}

NatTrans vcompose(const NatTrans& b, const NatTrans& a) {
  if (!(a.cod == b.dom)) throw Error("ShapeMismatch", "vertical composition");
  NatTrans r;
  r.dom = a.dom;
  r.cod = b.cod;
  const auto& c = *a.dom.cod;
  r.components.reserve(a.components.size());
  for (size_t x = 0; x < a.components.size(); ++x)
    r.components.push_back(c.compose(b.components[x], a.components[x]));
  return r;
}

NatTrans whisker_left(const Functor& g, const NatTrans& a) {
  if (!(a.dom.cod == g.dom)) throw Error("ShapeMismatch", "whisker_left");
  NatTrans r;
  r.dom = compose(g, a.dom);
  r.cod = compose(g, a.cod);
  r.components.reserve(a.components.size());
  for (Id t : a.components) r.components.push_back(g.mor(t));
  return r;
}

NatTrans whisker_right(const NatTrans& a, const Functor& f) {
  if (!(f.cod == a.dom.dom)) throw Error("ShapeMismatch", "whisker_right");
  NatTrans r;
  r.dom = compose(a.dom, f);
  r.cod = compose(a.cod, f);
  r.components.reserve(f.obj_map.size());
  for (Id x : f.obj_map) r.components.push_back(a.components[x]);
  return r;
}

bool is_nat_iso(const NatTrans& a) {
  for (Id t : a.components)
    if (!two_sided_inverse(*a.dom.cod, t)) return false;
  return true;
}

NatTrans invert_nat(const NatTrans& a) {
  NatTrans r;
  r.dom = a.cod;
  r.cod = a.dom;
  for (Id t : a.components) {
    auto inv = two_sided_inverse(*a.dom.cod, t);
    if (!inv) throw Error("NotInvertible", "natural transformation");
    r.components.push_back(*inv);
  }
  return r;
}

// ------------------------------------------------------------- adjunctions

std::vector<std::string> Adjunction::validate() const {
  std::vector<std::string> bad;
  if (!(left.cod == right.dom) || !(right.cod == left.dom)) {
    bad.push_back("adjunction boundary mismatch");
    return bad;
  }
  for (auto& m : unit.validate()) bad.push_back("unit: " + m);
  for (auto& m : counit.validate()) bad.push_back("counit: " + m);
  if (!bad.empty()) return bad;
  if (!(unit.dom == identity_functor(left.dom)) ||
      !(unit.cod == compose(right, left)))
    bad.push_back("unit has wrong shape");
  if (!(counit.dom == compose(left, right)) ||
      !(counit.cod == identity_functor(right.dom)))
    bad.push_back("counit has wrong shape");
  if (!bad.empty()) return bad;
  // (counit·left) ∘ (left·unit) = 1_left and (right·counit) ∘ (unit·right) = 1
  NatTrans t1 = vcompose(whisker_right(counit, left), whisker_left(left, unit));
  if (!(t1 == identity_nat(left))) bad.push_back("triangle identity (left) fails");
  NatTrans t2 = vcompose(whisker_left(right, counit), whisker_right(unit, right));
  if (!(t2 == identity_nat(right))) bad.push_back("triangle identity (right) fails");
  return bad;
}

Adjunction identity_adjunction(const CatPtr& c) {
  Adjunction a;
  a.left = a.right = identity_functor(c);
  a.unit = identity_nat(a.left);
  a.counit = a.unit;
  return a;
}

Adjunction compose_adjunction(const Adjunction& outer, const Adjunction& inner) {
  if (!(inner.left.cod == outer.left.dom))
    throw Error("ShapeMismatch", "compose_adjunction");
  Adjunction r;
  r.left = compose(outer.left, inner.left);
  r.right = compose(inner.right, outer.right);
  // unit: 1 ⇒ u1∘f1 ⇒ u1∘u2∘f2∘f1
  NatTrans step = whisker_left(inner.right, whisker_right(outer.unit, inner.left));
  r.unit = vcompose(step, inner.unit);
  r.unit.dom = identity_functor(inner.left.dom);
  r.unit.cod = compose(r.right, r.left);
  // counit: f2∘f1∘u1∘u2 ⇒ f2∘u2 ⇒ 1
  NatTrans step2 = whisker_left(outer.left, whisker_right(inner.counit, outer.right));
  r.counit = vcompose(outer.counit, step2);
  r.counit.dom = compose(r.left, r.right);
  r.counit.cod = identity_functor(outer.left.cod);
  return r;
}

// ---------------------------------------------------------------- products

ProductIndex product_category(const CatPtr& a, const CatPtr& b) {
  FinCategory p;
  p.name = a->name + "×" + b->name;
  const int nbo = b->n_obj(), nbm = b->n_mor();
  for (Id x = 0; x < a->n_obj(); ++x)
    for (Id y = 0; y < nbo; ++y)
      p.obj_names.push_back("(" + a->obj_name(x) + "," + b->obj_name(y) + ")");
  const int nm = a->n_mor() * nbm;
  p.mor_src.resize(nm);
  p.mor_dst.resize(nm);
  for (Id f = 0; f < a->n_mor(); ++f)
    for (Id g = 0; g < nbm; ++g) {
      p.mor_src[f * nbm + g] = a->src(f) * nbo + b->src(g);
      p.mor_dst[f * nbm + g] = a->dst(f) * nbo + b->dst(g);
    }
  p.identity.resize(a->n_obj() * nbo);
  for (Id x = 0; x < a->n_obj(); ++x)
    for (Id y = 0; y < nbo; ++y)
      p.identity[x * nbo + y] = a->id(x) * nbm + b->id(y);
  p.compose_table.assign(static_cast<size_t>(nm) * nm, kNone);
  for (Id f2 = 0; f2 < a->n_mor(); ++f2)
    for (Id g2 = 0; g2 < nbm; ++g2)
      for (Id f1 = 0; f1 < a->n_mor(); ++f1)
        for (Id g1 = 0; g1 < nbm; ++g1)
          if (a->composable(f2, f1) && b->composable(g2, g1))
            p.compose_table[static_cast<size_t>(f2 * nbm + g2) * nm + f1 * nbm +
                            g1] = a->compose(f2, f1) * nbm + b->compose(g2, g1);
  ProductIndex idx;
  idx.prod = make_category(std::move(p));
  idx.left = a;
  idx.right = b;
  return idx;
}

Functor product_functor(const ProductIndex& dom, const ProductIndex& cod,
                        const Functor& f, const Functor& g) {
  Functor r;
  r.dom = dom.prod;
  r.cod = cod.prod;
  r.obj_map.resize(dom.prod->n_obj());
  r.mor_map.resize(dom.prod->n_mor());
  for (Id p = 0; p < dom.prod->n_obj(); ++p)
    r.obj_map[p] = cod.ob(f.ob(dom.ob_left(p)), g.ob(dom.ob_right(p)));
  for (Id p = 0; p < dom.prod->n_mor(); ++p)
    r.mor_map[p] = cod.mor(f.mor(dom.mor_left(p)), g.mor(dom.mor_right(p)));
  return r;
}

Adjunction product_adjunction(const ProductIndex& dom, const ProductIndex& cod,
                              const Adjunction& a, const Adjunction& b) {
  // a.left : dom.left → cod.left, b.left : dom.right → cod.right
  Adjunction r;
  r.left = product_functor(dom, cod, a.left, b.left);
  r.right = product_functor(cod, dom, a.right, b.right);
  r.unit.dom = identity_functor(dom.prod);
  r.unit.cod = compose(r.right, r.left);
  r.unit.components.resize(dom.prod->n_obj());
  for (Id p = 0; p < dom.prod->n_obj(); ++p)
    r.unit.components[p] = dom.mor(a.unit.at(dom.ob_left(p)),
                                   b.unit.at(dom.ob_right(p)));
  r.counit.dom = compose(r.left, r.right);
  r.counit.cod = identity_functor(cod.prod);
  r.counit.components.resize(cod.prod->n_obj());
  for (Id p = 0; p < cod.prod->n_obj(); ++p)
    r.counit.components[p] = cod.mor(a.counit.at(cod.ob_left(p)),
                                     b.counit.at(cod.ob_right(p)));
  return r;
}

// --------------------------------------------------------------- opposites

CatPtr opposite(const CatPtr& c) {
  FinCategory o;
  o.name = c->name + "^op";
  o.obj_names = c->obj_names;
  o.mor_names = c->mor_names;
  o.mor_src = c->mor_dst;
  o.mor_dst = c->mor_src;
  o.identity = c->identity;
  const int nm = c->n_mor();
  o.compose_table.assign(static_cast<size_t>(nm) * nm, kNone);
  for (Id g = 0; g < nm; ++g)
    for (Id f = 0; f < nm; ++f) {
      Id r = c->compose_table[static_cast<size_t>(g) * nm + f];
      if (r != kNone) o.compose_table[static_cast<size_t>(f) * nm + g] = r;
    }
  return make_category(std::move(o));
}

Functor opposite(const Functor& f, const CatPtr& opdom, const CatPtr& opcod) {
  Functor r;
  r.dom = opdom;
  r.cod = opcod;
  r.obj_map = f.obj_map;
  r.mor_map = f.mor_map;
  return r;
}

// ------------------------------------------------------------ enumerations

namespace {

// Non-identity morphisms in id order; identities are forced.
void enumerate_functors_rec(const CatPtr& a, const CatPtr& c,
                            const std::vector<Id>& nonid, size_t k, Functor& f,
                            std::vector<Functor>& out) {
  if (k == nonid.size()) {
    // full composite check
    for (Id g = 0; g < a->n_mor(); ++g)
      for (Id h = 0; h < a->n_mor(); ++h)
        if (a->composable(g, h) &&
            f.mor_map[a->compose(g, h)] != c->compose(f.mor_map[g], f.mor_map[h]))
          return;
    out.push_back(f);
    return;
  }
  Id m = nonid[k];
  for (Id cand : c->hom(f.obj_map[a->src(m)], f.obj_map[a->dst(m)])) {
    f.mor_map[m] = cand;
    enumerate_functors_rec(a, c, nonid, k + 1, f, out);
  }
}

}  // namespace

std::vector<Functor> enumerate_functors(const CatPtr& a, const CatPtr& c) {
  std::vector<Functor> out;
  Functor f;
  f.dom = a;
  f.cod = c;
  f.obj_map.assign(a->n_obj(), 0);
  f.mor_map.assign(a->n_mor(), 0);
  std::vector<Id> nonid;
  std::vector<bool> is_id(a->n_mor(), false);
  for (Id x = 0; x < a->n_obj(); ++x) is_id[a->id(x)] = true;
  for (Id m = 0; m < a->n_mor(); ++m)
    if (!is_id[m]) nonid.push_back(m);

  if (a->n_obj() == 0) {
    out.push_back(f);
    return out;
  }
  std::vector<Id> objs(a->n_obj(), 0);
  while (true) {
    f.obj_map = objs;
    for (Id x = 0; x < a->n_obj(); ++x) f.mor_map[a->id(x)] = c->id(objs[x]);
    enumerate_functors_rec(a, c, nonid, 0, f, out);
    // next object assignment
    int i = a->n_obj() - 1;
    while (i >= 0 && objs[i] == c->n_obj() - 1) objs[i--] = 0;
    if (i < 0) break;
    ++objs[i];
  }
  return out;
}

std::vector<NatTrans> enumerate_nattrans(const Functor& f, const Functor& g) {
  std::vector<NatTrans> out;
  if (!(f.dom == g.dom) || !(f.cod == g.cod)) return out;
  const auto& a = *f.dom;
  const auto& c = *f.cod;
  std::vector<std::vector<Id>> cands(a.n_obj());
  for (Id x = 0; x < a.n_obj(); ++x) {
    cands[x] = c.hom(f.ob(x), g.ob(x));
    if (cands[x].empty()) return out;
  }
  std::vector<size_t> pick(a.n_obj(), 0);
  while (true) {
    NatTrans t;
    t.dom = f;
    t.cod = g;
    t.components.resize(a.n_obj());
    for (Id x = 0; x < a.n_obj(); ++x) t.components[x] = cands[x][pick[x]];
    bool nat = true;
    for (Id m = 0; m < a.n_mor() && nat; ++m)
      nat = c.compose(t.components[a.dst(m)], f.mor(m)) ==
            c.compose(g.mor(m), t.components[a.src(m)]);
    if (nat) out.push_back(std::move(t));
    int i = a.n_obj() - 1;
    while (i >= 0 && pick[i] + 1 == cands[i].size()) pick[i--] = 0;
    if (i < 0) break;
    ++pick[i];
  }
  return out;
}

Id FunctorCategory::find_object(const Functor& f) const {
  for (size_t i = 0; i < objects.size(); ++i)
    if (objects[i].obj_map == f.obj_map && objects[i].mor_map == f.mor_map)
      return static_cast<Id>(i);
  return kNone;
}

Id FunctorCategory::find_morphism(const NatTrans& a) const {
  for (size_t i = 0; i < morphisms.size(); ++i)
    if (morphisms[i].dom == a.dom && morphisms[i].cod == a.cod &&
        morphisms[i].components == a.components)
      return static_cast<Id>(i);
  return kNone;
}

FunctorCategory functor_category(const CatPtr& a, const CatPtr& c) {
  FunctorCategory fc;
  fc.objects = enumerate_functors(a, c);
  if (static_cast<int>(fc.objects.size()) > limits().functor_category_objects)
    throw Error("SizeLimitExceeded",
                "[" + a->name + "," + c->name + "] has " +
                    std::to_string(fc.objects.size()) + " objects");
  FinCategory cat;
  cat.name = "[" + a->name + "," + c->name + "]";
  std::map<std::pair<std::pair<Id, Id>, std::vector<Id>>, Id> index;
  for (size_t i = 0; i < fc.objects.size(); ++i) {
    cat.obj_names.push_back("F" + std::to_string(i));
    for (size_t j = 0; j < fc.objects.size(); ++j) {
      auto ts = enumerate_nattrans(fc.objects[i], fc.objects[j]);
      for (auto& t : ts) {
        Id id = static_cast<Id>(fc.morphisms.size());
        index[{{static_cast<Id>(i), static_cast<Id>(j)}, t.components}] = id;
        cat.mor_src.push_back(static_cast<Id>(i));
        cat.mor_dst.push_back(static_cast<Id>(j));
        fc.morphisms.push_back(std::move(t));
      }
    }
  }
  cat.identity.resize(fc.objects.size());
  for (size_t i = 0; i < fc.objects.size(); ++i) {
    auto idn = identity_nat(fc.objects[i]);
    cat.identity[i] =
        index.at({{static_cast<Id>(i), static_cast<Id>(i)}, idn.components});
  }
  const int nm = static_cast<int>(fc.morphisms.size());
  cat.compose_table.assign(static_cast<size_t>(nm) * nm, kNone);
  for (Id g = 0; g < nm; ++g)
    for (Id f = 0; f < nm; ++f)
      if (cat.mor_dst[f] == cat.mor_src[g]) {
        auto v = vcompose(fc.morphisms[g], fc.morphisms[f]);
        cat.compose_table[static_cast<size_t>(g) * nm + f] =
            index.at({{cat.mor_src[f], cat.mor_dst[g]}, v.components});
      }
  fc.cat = make_category(std::move(cat));
  return fc;
}

// -------------------------------------------------------------- equalizers

bool is_equalizer_of(const FinCategory& c, Id obj, Id k, Id f, Id g) {
  if (c.src(f) != c.src(g) || c.dst(f) != c.dst(g)) return false;
  if (c.src(k) != obj || c.dst(k) != c.src(f)) return false;
  if (c.compose(f, k) != c.compose(g, k)) return false;
  for (Id x = 0; x < c.n_obj(); ++x)
    for (Id h : c.hom(x, c.src(f))) {
      if (c.compose(f, h) != c.compose(g, h)) continue;
      int count = 0;
      for (Id u : c.hom(x, obj))
        if (c.compose(k, u) == h) ++count;
      if (count != 1) return false;
    }
  return true;
}

std::optional<Equalizer> find_equalizer(const FinCategory& c, Id f, Id g) {
  if (c.src(f) != c.src(g) || c.dst(f) != c.dst(g))
    throw Error("NotParallel", "find_equalizer");
  for (Id e = 0; e < c.n_obj(); ++e)
    for (Id k : c.hom(e, c.src(f)))
      if (is_equalizer_of(c, e, k, f, g)) return Equalizer{e, k};
  return std::nullopt;
}

// --------------------------------------------------------- morphism classes

std::optional<Id> two_sided_inverse(const FinCategory& c, Id f) {
  for (Id g : c.hom(c.dst(f), c.src(f)))
    if (c.compose(g, f) == c.id(c.src(f)) && c.compose(f, g) == c.id(c.dst(f)))
      return g;
  return std::nullopt;
}

MorphismClass morphism_class(const FinCategory& c, Id f) {
  MorphismClass r;
  r.mono = true;
  r.epi = true;
  for (Id x = 0; x < c.n_obj() && r.mono; ++x) {
    const auto& hs = c.hom(x, c.src(f));
    for (size_t i = 0; i < hs.size() && r.mono; ++i)
      for (size_t j = i + 1; j < hs.size() && r.mono; ++j)
        if (c.compose(f, hs[i]) == c.compose(f, hs[j])) r.mono = false;
  }
  for (Id x = 0; x < c.n_obj() && r.epi; ++x) {
    const auto& hs = c.hom(c.dst(f), x);
    for (size_t i = 0; i < hs.size() && r.epi; ++i)
      for (size_t j = i + 1; j < hs.size() && r.epi; ++j)
        if (c.compose(hs[i], f) == c.compose(hs[j], f)) r.epi = false;
  }
  r.iso = two_sided_inverse(c, f).has_value();
  for (Id y = 0; y < c.n_obj() && !r.regular_mono; ++y)
    for (Id u : c.hom(c.dst(f), y))
      for (Id v : c.hom(c.dst(f), y))
        if (is_equalizer_of(c, c.src(f), f, u, v)) {
          r.regular_mono = true;
          break;
        }
  return r;
}

// ----------------------------------------------------------- adjoint search

std::optional<Adjunction> find_right_adjoint(const Functor& f) {
  auto gs = enumerate_functors(f.cod, f.dom);
  Functor idc = identity_functor(f.dom);
  Functor idd = identity_functor(f.cod);
  for (const auto& g : gs) {
    auto units = enumerate_nattrans(idc, compose(g, f));
    if (units.empty()) continue;
    auto counits = enumerate_nattrans(compose(f, g), idd);
    for (const auto& u : units)
      for (const auto& s : counits) {
        Adjunction a{f, g, u, s};
        if (a.validate().empty()) return a;
      }
  }
  return std::nullopt;
}

std::optional<Adjunction> find_left_adjoint(const Functor& u) {
  auto fs = enumerate_functors(u.cod, u.dom);
  Functor idb = identity_functor(u.cod);
  Functor ida = identity_functor(u.dom);
  for (const auto& f : fs) {
    auto units = enumerate_nattrans(idb, compose(u, f));
    if (units.empty()) continue;
    auto counits = enumerate_nattrans(compose(f, u), ida);
    for (const auto& un : units)
      for (const auto& s : counits) {
        Adjunction a{f, u, un, s};
        if (a.validate().empty()) return a;
      }
  }
  return std::nullopt;
}

std::optional<Adjunction> right_adjoint_via_comma(const Functor& f) {
  const auto& c = *f.dom;
  const auto& d = *f.cod;
  // terminal object of (f ↓ y) for each y, in deterministic order
  std::vector<Id> g_obj(d.n_obj(), kNone), counit(d.n_obj(), kNone);
  for (Id y = 0; y < d.n_obj(); ++y) {
    for (Id c0 = 0; c0 < c.n_obj() && g_obj[y] == kNone; ++c0)
      for (Id h0 : d.hom(f.ob(c0), y)) {
        bool terminal = true;
        for (Id x = 0; x < c.n_obj() && terminal; ++x)
          for (Id h : d.hom(f.ob(x), y)) {
            int count = 0;
            for (Id u : c.hom(x, c0))
              if (d.compose(h0, f.mor(u)) == h) ++count;
            if (count != 1) {
              terminal = false;
              break;
            }
          }
        if (terminal) {
          g_obj[y] = c0;
          counit[y] = h0;
          break;
        }
      }
    if (g_obj[y] == kNone) return std::nullopt;
  }
  Functor g;
  g.dom = f.cod;
  g.cod = f.dom;
  g.obj_map = g_obj;
  g.mor_map.assign(d.n_mor(), kNone);
  for (Id k = 0; k < d.n_mor(); ++k) {
    Id y = d.src(k), y2 = d.dst(k);
    for (Id u : c.hom(g_obj[y], g_obj[y2]))
      if (d.compose(counit[y2], f.mor(u)) == d.compose(k, counit[y])) {
        g.mor_map[k] = u;
        break;
      }
    if (g.mor_map[k] == kNone) return std::nullopt;
  }
  if (!g.validate().empty()) return std::nullopt;
  Adjunction a;
  a.left = f;
  a.right = g;
  a.counit.dom = compose(f, g);
  a.counit.cod = identity_functor(f.cod);
  a.counit.components = counit;
  a.unit.dom = identity_functor(f.dom);
  a.unit.cod = compose(g, f);
  a.unit.components.assign(c.n_obj(), kNone);
  for (Id x = 0; x < c.n_obj(); ++x) {
    for (Id u : c.hom(x, g_obj[f.ob(x)]))
      if (d.compose(counit[f.ob(x)], f.mor(u)) == d.id(f.ob(x))) {
        a.unit.components[x] = u;
        break;
      }
    if (a.unit.components[x] == kNone) return std::nullopt;
  }
  if (!a.validate().empty()) return std::nullopt;
  return a;
}

// ------------------------------------------------------------------- mates

NatTrans mate_forward(const Adjunction& adj1, const Adjunction& adj2,
                      const Functor& s, const Functor& t, const NatTrans& phi) {
  const Functor& f = adj1.left;
  const Functor& u = adj1.right;
  const Functor& f2 = adj2.left;
  const Functor& u2 = adj2.right;
  if (!(phi.dom == compose(t, u)) || !(phi.cod == compose(u2, s)))
    throw Error("ShapeMismatch", "mate_forward: phi must be t∘u ⇒ u2∘s");
  // f2∘t --f2·t·unit1--> f2∘t∘u∘f --f2·phi·f--> f2∘u2∘s∘f --counit2·s·f--> s∘f
  NatTrans a = whisker_left(compose(f2, t), adj1.unit);
  NatTrans b = whisker_left(f2, whisker_right(phi, f));
  NatTrans c = whisker_right(adj2.counit, compose(s, f));
  NatTrans r = vcompose(c, vcompose(b, a));
  r.dom = compose(f2, t);
  r.cod = compose(s, f);
  return r;
}

NatTrans mate_backward(const Adjunction& adj1, const Adjunction& adj2,
                       const Functor& s, const Functor& t, const NatTrans& psi) {
  const Functor& f = adj1.left;
  const Functor& u = adj1.right;
  const Functor& u2 = adj2.right;
  if (!(psi.dom == compose(adj2.left, t)) || !(psi.cod == compose(s, f)))
    throw Error("ShapeMismatch", "mate_backward: psi must be f2∘t ⇒ s∘f");
  // t∘u --unit2·t·u--> u2∘f2∘t∘u --u2·psi·u--> u2∘s∘f∘u --u2·s·counit1--> u2∘s
  NatTrans a = whisker_right(adj2.unit, compose(t, u));
  NatTrans b = whisker_left(u2, whisker_right(psi, u));
  NatTrans c = whisker_left(compose(u2, s), adj1.counit);
  NatTrans r = vcompose(c, vcompose(b, a));
  r.dom = compose(t, u);
  r.cod = compose(u2, s);
  return r;
}

// --------------------------------------------------------------- iso search

namespace {

struct HomSlot {
  std::vector<Id> from, to;
};

bool try_mor_bijections(const FinCategory& a, const FinCategory& b,
                        const std::vector<Id>& omap,
                        const std::vector<HomSlot>& slots, size_t i,
                        std::vector<Id>& mmap) {
  if (i == slots.size()) {
    for (Id x = 0; x < a.n_obj(); ++x)
      if (mmap[a.id(x)] != b.id(omap[x])) return false;
    for (Id g = 0; g < a.n_mor(); ++g)
      for (Id f = 0; f < a.n_mor(); ++f)
        if (a.composable(g, f) &&
            b.compose(mmap[g], mmap[f]) != mmap[a.compose(g, f)])
          return false;
    return true;
  }
  std::vector<int> idx(slots[i].from.size());
  std::iota(idx.begin(), idx.end(), 0);
  do {
    for (size_t j = 0; j < idx.size(); ++j)
      mmap[slots[i].from[j]] = slots[i].to[idx[j]];
    if (try_mor_bijections(a, b, omap, slots, i + 1, mmap)) return true;
  } while (std::next_permutation(idx.begin(), idx.end()));
  return false;
}

bool extend_iso(const FinCategory& a, const FinCategory& b,
                std::vector<Id>& map, std::vector<bool>& used, size_t k) {
  if (k == map.size()) {
    std::vector<HomSlot> slots;
    for (Id x = 0; x < a.n_obj(); ++x)
      for (Id y = 0; y < a.n_obj(); ++y) {
        const auto& ha = a.hom(x, y);
        const auto& hb = b.hom(map[x], map[y]);
        if (ha.size() != hb.size()) return false;
        if (!ha.empty()) slots.push_back({ha, hb});
      }
    std::vector<Id> mmap(a.n_mor(), kNone);
    return try_mor_bijections(a, b, map, slots, 0, mmap);
  }
  for (Id y = 0; y < b.n_obj(); ++y) {
    if (used[y]) continue;
    map[k] = y;
    used[y] = true;
    bool ok = true;
    for (size_t x = 0; x <= k && ok; ++x) {
      if (a.hom(static_cast<Id>(k), static_cast<Id>(x)).size() !=
              b.hom(y, map[x]).size() ||
          a.hom(static_cast<Id>(x), static_cast<Id>(k)).size() !=
              b.hom(map[x], y).size())
        ok = false;
    }
    if (ok && extend_iso(a, b, map, used, k + 1)) return true;
    used[y] = false;
  }
  return false;
}

}  // namespace

bool categories_isomorphic(const FinCategory& a, const FinCategory& b) {
  if (a.n_obj() != b.n_obj() || a.n_mor() != b.n_mor()) return false;
  std::vector<Id> map(a.n_obj(), kNone);
  std::vector<bool> used(b.n_obj(), false);
  if (a.n_obj() == 0) return true;
  return extend_iso(a, b, map, used, 0);
}

bool objects_isomorphic(const FinCategory& c, Id x, Id y) {
  for (Id f : c.hom(x, y))
    if (two_sided_inverse(c, f)) return true;
  return false;
}

// ------------------------------------------------------------------ posets

Poset poset_category(const std::vector<std::vector<bool>>& leq,
                     const std::string& name,
                     const std::vector<std::string>& elem_names) {
  const int n = static_cast<int>(leq.size());
  Poset p;
  p.leq = leq;
  p.arrow.assign(n, std::vector<Id>(n, kNone));
  FinCategory c;
  c.name = name;
  for (int i = 0; i < n; ++i)
    c.obj_names.push_back(elem_names.empty() ? std::to_string(i)
                                             : elem_names[i]);
  for (Id x = 0; x < n; ++x)
    for (Id y = 0; y < n; ++y)
      if (leq[x][y]) {
        p.arrow[x][y] = static_cast<Id>(c.mor_src.size());
        c.mor_src.push_back(x);
        c.mor_dst.push_back(y);
        c.mor_names.push_back(c.obj_names[x] + "≤" + c.obj_names[y]);
      }
  c.identity.resize(n);
  for (Id x = 0; x < n; ++x) {
    if (p.arrow[x][x] == kNone) throw Error("MalformedTable", "not reflexive");
    c.identity[x] = p.arrow[x][x];
  }
  const int nm = static_cast<int>(c.mor_src.size());
  c.compose_table.assign(static_cast<size_t>(nm) * nm, kNone);
  for (Id g = 0; g < nm; ++g)
    for (Id f = 0; f < nm; ++f)
      if (c.mor_dst[f] == c.mor_src[g]) {
        Id r = p.arrow[c.mor_src[f]][c.mor_dst[g]];
        if (r == kNone) throw Error("MalformedTable", "not transitive");
        c.compose_table[static_cast<size_t>(g) * nm + f] = r;
      }
  p.cat = make_category(std::move(c));

  // lattice structure when all binary meets/joins exist
  p.meet.assign(n, std::vector<Id>(n, kNone));
  p.join.assign(n, std::vector<Id>(n, kNone));
  p.is_lattice = n > 0;
  for (Id x = 0; x < n && p.is_lattice; ++x)
    for (Id y = 0; y < n; ++y) {
      for (Id z = 0; z < n; ++z) {  // greatest lower bound
        if (!(leq[z][x] && leq[z][y])) continue;
        bool greatest = true;
        for (Id w = 0; w < n && greatest; ++w)
          if (leq[w][x] && leq[w][y] && !leq[w][z]) greatest = false;
        if (greatest) {
          p.meet[x][y] = z;
          break;
        }
      }
      for (Id z = 0; z < n; ++z) {  // least upper bound
        if (!(leq[x][z] && leq[y][z])) continue;
        bool least = true;
        for (Id w = 0; w < n && least; ++w)
          if (leq[x][w] && leq[y][w] && !leq[z][w]) least = false;
        if (least) {
          p.join[x][y] = z;
          break;
        }
      }
      if (p.meet[x][y] == kNone || p.join[x][y] == kNone) p.is_lattice = false;
    }
  if (p.is_lattice) {
    p.distributive = true;
    for (Id x = 0; x < n && p.distributive; ++x)
      for (Id y = 0; y < n && p.distributive; ++y)
        for (Id z = 0; z < n; ++z)
          if (p.meet[x][p.join[y][z]] != p.join[p.meet[x][y]][p.meet[x][z]]) {
            p.distributive = false;
            break;
          }
  }
  return p;
}

Poset chain_poset(int n) {
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (int x = 0; x < n; ++x)
    for (int y = x; y < n; ++y) leq[x][y] = true;
  std::vector<std::string> names;
  if (n == 3) names = {"0", "m", "1"};
  return poset_category(leq, "chain" + std::to_string(n), names);
}

Poset diamond_poset() {
  // 0 < a,b < 1 with a,b incomparable
  std::vector<std::vector<bool>> leq(4, std::vector<bool>(4, false));
  for (int i = 0; i < 4; ++i) leq[i][i] = true;
  leq[0][1] = leq[0][2] = leq[0][3] = true;
  leq[1][3] = leq[2][3] = true;
  return poset_category(leq, "diamond", {"0", "a", "b", "1"});
}

Poset discrete_poset(int n) {
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) leq[i][i] = true;
  return poset_category(leq, "discrete" + std::to_string(n));
}

CatPtr monoid_category(const std::vector<std::vector<int>>& mul,
                       const std::string& name) {
  const int n = static_cast<int>(mul.size());
  // locate the unit
  int unit = -1;
  for (int e = 0; e < n && unit < 0; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      ok = mul[e][x] == x && mul[x][e] == x;
    if (ok) unit = e;
  }
  if (unit < 0) throw Error("LawViolation", "monoid has no unit");
  FinCategory c;
  c.name = name;
  c.obj_names = {"*"};
  c.identity = {static_cast<Id>(unit)};
  c.mor_src.assign(n, 0);
  c.mor_dst.assign(n, 0);
  c.compose_table.resize(static_cast<size_t>(n) * n);
  for (int g = 0; g < n; ++g)
    for (int f = 0; f < n; ++f)
      c.compose_table[static_cast<size_t>(g) * n + f] =
          static_cast<Id>(mul[g][f]);
  return make_category(std::move(c));
}

}  // namespace fincat
}  // namespace cloakforge
