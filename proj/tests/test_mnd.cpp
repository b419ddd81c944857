#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cloakforge/mnd.hpp"

using namespace cloakforge;
using namespace cloakforge::fincat;
using namespace cloakforge::mnd;

namespace {

Monad poset_closure(const Poset& p, std::vector<Id> op) {
  Monad m;
  m.endo.dom = m.endo.cod = p.cat;
  m.endo.obj_map = std::move(op);
  m.endo.mor_map.resize(p.cat->n_mor());
  for (Id f = 0; f < p.cat->n_mor(); ++f)
    m.endo.mor_map[f] =
        p.arrow[m.endo.obj_map[p.cat->src(f)]][m.endo.obj_map[p.cat->dst(f)]];
  m.unit.dom = identity_functor(p.cat);
  m.unit.cod = m.endo;
  m.mult.dom = fincat::compose(m.endo, m.endo);
  m.mult.cod = m.endo;
  for (Id x = 0; x < p.cat->n_obj(); ++x) {
    m.unit.components.push_back(p.arrow[x][m.endo.ob(x)]);
    m.mult.components.push_back(
        p.arrow[m.endo.ob(m.endo.ob(x))][m.endo.ob(x)]);
  }
  REQUIRE(m.validate().empty());
  return m;
}

NatTrans poset_cell(const Poset& p, const Functor& from, const Functor& to) {
  NatTrans t;
  t.dom = from;
  t.cod = to;
  for (Id x = 0; x < from.dom->n_obj(); ++x)
    t.components.push_back(p.arrow[from.ob(x)][to.ob(x)]);
  REQUIRE(t.validate().empty());
  return t;
}

}  // namespace

TEST_CASE("monad morphism validation across the four flavors") {
  auto p = chain_poset(3);
  Monad t = poset_closure(p, {0, 2, 2});
  MndMor idm = identity_mnd_morphism(t);
  CHECK(check_mnd_morphism(t, t, idm).empty());

  // comonad flavors on an interior operator
  Comonad g;
  g.endo.dom = g.endo.cod = p.cat;
  g.endo.obj_map = {0, 0, 2};
  g.endo.mor_map.resize(p.cat->n_mor());
  for (Id f = 0; f < p.cat->n_mor(); ++f)
    g.endo.mor_map[f] =
        p.arrow[g.endo.obj_map[p.cat->src(f)]][g.endo.obj_map[p.cat->dst(f)]];
  g.counit.dom = g.endo;
  g.counit.cod = identity_functor(p.cat);
  g.comult.dom = g.endo;
  g.comult.cod = fincat::compose(g.endo, g.endo);
  for (Id x = 0; x < 3; ++x) {
    g.counit.components.push_back(p.arrow[g.endo.ob(x)][x]);
    g.comult.components.push_back(
        p.arrow[g.endo.ob(x)][g.endo.ob(g.endo.ob(x))]);
  }
  REQUIRE(g.validate().empty());

  MndMor cm;
  cm.flavor = Flavor::ComonadMor;
  cm.u = identity_functor(p.cat);
  cm.phi = poset_cell(p, fincat::compose(cm.u, g.endo),
                      fincat::compose(g.endo, cm.u));
  CHECK(check_mnd_morphism(g, g, cm).empty());

  MndMor co;
  co.flavor = Flavor::ComonadOpmor;
  co.u = identity_functor(p.cat);
  co.phi = poset_cell(p, fincat::compose(g.endo, co.u),
                      fincat::compose(co.u, g.endo));
  CHECK(check_mnd_morphism(g, g, co).empty());
}

TEST_CASE("EM pseudofunctor on an inclusion of chains") {
  auto p2 = chain_poset(2);
  auto p3 = chain_poset(3);
  Monad s = poset_closure(p2, {0, 1});     // identity closure
  Monad t = poset_closure(p3, {0, 2, 2});  // drop m upward

  auto es = em_object(s);
  auto et = em_object(t);
  CHECK(es.alg.algebras.size() == 2);
  CHECK(et.alg.algebras.size() == 2);  // fixpoints {0,1}

  Functor u;
  u.dom = p2.cat;
  u.cod = p3.cat;
  u.obj_map = {0, 2};
  u.mor_map.resize(p2.cat->n_mor());
  for (Id f = 0; f < p2.cat->n_mor(); ++f)
    u.mor_map[f] = p3.arrow[u.obj_map[p2.cat->src(f)]][u.obj_map[p2.cat->dst(f)]];

  MndMor m;
  m.flavor = Flavor::MonadMor;
  m.u = u;
  m.phi = poset_cell(p3, fincat::compose(t.endo, u), fincat::compose(u, s.endo));
  REQUIRE(check_mnd_morphism(s, t, m).empty());

  FunMor f = em_morphism(s, t, es, et, m);
  CHECK(f.validate().empty());
  CHECK(f.strong());
  // ū sends the two s-algebras to the two t-algebras over u
  for (size_t i = 0; i < es.alg.algebras.size(); ++i)
    CHECK(et.alg.algebras[f.ubar.ob(static_cast<Id>(i))].carrier ==
          u.ob(es.alg.algebras[i].carrier));
}

TEST_CASE("identity monad morphism EM square and local inverse") {
  auto p = chain_poset(3);
  Monad t = poset_closure(p, {0, 2, 2});
  auto e = em_object(t);
  MndMor idm = identity_mnd_morphism(t);
  FunMor f = em_morphism(t, t, e, e, idm);
  CHECK(f.strong());
  // ū is the identity on the algebra category
  CHECK(f.ubar == identity_functor(e.alg.cat.base));

  MndMor back = local_inverse(t, t, e, e, f);
  CHECK(back.u == idm.u);
  CHECK(back.phi.components == idm.phi.components);

  // Remark after A.3: phi invertible iff tau invertible
  NatTrans tau = local_inverse_tau(e, e, f);
  CHECK(is_nat_iso(tau) == is_nat_iso(back.phi));
}

TEST_CASE("local inverse recovers the inclusion morphism up to 2-cell iso") {
  auto p2 = chain_poset(2);
  auto p3 = chain_poset(3);
  Monad s = poset_closure(p2, {0, 1});
  Monad t = poset_closure(p3, {0, 2, 2});
  auto es = em_object(s);
  auto et = em_object(t);
  Functor u;
  u.dom = p2.cat;
  u.cod = p3.cat;
  u.obj_map = {0, 2};
  u.mor_map.resize(p2.cat->n_mor());
  for (Id f = 0; f < p2.cat->n_mor(); ++f)
    u.mor_map[f] = p3.arrow[u.obj_map[p2.cat->src(f)]][u.obj_map[p2.cat->dst(f)]];
  MndMor m;
  m.flavor = Flavor::MonadMor;
  m.u = u;
  m.phi = poset_cell(p3, fincat::compose(t.endo, u), fincat::compose(u, s.endo));

  FunMor f = em_morphism(s, t, es, et, m);
  MndMor back = local_inverse(s, t, es, et, f);
  CHECK(back.u == m.u);
  CHECK(back.phi.components == m.phi.components);

  // EM(local_inverse(f)) is 2-cell isomorphic to f (here equal)
  FunMor f2 = em_morphism(s, t, es, et, back);
  CHECK(f2.ubar == f.ubar);
}

TEST_CASE("local inverse on the one-object Z/2 category") {
  auto z2 = monoid_category({{0, 1}, {1, 0}}, "Z2");
  Monad s = identity_monad(z2);
  auto e = em_object(s);
  MndMor idm = identity_mnd_morphism(s);
  FunMor f = em_morphism(s, s, e, e, idm);
  MndMor back = local_inverse(s, s, e, e, f);
  CHECK(back.phi.components == idm.phi.components);
}

TEST_CASE("doctrinal adjunction A.1") {
  auto p = chain_poset(3);
  Monad t = poset_closure(p, {0, 2, 2});

  SUBCASE("identity morphism: left adjoint is the identity") {
    MndMor idm = identity_mnd_morphism(t);
    auto v = doctrinal_a1(t, t, idm);
    CHECK(v.adjoint_in_mnd);
    CHECK(v.u_has_left_adjoint);
    CHECK(v.mate_invertible);
    CHECK(v.agree);
    REQUIRE(v.doctrinal_left_adjoint.has_value());
  }

  SUBCASE("constant functor lacks a left adjoint; both sides false") {
    auto p2 = chain_poset(2);
    Monad s2 = poset_closure(p2, {0, 1});
    MndMor m;
    m.flavor = Flavor::MonadMor;
    m.u = constant_functor(p2.cat, p2.cat, 0);
    m.phi = poset_cell(p2, fincat::compose(s2.endo, m.u),
                       fincat::compose(m.u, s2.endo));
    REQUIRE(check_mnd_morphism(s2, s2, m).empty());
    auto v = doctrinal_a1(s2, s2, m);
    CHECK(!v.adjoint_in_mnd);
    CHECK(!v.u_has_left_adjoint);
    CHECK(v.agree);
  }

  SUBCASE("interior operator as a morphism of identity monads") {
    Monad id3 = identity_monad(p.cat);
    MndMor m;
    m.flavor = Flavor::MonadMor;
    Functor g;
    g.dom = g.cod = p.cat;
    g.obj_map = {0, 0, 2};
    g.mor_map.resize(p.cat->n_mor());
    for (Id f = 0; f < p.cat->n_mor(); ++f)
      g.mor_map[f] = p.arrow[g.obj_map[p.cat->src(f)]][g.obj_map[p.cat->dst(f)]];
    m.u = g;
    m.phi = poset_cell(p, fincat::compose(id3.endo, g),
                       fincat::compose(g, id3.endo));
    auto v = doctrinal_a1(id3, id3, m);
    CHECK(v.u_has_left_adjoint);  // the closure (0,1,1)... (0,2,2) ⊣ g
    CHECK(v.agree);
  }
}

TEST_CASE("doctrinal adjunction A.2 on EM squares") {
  auto p = chain_poset(3);
  Monad t = poset_closure(p, {0, 2, 2});
  auto e = em_object(t);
  FunMor f = em_morphism(t, t, e, e, identity_mnd_morphism(t));
  auto v = doctrinal_a2(f);
  CHECK(v.adjoint_in_fun);
  CHECK(v.parts);
  CHECK(v.agree);
  CHECK(v.checked_strong_right);
  CHECK(v.strong_right_iff);
}

TEST_CASE("corollaries A.4 and A.5") {
  auto p = chain_poset(3);
  Monad t = poset_closure(p, {0, 2, 2});
  auto e = em_object(t);
  MndMor idm = identity_mnd_morphism(t);

  auto a4 = corollary_a4(t, t, e, e, idm);
  CHECK(a4.mnd_side);
  CHECK(a4.fun_side);
  CHECK(a4.agree);

  auto a5 = corollary_a5(t, t, e, e, idm);
  CHECK(a5.agree);
  CHECK(a5.hypothesis);
  CHECK(a5.rbar_found);
  CHECK(a5.iso_exhibited);

  // g_drop_m between identity monads: φ invertible, u has a right adjoint
  Monad id3 = identity_monad(p.cat);
  auto eid = em_object(id3);
  MndMor m;
  m.flavor = Flavor::MonadMor;
  Functor g;
  g.dom = g.cod = p.cat;
  g.obj_map = {0, 0, 2};
  g.mor_map.resize(p.cat->n_mor());
  for (Id f = 0; f < p.cat->n_mor(); ++f)
    g.mor_map[f] = p.arrow[g.obj_map[p.cat->src(f)]][g.obj_map[p.cat->dst(f)]];
  m.u = g;
  m.phi = poset_cell(p, fincat::compose(id3.endo, g),
                     fincat::compose(g, id3.endo));
  auto a5b = corollary_a5(id3, id3, eid, eid, m);
  CHECK(a5b.agree);
  CHECK(a5b.hypothesis);
  CHECK(a5b.rbar_found);
  CHECK(a5b.iso_exhibited);
}
