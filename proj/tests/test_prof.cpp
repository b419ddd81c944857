#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cloakforge/prof.hpp"

using namespace cloakforge;
using namespace cloakforge::fincat;
using namespace cloakforge::magmal;
using namespace cloakforge::prof;

namespace {

Functor interior(const Poset& p, std::vector<Id> op) {
  Functor f;
  f.dom = f.cod = p.cat;
  f.obj_map = std::move(op);
  f.mor_map.resize(p.cat->n_mor());
  for (Id m = 0; m < p.cat->n_mor(); ++m)
    f.mor_map[m] = p.arrow[f.obj_map[p.cat->src(m)]][f.obj_map[p.cat->dst(m)]];
  return f;
}

bool prof_iso(const Profunctor& a, const Profunctor& b) {
  if (a.size != b.size) {
    // sizes may differ as tables and still be isomorphic; fall back
  }
  for (auto& m : enumerate_modmors(a, b))
    if (modmor_iso(a, b, m)) return true;
  return false;
}

}  // namespace

TEST_CASE("profunctor validation and hom profunctor") {
  auto p = chain_poset(3);
  auto h = hom_prof(p.cat);
  CHECK(h.validate().empty());
  CHECK(h.size[0][2] == 1);  // 0 ≤ 1(top)
  CHECK(h.size[2][0] == 0);
}

TEST_CASE("unit laws of module composition via the canonical unitors") {
  auto p = chain_poset(3);
  auto g = interior(p, {0, 0, 2});
  Profunctor m = lower_star(g);
  Profunctor hom_a = hom_prof(p.cat);

  Composite hom_then_m = compose_prof(hom_a, m);  // M∘hom
  ModMor runit = right_unitor(m, hom_then_m);
  CHECK(validate_modmor(hom_then_m.p, m, runit).empty());
  CHECK(modmor_iso(hom_then_m.p, m, runit));

  Composite m_then_hom = compose_prof(m, hom_a);  // hom∘M
  ModMor lunit = left_unitor(m, m_then_hom);
  CHECK(validate_modmor(m_then_hom.p, m, lunit).empty());
  CHECK(modmor_iso(m_then_hom.p, m, lunit));
}

TEST_CASE("relation composition matches the relational oracle") {
  auto p = chain_poset(2);
  auto h = hom_prof(p.cat);  // the ≤ relation
  auto hh = compose_prof(h, h);
  // relational composite of ≤ with itself is ≤ again
  for (Id x = 0; x < 2; ++x)
    for (Id y = 0; y < 2; ++y)
      CHECK(hh.p.size[x][y] == (p.leq[y][x] ? 0 : 0) + (p.leq[x][y] ? 1 : 0));
}

TEST_CASE("lower_star is functorial up to canonical iso") {
  auto p = chain_poset(3);
  auto g = interior(p, {0, 0, 2});
  auto t = interior(p, {0, 2, 2});
  auto comp = fincat::compose(g, t);  // g∘t
  Composite lhs = compose_prof(lower_star(t), lower_star(g));
  Profunctor rhs = lower_star(comp);
  CHECK(prof_iso(lhs.p, rhs));
}

TEST_CASE("associativity of coend composition via the constructed associator") {
  auto p = chain_poset(3);
  auto g = interior(p, {0, 0, 2});
  Profunctor m = lower_star(g);
  Profunctor n = upper_star(g);
  Profunctor o = hom_prof(p.cat);
  Composite mn = compose_prof(m, n);
  Composite no = compose_prof(n, o);
  Composite mn_o = compose_prof(mn.p, o);
  Composite m_no = compose_prof(m, no.p);
  ModMor a = associator(m, n, o, mn, no, mn_o, m_no);
  CHECK(validate_modmor(m_no.p, mn_o.p, a).empty());
  CHECK(modmor_iso(m_no.p, mn_o.p, a));
}

TEST_CASE("associator on the one-object Z/2 (multi-element homs)") {
  auto z2 = monoid_category({{0, 1}, {1, 0}}, "Z2");
  Profunctor h = hom_prof(z2);
  Composite hh = compose_prof(h, h);
  CHECK(hh.p.validate().empty());  // induced actions descend to the quotient
  CHECK(hh.p.size[0][0] == 2);  // coyoneda: two classes, graded by product
  Composite hh_h = compose_prof(hh.p, h);
  Composite h_hh = compose_prof(h, hh.p);
  ModMor a = associator(h, h, h, hh, hh, hh_h, h_hh);
  CHECK(validate_modmor(h_hh.p, hh_h.p, a).empty());
  CHECK(modmor_iso(h_hh.p, hh_h.p, a));
  ModMor lu = left_unitor(h, compose_prof(h, h));
  CHECK(modmor_iso(hh.p, h, lu));
}

TEST_CASE("F_* ⊣ F^* with verified triangle identities") {
  auto p = chain_poset(3);
  CHECK(lower_upper_adjunction(interior(p, {0, 0, 2})));
  CHECK(lower_upper_adjunction(interior(p, {0, 2, 2})));
  CHECK(lower_upper_adjunction(identity_functor(p.cat)));
  auto z2 = monoid_category({{0, 1}, {1, 0}}, "Z2");
  CHECK(lower_upper_adjunction(identity_functor(z2)));
}

TEST_CASE("G_* of an interior operator is the expected relation") {
  auto p = chain_poset(3);
  auto g = interior(p, {0, 0, 2});
  auto m = lower_star(g);
  for (Id y = 0; y < 3; ++y)
    for (Id z = 0; z < 3; ++z)
      CHECK(m.size[y][z] == (p.leq[y][g.ob(z)] ? 1 : 0));

  auto found = is_representable(m);
  REQUIRE(found.has_value());
  CHECK(found->obj_map == g.obj_map);

  // identity functor: hom both ways
  auto hid = lower_star(identity_functor(p.cat));
  auto found2 = is_representable(hid);
  REQUIRE(found2.has_value());
  CHECK(found2->obj_map == identity_functor(p.cat).obj_map);
}

TEST_CASE("barring: unit, representables, and the terminal example") {
  auto p = chain_poset(3);
  auto g = interior(p, {0, 0, 2});

  // bar(hom, F) ≅ F
  Presheaf f = yoneda(p.cat, 1);
  auto b1 = bar(hom_prof(p.cat), f);
  CHECK(presheaves_isomorphic(b1.p, f));

  // bar(G_*, yo(1-top)) = presheaf x ↦ {∗ iff x ≤ g(top)=top}: terminal
  auto b2 = bar(lower_star(g), yoneda(p.cat, 2));
  CHECK(presheaves_isomorphic(b2.p, terminal_presheaf(p.cat)));

  // bar(N, yo(B)) ≅ N(-,B) for every object and a handful of Ns
  for (const auto& n :
       {lower_star(g), upper_star(g), hom_prof(p.cat)}) {
    for (Id bb = 0; bb < 3; ++bb) {
      auto br = bar(n, yoneda(p.cat, bb));
      for (Id x = 0; x < 3; ++x) CHECK(br.p.size[x] == n.size[x][bb]);
    }
  }

  // functoriality: bar(N∘M, F) ≅ bar(N, bar(M,F))
  Profunctor m = upper_star(g), n = lower_star(g);
  Composite nm = compose_prof(m, n);
  auto lhs = bar(nm.p, f);
  auto rhs = bar(n, bar(m, f).p);
  CHECK(presheaves_isomorphic(lhs.p, rhs.p));
}

TEST_CASE("Day convolution of representables is representable") {
  auto p = chain_poset(3);
  auto c = meet_magmal(p);
  auto d = day_convolution(c, yoneda(p.cat, 1), yoneda(p.cat, 2));
  CHECK(presheaves_isomorphic(d.p, yoneda(p.cat, 1)));  // m∧1 = m

  auto pd = diamond_poset();
  auto cd = meet_magmal(pd);
  auto dd = day_convolution(cd, yoneda(pd.cat, 1), yoneda(pd.cat, 2));
  CHECK(presheaves_isomorphic(dd.p, yoneda(pd.cat, 0)));  // a∧b = 0

  auto de = day_convolution(c, empty_presheaf(p.cat), yoneda(p.cat, 2));
  CHECK(presheaves_isomorphic(de.p, empty_presheaf(p.cat)));

  // Yoneda strong magmality across all pairs on both bases
  for (Id y = 0; y < 3; ++y)
    for (Id z = 0; z < 3; ++z) {
      auto dz = day_convolution(c, yoneda(p.cat, y), yoneda(p.cat, z));
      CHECK(presheaves_isomorphic(dz.p, yoneda(p.cat, p.meet[y][z])));
    }
  for (Id y = 0; y < 4; ++y)
    for (Id z = 0; z < 4; ++z) {
      auto dz = day_convolution(cd, yoneda(pd.cat, y), yoneda(pd.cat, z));
      CHECK(presheaves_isomorphic(dz.p, yoneda(pd.cat, pd.meet[y][z])));
    }
}

TEST_CASE("presheaf cloaks: pointwise ends and representable identities") {
  auto p = chain_poset(3);
  auto c = meet_magmal(p);

  // [yo m, yo 0] at top is empty (hom(1∧m, 0) = ∅)
  auto hk = presheaf_cloak(c, yoneda(p.cat, 1), yoneda(p.cat, 0));
  CHECK(hk.p.size[2] == 0);
  CHECK(hk.p.size[0] == 1);

  // [empty, K] is terminal
  auto he = presheaf_cloak(c, empty_presheaf(p.cat), yoneda(p.cat, 1));
  CHECK(presheaves_isomorphic(he.p, terminal_presheaf(p.cat)));

  // [yo Y, yo Z]X ≅ C(X⊗Y, Z) on all triples
  for (Id y = 0; y < 3; ++y)
    for (Id z = 0; z < 3; ++z) {
      auto k = presheaf_cloak(c, yoneda(p.cat, y), yoneda(p.cat, z));
      for (Id x = 0; x < 3; ++x)
        CHECK(k.p.size[x] ==
              static_cast<int>(p.cat->hom(p.meet[x][y], z).size()));
    }

  // universal bijection against the bounded presheaf test set
  auto tests = enumerate_presheaves(p.cat, limits().presheaf_total,
                                    limits().presheaf_per_object);
  CHECK(tests.size() > 10);
  auto k10 = presheaf_cloak(c, yoneda(p.cat, 1), yoneda(p.cat, 0));
  CHECK(presheaf_cloak_bijection(c, yoneda(p.cat, 1), yoneda(p.cat, 0), k10,
                                 tests));
}

TEST_CASE("right liftings: units, adjoints, and the pasting bijection") {
  auto p = chain_poset(3);
  auto g = interior(p, {0, 0, 2});
  auto homp = hom_prof(p.cat);

  // rif(hom, B) ≅ B
  auto b = lower_star(g);
  auto r = right_lifting(homp, b);
  CHECK(prof_iso(r.lift, b));

  // S = F_* has right adjoint F^*: rif(S,B) ≅ F^*∘B
  auto s = lower_star(g);
  auto rs = right_lifting(s, b);
  Composite expect = compose_prof(b, upper_star(g));
  CHECK(prof_iso(rs.lift, expect.p));

  // pasting bijection over the bounded profunctor test set
  auto tests = test_profunctors(p.cat, p.cat);
  CHECK(tests.size() >= 20);
  CHECK(lifting_bijection(s, b, rs, tests));

  // rif(S,−) respects precomposition on suite instances (S a left adjoint)
  for (const auto& k1 : tests) CHECK(respects(s, b, rs, k1));
}

TEST_CASE("B-series.1: rif cancellation") {
  auto p = chain_poset(3);
  auto g = interior(p, {0, 0, 2});
  auto s = lower_star(g);
  auto u = lower_star(interior(p, {0, 2, 2}));
  auto c = hom_prof(p.cat);
  auto rep = check_b1(s, u, c);
  CHECK(rep.iso);
  CHECK(rep.pasting_ok);

  // S = hom: liftings equal on the nose
  auto rep2 = check_b1(hom_prof(p.cat), u, c);
  CHECK(rep2.iso);
}

namespace {

// hom ⊕ hom with the split unit: the smallest M whose unit insertion is a
// mono after whiskering with arbitrary modules.
Profunctor double_hom(const CatPtr& c) {
  Profunctor h = hom_prof(c);
  Profunctor m = h;
  for (size_t x = 0; x < m.size.size(); ++x)
    for (size_t y = 0; y < m.size[x].size(); ++y) m.size[x][y] *= 2;
  for (size_t g = 0; g < m.lact.size(); ++g)
    for (size_t y = 0; y < m.lact[g].size(); ++y) {
      auto base = h.lact[g][y];
      int half = static_cast<int>(h.size[c->src(static_cast<Id>(g))][y]);
      m.lact[g][y].clear();
      for (int e : base) m.lact[g][y].push_back(e);
      for (int e : base) m.lact[g][y].push_back(e + half);
    }
  for (size_t f = 0; f < m.ract.size(); ++f)
    for (size_t x = 0; x < m.ract[f].size(); ++x) {
      auto base = h.ract[f][x];
      int half = static_cast<int>(h.size[x][c->dst(static_cast<Id>(f))]);
      m.ract[f][x].clear();
      for (int e : base) m.ract[f][x].push_back(e);
      for (int e : base) m.ract[f][x].push_back(e + half);
    }
  return m;
}

}  // namespace

TEST_CASE("B-series.2 on a split-unit instance") {
  auto p = chain_poset(2);
  Profunctor m = double_hom(p.cat);
  REQUIRE(m.validate().empty());
  Profunctor homp = hom_prof(p.cat);
  ModMor eta = identity_modmor(homp);  // first-copy inclusion
  REQUIRE(validate_modmor(homp, m, eta).empty());

  auto g = interior(p, {0, 1});
  Profunctor s = lower_star(g);
  Profunctor b = hom_prof(p.cat);
  auto tests = test_profunctors(p.cat, p.cat);
  auto rep = check_b2(s, m, b, eta, tests);
  CHECK(rep.hyp_eta_b_mono);
  CHECK(rep.hyp_eta_b_regular);
  CHECK(rep.hyp_eta_c_mono);
  CHECK(rep.fork_equalizer);
  CHECK(rep.omega_iso);
  CHECK(rep.equivalence);
}

TEST_CASE("B-series.2 hypothesis detector rejects the closure unit") {
  // M = T_* of the constant closure: the unit insertion collapses elements
  // after whiskering, so the fork is honestly not an equalizer there.
  auto p = chain_poset(2);
  auto t = interior(p, {1, 1});
  Profunctor m = lower_star(t);
  Profunctor homp = hom_prof(p.cat);
  ModMor eta;
  eta.comp.resize(2);
  for (Id x = 0; x < 2; ++x) {
    eta.comp[x].resize(2);
    for (Id y = 0; y < 2; ++y) eta.comp[x][y].assign(homp.size[x][y], 0);
  }
  REQUIRE(validate_modmor(homp, m, eta).empty());
  auto tests = test_profunctors(p.cat, p.cat);
  auto rep = check_b2(lower_star(interior(p, {0, 1})), m, hom_prof(p.cat),
                      eta, tests);
  CHECK(!rep.hyp_eta_b_regular);  // no witnessing pair in the bounded homcat
  CHECK(!rep.fork_equalizer);     // and indeed (i) fails without it
}

TEST_CASE("B-series.3 matches rif(S,B) with the transported equalizer") {
  // U = F_* of the fully faithful chain2 ↪ chain3; rif(U,U) ≅ hom and the
  // unit hypotheses hold on the nose.
  auto p2 = chain_poset(2);
  auto p3 = chain_poset(3);
  Functor inc;
  inc.dom = p2.cat;
  inc.cod = p3.cat;
  inc.obj_map = {0, 2};
  inc.mor_map.resize(p2.cat->n_mor());
  for (Id m = 0; m < p2.cat->n_mor(); ++m)
    inc.mor_map[m] =
        p3.arrow[inc.obj_map[p2.cat->src(m)]][inc.obj_map[p2.cat->dst(m)]];
  Profunctor u = lower_star(inc);
  Profunctor s = lower_star(interior(p2, {0, 1}));
  Profunctor b = hom_prof(p2.cat);
  auto tests = test_profunctors(p2.cat, p2.cat);
  auto rep = check_b3(s, u, b, tests);
  CHECK(rep.hyp_respected);
  CHECK(rep.hyp_eta);
  CHECK(rep.match);
  CHECK(rep.respect_iff);
}

TEST_CASE("Dubuc adjoint triangle on the fixpoint inclusion") {
  // U = und of (chain3, g_drop_m)'s EM poset has right adjoint cofree;
  // S : fixpoints ↪ EM is the identity here, so use a chain2 → chain3 shape:
  // B = chain2 (the EM poset {0,1}), C = chain3, U the inclusion with right
  // adjoint, S = identity on chain2.
  auto p2 = chain_poset(2);
  auto p3 = chain_poset(3);
  Functor u;
  u.dom = p2.cat;
  u.cod = p3.cat;
  u.obj_map = {0, 2};
  u.mor_map.resize(p2.cat->n_mor());
  for (Id m = 0; m < p2.cat->n_mor(); ++m)
    u.mor_map[m] = p3.arrow[u.obj_map[p2.cat->src(m)]][u.obj_map[p2.cat->dst(m)]];
  Functor s = identity_functor(p2.cat);
  std::vector<CatPtr> probes{chain_poset(1).cat, chain_poset(2).cat};
  auto rep = check_dubuc(s, u, probes);
  CHECK(rep.s_has_right_adjoint);
  CHECK(rep.us_has_right_adjoint);
  CHECK(rep.verdict == DubucVerdict::Holds);
}
