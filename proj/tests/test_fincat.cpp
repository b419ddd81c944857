#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cloakforge/fincat.hpp"

using namespace cloakforge;
using namespace cloakforge::fincat;

namespace {

// Chain poset helpers used across the suite.
Poset chain3() { return chain_poset(3); }

Functor monotone(const Poset& p, std::vector<Id> obj) {
  Functor f;
  f.dom = f.cod = p.cat;
  f.obj_map = std::move(obj);
  f.mor_map.assign(p.cat->n_mor(), kNone);
  for (Id m = 0; m < p.cat->n_mor(); ++m)
    f.mor_map[m] = p.arrow[f.obj_map[p.cat->src(m)]][f.obj_map[p.cat->dst(m)]];
  return f;
}

}  // namespace

TEST_CASE("chain3 validates with an empty report") {
  auto p = chain3();
  CHECK(p.cat->validate().empty());
  CHECK(p.cat->n_obj() == 3);
  CHECK(p.cat->n_mor() == 6);
  CHECK(p.is_lattice);
  CHECK(p.distributive);
}

TEST_CASE("redirected identity entry produces an identity-law violation") {
  auto p = chain3();
  FinCategory broken = *p.cat;
  broken.identity[0] = p.arrow[0][1];  // not an endomorphism of 0
  auto report = validate_category(broken);
  CHECK(!report.empty());
}

TEST_CASE("one-object category from Z/2 multiplication is lawful") {
  auto z2 = monoid_category({{0, 1}, {1, 0}}, "Z2");
  CHECK(z2->validate().empty());
  // its nonidentity arrow is an iso (self-inverse)
  auto cls = morphism_class(*z2, 1);
  CHECK(cls.iso);
  CHECK(cls.mono);
  CHECK(cls.epi);
}

TEST_CASE("equalizers in posets degenerate to sources") {
  auto p = chain3();
  Id f = p.arrow[0][2];
  auto e = find_equalizer(*p.cat, f, f);
  REQUIRE(e.has_value());
  CHECK(e->obj == 0);
  CHECK(e->mor == p.cat->id(0));
}

TEST_CASE("genuine fork in a built category has the expected equalizer") {
  // objects: E, A, B plus a probe P; arrows k : E→A, u,v : A→B with u∘k = v∘k,
  // plus h : P→A equalized by u,v, factoring through k.
  FinCategory c;
  c.name = "fork";
  c.obj_names = {"E", "A", "B", "P"};
  auto add = [&](Id s, Id d, const std::string& n) {
    c.mor_src.push_back(s);
    c.mor_dst.push_back(d);
    c.mor_names.push_back(n);
    return static_cast<Id>(c.mor_src.size() - 1);
  };
  Id iE = add(0, 0, "1E"), iA = add(1, 1, "1A"), iB = add(2, 2, "1B"),
     iP = add(3, 3, "1P");
  Id k = add(0, 1, "k");
  Id u = add(1, 2, "u"), v = add(1, 2, "v");
  Id w = add(0, 2, "w");   // u∘k = v∘k = w
  Id h = add(3, 1, "h");   // the probe, h = k∘e
  Id e = add(3, 0, "e");
  Id hw = add(3, 2, "hw");  // u∘h = v∘h = w∘e
  c.identity = {iE, iA, iB, iP};
  const int nm = c.n_mor();
  c.compose_table.assign(static_cast<size_t>(nm) * nm, kNone);
  auto set = [&](Id g, Id f, Id r) {
    c.compose_table[static_cast<size_t>(g) * nm + f] = r;
  };
  for (Id m = 0; m < nm; ++m) {
    set(m, c.identity[c.mor_src[m]], m);
    set(c.identity[c.mor_dst[m]], m, m);
  }
  set(u, k, w);
  set(v, k, w);
  set(k, e, h);
  set(u, h, hw);
  set(v, h, hw);
  set(w, e, hw);
  auto cat = make_category(std::move(c));
  auto eq = find_equalizer(*cat, u, v);
  REQUIRE(eq.has_value());
  CHECK(eq->obj == 0);
  CHECK(eq->mor == k);
  auto cls = morphism_class(*cat, k);
  CHECK(cls.regular_mono);
}

TEST_CASE("parallel arrows without an equalizing object") {
  // two objects, two parallel arrows, no equalizer candidate works
  FinCategory c;
  c.name = "pair";
  c.obj_names = {"A", "B"};
  c.mor_src = {0, 1, 0, 0};
  c.mor_dst = {0, 1, 1, 1};
  c.mor_names = {"1A", "1B", "u", "v"};
  c.identity = {0, 1};
  const int nm = 4;
  c.compose_table.assign(16, kNone);
  auto set = [&](Id g, Id f, Id r) {
    c.compose_table[static_cast<size_t>(g) * nm + f] = r;
  };
  for (Id m = 0; m < nm; ++m) {
    set(m, c.identity[c.mor_src[m]], m);
    set(c.identity[c.mor_dst[m]], m, m);
  }
  auto cat = make_category(std::move(c));
  CHECK(!find_equalizer(*cat, 2, 3).has_value());
  CHECK_THROWS_AS((void)find_equalizer(*cat, 0, 2), Error);
}

TEST_CASE("right adjoint of a closure on chain3 is the expected interior") {
  auto p = chain3();
  Functor t = monotone(p, {0, 2, 2});
  REQUIRE(t.validate().empty());
  auto adj = find_right_adjoint(t);
  REQUIRE(adj.has_value());
  CHECK(adj->right.obj_map == std::vector<Id>{0, 0, 2});
  CHECK(adj->validate().empty());
  // identity functor is self-adjoint
  auto idadj = find_right_adjoint(identity_functor(p.cat));
  REQUIRE(idadj.has_value());
  CHECK(idadj->right.obj_map == std::vector<Id>{0, 1, 2});
}

TEST_CASE("constant-top endofunctor on chain2 has no right adjoint") {
  auto p = chain_poset(2);
  Functor f = constant_functor(p.cat, p.cat, 1);
  CHECK(!find_right_adjoint(f).has_value());
  CHECK(!right_adjoint_via_comma(f).has_value());
}

TEST_CASE("search and comma oracle agree on all chain3 endofunctors") {
  auto p = chain3();
  for (const auto& f : enumerate_functors(p.cat, p.cat)) {
    auto a = find_right_adjoint(f);
    auto b = right_adjoint_via_comma(f);
    CHECK(a.has_value() == b.has_value());
    if (a && b) CHECK(a->right.obj_map == b->right.obj_map);
  }
}

TEST_CASE("mate bijection round-trips and reproduces the interior 2-cell") {
  auto p = chain3();
  Functor t = monotone(p, {0, 2, 2});
  auto adj = find_right_adjoint(t);
  REQUIRE(adj.has_value());
  Functor g = adj->right;

  // comonad 2-cells of g from monad 2-cells of t by mates: mu : t∘t ⇒ t maps
  // to delta : g ⇒ g∘g under (t∘t ⊣ g∘g) and (t ⊣ g).
  auto adj2 = compose_adjunction(*adj, *adj);
  CHECK(adj2.validate().empty());
  Functor idf = identity_functor(p.cat);
  NatTrans mu;
  mu.dom = compose(t, t);
  mu.cod = t;
  mu.components.resize(3);
  for (Id x = 0; x < 3; ++x)
    mu.components[x] = p.arrow[t.ob(t.ob(x))][t.ob(x)];
  REQUIRE(mu.validate().empty());

  NatTrans delta = mate_backward(*adj, adj2, idf, idf, mu);
  CHECK(delta.validate().empty());
  for (Id x = 0; x < 3; ++x)
    CHECK(delta.at(x) == p.arrow[g.ob(x)][g.ob(g.ob(x))]);

  NatTrans back = mate_forward(*adj, adj2, idf, idf, delta);
  CHECK(back.components == mu.components);

  // identity 2-morphism under identity adjunctions stays the identity
  auto ida = identity_adjunction(p.cat);
  NatTrans idn = identity_nat(idf);
  NatTrans m = mate_forward(ida, ida, idf, idf, idn);
  CHECK(m.components == idn.components);
}

TEST_CASE("functor categories at small exponents") {
  auto p2 = chain_poset(2);
  auto fc = functor_category(p2.cat, p2.cat);
  CHECK(fc.objects.size() == 3);  // const0 ≤ id ≤ const1
  CHECK(categories_isomorphic(*fc.cat, *chain3().cat));

  auto d2 = discrete_poset(2);
  auto fc2 = functor_category(d2.cat, p2.cat);
  auto prod = product_category(p2.cat, p2.cat);
  CHECK(categories_isomorphic(*fc2.cat, *prod.prod));

  auto term = chain_poset(1);
  auto fc3 = functor_category(term.cat, chain3().cat);
  CHECK(categories_isomorphic(*fc3.cat, *chain3().cat));
}

TEST_CASE("poset morphisms are mono and epi") {
  auto p = chain3();
  auto cls = morphism_class(*p.cat, p.arrow[0][2]);
  CHECK(cls.mono);
  CHECK(cls.epi);
  CHECK(!cls.iso);
}

TEST_CASE("split mono is regular mono") {
  // chain2 in Set-like table: use Z/2 where the identity is split
  auto p = chain3();
  auto cls = morphism_class(*p.cat, p.cat->id(1));
  CHECK(cls.regular_mono);
}

TEST_CASE("opposite is involutive and swaps adjunctions") {
  auto p = chain3();
  auto op = opposite(p.cat);
  CHECK(op->validate().empty());
  auto opop = opposite(op);
  CHECK(categories_isomorphic(*p.cat, *opop));
}

TEST_CASE("equalizer witnesses are canonical up to iso under relabeling") {
  // permute chain3's labels; the equalizer of the permuted pair must be the
  // permuted object (posets: isomorphic = equal)
  auto p = chain3();
  std::vector<Id> perm{2, 0, 1};
  std::vector<std::vector<bool>> leq(3, std::vector<bool>(3, false));
  for (Id x = 0; x < 3; ++x)
    for (Id y = 0; y < 3; ++y) leq[perm[x]][perm[y]] = p.leq[x][y];
  auto q = poset_category(leq, "chain3-perm");
  for (Id f = 0; f < p.cat->n_mor(); ++f) {
    auto e1 = find_equalizer(*p.cat, f, f);
    Id qf = q.arrow[perm[p.cat->src(f)]][perm[p.cat->dst(f)]];
    auto e2 = find_equalizer(*q.cat, qf, qf);
    REQUIRE(e1.has_value());
    REQUIRE(e2.has_value());
    CHECK(perm[e1->obj] == e2->obj);
  }
}

TEST_CASE("mate round-trips over a generated suite of 2-morphisms") {
  auto p = chain3();
  // two closure/interior adjunctions on chain3
  std::vector<std::pair<std::vector<Id>, std::vector<Id>>> pairs{
      {{0, 2, 2}, {0, 0, 2}}, {{0, 1, 2}, {0, 1, 2}}, {{2, 2, 2}, {0, 0, 2}}};
  for (auto& [top, gop] : pairs) {
    Functor t = monotone(p, top), g = monotone(p, gop);
    Adjunction adj{t, g, {}, {}};
    adj.unit.dom = identity_functor(p.cat);
    adj.unit.cod = fincat::compose(g, t);
    adj.counit.dom = fincat::compose(t, g);
    adj.counit.cod = identity_functor(p.cat);
    for (Id x = 0; x < 3; ++x) {
      adj.unit.components.push_back(p.arrow[x][g.ob(t.ob(x))]);
      adj.counit.components.push_back(p.arrow[t.ob(g.ob(x))][x]);
    }
    if (!adj.validate().empty()) continue;
    // every 2-morphism phi : s∘u ⇒ u∘s' between monotone endomaps
    for (const auto& s : enumerate_functors(p.cat, p.cat))
      for (const auto& s2 : enumerate_functors(p.cat, p.cat)) {
        auto phis = enumerate_nattrans(fincat::compose(s, adj.right),
                                       fincat::compose(adj.right, s2));
        for (auto& phi : phis) {
          NatTrans m = mate_forward(adj, adj, s2, s, phi);
          NatTrans back = mate_backward(adj, adj, s2, s, m);
          CHECK(back.components == phi.components);
        }
      }
  }
}

TEST_CASE("adjoint search agrees with the comma oracle on the diamond") {
  auto p = diamond_poset();
  for (const auto& f : enumerate_functors(p.cat, p.cat)) {
    auto a = find_right_adjoint(f);
    auto b = right_adjoint_via_comma(f);
    CHECK(a.has_value() == b.has_value());
    if (a && b) CHECK(a->right.obj_map == b->right.obj_map);
  }
}
