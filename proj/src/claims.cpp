#include "cloakforge/claims.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <sstream>

#include "cloakforge/parallel.hpp"

namespace cloakforge::claims {

using dsl::InstanceDoc;
using dsl::Report;
using fincat::CatPtr;
using fincat::Id;
using fincat::kNone;

namespace {

struct ComonadCell {
  std::string name;
  magmal::MagmalComonad g;
};

std::vector<ComonadCell> expand_comonads(const std::vector<InstanceDoc>& docs) {
  std::vector<ComonadCell> out;
  for (const auto& d : docs) {
    if (d.comonad) {
      out.push_back({d.name, *d.comonad});
    } else if (d.poset && d.magmal_cat) {
      for (auto& op : dsl::interior_operators(*d.poset))
        if (auto g = magmal::poset_comonad(*d.magmal_cat, op)) {
          std::string nm = d.name + "-int(";
          for (Id x = 0; x < d.category->n_obj(); ++x) {
            if (x) nm += ",";
            nm += d.category->obj_name(op[x]);
          }
          nm += ")";
          out.push_back({nm, *g});
        }
    }
  }
  return out;
}

struct MonadCell {
  std::string name;
  em::OpmagmalMonad t;
};

std::vector<MonadCell> expand_monads(const std::vector<InstanceDoc>& docs) {
  std::vector<MonadCell> out;
  for (const auto& d : docs) {
    if (d.monad) {
      out.push_back({d.name, *d.monad});
    } else if (d.poset && d.magmal_cat) {
      for (auto& op : dsl::closure_operators(*d.poset))
        if (auto t = em::poset_monad(*d.magmal_cat, op)) {
          std::string nm = d.name + "-cl(";
          for (Id x = 0; x < d.category->n_obj(); ++x) {
            if (x) nm += ",";
            nm += d.category->obj_name(op[x]);
          }
          nm += ")";
          out.push_back({nm, *t});
        }
    }
  }
  return out;
}

Report make_report(const std::string& claim, const std::string& instance,
                   bool holds, const std::string& detail) {
  Report r;
  r.claim = claim;
  r.instance = instance;
  r.holds = holds;
  r.detail = detail;
  return r;
}

// ------------------------------------------- comonad-grid claim runners

std::vector<Report> run_l24(const std::vector<InstanceDoc>& docs) {
  std::vector<Report> out;
  for (auto& cell : expand_comonads(docs)) {
    auto cloaks = magmal::compute_cloaks(cell.g.carrier());
    auto emc = em::build_em(cell.g);
    bool holds = true;
    std::string detail;
    int cells = 0;
    for (Id y = 0; y < static_cast<Id>(emc.coalgebras.size()); ++y)
      for (Id z = 0; z < static_cast<Id>(emc.coalgebras.size()); ++z) {
        std::optional<magmal::Cloak> viaeq;
        try {
          viaeq = em::cloak_via_equalizer(emc, cell.g, cloaks, y, z);
        } catch (const Error& e) {
          if (e.code() == "MissingBaseCloaks") continue;
          holds = false;
          detail = e.what();
          continue;
        }
        ++cells;
        auto direct = magmal::find_cloak(emc.cat, y, z);
        if (viaeq.has_value() != direct.has_value() ||
            (viaeq && direct && viaeq->hom_obj != direct->hom_obj)) {
          holds = false;
          detail = "equalizer route disagrees with the direct search";
        }
      }
    out.push_back(make_report("L2.4", cell.name, holds,
                              holds ? std::to_string(cells) + " cells"
                                    : detail));
  }
  return out;
}

std::vector<Report> run_l25(const std::vector<InstanceDoc>& docs) {
  std::vector<Report> out;
  for (auto& cell : expand_comonads(docs)) {
    auto cloaks = magmal::compute_cloaks(cell.g.carrier());
    auto emc = em::build_em(cell.g);
    const auto& b = *cell.g.carrier().base;
    bool holds = true;
    std::string detail;
    for (Id y = 0; y < static_cast<Id>(emc.coalgebras.size()); ++y)
      for (Id z = 0; z < b.n_obj(); ++z) {
        try {
          auto k = em::cofree_cloak(emc, cell.g, cloaks, y, z);
          if (!k.verified || !k.evaluations_agree) {
            holds = false;
            detail = "cofree cloak failed at (" +
                     emc.cat.base->obj_name(y) + "," + b.obj_name(z) + ")";
          }
        } catch (const Error& e) {
          if (e.code() != "MissingBaseCloaks") {
            holds = false;
            detail = e.what();
          }
        }
      }
    out.push_back(make_report("L2.5", cell.name, holds, detail));
  }
  return out;
}

std::vector<Report> run_p33(const std::vector<InstanceDoc>& docs) {
  std::vector<Report> out;
  for (auto& cell : expand_comonads(docs)) {
    auto cloaks = magmal::compute_cloaks(cell.g.carrier());
    auto emc = em::build_em(cell.g);
    auto rep = fusion::prop33_check(cell.g, emc, cloaks);
    auto cof = fusion::hopf_wood_check(cell.g, emc, cloaks,
                                       fusion::HopfMode::CofreeOnly);
    bool holds = rep.holds && cof.modes_agree;
    std::string detail = holds ? "" : "P3.3 implication or mode agreement fails";
    if (!rep.epi_reading_divergences.empty())
      detail += " [epi readings diverge: " + rep.epi_reading_divergences[0] + "]";
    out.push_back(make_report("P3.3", cell.name, holds, detail));
  }
  return out;
}

std::vector<Report> run_l35(const std::vector<InstanceDoc>& docs) {
  std::vector<Report> out;
  for (auto& cell : expand_comonads(docs)) {
    auto cloaks = magmal::compute_cloaks(cell.g.carrier());
    auto emc = em::build_em(cell.g);
    bool holds = true;
    for (Id y = 0; y < static_cast<Id>(emc.coalgebras.size()); ++y)
      for (Id z = 0; z < static_cast<Id>(emc.coalgebras.size()); ++z) {
        try {
          if (!fusion::transported_pair_check(cell.g, emc, cloaks, y, z))
            holds = false;
        } catch (const Error& e) {
          if (e.code() != "MissingBaseCloaks" && e.code() != "MissingCloaks")
            holds = false;
        }
      }
    out.push_back(make_report("L3.5", cell.name, holds, ""));
  }
  return out;
}

std::vector<Report> run_l38(const std::vector<InstanceDoc>& docs) {
  std::vector<Report> out;
  for (auto& cell : expand_comonads(docs)) {
    auto cloaks = magmal::compute_cloaks(cell.g.carrier());
    auto emc = em::build_em(cell.g);
    const auto& b = *cell.g.carrier().base;
    bool holds = true;
    for (Id y = 0; y < static_cast<Id>(emc.coalgebras.size()); ++y)
      for (Id z = 0; z < b.n_obj(); ++z) {
        try {
          if (!fusion::restricted_creation_check(cell.g, emc, cloaks, y, z)
                   .agree)
            holds = false;
        } catch (const Error& e) {
          if (e.code() != "MissingBaseCloaks" && e.code() != "MissingCloaks" &&
              e.code() != "MissingCodomainCloak")
            holds = false;
        }
      }
    out.push_back(make_report("L3.8", cell.name, holds, ""));
  }
  return out;
}

std::vector<Report> run_p39(const std::vector<InstanceDoc>& docs) {
  std::vector<Report> out;
  for (auto& cell : expand_comonads(docs)) {
    auto cloaks = magmal::compute_cloaks(cell.g.carrier());
    auto emc = em::build_em(cell.g);
    bool holds = true;
    std::string detail;
    for (Id y = 0; y < static_cast<Id>(emc.coalgebras.size()); ++y) {
      try {
        auto rep = fusion::magcomoncloaks_check(cell.g, emc, cloaks, y);
        if (!rep.agree || !rep.constructions_verified) {
          holds = false;
          detail = "P3.9 fails at coalgebra " +
                   emc.cat.base->obj_name(y);
        }
      } catch (const Error& e) {
        if (e.code() != "MissingCloaks") {
          holds = false;
          detail = e.what();
        }
      }
    }
    out.push_back(make_report("P3.9", cell.name, holds, detail));
  }
  return out;
}

std::vector<Report> run_p42(const std::vector<InstanceDoc>& docs) {
  std::vector<Report> out;
  for (const auto& d : docs) {
    if (!d.poset || !d.magmal_cat) continue;
    for (auto& [t_op, g_op] : dsl::adjoint_pairs(*d.poset)) {
      auto t = em::poset_monad(*d.magmal_cat, t_op);
      if (!t) continue;
      auto adj = fincat::find_right_adjoint(t->t);
      std::string nm = d.name + "-adj(";
      for (Id x = 0; x < d.category->n_obj(); ++x) {
        if (x) nm += ",";
        nm += d.category->obj_name(t_op[x]);
      }
      nm += ")";
      if (!adj) {
        out.push_back(make_report("P4.2", nm, false, "adjoint not found"));
        continue;
      }
      try {
        auto res = fusion::adjoint_transfer(*t, *adj);
        out.push_back(make_report("P4.2", nm,
                                  res.iso_over_base && res.p42_verdict, ""));
      } catch (const Error& e) {
        out.push_back(make_report("P4.2", nm, false, e.what()));
      }
    }
  }
  return out;
}

std::vector<Report> run_ex4(const std::vector<InstanceDoc>& docs) {
  std::vector<Report> out;
  for (const auto& d : docs) {
    if (!d.monoid) continue;
    auto rep = fusion::monoid_hopf(*d.monoid);
    out.push_back(make_report("EX4", d.name, rep.agree,
                              rep.hopf ? "group" : "not a group"));
  }
  return out;
}

// ---------------------------------------------- procomonad claim runners

std::vector<Report> run_p54(const std::vector<InstanceDoc>& docs) {
  std::vector<Report> out;
  for (auto& cell : expand_comonads(docs)) {
    auto pro = procomonad::gamma_from_comonad(cell.g);
    const auto& b = *cell.g.carrier().base;
    bool holds = true;
    std::string detail;
    // W = identity, the fixpoint inclusion, and constants from the terminal
    std::vector<std::pair<std::string, fincat::Functor>> ws;
    ws.emplace_back("id", fincat::identity_functor(cell.g.carrier().base));
    {
      std::vector<Id> fix;
      for (Id x = 0; x < b.n_obj(); ++x)
        if (cell.g.g.ob(x) == x) fix.push_back(x);
      std::vector<std::vector<bool>> leq(fix.size(),
                                         std::vector<bool>(fix.size()));
      bool sub_ok = true;
      for (size_t i = 0; i < fix.size(); ++i)
        for (size_t j = 0; j < fix.size(); ++j)
          leq[i][j] = b.hom(fix[i], fix[j]).size() == 1;
      if (sub_ok && !fix.empty()) {
        auto sub = fincat::poset_category(leq, "fix");
        fincat::Functor w;
        w.dom = sub.cat;
        w.cod = cell.g.carrier().base;
        for (Id i = 0; i < static_cast<Id>(fix.size()); ++i)
          w.obj_map.push_back(fix[i]);
        w.mor_map.resize(sub.cat->n_mor());
        for (Id m = 0; m < sub.cat->n_mor(); ++m)
          w.mor_map[m] =
              b.hom(fix[sub.cat->src(m)], fix[sub.cat->dst(m)])[0];
        if (w.validate().empty()) ws.emplace_back("fix-incl", w);
      }
    }
    {
      auto term = fincat::chain_poset(1);
      for (Id x = 0; x < b.n_obj(); ++x)
        ws.emplace_back("const-" + b.obj_name(x),
                        fincat::constant_functor(term.cat,
                                                 cell.g.carrier().base, x));
    }
    for (auto& [wt, w] : ws) {
      auto res = procomonad::gamma_pullback(w, pro);
      if (!res.collapse_iso || !res.structure_ok || !res.pullback_verdict) {
        holds = false;
        detail = "fails for W = " + wt;
        break;
      }
    }
    out.push_back(make_report("P5.4", cell.name, holds, detail));
  }
  return out;
}

std::vector<Report> run_p55(const std::vector<InstanceDoc>& docs) {
  std::vector<Report> out;
  for (auto& cell : expand_comonads(docs)) {
    auto pro = procomonad::gamma_from_comonad(cell.g);
    bool holds = true;
    std::string detail;
    std::vector<std::pair<std::string, CatPtr>> exps{
        {"terminal", fincat::chain_poset(1).cat},
        {"chain2", fincat::chain_poset(2).cat},
        {"discrete2", fincat::discrete_poset(2).cat}};
    for (auto& [nm, a] : exps) {
      auto res = procomonad::gamma_power(a, pro);
      if (!res.structure_ok || !res.verdict) {
        holds = false;
        detail = "fails for A = " + nm;
        break;
      }
    }
    out.push_back(make_report("P5.5", cell.name, holds, detail));
  }
  return out;
}

std::vector<Report> run_p56(const std::vector<InstanceDoc>& docs) {
  std::vector<Report> out;
  for (const auto& d : docs) {
    if (!d.magmal_cat) continue;
    const auto& c = *d.magmal_cat;
    const auto& b = *c.base;
    bool holds = true;
    std::string detail;
    auto tests = dsl::presheaf_test_set(c.base);
    for (Id y = 0; y < b.n_obj() && holds; ++y)
      for (Id z = 0; z < b.n_obj() && holds; ++z) {
        auto hk = prof::presheaf_cloak(c, prof::yoneda(c.base, y),
                                       prof::yoneda(c.base, z));
        // [yo y, yo z]X ≅ C(X⊗y, z) via the canonical tensoring bijection
        for (Id x = 0; x < b.n_obj() && holds; ++x) {
          const auto& target = b.hom(c.tob(x, y), z);
          if (hk.p.size[x] != static_cast<int>(target.size())) {
            holds = false;
            detail = "cloak sizes differ from hom sizes";
            break;
          }
          std::vector<char> hit(hk.p.size[x], 0);
          for (Id f : target) {
            std::vector<std::vector<int>> family(b.n_obj());
            for (Id v = 0; v < b.n_obj(); ++v) {
              const auto& hv = b.hom(v, y);
              family[v].resize(hv.size());
              for (size_t gidx = 0; gidx < hv.size(); ++gidx) {
                Id composite =
                    b.compose(f, c.tmor(b.id(x), hv[gidx]));
                const auto& out_set = b.hom(c.tob(x, v), z);
                int pos = -1;
                for (size_t pi = 0; pi < out_set.size(); ++pi)
                  if (out_set[pi] == composite) pos = static_cast<int>(pi);
                family[v][gidx] = pos;
              }
            }
            int found = -1;
            for (size_t j = 0; j < hk.family[x].size(); ++j)
              if (hk.family[x][j] == family) found = static_cast<int>(j);
            if (found < 0 || hit[found]) {
              holds = false;
              detail = "canonical cloak comparison is not bijective";
              break;
            }
            hit[found] = 1;
          }
        }
        // convolution of representables: yo(y) ∗ yo(z) ≅ yo(y⊗z)
        if (holds) {
          auto day = prof::day_convolution(c, prof::yoneda(c.base, y),
                                           prof::yoneda(c.base, z));
          if (!prof::presheaves_isomorphic(day.p,
                                           prof::yoneda(c.base, c.tob(y, z)))) {
            holds = false;
            detail = "Yoneda is not strong magmal at (" + b.obj_name(y) + "," +
                     b.obj_name(z) + ")";
          }
        }
        // the universal bijection over the bounded presheaf test set
        if (holds &&
            !prof::presheaf_cloak_bijection(c, prof::yoneda(c.base, y),
                                            prof::yoneda(c.base, z), hk,
                                            tests)) {
          holds = false;
          detail = "cloak bijection fails over the test set";
        }
      }
    out.push_back(make_report("P5.6", d.name, holds, detail));
  }
  return out;
}

std::vector<Report> run_fusion_grid(const std::string& claim,
                                    const std::vector<InstanceDoc>& docs) {
  std::vector<Report> out;
  for (auto& cell : expand_comonads(docs)) {
    auto mg = procomonad::magmal_gamma_from_comonad(cell.g);
    auto cloaks = magmal::compute_cloaks(cell.g.carrier());
    auto alg = procomonad::build_gamma_algebras(mg.pro);
    const auto& b = *cell.g.carrier().base;
    bool holds = true;
    std::string detail;
    for (auto& a : alg.algebras)
      for (Id x = 0; x < b.n_obj() && holds; ++x)
        for (Id z = 0; z < b.n_obj() && holds; ++z) {
          try {
            auto f = procomonad::gamma_fusion(mg, cloaks, x,
                                              {a.carrier, a.coaction}, z);
            if (f.has_cloaked && !f.variants_agree) {
              holds = false;
              detail = "variants disagree at (" + b.obj_name(x) + "," +
                       b.obj_name(a.carrier) + "," + b.obj_name(z) + ")";
            }
            if (claim == "C5.9" && f.has_cloaked &&
                f.invertible != f.cloaked_invertible) {
              holds = false;
              detail = "invertibility differs between the variants";
            }
          } catch (const Error& e) {
            holds = false;
            detail = e.what();
          }
        }
    out.push_back(make_report(claim, cell.name, holds, detail));
  }
  return out;
}

std::vector<Report> run_l511(const std::vector<InstanceDoc>& docs) {
  std::vector<Report> out;
  for (auto& cell : expand_comonads(docs)) {
    auto mg = procomonad::magmal_gamma_from_comonad(cell.g);
    auto cloaks = magmal::compute_cloaks(cell.g.carrier());
    auto alg = procomonad::build_gamma_algebras(mg.pro);
    auto tests = dsl::presheaf_test_set(cell.g.carrier().base);
    bool holds = true;
    std::string detail;
    for (auto& a : alg.algebras) {
      try {
        auto rep = procomonad::hopf_at(mg, cloaks, {a.carrier, a.coaction},
                                       true, tests);
        if (!rep.l511_consistent) {
          holds = false;
          detail = "L5.11 verdict inconsistent at " +
                   cell.g.carrier().base->obj_name(a.carrier);
        }
      } catch (const Error& e) {
        if (e.code() != "MissingCloak") {
          holds = false;
          detail = e.what();
        }
      }
    }
    out.push_back(make_report("L5.11", cell.name, holds, detail));
  }
  return out;
}

std::vector<Report> run_t512(const std::vector<InstanceDoc>& docs) {
  std::vector<Report> out;
  for (auto& cell : expand_comonads(docs)) {
    auto mg = procomonad::magmal_gamma_from_comonad(cell.g);
    auto cloaks = magmal::compute_cloaks(cell.g.carrier());
    auto alg = procomonad::build_gamma_algebras(mg.pro);
    bool holds = true;
    std::string detail;
    for (auto& ya : alg.algebras)
      for (auto& za : alg.algebras) {
        try {
          auto rep = procomonad::omega_and_theorem(
              mg, cloaks, {ya.carrier, ya.coaction},
              {za.carrier, za.coaction});
          if (!rep.iff_holds || (rep.hopf && !(rep.is_algebra && rep.is_cloak))) {
            holds = false;
            detail = "T5.12 fails at (" +
                     cell.g.carrier().base->obj_name(ya.carrier) + "," +
                     cell.g.carrier().base->obj_name(za.carrier) + ")";
          }
        } catch (const Error& e) {
          if (e.code() != "MissingCloak") {
            holds = false;
            detail = e.what();
          }
        }
      }
    out.push_back(make_report("T5.12", cell.name, holds, detail));
  }
  return out;
}

// ----------------------------------------------------- appendix A bundles

struct MndBundle {
  std::string name;
  mnd::Monad s, t;
  mnd::MndMor m;
};

std::vector<MndBundle> mnd_suite(const std::vector<InstanceDoc>& docs,
                                 size_t cap = 40) {
  std::vector<MndBundle> out;
  for (const auto& d : docs) {
    if (!d.poset) continue;
    const auto& p = *d.poset;
    auto closures = dsl::closure_operators(p);
    auto maps = fincat::enumerate_functors(p.cat, p.cat);
    for (auto& sop : closures)
      for (auto& top : closures) {
        mnd::Monad s, t;
        auto mk = [&](const std::vector<Id>& op) {
          mnd::Monad m;
          m.endo.dom = m.endo.cod = p.cat;
          m.endo.obj_map = op;
          m.endo.mor_map.resize(p.cat->n_mor());
          for (Id f = 0; f < p.cat->n_mor(); ++f)
            m.endo.mor_map[f] =
                p.arrow[op[p.cat->src(f)]][op[p.cat->dst(f)]];
          m.unit.dom = fincat::identity_functor(p.cat);
          m.unit.cod = m.endo;
          m.mult.dom = fincat::compose(m.endo, m.endo);
          m.mult.cod = m.endo;
          for (Id x = 0; x < p.cat->n_obj(); ++x) {
            m.unit.components.push_back(p.arrow[x][op[x]]);
            m.mult.components.push_back(p.arrow[op[op[x]]][op[x]]);
          }
          return m;
        };
        s = mk(sop);
        t = mk(top);
        for (const auto& u : maps) {
          bool compat = true;
          for (Id x = 0; x < p.cat->n_obj() && compat; ++x)
            compat = p.leq[top[u.ob(x)]][u.ob(sop[x])];
          if (!compat) continue;
          mnd::MndMor m;
          m.flavor = mnd::Flavor::MonadMor;
          m.u = u;
          m.phi.dom = fincat::compose(t.endo, u);
          m.phi.cod = fincat::compose(u, s.endo);
          for (Id x = 0; x < p.cat->n_obj(); ++x)
            m.phi.components.push_back(p.arrow[top[u.ob(x)]][u.ob(sop[x])]);
          if (!mnd::check_mnd_morphism(s, t, m).empty()) continue;
          std::string nm = d.name + "#" + std::to_string(out.size());
          out.push_back({nm, s, t, m});
          if (out.size() >= cap) return out;
        }
      }
  }
  return out;
}

std::vector<Report> run_a1(const std::vector<InstanceDoc>& docs) {
  std::vector<Report> out;
  for (auto& bnd : mnd_suite(docs)) {
    auto v = mnd::doctrinal_a1(bnd.s, bnd.t, bnd.m);
    bool holds = v.agree;
    if (v.adjoint_in_mnd && !v.doctrinal_left_adjoint) holds = false;
    out.push_back(make_report("A1", bnd.name, holds, ""));
  }
  return out;
}

std::vector<Report> run_a2(const std::vector<InstanceDoc>& docs) {
  std::vector<Report> out;
  for (auto& bnd : mnd_suite(docs)) {
    auto es = mnd::em_object(bnd.s);
    auto et = mnd::em_object(bnd.t);
    auto f = mnd::em_morphism(bnd.s, bnd.t, es, et, bnd.m);
    auto v = mnd::doctrinal_a2(f);
    bool holds = v.agree && v.left_adjoints_strong &&
                 (!v.checked_strong_right || v.strong_right_iff);
    out.push_back(make_report("A2", bnd.name, holds, ""));
  }
  return out;
}

std::vector<Report> run_a3(const std::vector<InstanceDoc>& docs) {
  std::vector<Report> out;
  auto bundles = mnd_suite(docs);
  for (auto& bnd : bundles) {
    auto es = mnd::em_object(bnd.s);
    auto et = mnd::em_object(bnd.t);
    auto f = mnd::em_morphism(bnd.s, bnd.t, es, et, bnd.m);
    bool holds = true;
    try {
      auto back = mnd::local_inverse(bnd.s, bnd.t, es, et, f);
      if (!(back.u == bnd.m.u) ||
          back.phi.components != bnd.m.phi.components)
        holds = false;
      // 2-cell level: bijection between Mnd 2-cells and Fun 2-cells
      auto cells = mnd::enumerate_mnd_2cells(bnd.s, bnd.t, bnd.m, bnd.m);
      size_t fun_cells = 0;
      for (auto& sg : fincat::enumerate_nattrans(f.u, f.u))
        for (auto& sgb : fincat::enumerate_nattrans(f.ubar, f.ubar))
          if (mnd::is_fun_2cell(f, f, sg, sgb)) ++fun_cells;
      if (cells.size() != fun_cells) holds = false;
    } catch (const Error&) {
      holds = false;
    }
    out.push_back(make_report("A3", bnd.name, holds, ""));
  }
  return out;
}

std::vector<Report> run_a4(const std::vector<InstanceDoc>& docs) {
  std::vector<Report> out;
  for (auto& bnd : mnd_suite(docs)) {
    auto es = mnd::em_object(bnd.s);
    auto et = mnd::em_object(bnd.t);
    auto v = mnd::corollary_a4(bnd.s, bnd.t, es, et, bnd.m);
    out.push_back(make_report("A4", bnd.name, v.agree, ""));
  }
  return out;
}

std::vector<Report> run_a5(const std::vector<InstanceDoc>& docs) {
  std::vector<Report> out;
  for (auto& bnd : mnd_suite(docs)) {
    auto es = mnd::em_object(bnd.s);
    auto et = mnd::em_object(bnd.t);
    auto v = mnd::corollary_a5(bnd.s, bnd.t, es, et, bnd.m);
    bool holds = v.agree && (!v.hypothesis || (v.rbar_found && v.iso_exhibited));
    out.push_back(make_report("A5", bnd.name, holds, ""));
  }
  return out;
}

// ----------------------------------------------------- appendix B bundles

std::vector<prof::Profunctor> endo_profs(const InstanceDoc& d, size_t cap) {
  std::vector<prof::Profunctor> out;
  out.push_back(prof::hom_prof(d.category));
  if (d.poset && d.magmal_cat)
    for (auto& op : dsl::interior_operators(*d.poset)) {
      fincat::Functor g;
      g.dom = g.cod = d.category;
      g.obj_map = op;
      g.mor_map.resize(d.category->n_mor());
      for (Id m = 0; m < d.category->n_mor(); ++m)
        g.mor_map[m] =
            d.poset->arrow[op[d.category->src(m)]][op[d.category->dst(m)]];
      out.push_back(prof::lower_star(g));
      if (out.size() >= cap) break;
    }
  return out;
}

std::vector<Report> run_b1(const std::vector<InstanceDoc>& docs) {
  std::vector<Report> out;
  for (const auto& d : docs) {
    if (!d.poset || d.category->n_obj() > 4) continue;
    auto ss = endo_profs(d, 4);
    auto tests = prof::test_profunctors(d.category, d.category, 64);
    size_t c_count = std::min<size_t>(tests.size(), 3);
    int idx = 0;
    for (auto& s : ss)
      for (auto& u : ss)
        for (size_t ci = 0; ci < c_count; ++ci) {
          auto rep = prof::check_b1(s, u, tests[ci]);
          out.push_back(make_report(
              "B1", d.name + "#" + std::to_string(idx++),
              rep.iso && rep.pasting_ok, ""));
        }
  }
  return out;
}

std::vector<Report> run_b2(const std::vector<InstanceDoc>& docs) {
  std::vector<Report> out;
  for (const auto& d : docs) {
    if (!d.poset || d.category->n_obj() > 4) continue;
    auto homp = prof::hom_prof(d.category);
    // M = hom (η identity) and M = hom⊕hom (η the first inclusion)
    std::vector<std::pair<prof::Profunctor, prof::ModMor>> ms;
    ms.emplace_back(homp, prof::identity_modmor(homp));
    {
      prof::Profunctor dbl = homp;
      for (auto& row : dbl.size)
        for (auto& v : row) v *= 2;
      for (Id g = 0; g < d.category->n_mor(); ++g)
        for (Id y = 0; y < d.category->n_obj(); ++y) {
          auto base = homp.lact[g][y];
          int half = homp.size[d.category->src(g)][y];
          dbl.lact[g][y].clear();
          for (int e : base) dbl.lact[g][y].push_back(e);
          for (int e : base) dbl.lact[g][y].push_back(e + half);
        }
      for (Id f = 0; f < d.category->n_mor(); ++f)
        for (Id x = 0; x < d.category->n_obj(); ++x) {
          auto base = homp.ract[f][x];
          int half = homp.size[x][d.category->dst(f)];
          dbl.ract[f][x].clear();
          for (int e : base) dbl.ract[f][x].push_back(e);
          for (int e : base) dbl.ract[f][x].push_back(e + half);
        }
      ms.emplace_back(dbl, prof::identity_modmor(homp));
    }
    auto ss = endo_profs(d, 3);
    auto tests = prof::test_profunctors(d.category, d.category, 64);
    size_t b_count = std::min<size_t>(tests.size(), 4);
    int idx = 0;
    for (auto& [m, eta] : ms)
      for (auto& s : ss)
        for (size_t bi = 0; bi < b_count; ++bi) {
          auto rep = prof::check_b2(s, m, tests[bi], eta, tests);
          bool hyps = rep.hyp_eta_b_mono && rep.hyp_eta_b_regular &&
                      rep.hyp_eta_c_mono;
          bool holds = !hyps || (rep.fork_equalizer && rep.omega_iso &&
                                 rep.equivalence);
          out.push_back(make_report(
              "B2", d.name + "#" + std::to_string(idx++), holds,
              hyps ? "" : "hypotheses not witnessed; nothing to assert"));
        }
  }
  return out;
}

std::vector<Report> run_b3(const std::vector<InstanceDoc>& docs) {
  std::vector<Report> out;
  for (const auto& d : docs) {
    if (!d.poset || d.category->n_obj() > 4) continue;
    // U = F_* of fully faithful inclusions into chains one step larger
    std::vector<prof::Profunctor> us;
    us.push_back(prof::hom_prof(d.category));
    {
      auto big = fincat::chain_poset(d.category->n_obj() + 1);
      fincat::Functor inc;
      inc.dom = d.category;
      inc.cod = big.cat;
      // only chains embed this way; other posets keep U = hom
      bool is_chain = true;
      for (Id x = 0; x + 1 < d.category->n_obj() && is_chain; ++x)
        is_chain = d.poset->leq[x][x + 1];
      if (is_chain) {
        for (Id x = 0; x < d.category->n_obj(); ++x)
          inc.obj_map.push_back(x + 1);
        inc.mor_map.resize(d.category->n_mor());
        for (Id m = 0; m < d.category->n_mor(); ++m)
          inc.mor_map[m] = big.arrow[inc.obj_map[d.category->src(m)]]
                                    [inc.obj_map[d.category->dst(m)]];
        if (inc.validate().empty()) us.push_back(prof::lower_star(inc));
      }
    }
    auto ss = endo_profs(d, 3);
    auto tests = prof::test_profunctors(d.category, d.category, 64);
    size_t b_count = std::min<size_t>(tests.size(), 4);
    int idx = 0;
    for (auto& u : us)
      for (auto& s : ss)
        for (size_t bi = 0; bi < b_count; ++bi) {
          auto rep = prof::check_b3(s, u, tests[bi], tests);
          bool holds = !(rep.hyp_respected && rep.hyp_eta) ||
                       (rep.match && rep.respect_iff);
          out.push_back(
              make_report("B3", d.name + "#" + std::to_string(idx++), holds,
                          rep.hyp_respected && rep.hyp_eta
                              ? ""
                              : "hypotheses not witnessed"));
        }
  }
  return out;
}

std::vector<Report> run_dubuc(const std::vector<InstanceDoc>& docs) {
  std::vector<Report> out;
  std::vector<CatPtr> probes{fincat::chain_poset(1).cat,
                             fincat::chain_poset(2).cat};
  for (const auto& d : docs) {
    if (!d.poset || d.category->n_obj() > 4) continue;
    // U : chains with right adjoints (inclusion of an initial segment shifted
    // to the top); S : endofunctors
    std::vector<std::pair<std::string, fincat::Functor>> us;
    us.emplace_back("id", fincat::identity_functor(d.category));
    if (d.category->n_obj() >= 2) {
      auto big = fincat::chain_poset(d.category->n_obj() + 1);
      bool is_chain = true;
      for (Id x = 0; x + 1 < d.category->n_obj() && is_chain; ++x)
        is_chain = d.poset->leq[x][x + 1];
      if (is_chain) {
        fincat::Functor inc;
        inc.dom = d.category;
        inc.cod = big.cat;
        inc.obj_map.push_back(0);
        for (Id x = 1; x < d.category->n_obj(); ++x)
          inc.obj_map.push_back(x + 1);
        inc.mor_map.resize(d.category->n_mor());
        for (Id m = 0; m < d.category->n_mor(); ++m)
          inc.mor_map[m] = big.arrow[inc.obj_map[d.category->src(m)]]
                                    [inc.obj_map[d.category->dst(m)]];
        if (inc.validate().empty()) us.emplace_back("gap-incl", inc);
      }
    }
    std::vector<std::pair<std::string, fincat::Functor>> ss;
    ss.emplace_back("id", fincat::identity_functor(d.category));
    if (d.poset && d.magmal_cat) {
      auto ops = dsl::interior_operators(*d.poset);
      for (size_t i = 0; i < std::min<size_t>(ops.size(), 3); ++i) {
        fincat::Functor g;
        g.dom = g.cod = d.category;
        g.obj_map = ops[i];
        g.mor_map.resize(d.category->n_mor());
        for (Id m = 0; m < d.category->n_mor(); ++m)
          g.mor_map[m] = d.poset->arrow[ops[i][d.category->src(m)]]
                                       [ops[i][d.category->dst(m)]];
        ss.emplace_back("int" + std::to_string(i), g);
      }
    }
    int idx = 0;
    for (auto& [un, u] : us)
      for (auto& [sn, s] : ss) {
        try {
          auto rep = prof::check_dubuc(s, u, probes);
          bool holds = rep.verdict != prof::DubucVerdict::Fails;
          std::string detail =
              rep.verdict == prof::DubucVerdict::Holds
                  ? "holds"
                  : (rep.verdict == prof::DubucVerdict::Fails
                         ? "fails"
                         : "equalizer-not-found");
          out.push_back(make_report(
              "DUBUC", d.name + "#" + std::to_string(idx++) + "(" + un + "," +
                           sn + ")",
              holds, detail));
        } catch (const Error& e) {
          // unsatisfied hypotheses are reported, not asserted
          out.push_back(make_report(
              "DUBUC",
              d.name + "#" + std::to_string(idx++) + "(" + un + "," + sn + ")",
              true, std::string("hypothesis: ") + e.what()));
        }
      }
  }
  return out;
}

using RunnerFn = std::vector<Report> (*)(const std::vector<InstanceDoc>&);

const std::vector<std::tuple<std::string, std::string, RunnerFn>>& registry() {
  static std::vector<std::tuple<std::string, std::string, RunnerFn>> reg = {
      {"L2.4", "em-construction", run_l24},
      {"L2.5", "em-construction", run_l25},
      {"P3.3", "fusion-engine", run_p33},
      {"L3.5", "fusion-engine", run_l35},
      {"L3.8", "fusion-engine", run_l38},
      {"P3.9", "fusion-engine", run_p39},
      {"P4.2", "fusion-engine", run_p42},
      {"EX4", "fusion-engine", run_ex4},
      {"P5.4", "procomonad-engine", run_p54},
      {"P5.5", "procomonad-engine", run_p55},
      {"P5.6", "prof-calculus", run_p56},
      {"P5.8", "procomonad-engine",
       [](const std::vector<InstanceDoc>& d) {
         return run_fusion_grid("P5.8", d);
       }},
      {"C5.9", "procomonad-engine",
       [](const std::vector<InstanceDoc>& d) {
         return run_fusion_grid("C5.9", d);
       }},
      {"L5.11", "procomonad-engine", run_l511},
      {"T5.12", "procomonad-engine", run_t512},
      {"A1", "mnd-bicategory", run_a1},
      {"A2", "mnd-bicategory", run_a2},
      {"A3", "mnd-bicategory", run_a3},
      {"A4", "mnd-bicategory", run_a4},
      {"A5", "mnd-bicategory", run_a5},
      {"B1", "prof-calculus", run_b1},
      {"B2", "prof-calculus", run_b2},
      {"B3", "prof-calculus", run_b3},
      {"DUBUC", "prof-calculus", run_dubuc},
  };
  return reg;
}

}  // namespace

std::vector<std::string> claim_ids() {
  std::vector<std::string> out;
  for (auto& [id, mod, fn] : registry()) out.push_back(id);
  return out;
}

bool is_claim(const std::string& id) {
  for (auto& [cid, mod, fn] : registry())
    if (cid == id) return true;
  return false;
}

std::string owning_module(const std::string& id) {
  for (auto& [cid, mod, fn] : registry())
    if (cid == id) return mod;
  throw Error("UnknownRecipe", "unknown claim '" + id + "'");
}

std::vector<Report> verify(const std::string& claim_id,
                           const std::vector<InstanceDoc>& docs) {
  for (auto& [cid, mod, fn] : registry())
    if (cid == claim_id) {
      auto t0 = std::chrono::steady_clock::now();
      auto reports = fn(docs);
      auto t1 = std::chrono::steady_clock::now();
      double ms =
          std::chrono::duration<double, std::milli>(t1 - t0).count() /
          std::max<size_t>(1, reports.size());
      for (auto& r : reports) r.timing_ms = ms;
      std::sort(reports.begin(), reports.end(),
                [](const Report& a, const Report& b) {
                  return std::tie(a.claim, a.instance) <
                         std::tie(b.claim, b.instance);
                });
      return reports;
    }
  throw Error("UnknownRecipe", "unknown claim '" + claim_id + "'");
}

std::vector<InstanceDoc> load_instances(const std::string& src) {
  if (src.rfind("recipe:", 0) == 0)
    return dsl::generate_instance(src.substr(7));
  std::ifstream in(src);
  if (!in) throw Error("ParseError", "cannot open '" + src + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return dsl::parse_documents(ss.str());
}

std::vector<Report> run_suite() {
  auto grid = dsl::generate_instance("all-heyting(5)");
  auto monoids = dsl::generate_instance("all-monoids(4)");
  const auto ids = claim_ids();
  std::vector<std::vector<Report>> per_claim(ids.size());
  par::parallel_for(static_cast<int>(ids.size()), [&](int i) {
    const std::string& id = ids[i];
    per_claim[i] = verify(id, id == "EX4" ? monoids : grid);
  });
  std::vector<Report> out;
  for (auto& v : per_claim) out.insert(out.end(), v.begin(), v.end());
  std::sort(out.begin(), out.end(), [](const Report& a, const Report& b) {
    return std::tie(a.claim, a.instance) < std::tie(b.claim, b.instance);
  });
  return out;
}

}  // namespace cloakforge::claims
