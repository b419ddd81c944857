#pragma once

#include "cloakforge/magmal.hpp"

namespace cloakforge::prof {

using fincat::CatPtr;
using fincat::Id;
using fincat::kNone;

// Finite-set-valued module 𝒜 ↛ ℬ: cells value(b,a) with the contravariant
// ℬ-action on the first index and the covariant 𝒜-action on the second.
// Elements are dense 0-based per cell.
struct Profunctor {
  CatPtr dom;  // 𝒜
  CatPtr cod;  // ℬ
  std::vector<std::vector<int>> size;              // [b][a]
  std::vector<std::vector<std::vector<int>>> lact; // [g][a] : (dst g,a)→(src g,a)
  std::vector<std::vector<std::vector<int>>> ract; // [f][b] : (b,src f)→(b,dst f)

  int at(Id b, Id a) const { return size[b][a]; }
  int apply_l(Id g, Id a, int e) const { return lact[g][a][e]; }
  int apply_r(Id f, Id b, int e) const { return ract[f][b][e]; }
  std::vector<std::string> validate() const;
};

Profunctor hom_prof(const CatPtr& c);
Profunctor lower_star(const fincat::Functor& f);  // F_*(b,a) = ℬ(b,Fa)
Profunctor upper_star(const fincat::Functor& f);  // F^*(a,b) = ℬ(Fa,b)

// Module morphism M ⇒ N as per-cell functions.
struct ModMor {
  std::vector<std::vector<std::vector<int>>> comp;  // [b][a]
  int operator()(Id b, Id a, int e) const { return comp[b][a][e]; }
};
std::vector<std::string> validate_modmor(const Profunctor& m,
                                         const Profunctor& n,
                                         const ModMor& a);
ModMor identity_modmor(const Profunctor& m);
ModMor compose_modmor(const Profunctor& m, const Profunctor& mid,
                      const Profunctor& n, const ModMor& second,
                      const ModMor& first);
bool modmor_equal(const ModMor& a, const ModMor& b);
bool modmor_mono(const Profunctor& m, const Profunctor& n, const ModMor& a);
bool modmor_iso(const Profunctor& m, const Profunctor& n, const ModMor& a);
std::vector<ModMor> enumerate_modmors(const Profunctor& m, const Profunctor& n,
                                      long long cap = 2'000'000);

// Coend composite N∘M with its quotient witness: flat indices enumerate the
// disjoint union of M(b,a)×N(c,b) over b; classes are dense, ordered by
// least representative.
struct CoendCell {
  std::vector<int> off;    // per b, size nb+1
  std::vector<int> ncols;  // per b: |N(c,b)|
  std::vector<int> cls;    // flat → class
  std::vector<int> rep;    // class → least flat
  int classes() const { return static_cast<int>(rep.size()); }
  int flat(Id b, int m, int n) const { return off[b] + m * ncols[b] + n; }
  struct Triple {
    Id b;
    int m, n;
  };
  Triple decode(int flat) const;
};

struct Composite {
  Profunctor p;  // N∘M : 𝒜 ↛ 𝒞
  std::vector<std::vector<CoendCell>> cells;  // [c][a]
  int inject(Id c, Id a, Id b, int m, int n) const {
    return cells[c][a].cls[cells[c][a].flat(b, m, n)];
  }
};
// M : 𝒜↛ℬ, N : ℬ↛𝒞  →  N∘M : 𝒜↛𝒞
Composite compose_prof(const Profunctor& m, const Profunctor& n);

// Canonical unitor/associator isos (constructed, then verified bijective).
ModMor left_unitor(const Profunctor& p, const Composite& hom_then_p);
ModMor right_unitor(const Profunctor& p, const Composite& p_then_hom);
// The rebracketing iso, as a ModMor from compose(m, no.p) (triples grouped
// as (b, m-elt, no-class)) to compose(mn.p, o) (grouped as (c, mn-class,
// o-elt)).
ModMor associator(const Profunctor& m, const Profunctor& n,
                  const Profunctor& o, const Composite& mn,
                  const Composite& no, const Composite& mn_o,
                  const Composite& m_no);

// Whiskering a module morphism through a composite.
ModMor whisker_m(const Composite& from, const Composite& to,
                 const ModMor& alpha);  // on the M side (N∘M ⇒ N∘M')
ModMor whisker_n(const Composite& from, const Composite& to,
                 const ModMor& beta);   // on the N side (N∘M ⇒ N'∘M)

// Adjunction F_* ⊣ F^* verified from the canonical unit/counit.
bool lower_upper_adjunction(const fincat::Functor& f);

// Representability: find F with M ≅ F_* by the universal-element search.
std::optional<fincat::Functor> is_representable(const Profunctor& m);

// ---------------------------------------------------------------- presheaves

struct Presheaf {
  CatPtr base;
  std::vector<int> size;              // per object
  std::vector<std::vector<int>> act;  // [f] : value(dst f) → value(src f)
  int at(Id x) const { return size[x]; }
  int apply(Id f, int e) const { return act[f][e]; }
  std::vector<std::string> validate() const;
  bool operator==(const Presheaf& o) const {
    return base == o.base && size == o.size && act == o.act;
  }
};

struct PshMor {
  std::vector<std::vector<int>> comp;  // per object
  int operator()(Id x, int e) const { return comp[x][e]; }
};
std::vector<std::string> validate_pshmor(const Presheaf& f, const Presheaf& g,
                                         const PshMor& a);
std::vector<PshMor> enumerate_pshmors(const Presheaf& f, const Presheaf& g,
                                      long long cap = 2'000'000);
bool pshmor_iso(const Presheaf& f, const Presheaf& g, const PshMor& a);
bool presheaves_isomorphic(const Presheaf& f, const Presheaf& g);

Presheaf yoneda(const CatPtr& c, Id y);
Presheaf empty_presheaf(const CatPtr& c);
Presheaf terminal_presheaf(const CatPtr& c);

// The one-object unit category shared by presheaf↔profunctor round trips.
CatPtr unit_category();
Profunctor as_profunctor(const Presheaf& f);  // 𝕀 ↛ base
Presheaf as_presheaf(const Profunctor& p);    // requires dom == unit_category()

// N̄(F)(c) = ∫^b F(b)⊗N(c,b), computed through compose_prof.
struct BarResult {
  Presheaf p;
  Composite witness;
};
BarResult bar(const Profunctor& n, const Presheaf& f);

// Day convolution on presheaves over a magmal base.
struct DayResult {
  Presheaf p;
  Composite witness;  // over the product category; inject via pair index
  const magmal::MagmalCategory* c = nullptr;
  std::vector<int> f_size, g_size;  // factor sizes, for (de)coding elements
  int inject(Id z, Id x, Id y, Id h, int xi, int psi) const;
};
DayResult day_convolution(const magmal::MagmalCategory& c, const Presheaf& f,
                          const Presheaf& g);
PshMor day_map(const DayResult& from, const DayResult& to, const PshMor& af,
               const PshMor& ag);

// Presheaf cloak [H,K]U = ∫_V Set(HV, K(U⊗V)); elements are natural
// families, enumerated and stored per object.
struct PshCloak {
  Presheaf p;
  // family[u][e] : per V, the function H(V) → K(u⊗V) as a flat vector
  std::vector<std::vector<std::vector<std::vector<int>>>> family;
  // evaluation [H,K]∗H ⇒ K
  DayResult dom_day;
  PshMor ev;
};
PshCloak presheaf_cloak(const magmal::MagmalCategory& c, const Presheaf& h,
                        const Presheaf& k, long long cap = 2'000'000);
// The universal bijection tested against the given presheaf test set.
bool presheaf_cloak_bijection(const magmal::MagmalCategory& c,
                              const Presheaf& h, const Presheaf& k,
                              const PshCloak& hk,
                              const std::vector<Presheaf>& tests);

// All presheaves on the base with Σ|F| ≤ total and |F(x)| ≤ per_object.
std::vector<Presheaf> enumerate_presheaves(const CatPtr& c, int total,
                                           int per_object);
// All 0/1-celled profunctors 𝒜↛ℬ (supports closed under both actions) plus
// the representables F_*.
std::vector<Profunctor> test_profunctors(const CatPtr& a, const CatPtr& b,
                                         int cap = 4096);

// ------------------------------------------------------------ right lifting

struct RightLifting {
  Profunctor lift;  // rif(S,B) : 𝒦 ↛ 𝒜
  // family[a][k][e] : per b, function S(b,a) → B(b,k), flattened
  std::vector<std::vector<std::vector<std::vector<int>>>> family;
  Composite s_lift;  // S∘rif(S,B)
  ModMor counit;     // S∘rif(S,B) ⇒ B
};
RightLifting right_lifting(const Profunctor& s, const Profunctor& b,
                           long long cap = 2'000'000);

// Pasting bijection against every test 1-morphism 𝒦↛𝒜 supplied.
bool lifting_bijection(const Profunctor& s, const Profunctor& b,
                       const RightLifting& r,
                       const std::vector<Profunctor>& tests);

// rif(S,B)∘K ≅ rif(S, B∘K) through the canonical comparison.
bool respects(const Profunctor& s, const Profunctor& b, const RightLifting& r,
              const Profunctor& k);

// ------------------------------------------------------------- appendix B

struct B1Report {
  bool iso = false;           // rif(S, rif(U,C)) ≅ rif(US, C)
  bool pasting_ok = false;    // counits correspond under the comparison
};
B1Report check_b1(const Profunctor& s, const Profunctor& u,
                  const Profunctor& c);

struct B2Report {
  bool hyp_eta_b_mono = false;
  bool hyp_eta_b_regular = false;  // bounded search in the materialized homcat
  bool regular_search_truncated = false;
  bool hyp_eta_c_mono = false;     // over the test set
  bool fork_equalizer = false;     // (i)
  bool equivalence = false;        // (ii) over the bounded 1-morphism set
  bool omega_iso = false;          // (iii)
};
B2Report check_b2(const Profunctor& s, const Profunctor& m,
                  const Profunctor& b, const ModMor& eta,
                  const std::vector<Profunctor>& tests);

struct B3Report {
  bool hyp_respected = false;  // M = rif(U,U) respected by the test set
  bool hyp_eta = false;        // unit mono/regular-mono hypotheses
  bool match = false;          // E ≅ rif(S,B) with the counit condition
  bool respect_iff = false;    // respected-by-K ⟺ equalizer preserved
};
B3Report check_b3(const Profunctor& s, const Profunctor& u,
                  const Profunctor& b, const std::vector<Profunctor>& tests);

enum class DubucVerdict { Holds, Fails, EqualizerNotFound };
struct DubucReport {
  DubucVerdict verdict = DubucVerdict::EqualizerNotFound;
  bool s_has_right_adjoint = false;
  bool us_has_right_adjoint = false;
};
// Dubuc Adjoint Triangle in the 2-category of finite categories.
DubucReport check_dubuc(const fincat::Functor& s, const fincat::Functor& u,
                        const std::vector<fincat::CatPtr>& probe_cats);

}  // namespace cloakforge::prof
