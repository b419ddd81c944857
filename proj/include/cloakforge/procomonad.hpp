#pragma once

#include "cloakforge/em.hpp"
#include "cloakforge/prof.hpp"

namespace cloakforge::procomonad {

using fincat::CatPtr;
using fincat::Id;
using fincat::kNone;

// Comonad in the profunctor bicategory. delta lands in the materialized
// Γ∘Γ, whose coend witness stays attached for injections.
struct Procomonad {
  prof::Profunctor gamma;  // C ↛ C
  prof::ModMor eps;        // Γ ⇒ hom
  prof::Composite sq;      // Γ∘Γ
  prof::ModMor delta;      // Γ ⇒ Γ∘Γ
  CatPtr base() const { return gamma.dom; }
  std::vector<std::string> validate() const;
};

Procomonad hom_procomonad(const CatPtr& c);

// Γ = G_* for a comonad and Γ = T^* for a monad (claim-id grid: the G_*/T^* forms).
Procomonad gamma_from_comonad(const magmal::MagmalComonad& g);
Procomonad gamma_from_monad(const em::OpmagmalMonad& t);

struct GammaAlgebra {
  Id carrier = kNone;
  int coaction = -1;  // element of Γ(C,C)
};

struct GammaAlgCat {
  CatPtr cat;
  std::vector<GammaAlgebra> algebras;
  std::vector<Id> base_mor;
  fincat::Functor und;
  Id find_algebra(Id carrier, int coaction) const;
  Id lift_mor(Id x, Id y, Id f) const;
};
GammaAlgCat build_gamma_algebras(const Procomonad& p);

// Strict iso of the algebra category with an EM category over the base
// (both derived forms, checked object- and hom-wise).
bool algebras_match_em(const GammaAlgCat& g, const em::EMCategory& em);
bool algebras_match_em(const GammaAlgCat& g, const em::EMAlgebraCategory& em);

// Adjoint searches for und : C^Γ → C (generically neither exists).
struct UndAdjoints {
  bool left = false, right = false;
};
UndAdjoints und_adjoints(const GammaAlgCat& g);

// Γ_W = W^*∘Γ∘W_*: honest composite, the Yoneda collapse iso, transported
// counit/comultiplication (with mediator repair), and the P5.4 pullback
// comparison against the strict pullback category.
struct PullbackResult {
  Procomonad gamma_w;
  bool collapse_iso = false;      // Γ_W(d',d) ≅ Γ(Wd',Wd) verified
  bool structure_ok = false;      // transported (ε,δ) exist and satisfy laws
  bool pullback_verdict = false;  // D^{Γ_W} ≅ D ×_C C^Γ strictly
};
PullbackResult gamma_pullback(const fincat::Functor& w, const Procomonad& p);

// Γ^𝒜(F',F) = ∫_A Γ(F'A,FA) on the materialized functor category, with the
// P5.5 comparison [𝒜,𝒞]^{Γ^𝒜} ≅ [𝒜,𝒞^Γ].
struct PowerResult {
  fincat::FunctorCategory fc;
  Procomonad gamma_power;
  bool structure_ok = false;
  bool verdict = false;
};
PowerResult gamma_power(const CatPtr& a, const Procomonad& p);

// Magmal procomonad: M₂ as the four-index family.
struct MagmalProcomonad {
  magmal::MagmalCategory c;
  Procomonad pro;
  // m2[d][dp][cc][cp] : Γ(d,cc)×Γ(dp,cp) → Γ(d⊗dp,cc⊗cp), row-major in the
  // first factor
  std::vector<std::vector<std::vector<std::vector<std::vector<int>>>>> m2;
  int m2_at(Id d, Id dp, Id cc, Id cp, int e1, int e2) const {
    return m2[d][dp][cc][cp][e1 * pro.gamma.size[dp][cp] + e2];
  }
  std::vector<std::string> validate() const;
};

MagmalProcomonad magmal_hom_procomonad(const magmal::MagmalCategory& c);
MagmalProcomonad magmal_gamma_from_comonad(const magmal::MagmalComonad& g);
MagmalProcomonad magmal_gamma_from_monad(const em::OpmagmalMonad& t);

// The two coend-collapsed presentations of M₂ and their consistency with the
// two-sided family (materialized on every instance cell).
bool m2_presentations_consistent(const MagmalProcomonad& g);

// Magmal algebra category: tensor (X,ξ)⊗(Y,υ) = (X⊗Y, Γ₂(ξ⊗υ)).
struct MagmalGammaAlgCat {
  GammaAlgCat plain;
  magmal::MagmalCategory cat;
  magmal::MagmalFunctor und;
};
MagmalGammaAlgCat build_magmal_gamma_algebras(const MagmalProcomonad& g);

// Γ̄ on presheaves: apply/counit/comultiplication/Γ̄₂ computed on any given
// presheaf through the displayed coend isos; laws checked per presheaf.
struct BarApplied {
  prof::BarResult res;
};
BarApplied bar_apply(const MagmalProcomonad& g, const prof::Presheaf& f);
prof::PshMor bar_eps(const MagmalProcomonad& g, const prof::Presheaf& f,
                     const BarApplied& gf);
prof::PshMor bar_delta(const MagmalProcomonad& g, const prof::Presheaf& f,
                       const BarApplied& gf, const BarApplied& ggf);
bool bar_comonad_laws(const MagmalProcomonad& g, const prof::Presheaf& f);
bool bar_magmal_laws(const MagmalProcomonad& g, const prof::Presheaf& f,
                     const prof::Presheaf& f2);
// (Γ̄ yo Y)X ≅ Γ(X,Y), and Γ̄₂ on representables matches Γ₂.
bool bar_representable_identities(const MagmalProcomonad& g);

// Fusion for magmal procomonads.
struct GammaFusion {
  // coend variant: ∫^U C(U⊗Y,Z)⊗Γ(X,U) → Γ(X⊗Y,Z)
  prof::Composite source;        // the coend, as a one-cell composite
  std::vector<int> map;          // class → element of Γ(X⊗Y,Z)
  bool invertible = false;
  // cloaked variant, when [Y,Z] exists
  bool has_cloaked = false;
  std::vector<int> cloaked_map;  // Γ(X,[Y,Z]) → Γ(X⊗Y,Z)
  bool cloaked_invertible = false;
  bool variants_agree = false;   // under the canonical iso (P5.8/C5.9)
};
GammaFusion gamma_fusion(const MagmalProcomonad& g,
                         const magmal::CloakTable& cloaks, Id x,
                         const GammaAlgebra& ya, Id z);

struct HopfAtReport {
  bool hopf = false;
  std::vector<std::pair<Id, Id>> failures;  // (X,Z)
  // L5.11: agreement with Wood fusion of Γ̄ at the representable
  // coalgebra over the bounded presheaf test set
  bool l511_checked = false;
  bool l511_consistent = false;
};
HopfAtReport hopf_at(const MagmalProcomonad& g,
                     const magmal::CloakTable& cloaks, const GammaAlgebra& ya,
                     bool with_l511, const std::vector<prof::Presheaf>& tests);

struct OmegaReport {
  bool hopf = false;
  bool omega_defined = false;    // the (omega) square has a unique solution
  int omega = -1;                // coaction on [Y,Z]
  bool is_algebra = false;
  bool is_cloak = false;         // verified inside C^Γ
  bool creation_side = false;    // und creates all cloaks by (Y,υ)
  bool iff_holds = false;        // T5.12
};
OmegaReport omega_and_theorem(const MagmalProcomonad& g,
                              const magmal::CloakTable& cloaks,
                              const GammaAlgebra& ya, const GammaAlgebra& za);

}  // namespace cloakforge::procomonad
