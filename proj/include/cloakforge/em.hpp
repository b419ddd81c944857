#pragma once

#include "cloakforge/magmal.hpp"

namespace cloakforge::em {

using fincat::CatPtr;
using fincat::Id;
using fincat::kNone;

struct Coalgebra {
  Id carrier = kNone;
  Id coaction = kNone;  // ξ : X → GX in the base
};

// Eilenberg–Moore category of a magmal comonad, with its magmal tensor
// the coalgebra tensor, strict underlying functor, and the cofree right adjoint.
struct EMCategory {
  magmal::MagmalCategory cat;
  std::vector<Coalgebra> coalgebras;  // EM object id → pair
  std::vector<Id> base_mor;           // EM morphism id → base morphism
  magmal::MagmalFunctor und;          // strict
  fincat::Functor cofree;             // z ↦ (Gz, δ_z)
  fincat::Adjunction und_cofree;      // und ⊣ cofree

  Id find_coalgebra(Id carrier, Id coaction) const;
  Id cofree_of(Id z) const;
  // Base morphism as an EM morphism between given EM objects, kNone when it
  // is not a coalgebra morphism.
  Id lift_mor(Id em_x, Id em_y, Id f) const;
};

EMCategory build_em(const magmal::MagmalComonad& g);

// Monad with a colax tensor compatibility T(x⊗y) → Tx⊗Ty. Validation and the
// algebra category run through the formal opposite (a magmal comonad on the
// opposite carrier).
struct OpmagmalMonad {
  magmal::MagmalCategory carrier;
  fincat::Functor t;
  fincat::NatTrans eta;  // 1 ⇒ T
  fincat::NatTrans mu;   // T∘T ⇒ T
  std::vector<std::vector<Id>> t2;  // [x][y] : T(x⊗y) → Tx⊗Ty

  std::vector<std::string> validate() const;
};

magmal::MagmalComonad as_op_comonad(const OpmagmalMonad& t,
                                    const magmal::MagmalCategory& opc);

struct Algebra {
  Id carrier = kNone;
  Id action = kNone;  // α : TX → X
};

struct EMAlgebraCategory {
  magmal::MagmalCategory cat;
  std::vector<Algebra> algebras;
  std::vector<Id> base_mor;
  magmal::MagmalFunctor und;
  fincat::Functor free;  // x ↦ (Tx, μ_x)
  fincat::Adjunction free_und;  // free ⊣ und

  Id find_algebra(Id carrier, Id action) const;
  Id free_of(Id x) const;
  Id lift_mor(Id em_x, Id em_y, Id f) const;
};

EMAlgebraCategory build_em_monad(const OpmagmalMonad& t);

// Closure operator on a lattice as an opmagmal monad (colax structure is
// automatic for monotone maps); nullopt when the tables fail the laws.
std::optional<OpmagmalMonad> poset_monad(const magmal::MagmalCategory& c,
                                         const std::vector<Id>& op);

// Single component of the cloak-side mate: G₂ℓ at (y,z).
Id g2l_component(const magmal::MagmalComonad& g,
                 const magmal::CloakTable& base_cloaks, Id y, Id z);

// L2.5: the cloak of the cofree object (Gz, δ_z) by (y,υ), realized as
// (G[y,z], δ_[y,z]) with the stated evaluation. `evaluations_agree` records
// commutativity of the compatibility diagram between the two evaluations.
struct EMCloak {
  magmal::Cloak k;  // indices are EM ids
  bool verified = false;
  bool evaluations_agree = false;
};
EMCloak cofree_cloak(const EMCategory& em, const magmal::MagmalComonad& g,
                     const magmal::CloakTable& base_cloaks, Id em_y, Id z);

// L2.4: equalizer of [1,δ_z] and [1,Gζ] between the two cofree cloaks;
// evaluation pinned down by the compatibility square and re-verified.
std::optional<magmal::Cloak> cloak_via_equalizer(
    const EMCategory& em, const magmal::MagmalComonad& g,
    const magmal::CloakTable& base_cloaks, Id em_y, Id em_z);

struct CreationWitness {
  bool created = false;
  Id h = kNone;     // object of dom(K)
  Id tau = kNone;   // iso K h → [K a, K b] in cod(K)
  Id ebar = kNone;  // h⊗a → b in dom(K)
};
// Creation of the cloak of b by a through the strong magmal K.
CreationWitness creation_check(const magmal::MagmalFunctor& k,
                               const magmal::CloakTable& cod_cloaks, Id a,
                               Id b);

// Pullback transfer (used by P5.4-style squares): W∘K = K'∘V with W fully faithful and the
// square a (strict) pullback. Returns the two sides and the implication.
struct PullbackCreation {
  bool hypotheses = false;   // square commutes, pullback, W fully faithful
  bool upstairs = false;     // K' creates cloak of Vb by Va, [Va,Vb] ≅ V h
  bool downstairs = false;   // K creates cloak of b by a
  bool implication_ok() const { return !(hypotheses && upstairs) || downstairs; }
};
PullbackCreation pullback_creation_check(const magmal::MagmalFunctor& v,
                                         const magmal::MagmalFunctor& k,
                                         const magmal::MagmalFunctor& kp,
                                         const magmal::MagmalFunctor& w, Id a,
                                         Id b);

// Split-fork witness for the fork ζ; (δ_z, Gζ): the retractions making it an
// absolute equalizer, plus the EM-level equalizer search agreeing.
bool fork_is_split_equalizer(const EMCategory& em,
                             const magmal::MagmalComonad& g, Id em_z);

}  // namespace cloakforge::em
