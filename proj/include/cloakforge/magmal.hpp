#pragma once

#include "cloakforge/fincat.hpp"

namespace cloakforge::magmal {

using fincat::CatPtr;
using fincat::Id;
using fincat::kNone;

// A category with a binary tensor functor and nothing else: no unit, no
// associator. Tensor lives on the materialized product category.
struct MagmalCategory {
  CatPtr base;
  fincat::ProductIndex prod;  // base×base
  fincat::Functor tensor;     // prod.prod → base

  Id tob(Id x, Id y) const { return tensor.ob(prod.ob(x, y)); }
  Id tmor(Id f, Id g) const { return tensor.mor(prod.mor(f, g)); }
  std::vector<std::string> validate() const;
};

MagmalCategory make_magmal(const CatPtr& base, const fincat::Functor& tensor,
                           const fincat::ProductIndex& prod);
// Meet tensor on a lattice poset.
MagmalCategory meet_magmal(const fincat::Poset& p);
// Tensor on the opposite category (same tables, reversed arrows).
MagmalCategory opposite_magmal(const MagmalCategory& c);

// A left cloak [y,z] with its evaluation, plus the count of search candidates
// that passed the bijection test (surfacing accidental non-uniqueness).
struct Cloak {
  Id y = kNone, z = kNone;
  Id hom_obj = kNone;
  Id ev = kNone;  // hom_obj⊗y → z
  int passing_candidates = 0;
};

bool is_cloak(const MagmalCategory& c, Id y, Id z, Id hom_obj, Id ev);
// Exhaustive (H, e) search in id order; first passing pair wins.
std::optional<Cloak> find_cloak(const MagmalCategory& c, Id y, Id z);

// All cloaks of a magmal category, computed once (grid scan, parallel).
struct CloakTable {
  std::vector<std::vector<std::optional<Cloak>>> at;  // [y][z]
  const Cloak& require(Id y, Id z) const;             // throws MissingCloaks
  bool total_by(Id y) const;
  bool total() const;
};
CloakTable compute_cloaks(const MagmalCategory& c);

struct CloakalReport {
  std::vector<std::pair<Id, Id>> missing;  // (y,z) pairs lacking cloaks
  bool left_cloakal() const { return missing.empty(); }
};
CloakalReport is_left_cloakal(const MagmalCategory& c);
CloakalReport is_left_cloakal(const CloakTable& t);

// The representability bijection, used pervasively:
//   transpose:  g : x⊗y → z  ↦  the unique f : x → [y,z] with ev∘(f⊗1) = g
//   untranspose: f ↦ ev∘(f⊗1)
Id transpose(const MagmalCategory& c, const Cloak& k, Id x, Id g);
Id untranspose(const MagmalCategory& c, const Cloak& k, Id f);

// Unit of -⊗y ⊣ [y,-] at x, needing the cloak [y, x⊗y].
Id ve_component(const MagmalCategory& c, const Cloak& k_of_xy, Id x);
// [1,h] : [y,z] → [y,z'] for h : z → z'.
Id cloak_post(const MagmalCategory& c, const Cloak& from, const Cloak& to, Id h);
// [k,1] : [y',z] → [y,z] for k : y → y'.
Id cloak_pre(const MagmalCategory& c, const Cloak& from_by_yp,
             const Cloak& to_by_y, Id k);

struct MagmalFunctor {
  MagmalCategory dom, cod;
  fincat::Functor underlying;
  std::vector<std::vector<Id>> s2;  // [x][y] : Sx⊗Sy → S(x⊗y)

  Id ob(Id x) const { return underlying.ob(x); }
  Id mor(Id f) const { return underlying.mor(f); }
  std::vector<std::string> validate() const;
  bool is_strong() const;  // every s2 component invertible
};

MagmalFunctor identity_magmal(const MagmalCategory& c);
MagmalFunctor compose(const MagmalFunctor& g, const MagmalFunctor& f);
// Strict structure (identity s2) on an underlying functor; nullopt when the
// functor does not commute with the tensors on the nose.
std::optional<MagmalFunctor> strict_magmal(const MagmalCategory& dom,
                                           const MagmalCategory& cod,
                                           const fincat::Functor& u);

// θ_{x⊗y} ∘ S₂ = T₂ ∘ (θ_x ⊗ θ_y) for every object pair.
std::vector<std::string> check_magmal_nat(const MagmalFunctor& s,
                                          const MagmalFunctor& t,
                                          const fincat::NatTrans& theta);

struct MagmalComonad {
  MagmalFunctor g;  // endofunctor on g.dom (== g.cod)
  fincat::NatTrans eps;    // G ⇒ 1
  fincat::NatTrans delta;  // G ⇒ G∘G

  const MagmalCategory& carrier() const { return g.dom; }
  std::vector<std::string> validate() const;
};

// Interior operator g on a lattice as a magmal comonad when the canonical
// structure exists (fixpoints closed under meet); nullopt otherwise.
std::optional<MagmalComonad> poset_comonad(const MagmalCategory& c,
                                           const std::vector<Id>& op);

// cloak-side mate bijection between S₂ (at fixed y) and S₂^ℓ families.
// s2l[z] : S[y,z] → [Sy,Sz]. Throws MissingCloaks when a needed cloak is
// absent in the relevant table.
std::vector<Id> s2l_from_s2(const MagmalFunctor& s, const CloakTable& dom_t,
                            const CloakTable& cod_t, Id y);
std::vector<Id> s2_from_s2l(const MagmalFunctor& s, const CloakTable& dom_t,
                            const CloakTable& cod_t, Id y,
                            const std::vector<Id>& s2l);

// True iff S[y,z] with the transported evaluation passes the bijection test
// in the codomain.
bool preserves_cloak(const MagmalFunctor& s, const CloakTable& dom_t, Id y,
                     Id z);

}  // namespace cloakforge::magmal
