#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cloakforge {

// Typed failures shared by all modules. The `code` string matches the
// spec-facing error names used in reports.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

struct Limits {
  // Objects allowed in a materialized functor category / hom-category.
  int functor_category_objects = 20000;
  // Presheaf test sets: every presheaf with total size <= total and
  // per-object size <= per_object, on the instance base.
  int presheaf_total = 12;
  int presheaf_per_object = 2;
};

// Process-wide limits; CLOAKFORGE_SIZE_LIMIT overrides the functor-category
// bound at startup.
Limits& limits();

namespace fincat {

using Id = int32_t;
constexpr Id kNone = -1;

// A finite category as total lookup tables. Objects and morphisms are dense
// integer ids; all searches iterate in id order so every chosen witness is
// deterministic. Instances are immutable once validated.
struct FinCategory {
  std::string name;
  std::vector<std::string> obj_names;  // optional, sized n_obj or empty
  std::vector<std::string> mor_names;  // optional, sized n_mor or empty

  std::vector<Id> mor_src, mor_dst;  // per morphism
  std::vector<Id> identity;          // per object
  std::vector<Id> compose_table;     // [g * n_mor + f] = g after f, or kNone

  int n_obj() const { return static_cast<int>(identity.size()); }
  int n_mor() const { return static_cast<int>(mor_src.size()); }
  Id src(Id f) const { return mor_src[f]; }
  Id dst(Id f) const { return mor_dst[f]; }
  Id id(Id x) const { return identity[x]; }
  bool composable(Id g, Id f) const { return mor_dst[f] == mor_src[g]; }
  Id compose(Id g, Id f) const;  // g∘f; throws MalformedTable if undefined
  Id compose3(Id h, Id g, Id f) const { return compose(h, compose(g, f)); }

  // hom(x,y) in morphism-id order (cached after validation).
  const std::vector<Id>& hom(Id x, Id y) const;
  const std::vector<Id>& from(Id x) const;  // morphisms with src x
  const std::vector<Id>& into(Id y) const;  // morphisms with dst y

  std::string obj_name(Id x) const;
  std::string mor_name(Id f) const;

  // Every violated law, one line each; empty means lawful.
  std::vector<std::string> validate() const;
  void freeze();  // builds caches; called by make()

 private:
  std::vector<std::vector<std::vector<Id>>> hom_cache_;
  std::vector<std::vector<Id>> from_cache_, into_cache_;
  bool frozen_ = false;
};

using CatPtr = std::shared_ptr<const FinCategory>;

// Validates, freezes and shares; throws LawViolation listing every failure.
CatPtr make_category(FinCategory raw);

// Raw-table validation entry point (the tables may be arbitrary garbage).
std::vector<std::string> validate_category(const FinCategory& raw);

struct Functor {
  CatPtr dom, cod;
  std::vector<Id> obj_map;
  std::vector<Id> mor_map;

  Id ob(Id x) const { return obj_map[x]; }
  Id mor(Id f) const { return mor_map[f]; }
  std::vector<std::string> validate() const;
  bool operator==(const Functor& o) const {
    return dom == o.dom && cod == o.cod && obj_map == o.obj_map &&
           mor_map == o.mor_map;
  }
};

Functor identity_functor(const CatPtr& c);
Functor compose(const Functor& g, const Functor& f);  // g∘f
Functor constant_functor(const CatPtr& dom, const CatPtr& cod, Id at);
bool is_fully_faithful(const Functor& f);

struct NatTrans {
  Functor dom, cod;             // parallel functors
  std::vector<Id> components;   // per object of dom.dom

  Id at(Id x) const { return components[x]; }
  std::vector<std::string> validate() const;
  bool operator==(const NatTrans& o) const {
    return dom == o.dom && cod == o.cod && components == o.components;
  }
};

NatTrans identity_nat(const Functor& f);
NatTrans vcompose(const NatTrans& b, const NatTrans& a);     // b after a
NatTrans whisker_left(const Functor& g, const NatTrans& a);  // g·a
NatTrans whisker_right(const NatTrans& a, const Functor& f); // a·f
bool is_nat_iso(const NatTrans& a);
NatTrans invert_nat(const NatTrans& a);

// left ⊣ right with unit 1 ⇒ right∘left and counit left∘right ⇒ 1.
struct Adjunction {
  Functor left, right;
  NatTrans unit, counit;
  std::vector<std::string> validate() const;  // triangle identities
};

Adjunction identity_adjunction(const CatPtr& c);
// (f2∘f1) ⊣ (u1∘u2) from f1 ⊣ u1 and f2 ⊣ u2 (f2 applied after f1).
Adjunction compose_adjunction(const Adjunction& outer, const Adjunction& inner);

// Binary product category; pairing helpers for tensor functors.
struct ProductIndex {
  CatPtr prod;
  CatPtr left, right;
  Id ob(Id x, Id y) const { return x * static_cast<Id>(right->n_obj()) + y; }
  Id mor(Id f, Id g) const { return f * static_cast<Id>(right->n_mor()) + g; }
  Id ob_left(Id p) const { return p / right->n_obj(); }
  Id ob_right(Id p) const { return p % right->n_obj(); }
  Id mor_left(Id p) const { return p / right->n_mor(); }
  Id mor_right(Id p) const { return p % right->n_mor(); }
};
ProductIndex product_category(const CatPtr& a, const CatPtr& b);
Functor product_functor(const ProductIndex& dom, const ProductIndex& cod,
                        const Functor& f, const Functor& g);
Adjunction product_adjunction(const ProductIndex& dom, const ProductIndex& cod,
                              const Adjunction& a, const Adjunction& b);

CatPtr opposite(const CatPtr& c);
Functor opposite(const Functor& f, const CatPtr& opdom, const CatPtr& opcod);

// Exhaustive enumerations, in deterministic (id-lexicographic) order.
std::vector<Functor> enumerate_functors(const CatPtr& a, const CatPtr& c);
std::vector<NatTrans> enumerate_nattrans(const Functor& f, const Functor& g);

// The category of functors A→C and natural transformations, with the side
// tables mapping ids back to the enumerated data.
struct FunctorCategory {
  CatPtr cat;
  std::vector<Functor> objects;
  std::vector<NatTrans> morphisms;
  Id find_object(const Functor& f) const;
  Id find_morphism(const NatTrans& a) const;
};
FunctorCategory functor_category(const CatPtr& a, const CatPtr& c);

// Deterministic equalizer search: first (E,k) in id order satisfying the
// universal property, or nullopt.
struct Equalizer {
  Id obj;
  Id mor;  // k : obj → src(f)
};
std::optional<Equalizer> find_equalizer(const FinCategory& c, Id f, Id g);
bool is_equalizer_of(const FinCategory& c, Id obj, Id k, Id f, Id g);

struct MorphismClass {
  bool mono = false, epi = false, regular_mono = false, iso = false;
};
MorphismClass morphism_class(const FinCategory& c, Id f);
std::optional<Id> two_sided_inverse(const FinCategory& c, Id f);

// Right adjoint by exhaustive candidate search (first hit in enumeration
// order). The comma-category construction below is the independent oracle.
std::optional<Adjunction> find_right_adjoint(const Functor& f);
std::optional<Adjunction> find_left_adjoint(const Functor& u);
std::optional<Adjunction> right_adjoint_via_comma(const Functor& f);

// Mate calculus. adj1: f ⊣ u (f : B→A), adj2: f2 ⊣ u2 (f2 : B2→A2),
// s : A→A2, t : B→B2.
//   forward : phi : t∘u ⇒ u2∘s  ↦  mate : f2∘t ⇒ s∘f
//   backward: psi : f2∘t ⇒ s∘f  ↦  phi : t∘u ⇒ u2∘s
// Both throw ShapeMismatch when the boundaries do not line up; they are
// mutually inverse bijections.
NatTrans mate_forward(const Adjunction& adj1, const Adjunction& adj2,
                      const Functor& s, const Functor& t, const NatTrans& phi);
NatTrans mate_backward(const Adjunction& adj1, const Adjunction& adj2,
                       const Functor& s, const Functor& t, const NatTrans& psi);

// Isomorphism of categories by exhaustive search with pruning (hom-size
// profiles); used by uniqueness tests on ≤8-object instances.
bool categories_isomorphic(const FinCategory& a, const FinCategory& b);
bool objects_isomorphic(const FinCategory& c, Id x, Id y);

// Posets as categories: one morphism x→y per x ≤ y, lex (x,y) order.
struct Poset {
  CatPtr cat;
  std::vector<std::vector<bool>> leq;
  std::vector<std::vector<Id>> arrow;  // arrow[x][y] or kNone
  bool is_lattice = false;
  std::vector<std::vector<Id>> meet, join;  // defined when is_lattice
  bool distributive = false;
};
Poset poset_category(const std::vector<std::vector<bool>>& leq,
                     const std::string& name,
                     const std::vector<std::string>& elem_names = {});
Poset chain_poset(int n);     // 0 < 1 < ... < n-1
Poset diamond_poset();        // {0,a,b,1}
Poset discrete_poset(int n);

// One-object category from a finite monoid multiplication table.
CatPtr monoid_category(const std::vector<std::vector<int>>& mul,
                       const std::string& name);

}  // namespace fincat
}  // namespace cloakforge
