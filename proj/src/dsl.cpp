#include "cloakforge/dsl.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "cloakforge/claims.hpp"

namespace cloakforge::dsl {

using fincat::CatPtr;
using fincat::FinCategory;
using fincat::Id;
using fincat::kNone;
using fincat::Poset;
using nlohmann::json;

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::Category: return "category";
    case Kind::Poset: return "poset";
    case Kind::Monoid: return "monoid";
    case Kind::Magmal: return "magmal";
    case Kind::Comonad: return "comonad";
    case Kind::Monad: return "monad";
    case Kind::Profunctor: return "profunctor";
    case Kind::Presheaf: return "presheaf";
    case Kind::Procomonad: return "procomonad";
    case Kind::Bundle: return "bundle";
  }
  return "?";
}

namespace {

Kind parse_kind(const std::string& s, const std::string& path) {
  for (Kind k : {Kind::Category, Kind::Poset, Kind::Monoid, Kind::Magmal,
                 Kind::Comonad, Kind::Monad, Kind::Profunctor, Kind::Presheaf,
                 Kind::Procomonad, Kind::Bundle})
    if (kind_name(k) == s) return k;
  throw Error("ParseError", "unknown kind '" + s + "' at " + path);
}

std::pair<int, int> line_col(const std::string& text, size_t byte) {
  int line = 1, col = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

Id name_to_id(const std::vector<std::string>& names, const std::string& s,
              const std::string& path) {
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == s) return static_cast<Id>(i);
  throw Error("ResolveError", "unknown name '" + s + "' at " + path);
}

struct Builtins {
  std::vector<InstanceDoc> docs;
  const InstanceDoc* find(const std::string& name) const {
    for (auto& d : docs)
      if (d.name == name) return &d;
    return nullptr;
  }
};

InstanceDoc poset_doc(const Poset& p, const std::string& name) {
  InstanceDoc d;
  d.kind = Kind::Poset;
  d.name = name;
  d.poset = p;
  d.category = p.cat;
  if (p.is_lattice) d.magmal_cat = magmal::meet_magmal(p);
  json payload;
  payload["elements"] = json::array();
  for (Id x = 0; x < p.cat->n_obj(); ++x)
    payload["elements"].push_back(p.cat->obj_name(x));
  payload["leq"] = json::array();
  for (Id x = 0; x < p.cat->n_obj(); ++x)
    for (Id y = 0; y < p.cat->n_obj(); ++y)
      if (p.leq[x][y] && x != y)
        payload["leq"].push_back({p.cat->obj_name(x), p.cat->obj_name(y)});
  d.canonical_payload = payload.dump();
  return d;
}

Builtins& builtins() {
  static Builtins b = [] {
    Builtins out;
    for (int n = 1; n <= 6; ++n)
      out.docs.push_back(
          poset_doc(fincat::chain_poset(n), "chain" + std::to_string(n)));
    out.docs.push_back(poset_doc(fincat::diamond_poset(), "diamond"));
    for (int n = 1; n <= 3; ++n)
      out.docs.push_back(poset_doc(fincat::discrete_poset(n),
                                   "discrete" + std::to_string(n)));
    return out;
  }();
  return b;
}

const InstanceDoc& resolve(const std::vector<InstanceDoc>& scope,
                           const std::string& name, const std::string& path) {
  for (auto it = scope.rbegin(); it != scope.rend(); ++it)
    if (it->name == name) return *it;
  if (const InstanceDoc* d = builtins().find(name)) return *d;
  throw Error("ResolveError", "unknown instance '" + name + "' at " + path);
}

const magmal::MagmalCategory& magmal_of(const InstanceDoc& d,
                                        const std::string& path) {
  if (d.magmal_cat) return *d.magmal_cat;
  throw Error("ResolveError",
              "instance '" + d.name + "' has no magmal structure (" + path +
                  ")");
}

// --------------------------------------------------------- kind builders

InstanceDoc build_poset(const std::string& name, const json& payload) {
  std::vector<std::string> elems;
  for (auto& e : payload.at("elements")) elems.push_back(e.get<std::string>());
  const int n = static_cast<int>(elems.size());
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) leq[i][i] = true;
  for (auto& pr : payload.at("leq")) {
    Id a = name_to_id(elems, pr.at(0).get<std::string>(), "payload.leq");
    Id b = name_to_id(elems, pr.at(1).get<std::string>(), "payload.leq");
    leq[a][b] = true;
  }
  // transitive closure; antisymmetry violations surface as validation errors
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (leq[i][k] && leq[k][j]) leq[i][j] = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && leq[i][j] && leq[j][i])
        throw Error("ValidationError", "antisymmetry fails between '" +
                                           elems[i] + "' and '" + elems[j] +
                                           "' in poset '" + name + "'");
  InstanceDoc d = poset_doc(fincat::poset_category(leq, name, elems), name);
  d.name = name;
  return d;
}

InstanceDoc build_category(const std::string& name, const json& payload) {
  FinCategory raw;
  raw.name = name;
  for (auto& o : payload.at("objects"))
    raw.obj_names.push_back(o.get<std::string>());
  std::vector<std::string> mor_names;
  for (auto& m : payload.at("morphisms")) {
    mor_names.push_back(m.at("name").get<std::string>());
    raw.mor_src.push_back(name_to_id(raw.obj_names,
                                     m.at("src").get<std::string>(),
                                     "payload.morphisms"));
    raw.mor_dst.push_back(name_to_id(raw.obj_names,
                                     m.at("dst").get<std::string>(),
                                     "payload.morphisms"));
  }
  raw.mor_names = mor_names;
  raw.identity.assign(raw.obj_names.size(), kNone);
  for (auto& [obj, mor] : payload.at("identities").items())
    raw.identity[name_to_id(raw.obj_names, obj, "payload.identities")] =
        name_to_id(mor_names, mor.get<std::string>(), "payload.identities");
  const int nm = static_cast<int>(raw.mor_src.size());
  raw.compose_table.assign(static_cast<size_t>(nm) * nm, kNone);
  for (auto& tr : payload.at("compose")) {
    Id g = name_to_id(mor_names, tr.at(0).get<std::string>(), "payload.compose");
    Id f = name_to_id(mor_names, tr.at(1).get<std::string>(), "payload.compose");
    Id gf = name_to_id(mor_names, tr.at(2).get<std::string>(), "payload.compose");
    raw.compose_table[static_cast<size_t>(g) * nm + f] = gf;
  }
  auto report = fincat::validate_category(raw);
  if (!report.empty()) {
    std::string msg = "category '" + name + "' is not lawful:";
    for (auto& r : report) msg += "\n  " + r;
    throw Error("ValidationError", msg);
  }
  InstanceDoc d;
  d.kind = Kind::Category;
  d.name = name;
  raw.freeze();
  d.category = std::make_shared<FinCategory>(std::move(raw));
  d.canonical_payload = payload.dump();
  return d;
}

InstanceDoc build_monoid(const std::string& name, const json& payload) {
  fusion::FiniteMonoid m;
  for (auto& e : payload.at("elements")) m.names.push_back(e.get<std::string>());
  m.unit = name_to_id(m.names, payload.at("unit").get<std::string>(),
                      "payload.unit");
  const int n = static_cast<int>(m.names.size());
  m.mul.assign(n, std::vector<int>(n, -1));
  for (auto& tr : payload.at("mul")) {
    int a = name_to_id(m.names, tr.at(0).get<std::string>(), "payload.mul");
    int b = name_to_id(m.names, tr.at(1).get<std::string>(), "payload.mul");
    int ab = name_to_id(m.names, tr.at(2).get<std::string>(), "payload.mul");
    m.mul[a][b] = ab;
  }
  for (auto& row : m.mul)
    for (int v : row)
      if (v < 0)
        throw Error("ValidationError",
                    "monoid '" + name + "': multiplication table not total");
  auto rep = m.validate();
  if (!rep.empty())
    throw Error("ValidationError", "monoid '" + name + "': " + rep[0]);
  InstanceDoc d;
  d.kind = Kind::Monoid;
  d.name = name;
  d.monoid = m;
  d.category = fincat::monoid_category(m.mul, name);
  d.canonical_payload = payload.dump();
  return d;
}

InstanceDoc build_magmal(const std::string& name, const json& payload,
                         const std::vector<InstanceDoc>& scope) {
  const InstanceDoc& base = resolve(scope, payload.at("base").get<std::string>(),
                                    "payload.base");
  CatPtr cat = base.category;
  auto prod = fincat::product_category(cat, cat);
  fincat::Functor t;
  t.dom = prod.prod;
  t.cod = cat;
  t.obj_map.assign(cat->n_obj() * cat->n_obj(), kNone);
  t.mor_map.assign(static_cast<size_t>(cat->n_mor()) * cat->n_mor(), kNone);
  auto oname = [&](const json& j) {
    return name_to_id(
        [&] {
          std::vector<std::string> v;
          for (Id x = 0; x < cat->n_obj(); ++x) v.push_back(cat->obj_name(x));
          return v;
        }(),
        j.get<std::string>(), "payload.tensor_obj");
  };
  for (auto& tr : payload.at("tensor_obj"))
    t.obj_map[prod.ob(oname(tr.at(0)), oname(tr.at(1)))] = oname(tr.at(2));
  if (payload.contains("tensor_mor")) {
    std::vector<std::string> mn;
    for (Id m = 0; m < cat->n_mor(); ++m) mn.push_back(cat->mor_name(m));
    for (auto& tr : payload.at("tensor_mor")) {
      Id f = name_to_id(mn, tr.at(0).get<std::string>(), "payload.tensor_mor");
      Id g = name_to_id(mn, tr.at(1).get<std::string>(), "payload.tensor_mor");
      Id fg = name_to_id(mn, tr.at(2).get<std::string>(), "payload.tensor_mor");
      t.mor_map[prod.mor(f, g)] = fg;
    }
  } else if (base.poset) {
    for (Id f = 0; f < cat->n_mor(); ++f)
      for (Id g = 0; g < cat->n_mor(); ++g) {
        Id s = t.obj_map[prod.ob(cat->src(f), cat->src(g))];
        Id dd = t.obj_map[prod.ob(cat->dst(f), cat->dst(g))];
        const auto& h = base.poset->arrow[s][dd];
        if (h == kNone)
          throw Error("ValidationError", "magmal '" + name +
                                             "': tensor not monotone at (" +
                                             cat->mor_name(f) + "," +
                                             cat->mor_name(g) + ")");
        t.mor_map[prod.mor(f, g)] = h;
      }
  } else {
    throw Error("ValidationError",
                "magmal '" + name + "': tensor_mor required for non-posets");
  }
  InstanceDoc d;
  d.kind = Kind::Magmal;
  d.name = name;
  d.category = cat;
  d.poset = base.poset;
  try {
    d.magmal_cat = magmal::make_magmal(cat, t, prod);
  } catch (const Error& e) {
    throw Error("ValidationError", "magmal '" + name + "': " + e.what());
  }
  d.canonical_payload = payload.dump();
  return d;
}

std::vector<Id> read_obj_map(const CatPtr& cat, const json& m,
                             const std::string& path) {
  std::vector<std::string> on;
  for (Id x = 0; x < cat->n_obj(); ++x) on.push_back(cat->obj_name(x));
  std::vector<Id> out(cat->n_obj(), kNone);
  for (auto& [k, v] : m.items())
    out[name_to_id(on, k, path)] = name_to_id(on, v.get<std::string>(), path);
  for (Id x = 0; x < cat->n_obj(); ++x)
    if (out[x] == kNone)
      throw Error("ValidationError", "obj_map not total at '" + on[x] + "'");
  return out;
}

InstanceDoc build_comonad(const std::string& name, const json& payload,
                          const std::vector<InstanceDoc>& scope) {
  const InstanceDoc& base = resolve(scope, payload.at("base").get<std::string>(),
                                    "payload.base");
  const magmal::MagmalCategory& c = magmal_of(base, "payload.base");
  auto op = read_obj_map(c.base, payload.at("obj_map"), "payload.obj_map");
  if (base.poset) {
    // name the violated pair when the table is not even monotone
    for (Id x = 0; x < c.base->n_obj(); ++x)
      for (Id y = 0; y < c.base->n_obj(); ++y)
        if (base.poset->leq[x][y] && !base.poset->leq[op[x]][op[y]])
          throw Error("ValidationError",
                      "comonad '" + name + "': operator not monotone on (" +
                          c.base->obj_name(x) + " ≤ " + c.base->obj_name(y) +
                          ")");
    for (Id x = 0; x < c.base->n_obj(); ++x) {
      if (!base.poset->leq[op[x]][x])
        throw Error("ValidationError", "comonad '" + name +
                                           "': not deflationary at " +
                                           c.base->obj_name(x));
      if (op[op[x]] != op[x])
        throw Error("ValidationError", "comonad '" + name +
                                           "': not idempotent at " +
                                           c.base->obj_name(x));
    }
  }
  auto g = magmal::poset_comonad(c, op);
  if (!g)
    throw Error("ValidationError",
                "comonad '" + name + "' fails the magmal comonad laws");
  InstanceDoc d;
  d.kind = Kind::Comonad;
  d.name = name;
  d.category = c.base;
  d.poset = base.poset;
  d.magmal_cat = c;
  d.comonad = *g;
  d.canonical_payload = payload.dump();
  return d;
}

InstanceDoc build_monad(const std::string& name, const json& payload,
                        const std::vector<InstanceDoc>& scope) {
  const InstanceDoc& base = resolve(scope, payload.at("base").get<std::string>(),
                                    "payload.base");
  const magmal::MagmalCategory& c = magmal_of(base, "payload.base");
  auto op = read_obj_map(c.base, payload.at("obj_map"), "payload.obj_map");
  auto t = em::poset_monad(c, op);
  if (!t)
    throw Error("ValidationError",
                "monad '" + name + "' fails the opmagmal monad laws");
  InstanceDoc d;
  d.kind = Kind::Monad;
  d.name = name;
  d.category = c.base;
  d.poset = base.poset;
  d.magmal_cat = c;
  d.monad = *t;
  d.canonical_payload = payload.dump();
  return d;
}

InstanceDoc build_profunctor(const std::string& name, const json& payload,
                             const std::vector<InstanceDoc>& scope) {
  const InstanceDoc& dd = resolve(scope, payload.at("dom").get<std::string>(),
                                  "payload.dom");
  const InstanceDoc& cd = resolve(scope, payload.at("cod").get<std::string>(),
                                  "payload.cod");
  prof::Profunctor p;
  p.dom = dd.category;
  p.cod = cd.category;
  p.size = payload.at("value").get<std::vector<std::vector<int>>>();
  p.lact = payload.at("lact").get<std::vector<std::vector<std::vector<int>>>>();
  p.ract = payload.at("ract").get<std::vector<std::vector<std::vector<int>>>>();
  auto rep = p.validate();
  if (!rep.empty())
    throw Error("ValidationError", "profunctor '" + name + "': " + rep[0]);
  InstanceDoc d;
  d.kind = Kind::Profunctor;
  d.name = name;
  d.profunctor = p;
  d.canonical_payload = payload.dump();
  return d;
}

InstanceDoc build_presheaf(const std::string& name, const json& payload,
                           const std::vector<InstanceDoc>& scope) {
  const InstanceDoc& bd = resolve(scope, payload.at("base").get<std::string>(),
                                  "payload.base");
  prof::Presheaf p;
  p.base = bd.category;
  p.size = payload.at("value").get<std::vector<int>>();
  p.act = payload.at("act").get<std::vector<std::vector<int>>>();
  auto rep = p.validate();
  if (!rep.empty())
    throw Error("ValidationError", "presheaf '" + name + "': " + rep[0]);
  InstanceDoc d;
  d.kind = Kind::Presheaf;
  d.name = name;
  d.presheaf = p;
  d.canonical_payload = payload.dump();
  return d;
}

InstanceDoc build_procomonad(const std::string& name, const json& payload,
                             const std::vector<InstanceDoc>& scope) {
  const InstanceDoc& bd = resolve(scope, payload.at("base").get<std::string>(),
                                  "payload.base");
  std::string from = payload.at("from").get<std::string>();
  InstanceDoc d;
  d.kind = Kind::Procomonad;
  d.name = name;
  d.category = bd.category;
  d.poset = bd.poset;
  d.magmal_cat = bd.magmal_cat;
  if (from == "hom")
    d.procomonad_inst =
        procomonad::magmal_hom_procomonad(magmal_of(bd, "payload.base"));
  else if (from == "comonad" && bd.comonad)
    d.procomonad_inst = procomonad::magmal_gamma_from_comonad(*bd.comonad);
  else if (from == "monad" && bd.monad)
    d.procomonad_inst = procomonad::magmal_gamma_from_monad(*bd.monad);
  else
    throw Error("ResolveError", "procomonad '" + name +
                                    "': base does not provide '" + from + "'");
  d.canonical_payload = payload.dump();
  return d;
}

InstanceDoc build_doc(const json& j, const std::vector<InstanceDoc>& scope,
                      const std::string& path) {
  Kind kind = parse_kind(j.at("kind").get<std::string>(), path);
  std::string name = j.at("name").get<std::string>();
  const json& payload = j.at("payload");
  switch (kind) {
    case Kind::Poset: return build_poset(name, payload);
    case Kind::Category: return build_category(name, payload);
    case Kind::Monoid: return build_monoid(name, payload);
    case Kind::Magmal: return build_magmal(name, payload, scope);
    case Kind::Comonad: return build_comonad(name, payload, scope);
    case Kind::Monad: return build_monad(name, payload, scope);
    case Kind::Profunctor: return build_profunctor(name, payload, scope);
    case Kind::Presheaf: return build_presheaf(name, payload, scope);
    case Kind::Procomonad: return build_procomonad(name, payload, scope);
    case Kind::Bundle: {
      InstanceDoc d;
      d.kind = Kind::Bundle;
      d.name = name;
      d.canonical_payload = payload.dump();
      return d;
    }
  }
  throw Error("ParseError", "unreachable kind");
}

}  // namespace

std::vector<InstanceDoc> parse_documents(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = line_col(text, e.byte);
    throw Error("ParseError", "syntax error at line " + std::to_string(line) +
                                  ", column " + std::to_string(col) + ": " +
                                  e.what());
  }
  std::vector<InstanceDoc> out;
  if (j.is_array()) {
    int i = 0;
    for (auto& el : j) {
      out.push_back(build_doc(el, out, "$[" + std::to_string(i) + "]"));
      ++i;
    }
  } else {
    out.push_back(build_doc(j, out, "$"));
  }
  return out;
}

InstanceDoc parse_instance(const std::string& text) {
  auto docs = parse_documents(text);
  if (docs.empty()) throw Error("ParseError", "no document");
  return docs.back();
}

std::string serialize(const InstanceDoc& doc) {
  json j;
  j["kind"] = kind_name(doc.kind);
  j["name"] = doc.name;
  j["payload"] = json::parse(doc.canonical_payload);
  return j.dump();
}

// ---------------------------------------------------------------- recipes

std::vector<Poset> all_heyting(int n) {
  std::vector<Poset> out;
  std::vector<std::string> canon_seen;
  for (int k = 1; k <= n; ++k) {
    const int bits = k * (k - 1) / 2;
    for (int mask = 0; mask < (1 << bits); ++mask) {
      std::vector<std::vector<bool>> leq(k, std::vector<bool>(k, false));
      for (int i = 0; i < k; ++i) leq[i][i] = true;
      int b = 0;
      for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j, ++b)
          if ((mask >> b) & 1) leq[i][j] = true;
      // transitivity
      bool trans = true;
      for (int a = 0; a < k && trans; ++a)
        for (int i = 0; i < k && trans; ++i)
          for (int j = 0; j < k; ++j)
            if (leq[i][a] && leq[a][j] && !leq[i][j]) {
              trans = false;
              break;
            }
      if (!trans) continue;
      Poset p;
      try {
        p = fincat::poset_category(leq, "");
      } catch (const Error&) {
        continue;
      }
      if (!p.is_lattice || !p.distributive) continue;
      // canonical form under permutations
      std::string best;
      std::vector<int> perm(k);
      std::iota(perm.begin(), perm.end(), 0);
      do {
        std::string s(static_cast<size_t>(k) * k, '0');
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j)
            if (leq[perm[i]][perm[j]]) s[i * k + j] = '1';
        if (best.empty() || s < best) best = s;
      } while (std::next_permutation(perm.begin(), perm.end()));
      if (std::find(canon_seen.begin(), canon_seen.end(), best) !=
          canon_seen.end())
        continue;
      canon_seen.push_back(best);
      std::string name = "heyting" + std::to_string(k) + "_" +
                         std::to_string(canon_seen.size());
      out.push_back(fincat::poset_category(leq, name));
    }
  }
  return out;
}

std::vector<std::vector<Id>> interior_operators(const Poset& p) {
  std::vector<std::vector<Id>> out;
  const int n = p.cat->n_obj();
  std::vector<Id> op(n, 0);
  while (true) {
    bool ok = true;
    for (Id x = 0; x < n && ok; ++x) {
      ok = p.leq[op[x]][x] && op[op[x]] == op[x];
      for (Id y = 0; y < n && ok; ++y)
        if (p.leq[x][y]) ok = p.leq[op[x]][op[y]];
    }
    if (ok) out.push_back(op);
    int i = n - 1;
    while (i >= 0 && op[i] == n - 1) op[i--] = 0;
    if (i < 0) break;
    ++op[i];
  }
  return out;
}

std::vector<std::vector<Id>> closure_operators(const Poset& p) {
  std::vector<std::vector<Id>> out;
  const int n = p.cat->n_obj();
  std::vector<Id> op(n, 0);
  while (true) {
    bool ok = true;
    for (Id x = 0; x < n && ok; ++x) {
      ok = p.leq[x][op[x]] && op[op[x]] == op[x];
      for (Id y = 0; y < n && ok; ++y)
        if (p.leq[x][y]) ok = p.leq[op[x]][op[y]];
    }
    if (ok) out.push_back(op);
    int i = n - 1;
    while (i >= 0 && op[i] == n - 1) op[i--] = 0;
    if (i < 0) break;
    ++op[i];
  }
  return out;
}

std::vector<std::pair<std::vector<Id>, std::vector<Id>>> adjoint_pairs(
    const Poset& p) {
  std::vector<std::pair<std::vector<Id>, std::vector<Id>>> out;
  const int n = p.cat->n_obj();
  for (auto& g : interior_operators(p)) {
    // left adjoint t(x) = min{y : x ≤ g(y)}, when it exists
    std::vector<Id> t(n, kNone);
    bool ok = true;
    for (Id x = 0; x < n && ok; ++x) {
      Id best = kNone;
      for (Id y = 0; y < n; ++y)
        if (p.leq[x][g[y]] && (best == kNone || p.leq[y][best])) {
          // candidate minimum; must be comparable with every other candidate
          best = (best == kNone || p.leq[y][best]) ? y : best;
        }
      // verify minimality
      if (best == kNone) {
        ok = false;
        break;
      }
      for (Id y = 0; y < n; ++y)
        if (p.leq[x][g[y]] && !p.leq[best][y]) ok = false;
      t[x] = best;
    }
    if (!ok) continue;
    // t must be a closure operator and genuinely adjoint
    bool closure = true;
    for (Id x = 0; x < n && closure; ++x) {
      closure = p.leq[x][t[x]] && t[t[x]] == t[x];
      for (Id y = 0; y < n && closure; ++y)
        if (p.leq[x][y]) closure = p.leq[t[x]][t[y]];
    }
    if (!closure) continue;
    bool adjoint = true;
    for (Id x = 0; x < n && adjoint; ++x)
      for (Id y = 0; y < n && adjoint; ++y)
        adjoint = p.leq[t[x]][y] == p.leq[x][g[y]];
    if (adjoint) out.emplace_back(t, g);
  }
  return out;
}

std::vector<prof::Presheaf> presheaf_test_set(const CatPtr& c) {
  std::vector<prof::Presheaf> out;
  auto push = [&](const prof::Presheaf& p) {
    for (auto& q : out)
      if (q == p) return;
    out.push_back(p);
  };
  for (Id y = 0; y < c->n_obj(); ++y) push(prof::yoneda(c, y));
  push(prof::terminal_presheaf(c));
  push(prof::empty_presheaf(c));
  for (auto& p : prof::enumerate_presheaves(c, limits().presheaf_total, 1))
    push(p);
  return out;
}

namespace {

InstanceDoc comonad_doc(const InstanceDoc& base, const std::vector<Id>& op,
                        const std::string& name) {
  json payload;
  payload["base"] = base.name;
  json om;
  for (Id x = 0; x < base.category->n_obj(); ++x)
    om[base.category->obj_name(x)] = base.category->obj_name(op[x]);
  payload["obj_map"] = om;
  std::vector<InstanceDoc> scope{base};
  json doc;
  doc["kind"] = "comonad";
  doc["name"] = name;
  doc["payload"] = payload;
  auto built = build_doc(doc, scope, "$");
  return built;
}

std::string op_suffix(const fincat::CatPtr& c, const std::vector<Id>& op) {
  std::string s;
  for (Id x = 0; x < c->n_obj(); ++x) {
    if (x) s += ",";
    s += c->obj_name(op[x]);
  }
  return s;
}

InstanceDoc monoid_doc(const fusion::FiniteMonoid& m, const std::string& name) {
  json payload;
  payload["elements"] = m.names;
  payload["unit"] = m.names[m.unit];
  payload["mul"] = json::array();
  for (size_t a = 0; a < m.names.size(); ++a)
    for (size_t b = 0; b < m.names.size(); ++b)
      payload["mul"].push_back(
          {m.names[a], m.names[b], m.names[m.mul[a][b]]});
  json doc;
  doc["kind"] = "monoid";
  doc["name"] = name;
  doc["payload"] = payload;
  return build_doc(doc, {}, "$");
}

}  // namespace

std::vector<InstanceDoc> generate_instance(const std::string& recipe) {
  auto open = recipe.find('(');
  std::string head = open == std::string::npos ? recipe : recipe.substr(0, open);
  std::string arg;
  if (open != std::string::npos) {
    auto close = recipe.rfind(')');
    if (close == std::string::npos || close < open)
      throw Error("UnknownRecipe", "malformed recipe '" + recipe + "'");
    arg = recipe.substr(open + 1, close - open - 1);
  }
  std::vector<InstanceDoc> out;
  if (head == "heyting-chain") {
    out.push_back(poset_doc(fincat::chain_poset(std::stoi(arg)),
                            "chain" + arg));
  } else if (head == "diamond") {
    out.push_back(poset_doc(fincat::diamond_poset(), "diamond"));
  } else if (head == "all-heyting") {
    for (auto& p : all_heyting(std::stoi(arg)))
      out.push_back(poset_doc(p, p.cat->name));
  } else if (head == "interior-operators") {
    const InstanceDoc* b = builtins().find(arg);
    if (!b) throw Error("UnknownRecipe", "unknown lattice '" + arg + "'");
    for (auto& op : interior_operators(*b->poset)) {
      auto g = magmal::poset_comonad(*b->magmal_cat, op);
      if (!g) continue;  // fixpoints not meet-closed: not a magmal comonad
      out.push_back(comonad_doc(
          *b, op, b->name + "-int(" + op_suffix(b->category, op) + ")"));
    }
  } else if (head == "closure-operators") {
    const InstanceDoc* b = builtins().find(arg);
    if (!b) throw Error("UnknownRecipe", "unknown lattice '" + arg + "'");
    for (auto& op : closure_operators(*b->poset)) {
      auto t = em::poset_monad(*b->magmal_cat, op);
      if (!t) continue;
      json payload;
      payload["base"] = b->name;
      json om;
      for (Id x = 0; x < b->category->n_obj(); ++x)
        om[b->category->obj_name(x)] = b->category->obj_name(op[x]);
      payload["obj_map"] = om;
      json doc;
      doc["kind"] = "monad";
      doc["name"] =
          b->name + "-cl(" + op_suffix(b->category, op) + ")";
      doc["payload"] = payload;
      out.push_back(build_doc(doc, {*b}, "$"));
    }
  } else if (head == "all-monoids") {
    for (auto& m : fusion::all_monoids(std::stoi(arg)))
      out.push_back(monoid_doc(
          m, "monoid" + std::to_string(m.mul.size()) + "_" +
                 std::to_string(out.size())));
  } else if (head == "cyclic-group") {
    out.push_back(monoid_doc(fusion::cyclic_group(std::stoi(arg)),
                             "Z" + arg));
  } else if (head == "delta-comonads-from-adjoints") {
    const InstanceDoc* b = builtins().find(arg);
    if (!b) throw Error("UnknownRecipe", "unknown lattice '" + arg + "'");
    for (auto& [t, g] : adjoint_pairs(*b->poset))
      out.push_back(comonad_doc(
          *b, g, b->name + "-adj(" + op_suffix(b->category, g) + ")"));
  } else {
    throw Error("UnknownRecipe", "unknown recipe '" + head + "'");
  }
  return out;
}

// ----------------------------------------------------------------- reports

std::string Report::to_json(bool with_timing) const {
  json j;
  j["claim"] = claim;
  j["instance"] = instance;
  j["verdict"] = holds;
  j["detail"] = detail;
  if (with_timing) j["timing_ms"] = timing_ms;
  return j.dump();
}

// --------------------------------------------------------------------- CLI

namespace {

int emit(const std::vector<Report>& reports, std::ostream& out) {
  bool all = true;
  for (const auto& r : reports) {
    out << r.to_json() << "\n";
    all = all && r.holds;
  }
  return all ? 0 : 1;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("ParseError", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Id object_by_name(const CatPtr& c, const std::string& s) {
  for (Id x = 0; x < c->n_obj(); ++x)
    if (c->obj_name(x) == s) return x;
  throw Error("ResolveError", "unknown object '" + s + "'");
}

}  // namespace

int run_command(const std::vector<std::string>& argv, std::ostream& out,
                std::ostream& err) {
  try {
    if (argv.empty()) {
      err << "usage: cloakforge <validate|cloak|fusion|hopf|verify|suite> ...\n";
      return 2;
    }
    const std::string& cmd = argv[0];
    if (cmd == "validate") {
      if (argv.size() != 2) {
        err << "usage: cloakforge validate <file>\n";
        return 2;
      }
      std::vector<Report> reports;
      try {
        auto docs = parse_documents(read_file(argv[1]));
        for (auto& d : docs)
          reports.push_back({"validate", d.name, true, "lawful", 0.0});
      } catch (const Error& e) {
        if (e.code() == "ValidationError") {
          reports.push_back({"validate", argv[1], false, e.what(), 0.0});
          return emit(reports, out);
        }
        throw;
      }
      return emit(reports, out);
    }
    if (cmd == "cloak") {
      std::string file, by, of;
      for (size_t i = 1; i < argv.size(); ++i) {
        if (argv[i] == "--by" && i + 1 < argv.size()) by = argv[++i];
        else if (argv[i] == "--of" && i + 1 < argv.size()) of = argv[++i];
        else if (file.empty()) file = argv[i];
        else {
          err << "usage: cloakforge cloak <file> --by Y --of Z\n";
          return 2;
        }
      }
      if (file.empty() || by.empty() || of.empty()) {
        err << "usage: cloakforge cloak <file> --by Y --of Z\n";
        return 2;
      }
      auto doc = parse_instance(read_file(file));
      const auto& c = magmal_of(doc, "file");
      Id y = object_by_name(c.base, by), z = object_by_name(c.base, of);
      auto k = magmal::find_cloak(c, y, z);
      Report r;
      r.claim = "cloak";
      r.instance = doc.name + "[" + by + "," + of + "]";
      r.holds = k.has_value();
      r.detail = k ? "hom_obj " + c.base->obj_name(k->hom_obj) + " (" +
                         std::to_string(k->passing_candidates) + " candidate(s))"
                   : "no cloak";
      return emit({r}, out);
    }
    if (cmd == "fusion") {
      std::string file, coalg, at, kind = "wood";
      for (size_t i = 1; i < argv.size(); ++i) {
        if (argv[i] == "--coalgebra" && i + 1 < argv.size()) coalg = argv[++i];
        else if (argv[i] == "--at" && i + 1 < argv.size()) at = argv[++i];
        else if (argv[i] == "--kind" && i + 1 < argv.size()) kind = argv[++i];
        else if (file.empty()) file = argv[i];
        else {
          err << "usage: cloakforge fusion <file> --coalgebra Y --at Z "
                 "[--kind wood|t|gamma]\n";
          return 2;
        }
      }
      if (file.empty() || coalg.empty() || at.empty()) {
        err << "usage: cloakforge fusion <file> --coalgebra Y --at Z "
               "[--kind wood|t|gamma]\n";
        return 2;
      }
      auto doc = parse_instance(read_file(file));
      Report r;
      r.claim = "fusion-" + kind;
      r.instance = doc.name + "[" + coalg + "," + at + "]";
      if (kind == "wood") {
        if (!doc.comonad) throw Error("ResolveError", "need a comonad file");
        const auto& c = doc.comonad->carrier();
        auto cloaks = magmal::compute_cloaks(c);
        Id y = object_by_name(c.base, coalg), z = object_by_name(c.base, at);
        auto w = fusion::wood_fusion(*doc.comonad, cloaks, y,
                                     c.base->id(y), z);
        r.holds = w.invertible;
        r.detail = c.base->obj_name(w.source) + " → " +
                   c.base->obj_name(w.target) +
                   (w.invertible ? " (invertible)" : " (not invertible)");
      } else if (kind == "t") {
        if (!doc.monad) throw Error("ResolveError", "need a monad file");
        const auto& c = doc.monad->carrier;
        Id yb = object_by_name(c.base, coalg), x = object_by_name(c.base, at);
        const auto& acts = c.base->hom(doc.monad->t.ob(yb), yb);
        if (acts.empty())
          throw Error("ResolveError", "no algebra structure on " + coalg);
        auto v = fusion::t_fusion(*doc.monad, x, yb, acts[0]);
        r.holds = v.invertible;
        r.detail = c.base->obj_name(v.source) + " → " +
                   c.base->obj_name(v.target) +
                   (v.invertible ? " (invertible)" : " (not invertible)");
      } else if (kind == "gamma") {
        if (!doc.comonad) throw Error("ResolveError", "need a comonad file");
        auto mg = procomonad::magmal_gamma_from_comonad(*doc.comonad);
        const auto& c = doc.comonad->carrier();
        auto cloaks = magmal::compute_cloaks(c);
        Id y = object_by_name(c.base, coalg), z = object_by_name(c.base, at);
        if (mg.pro.gamma.size[y][y] == 0)
          throw Error("ResolveError", "'" + coalg + "' carries no coaction");
        procomonad::GammaAlgebra ya{y, 0};
        bool all = true;
        std::string first;
        for (Id x = 0; x < c.base->n_obj(); ++x) {
          auto f = procomonad::gamma_fusion(mg, cloaks, x, ya, z);
          if (!f.invertible && all) {
            all = false;
            first = "(X=" + c.base->obj_name(x) + ", Z=" + at + ")";
          }
        }
        r.holds = all;
        r.detail = all ? "invertible for all X" : "counterexample " + first;
      } else {
        err << "unknown fusion kind '" << kind << "'\n";
        return 2;
      }
      return emit({r}, out);
    }
    if (cmd == "hopf") {
      std::string file, at;
      for (size_t i = 1; i < argv.size(); ++i) {
        if (argv[i] == "--at" && i + 1 < argv.size()) at = argv[++i];
        else if (file.empty()) file = argv[i];
        else {
          err << "usage: cloakforge hopf <file> [--at Y]\n";
          return 2;
        }
      }
      if (file.empty()) {
        err << "usage: cloakforge hopf <file> [--at Y]\n";
        return 2;
      }
      auto doc = parse_instance(read_file(file));
      Report r;
      r.claim = "hopf";
      if (doc.monoid) {
        auto rep = fusion::monoid_hopf(*doc.monoid);
        r.instance = doc.name;
        r.holds = rep.hopf;
        r.detail = rep.hopf ? "fusion bijective" : "fusion not bijective";
      } else if (doc.comonad && at.empty()) {
        const auto& c = doc.comonad->carrier();
        auto cloaks = magmal::compute_cloaks(c);
        auto emc = em::build_em(*doc.comonad);
        auto rep = fusion::hopf_wood_check(*doc.comonad, emc, cloaks,
                                           fusion::HopfMode::AllCoalgebras);
        r.instance = doc.name;
        r.holds = rep.hopf;
        r.detail = rep.hopf
                       ? "Hopf-Wood"
                       : "counterexample (Y=" +
                             c.base->obj_name(rep.failures.front().first) +
                             ", Z=" +
                             c.base->obj_name(rep.failures.front().second) +
                             ")";
      } else if (doc.comonad) {
        auto mg = procomonad::magmal_gamma_from_comonad(*doc.comonad);
        const auto& c = doc.comonad->carrier();
        auto cloaks = magmal::compute_cloaks(c);
        Id y = object_by_name(c.base, at);
        if (mg.pro.gamma.size[y][y] == 0)
          throw Error("ResolveError", "'" + at + "' carries no coaction");
        auto rep = procomonad::hopf_at(mg, cloaks, {y, 0}, false, {});
        r.instance = doc.name + "@" + at;
        r.holds = rep.hopf;
        r.detail = rep.hopf
                       ? "Hopf at (" + at + ")"
                       : "counterexample (X=" +
                             c.base->obj_name(rep.failures.front().first) +
                             ", Z=" +
                             c.base->obj_name(rep.failures.front().second) +
                             ")";
      } else {
        throw Error("ResolveError", "hopf needs a comonad or monoid file");
      }
      return emit({r}, out);
    }
    if (cmd == "verify") {
      if (argv.size() != 3) {
        err << "usage: cloakforge verify <claim-id> <file|recipe:...>\n";
        return 2;
      }
      if (!claims::is_claim(argv[1])) {
        err << "unknown claim '" << argv[1] << "'\n";
        return 2;
      }
      auto docs = claims::load_instances(argv[2]);
      auto reports = claims::verify(argv[1], docs);
      return emit(reports, out);
    }
    if (cmd == "suite") {
      auto reports = claims::run_suite();
      return emit(reports, out);
    }
    err << "unknown subcommand '" << cmd << "'\n";
    return 2;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return e.code() == "ParseError" || e.code() == "ResolveError" ||
                   e.code() == "UnknownRecipe"
               ? 2
               : 1;
  }
}

}  // namespace cloakforge::dsl
