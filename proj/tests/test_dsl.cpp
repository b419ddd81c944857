#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "cloakforge/claims.hpp"
#include "cloakforge/dsl.hpp"

using namespace cloakforge;
using namespace cloakforge::dsl;

namespace {

std::string chain3_doc() {
  return R"({"kind":"poset","name":"c3","payload":{"elements":["0","m","1"],"leq":[["0","m"],["m","1"]]}})";
}

std::string write_temp(const std::string& name, const std::string& text) {
  std::string path = "/tmp/cloakforge-test-" + name;
  std::ofstream out(path);
  out << text;
  return path;
}

}  // namespace

TEST_CASE("poset documents parse, validate and round-trip") {
  auto doc = parse_instance(chain3_doc());
  CHECK(doc.kind == Kind::Poset);
  REQUIRE(doc.poset.has_value());
  CHECK(doc.poset->is_lattice);
  CHECK(doc.category->n_obj() == 3);

  // parse ∘ serialize is the identity, byte for byte
  std::string s1 = serialize(doc);
  auto doc2 = parse_instance(s1);
  CHECK(serialize(doc2) == s1);
}

TEST_CASE("syntax errors carry line and column") {
  try {
    parse_instance("{\n  \"kind\": poset\n}");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == "ParseError");
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("unknown names raise ResolveError with the path") {
  std::string text =
      R"({"kind":"comonad","name":"g","payload":{"base":"nosuch","obj_map":{}}})";
  try {
    parse_instance(text);
    FAIL("expected ResolveError");
  } catch (const Error& e) {
    CHECK(e.code() == "ResolveError");
  }
}

TEST_CASE("non-monotone operator tables name the violated pair") {
  std::string text =
      R"({"kind":"comonad","name":"bad","payload":{"base":"chain3","obj_map":{"0":"m","m":"0","1":"1"}}})";
  try {
    parse_instance(text);
    FAIL("expected ValidationError");
  } catch (const Error& e) {
    CHECK(e.code() == "ValidationError");
    std::string w = e.what();
    CHECK((w.find("monotone") != std::string::npos ||
           w.find("deflationary") != std::string::npos));
  }
}

TEST_CASE("comonad document over the diamond validates") {
  std::string text =
      R"({"kind":"comonad","name":"g_meet_a","payload":{"base":"diamond","obj_map":{"0":"0","a":"a","b":"0","1":"a"}}})";
  auto doc = parse_instance(text);
  REQUIRE(doc.comonad.has_value());
  CHECK(doc.comonad->validate().empty());
  std::string s = serialize(doc);
  CHECK(serialize(parse_instance(s)) == s);
}

TEST_CASE("recipes expand deterministically") {
  CHECK(generate_instance("heyting-chain(3)").size() == 1);
  CHECK(generate_instance("diamond()").size() == 1);
  // sizes 1..5: chains 1-5, diamond, diamond+top, diamond+bottom
  CHECK(generate_instance("all-heyting(5)").size() == 8);
  auto ints = generate_instance("interior-operators(diamond)");
  bool has_meet_a = false;
  for (auto& d : ints)
    if (d.name.find("(0,a,0,a)") != std::string::npos) has_meet_a = true;
  CHECK(has_meet_a);
  CHECK(generate_instance("all-monoids(2)").size() == 3);  // orders 1 and 2
  auto z4 = generate_instance("cyclic-group(4)");
  REQUIRE(z4.size() == 1);
  REQUIRE(z4[0].monoid.has_value());
  CHECK(fusion::monoid_hopf(*z4[0].monoid).hopf);
  CHECK(!generate_instance("delta-comonads-from-adjoints(chain3)").empty());
  CHECK_THROWS_AS(generate_instance("nonsense(3)"), Error);
}

TEST_CASE("profunctor and presheaf documents parse and round-trip") {
  // the ≤ relation on chain2 as an explicit profunctor document
  std::string text = R"([
    {"kind":"profunctor","name":"leq2","payload":{
      "dom":"chain2","cod":"chain2",
      "value":[[1,1],[0,1]],
      "lact":[[[0],[0]],[[],[0]],[[],[0]]],
      "ract":[[[0],[]],[[0],[]],[[0],[0]]]}},
    {"kind":"presheaf","name":"yo1","payload":{
      "base":"chain2","value":[1,1],"act":[[0],[0],[0]]}}
  ])";
  auto docs = parse_documents(text);
  REQUIRE(docs.size() == 2);
  REQUIRE(docs[0].profunctor.has_value());
  CHECK(docs[0].profunctor->validate().empty());
  REQUIRE(docs[1].presheaf.has_value());
  CHECK(prof::presheaves_isomorphic(
      *docs[1].presheaf, prof::yoneda(fincat::chain_poset(2).cat, 1)));
  for (auto& d : docs) {
    std::string s1 = serialize(d);
    CHECK(serialize(parse_instance(s1)) == s1);
  }
}

TEST_CASE("procomonad documents resolve against earlier documents") {
  std::string text = R"([
    {"kind":"comonad","name":"gdm","payload":{"base":"chain3",
     "obj_map":{"0":"0","m":"0","1":"1"}}},
    {"kind":"procomonad","name":"gamma","payload":{"base":"gdm","from":"comonad"}}
  ])";
  auto docs = parse_documents(text);
  REQUIRE(docs.size() == 2);
  REQUIRE(docs[1].procomonad_inst.has_value());
  CHECK(docs[1].procomonad_inst->pro.validate().empty());
  // hom form over a bare lattice
  std::string text2 =
      R"({"kind":"procomonad","name":"h","payload":{"base":"diamond","from":"hom"}})";
  auto doc2 = parse_instance(text2);
  REQUIRE(doc2.procomonad_inst.has_value());
}

TEST_CASE("claim registry is total over the in-scope list") {
  std::vector<std::string> expected{
      "L2.4", "L2.5", "P3.3", "L3.5", "L3.8", "P3.9", "P4.2", "EX4",
      "P5.4", "P5.5", "P5.6", "P5.8", "C5.9", "L5.11", "T5.12", "A1",
      "A2",   "A3",   "A4",   "A5",   "B1",   "B2",    "B3",    "DUBUC"};
  auto ids = claims::claim_ids();
  REQUIRE(ids.size() == expected.size());
  for (auto& e : expected) {
    CHECK(claims::is_claim(e));
    CHECK(!claims::owning_module(e).empty());
  }
}

TEST_CASE("cloak subcommand reports the implication") {
  std::string path = write_temp("chain3.json", chain3_doc());
  std::ostringstream out, err;
  int code = run_command({"cloak", path, "--by", "m", "--of", "0"}, out, err);
  CHECK(code == 0);
  CHECK(out.str().find("hom_obj 0") != std::string::npos);
}

TEST_CASE("hopf subcommand finds the diamond counterexample") {
  std::string text =
      R"({"kind":"comonad","name":"g_meet_a","payload":{"base":"diamond","obj_map":{"0":"0","a":"a","b":"0","1":"a"}}})";
  std::string path = write_temp("gmeeta.json", text);
  std::ostringstream out, err;
  int code = run_command({"hopf", path, "--at", "a"}, out, err);
  CHECK(code == 1);  // falsified claim exits 1 with the counterexample
  CHECK(out.str().find("counterexample (X=b, Z=0)") != std::string::npos);

  std::ostringstream out2, err2;
  int code2 = run_command({"hopf", path}, out2, err2);
  CHECK(code2 == 1);
  CHECK(out2.str().find("\"verdict\":false") != std::string::npos);
}

TEST_CASE("fusion subcommand: wood and gamma kinds") {
  std::string text =
      R"({"kind":"comonad","name":"gdm","payload":{"base":"chain3","obj_map":{"0":"0","m":"0","1":"1"}}})";
  std::string path = write_temp("gdm.json", text);
  std::ostringstream out, err;
  CHECK(run_command({"fusion", path, "--coalgebra", "1", "--at", "m"}, out,
                    err) == 0);
  CHECK(out.str().find("invertible") != std::string::npos);
  std::ostringstream out2, err2;
  CHECK(run_command({"fusion", path, "--coalgebra", "1", "--at", "m", "--kind",
                     "gamma"},
                    out2, err2) == 0);

  std::string monad_text =
      R"({"kind":"monad","name":"t","payload":{"base":"chain3","obj_map":{"0":"0","m":"1","1":"1"}}})";
  std::string mpath = write_temp("closure.json", monad_text);
  std::ostringstream out3, err3;
  CHECK(run_command({"fusion", mpath, "--coalgebra", "1", "--at", "m",
                     "--kind", "t"},
                    out3, err3) == 0);
  CHECK(out3.str().find("invertible") != std::string::npos);
}

TEST_CASE("verify accepts instance files and validate reports failures") {
  std::string text =
      R"({"kind":"comonad","name":"gdm","payload":{"base":"chain3","obj_map":{"0":"0","m":"0","1":"1"}}})";
  std::string path = write_temp("verify-file.json", text);
  std::ostringstream out, err;
  CHECK(run_command({"verify", "L2.5", path}, out, err) == 0);
  CHECK(out.str().find("\"claim\":\"L2.5\"") != std::string::npos);

  std::string broken =
      R"({"kind":"comonad","name":"bad","payload":{"base":"chain3","obj_map":{"0":"m","m":"0","1":"1"}}})";
  std::string bpath = write_temp("broken.json", broken);
  std::ostringstream out2, err2;
  CHECK(run_command({"validate", bpath}, out2, err2) == 1);
  CHECK(out2.str().find("\"verdict\":false") != std::string::npos);

  std::ostringstream out3, err3;
  std::string good = write_temp("good.json", chain3_doc());
  CHECK(run_command({"validate", good}, out3, err3) == 0);
}

TEST_CASE("usage errors exit 2") {
  std::ostringstream out, err;
  CHECK(run_command({}, out, err) == 2);
  CHECK(run_command({"cloak"}, out, err) == 2);
  CHECK(run_command({"verify", "NOPE", "recipe:diamond()"}, out, err) == 2);
  CHECK(run_command({"verify", "L2.4", "recipe:nonsense(1)"}, out, err) == 2);
}

TEST_CASE("verify emits deterministic reports") {
  std::ostringstream a, b, err;
  CHECK(run_command({"verify", "L2.5", "recipe:heyting-chain(3)"}, a, err) ==
        0);
  CHECK(run_command({"verify", "L2.5", "recipe:heyting-chain(3)"}, b, err) ==
        0);
  // strip the timing field, compare the rest byte for byte
  auto strip = [](std::string s) {
    std::string out;
    std::istringstream in(s);
    std::string line;
    while (std::getline(in, line)) {
      auto p = line.find("\"timing_ms\"");
      if (p != std::string::npos) {
        auto q = line.find(',', p);
        line.erase(p, q == std::string::npos ? line.size() - p : q - p + 1);
      }
      out += line + "\n";
    }
    return out;
  };
  CHECK(strip(a.str()) == strip(b.str()));
}

TEST_CASE("cloaks equal the implication oracle on every Heyting ≤ 5") {
  for (const auto& p : all_heyting(5)) {
    auto c = magmal::meet_magmal(p);
    for (fincat::Id y = 0; y < p.cat->n_obj(); ++y)
      for (fincat::Id z = 0; z < p.cat->n_obj(); ++z) {
        auto k = magmal::find_cloak(c, y, z);
        REQUIRE(k.has_value());
        // independent max-search oracle for the lattice implication
        fincat::Id best = fincat::kNone;
        for (fincat::Id x = 0; x < p.cat->n_obj(); ++x)
          if (p.leq[p.meet[x][y]][z] &&
              (best == fincat::kNone || p.leq[best][x]))
            best = x;
        CHECK(k->hom_obj == best);
        CHECK(k->passing_candidates == 1);
      }
  }
}

TEST_CASE("presheaf test set covers all shapes") {
  auto c = fincat::chain_poset(3).cat;
  auto tests = presheaf_test_set(c);
  CHECK(tests.size() >= 4);
  CHECK(presheaf_test_set(fincat::diamond_poset().cat).size() >= 6);
  bool has_empty = false, has_terminal = false;
  for (auto& t : tests) {
    int total = 0;
    for (int s : t.size) total += s;
    if (total == 0) has_empty = true;
    if (t.size == std::vector<int>{1, 1, 1}) has_terminal = true;
  }
  CHECK(has_empty);
  CHECK(has_terminal);
}
