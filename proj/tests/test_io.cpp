#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <string>

#include <json.hpp>

#include <divfree/io.hpp>

#include "testutil.hpp"

using namespace divfree;
using testutil::dv;
using testutil::fn;
using testutil::fnq;
using testutil::ge;

TEST_CASE("grades round trip through JSON and CSV text") {
  const auto g = ge({1, 0, -2});
  CHECK(to_json(g) == "[\n  1,\n  0,\n  -2\n]");
  CHECK(group_element_from_json(to_json(g)) == g);
  CHECK(grade_from_csv("1,0,-2") == g);
  CHECK(grade_from_csv(" 1 , 0 , -2 ") == g);
  CHECK_THROWS_AS(grade_from_csv("1,x,3"), ParseError);
  CHECK_THROWS_AS(grade_from_csv(""), ParseError);
  CHECK_THROWS_AS(grade_from_csv("1,2,3extra"), ParseError);
  CHECK_THROWS_AS(group_element_from_json("[1, \"a\"]"), ParseError);
  CHECK_THROWS_AS(group_element_from_json("{\"not\": \"array\"}"), ParseError);
}

TEST_CASE("witt and group algebra elements round trip") {
  auto u = WittElement::term(ge({1, 0, 0}), dv({0, 1, 0}));
  u += WittElement::term(ge({0, -1, 2}), testutil::dvq({Scalar(1, 2), Scalar(0), Scalar(-3)}));
  CHECK(witt_from_json(to_json(u)) == u);
  // The zero element serializes to an empty list; its rank is not recorded.
  CHECK(witt_from_json(to_json(WittElement(3))).is_zero());

  auto f = GroupAlgebraElement::term(ge({0, 0, 1}), Scalar(-7, 3));
  f += GroupAlgebraElement::term(ge({1, 1, 1}), Scalar(4));
  CHECK(group_algebra_from_json(to_json(f)) == f);

  // Rank conflicts inside one element are dimension errors, not parse errors.
  CHECK_THROWS_AS(
      witt_from_json(R"([{"grade":[1,0,0],"dvec":["0","1","0"]},{"grade":[1,0],"dvec":["1","0"]}])"),
      DimensionError);
  CHECK_THROWS_AS(witt_from_json(R"([{"grade":[1,0,0]}])"), ParseError);
  CHECK_THROWS_AS(witt_from_json("not json at all"), ParseError);
}

TEST_CASE("module specs round trip for every family") {
  const ModuleSpec specs[] = {
      ModuleSpec::trivial(3),
      ModuleSpec::family_m(fnq({Scalar(1, 2), Scalar(-2), Scalar(0)})),
      ModuleSpec::family_a(ge({1, -1, 0}), fn({2, 3, 5})),
      ModuleSpec::family_b(ge({0, 1, 1}), fn({1, 0, 4})),
      ModuleSpec::family_a(ge({1, 0, 0}), Functional::zero(3), /*allow_zero_eta=*/true),
  };
  for (const auto& spec : specs) {
    const auto text = to_json(spec);
    CHECK(module_spec_from_json(text) == spec);
    // Writers are deterministic.
    CHECK(to_json(module_spec_from_json(text)) == text);
  }
  // The degenerate opt-in flag is emitted only when needed.
  CHECK(to_json(specs[2]).find("allow_zero_eta") == std::string::npos);
  CHECK(to_json(specs[4]).find("allow_zero_eta") != std::string::npos);

  CHECK_THROWS_AS(module_spec_from_json(R"({"family":"Q","rank":3})"), ParseError);
  // A zero eta without the opt-in flag violates the family contract.
  CHECK_THROWS_AS(
      module_spec_from_json(
          R"({"family":"A","rank":3,"zeta":[1,0,0],"eta":["0","0","0"]})"),
      ContractError);
}

TEST_CASE("module vectors and action tables round trip") {
  auto v = ModuleVector::basis(ge({1, 2, 3})).scaled(Scalar(5, 7));
  v.add_term(ge({-1, 0, 0}), Scalar(2));
  CHECK(module_vector_from_json(to_json(v)) == v);

  const Space W = testutil::standard3();
  const auto table = record_action_table(W, ModuleSpec::family_a(ge({1, 0, 0}), fn({1, 2, 3})), 2);
  const auto text = to_json(table);
  CHECK(action_table_from_json(text) == table);
  CHECK(to_json(action_table_from_json(text)) == text);

  // Entries outside the window are rejected by the table's own contract.
  CHECK_THROWS_AS(
      action_table_from_json(
          R"({"rank":3,"radius":1,"entries":[{"gen":0,"beta":[5,0,0],"coeff":"1"}]})"),
      DomainError);
}

TEST_CASE("scalars in JSON accept integers and reduced fraction strings") {
  const auto f = group_algebra_from_json(R"([{"grade":[0,0,0],"coeff":3}])");
  CHECK(f.coeff_at(GroupElement::zero(3)) == Scalar(3));
  const auto g = group_algebra_from_json(R"([{"grade":[0,0,0],"coeff":"-4/6"}])");
  CHECK(g.coeff_at(GroupElement::zero(3)) == Scalar(-2, 3));
  CHECK_THROWS_AS(group_algebra_from_json(R"([{"grade":[0,0,0],"coeff":1.5}])"), ParseError);
}

TEST_CASE("config parsing, defaults, and precedence") {
  const Config def = config_from_json("{}");
  CHECK(def.rank == 3);
  CHECK(def.pairing.is_identity());
  CHECK(def.default_radius == 2);
  CHECK(def.output.empty());

  const std::string text = R"({
    "rank": 3,
    "pairing": [["1","1","0"],["0","1","0"],["0","0","1"]],
    "default_radius": 4,
    "output": "out.json"
  })";
  const Config c = config_from_json(text);
  CHECK(c.rank == 3);
  CHECK(!c.pairing.is_identity());
  CHECK(c.default_radius == 4);
  CHECK(c.output == "out.json");
  // to_json / config_from_json are mutually inverse.
  CHECK(to_json(config_from_json(to_json(c))) == to_json(c));

  CHECK_THROWS_AS(config_from_json(R"({"rank":1})"), DomainError);
  CHECK_THROWS_AS(config_from_json(R"({"default_radius":0})"), DomainError);
  CHECK_THROWS_AS(config_from_json(R"({"pairing":[["1","2"],["2","4"]],"rank":2})"), DomainError);
  CHECK_THROWS_AS(config_from_json("[1,2,3]"), ParseError);

  // Explicit path beats the environment variable.
  const std::string p1 = "/tmp/divfree_cfg_explicit.json";
  const std::string p2 = "/tmp/divfree_cfg_env.json";
  write_text_file(p1, R"({"default_radius": 7})");
  write_text_file(p2, R"({"default_radius": 9})");
  setenv("DIVFREE_CONFIG", p2.c_str(), 1);
  CHECK(load_config(p1).default_radius == 7);
  CHECK(load_config(std::nullopt).default_radius == 9);
  unsetenv("DIVFREE_CONFIG");
  std::remove(p1.c_str());
  std::remove(p2.c_str());

  CHECK_THROWS_AS(load_config(std::string("/tmp/does_not_exist_divfree.json")), IoError);
}

TEST_CASE("text files round trip and report IO failures") {
  const std::string path = "/tmp/divfree_io_test.txt";
  write_text_file(path, "line1\nline2");
  CHECK(read_text_file(path) == "line1\nline2");
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_text_file(path), IoError);
  CHECK_THROWS_AS(write_text_file("/tmp/no_such_dir_divfree/x.txt", "y"), IoError);
}

TEST_CASE("structure constant exports are deterministic and well formed") {
  const Space W = testutil::standard3();
  const auto j1 = export_structure_constants_json(W, 1);
  const auto j2 = export_structure_constants_json(W, 1);
  CHECK(j1 == j2);
  const auto parsed = nlohmann::json::parse(j1);
  CHECK(parsed["radius"] == 1);
  CHECK(parsed["basis"].size() == 52);
  CHECK(parsed["entries"].is_array());
  CHECK(!parsed["entries"].empty());

  const auto c1 = export_structure_constants_csv(W, 1);
  CHECK(c1 == export_structure_constants_csv(W, 1));
  CHECK(c1.rfind("i,j,k,c\n", 0) == 0);
}

TEST_CASE("solver and fit results serialize with their verdicts") {
  const Space W = testutil::standard3();
  const auto dom = ModuleSpec::family_m(Functional::zero(3));
  const auto cod = ModuleSpec::family_m(W.grade_functional(ge({1, 0, 0})));
  const auto r = solve_intertwiner(W, dom, cod, 2);
  const auto text = to_json(r);
  const auto parsed = nlohmann::json::parse(text);
  CHECK(parsed["outcome"] == "Found");
  CHECK(parsed["shift"].size() == 3);
  CHECK(parsed["free_scalars"].is_number());

  const auto fit = classify_table(W, record_action_table(W, cod, 2));
  const auto fit_text = to_json(fit);
  const auto fit_parsed = nlohmann::json::parse(fit_text);
  CHECK(fit_parsed["verdict"] == "MFit");
  CHECK(fit_parsed["spec"]["family"] == "M");
}
