#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "atl/model_io.hpp"
#include "atl/parser.hpp"
#include "support.hpp"

using atl::game_structure;
using atl::load_model;
using atl::schema_error;
using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

json fig1_doc() { return json::parse(read_file(std::string(ATLCHECK_MODELS_DIR) + "/fig1.json")); }

std::string path_of(const json& doc) {
  try {
    atl::parse_model_document(doc);
  } catch (const schema_error& e) {
    return e.path();
  }
  FAIL("expected a schema_error");
  return {};
}

}  // namespace

TEST_CASE("the shipped example model loads into the worked structure") {
  game_structure s = load_model(read_file(std::string(ATLCHECK_MODELS_DIR) + "/fig1.json"));
  REQUIRE(s.state_count() == 4);
  REQUIRE(s.player_count() == 2);
  REQUIRE(s.fingerprint() == atl::build_game_structure(support::fig1_description()).fingerprint());

  auto r = atl::check(s, atl::parse_formula("<<1>>@ (x and y)"));
  REQUIRE(r.satisfying.to_vector() == std::vector<atl::state_id>{2, 3});
}

TEST_CASE("labels may be omitted per state") {
  json doc = fig1_doc();
  doc["states"][0].erase("labels");
  game_structure s = atl::build_game_structure(atl::parse_model_document(doc));
  REQUIRE(s.labels_of(*s.find_state("q0")).empty());
  REQUIRE(s.fingerprint() == load_model(fig1_doc().dump()).fingerprint());
}

TEST_CASE("schema violations carry a JSON pointer path") {
  SECTION("top level must be an object") {
    REQUIRE(path_of(json::array()) == "/");
  }

  SECTION("version is required and must be 1") {
    json doc = fig1_doc();
    doc["version"] = 2;
    REQUIRE(path_of(doc) == "/version");
    doc["version"] = "1";
    REQUIRE(path_of(doc) == "/version");
    doc.erase("version");
    REQUIRE(path_of(doc) == "/version");
  }

  SECTION("each top level collection has a typed shape") {
    json doc = fig1_doc();
    doc.erase("transitions");
    REQUIRE(path_of(doc) == "/transitions");

    doc = fig1_doc();
    doc["players"] = "1";
    REQUIRE(path_of(doc) == "/players");

    doc = fig1_doc();
    doc["moves"] = json::array();
    REQUIRE(path_of(doc) == "/moves");

    doc = fig1_doc();
    doc["moves"]["1"] = 7;
    REQUIRE(path_of(doc) == "/moves/1");
  }

  SECTION("nested elements name their exact location") {
    json doc = fig1_doc();
    doc["states"][1].erase("name");
    REQUIRE(path_of(doc) == "/states/1/name");

    doc = fig1_doc();
    doc["states"][2]["labels"][0] = 5;
    REQUIRE(path_of(doc) == "/states/2/labels/0");

    doc = fig1_doc();
    doc["transitions"][3].erase("to");
    REQUIRE(path_of(doc) == "/transitions/3/to");

    doc = fig1_doc();
    doc["transitions"][0]["vector"] = {1, 2};
    REQUIRE(path_of(doc) == "/transitions/0/vector/0");
  }
}

TEST_CASE("structural violations surface as validation errors") {
  json doc = fig1_doc();
  doc["transitions"].push_back(doc["transitions"][0]);
  REQUIRE_THROWS_AS(load_model(doc.dump()), atl::validation_error);

  doc = fig1_doc();
  doc["transitions"][8]["to"] = "q9";
  REQUIRE_THROWS_MATCHES(load_model(doc.dump()), atl::validation_error,
                         Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("q9")));
}

TEST_CASE("malformed JSON reports the byte offset") {
  try {
    load_model("{\"version\": 1,");
    FAIL("expected parse_error");
  } catch (const atl::parse_error& e) {
    REQUIRE(e.offset() == 15);  // nlohmann counts from 1 past the last consumed byte
    REQUIRE(std::string(e.what()).find("malformed JSON") != std::string::npos);
  }
  REQUIRE_THROWS_AS(load_model(""), atl::parse_error);
}

TEST_CASE("dump then load is the identity on model bytes") {
  game_structure s = load_model(read_file(std::string(ATLCHECK_MODELS_DIR) + "/fig1.json"));
  std::string bytes = atl::dump_model(s);
  REQUIRE(bytes.back() == '\n');
  REQUIRE(atl::dump_model(load_model(bytes)) == bytes);

  // key order inside the document is the sorted one nlohmann produces
  REQUIRE(bytes.find("\"moves\"") < bytes.find("\"players\""));
  REQUIRE(bytes.find("\"players\"") < bytes.find("\"propositions\""));
}

TEST_CASE("result documents are deterministic and ordered") {
  game_structure s = atl::build_game_structure(support::fig1_description());

  SECTION("plain result") {
    auto r = atl::check(s, atl::parse_formula("<<1>>~ (x and y)"));
    std::string bytes = atl::dump_result(r, s, "<<1>>~ (x and y)", atl::pre_backend::relational);
    REQUIRE(atl::dump_result(r, s, "<<1>>~ (x and y)", atl::pre_backend::relational) == bytes);

    json doc = json::parse(bytes);
    REQUIRE(doc["backend"] == "relational");
    REQUIRE(doc["formula"] == "<<1>>~ (x and y)");
    REQUIRE(doc["satisfying"] == json::array({"q2", "q3"}));
    REQUIRE(doc["stats"]["iterations"].get<std::uint64_t>() == r.stats.fixpoint_iterations);
    REQUIRE(doc["stats"]["pre_calls"].get<std::uint64_t>() == r.stats.pre_calls);
    REQUIRE(doc["stats"]["milliseconds"].get<double>() >= 0.0);
    REQUIRE_FALSE(doc.contains("trace"));
    REQUIRE_FALSE(doc.contains("warnings"));
  }

  SECTION("satisfying states come out ascending by id") {
    auto r = atl::check(s, atl::parse_formula("true"));
    json doc = atl::result_to_json(r, s, "true", atl::pre_backend::direct);
    REQUIRE(doc["backend"] == "direct");
    REQUIRE(doc["satisfying"] == json::array({"q0", "q1", "q2", "q3"}));
  }

  SECTION("trace appears when collected") {
    atl::check_options options;
    options.collect_trace = true;
    auto r = atl::check(s, atl::parse_formula("<<1>>@ (x and y)"), options);
    json doc = atl::result_to_json(r, s, "<<1>>@ (x and y)", atl::pre_backend::relational);
    // x, y, the conjunction, then the root
    REQUIRE(doc["trace"].size() == 4);
    REQUIRE(doc["trace"][0]["formula"] == "x");
    REQUIRE(doc["trace"][3]["formula"] == "<<1>>@ ((x) and (y))");
    REQUIRE(doc["trace"][3]["states"] == json::array({"q2", "q3"}));
    REQUIRE(doc["trace"][0]["iterations"] == 0);
  }

  SECTION("warnings appear when raised") {
    atl::check_options options;
    options.allow_unknown_atoms = true;
    auto r = atl::check(s, atl::parse_formula("ghost"), options);
    json doc = atl::result_to_json(r, s, "ghost", atl::pre_backend::relational);
    REQUIRE(doc["warnings"].size() == 1);
    REQUIRE(doc["warnings"][0].get<std::string>().find("ghost") != std::string::npos);
  }
}
