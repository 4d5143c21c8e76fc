#include <filesystem>
#include <fstream>
#include <sstream>

#include "algebroid/classify.hpp"
#include "cli.hpp"
#include "doctest.h"

using namespace algebroid;
using nlohmann::json;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

cli::Outcome go(const std::string& text, const cli::Overrides& ov = {}) { return cli::run_text(text, ov); }

void check_series_text(const std::string& s, const Field& field) {
  CAPTURE(s);
  const Series a = Series::parse(s, field);
  CHECK(a.to_string() == s);
  CHECK(Series::parse(a.to_string(), field) == a);
}

// Printed series (equations, final HN series) must re-parse to themselves.
void check_round_trip(const json& j, const Field& field) {
  for (const char* key : {"final", "equation"})
    if (j.contains(key)) check_series_text(j[key].get<std::string>(), field);
}

}  // namespace

TEST_CASE("request grammar") {
  const cli::Request r = cli::parse_request("field: char=3; invariants; f = x^3+y^4");
  CHECK(r.command == "invariants");
  CHECK(r.field == Field::prime(3));
  REQUIRE(r.payload.size() == 1);
  CHECK(r.payload[0].key == "f");
  CHECK(r.payload[0].value == "x^3+y^4");

  const cli::Request two = cli::parse_request("field: char=0; estype; branch: x=t^2, y=t^3; branch: x=t, y=0");
  CHECK(two.payload.size() == 2);
  CHECK(two.payload[1].value == "x=t, y=0");

  const cli::Request ext = cli::parse_request("field: char=3; ext=a:a^2+1; classify; f = x^3+a*y^4; kmax=20");
  CHECK(ext.field.size() == 9);
  CHECK(ext.options.at("kmax").value == "20");

  const cli::Request lines = cli::parse_request("field: char=5\ndeform\nX = z^2\nY = z^3+t*z^4\nsamples=0,1");
  CHECK(lines.payload.size() == 2);
  CHECK(lines.options.at("samples").value == "0,1");
}

TEST_CASE("syntax errors carry positions") {
  auto message = [](const std::string& text) {
    try {
      cli::parse_request(text);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::SyntaxError);
      return std::string(e.what());
    }
    FAIL("no error");
    return std::string();
  };
  CHECK(message("char=3; invariants").find("line 1, column 1") != std::string::npos);
  CHECK(message("field: char=3; nonsense; f=x").find("line 1, column 16") != std::string::npos);
  CHECK(message("field: char=3\ninvariants\nf x^2").find("line 3, column 1") != std::string::npos);
  const cli::Outcome bad = go("field: char=0; classify; f = x^2+(y");
  CHECK(bad.exit_code == 1);
  CHECK(bad.doc["error"] == "SyntaxError");
  CHECK(bad.doc["message"].get<std::string>().find("column 36") != std::string::npos);
  CHECK(go("field: char=4; invariants; f=x^2").doc["error"] == "NotPrime");
}

TEST_CASE("golden outputs") {
  const std::filesystem::path dir = ALGEBROID_GOLDEN_DIR;
  int count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".req") continue;
    CAPTURE(entry.path().filename().string());
    std::filesystem::path expected = entry.path();
    expected.replace_extension(".json");
    const cli::Outcome out = go(slurp(entry.path()));
    CHECK(cli::render(out.doc, false) + "\n" == slurp(expected));
    ++count;
  }
  CHECK(count >= 10);
}

TEST_CASE("spec values through the command line") {
  const json inv = go("field: char=3; invariants; f = x^3+y^4").doc;
  CHECK(inv["tau"] == 9);
  CHECK(inv["contactBound"] == 17);
  CHECK(inv["mu"] == "infinite-or-undetermined");
  CHECK(inv["ord"] == 3);
  CHECK(go("field: char=3; determinacy; f = x^3+y^4", {.jet = "5"}).doc["tangentImageJetDims"]["5"] == 11);

  const json e61 = go("field: char=3; classify; f = x^3+x^2*y^2+y^4").doc;
  CHECK(e61["family"] == "E");
  CHECK(e61["index"] == 6);
  CHECK(e61["subtype"] == "E6^1");
}

TEST_CASE("x^3+x^2y^2+y^5 has a triple tangent and index 8 in characteristic 3") {
  const json j = go("field: char=3; classify; f = x^3+x^2*y^2+y^5").doc;
  CHECK(j["family"] == "E");
  CHECK(j["index"] == 8);
  CHECK(j["evidence"]["delta"] == 4);
  CHECK(j["evidence"]["branches"] == 1);
}

TEST_CASE("exit codes") {
  CHECK(go("field: char=0; invariants; f = x^2+y^3").exit_code == 0);
  CHECK(go("field: char=2; classify; f = x*y+z^2+z^3").exit_code == 2);
  CHECK(go("field: char=0; fdtest; matrix: [[x^2, 0], [0, x^2]]; vars=x,y").exit_code == 2);
  CHECK(go("field: char=0; deform; X = 1+z; Y = z^2").exit_code == 1);
  CHECK(go("field: char=0; deform; X = 1+z; Y = z^2").doc["error"] == "DegenerateFamily");
}

TEST_CASE("flags override request options") {
  const json a = go("field: char=3; determinacy; f = x^3+y^4; jet=4").doc;
  CHECK(a["tangentImageJetDims"].contains("4"));
  const json b = go("field: char=3; determinacy; f = x^3+y^4; jet=4", {.jet = "5"}).doc;
  CHECK(!b["tangentImageJetDims"].contains("4"));
  const json c = go("field: char=3; invariants; f = x^2+y^2", {.field = "char=0"}).doc;
  CHECK(c["field"] == "char=0");
  const json d = go("field: char=5; deform; X = z^2; Y = z^3+t*z^4", {.samples = "1,2"}).doc;
  CHECK(d["samples"].size() == 2);
}

TEST_CASE("deterministic output and series round trip") {
  const std::vector<std::string> requests = {
      "field: char=5; hn; branch: x=t^4, y=t^6+t^7; valuemap=random",
      "field: char=5; deform; X = z^2; Y = z^3+t*z^4; samples=0,1,2",
      "field: char=3; classify; f = x^3+y^4",
      "field: char=0; estype; branch: x=t^2, y=t^3; branch: x=t^3, y=t^2",
  };
  for (const std::string& r : requests) {
    CAPTURE(r);
    const cli::Outcome a = go(r, {.seed = 7}), b = go(r, {.seed = 7});
    CHECK(cli::render(a.doc, false) == cli::render(b.doc, false));
    CHECK(cli::render(a.doc, true) == cli::render(b.doc, true));
    check_round_trip(a.doc, cli::parse_request(r).field);
  }
}
