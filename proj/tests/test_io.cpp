#include "cardsec/io.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>

using namespace cardsec;
using cardsec::io::Json;

namespace {

std::string parse_message(const Json& j) {
  try {
    io::design_from_json(j, "d.json");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("design round trip and layout") {
  auto d = designs::builtin_ag32();
  Json j = io::to_json(d);
  CHECK(j["v"] == 8);
  CHECK(j["k"] == 4);
  CHECK(j["blocks"].size() == 14);
  CHECK(j["blocks"][0] == Json::array({0, 1, 2, 7}));
  CHECK(io::design_from_json(j, "x") == d);
  CHECK(io::detect_kind(j, "x") == io::Kind::Design);
  std::string text = io::dump(j);
  CHECK(text.back() == '\n');
  CHECK(text.find("\"blocks\"") < text.find("\"k\""));
  CHECK(text.find("\"k\"") < text.find("\"v\""));

  auto multi = designs::build_trivial_design(4, 2, 1, 2);
  Json mj = io::to_json(multi);
  CHECK(mj["multiset"] == true);
  CHECK(io::design_from_json(mj, "x") == multi);
}

TEST_CASE("large set round trip") {
  auto ls = designs::builtin_large_set_sts9();
  Json j = io::to_json(ls, 2);
  CHECK(j["t"] == 2);
  CHECK(io::detect_kind(j, "x") == io::Kind::LargeSet);
  unsigned t = 0;
  auto back = io::large_set_from_json(j, "x", &t);
  CHECK(t == 2);
  REQUIRE(back.members.size() == 7);
  for (std::size_t i = 0; i < 7; ++i) CHECK(back.members[i] == ls.members[i]);
}

TEST_CASE("announcement and strategy round trip") {
  auto A = strategy::Announcement::from_design(designs::build_sts(9));
  Json j = io::to_json(A);
  CHECK(j["n"] == 9);
  CHECK(j["a"] == 3);
  CHECK(io::detect_kind(j, "x") == io::Kind::Announcement);
  CHECK(io::announcement_from_json(j, "x") == A);

  strategy::Strategy s{9, 3, 5, 1, {A}};
  Json sj = io::to_json(s);
  CHECK(io::detect_kind(sj, "x") == io::Kind::Strategy);
  auto back = io::strategy_from_json(sj, "x");
  CHECK(back.b == 5);
  CHECK(back.announcements.front() == A);
  sj["c"] = 2;
  CHECK_THROWS_AS(io::strategy_from_json(sj, "x"), Error);
}

TEST_CASE("OA and TD round trip") {
  auto oa = transversal::reed_solomon_oa(2, 4);
  Json j = io::to_json(oa);
  CHECK(io::detect_kind(j, "x") == io::Kind::OrthogonalArray);
  CHECK(io::oa_from_json(j, "x") == oa);
  auto td = transversal::oa_to_td(oa);
  Json tj = io::to_json(td);
  CHECK(io::detect_kind(tj, "x") == io::Kind::TransversalDesign);
  CHECK(io::td_from_json(tj, "x") == td);

  auto kit = transversal::transversal_toolkit(3, 1, 3);
  Json lj = io::td_large_set_json(kit.members);
  CHECK(io::detect_kind(lj, "x") == io::Kind::TdLargeSet);
  CHECK(io::td_large_set_from_json(lj, "x") == kit.members);

  j["rows"][0][0] = 4;
  CHECK_THROWS_AS(io::oa_from_json(j, "x"), Error);
}

TEST_CASE("geometric announcement carries its parameters") {
  auto ga = geometric::build_geometric_announcement(4, 1, 2);
  Json j = io::to_json(ga);
  CHECK(j["hands"].size() == 30);
  CHECK(j["parameters"]["p"] == 4);
  CHECK(j["parameters"]["r"] == 5);
  CHECK(j["parameters"]["lambda_formula_value"] == "7");
  CHECK(io::detect_kind(j, "x") == io::Kind::Announcement);
}

TEST_CASE("verdict schema") {
  auto A = strategy::Announcement::from_design(designs::builtin_ag32());
  Json ok = io::to_json(strategy::check_announcement_security(A, 1, 2, strategy::Level::Perfect));
  CHECK(ok["level"] == "perfect");
  CHECK(ok["delta"] == 2);
  CHECK(ok["witness"].is_null());
  REQUIRE(ok["constants"].size() == 2);
  CHECK(ok["constants"][0] == Json{{"delta_prime", 1}, {"num", 4}, {"den", 7}});

  Json bad = io::to_json(strategy::check_announcement_security(A, 1, 3, strategy::Level::Perfect));
  CHECK(bad["level"] != "perfect");
  REQUIRE(bad["witness"].is_object());
  for (const char* key : {"h_c", "y", "count", "p_size"}) CHECK(bad["witness"].contains(key));
}

TEST_CASE("parse errors name the field") {
  CHECK(parse_message(Json{{"v", 8}, {"blocks", Json::array()}}).find("d.json: k") == 0);
  CHECK(parse_message(Json{{"v", -1}, {"k", 2}, {"blocks", Json::array()}}).find("d.json: v") == 0);
  Json j = io::to_json(designs::builtin_ag32());
  j["blocks"][3][1] = "x";
  CHECK(parse_message(j).find("blocks[3][1]") != std::string::npos);
  j = io::to_json(designs::builtin_ag32());
  j["blocks"][2] = Json::array({0, 0, 1, 2});
  CHECK(parse_message(j).find("blocks[2]") != std::string::npos);
  CHECK_THROWS_AS(io::detect_kind(Json{{"x", 1}}, "f"), Error);
  CHECK_THROWS_AS(io::detect_kind(Json::array(), "f"), Error);
}

TEST_CASE("files") {
  const std::string path = "cardsec_io_test.json";
  io::write_file(path, io::to_json(designs::build_sts(7)));
  CHECK(io::design_from_json(io::read_file(path), path) == designs::build_sts(7));
  {
    std::ofstream out(path);
    out << "{ not json";
  }
  try {
    io::read_file(path);
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find(path) == 0);
  }
  std::remove(path.c_str());
  CHECK_THROWS_AS(io::read_file("/nonexistent/x.json"), Error);
}
