#include "cardsec/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace cardsec::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& field, const std::string& what) {
  throw Error(ErrorCode::ParseError, where + ": " + field + ": " + what);
}

const Json& member(const Json& j, const std::string& where, const std::string& key) {
  if (!j.is_object()) fail(where, "(root)", "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, key, "missing field");
  return *it;
}

std::uint64_t as_uint(const Json& j, const std::string& where, const std::string& field) {
  if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<std::int64_t>() < 0))
    fail(where, field, "expected a non-negative integer");
  return j.get<std::uint64_t>();
}

unsigned get_unsigned(const Json& j, const std::string& where, const std::string& key) {
  std::uint64_t x = as_uint(member(j, where, key), where, key);
  if (x > std::numeric_limits<std::uint32_t>::max()) fail(where, key, "value too large");
  return static_cast<unsigned>(x);
}

std::vector<std::uint32_t> get_row(const Json& j, const std::string& where, const std::string& field) {
  if (!j.is_array()) fail(where, field, "expected an array of integers");
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string f = field + "[" + std::to_string(i) + "]";
    std::uint64_t x = as_uint(j[i], where, f);
    if (x > std::numeric_limits<std::uint32_t>::max()) fail(where, f, "value too large");
    out.push_back(static_cast<std::uint32_t>(x));
  }
  return out;
}

std::vector<Hand> get_hands(const Json& j, const std::string& where, const std::string& key) {
  const Json& arr = member(j, where, key);
  if (!arr.is_array()) fail(where, key, "expected an array of arrays");
  std::vector<Hand> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    std::string f = key + "[" + std::to_string(i) + "]";
    auto cards = get_row(arr[i], where, f);
    try {
      out.emplace_back(std::move(cards));
    } catch (const Error& e) {
      fail(where, f, e.what());
    }
  }
  return out;
}

// Library validation errors during parsing become parse errors on `field`.
template <class Fn>
auto guarded(const std::string& where, const std::string& field, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    fail(where, field, e.what());
  }
}

Json hands_json(const std::vector<Hand>& hands) {
  Json arr = Json::array();
  for (const Hand& h : hands) arr.push_back(to_json(h));
  return arr;
}

Json optional_hand(const std::optional<Hand>& h) { return h ? to_json(*h) : Json(nullptr); }

}  // namespace

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, path + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::ParseError, path + ": invalid JSON: " + e.what());
  }
}

void write_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidArgument, path + ": cannot write file");
  out << dump(j);
}

const char* to_string(Kind k) {
  switch (k) {
    case Kind::Design: return "design";
    case Kind::LargeSet: return "large-set";
    case Kind::Announcement: return "announcement";
    case Kind::Strategy: return "strategy";
    case Kind::OrthogonalArray: return "orthogonal-array";
    case Kind::TransversalDesign: return "transversal-design";
    case Kind::TdLargeSet: return "td-large-set";
  }
  return "?";
}

Kind detect_kind(const Json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "(root)", "expected an object");
  if (j.contains("announcements")) return Kind::Strategy;
  if (j.contains("members")) {
    const Json& m = j["members"];
    if (m.is_array() && !m.empty() && m[0].is_object() && m[0].contains("lambda")) return Kind::TdLargeSet;
    return Kind::LargeSet;
  }
  if (j.contains("rows")) return Kind::OrthogonalArray;
  if (j.contains("hands")) return Kind::Announcement;
  if (j.contains("blocks")) return j.contains("lambda") ? Kind::TransversalDesign : Kind::Design;
  fail(path, "(root)", "no known schema matches (expected blocks, hands, announcements, members or rows)");
}

// ---------------------------------------------------------------------------
// Artifacts

Json to_json(const Hand& h) { return Json(std::vector<Card>(h.begin(), h.end())); }

Json to_json(const BigInt& x) {
  if (x >= 0 && x <= std::numeric_limits<std::uint64_t>::max()) return Json(x.convert_to<std::uint64_t>());
  if (x < 0 && x >= std::numeric_limits<std::int64_t>::min()) return Json(x.convert_to<std::int64_t>());
  return Json(x.str());
}

Json to_json(const Rational& r) { return Json(r.to_string()); }

Json to_json(const designs::Design& d) {
  Json j{{"v", d.v()}, {"k", d.k()}, {"blocks", hands_json(d.blocks())}};
  if (d.multiset()) j["multiset"] = true;
  return j;
}

Json to_json(const designs::LargeSet& ls, unsigned t) {
  Json members = Json::array();
  for (const auto& m : ls.members) members.push_back(to_json(m));
  return Json{{"v", ls.v}, {"k", ls.k}, {"t", t}, {"members", members}};
}

Json to_json(const strategy::Announcement& A) {
  return Json{{"n", A.n()}, {"a", A.a()}, {"hands", hands_json(A.hands())}};
}

Json to_json(const strategy::Strategy& s) {
  Json anns = Json::array();
  for (const auto& A : s.announcements) anns.push_back(to_json(A));
  return Json{{"n", s.n}, {"a", s.a}, {"b", s.b}, {"c", s.c}, {"announcements", anns}};
}

Json to_json(const transversal::OrthogonalArray& oa) {
  return Json{{"q", oa.q}, {"t", oa.t}, {"k", oa.k}, {"lambda", oa.lambda}, {"rows", oa.rows}};
}

Json to_json(const transversal::TransversalDesign& td) {
  return Json{{"v", td.v}, {"k", td.k}, {"t", td.t}, {"lambda", td.lambda}, {"blocks", hands_json(td.blocks)}};
}

Json td_large_set_json(const std::vector<transversal::TransversalDesign>& members) {
  Json arr = Json::array();
  for (const auto& td : members) arr.push_back(to_json(td));
  const auto& f = members.at(0);
  return Json{{"v", f.v}, {"k", f.k}, {"t", f.t}, {"members", arr}};
}

Json to_json(const geometric::GeometricAnnouncement& ga) {
  Json j = to_json(ga.announcement());
  const auto& g = ga.geometry;
  j["parameters"] = Json{{"p", g.p},
                         {"d", g.d},
                         {"s", ga.s},
                         {"r", to_json(geometric::parallel_class_count(g.p, g.d))},
                         {"lambda_formula_value", to_json(geometric::geometric_lambda(g.p, g.d, ga.s))}};
  return j;
}

designs::Design design_from_json(const Json& j, const std::string& where) {
  unsigned v = get_unsigned(j, where, "v");
  unsigned k = get_unsigned(j, where, "k");
  auto blocks = get_hands(j, where, "blocks");
  bool multiset = j.contains("multiset") && j["multiset"].is_boolean() && j["multiset"].get<bool>();
  return guarded(where, "blocks", [&] { return designs::Design(v, k, std::move(blocks), multiset); });
}

designs::LargeSet large_set_from_json(const Json& j, const std::string& where, unsigned* t) {
  designs::LargeSet ls{get_unsigned(j, where, "v"), get_unsigned(j, where, "k"), {}};
  if (t) *t = get_unsigned(j, where, "t");
  const Json& arr = member(j, where, "members");
  if (!arr.is_array() || arr.empty()) fail(where, "members", "expected a nonempty array");
  for (std::size_t i = 0; i < arr.size(); ++i)
    ls.members.push_back(design_from_json(arr[i], where + ": members[" + std::to_string(i) + "]"));
  return ls;
}

strategy::Announcement announcement_from_json(const Json& j, const std::string& where) {
  unsigned n = get_unsigned(j, where, "n");
  unsigned a = get_unsigned(j, where, "a");
  auto hands = get_hands(j, where, "hands");
  return guarded(where, "hands", [&] { return strategy::Announcement(n, a, std::move(hands)); });
}

strategy::Strategy strategy_from_json(const Json& j, const std::string& where) {
  strategy::Strategy s{get_unsigned(j, where, "n"), get_unsigned(j, where, "a"), get_unsigned(j, where, "b"),
                       get_unsigned(j, where, "c"), {}};
  const Json& arr = member(j, where, "announcements");
  if (!arr.is_array()) fail(where, "announcements", "expected an array");
  for (std::size_t i = 0; i < arr.size(); ++i)
    s.announcements.push_back(announcement_from_json(arr[i], where + ": announcements[" + std::to_string(i) + "]"));
  guarded(where, "announcements", [&] {
    s.validate();
    return 0;
  });
  return s;
}

transversal::OrthogonalArray oa_from_json(const Json& j, const std::string& where) {
  transversal::OrthogonalArray oa;
  oa.q = get_unsigned(j, where, "q");
  oa.t = get_unsigned(j, where, "t");
  oa.k = get_unsigned(j, where, "k");
  oa.lambda = as_uint(member(j, where, "lambda"), where, "lambda");
  const Json& rows = member(j, where, "rows");
  if (!rows.is_array()) fail(where, "rows", "expected an array of arrays");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::string f = "rows[" + std::to_string(i) + "]";
    auto r = get_row(rows[i], where, f);
    if (r.size() != oa.k) fail(where, f, "expected k symbols");
    for (auto s : r)
      if (s >= oa.q) fail(where, f, "symbol outside [0, q)");
    oa.rows.push_back(std::move(r));
  }
  return oa;
}

transversal::TransversalDesign td_from_json(const Json& j, const std::string& where) {
  transversal::TransversalDesign td;
  td.v = get_unsigned(j, where, "v");
  td.k = get_unsigned(j, where, "k");
  td.t = get_unsigned(j, where, "t");
  td.lambda = as_uint(member(j, where, "lambda"), where, "lambda");
  td.blocks = get_hands(j, where, "blocks");
  for (std::size_t i = 0; i < td.blocks.size(); ++i)
    if (!td.blocks[i].empty() && td.blocks[i].back() >= td.points())
      fail(where, "blocks[" + std::to_string(i) + "]", "point outside [0, kv)");
  return td;
}

std::vector<transversal::TransversalDesign> td_large_set_from_json(const Json& j, const std::string& where) {
  const Json& arr = member(j, where, "members");
  if (!arr.is_array() || arr.empty()) fail(where, "members", "expected a nonempty array");
  std::vector<transversal::TransversalDesign> out;
  for (std::size_t i = 0; i < arr.size(); ++i)
    out.push_back(td_from_json(arr[i], where + ": members[" + std::to_string(i) + "]"));
  return out;
}

// ---------------------------------------------------------------------------
// Reports

Json to_json(const strategy::SecurityVerdict& v) {
  Json constants = Json::array();
  for (const auto& c : v.constants)
    constants.push_back(Json{{"delta_prime", c.delta_prime}, {"num", to_json(c.value.num())}, {"den", to_json(c.value.den())}});
  Json witness = nullptr;
  if (v.witness)
    witness = Json{{"h_c", to_json(v.witness->h_c)},
                   {"y", to_json(v.witness->y)},
                   {"count", v.witness->count},
                   {"p_size", v.witness->p_size}};
  return Json{{"level", strategy::to_string(v.level)},
              {"requested", strategy::to_string(v.requested)},
              {"delta", v.delta},
              {"constants", constants},
              {"witness", witness},
              {"feasible_hands", v.feasible_hands},
              {"skipped_infeasible", v.skipped_infeasible}};
}

Json to_json(const strategy::InformativeResult& r) {
  Json w = nullptr;
  if (r.witness) w = Json::array({to_json(r.witness->first), to_json(r.witness->second)});
  return Json{{"informative", r.informative}, {"witness", w}};
}

Json to_json(const strategy::Coverage& c) {
  return Json{{"complete", c.complete},
              {"uncovered", c.uncovered},
              {"first_uncovered", optional_hand(c.first_uncovered)},
              {"multiplicity_min", c.multiplicity_min},
              {"multiplicity_max", c.multiplicity_max},
              {"gamma", c.gamma ? Json(*c.gamma) : Json(nullptr)}};
}

Json to_json(const strategy::StrategyReport& r) {
  Json per = Json::array();
  for (std::size_t i = 0; i < r.security.size(); ++i)
    per.push_back(Json{{"index", i}, {"informative", to_json(r.informative[i])}, {"security", to_json(r.security[i])}});
  return Json{{"coverage", to_json(r.coverage)}, {"m", r.m}, {"announcements", per}, {"pass", r.pass()}};
}

Json to_json(const strategy::Bounds& b) {
  return Json{{"a", b.a},
              {"b", b.b},
              {"c", b.c},
              {"n", b.n},
              {"min_announcements", to_json(b.min_announcements)},
              {"max_perfect_delta_informative", b.max_perfect_delta_informative},
              {"informative_weak1_possible", b.informative_weak1_possible}};
}

Json to_json(const strategy::SimulationResult& r) {
  Json values = Json::array();
  for (const auto& p : r.posterior_values) values.push_back(to_json(p));
  return Json{{"trials", r.trials},
              {"bob_success", r.bob_success},
              {"bob_success_rate", r.trials ? to_json(Rational(BigInt(r.bob_success), BigInt(r.trials))) : Json(nullptr)},
              {"reference", r.reference ? to_json(*r.reference) : Json(nullptr)},
              {"max_deviation", to_json(r.max_deviation)},
              {"posterior_values", values}};
}

Json to_json(const designs::DesignProfile& p) {
  Json levels = Json::array();
  for (const auto& l : p.levels)
    levels.push_back(Json{{"s", l.s}, {"min", l.min}, {"max", l.max},
                          {"constant", l.constant ? Json(*l.constant) : Json(nullptr)}});
  return Json{{"levels", levels}, {"strength", p.strength()}};
}

Json to_json(const designs::LargeSetReport& r) {
  Json lambdas = Json::array();
  for (const auto& l : r.member_lambda) lambdas.push_back(l ? Json(*l) : Json(nullptr));
  return Json{{"member_lambda", lambdas},
              {"members_are_steiner", r.members_are_steiner},
              {"partition", r.partition},
              {"missing_subsets", r.missing_subsets},
              {"repeated_subsets", r.repeated_subsets},
              {"first_partition_failure", optional_hand(r.first_partition_failure)},
              {"expected_members", to_json(r.expected_members)},
              {"member_count", r.member_count},
              {"pass", r.pass()}};
}

Json to_json(const transversal::OaCheck& c) {
  Json w = nullptr;
  if (c.witness) w = Json{{"columns", c.witness->columns}, {"tuple", c.witness->tuple}, {"count", c.witness->count}};
  return Json{{"ok", c.ok}, {"witness", w}};
}

Json to_json(const transversal::TransversalVerdict& v) {
  Json posts = Json::array();
  for (const auto& [key, value] : v.posteriors)
    posts.push_back(Json{{"delta_prime", key.first}, {"ell", key.second}, {"posterior", to_json(value)}});
  Json w = nullptr;
  if (v.witness)
    w = Json{{"h_c", to_json(v.witness->h_c)}, {"y", to_json(v.witness->y)}, {"count", v.witness->count},
             {"p_size", v.witness->p_size}, {"ell", v.witness->ell}};
  return Json{{"c", v.c},
              {"delta", v.delta},
              {"weak", v.weak},
              {"formula", v.formula},
              {"witness", w},
              {"posteriors", posts},
              {"feasible_hands", v.feasible_hands},
              {"skipped_infeasible", v.skipped_infeasible},
              {"skipped_non_transversal_y", v.skipped_non_transversal_y}};
}

Json to_json(const transversal::ToolkitReport& r) {
  Json members = Json::array();
  for (std::size_t i = 0; i < r.security.size(); ++i)
    members.push_back(Json{{"index", i},
                           {"informative", static_cast<bool>(r.informative[i])},
                           {"informative_local", static_cast<bool>(r.informative_local[i])},
                           {"security", to_json(r.security[i])}});
  return Json{{"a", r.a}, {"c", r.c}, {"q", r.q}, {"t", r.t},
              {"member_count", r.member_count},
              {"expected_members", to_json(r.expected_members)},
              {"partition", r.partition},
              {"members", members},
              {"pass", r.pass()}};
}

Json to_json(const geometric::GeometricSecurity& g) {
  Json sweep = Json::array();
  for (const auto& v : g.sweep) sweep.push_back(to_json(v));
  return Json{{"p", g.p}, {"d", g.d}, {"s", g.s}, {"c", g.c},
              {"t_max", g.t_max},
              {"predicted_delta", g.predicted_delta},
              {"max_perfect_delta", g.max_perfect_delta},
              {"agrees", g.agrees()},
              {"prior_condition", g.prior_condition},
              {"sweep", sweep}};
}

}  // namespace cardsec::io
