// cardsec: construct designs and strategies, verify their properties,
// simulate protocol runs and print bounds.
//
// Exit codes: 0 pass, 1 a requested check failed, 2 usage or parse error.

#include "cardsec/designs.hpp"
#include "cardsec/geometric.hpp"
#include "cardsec/io.hpp"
#include "cardsec/strategy.hpp"
#include "cardsec/transversal.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

using namespace cardsec;
using io::Json;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class T>
T need(const std::optional<T>& x, const char* flag) {
  if (!x) throw Usage(std::string("missing required flag ") + flag);
  return *x;
}

unsigned thread_count(unsigned flag) {
  if (const char* env = std::getenv("CARDSEC_THREADS")) {
    try {
      int n = std::stoi(env);
      if (n >= 1) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
    throw Usage("CARDSEC_THREADS must be a positive integer");
  }
  return std::max(1u, flag);
}

Json report_header(const std::string& command) { return Json{{"schema", 1}, {"command", command}}; }

class Timer {
 public:
  explicit Timer(std::string what) : what_(std::move(what)), start_(std::chrono::steady_clock::now()) {}
  ~Timer() {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_);
    std::cerr << "cardsec: " << what_ << " took " << ms.count() << " ms\n";
  }

 private:
  std::string what_;
  std::chrono::steady_clock::time_point start_;
};

// ---------------------------------------------------------------------------
// construct

struct ConstructArgs {
  std::string kind;
  std::optional<unsigned> v, k, t, lambda, q, p, d, s, a, c, keep, point;
  std::string from;
  std::string out;
};

Json construct(const ConstructArgs& x) {
  const std::string& kind = x.kind;
  if (kind == "sts") return io::to_json(designs::build_sts(need(x.v, "--v")));
  if (kind == "ag32") return io::to_json(designs::builtin_ag32());
  if (kind == "large-set-sts9") return io::to_json(designs::builtin_large_set_sts9(), 2);
  if (kind == "projective") return io::to_json(designs::build_projective_plane(need(x.q, "--q")));
  if (kind == "paley") return io::to_json(designs::build_paley_hadamard(need(x.q, "--q")));
  if (kind == "inversive") return io::to_json(designs::build_inversive_plane(need(x.q, "--q")));
  if (kind == "witt24") return io::to_json(designs::build_witt_24());
  if (kind == "derived") {
    if (x.from.empty()) throw Usage("missing required flag --from");
    auto d = io::design_from_json(io::read_file(x.from), x.from);
    return io::to_json(designs::derived_design(d, need(x.point, "--point")));
  }
  if (kind == "trivial")
    return io::to_json(designs::build_trivial_design(need(x.v, "--v"), need(x.k, "--k"), need(x.t, "--t"),
                                                     x.lambda.value_or(1)));
  if (kind == "rs-oa") return io::to_json(transversal::reed_solomon_oa(need(x.t, "--t"), need(x.q, "--q")));
  if (kind == "td") {
    auto oa = transversal::reed_solomon_oa(need(x.t, "--t"), need(x.q, "--q"));
    auto td = transversal::oa_to_td(oa);
    if (x.keep) td = transversal::delete_groups(td, *x.keep);
    return io::to_json(td);
  }
  if (kind == "td-large-set") {
    auto kit = transversal::transversal_toolkit(need(x.a, "--a"), need(x.c, "--c"), need(x.q, "--q"));
    return io::td_large_set_json(kit.members);
  }
  if (kind == "geometric")
    return io::to_json(geometric::build_geometric_announcement(need(x.p, "--p"), need(x.d, "--d"), need(x.s, "--s")));
  throw Usage("unknown construct kind " + kind);
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::string target;
  std::optional<unsigned> design_t, expect_lambda, informative_c, c, perfect_delta, weak_delta;
  std::optional<unsigned> large_set_t, delta, orbit_t, orbit_c, transversal_c, transversal_delta;
  std::string level = "perfect";
  bool profile = false;
  unsigned threads = 1;
};

Json check(const std::string& name, bool pass) { return Json{{"name", name}, {"pass", pass}}; }

unsigned security_c(const VerifyArgs& x) {
  if (x.c) return *x.c;
  if (x.informative_c) return *x.informative_c;
  throw Usage("security checks need --c or --informative-c");
}

void verify_announcement(const VerifyArgs& x, const strategy::Announcement& A, Json& checks) {
  const designs::Design d(A.n(), A.a(), A.hands());
  if (x.design_t) {
    auto lam = designs::verify_t_design(d, *x.design_t);
    Json c = check("t_design", lam.has_value() && (!x.expect_lambda || lam == *x.expect_lambda));
    c["t"] = *x.design_t;
    c["lambda"] = lam ? Json(*lam) : Json(nullptr);
    checks.push_back(c);
  }
  if (x.profile) {
    Json c = check("profile", true);
    c["profile"] = io::to_json(designs::design_profile(d));
    checks.push_back(c);
  }
  if (x.informative_c) {
    auto r = strategy::is_informative(A, *x.informative_c);
    Json c = check("informative", r.informative);
    c["c"] = *x.informative_c;
    c["result"] = io::to_json(r);
    checks.push_back(c);
  }
  for (auto [delta, level] : {std::pair{x.perfect_delta, strategy::Level::Perfect},
                              std::pair{x.weak_delta, strategy::Level::Weak}}) {
    if (!delta) continue;
    const unsigned c = security_c(x);
    auto v = strategy::check_announcement_security(A, c, *delta, level, x.threads);
    Json j = check(std::string(strategy::to_string(level)) + "_security", v.pass());
    j["c"] = c;
    j["verdict"] = io::to_json(v);
    checks.push_back(j);
  }
  if (x.orbit_t) {
    const unsigned c = x.orbit_c ? *x.orbit_c : security_c(x);
    Json j = check("orbit_params", true);
    j["t"] = *x.orbit_t;
    j["c"] = c;
    try {
      auto p = strategy::orbit_strategy_params(d, *x.orbit_t, c);
      j["m"] = io::to_json(p.m);
      j["gamma"] = io::to_json(p.gamma);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NonIntegerParameters && e.code() != ErrorCode::InvalidArgument) throw;
      j["pass"] = false;
      j["error"] = e.what();
    }
    checks.push_back(j);
  }
}

void verify_transversal(const VerifyArgs& x, const std::vector<transversal::TransversalDesign>& tds,
                        Json& checks) {
  for (std::size_t i = 0; i < tds.size(); ++i) {
    const auto& td = tds[i];
    Json c = check("transversal_design", transversal::verify_td(td));
    c["index"] = i;
    checks.push_back(c);
    if (!x.transversal_c) continue;
    const unsigned tc = *x.transversal_c;
    if (tc + 1 > td.t) throw Usage("--transversal-c must be at most t-1");
    const unsigned delta = x.transversal_delta.value_or(td.t - tc);
    auto v = transversal::check_transversal_security(td, tc, delta, x.threads);
    Json s = check("transversal_security", v.pass());
    s["index"] = i;
    s["verdict"] = io::to_json(v);
    checks.push_back(s);
    const strategy::Announcement A(td.points(), td.k, td.blocks);
    Json inf = check("informative", strategy::is_informative(A, tc).informative);
    inf["index"] = i;
    inf["c"] = tc;
    checks.push_back(inf);
  }
  if (tds.size() > 1) {
    const unsigned c = x.transversal_c.value_or(1);
    auto s = transversal::toolkit_strategy(tds, c);
    auto cov = transversal::transversal_coverage(s, tds[0].v);
    Json j = check("transversal_partition", cov.complete && cov.gamma == 1u);
    j["coverage"] = io::to_json(cov);
    j["members"] = tds.size();
    checks.push_back(j);
  }
}

int verify(const VerifyArgs& x) {
  Timer timer("verify");
  const Json doc = io::read_file(x.target);
  const io::Kind kind = io::detect_kind(doc, x.target);
  Json checks = Json::array();

  switch (kind) {
    case io::Kind::Design: {
      auto d = io::design_from_json(doc, x.target);
      if (d.multiset()) {
        if (x.informative_c || x.perfect_delta || x.weak_delta || x.orbit_t)
          throw Usage("protocol checks need a simple design");
        auto lam = x.design_t ? designs::verify_t_design(d, *x.design_t) : std::nullopt;
        if (x.design_t) {
          Json c = check("t_design", lam.has_value() && (!x.expect_lambda || lam == *x.expect_lambda));
          c["t"] = *x.design_t;
          c["lambda"] = lam ? Json(*lam) : Json(nullptr);
          checks.push_back(c);
        }
        if (x.profile) {
          Json c = check("profile", true);
          c["profile"] = io::to_json(designs::design_profile(d));
          checks.push_back(c);
        }
      } else {
        verify_announcement(x, strategy::Announcement::from_design(d), checks);
      }
      break;
    }
    case io::Kind::Announcement:
      verify_announcement(x, io::announcement_from_json(doc, x.target), checks);
      break;
    case io::Kind::LargeSet: {
      unsigned t = 0;
      auto ls = io::large_set_from_json(doc, x.target, &t);
      if (x.large_set_t) t = *x.large_set_t;
      auto r = designs::verify_large_set(ls, t);
      Json c = check("large_set", r.pass());
      c["t"] = t;
      c["report"] = io::to_json(r);
      checks.push_back(c);
      if (x.c) {
        strategy::Strategy s{ls.v, ls.k, ls.v - ls.k - *x.c, *x.c, {}};
        if (ls.v < ls.k + *x.c + 1) throw Usage("--c leaves Bob no cards");
        for (const auto& m : ls.members) s.announcements.push_back(strategy::Announcement::from_design(m));
        auto rep = strategy::verify_strategy(s, x.delta.value_or(1), strategy::parse_level(x.level), x.threads);
        Json sc = check("strategy", rep.pass());
        sc["report"] = io::to_json(rep);
        checks.push_back(sc);
      }
      break;
    }
    case io::Kind::Strategy: {
      auto s = io::strategy_from_json(doc, x.target);
      auto rep = strategy::verify_strategy(s, x.delta.value_or(1), strategy::parse_level(x.level), x.threads);
      Json c = check("strategy", rep.pass());
      c["report"] = io::to_json(rep);
      checks.push_back(c);
      break;
    }
    case io::Kind::OrthogonalArray: {
      auto r = transversal::verify_oa(io::oa_from_json(doc, x.target));
      Json c = check("orthogonal_array", r.ok);
      c["result"] = io::to_json(r);
      checks.push_back(c);
      break;
    }
    case io::Kind::TransversalDesign:
      verify_transversal(x, {io::td_from_json(doc, x.target)}, checks);
      break;
    case io::Kind::TdLargeSet:
      verify_transversal(x, io::td_large_set_from_json(doc, x.target), checks);
      break;
  }

  if (checks.empty()) throw Usage("no checks requested for this target");
  bool pass = true;
  for (const auto& c : checks) pass = pass && c["pass"].get<bool>();
  Json report = report_header("verify");
  report["target"] = x.target;
  report["kind"] = io::to_string(kind);
  report["checks"] = checks;
  report["pass"] = pass;
  std::cout << io::dump(report);
  return pass ? kPass : kFail;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
  std::string target;
  std::optional<unsigned> a, b, c;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 0;
};

void expect_match(const std::optional<unsigned>& flag, unsigned actual, const char* name) {
  if (flag && *flag != actual)
    throw Usage(std::string("--") + name + " = " + std::to_string(*flag) + " does not match the strategy's " +
                std::to_string(actual));
}

int simulate(const SimulateArgs& x) {
  Timer timer("simulate");
  const Json doc = io::read_file(x.target);
  const io::Kind kind = io::detect_kind(doc, x.target);
  strategy::Strategy s;
  std::optional<unsigned> groups;
  switch (kind) {
    case io::Kind::Strategy:
      s = io::strategy_from_json(doc, x.target);
      break;
    case io::Kind::LargeSet: {
      auto ls = io::large_set_from_json(doc, x.target);
      const unsigned c = need(x.c, "--c");
      if (ls.v < ls.k + c + 1) throw Usage("--c leaves Bob no cards");
      s = strategy::Strategy{ls.v, ls.k, ls.v - ls.k - c, c, {}};
      for (const auto& m : ls.members) s.announcements.push_back(strategy::Announcement::from_design(m));
      break;
    }
    case io::Kind::TdLargeSet: {
      auto tds = io::td_large_set_from_json(doc, x.target);
      s = transversal::toolkit_strategy(tds, need(x.c, "--c"));
      groups = tds[0].v;
      break;
    }
    default:
      throw Usage(std::string("simulate needs a strategy or large set, got ") + io::to_string(kind));
  }
  expect_match(x.a, s.a, "a");
  expect_match(x.b, s.b, "b");
  expect_match(x.c, s.c, "c");

  Json report = report_header("simulate");
  report["target"] = x.target;
  report["parameters"] = Json{{"n", s.n}, {"a", s.a}, {"b", s.b}, {"c", s.c}, {"trials", x.trials},
                              {"seed", x.seed}, {"mode", groups ? "transversal" : "standard"}};
  auto cov = groups ? transversal::transversal_coverage(s, *groups) : strategy::strategy_coverage(s);
  report["coverage"] = io::to_json(cov);
  if (!cov.complete) {
    report["result"] = nullptr;
    report["pass"] = false;
    std::cout << io::dump(report);
    return kFail;
  }
  auto r = groups ? transversal::simulate_transversal(s, *groups, x.trials, Seed{x.seed})
                  : strategy::simulate_protocol(s, x.trials, Seed{x.seed});
  const bool pass = r.bob_success == r.trials;
  report["result"] = io::to_json(r);
  report["pass"] = pass;
  std::cout << io::dump(report);
  return pass ? kPass : kFail;
}

// ---------------------------------------------------------------------------
// bounds

int bounds(unsigned a, unsigned b, unsigned c, const std::optional<unsigned>& n) {
  if (a < 1 || b < 1 || c < 1) throw Usage("bounds needs a, b, c >= 1");
  if (n && *n != a + b + c) throw Usage("--n must equal a + b + c");
  Json report = report_header("bounds");
  report["bounds"] = io::to_json(strategy::bounds(a, b, c));
  std::cout << io::dump(report);
  return kPass;
}

template <class T>
void opt(CLI::App* app, const std::string& name, std::optional<T>& target, const std::string& help) {
  app->add_option(name, target, help);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Designs and exhaustive security verification for card-deal protocols"};
  app.require_subcommand(1);
  app.fallthrough();
  unsigned threads_flag = 1;
  app.add_option("--threads", threads_flag, "verifier worker threads (CARDSEC_THREADS overrides)");

  ConstructArgs cx;
  auto* construct_cmd = app.add_subcommand("construct", "build a design, array or announcement as JSON");
  construct_cmd->add_option("kind", cx.kind, "what to build")
      ->required()
      ->check(CLI::IsMember({"sts", "ag32", "large-set-sts9", "projective", "paley", "inversive", "witt24",
                             "derived", "trivial", "rs-oa", "td", "td-large-set", "geometric"}));
  opt(construct_cmd, "--v", cx.v, "point count");
  opt(construct_cmd, "--k", cx.k, "block size");
  opt(construct_cmd, "--t", cx.t, "strength");
  opt(construct_cmd, "--lambda", cx.lambda, "index (trivial designs)");
  opt(construct_cmd, "--q", cx.q, "prime power");
  opt(construct_cmd, "--p", cx.p, "prime power (geometric)");
  opt(construct_cmd, "--d", cx.d, "dimension minus one (geometric)");
  opt(construct_cmd, "--s", cx.s, "parallel hyperplanes per hand (geometric)");
  opt(construct_cmd, "--a", cx.a, "hand size (td-large-set)");
  opt(construct_cmd, "--c", cx.c, "Cathy's hand size (td-large-set)");
  opt(construct_cmd, "--keep", cx.keep, "groups to keep (td)");
  opt(construct_cmd, "--point", cx.point, "point to derive at (derived)");
  construct_cmd->add_option("--from", cx.from, "design JSON to derive from");
  construct_cmd->add_option("-o,--out", cx.out, "output path (default: standard output)");

  VerifyArgs vx;
  auto* verify_cmd = app.add_subcommand("verify", "run exhaustive checks on a JSON artifact");
  verify_cmd->add_option("target", vx.target, "artifact JSON")->required();
  opt(verify_cmd, "--design-t", vx.design_t, "check t-design property");
  opt(verify_cmd, "--lambda", vx.expect_lambda, "expected lambda for --design-t");
  opt(verify_cmd, "--informative-c", vx.informative_c, "check informativeness for this c");
  opt(verify_cmd, "--c", vx.c, "Cathy's hand size for security checks");
  opt(verify_cmd, "--perfect-delta", vx.perfect_delta, "check perfect delta-security");
  opt(verify_cmd, "--weak-delta", vx.weak_delta, "check weak delta-security");
  opt(verify_cmd, "--large-set-t", vx.large_set_t, "strength for large-set checks");
  opt(verify_cmd, "--delta", vx.delta, "delta for strategy checks (default 1)");
  verify_cmd->add_option("--level", vx.level, "weak or perfect (strategy checks)")
      ->check(CLI::IsMember({"weak", "perfect"}));
  opt(verify_cmd, "--orbit-t", vx.orbit_t, "compute orbit-strategy parameters at this t");
  opt(verify_cmd, "--orbit-c", vx.orbit_c, "c for orbit-strategy parameters");
  opt(verify_cmd, "--transversal-c", vx.transversal_c, "Cathy's hand size for transversal security");
  opt(verify_cmd, "--transversal-delta", vx.transversal_delta, "delta for transversal security");
  verify_cmd->add_flag("--profile", vx.profile, "include the containment profile");

  SimulateArgs sx;
  auto* simulate_cmd = app.add_subcommand("simulate", "seeded protocol runs");
  simulate_cmd->add_option("target", sx.target, "strategy or large-set JSON")->required();
  opt(simulate_cmd, "--a", sx.a, "Alice's hand size");
  opt(simulate_cmd, "--b", sx.b, "Bob's hand size");
  opt(simulate_cmd, "--c", sx.c, "Cathy's hand size");
  simulate_cmd->add_option("--trials", sx.trials, "number of deals");
  simulate_cmd->add_option("--seed", sx.seed, "generator seed");

  unsigned ba = 0, bb = 0, bc = 0;
  std::optional<unsigned> bn;
  auto* bounds_cmd = app.add_subcommand("bounds", "lower bounds and feasibility for (a,b,c)");
  bounds_cmd->add_option("--a", ba)->required();
  bounds_cmd->add_option("--b", bb)->required();
  bounds_cmd->add_option("--c", bc)->required();
  opt(bounds_cmd, "--n", bn, "deck size (must equal a+b+c)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    const unsigned threads = thread_count(threads_flag);
    if (*construct_cmd) {
      Json artifact = construct(cx);
      if (cx.out.empty())
        std::cout << io::dump(artifact);
      else
        io::write_file(cx.out, artifact);
      return kPass;
    }
    if (*verify_cmd) {
      vx.threads = threads;
      return verify(vx);
    }
    if (*simulate_cmd) return simulate(sx);
    if (*bounds_cmd) return bounds(ba, bb, bc, bn);
  } catch (const Usage& e) {
    std::cerr << "cardsec: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "cardsec: " << to_string(e.code()) << ": " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
