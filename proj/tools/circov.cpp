// circov: command-line driver for the circulant set covering library.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "circov/core.hpp"
#include "circov/errors.hpp"
#include "circov/exactlp.hpp"
#include "circov/inequalities.hpp"
#include "circov/json_io.hpp"
#include "circov/minors.hpp"
#include "circov/oracle.hpp"
#include "circov/separation.hpp"

using namespace circov;
using json_io::Json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kBudget = 2, kCounterexample = 3, kInternal = 4 };

struct RunConfig {
  std::string subcommand;
  int n = 0;
  int k = 0;
  std::string instance_path;
  std::string point = "";
  std::string weights = "unit";
  std::string W;
  std::optional<int> d;
  std::optional<int> r;
  bool alternated_only = false;
  bool facets = false;
  int rank_max_n = 16;
  int max_n = 40;
  bool no_alternated = false;
  int max_rounds = 50;
  int max_cuts = 10;
  int ip_max_n = 20;
  int k_max = 6;
  int n_max = 30;
  int general_max_n = 16;
  int max_w_size = 24;
  int points = 50;
  std::uint64_t seed = 1;
  int threads = 1;
  bool decimal = false;
  std::string output;

  Json to_json() const {
    Json j{{"subcommand", subcommand}};
    if (!instance_path.empty()) {
      j["instance"] = instance_path;
    } else {
      j["n"] = n;
      j["k"] = k;
    }
    if (subcommand == "minors" || subcommand == "ineq") {
      j["W"] = W;
      j["d"] = d ? Json(*d) : Json(nullptr);
      j["r"] = r ? Json(*r) : Json(nullptr);
      j["alternated_only"] = alternated_only;
      j["facets"] = facets;
      j["rank_max_n"] = rank_max_n;
      j["max_n"] = max_n;
    }
    if (subcommand == "separate") {
      j["point"] = point;
      j["alternated"] = !no_alternated;
    }
    if (subcommand == "cutplane") {
      j["weights"] = weights;
      j["alternated"] = !no_alternated;
      j["max_rounds"] = max_rounds;
      j["max_cuts_per_round"] = max_cuts;
      j["ip_max_n"] = ip_max_n;
    }
    if (subcommand == "conjecture") {
      j["k_max"] = k_max;
      j["n_max"] = n_max;
      j["general_max_n"] = general_max_n;
      j["max_w_size"] = max_w_size;
    }
    if (subcommand == "selftest") {
      j["max_n"] = max_n;
      j["points"] = points;
    }
    j["seed"] = seed;
    j["threads"] = threads;
    j["decimal"] = decimal;
    return j;
  }
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
}

CirculantInstance load_instance(const RunConfig& cfg) {
  if (!cfg.instance_path.empty()) return json_io::instance_from(read_json_file(cfg.instance_path));
  if (cfg.n == 0 || cfg.k == 0) throw InvalidArgument("give --n and --k, or --instance");
  return CirculantInstance(cfg.n, cfg.k);
}

/// "unit", "uniform:p/q" or a JSON file holding an array of rationals.
RationalVector load_vector(const std::string& source, int n, const char* what) {
  if (source.empty()) throw InvalidArgument(std::string("missing --") + what);
  if (source == "unit") return RationalVector(static_cast<size_t>(n), Rational(1));
  if (source.rfind("uniform:", 0) == 0) {
    return RationalVector(static_cast<size_t>(n), parse_rational(source.substr(8)));
  }
  RationalVector v = json_io::rational_vector_from(read_json_file(source));
  if (static_cast<int>(v.size()) != n) {
    throw InvalidArgument(std::string(what) + " has " + std::to_string(v.size()) + " entries, expected " +
                          std::to_string(n));
  }
  return v;
}

IndexSet parse_W(const std::string& text, int n) {
  std::vector<int> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      size_t used = 0;
      v.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw InvalidArgument("--W expects comma separated integers, got '" + item + "'");
    }
  }
  return IndexSet(n, std::move(v));
}

json_io::Format format(const RunConfig& cfg) { return {.decimal = cfg.decimal}; }

Json minor_entry(const CirculantInstance& inst, const CirculantMinor& m, const RunConfig& cfg) {
  Json e = json_io::minor(m);
  e["relevant"] = is_relevant(inst, m.params);
  e["facet_condition"] = facet_condition(inst, m.params);
  e["inequality"] = json_io::inequality(minor_inequality(inst, m), format(cfg));
  if (cfg.facets) {
    FacetReport rep = classify_minor(inst, m, cfg.rank_max_n);
    e["facet_by_rank"] = rep.facet_by_rank ? Json(*rep.facet_by_rank) : Json(nullptr);
  }
  return e;
}

int cmd_minors(const RunConfig& cfg, Json& report) {
  const CirculantInstance inst = load_instance(cfg);
  report["instance"] = json_io::instance(inst);
  if (!cfg.W.empty()) {
    IndexSet W = parse_W(cfg.W, inst.n());
    try {
      CirculantMinor m = validate_minor(inst, W);
      report["valid"] = true;
      report["minor"] = minor_entry(inst, m, cfg);
    } catch (const MalformedW& e) {
      report["valid"] = false;
      report["error"] = e.what();
      report["failed_at"] = e.where() >= 0 ? Json(e.where()) : Json(nullptr);
    } catch (const IsomorphismMismatch& e) {
      report["valid"] = false;
      report["error"] = e.what();
      report["failed_at"] = nullptr;
    }
    return kOk;
  }
  std::vector<CirculantMinor> minors;
  if (cfg.d) {
    MinorQuery q{.d = *cfg.d, .r = cfg.r, .only_alternated = cfg.alternated_only, .max_n = cfg.max_n};
    minors = enumerate_minors(inst, q);
  } else {
    if (cfg.r) throw InvalidArgument("--r needs --d");
    minors = enumerate_all_n1_minors(inst, cfg.max_n);
  }
  Json list = Json::array();
  for (const auto& m : minors) list.push_back(minor_entry(inst, m, cfg));
  report["count"] = minors.size();
  report["minors"] = list;
  return kOk;
}

int cmd_ineq(const RunConfig& cfg, Json& report) {
  const CirculantInstance inst = load_instance(cfg);
  if (cfg.W.empty()) throw InvalidArgument("ineq needs --W");
  report["instance"] = json_io::instance(inst);
  CirculantMinor m = validate_minor(inst, parse_W(cfg.W, inst.n()));
  const auto fmt = format(cfg);
  report["minor"] = json_io::minor(m);
  LinearInequality derived = cg_derivation(inst, m);
  report["cg_sum"] = json_io::inequality(derived, fmt);
  report["cg_rounded"] = json_io::inequality(round_up_divided(derived, m.params.k_prime), fmt);
  report["facet_report"] = json_io::facet_report(classify_minor(inst, m, cfg.rank_max_n), fmt);
  if (facet_condition(inst, m.params)) {
    Json roots = Json::array();
    try {
      for (const auto& z : generate_facet_roots(inst, m)) roots.push_back(json_io::index_set(z));
      report["roots"] = roots;
      std::vector<RationalVector> rows;
      for (const auto& z : roots) {
        RationalVector v(static_cast<size_t>(inst.n()));
        for (int i : z) v[static_cast<size_t>(i)] = 1;
        rows.push_back(std::move(v));
      }
      report["roots_rank"] = rank_rational(rows);
    } catch (const ConstructionFailure& e) {
      report["roots_error"] = e.what();
    }
  }
  if (is_relevant(inst, m.params) && m.params.r >= 2) {
    R1Reduction red = reduce_to_r1(inst, m);
    Json j{{"params", json_io::params(red.params)}};
    j["minor"] = red.minor ? json_io::minor(*red.minor) : Json(nullptr);
    report["reduction_to_r1"] = j;
  }
  return kOk;
}

int cmd_separate(const RunConfig& cfg, Json& report) {
  const CirculantInstance inst = load_instance(cfg);
  RationalVector x = load_vector(cfg.point, inst.n(), "point");
  for (const auto& v : x) {
    if (v < 0 || v > 1) throw InvalidArgument("point must lie in [0,1]^n");
  }
  report["instance"] = json_io::instance(inst);
  SeparateAllOptions opt;
  opt.alternated = !cfg.no_alternated;
  opt.threads = cfg.threads;
  Json list = Json::array();
  auto found = separate_all(inst, x, opt);
  for (const auto& s : found) list.push_back(json_io::separation(s, format(cfg)));
  report["violated"] = !found.empty();
  report["results"] = list;
  return kOk;
}

int cmd_cutplane(const RunConfig& cfg, Json& report) {
  const CirculantInstance inst = load_instance(cfg);
  RationalVector w = load_vector(cfg.weights, inst.n(), "weights");
  CuttingPlaneConfig cp;
  cp.max_rounds = cfg.max_rounds;
  cp.max_cuts_per_round = cfg.max_cuts;
  cp.ip_max_n = cfg.ip_max_n;
  cp.separators.alternated = !cfg.no_alternated;
  cp.separators.threads = cfg.threads;
  report["instance"] = json_io::instance(inst);
  report["cutting_plane"] = json_io::cutting_plane(cutting_plane(inst, w, cp), format(cfg));
  return kOk;
}

int cmd_conjecture(const RunConfig& cfg, Json& report) {
  std::vector<CirculantInstance> battery;
  if (cfg.n != 0 || !cfg.instance_path.empty()) {
    battery.push_back(load_instance(cfg));
  } else {
    for (int k = 3; k <= cfg.k_max; ++k)
      for (int n = k + 2; n <= cfg.n_max; ++n) battery.emplace_back(n, k);
  }
  Json records = Json::array();
  int premise = 0, found = 0, not_found = 0, relevant = 0;
  auto check = [&](const CirculantInstance& inst, const CirculantMinor& m, const char* source) {
    if (!is_relevant(inst, m.params)) return;
    ++relevant;
    ConjectureRecord rec = conjecture_resto1_check(inst, m, cfg.max_w_size);
    switch (rec.verdict) {
      case ConjectureVerdict::kPremiseTrivial: ++premise; return;
      case ConjectureVerdict::kFound: ++found; break;
      case ConjectureVerdict::kNotFound: ++not_found; break;
    }
    Json j = json_io::conjecture(rec);
    j["instance"] = json_io::instance(inst);
    j["minor"] = json_io::minor(m);
    j["source"] = source;
    records.push_back(j);
  };
  for (const auto& inst : battery) {
    for (const auto& m : enumerate_all_n1_minors(inst, cfg.max_n)) check(inst, m, "n1=1");
    if (inst.n() <= cfg.general_max_n) {
      for (const auto& m : oracle::minors_from_dicycles(inst, {.max_n = cfg.general_max_n})) {
        if (m.params.n1 >= 2 && !m.W.empty()) check(inst, m, "dicycles");
      }
    }
  }
  report["relevant_minors"] = relevant;
  report["premise_trivial"] = premise;
  report["found"] = found;
  report["not_found"] = not_found;
  report["records"] = records;
  return not_found > 0 ? kCounterexample : kOk;
}

int cmd_selftest(const RunConfig& cfg, Json& report) {
  std::mt19937_64 rng(cfg.seed);
  Json checks = Json::array();
  bool all_ok = true;
  auto record = [&](const std::string& name, bool ok, long cases) {
    checks.push_back(Json{{"check", name}, {"ok", ok}, {"cases", cases}});
    all_ok = all_ok && ok;
  };
  const int top = std::min(cfg.max_n, 14);

  long cases = 0;
  bool ok = true;
  for (int n = 4; n <= top; ++n)
    for (int k = 2; k <= n - 2; ++k, ++cases) {
      CirculantInstance inst(n, k);
      ok = ok && covering_number(inst).value == oracle::min_cover_size(inst);
    }
  record("covering number matches enumeration", ok, cases);

  cases = 0;
  ok = true;
  for (int n = 5; n <= std::min(top, 12); ++n)
    for (int k = 2; k <= n - 2; ++k) {
      CirculantInstance inst(n, k);
      auto covers = oracle::enumerate_covers(inst);
      for (const auto& m : enumerate_all_n1_minors(inst)) {
        ++cases;
        LinearInequality ineq = minor_inequality(inst, m);
        for (const auto& c : covers) ok = ok && ineq.satisfied_by(c);
      }
    }
  record("minor inequalities hold at every cover", ok, cases);

  cases = 0;
  ok = true;
  for (auto [n, k] : {std::pair{12, 3}, {13, 3}, {12, 4}, {13, 5}}) {
    if (n > top) continue;
    CirculantInstance inst(n, k);
    for (int p = 0; p < cfg.points; ++p) {
      RationalVector x = oracle::random_point(inst, rng);
      for (int d = 1; d <= k - 2; ++d)
        for (int r = 1; r < k - d; ++r) {
          if (d == 1 && r != 1) continue;
          ++cases;
          auto fast = d == 1 ? separate_d1(inst, x) : separate_alternated(inst, x, d, r);
          auto slow = brute_force_separate(inst, x, d, r, top);
          ok = ok && bool(fast) == bool(slow) && (!fast || fast->violation == slow->violation);
        }
    }
  }
  record("separation agrees with exhaustive search", ok, cases);

  report["checks"] = checks;
  report["passed"] = all_ok;
  return all_ok ? kOk : kInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Set covering polyhedron tools for circulant matrices C_n^k"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto instance_opts = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "number of columns");
    sub->add_option("--k", cfg.k, "row width");
    sub->add_option("--instance", cfg.instance_path, "JSON file {\"n\":..,\"k\":..}");
  };
  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "seed for randomized checks");
    sub->add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("--decimal", cfg.decimal, "also print approximate decimals");
    sub->add_option("--output", cfg.output, "write the report here instead of stdout");
  };

  auto* minors = app.add_subcommand("minors", "list circulant minors, or validate one W");
  instance_opts(minors);
  common(minors);
  minors->add_option("--W", cfg.W, "comma separated W to validate");
  minors->add_option("--d", cfg.d, "number of dicycles");
  minors->add_option("--r", cfg.r, "keep n3 = r (mod k-d)");
  minors->add_flag("--alternated", cfg.alternated_only, "only d-alternated minors");
  minors->add_flag("--facets", cfg.facets, "add the brute-force facet verdict");
  minors->add_option("--rank-max-n", cfg.rank_max_n, "largest n for brute-force rank checks");
  minors->add_option("--max-n", cfg.max_n, "enumeration budget");

  auto* ineq = app.add_subcommand("ineq", "inequality, derivation and facet report for one W");
  instance_opts(ineq);
  common(ineq);
  ineq->add_option("--W", cfg.W, "comma separated W")->required();
  ineq->add_option("--rank-max-n", cfg.rank_max_n, "largest n for brute-force rank checks");

  auto* separate = app.add_subcommand("separate", "separate a point");
  instance_opts(separate);
  common(separate);
  separate->add_option("--point", cfg.point, "uniform:p/q or a JSON file")->required();
  separate->add_flag("--no-alternated", cfg.no_alternated, "skip the d >= 2 oracles");

  auto* cutplane = app.add_subcommand("cutplane", "cutting-plane run over Q(C_n^k)");
  instance_opts(cutplane);
  common(cutplane);
  cutplane->add_option("--weights", cfg.weights, "unit, uniform:p/q or a JSON file");
  cutplane->add_flag("--no-alternated", cfg.no_alternated, "skip the d >= 2 oracles");
  cutplane->add_option("--max-rounds", cfg.max_rounds, "round limit");
  cutplane->add_option("--max-cuts", cfg.max_cuts, "cuts added per round");
  cutplane->add_option("--ip-max-n", cfg.ip_max_n, "largest n for the exact integer optimum");

  auto* conjecture = app.add_subcommand("conjecture", "sweep the r = 1 reduction conjecture");
  instance_opts(conjecture);
  common(conjecture);
  conjecture->add_option("--k-max", cfg.k_max, "largest k in the sweep");
  conjecture->add_option("--n-max", cfg.n_max, "largest n in the sweep");
  conjecture->add_option("--general-max-n", cfg.general_max_n, "largest n for minors with n1 >= 2");
  conjecture->add_option("--max-w-size", cfg.max_w_size, "largest |W| searched");
  conjecture->add_option("--max-n", cfg.max_n, "enumeration budget");

  auto* selftest = app.add_subcommand("selftest", "oracle-equivalence checks at small budgets");
  common(selftest);
  selftest->add_option("--points", cfg.points, "random points per instance");
  selftest->add_option("--max-n", cfg.max_n, "largest instance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();
  if (cfg.subcommand == "selftest" && selftest->count("--max-n") == 0) cfg.max_n = 12;

  Json report{{"tool", "circov"}, {"version", CIRCOV_VERSION}, {"config", cfg.to_json()}};
  int code = kOk;
  try {
    if (cfg.subcommand == "minors") code = cmd_minors(cfg, report);
    else if (cfg.subcommand == "ineq") code = cmd_ineq(cfg, report);
    else if (cfg.subcommand == "separate") code = cmd_separate(cfg, report);
    else if (cfg.subcommand == "cutplane") code = cmd_cutplane(cfg, report);
    else if (cfg.subcommand == "conjecture") code = cmd_conjecture(cfg, report);
    else code = cmd_selftest(cfg, report);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const InternalInvariant& e) {
    std::cerr << "internal invariant failed: " << e.what() << "\n";
    return kInternal;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const MalformedW& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }

  const std::string text = report.dump(2) + "\n";
  if (cfg.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(cfg.output);
    if (!out) {
      std::cerr << "error: cannot write " << cfg.output << "\n";
      return kUsage;
    }
    out << text;
  }
  return code;
}
