// absord: command-line front end for the absolute order on GL_n(F_q).

#include "absord/io.hpp"
#include "absord/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>

#ifndef ABSORD_VERSION
#define ABSORD_VERSION "dev"
#endif

using namespace absord;

namespace {

struct Common {
  int n = 2;
  std::string q = "2";
  bool json_out = false;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::uint64_t max_group_order = kDefaultMaxGroupOrder;
};

struct Report {
  explicit Report(std::string cmd = {}) : command(std::move(cmd)) {}

  std::string command;
  json parameters = json::object();
  json results = json::object();
  bool all_match = true;
  std::vector<std::string> warnings;

  void compare(bool ok) { all_match = all_match && ok; }
};

void add_common(CLI::App* sub, Common& c, bool with_n = true) {
  if (with_n) sub->add_option("--n", c.n, "Dimension n")->check(CLI::Range(1, 64));
  sub->add_option("--q", c.q, "Field size: p or p^e");
  sub->add_flag("--json", c.json_out, "Emit the JSON report");
  sub->add_option("--seed", c.seed, "Seed for all sampling");
  sub->add_option("--threads", c.threads, "Worker threads")->check(CLI::Range(1u, 256u));
  sub->add_option("--max-group-order", c.max_group_order,
                  "Refuse to enumerate groups larger than this");
}

json common_params(const Common& c, const FieldPtr& F, bool with_n = true) {
  json p{{"q", F->name()}, {"seed", c.seed}, {"threads", c.threads},
         {"max_group_order", c.max_group_order}};
  if (with_n) p["n"] = c.n;
  return p;
}

Matrix resolve_top(const std::string& top, int n, const FieldPtr& F) {
  if (top == "singer") return singer_cycle(n, F);
  Matrix m = parse_matrix(top, F);
  if (m.rows() != n || m.cols() != n)
    throw std::invalid_argument("--top matrix is not " + std::to_string(n) + " x " +
                                std::to_string(n));
  if (!is_invertible(m)) throw std::invalid_argument("--top matrix is singular");
  return m;
}

std::string yes_no(bool b) { return b ? "yes" : "NO"; }

// ---------------------------------------------------------------------------

Report cmd_ranks(const Common& c, bool formula_only) {
  const FieldPtr F = Field::parse(c.q);
  Report r{"ranks"};
  r.parameters = common_params(c, F);
  r.parameters["formula_only"] = formula_only;
  const bool fits = gl_order(c.n, F->q()) <= Int(c.max_group_order);
  std::vector<Int> census(c.n + 1, 0);
  const bool do_census = !formula_only && fits;
  if (!formula_only && !fits)
    r.warnings.push_back("census skipped: |GL| exceeds --max-group-order");
  if (do_census)
    for_each_gl(c.n, F, [&](const Matrix& g) { ++census[reflection_length(g)]; },
                c.max_group_order);
  json rows = json::array();
  for (int k = 0; k <= c.n; ++k) {
    const Int a = rank_size_formula(c.n, k, F->q()), b = rank_size_fulman(c.n, k, F->q());
    json row{{"k", k}, {"formula", to_string(a)}, {"fulman", to_string(b)}};
    r.compare(a == b);
    bool match = a == b;
    if (do_census) {
      row["census"] = to_string(census[k]);
      r.compare(census[k] == a);
      match = match && census[k] == a;
    }
    row["match"] = match;
    rows.push_back(row);
  }
  r.results["ranks"] = rows;
  r.results["census_run"] = do_census;
  r.results["group_order"] = to_string(gl_order(c.n, F->q()));
  return r;
}

Report cmd_flag(const Common& c, const std::string& alpha, bool all, const std::string& top,
                const std::string& csv) {
  const FieldPtr F = Field::parse(c.q);
  Report r{"flag"};
  r.parameters = common_params(c, F);
  r.parameters["top"] = top;
  const Matrix cm = resolve_top(top, c.n, F);
  const bool re = is_regular_elliptic(cm);
  if (!re) r.warnings.push_back("top is not regular elliptic: formula column suppressed");
  const auto model = IntervalModel::build(cm, c.max_group_order, c.threads);
  std::vector<Composition> alphas;
  if (all || alpha.empty()) {
    alphas = compositions(model.length());
  } else {
    alphas.push_back(parse_composition(alpha));
    if (alphas[0].n() != model.length())
      throw std::invalid_argument("composition " + alpha + " does not sum to the top's length " +
                                  std::to_string(model.length()));
  }
  r.parameters["alpha"] = all || alpha.empty() ? json("all") : json(alpha);
  r.results["length"] = model.length();
  std::vector<FlagRow> rows;
  json out = json::array();
  for (const auto& a : alphas) {
    FlagRow row{a, flag_f(model, a), std::nullopt};
    json j{{"alpha", a.str()}, {"epsilon", a.epsilon()}, {"enumerated", to_string(row.enumerated)}};
    if (re) {
      row.formula = flag_formula(a, F->q());
      j["formula"] = to_string(*row.formula);
      j["match"] = row.match();
      r.compare(row.match());
    }
    out.push_back(j);
    rows.push_back(std::move(row));
  }
  r.results["top"] = format_matrix(cm);
  r.results["regular_elliptic"] = re;
  r.results["flags"] = out;
  if (!csv.empty()) {
    std::ofstream f(csv);
    if (!f) throw std::runtime_error("cannot write " + csv);
    write_flag_csv(f, rows);
    r.results["csv"] = csv;
  }
  return r;
}

Report cmd_factor(const Common& c, const std::string& matrix) {
  const FieldPtr F = Field::parse(c.q);
  Report r{"factor"};
  r.parameters = common_params(c, F, false);
  r.parameters["matrix"] = matrix;
  const Matrix g = parse_matrix(matrix, F);
  if (!g.square()) throw std::invalid_argument("matrix is not square");
  if (!is_invertible(g)) throw std::invalid_argument("matrix is singular");
  const Factorization w = reduced_word(g);
  bool all_refl = true;
  for (const Matrix& t : w.factors()) all_refl = all_refl && is_reflection(t);
  const int len = reflection_length(g);
  r.results["factorization"] = to_json(w);
  r.results["length"] = static_cast<int>(w.size());
  r.results["rank_g_minus_1"] = len;
  r.results["checks"] = {{"all_reflections", all_refl},
                         {"product_matches", w.product() == g},
                         {"length_equals_rank", static_cast<int>(w.size()) == len}};
  r.compare(all_refl && w.product() == g && static_cast<int>(w.size()) == len);
  return r;
}

Report cmd_export(const Common& c, const std::string& top, const std::string& out) {
  const FieldPtr F = Field::parse(c.q);
  Report r{"interval-export"};
  r.parameters = common_params(c, F);
  r.parameters["top"] = top;
  const auto model = IntervalModel::build(resolve_top(top, c.n, F), c.max_group_order, c.threads);
  const json j = to_json(model);
  if (out.empty() || out == "-") {
    r.results["interval"] = j;
  } else {
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot write " + out);
    f << j.dump() << '\n';
    r.results["file"] = out;
  }
  json sizes = json::array();
  for (auto s : model.rank_sizes()) sizes.push_back(s);
  r.results["rank_sizes"] = sizes;
  r.results["covers"] = model.cover_pairs().size();
  return r;
}

Report cmd_mobius(const Common& c, const std::string& top) {
  const FieldPtr F = Field::parse(c.q);
  Report r{"mobius"};
  r.parameters = common_params(c, F);
  r.parameters["top"] = top;
  const Matrix cm = resolve_top(top, c.n, F);
  const auto model = IntervalModel::build(cm, c.max_group_order, c.threads);
  const Int mu = mobius_poset(model);
  r.results["top"] = format_matrix(cm);
  r.results["recursion"] = to_string(mu);
  r.results["abs"] = to_string(mu < 0 ? Int(-mu) : mu);
  if (is_regular_elliptic(cm)) {
    const Int f = mobius_formula(c.n, F->q());
    r.results["formula"] = to_string(f);
    r.results["match"] = f == mu;
    r.compare(f == mu);
  } else {
    r.warnings.push_back("top is not regular elliptic: formula not compared");
  }
  return r;
}

Report cmd_witness(const Common& c, const std::string& top, const std::vector<std::string>& pair) {
  const FieldPtr F = Field::parse(c.q);
  Report r{"witness"};
  r.parameters = common_params(c, F);
  r.parameters["top"] = top;
  const Matrix cm = resolve_top(top, c.n, F);
  const auto model = IntervalModel::build(cm, c.max_group_order, c.threads);
  r.results["top"] = format_matrix(cm);
  const auto describe = [&](std::size_t a, std::size_t b) {
    json bounds = json::array();
    for (auto z : minimal_upper_bounds(model, a, b)) bounds.push_back(format_matrix(model.element(z)));
    return json{{"a", format_matrix(model.element(a))},
                {"b", format_matrix(model.element(b))},
                {"minimal_upper_bounds", bounds},
                {"has_join", bounds.size() == 1}};
  };
  if (!pair.empty()) {
    if (pair.size() != 2) throw std::invalid_argument("--pair needs two matrices");
    r.parameters["pair"] = pair;
    const auto ia = model.index_of(parse_matrix(pair[0], F));
    const auto ib = model.index_of(parse_matrix(pair[1], F));
    if (!ia || !ib) throw std::invalid_argument("--pair element is not below the top");
    r.results["pair"] = describe(*ia, *ib);
  } else if (const auto w = lattice_witness(model)) {
    r.results["witness"] = describe(w->a, w->b);
  } else {
    r.results["witness"] = nullptr;
  }
  return r;
}

json invariants_json(const IntervalInvariants& inv) {
  json j;
  j["rank_sizes"] = inv.rank_sizes;
  j["up_degrees"] = inv.up_degrees;
  j["down_degrees"] = inv.down_degrees;
  j["incidence_det_abs"] = to_string(inv.incidence_det);
  return j;
}

Report cmd_invariants(const Common& c, const std::string& top, const std::string& compare) {
  const FieldPtr F = Field::parse(c.q);
  Report r{"invariants"};
  r.parameters = common_params(c, F);
  r.parameters["top"] = top;
  const Matrix cm = resolve_top(top, c.n, F);
  const auto inv = interval_invariants(IntervalModel::build(cm, c.max_group_order, c.threads));
  r.results["top"] = format_matrix(cm);
  r.results["invariants"] = invariants_json(inv);
  if (!compare.empty()) {
    r.parameters["compare"] = compare;
    const Matrix other = resolve_top(compare, c.n, F);
    const auto inv2 =
        interval_invariants(IntervalModel::build(other, c.max_group_order, c.threads));
    r.results["compare_top"] = format_matrix(other);
    r.results["compare_invariants"] = invariants_json(inv2);
    r.results["invariants_equal"] = inv == inv2;
    r.results["incidence_det_equal"] = inv.incidence_det == inv2.incidence_det;
  }
  return r;
}

Report cmd_cactus(const Common& c, const std::string& types) {
  Report r{"cactus"};
  r.parameters = {{"n", c.n}, {"threads", c.threads}, {"seed", c.seed}};
  std::vector<std::vector<CycleType>> lists;
  if (types.empty()) {
    lists = admissible_type_lists(c.n, 3);
    r.parameters["types"] = "all";
  } else {
    lists.push_back(parse_type_list(types));
    r.parameters["types"] = types;
  }
  json rows = json::array();
  for (const auto& ts : lists) {
    const auto res = count_cactus(c.n, ts, c.threads);
    rows.push_back({{"types", format_type_list(ts)},
                    {"count", to_string(res.count)},
                    {"formula", to_string(res.formula)},
                    {"match", res.match}});
    r.compare(res.match);
  }
  if (types.empty()) {
    r.results["rows"] = rows;
  } else {
    r.results = rows[0];
  }
  return r;
}

Report cmd_verify(const Common& c, const std::string& suite, std::size_t samples,
                  std::uint64_t exhaustive_limit) {
  const FieldPtr F = Field::parse(c.q);
  Report r{"verify"};
  r.parameters = common_params(c, F);
  r.parameters["suite"] = suite;
  r.parameters["samples"] = samples;
  r.parameters["exhaustive_limit"] = exhaustive_limit;
  VerifyOptions o;
  o.n = c.n;
  o.field = F;
  o.seed = c.seed;
  o.samples = samples;
  o.exhaustive_limit = exhaustive_limit;
  o.max_group_order = c.max_group_order;
  o.threads = c.threads;
  json suites = json::array();
  for (const auto& rep : run_suite(suite, o)) {
    json props = json::array();
    for (const auto& p : rep.results)
      props.push_back({{"name", p.name}, {"passed", p.passed}, {"checked", p.checked},
                       {"detail", p.detail}});
    suites.push_back({{"suite", rep.suite}, {"passed", rep.all_passed()}, {"properties", props}});
    r.compare(rep.all_passed());
  }
  r.results["suites"] = suites;
  return r;
}

// ---------------------------------------------------------------------------

void print_human(const Report& r, std::ostream& os) {
  for (const auto& w : r.warnings) os << "warning: " << w << '\n';
  const json& res = r.results;
  if (r.command == "ranks") {
    os << "k  formula  fulman  census  match\n";
    for (const auto& row : res["ranks"])
      os << row["k"] << "  " << row["formula"].get<std::string>() << "  "
         << row["fulman"].get<std::string>() << "  "
         << (row.contains("census") ? row["census"].get<std::string>() : "-") << "  "
         << yes_no(row["match"]) << '\n';
  } else if (r.command == "flag") {
    os << "top " << res["top"].get<std::string>() << '\n'
       << "alpha  enumerated  formula  match\n";
    for (const auto& row : res["flags"])
      os << row["alpha"].get<std::string>() << "  " << row["enumerated"].get<std::string>() << "  "
         << (row.contains("formula") ? row["formula"].get<std::string>() : "-") << "  "
         << (row.contains("match") ? yes_no(row["match"]) : "-") << '\n';
  } else if (r.command == "factor") {
    os << "length " << res["length"] << " (rank(g-1) = " << res["rank_g_minus_1"] << ")\n";
    for (const auto& t : res["factorization"]["factors"]) os << "  " << t.get<std::string>() << '\n';
    for (const auto& [k, v] : res["checks"].items()) os << k << ": " << yes_no(v) << '\n';
  } else if (r.command == "cactus" && res.contains("rows")) {
    os << "types  count  formula  match\n";
    for (const auto& row : res["rows"])
      os << row["types"].get<std::string>() << "  " << row["count"].get<std::string>() << "  "
         << row["formula"].get<std::string>() << "  " << yes_no(row["match"]) << '\n';
  } else if (r.command == "verify") {
    for (const auto& s : res["suites"])
      for (const auto& p : s["properties"]) {
        os << (p["passed"].get<bool>() ? "PASS " : "FAIL ") << s["suite"].get<std::string>() << '/'
           << p["name"].get<std::string>() << " (" << p["checked"] << " checks)";
        const auto d = p["detail"].get<std::string>();
        if (!d.empty()) os << (p["passed"].get<bool>() ? ": " : ": counterexample ") << d;
        os << '\n';
      }
  } else {
    os << res.dump(2) << '\n';
  }
  os << (r.all_match ? "all comparisons match" : "MISMATCH") << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Absolute order on GL_n(F_q): reflection factorizations, intervals below "
               "Singer cycles, and formula checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ABSORD_VERSION);
  Common common;

  bool formula_only = false;
  auto* ranks = app.add_subcommand("ranks", "Rank sizes of GL_n(F_q) in absolute order");
  add_common(ranks, common);
  ranks->add_flag("--formula-only", formula_only, "Skip the brute-force census");

  std::string alpha, top = "singer", csv, compare, out, matrix, types, suite;
  bool all = false;
  auto* flag = app.add_subcommand("flag", "Flag f-vector of [e,c]");
  add_common(flag, common);
  flag->add_option("--alpha", alpha, "Composition, e.g. 1,2,1");
  flag->add_flag("--all", all, "All compositions of n");
  flag->add_option("--top", top, "singer or a matrix string");
  flag->add_option("--csv", csv, "Also write the table as CSV");

  auto* factor = app.add_subcommand("factor", "Minimal reflection factorization");
  add_common(factor, common, false);
  factor->add_option("matrix", matrix, "Matrix string, rows split by ';'")->required();

  auto* exp = app.add_subcommand("interval-export", "Write the interval [e,c] as JSON");
  add_common(exp, common);
  exp->add_option("--top", top, "singer or a matrix string");
  exp->add_option("--out", out, "Output file (default: inline in the report)");

  auto* mob = app.add_subcommand("mobius", "Moebius function mu(e,c)");
  add_common(mob, common);
  mob->add_option("--top", top, "singer or a matrix string");

  std::vector<std::string> pair;
  auto* wit = app.add_subcommand("witness", "Search [e,c] for a pair without a join");
  add_common(wit, common);
  wit->add_option("--top", top, "singer or a matrix string");
  wit->add_option("--pair", pair, "Two matrices whose minimal upper bounds to list")
      ->expected(2);

  auto* inv = app.add_subcommand("invariants", "Isomorphism invariants of [e,c]");
  add_common(inv, common);
  inv->add_option("--top", top, "singer or a matrix string");
  inv->add_option("--compare", compare, "Second top element to compare against");

  auto* cac = app.add_subcommand("cactus", "Additive factorizations of an n-cycle in S_n");
  add_common(cac, common);
  cac->add_option("--types", types, "Cycle types, e.g. 3,1|2,1,1 (default: all admissible)");

  std::size_t samples = 300;
  std::uint64_t exhaustive_limit = 100;
  auto* ver = app.add_subcommand("verify", "Run a property suite");
  add_common(ver, common);
  ver->add_option("suite", suite, "order-axioms, duality, bijection, qseries, cactus, mobius, all")
      ->required();
  ver->add_option("--samples", samples, "Samples per property when not exhaustive");
  ver->add_option("--exhaustive-limit", exhaustive_limit,
                  "Check groups up to this order exhaustively");

  CLI11_PARSE(app, argc, argv);

  const auto start = std::chrono::steady_clock::now();
  Report report;
  try {
    if (*ranks) report = cmd_ranks(common, formula_only);
    else if (*flag) report = cmd_flag(common, alpha, all, top, csv);
    else if (*factor) report = cmd_factor(common, matrix);
    else if (*exp) report = cmd_export(common, top, out);
    else if (*mob) report = cmd_mobius(common, top);
    else if (*wit) report = cmd_witness(common, top, pair);
    else if (*inv) report = cmd_invariants(common, top, compare);
    else if (*cac) report = cmd_cactus(common, types);
    else if (*ver) report = cmd_verify(common, suite, samples, exhaustive_limit);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (common.json_out) {
    json j{{"command", report.command},
           {"parameters", report.parameters},
           {"results", report.results},
           {"all_match", report.all_match},
           {"warnings", report.warnings},
           {"timing", {{"seconds", seconds}}},
           {"version", ABSORD_VERSION}};
    std::cout << j.dump(2) << '\n';
  } else {
    print_human(report, std::cout);
    std::cout << std::fixed << std::setprecision(3) << "time " << seconds << " s\n";
  }
  return report.all_match ? 0 : 1;
}
