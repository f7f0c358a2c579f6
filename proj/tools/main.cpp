#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wcg/catalog.hpp"
#include "wcg/commutator.hpp"
#include "wcg/io.hpp"
#include "wcg/sweep.hpp"

using namespace wcg;
using nlohmann::json;

namespace {

// Exit contract: 0 success, 2 unresolvable reference, 3 malformed file,
// 4 verification mismatch or unstable oracle run. CLI11 parse errors keep
// their own codes.
constexpr int kExitBadReference = 2;
constexpr int kExitBadFile = 3;
constexpr int kExitMismatch = 4;

struct CliError : std::runtime_error {
  int code;
  CliError(int c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

struct GlobalOptions {
  int depth = 12;
  int window = 2;
  std::string format = "json";
  std::string out;
  int jobs = 0;
  int max_order = 12;
  std::uint64_t seed = 0;

  OracleParams oracle_params() const {
    OracleParams p;
    p.depth = depth;
    p.window = window;
    return p;
  }
};

class Output {
public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw CliError(kExitBadFile, "cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
  std::ofstream file_;
};

GroupPtr resolve_group(Catalog& catalog, const std::string& label,
                       const std::string& file, int order_cap) {
  if (!file.empty()) {
    GroupPtr g;
    try {
      g = load_group_file(file, order_cap);
    } catch (const std::exception& e) {
      throw CliError(kExitBadFile, std::string("group file: ") + e.what());
    }
    if (!catalog.find_or_null(g->label())) catalog.add(g);
    return g;
  }
  GroupPtr g = catalog.find_or_null(label);
  if (!g) throw CliError(kExitBadReference, "no group named '" + label + "'");
  if (g->order() > order_cap)
    throw CliError(kExitBadReference, "group '" + label + "' exceeds --max-order");
  return g;
}

Subgroup resolve_subgroup(const GroupPtr& g, const std::string& token) {
  try {
    return parse_subgroup_token(g, token);
  } catch (const std::exception& e) {
    throw CliError(kExitBadReference,
                   "subgroup token '" + token + "': " + e.what());
  }
}

Homomorphism resolve_hom(const GroupPtr& d, const std::string& token,
                         const Catalog& catalog) {
  bool from_file = token.rfind("file:", 0) == 0;
  try {
    return parse_hom_token(d, token, catalog);
  } catch (const std::exception& e) {
    throw CliError(from_file ? kExitBadFile : kExitBadReference,
                   "homomorphism token '" + token + "': " + e.what());
  }
}

void emit_report(const CommutatorReport& report, const GlobalOptions& g,
                 std::ostream& os) {
  if (g.format == "csv")
    os << report_to_csv_row(report) << '\n';
  else
    os << report_to_json(report).dump() << '\n';
}

int run_catalog(const Catalog& catalog, const std::string& action,
                const std::string& label, const GlobalOptions& g) {
  Output out(g.out);
  std::ostream& os = out.stream();
  if (action == "list") {
    for (const auto& l : catalog.labels()) {
      GroupPtr grp = catalog.find(l);
      if (g.format == "csv")
        os << l << ',' << grp->order() << '\n';
      else
        os << json{{"label", l}, {"order", grp->order()}}.dump() << '\n';
    }
    return 0;
  }
  GroupPtr grp = catalog.find_or_null(label);
  if (!grp) throw CliError(kExitBadReference, "no group named '" + label + "'");
  json j;
  j["label"] = grp->label();
  j["order"] = grp->order();
  j["abelian"] = grp->is_abelian();
  std::vector<std::vector<int>> table(grp->order(), std::vector<int>(grp->order()));
  for (int a = 0; a < grp->order(); ++a)
    for (int b = 0; b < grp->order(); ++b) table[a][b] = grp->mul(a, b);
  j["table"] = table;
  json subs = json::array();
  for (const auto& h : all_subgroups(grp)) subs.push_back(h.members);
  j["subgroups"] = subs;
  os << j.dump(2) << '\n';
  return 0;
}

int run_commutator(Catalog& catalog, const std::string& label,
                   const std::string& file, const std::string& k_tok,
                   const std::string& l_tok, const std::string& m_tok,
                   bool with_oracle, const GlobalOptions& g) {
  GroupPtr grp = resolve_group(catalog, label, file, kDefaultOrderCap);
  Subgroup k = resolve_subgroup(grp, k_tok);
  Subgroup l = resolve_subgroup(grp, l_tok);
  std::vector<Subgroup> args{k, l};
  std::string subject = grp->label() + " [K, L]";
  Subgroup formula = Subgroup{};
  if (m_tok.empty()) {
    formula = higgins_binary(k, l);
  } else {
    args.push_back(resolve_subgroup(grp, m_tok));
    subject = grp->label() + " [K, L, M]";
    formula = higgins_ternary(k, l, args[2]);
  }

  CommutatorReport report;
  report.subject = subject;
  report.formula = formula;
  report.depth = g.depth;
  report.equal = true;
  report.stable = true;
  if (with_oracle) {
    OracleRun run = higgins_oracle(args, g.oracle_params());
    report.oracle = run.subgroup;
    report.equal = subgroups_equal(run.subgroup, formula);
    report.last_growth = run.last_growth;
    report.stable = run.stable;
  }
  Output out(g.out);
  emit_report(report, g, out.stream());
  if (with_oracle && (!report.equal || !report.stable)) return kExitMismatch;
  return 0;
}

int run_weighted(Catalog& catalog, const std::string& label,
                 const std::string& file, const std::string& x_tok,
                 const std::string& y_tok, const std::string& w_tok,
                 bool normal, bool formula_only, const GlobalOptions& g) {
  GroupPtr d = resolve_group(catalog, label, file, kDefaultOrderCap);
  Homomorphism x = resolve_hom(d, x_tok, catalog);
  Homomorphism y = resolve_hom(d, y_tok, catalog);
  Homomorphism w = resolve_hom(d, w_tok, catalog);
  WeightedCospan cospan(x, y, w);

  std::ostringstream subject;
  subject << d->label() << " x=" << x_tok << " y=" << y_tok << " w=" << w_tok;

  CommutatorReport report;
  if (formula_only) {
    report.subject = subject.str();
    report.formula = weighted_commutator(cospan);
    report.depth = g.depth;
    report.equal = true;
    report.stable = true;
  } else {
    report = verify_decomposition(cospan, g.oracle_params(), subject.str());
  }

  Output out(g.out);
  std::ostream& os = out.stream();
  if (g.format == "csv") {
    emit_report(report, g, os);
  } else {
    json j = report_to_json(report);
    j["commutes"] = report.formula.is_trivial();
    if (normal) j["normal_closure"] = weighted_normal_commutator(cospan).members;
    os << j.dump() << '\n';
  }
  if (!formula_only && (!report.equal || !report.stable)) return kExitMismatch;
  return 0;
}

int run_verify(const Catalog& catalog, const std::vector<std::string>& groups,
               const GlobalOptions& g) {
  CampaignConfig cfg;
  cfg.groups = groups;
  cfg.max_order = g.max_order;
  cfg.depth = g.depth;
  cfg.window = g.window;
  cfg.jobs = g.jobs;
  cfg.seed = g.seed;
  for (const auto& label : groups)
    if (!catalog.find_or_null(label))
      throw CliError(kExitBadReference, "no group named '" + label + "'");

  CampaignResult res = run_decomposition_campaign(catalog, cfg);

  Output out(g.out);
  std::ostream& os = out.stream();
  for (const auto& report : res.reports) emit_report(report, g, os);
  json summary = {{"instances", res.summary.instances},
                  {"mismatches", res.summary.mismatches},
                  {"unstable", res.summary.unstable},
                  {"huq_violations", res.summary.huq_violations},
                  {"vanishing_violations", res.summary.vanishing_violations},
                  {"weight_dependence_violations",
                   res.summary.weight_dependence_violations},
                  {"ok", res.summary.ok()}};
  if (g.format == "csv")
    os << "summary," << summary.dump() << '\n';
  else
    os << summary.dump() << '\n';
  return res.summary.ok() ? 0 : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted commutator calculator for finite groups"};
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--depth", g.depth, "oracle enumeration depth (syllables)")
      ->capture_default_str();
  app.add_option("--window", g.window, "stabilization window (lengths)")
      ->capture_default_str();
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--out", g.out, "write output to this file instead of stdout");
  app.add_option("--jobs", g.jobs, "worker threads (0 = all cores)")
      ->capture_default_str();
  app.add_option("--max-order", g.max_order, "largest group order to sweep")
      ->capture_default_str();
  app.add_option("--seed", g.seed, "seed reserved for sampled campaigns")
      ->capture_default_str();

  // catalog
  auto* cmd_catalog = app.add_subcommand("catalog", "list or inspect built-in groups");
  cmd_catalog->fallthrough();
  std::string catalog_action;
  std::string catalog_label;
  cmd_catalog->add_option("action", catalog_action, "list | show")
      ->required()
      ->check(CLI::IsMember({"list", "show"}));
  cmd_catalog->add_option("label", catalog_label, "group label (for show)");

  // commutator
  auto* cmd_comm = app.add_subcommand(
      "commutator", "Higgins binary/ternary commutator of subgroups");
  cmd_comm->fallthrough();
  std::string comm_group, comm_file, comm_k, comm_l, comm_m;
  bool comm_oracle = false;
  cmd_comm->add_option("--group", comm_group, "catalog group label");
  cmd_comm->add_option("--group-file", comm_file, "group description JSON file");
  cmd_comm->add_option("--k", comm_k, "first subgroup token")->required();
  cmd_comm->add_option("--l", comm_l, "second subgroup token")->required();
  cmd_comm->add_option("--m", comm_m, "third subgroup token (ternary)");
  cmd_comm->add_flag("--oracle", comm_oracle,
                     "also run the enumeration oracle and compare");

  // weighted
  auto* cmd_weighted = app.add_subcommand(
      "weighted", "weighted subobject commutator of a cospan over a weight");
  cmd_weighted->fallthrough();
  std::string w_group, w_file, w_x, w_y, w_w;
  bool w_normal = false;
  bool w_formula_only = false;
  cmd_weighted->add_option("--group", w_group, "codomain group label");
  cmd_weighted->add_option("--group-file", w_file, "codomain description file");
  cmd_weighted->add_option("--x", w_x, "homomorphism token for x")->required();
  cmd_weighted->add_option("--y", w_y, "homomorphism token for y")->required();
  cmd_weighted->add_option("--w", w_w, "homomorphism token for the weight")
      ->required();
  cmd_weighted->add_flag("--normal", w_normal,
                         "also report the normal closure of the commutator");
  cmd_weighted->add_flag("--formula-only", w_formula_only,
                         "skip the enumeration oracle");

  // verify
  auto* cmd_verify = app.add_subcommand(
      "verify", "sweep subgroup triples and check the decomposition");
  cmd_verify->fallthrough();
  std::vector<std::string> verify_groups;
  cmd_verify->add_option("--groups", verify_groups,
                         "restrict to these catalog labels")
      ->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    Catalog catalog = Catalog::builtins();
    if (cmd_catalog->parsed()) {
      if (catalog_action == "show" && catalog_label.empty())
        throw CliError(kExitBadReference, "catalog show needs a group label");
      return run_catalog(catalog, catalog_action, catalog_label, g);
    }
    if (cmd_comm->parsed()) {
      if (comm_group.empty() && comm_file.empty())
        throw CliError(kExitBadReference, "need --group or --group-file");
      return run_commutator(catalog, comm_group, comm_file, comm_k, comm_l,
                            comm_m, comm_oracle, g);
    }
    if (cmd_weighted->parsed()) {
      if (w_group.empty() && w_file.empty())
        throw CliError(kExitBadReference, "need --group or --group-file");
      return run_weighted(catalog, w_group, w_file, w_x, w_y, w_w, w_normal,
                          w_formula_only, g);
    }
    return run_verify(catalog, verify_groups, g);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
