// dioph: verification campaigns, equation assembly, decompositions and
// gadget witnesses from the command line.

#include "dioph/campaign.hpp"
#include "dioph/gadgets.hpp"
#include "dioph/lucas.hpp"
#include "dioph/poly_parse.hpp"
#include "dioph/polygonal.hpp"
#include "dioph/reducer.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using nlohmann::json;
using namespace dioph;

namespace {

enum Exit { kPass = 0, kFailure = 1, kUsage = 2, kBudget = 3 };

void write_json(const json& doc, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << doc.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write '" + path + "'");
  out << doc.dump(2) << "\n";
}

std::uint64_t default_budget() {
  if (const char* env = std::getenv("DIOPH_BUDGET")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw DomainError("DIOPH_BUDGET must be a nonnegative integer");
    }
  }
  return 0;
}

int run_verify(const std::string& target, const std::vector<std::string>& ranges, bool oracle,
               std::optional<std::uint64_t> budget, std::uint64_t seed, const std::string& json_path, bool list) {
  if (list) {
    for (const auto& t : campaign::targets()) {
      std::cout << t.name << "  " << t.summary;
      for (const auto& [k, r] : t.defaults) std::cout << "  " << k << "=" << r.lo << ".." << r.hi;
      std::cout << "\n";
    }
    return kPass;
  }
  if (target.empty()) throw DomainError("verify needs a target (see --list)");
  campaign::CampaignSpec spec;
  spec.target = target;
  spec.oracle = oracle;
  spec.seed = seed;
  spec.budget = budget ? *budget : default_budget();
  for (const auto& text : ranges) {
    auto [key, r] = campaign::parse_range(text);
    spec.ranges[key] = r;
  }
  const auto report = campaign::run_campaign(spec);
  std::cout << report.target << ": " << report.cases << " cases, " << report.failed << " failed, "
            << report.wall_time_s << " s\n";
  for (const auto& ce : report.counterexamples) std::cout << "  counterexample " << ce.dump() << "\n";
  if (!json_path.empty()) write_json(campaign::to_json(report), json_path);
  return report.ok() ? kPass : kFailure;
}

int run_reduce(const std::string& file, const std::string& form, const std::string& out, unsigned long prime,
               const std::string& parameter, bool assert_positive, std::size_t bits, int points) {
  std::ifstream in(file);
  if (!in) throw DomainError("cannot read '" + file + "'");
  std::ostringstream text;
  for (std::string line; std::getline(in, line);) {
    const auto hash = line.find('#');
    text << line.substr(0, hash) << " ";
  }
  const TermPoly P = parse_poly(text.str());
  auto ctx = reducer::build_context(P, prime, parameter, assert_positive);
  ctx.max_bits = bits;

  reducer::Assembly assembly;
  reducer::FormKind kind;
  if (form == "int-9") {
    assembly = reducer::assemble_nonneg_form(ctx);
    kind = reducer::FormKind::Nonneg;
  } else if (form == "int-11-squares") {
    assembly = reducer::to_squares_form(reducer::assemble_nonneg_form(ctx));
    kind = reducer::FormKind::Squares;
  } else if (form == "int-11-tung") {
    assembly = reducer::to_tung_form(reducer::assemble_nonzero_form(ctx));
    kind = reducer::FormKind::Tung;
  } else {
    throw DomainError("unknown form '" + form + "'");
  }

  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<long> small(-2, 2);
  int agree = 0;
  for (int i = 0; i < points; ++i) {
    Assignment at;
    for (const auto& v : assembly.variables) at[v] = small(rng);
    at[parameter] = std::uniform_int_distribution<long>(0, 3)(rng);
    if (assembly.eval(at) == reducer::direct_eval(ctx, kind, at)) ++agree;
  }

  std::vector<std::string> unknowns;
  for (const auto& v : assembly.variables) {
    if (v != parameter) unknowns.push_back(v);
  }
  json manifest = {
      {"form", form},
      {"prime", prime},
      {"parameter", parameter},
      {"input", serialize_poly(ctx.input)},
      {"normalized", serialize_poly(ctx.poly)},
      {"wrapped", ctx.wrapped},
      {"variables", assembly.variables},
      {"unknowns", unknowns},
      {"unknown_count", unknowns.size()},
      {"node_count", assembly.dag.reachable_count(assembly.root)},
      {"constants",
       {{"delta", ctx.delta}, {"nu", ctx.nu}, {"L", to_string(ctx.L)}, {"alpha", ctx.alpha}, {"beta", to_string(ctx.beta)}}},
      {"spot_check", {{"points", points}, {"agree", agree}, {"seed", 12345}}},
  };
  write_json({{"manifest", manifest}, {"dag", assembly.dag.to_json(assembly.root)}}, out);
  std::cerr << form << ": " << unknowns.size() << " unknowns, " << manifest["node_count"] << " nodes, dual check "
            << agree << "/" << points << "\n";
  return agree == points ? kPass : kFailure;
}

int run_decompose(const std::string& n_text, const std::string& shape_text, const std::string& out) {
  const BigInt n = big_from_string(n_text);
  const auto shape = polygonal::parse_shape(shape_text);
  const auto d = polygonal::decompose(n, shape);
  json args = json::array();
  for (const auto& a : d.args) args.push_back(to_string(a));
  write_json({{"n", to_string(n)}, {"shape", polygonal::shape_name(shape)}, {"delta", d.delta}, {"args", args}}, out);
  return kPass;
}

int run_witness(const std::string& kind, const std::string& arg) {
  const BigInt m = big_from_string(arg);
  json doc = {{"kind", kind}, {"input", to_string(m)}};
  if (kind == "nonneg") {
    const auto w = gadgets::nonneg_witness(m);
    doc["x"] = to_string(w.x), doc["y"] = to_string(w.y), doc["z"] = to_string(w.z);
  } else if (kind == "nonzero") {
    const auto w = gadgets::nonzero_witness(m);
    doc["x"] = to_string(w.x), doc["y"] = to_string(w.y);
  } else if (kind == "positivity") {
    const auto x = gadgets::positivity_witness(m);
    doc["x"] = x ? json(to_string(*x)) : json(nullptr);
  } else if (kind == "pell") {
    const auto s = lucas::pell_fundamental(m);
    doc["y"] = to_string(s.y), doc["z"] = to_string(s.z);
  } else {
    throw DomainError("unknown witness kind '" + kind + "'");
  }
  std::cout << doc.dump(2) << "\n";
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diophantine reduction toolkit"};
  app.set_version_flag("--version", std::string(campaign::kVersion));
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "run a verification campaign");
  std::string target, json_path;
  std::vector<std::string> ranges;
  bool oracle = false, list = false;
  std::optional<std::uint64_t> budget;
  std::uint64_t seed = 1;
  verify->add_option("target", target, "campaign target");
  verify->add_option("--range", ranges, "parameter box, key=lo..hi (repeatable)");
  verify->add_flag("--oracle", oracle, "also run the slow independent oracles");
  verify->add_option("--budget", budget, "maximum number of cases (default: DIOPH_BUDGET or unlimited)");
  verify->add_option("--seed", seed, "random seed");
  verify->add_option("--json", json_path, "write the report here");
  verify->add_flag("--list", list, "list targets and default ranges");

  auto* reduce = app.add_subcommand("reduce", "assemble the single equation for a represented set");
  std::string file, form = "int-9", out = "-", parameter = "a";
  unsigned long prime = 2;
  bool assert_positive = false;
  std::size_t bits = reducer::kDefaultBitBudget;
  int points = 5;
  reduce->add_option("file", file, "polynomial file")->required();
  reduce->add_option("--form", form, "int-9, int-11-squares or int-11-tung");
  reduce->add_option("--out", out, "output path (default stdout)");
  reduce->add_option("--prime", prime, "prime p");
  reduce->add_option("--parameter", parameter, "parameter variable");
  reduce->add_flag("--assert-positive", assert_positive, "skip the wrap, P(a, 0, ..., 0) > 0 is asserted");
  reduce->add_option("--bits", bits, "bit budget for instance values");
  reduce->add_option("--points", points, "dual-evaluator spot checks");

  auto* decompose = app.add_subcommand("decompose", "write n in a polygonal shape");
  std::string n_text, shape = "diff-squares", decompose_out = "-";
  decompose->add_option("n", n_text, "integer")->required()->allow_extra_args(false);
  decompose->add_option("--shape", shape, "diff-squares, diff-octagonal, two-sq-plus-2sq, octa-two-plus-2, "
                                          "three-triangular, three-pentagonal, four-octagonal");
  decompose->add_option("--json", decompose_out, "output path (default stdout)");

  auto* witness = app.add_subcommand("witness", "witness for a small gadget");
  std::string witness_kind, witness_arg;
  witness->add_option("kind", witness_kind, "nonneg, nonzero, positivity or pell")->required();
  witness->add_option("value", witness_arg, "integer argument")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*verify) return run_verify(target, ranges, oracle, budget, seed, json_path, list);
    if (*reduce) return run_reduce(file, form, out, prime, parameter, assert_positive, bits, points);
    if (*decompose) return run_decompose(n_text, shape, decompose_out);
    if (*witness) return run_witness(witness_kind, witness_arg);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}
