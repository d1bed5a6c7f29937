// Command-line surface for the syllogistic toolkit. Exit codes:
//   0  sat / entailed / derivable / all checks pass
//   1  unsat / not entailed / underivable / a check fails
//   2  usage, parse, or input error
//   3  resource limit exhausted
// Verdicts and requested artifacts go to stdout; diagnostics to stderr.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "nsyl/nogo.hpp"
#include "nsyl/parser.hpp"
#include "nsyl/proof.hpp"
#include "nsyl/solver.hpp"
#include "nsyl/syntax.hpp"

namespace {

using nsyl::Bound;
using nsyl::Engine;
using nsyl::Family;
using nsyl::FormulaSet;
using nsyl::RuleSet;
using nsyl::Verdict;

Engine engine_from(const std::string& name) {
  if (name == "brute") return Engine::Brute;
  if (name == "refute") return Engine::Refute;
  return Engine::Witness;
}

Family family_from(const std::string& name) {
  return name == "s" ? Family::S : Family::SDagger;
}

std::string fixed2(double v) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(2) << v;
  return out.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw nsyl::InputError("cannot write " + path.string());
}

// Either a comma-separated union of built-in set names (darii_ferio,
// transfer_<digit>) or a path to a rule file.
RuleSet resolve_rules(const std::string& spec, Bound z) {
  auto lookup = [&](const std::string& name) -> std::optional<RuleSet> {
    if (name == "darii_ferio") return nsyl::builtin_rulesets(z).at("darii_ferio");
    if (name.starts_with("transfer_")) {
      const std::string tail = name.substr(9);
      if (!tail.empty() &&
          tail.find_first_not_of("0123456789") == std::string::npos)
        return nsyl::builtin_rulesets(std::stoull(tail)).at("transfer_z");
    }
    return std::nullopt;
  };

  if (spec.find(',') == std::string::npos && !lookup(spec))
    return RuleSet{nsyl::load_rules(spec).rules};

  RuleSet out;
  std::istringstream parts(spec);
  std::string name;
  while (std::getline(parts, name, ',')) {
    auto found = lookup(name);
    if (!found)
      throw nsyl::InputError("unknown built-in rule set '" + name + "'");
    out.rules.insert(out.rules.end(), found->rules.begin(), found->rules.end());
  }
  if (out.rules.empty()) throw nsyl::InputError("empty rule specification");
  return out;
}

struct SatOpts {
  std::string file;
  Bound z = 1;
  std::string engine = "witness";
  std::string model_out;
};

int run_sat(const SatOpts& o) {
  const FormulaSet phi = nsyl::load_theory(o.file).as_set();
  if (o.engine == "refute") {
    const auto rr = nsyl::refute_witness_chain(phi);
    if (!rr.refuted) {
      std::cout << "unknown\n";
      return 0;
    }
    std::cout << "unsat\n";
    for (const auto& step : rr.trace) std::cout << step.detail << "\n";
    return 1;
  }
  const auto result = nsyl::satisfiable(phi, o.z, engine_from(o.engine));
  if (result.verdict == Verdict::Sat) {
    std::cout << "sat\n";
    if (!o.model_out.empty())
      write_file(o.model_out, nsyl::render_structure(result.model->expand()));
    return 0;
  }
  std::cout << "unsat\n";
  return 1;
}

struct EntailOpts {
  std::string file;
  std::string conclusion;
  Bound z = 1;
};

int run_entail(const EntailOpts& o) {
  const FormulaSet premises = nsyl::load_theory(o.file).as_set();
  const nsyl::Formula psi = nsyl::parse_formula(o.conclusion);
  if (nsyl::entails(premises, psi, o.z)) {
    std::cout << "entailed\n";
    return 0;
  }
  std::cout << "not entailed\n";
  return 1;
}

struct DeriveOpts {
  std::string file;
  std::string goal;
  std::string rules;
  bool indirect = false;
  std::uint64_t max_nodes = nsyl::DeriveLimits{}.max_contexts;
};

int run_derive(const DeriveOpts& o) {
  const FormulaSet theta = nsyl::load_theory(o.file).as_set();
  const nsyl::Formula goal = nsyl::parse_formula(o.goal);
  // Built-in transfer sets carry their bound in the name; darii_ferio is
  // bound-independent, so a fixed cap resolves every built-in spelling.
  const RuleSet x = resolve_rules(o.rules, 1);
  const auto tree =
      o.indirect
          ? nsyl::derive_indirect(theta, x, goal, {.max_contexts = o.max_nodes})
          : nsyl::derive_direct(theta, x, goal);
  if (!tree) {
    std::cout << "underivable\n";
    return 1;
  }
  std::cout << nsyl::render_derivation(*tree);
  return 0;
}

struct RulesCheckOpts {
  std::string file;
  Bound z = 1;
  std::string json_path;
};

int run_rules_check(const RulesCheckOpts& o) {
  const auto doc = nsyl::load_rules(o.file);
  std::ostream& txt = o.json_path == "-" ? std::cerr : std::cout;

  nlohmann::json report{{"schema", 1},
                        {"command", "rules check"},
                        {"z", o.z},
                        {"rules", nlohmann::json::array()}};
  bool all_sound = true;
  for (const auto& rule : doc.rules) {
    const auto rs = nsyl::check_rule_sound(rule, o.z);
    nlohmann::json entry{{"name", rule.name}, {"sound", rs.sound}};
    if (rs.sound) {
      txt << rule.name << ": sound\n";
    } else {
      all_sound = false;
      const std::string model = nsyl::render_structure(*rs.countermodel);
      entry["countermodel"] = model;
      txt << rule.name << ": unsound, countermodel:\n" << model;
    }
    report["rules"].push_back(std::move(entry));
  }
  report["all_sound"] = all_sound;

  if (o.json_path == "-")
    std::cout << report.dump(2) << "\n";
  else if (!o.json_path.empty())
    write_file(o.json_path, report.dump(2) + "\n");
  return all_sound ? 0 : 1;
}

struct NogoGenerateOpts {
  Bound n = 4;
  Bound z = 1;
  std::string lang = "sd";
  std::optional<Bound> t;
  std::string out_dir;
};

int run_nogo_generate(const NogoGenerateOpts& o) {
  const Family lang = family_from(o.lang);
  std::filesystem::create_directories(o.out_dir);
  const std::filesystem::path dir(o.out_dir);

  auto emit = [&](const std::filesystem::path& path, const std::string& text) {
    write_file(path, text);
    std::cout << path.string() << "\n";
  };

  const std::string nz = "_n" + std::to_string(o.n) + "_z" + std::to_string(o.z);
  emit(dir / ("gamma" + nz + "_" + o.lang + ".theory"),
       nsyl::render_theory(nsyl::nogo::gamma(o.n, o.z, lang)));
  if (o.t) {
    const std::string t = std::to_string(*o.t);
    emit(dir / ("gamma_t" + t + nz + "_" + o.lang + ".theory"),
         nsyl::render_theory(nsyl::nogo::gamma_t(o.n, *o.t, o.z, lang)));
    emit(dir / ("model_t" + t + nz + ".structure"),
         nsyl::render_structure(nsyl::nogo::witness_model(o.n, *o.t, o.z)));
  }
  return 0;
}

struct NogoVerifyOpts {
  Bound n = 0;
  bool n_given = false;
  Bound z = 1;
  std::string lang = "sd";
  std::vector<int> claims;
  bool experiment = false;
  std::string rules;
  std::string json_path;
};

int run_nogo_verify(const NogoVerifyOpts& o) {
  const Family lang = family_from(o.lang);
  std::ostream& txt = o.json_path == "-" ? std::cerr : std::cout;

  nlohmann::json report{{"schema", 1},
                        {"command", "nogo verify"},
                        {"z", o.z},
                        {"lang", o.lang}};
  auto to_json = [](const nsyl::nogo::ClaimReport& rep) {
    return nlohmann::json{{"id", rep.id},
                          {"title", rep.title},
                          {"verdict", rep.verdict},
                          {"seconds", rep.seconds},
                          {"details", rep.details}};
  };
  auto print = [&txt](const std::string& head,
                      const nsyl::nogo::ClaimReport& rep) {
    txt << head << " " << rep.title << ": " << (rep.verdict ? "PASS" : "FAIL")
        << " (" << fixed2(rep.seconds) << "s)\n";
    for (const auto& line : rep.details) txt << "    " << line << "\n";
  };

  bool all_pass = true;
  if (o.experiment) {
    const RuleSet x = resolve_rules(o.rules, o.z);
    const auto rep = nsyl::nogo::incompleteness_experiment(x, o.z, lang);
    print("[experiment]", rep);
    report["experiment"] = to_json(rep);
    all_pass = rep.verdict;
  } else {
    if (!o.n_given)
      throw nsyl::InputError("--n is required with --claims");
    report["n"] = o.n;
    report["claims"] = nlohmann::json::array();
    for (int id : o.claims) {
      const auto rep = nsyl::nogo::check_claim(o.n, o.z, lang, id);
      print("[claim " + std::to_string(id) + "]", rep);
      report["claims"].push_back(to_json(rep));
      all_pass = all_pass && rep.verdict;
    }
  }
  report["all_pass"] = all_pass;

  if (o.json_path == "-")
    std::cout << report.dump(2) << "\n";
  else if (!o.json_path.empty())
    write_file(o.json_path, report.dump(2) + "\n");
  return all_pass ? 0 : 1;
}

struct ReduceOpts {
  std::string input;
  std::string output;
};

int run_reduce_3col(const ReduceOpts& o) {
  const nsyl::Graph g = nsyl::load_graph(o.input);
  write_file(o.output, nsyl::render_theory(nsyl::reduce_3col(g)));
  std::cout << o.output << "\n";
  return 0;
}

int run_reduce_t_to_s1(const ReduceOpts& o) {
  const FormulaSet phi = nsyl::load_theory(o.input).as_set();
  write_file(o.output, nsyl::render_theory(nsyl::reduce_t_to_s1(phi)));
  std::cout << o.output << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical syllogistic fragments: solving, proving, and the "
               "no-go construction"};
  app.require_subcommand(1);
  int code = 0;

  SatOpts sat;
  auto* sat_cmd = app.add_subcommand("sat", "decide satisfiability of a theory");
  sat_cmd->add_option("file", sat.file, "theory file")->required();
  sat_cmd->add_option("--z", sat.z, "bound cap of the language")->required();
  sat_cmd->add_option("--engine", sat.engine, "search engine")
      ->check(CLI::IsMember({"brute", "witness", "refute"}));
  sat_cmd->add_option("--model-out", sat.model_out,
                      "write a satisfying structure here");
  sat_cmd->callback([&] { code = run_sat(sat); });

  EntailOpts entail;
  auto* entail_cmd =
      app.add_subcommand("entail", "decide whether premises entail a formula");
  entail_cmd->add_option("file", entail.file, "premise theory file")->required();
  entail_cmd->add_option("--conclusion", entail.conclusion, "candidate formula")
      ->required();
  entail_cmd->add_option("--z", entail.z, "bound cap of the language")
      ->required();
  entail_cmd->callback([&] { code = run_entail(entail); });

  DeriveOpts derive;
  auto* derive_cmd =
      app.add_subcommand("derive", "search for a derivation under a rule set");
  derive_cmd->add_option("file", derive.file, "premise theory file")->required();
  derive_cmd->add_option("--goal", derive.goal, "formula to derive")->required();
  derive_cmd
      ->add_option("--rules", derive.rules,
                   "rule file, or built-in names joined by commas "
                   "(darii_ferio, transfer_<z>)")
      ->required();
  derive_cmd->add_flag("--indirect", derive.indirect,
                       "allow reductio ad absurdum");
  derive_cmd->add_option("--max-nodes", derive.max_nodes,
                         "context budget for the indirect search");
  derive_cmd->callback([&] { code = run_derive(derive); });

  auto* rules_cmd = app.add_subcommand("rules", "operations on rule files");
  rules_cmd->require_subcommand(1);
  RulesCheckOpts rules_check;
  auto* rules_check_cmd =
      rules_cmd->add_subcommand("check", "verify soundness of every rule");
  rules_check_cmd->add_option("file", rules_check.file, "rule file")->required();
  rules_check_cmd->add_option("--z", rules_check.z, "bound cap of the language")
      ->required();
  rules_check_cmd->add_option(
      "--json", rules_check.json_path,
      "write a JSON report here ('-' for stdout, text moves to stderr)");
  rules_check_cmd->callback([&] { code = run_rules_check(rules_check); });

  auto* nogo_cmd =
      app.add_subcommand("nogo", "the incompleteness counterexample family");
  nogo_cmd->require_subcommand(1);

  NogoGenerateOpts gen;
  auto* gen_cmd = nogo_cmd->add_subcommand(
      "generate", "write the family, a variant, and its model to files");
  gen_cmd->add_option("--n", gen.n, "family size parameter (>= 4)")->required();
  gen_cmd->add_option("--z", gen.z, "bound cap of the language")->required();
  gen_cmd->add_option("--lang", gen.lang, "language family")
      ->required()
      ->check(CLI::IsMember({"s", "sd"}));
  Bound gen_t = 0;
  auto* gen_t_opt = gen_cmd->add_option(
      "--t", gen_t, "also write the variant at this column and its model");
  gen_cmd->add_option("-o,--out", gen.out_dir, "output directory")->required();
  gen_cmd->callback([&] {
    if (*gen_t_opt) gen.t = gen_t;
    code = run_nogo_generate(gen);
  });

  NogoVerifyOpts verify;
  auto* verify_cmd = nogo_cmd->add_subcommand(
      "verify", "machine-check the family claims or run the experiment");
  auto* verify_n_opt =
      verify_cmd->add_option("--n", verify.n, "family size parameter (>= 4)");
  verify_cmd->add_option("--z", verify.z, "bound cap of the language")
      ->required();
  verify_cmd->add_option("--lang", verify.lang, "language family")
      ->required()
      ->check(CLI::IsMember({"s", "sd"}));
  auto* claims_opt =
      verify_cmd->add_option("--claims", verify.claims, "claim ids to check")
          ->delimiter(',');
  auto* exp_flag = verify_cmd->add_flag(
      "--experiment", verify.experiment,
      "show a sound rule set incomplete (picks its own n from rule width)");
  verify_cmd->add_option("--rules", verify.rules,
                         "rule set for --experiment (file or built-in names)");
  claims_opt->excludes(exp_flag);
  verify_cmd->add_option(
      "--json", verify.json_path,
      "write a JSON report here ('-' for stdout, text moves to stderr)");
  verify_cmd->callback([&] {
    verify.n_given = static_cast<bool>(*verify_n_opt);
    if (!verify.experiment && verify.claims.empty())
      throw nsyl::InputError("choose --claims or --experiment");
    if (verify.experiment && verify.rules.empty())
      throw nsyl::InputError("--experiment requires --rules");
    code = run_nogo_verify(verify);
  });

  auto* reduce_cmd =
      app.add_subcommand("reduce", "hardness reductions into the fragments");
  reduce_cmd->require_subcommand(1);

  ReduceOpts col;
  auto* col_cmd = reduce_cmd->add_subcommand(
      "3col", "encode 3-colourability of a graph as a theory");
  col_cmd->add_option("graph", col.input, "DIMACS-like graph file")->required();
  col_cmd->add_option("-o,--out", col.output, "output theory file")->required();
  col_cmd->callback([&] { code = run_reduce_3col(col); });

  ReduceOpts tred;
  auto* tred_cmd = reduce_cmd->add_subcommand(
      "t-to-s1", "expand triple-cap formulas into the plain z=1 fragment");
  tred_cmd->add_option("file", tred.input, "theory file")->required();
  tred_cmd->add_option("-o,--out", tred.output, "output theory file")
      ->required();
  tred_cmd->callback([&] { code = run_reduce_t_to_s1(tred); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const nsyl::nogo::UnsoundRuleError& e) {
    std::cerr << "error: " << e.what() << "\ncountermodel:\n"
              << nsyl::render_structure(e.countermodel());
    return 2;
  } catch (const nsyl::ResourceLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const nsyl::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return code;
}
