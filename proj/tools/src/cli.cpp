#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hsmc/bisim.hpp"
#include "hsmc/checker.hpp"
#include "hsmc/error.hpp"
#include "hsmc/formula.hpp"
#include "hsmc/kripke.hpp"
#include "hsmc/oracle.hpp"
#include "hsmc/summary.hpp"
#include "hsmc/tiling.hpp"

namespace hsmc::cli {

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Lines with '#' comments and surrounding blanks removed; empty lines dropped.
std::vector<std::string> content_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(b, e - b + 1));
  }
  return out;
}

struct CheckOptions {
  std::string model;
  std::string formula;
  std::string mode = "checker";
  std::optional<std::size_t> max_trace;
  bool stats = false;
  bool witness = false;
  bool json = false;
};

int cmd_check(const CheckOptions& o, std::ostream& out) {
  const KripkeStructure k = parse_model(read_file(o.model));
  std::string ftext;
  for (const auto& l : content_lines(read_file(o.formula))) ftext += l + " ";
  const HsFormula phi = parse_formula(ftext);

  Verdict v;
  if (o.mode == "oracle") {
    if (!o.max_trace) throw UsageError("oracle mode requires --max-trace");
    Oracle oracle(k, *o.max_trace);
    const auto cex = oracle.counterexample(phi);
    v.satisfied = !cex;
    v.trace = cex;
    v.complete = false;
  } else {
    CheckerConfig cfg;
    cfg.max_cert_len = o.max_trace;
    cfg.collect_stats = o.stats || o.json;
    cfg.witness = o.witness;
    v = model_check(k, phi, cfg);
  }

  const bool show_trace = v.trace && (!v.satisfied || o.witness);
  if (o.json) {
    nlohmann::json j;
    j["format_version"] = kFormatVersion;
    j["result"] = v.satisfied ? "SAT" : "UNSAT";
    j["complete"] = v.complete;
    j["mode"] = o.mode;
    if (o.max_trace) j["max_trace"] = *o.max_trace;
    nlohmann::json trace = nullptr;
    if (show_trace) {
      trace = nlohmann::json::array();
      for (StateId s : v.trace->steps) trace.push_back(k.state_name(s));
    }
    j["witness"] = v.satisfied ? trace : nlohmann::json(nullptr);
    j["counterexample"] = v.satisfied ? nlohmann::json(nullptr) : trace;
    j["stats"] = {{"certificates_explored", v.stats.certificates_explored},
                  {"contractions", v.stats.contractions},
                  {"mode_switches", v.stats.mode_switches}};
    out << j.dump() << "\n";
  } else {
    out << "RESULT: " << (v.satisfied ? "SAT" : "UNSAT") << "\n";
    out << "COMPLETE: " << (v.complete ? "yes" : "no") << "\n";
    if (show_trace) out << (v.satisfied ? "WITNESS: " : "COUNTEREXAMPLE: ") << k.format_trace(*v.trace) << "\n";
    if (o.stats) {
      out << "STATS:\n";
      out << "  certificates_explored: " << v.stats.certificates_explored << "\n";
      out << "  contractions: " << v.stats.contractions << "\n";
      out << "  mode_switches: " << v.stats.mode_switches << "\n";
      out << "  obligations: " << v.stats.obligations << "\n";
      out << "  summaries: " << v.stats.summaries << "\n";
    }
  }
  return v.satisfied ? kExitSat : kExitUnsat;
}

struct ContractOptions {
  std::string model;
  std::string spec;
  std::string trace;
  std::size_t h = 0;
};

int cmd_contract(const ContractOptions& o, std::ostream& out) {
  const KripkeStructure k = parse_model(read_file(o.model));
  std::vector<RegExpr> exprs;
  for (const auto& l : content_lines(read_file(o.spec))) exprs.push_back(parse_regex(l));
  if (exprs.empty()) throw UsageError("spec file lists no regex");
  const SpecSet spec(std::move(exprs), k.props());
  const Trace rho = k.parse_trace(o.trace);
  k.require_trace(rho);

  SummaryTable table(k, spec);
  const Trace c = contract(table, rho, o.h);
  const bool same = sampling_ids(table, rho, o.h) == sampling_ids(table, c, o.h);
  out << "CONTRACTED: " << k.format_trace(c) << "\n";
  out << "LENGTH: " << rho.size() << " -> " << c.size() << "\n";
  out << "SAMPLING_WORD_EQUAL: " << (same ? "yes" : "no") << "\n";
  return 0;
}

struct GenTilingOptions {
  std::string instance;
  std::string out;
};

int cmd_gen_tiling(const GenTilingOptions& o, std::ostream& out) {
  const TilingInstance inst = parse_tiling_instance(read_file(o.instance));
  const KripkeStructure k = gen_kripke(inst);
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + o.out + "'");
  f << serialize_model(k);
  if (!f.flush()) throw UsageError("cannot write '" + o.out + "'");
  out << "WROTE: " << o.out << " (" << k.num_states() << " states)\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Model checking of interval temporal logic over finite Kripke structures", "hs-mc"};
  app.require_subcommand(1);

  CheckOptions check;
  auto* c = app.add_subcommand("check", "decide whether every initial trace satisfies a formula");
  c->add_option("--model", check.model, "model file")->required();
  c->add_option("--formula", check.formula, "formula file")->required();
  c->add_option("--mode", check.mode, "checker or oracle")->check(CLI::IsMember({"checker", "oracle"}));
  c->add_option("--max-trace", check.max_trace, "bound on trace length")->check(CLI::PositiveNumber);
  c->add_flag("--stats", check.stats, "print search statistics");
  c->add_flag("--witness", check.witness, "print a satisfying initial certificate");
  c->add_flag("--json", check.json, "emit one JSON object");

  ContractOptions contract_opts;
  auto* ct = app.add_subcommand("contract", "contract a trace preserving its h-sampling word");
  ct->set_help_flag("--help", "print this help message and exit");
  ct->add_option("--model", contract_opts.model, "model file")->required();
  ct->add_option("--spec", contract_opts.spec, "regexes, one per line")->required();
  ct->add_option("--trace", contract_opts.trace, "space-separated states")->required();
  ct->add_option("--h", contract_opts.h, "prefix depth")->required();

  GenTilingOptions tiling;
  auto* gt = app.add_subcommand("gen-tiling", "write the Kripke structure of a tiling instance");
  gt->add_option("--instance", tiling.instance, "instance file")->required();
  gt->add_option("--out", tiling.out, "output model file")->required();

  std::vector<std::string> reversed_args(args.rbegin(), args.rend());
  try {
    app.parse(reversed_args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (c->parsed()) return cmd_check(check, out);
    if (ct->parsed()) return cmd_contract(contract_opts, out);
    return cmd_gen_tiling(tiling, out);
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace hsmc::cli
