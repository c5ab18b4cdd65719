// epsforge: check, translate and transform sequent proofs with epsilon terms.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "epsforge/epsilon_theorem.hpp"
#include "epsforge/errors.hpp"
#include "epsforge/kernel.hpp"
#include "epsforge/proof_io.hpp"
#include "epsforge/transforms.hpp"
#include "epsforge/translation.hpp"

#ifndef EPSFORGE_CORPUS_DIR
#define EPSFORGE_CORPUS_DIR "corpus"
#endif

using namespace epsforge;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kInputError = 2;

Formula read_formula(const std::string& path) {
  try {
    return load_formula_file(path);
  } catch (const ParseError& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

ProofFile load_proof(const std::string& path) {
  try {
    return load_proof_file(path);
  } catch (const ParseError& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

std::size_t search_bound() {
  const char* env = std::getenv("EPSFORGE_SEARCH_BOUND");
  if (!env || !*env) return kDefaultSearchBound;
  try {
    std::size_t used = 0;
    unsigned long v = std::stoul(env, &used);
    if (used == std::string(env).size()) return v;
  } catch (const std::exception&) {
  }
  throw InvalidInput(std::string("EPSFORGE_SEARCH_BOUND is not a number: ") + env);
}

Calculus calculus_for(const ProofFile& f, const std::string& flag) {
  if (!flag.empty()) return *calculus_from_name(flag);
  return f.calculus.value_or(Calculus::LK);
}

void print_report(const std::string& file, const CheckReport& r) {
  std::cout << file << ": " << (r.valid ? "valid" : "invalid") << " in " << calculus_name(r.calculus)
            << " (length " << r.metrics.length << ", sequents " << r.metrics.sequent_count << ", symbols "
            << r.metrics.symbol_size << ")\n";
  for (const auto& v : r.violations) std::cout << "  " << v.path << ": " << v.condition << ": " << v.message << "\n";
}

// ---------------------------------------------------------------------------

int cmd_check(const std::vector<std::string>& files, const std::string& calculus, bool as_json) {
  json results = json::array();
  int status = kOk;
  for (const auto& file : files) {
    try {
      auto pf = load_proof_file(file);
      auto r = check(pf.proof, calculus_for(pf, calculus));
      if (!r.valid) status = std::max(status, kFailed);
      if (as_json) {
        results.push_back({{"file", file}, {"report", to_json(r)}});
      } else {
        print_report(file, r);
      }
    } catch (const Error& e) {
      std::cerr << file << ": " << e.what() << "\n";
      if (as_json) results.push_back({{"file", file}, {"error", e.what()}});
      status = kInputError;
    }
  }
  if (as_json) {
    json run = {{"command", "check"}, {"inputs", files}, {"results", results}, {"exit_status", status}};
    std::cout << run.dump(2) << "\n";
  }
  return status;
}

int cmd_translate(const std::string& file, const std::string& mode, const std::string& polarity) {
  Formula f = read_formula(file);
  if (mode == "to-eps") {
    if (has_epsilon(f)) throw InvalidInput("to-eps expects a first-order formula");
    std::cout << to_string(to_epsilon(f)) << "\n";
  } else if (mode == "from-eps") {
    try {
      auto g = from_epsilon(f, search_bound());
      if (!g) {
        std::cout << "UNDEFINED\n";
        return kFailed;
      }
      std::cout << to_string(*g) << "\n";
    } catch (const SearchBoundExceeded& e) {
      std::cout << "SEARCH BOUND EXCEEDED: " << e.what() << "\n";
      return kFailed;
    }
  } else if (mode == "skolemize") {
    if (has_epsilon(f)) throw InvalidInput("skolemize expects a first-order formula");
    std::cout << to_string(skolemize_formula(f, polarity == "negative" ? Polarity::Negative : Polarity::Positive))
              << "\n";
  } else {
    try {
      std::cout << to_string(matrix(f)) << "\n";
    } catch (const MatrixUndefined& e) {
      std::cerr << e.what() << "\n";
      return kFailed;
    }
  }
  return kOk;
}

struct PassInfo {
  Calculus source;
  Calculus target;
};

PassInfo pass_info(const std::string& pass) {
  if (pass == "lk-to-leps") return {Calculus::LK, Calculus::Leps};
  if (pass == "critical-form") return {Calculus::Leps, Calculus::Leps};
  if (pass == "universalize-cuts") return {Calculus::Leps, Calculus::Leps};
  if (pass == "eliminate-unsound") return {Calculus::LKplusplus, Calculus::LK};
  return {Calculus::LK, Calculus::LK};
}

int cmd_transform(const std::string& file, const std::string& pass, const std::string& out_path,
                  const std::string& trace_path) {
  auto pf = load_proof(file);
  auto info = pass_info(pass);
  auto source = check(pf.proof, info.source);
  if (!source.valid) {
    print_report(file, source);
    return kFailed;
  }

  ProofNode result;
  json trace;
  try {
    if (pass == "critical-form") {
      auto cf = to_critical_form(pf.proof);
      result = cf.proof;
      trace = to_json(cf.trace);
      json crits = json::array();
      for (const auto& c : cf.criticals) crits.push_back(to_string(c.formula));
      trace["criticals"] = crits;
      trace["tautology"] = to_string(cf.tautology);
    } else {
      TransformResult r;
      if (pass == "lk-to-leps") r = lk_to_leps(pf.proof);
      else if (pass == "universalize-cuts") r = universalize_cuts(pf.proof);
      else if (pass == "eliminate-unsound") r = eliminate_unsound_inferences(pf.proof);
      else if (pass == "skolem-cuts") r = skolemize_by_cuts(pf.proof);
      else r = skolemize_cut_free(pf.proof);
      result = r.proof;
      trace = to_json(r.trace);
    }
  } catch (const Error& e) {
    std::cerr << file << ": " << e.what() << "\n";
    return kFailed;
  }

  // Write-then-verify: the emitted text must parse back and check.
  std::string text = print_proof(result, info.target);
  auto reread = parse_proof_file(text);
  auto verdict = check(reread.proof, info.target);
  if (!verdict.valid) {
    std::cerr << file << ": transformed proof fails to check in " << calculus_name(info.target) << "\n";
    print_report("<output>", verdict);
    return kFailed;
  }

  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream(out_path) << text;
  }
  if (!trace_path.empty()) std::ofstream(trace_path) << trace.dump(2) << "\n";
  return kOk;
}

int cmd_measure(const std::vector<std::string>& files, const std::string& calculus, bool csv) {
  int status = kOk;
  if (csv) std::cout << "file,calculus,length,sequent_count,symbol_size\n";
  for (const auto& file : files) {
    try {
      auto pf = load_proof_file(file);
      auto c = calculus_for(pf, calculus);
      auto r = check(pf.proof, c);
      if (!r.valid) {
        status = std::max(status, kFailed);
        std::cerr << file << ": invalid in " << calculus_name(c) << "\n";
      }
      const auto& m = r.metrics;
      if (csv) {
        std::cout << file << "," << calculus_name(c) << "," << m.length << "," << m.sequent_count << ","
                  << m.symbol_size << "\n";
      } else {
        std::cout << file << "  " << calculus_name(c) << "  length " << m.length << "  sequents "
                  << m.sequent_count << "  symbols " << m.symbol_size << "\n";
      }
    } catch (const Error& e) {
      std::cerr << file << ": " << e.what() << "\n";
      status = kInputError;
    }
  }
  return status;
}

int cmd_epsilon_theorem(const std::string& file, const std::string& goal_file, bool as_json) {
  auto pf = load_proof(file);
  Formula goal = read_formula(goal_file);
  auto r = check(pf.proof, Calculus::Leps);
  if (!r.valid) {
    print_report(file, r);
    return kFailed;
  }
  try {
    auto h = herbrand_pipeline(pf.proof, goal);
    if (as_json) {
      std::cout << to_json(h).dump(2) << "\n";
    } else {
      std::cout << "template: " << to_string(h.templ) << "\n";
      std::cout << "instances: " << h.instances.size() << "\n";
      for (const auto& t : h.instances) {
        std::cout << "  (";
        for (std::size_t i = 0; i < t.size(); ++i) std::cout << (i ? ", " : "") << to_string(t[i]);
        std::cout << ")\n";
      }
      std::cout << "disjunction: " << to_string(h.disjunction) << "\n";
      std::cout << "certified: " << (h.certified ? "yes" : "no") << "\n";
    }
    return h.certified ? kOk : kFailed;
  } catch (const InvalidInput& e) {
    std::cerr << file << ": " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    std::cerr << file << ": " << e.what() << "\n";
    return kFailed;
  }
}

std::string corpus_dir() {
  const char* env = std::getenv("EPSFORGE_CORPUS");
  return env && *env ? env : EPSFORGE_CORPUS_DIR;
}

int cmd_corpus() {
  std::vector<std::string> names;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(corpus_dir(), ec))
    if (entry.is_regular_file()) names.push_back(entry.path().filename().string());
  if (ec) throw InvalidInput("cannot list corpus directory " + corpus_dir());
  std::sort(names.begin(), names.end());
  for (const auto& n : names) std::cout << (std::filesystem::path(corpus_dir()) / n).string() << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proof checker and transformer for sequent calculi with epsilon terms"};
  app.require_subcommand(1);

  const std::vector<std::string> calculi{"lk", "leps", "lkplus", "lkplusplus"};

  std::vector<std::string> check_files;
  std::string check_calculus;
  bool check_json = false;
  auto* check_cmd = app.add_subcommand("check", "Check proof scripts");
  check_cmd->add_option("files", check_files, "Proof scripts")->required();
  check_cmd->add_option("--calculus", check_calculus, "Calculus (default: file header, else lk)")
      ->check(CLI::IsMember(calculi));
  check_cmd->add_flag("--json", check_json, "Emit a JSON report");

  std::string tr_file, tr_mode, tr_polarity = "positive";
  auto* tr_cmd = app.add_subcommand("translate", "Translate a formula");
  tr_cmd->add_option("file", tr_file, "Formula file")->required();
  tr_cmd->add_option("--mode", tr_mode, "Translation")
      ->required()
      ->check(CLI::IsMember({"to-eps", "from-eps", "skolemize", "matrix"}));
  tr_cmd->add_option("--polarity", tr_polarity, "Polarity for skolemize")
      ->check(CLI::IsMember({"positive", "negative"}));

  std::string tf_file, tf_pass, tf_out, tf_trace;
  auto* tf_cmd = app.add_subcommand("transform", "Transform a proof");
  tf_cmd->add_option("file", tf_file, "Proof script")->required();
  tf_cmd->add_option("--pass", tf_pass, "Transformation")
      ->required()
      ->check(CLI::IsMember({"lk-to-leps", "critical-form", "universalize-cuts", "eliminate-unsound",
                             "skolem-cuts", "skolem-cutfree"}));
  tf_cmd->add_option("-o,--output", tf_out, "Output proof script (default: stdout)");
  tf_cmd->add_option("--emit-trace", tf_trace, "Write the transformation trace as JSON");

  std::vector<std::string> me_files;
  std::string me_calculus;
  bool me_csv = false;
  auto* me_cmd = app.add_subcommand("measure", "Proof size metrics");
  me_cmd->add_option("files", me_files, "Proof scripts")->required();
  me_cmd->add_option("--calculus", me_calculus, "Calculus (default: file header, else lk)")
      ->check(CLI::IsMember(calculi));
  me_cmd->add_flag("--csv", me_csv, "CSV output");

  std::string et_file, et_goal;
  bool et_json = false;
  auto* et_cmd = app.add_subcommand("epsilon-theorem", "Extract a Herbrand disjunction");
  et_cmd->add_option("file", et_file, "Cut-free epsilon proof")->required();
  et_cmd->add_option("--goal", et_goal, "First-order goal formula file")->required();
  et_cmd->add_flag("--json", et_json, "Emit JSON");

  auto* co_cmd = app.add_subcommand("corpus", "List the bundled proof corpus");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e) == 0 ? kOk : kInputError;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (check_cmd->parsed()) return cmd_check(check_files, check_calculus, check_json);
    if (tr_cmd->parsed()) return cmd_translate(tr_file, tr_mode, tr_polarity);
    if (tf_cmd->parsed()) return cmd_transform(tf_file, tf_pass, tf_out, tf_trace);
    if (me_cmd->parsed()) return cmd_measure(me_files, me_calculus, me_csv);
    if (et_cmd->parsed()) return cmd_epsilon_theorem(et_file, et_goal, et_json);
    if (co_cmd->parsed()) return cmd_corpus();
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kInputError;
  } catch (const InvalidInput& e) {
    std::cerr << e.what() << "\n";
    return kInputError;
  } catch (const MalformedTree& e) {
    std::cerr << "malformed proof: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kFailed;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kFailed;
  }
  return kInputError;
}
