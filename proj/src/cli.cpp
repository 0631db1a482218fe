#include "horn/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>

#include "horn/forget.hpp"
#include "horn/oracle.hpp"
#include "horn/reconstruct.hpp"
#include "horn/syntax.hpp"

namespace horn {

namespace {

using nlohmann::json;

struct Settings {
  std::vector<std::string> items;
  std::vector<std::string> files;
  std::optional<std::string> forget;
  std::vector<std::string> no_filter;
  std::optional<std::uint64_t> budget;
  std::size_t oracle_max_vars = 5;
  bool oracle = false;
  bool json = false;
  bool trace = false;
  bool names = false;
  bool parallel = false;
};

const char* to_string(Expectation e) {
  return e == Expectation::single_head ? "single-head" : "not-single-head";
}

int verdict_status(Verdict v) {
  switch (v) {
    case Verdict::single_head: return exit_status::single_head;
    case Verdict::not_single_head: return exit_status::not_single_head;
    case Verdict::inconclusive: return exit_status::inconclusive;
  }
  return exit_status::inconclusive;
}

json hits_json(const FilterHits& h) {
  return {{"headless_bodies", h.headless_bodies},
          {"maxit", h.maxit},
          {"body_coverage", h.body_coverage},
          {"rcn_equality", h.rcn_equality},
          {"hclose_mismatch", h.hclose_mismatch}};
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += sep;
    out += p;
  }
  return out;
}

std::string vars_text(const VarSet& s, const Symbols& sym, Syntax syntax) {
  return s.empty() ? "{}" : format_vars(s, sym, syntax);
}

std::vector<std::string> names_of(const VarSet& s, const Symbols& sym) {
  std::vector<std::string> out;
  for (Var v : s) out.push_back(sym.name(v));
  return out;
}

// Outcome of one input.
struct Run {
  int status = exit_status::single_head;
  bool problem = false;  // oracle disagreement or unmet expectation
};

Run process(const std::string& label, const CorpusFile& file, const Settings& s,
            const ReconstructOptions& options, json& results, std::ostream& out,
            std::ostream& err) {
  Run run;
  json r;
  r["input"] = label;

  Formula f;
  try {
    f = parse_corpus(file);
  } catch (const ParseError& e) {
    err << label << ":" << e.item() << ":" << e.column() << ": " << e.what() << "\n";
    r["error"] = {{"item", e.item()}, {"column", e.column()}, {"message", e.what()}};
    results.push_back(std::move(r));
    run.status = exit_status::usage;
    return run;
  } catch (const std::length_error& e) {
    err << label << ": " << e.what() << "\n";
    r["error"] = {{"item", 0}, {"column", 0}, {"message", e.what()}};
    results.push_back(std::move(r));
    run.status = exit_status::usage;
    return run;
  }
  const Symbols& sym = f.symbols();
  const Syntax syntax = file.syntax;
  auto text = [&](std::span<const Clause> cs) { return format_clauses(cs, sym, syntax); };

  std::ostringstream h;
  if (!s.json) h << "== " << label << "\n";

  ReconstructResult res = reconstruct(f, options);
  run.status = verdict_status(res.verdict);

  r["variables"] = names_of(f.universe(), sym);
  r["clauses"] = text(f.clauses());
  r["verdict"] = to_string(res.verdict);
  r["output"] = res.success() ? json(text(res.output.clauses())) : json(nullptr);
  r["candidates_tested"] = res.totals.candidates_tested;
  r["candidates_generated"] = res.totals.candidates_generated;
  r["combinations"] = res.totals.combinations;
  r["filter_hits"] = hits_json(res.totals.hits);
  if (res.failure) {
    const auto& fl = *res.failure;
    r["failure"] = {{"body", format_vars(fl.body, sym, syntax)},
                    {"cause", to_string(fl.cause)},
                    {"heads", names_of(fl.heads, sym)},
                    {"reduced", text(fl.reduced)}};
  } else {
    r["failure"] = nullptr;
  }

  h << "verdict: " << to_string(res.verdict) << "\n";
  if (res.success()) {
    h << "output:\n";
    for (const auto& c : text(res.output.clauses())) h << "  " << c << "\n";
  } else if (res.failure) {
    const auto& fl = *res.failure;
    h << "failing body: " << vars_text(fl.body, sym, syntax) << " (" << to_string(fl.cause)
      << ", heads " << vars_text(fl.heads, sym, syntax) << ")\n";
  }
  const auto& hits = res.totals.hits;
  h << "candidates: tested " << res.totals.candidates_tested << ", generated "
    << res.totals.candidates_generated << ", combinations " << res.totals.combinations << "\n"
    << "filter hits: headless " << hits.headless_bodies << ", maxit " << hits.maxit
    << ", coverage " << hits.body_coverage << ", rcn " << hits.rcn_equality << ", mismatch "
    << hits.hclose_mismatch << "\n";

  if (s.trace) {
    json its = json::array();
    std::size_t n = 0;
    for (const auto& it : res.iterations) {
      ++n;
      its.push_back({{"body", format_vars(it.body, sym, syntax)},
                     {"heads", names_of(it.heads, sym)},
                     {"pool_size", it.pool_size},
                     {"reduced_size", it.reduced_size},
                     {"candidates_tested", it.counters.candidates_tested},
                     {"candidates_generated", it.counters.candidates_generated},
                     {"combinations", it.counters.combinations},
                     {"accepted", it.accepted},
                     {"added", text(it.added)}});
      h << "  iteration " << n << ": body " << vars_text(it.body, sym, syntax) << ", H "
        << vars_text(it.heads, sym, syntax) << ", |M| " << it.pool_size << ", |T| "
        << it.reduced_size << ", tested " << it.counters.candidates_tested
        << (it.accepted ? ", added " + join(text(it.added), " ") : std::string(", none accepted"))
        << "\n";
    }
    r["iterations"] = std::move(its);
  }

  if (s.forget) {
    try {
      VarSet drop = parse_vars(*s.forget, sym, syntax);
      VarSet keep = f.universe() - drop;
      Formula g = res.success() ? forget_single_head(res.output, keep) : forget_by_resolution(f, keep);
      const char* method = res.success() ? "substitution" : "resolution";
      r["forget"] = {{"variables", names_of(drop, sym)},
                     {"method", method},
                     {"output", text(g.clauses())}};
      h << "forget " << vars_text(drop, sym, syntax) << " (" << method << "):\n";
      for (const auto& c : text(g.clauses())) h << "  " << c << "\n";
    } catch (const ParseError& e) {
      err << label << ": --forget: column " << e.column() << ": " << e.what() << "\n";
      run.status = exit_status::usage;
    }
  }

  if (s.oracle) {
    BruteForceOptions bf;
    bf.max_vars = s.oracle_max_vars;
    try {
      auto witness = brute_force_single_head_equivalent(f, bf);
      bool agree = res.verdict == Verdict::inconclusive ||
                   (res.verdict == Verdict::single_head) == witness.has_value();
      r["oracle"] = {{"status", agree ? "agree" : "disagree"},
                     {"single_head_equivalent", witness.has_value()},
                     {"witness", witness ? json(text(witness->clauses())) : json(nullptr)}};
      h << "oracle: " << (witness ? "single-head" : "not-single-head") << ", "
        << (agree ? "agrees" : "DISAGREES") << "\n";
      if (!agree) {
        err << label << ": oracle disagrees with reconstruction\n";
        run.problem = true;
      }
    } catch (const UniverseTooLarge&) {
      r["oracle"] = {{"status", "skipped"}, {"single_head_equivalent", nullptr}, {"witness", nullptr}};
      h << "oracle: skipped (more than " << bf.max_vars << " variables)\n";
    }
  }

  if (file.expect) {
    bool met = res.verdict == (*file.expect == Expectation::single_head ? Verdict::single_head
                                                                        : Verdict::not_single_head);
    r["expect"] = to_string(*file.expect);
    r["expect_met"] = met;
    h << "expect: " << to_string(*file.expect) << (met ? " (met)" : " (NOT MET)") << "\n";
    if (!met) {
      err << label << ": expected " << to_string(*file.expect) << ", got "
          << to_string(res.verdict) << "\n";
      run.problem = true;
    }
  }

  results.push_back(std::move(r));
  if (!s.json) out << h.str();
  return run;
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Single-head equivalence for definite Horn formulas", "shead"};
  app.add_option("-f,--formula", s.items, "Formula items, e.g. 'ab->c' 'd=ef'")->expected(1, -1);
  app.add_option("-t,--file", s.files, "Corpus files")->expected(1, -1);
  app.add_option("--forget", s.forget, "Variables to forget after reconstruction");
  app.add_flag("--oracle", s.oracle, "Cross-check the verdict by brute force");
  app.add_option("--oracle-max-vars", s.oracle_max_vars, "Largest universe the oracle accepts")
      ->capture_default_str();
  app.add_flag("--json", s.json, "Machine-readable output");
  app.add_flag("--trace", s.trace, "Per-iteration log");
  app.add_option("--no-filter", s.no_filter, "Disable an optimization: 1, 2, 3, minbodies or tautologies")
      ->check(CLI::IsMember({"1", "2", "3", "minbodies", "tautologies"}))
      ->take_all();
  app.add_option("--budget", s.budget, "Candidate cap per body");
  app.add_flag("--names", s.names, "Comma-separated variable names in -f items");
  app.add_flag("--parallel", s.parallel, "Evaluate candidates on all threads");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    if (s.items.empty() && s.files.empty())
      throw CLI::RequiredError("one of -f or -t");
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "shead: " << e.what() << "\n" << "run with --help for usage\n";
    return exit_status::usage;
  }

  ReconstructOptions options;
  for (const auto& n : s.no_filter) {
    if (n == "1") options.filters.body_coverage = false;
    if (n == "2") options.filters.maxit = false;
    if (n == "3") options.filters.rcn_equality = false;
    if (n == "minbodies") options.filters.minbodies = false;
    if (n == "tautologies") options.filters.tautologies = false;
  }
  options.budget = s.budget;
  options.execution = s.parallel ? Execution::parallel : Execution::serial;

  std::vector<std::pair<std::string, CorpusFile>> inputs;
  if (!s.items.empty()) {
    CorpusFile inline_file;
    inline_file.name = "-f";
    inline_file.syntax = s.names ? Syntax::names : Syntax::letters;
    inline_file.items = s.items;
    for (std::size_t i = 0; i < s.items.size(); ++i) inline_file.lines.push_back(i + 1);
    inputs.emplace_back("-f", std::move(inline_file));
  }
  for (const auto& path : s.files) {
    std::ifstream in(path);
    if (!in) {
      err << "shead: cannot open " << path << "\n";
      return exit_status::usage;
    }
    try {
      inputs.emplace_back(path, read_corpus(in, path));
    } catch (const ParseError& e) {
      err << path << ":" << e.item() << ":" << e.column() << ": " << e.what() << "\n";
      return exit_status::usage;
    }
  }

  json results = json::array();
  bool usage = false;
  bool problem = false;
  int worst = 0;
  for (const auto& [label, file] : inputs) {
    Run run = process(label, file, s, options, results, out, err);
    usage = usage || run.status == exit_status::usage;
    problem = problem || run.problem;
    // in a multi-input run a met expectation counts as success
    int status = run.status;
    if (inputs.size() > 1 && file.expect && !run.problem) status = 0;
    worst = std::max(worst, status);
  }
  if (s.json) out << json{{"schema_version", 1}, {"results", results}}.dump(2) << "\n";

  if (usage) return exit_status::usage;
  if (problem) return exit_status::mismatch;
  return worst;
}

}  // namespace horn
