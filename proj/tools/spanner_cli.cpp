// Command-line harness: generate update traces, replay them through the
// dynamic spanner engine or the low-recourse baseline, and audit the result.
//
// Exit codes: 0 success, 1 audit failure or budget overrun, 2 input error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "dynspanner/dynspanner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAuditFailure = 1;
constexpr int kExitInputError = 2;

using namespace dynspanner;

UpdateTrace load_trace(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::InvalidArgument, "cannot open trace file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_trace(buf.str());
}

nlohmann::json summary_json(const RunResult& r) {
  const RunMetrics& m = r.metrics;
  return {
      {"n", m.n},
      {"m", m.m},
      {"gamma", m.gamma},
      {"external_insertions", m.external_insertions},
      {"deletions", m.deletions},
      {"insert_calls", m.insert_calls},
      {"recourse_additions", m.recourse_additions},
      {"recourse_removals", m.recourse_removals},
      {"spanner_edges", m.spanner_edges},
      {"peak_spanner_edges", m.peak_spanner_edges},
      {"uncongested_edges", m.uncongested_edges},
      {"congestion_evictions", m.congestion_evictions},
      {"max_congestion", m.max_congestion},
      {"budget_exceeded", m.budget_exceeded},
      {"oracle_updates", m.oracle_updates},
      {"oracle_queries", m.oracle_queries},
      {"oracle_update_ns_mean", m.oracle_update_ns_mean},
      {"oracle_query_ns_mean", m.oracle_query_ns_mean},
      {"wall_time_ms", m.wall_time_ms},
      {"audits", r.audits},
      {"failed_audits", r.failed_audits},
      {"passed", r.passed()},
  };
}

struct RunArgs {
  std::string trace_path;
  std::string algorithm = "engine";
  std::optional<std::size_t> audit_every;
  bool final_only = false;
  bool json = false;
  bool verbose = false;
};

int do_run(const RunArgs& args) {
  const UpdateTrace trace = load_trace(args.trace_path);
  RunOptions options;
  auto algo = parse_algorithm(args.algorithm);
  if (!algo) throw Error(Errc::InvalidArgument, "unknown algorithm '" + args.algorithm + "'");
  options.algorithm = *algo;
  options.audit_every =
      args.final_only ? 0 : args.audit_every.value_or(default_audit_every(trace.header.n));
  options.audit = AuditOptions::for_size(trace.header.n);
  options.on_audit = [&](std::size_t done, const AuditReport& report) {
    if (args.verbose || !report.passed()) {
      std::cout << "audit @" << done << ": " << (report.passed() ? "PASS" : "FAIL") << '\n';
      if (!report.passed()) std::cout << report.to_text();
    }
  };

  const RunResult result = run_trace(trace, options);
  std::cout << result.metrics.to_text();
  std::cout << "audits " << result.audits << '\n' << "failed_audits " << result.failed_audits << '\n';
  std::cout << "# final audit\n" << result.final_report.to_text();
  if (args.json) std::cout << summary_json(result).dump() << '\n';
  return result.passed() ? kExitOk : kExitAuditFailure;
}

struct GenArgs {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t deletions = 0;
  std::string pattern = "random";
  std::uint64_t seed = 1;
  std::uint32_t gamma = 1;
  std::string out;
};

int do_gen(const GenArgs& args) {
  GeneratorOptions opt;
  opt.n = args.n;
  opt.m = args.m;
  opt.deletions = args.deletions;
  opt.seed = args.seed;
  opt.gamma = args.gamma;
  if (args.pattern == "random") {
    opt.pattern = TracePattern::Random;
  } else if (args.pattern == "adversarial") {
    opt.pattern = TracePattern::Adversarial;
  } else {
    throw Error(Errc::InvalidArgument, "unknown pattern '" + args.pattern + "'");
  }
  const std::string text = serialize_trace(generate_trace(opt));
  if (args.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(args.out, std::ios::binary);
    if (!f) throw Error(Errc::InvalidArgument, "cannot write '" + args.out + "'");
    f << text;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic spanner maintenance harness"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Replay a trace with periodic audits");
  run->add_option("--trace", run_args.trace_path, "Trace file")->required();
  run->add_option("--algorithm", run_args.algorithm, "engine | low-recourse")
      ->check(CLI::IsMember({"engine", "low-recourse"}));
  run->add_option("--audit-every", run_args.audit_every,
                  "Audit after every k updates (default 1 for n <= 64, else 32; 0 = final only)");
  run->add_flag("--json", run_args.json, "Also print a one-line JSON summary");
  run->add_flag("-v,--verbose", run_args.verbose, "Report every audit checkpoint");

  RunArgs audit_args;
  audit_args.final_only = true;
  auto* audit = app.add_subcommand("audit", "Replay a trace and audit the final state only");
  audit->add_option("--trace", audit_args.trace_path, "Trace file")->required();
  audit->add_option("--algorithm", audit_args.algorithm, "engine | low-recourse")
      ->check(CLI::IsMember({"engine", "low-recourse"}));
  audit->add_flag("--json", audit_args.json, "Also print a one-line JSON summary");

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "Generate an update trace");
  gen->add_option("--n", gen_args.n, "Vertex count")->required();
  gen->add_option("--m", gen_args.m, "Insertions (declared budget)")->required();
  gen->add_option("--deletions", gen_args.deletions, "Deletions (at most n)")->required();
  gen->add_option("--pattern", gen_args.pattern, "random | adversarial")
      ->check(CLI::IsMember({"random", "adversarial"}));
  gen->add_option("--seed", gen_args.seed, "RNG seed");
  gen->add_option("--gamma", gen_args.gamma, "Approximation factor written to the header");
  gen->add_option("--out", gen_args.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*run) return do_run(run_args);
    if (*audit) return do_run(audit_args);
    if (*gen) return do_gen(gen_args);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.code()) {
      case Errc::OracleContractViolation:
      case Errc::BudgetExceeded:
        return kExitAuditFailure;
      default:
        return kExitInputError;
    }
  }
  return kExitInputError;
}
