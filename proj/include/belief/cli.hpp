#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "belief/bayes.hpp"
#include "belief/dempster.hpp"
#include "belief/error.hpp"
#include "belief/evidence.hpp"
#include "belief/frame.hpp"
#include "belief/mass.hpp"
#include "belief/model_io.hpp"
#include "belief/rational.hpp"
#include "belief/report.hpp"

namespace belief::cli {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitModelError = 1;
inline constexpr int kExitUsage = 2;

/// Largest frame accepted by `derive --from-belief` (dense 2^n input).
inline constexpr std::size_t kMaxBeliefTableFrame = 12;

struct CommandResult {
  int exit_code = kExitOk;
  std::string out;
  std::string err;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline EvidenceModel load_model(const std::string& path) {
  try {
    return parse_model(read_file(path));
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

/// Subset given on the command line: brace form in any member order, a bare
/// label for a singleton, or "T" for the whole frame when no label is named T.
inline SubsetMask parse_subset_arg(const Frame& frame, const std::string& text) {
  if (!text.empty() && text.front() == '{') return parse_subset(frame, text, false);
  if (const int i = frame.index_of(text); i >= 0) return SubsetMask(frame, 1u << i);
  if (text == "T") return SubsetMask::full(frame);
  throw Error(Errc::UnknownLabel, "'" + text + "' names no subset of the frame");
}

inline Rational parse_rational_arg(const std::string& flag, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const Error&) {
    throw UsageError(flag + " expects a rational such as 2 or 7/5, got '" + text + "'");
  }
}

namespace detail {

struct PriorOptions {
  std::string kind;
  std::string prior_file;
  std::string odds;
  std::vector<std::string> pair;
};

inline void add_prior_options(CLI::App* sub, PriorOptions& opts) {
  auto* uniform = sub->add_option("--prior", opts.kind, "Prior family; only 'uniform' (the default)")
                      ->check(CLI::IsMember({"uniform"}));
  auto* file = sub->add_option("--prior-file", opts.prior_file, "JSON file of prior weights");
  auto* odds = sub->add_option("--odds", opts.odds, "Prior odds a of the --pair plaintexts, as a:1");
  sub->add_option("--pair", opts.pair, "Two plaintexts A B")->expected(2);
  uniform->excludes(file)->excludes(odds);
  file->excludes(odds);
}

struct ResolvedPrior {
  PriorSpec spec;
  std::string kind;
  std::optional<std::pair<SubsetMask, SubsetMask>> pair;
  std::optional<Rational> odds;
};

inline ResolvedPrior resolve_prior(const EvidenceModel& model, const PriorOptions& opts) {
  if (!opts.odds.empty()) {
    if (opts.pair.size() != 2) throw UsageError("--odds requires --pair A B");
    const Rational a = parse_rational_arg("--odds", opts.odds);
    if (a < 0) throw UsageError("--odds must be non-negative");
    const SubsetMask first = parse_subset_arg(model.frame(), opts.pair[0]);
    const SubsetMask second = parse_subset_arg(model.frame(), opts.pair[1]);
    return {PriorSpec::from_odds(model, first, second, a), "odds", std::pair{first, second}, a};
  }
  if (!opts.pair.empty()) throw UsageError("--pair is only meaningful with --odds");
  if (!opts.prior_file.empty()) {
    try {
      return {parse_prior(model, read_file(opts.prior_file)), "file", std::nullopt, std::nullopt};
    } catch (const Error& e) {
      throw Error(e.code(), opts.prior_file + ": " + e.what());
    }
  }
  return {PriorSpec::uniform(model), "uniform", std::nullopt, std::nullopt};
}

inline std::string resolve_message(const EvidenceModel& model, const std::string& flag) {
  if (!flag.empty()) return flag;
  if (model.observed()) return *model.observed();
  throw UsageError("--message is required when the model declares no observed message");
}

inline std::string pair_key(const SubsetMask& a, const SubsetMask& b) {
  return to_string(a) + " : " + to_string(b);
}

inline void add_posterior_sections(Report& report, const PosteriorReport& post) {
  auto& prior = report.section("prior");
  for (const auto& [a, w] : post.prior) prior.add("prior(" + to_string(a) + ")", w);
  auto& lik = report.section("likelihood");
  for (const auto& [a, l] : post.likelihoods) lik.add("likelihood(" + to_string(a) + ")", l);
  auto& marginal = report.section("marginal");
  marginal.add("normalizer", post.normalizer);
  auto& posterior_rows = report.section("posterior");
  for (const auto& [a, p] : post.posterior) posterior_rows.add("posterior(" + to_string(a) + ")", p);
}

// Each command fills a report or throws.

inline Report cmd_derive(const std::string& model_path, const std::string& message, const std::string& belief_path) {
  Report report{"derive", {}};
  if (!belief_path.empty()) {
    if (!model_path.empty()) throw UsageError("give either a model file or --from-belief, not both");
    BeliefTable table = [&] {
      try {
        return parse_belief_table(read_file(belief_path));
      } catch (const Error& e) {
        throw Error(e.code(), belief_path + ": " + e.what());
      }
    }();
    if (table.frame.size() > kMaxBeliefTableFrame)
      throw Error(Errc::InvalidFrame, "--from-belief accepts frames of at most " +
                                          std::to_string(kMaxBeliefTableFrame) + " labels");
    const MassFunction m = belief_to_mass(table.frame, table.belief);
    report.section("input").add("source", std::string("belief table"));
    add_mass_section(report, m);
    add_belief_sections(report, m);
    return report;
  }
  if (model_path.empty()) throw UsageError("derive needs a model file or --from-belief");
  const EvidenceModel model = load_model(model_path);
  const std::string q = resolve_message(model, message);
  const MassFunction m = derive_mass(model, q);
  const ConstrainingRelation e = constraining_relation(model, q);

  report.section("input").add("message", q);
  auto& rel = report.section("relation");
  for (const auto& [s, a] : e.pairs) rel.add("E(" + s + ")", to_string(a));
  auto& compat = report.section("compatibility");
  for (const auto& s : possible_codes(e)) compat.add("C(" + s + ")", to_string(compatibility_set(e, s)));
  add_mass_section(report, m);
  add_belief_sections(report, m);
  report.section("summary").add("bayesian", is_bayesian(m));
  return report;
}

inline Report cmd_combine(const std::vector<std::string>& model_paths, const std::string& message1,
                          const std::string& message2, const std::string& method) {
  const EvidenceModel first = load_model(model_paths.at(0));
  const EvidenceModel second = load_model(model_paths.at(1));
  const std::string q1 = resolve_message(first, message1);
  const std::string q2 = resolve_message(second, message2);
  const CombinationResult result = method == "product"
                                       ? combine_via_product({first, q1}, {second, q2})
                                       : combine_direct(derive_mass(first, q1), derive_mass(second, q2));
  Report report{"combine", {}};
  auto& input = report.section("input");
  input.add("method", method);
  input.add("message1", q1);
  input.add("message2", q2);
  report.section("combination").add("conflict", result.conflict);
  add_mass_section(report, result.combined);
  add_belief_sections(report, result.combined);
  return report;
}

inline Report cmd_bayes(const std::string& model_path, const std::string& message, const PriorOptions& opts) {
  const EvidenceModel model = load_model(model_path);
  const std::string q = resolve_message(model, message);
  const ResolvedPrior prior = resolve_prior(model, opts);
  Report report{"bayes", {}};
  auto& input = report.section("input");
  input.add("message", q);
  input.add("prior", prior.kind);
  if (prior.pair) {
    const auto& [a, b] = *prior.pair;
    auto& odds = report.section("odds");
    odds.add("prior_odds(" + pair_key(a, b) + ")", *prior.odds);
    odds.add("bayes_factor(" + pair_key(a, b) + ")", bayes_factor(model, q, a, b));
    odds.add("posterior_odds(" + pair_key(a, b) + ")", posterior_odds(model, q, a, b, *prior.odds));
  }
  add_posterior_sections(report, posterior(model, prior.spec, q));
  return report;
}

inline Report cmd_factors(const std::string& model_path, const std::string& message,
                          const std::vector<std::string>& pair) {
  const EvidenceModel model = load_model(model_path);
  const std::string q = resolve_message(model, message);
  const SubsetMask a = parse_subset_arg(model.frame(), pair.at(0));
  const SubsetMask b = parse_subset_arg(model.frame(), pair.at(1));
  Report report{"factors", {}};
  report.section("input").add("message", q);
  auto& lik = report.section("likelihood");
  lik.add("likelihood(" + to_string(a) + ")", likelihood(model, a, q));
  lik.add("likelihood(" + to_string(b) + ")", likelihood(model, b, q));
  report.section("odds").add("bayes_factor(" + pair_key(a, b) + ")", bayes_factor(model, q, a, b));
  return report;
}

inline Report cmd_williams(const std::string& model_path, const std::string& message) {
  const EvidenceModel model = load_model(model_path);
  const std::string q = resolve_message(model, message);
  const WilliamsReport w = williams_check(model, q);
  Report report{"williams", {}};
  report.section("input").add("message", q);
  auto& verdict = report.section("verdict");
  verdict.add("one_to_one", w.one_to_one);
  verdict.add("equivalent", w.equivalent);
  add_mass_section(report, w.mass);
  auto& post = report.section("uniform_posterior");
  for (const auto& [a, p] : w.uniform_posterior) post.add("posterior(" + to_string(a) + ")", p);
  return report;
}

inline Report cmd_simulate(const std::string& model_path, const std::string& message, const PriorOptions& opts,
                           std::uint64_t samples, std::uint64_t seed) {
  const EvidenceModel model = load_model(model_path);
  const std::string q = resolve_message(model, message);
  const ResolvedPrior prior = resolve_prior(model, opts);
  const PosteriorReport exact = posterior(model, prior.spec, q);
  const SimulationReport sim = simulate(model, prior.spec, q, samples, seed);
  Report report{"simulate", {}};
  auto& input = report.section("input");
  input.add("message", q);
  input.add("prior", prior.kind);
  input.add("algorithm", std::string(SimulationReport::kAlgorithm));
  input.add("seed", static_cast<std::int64_t>(sim.seed));
  auto& counts = report.section("simulation");
  counts.add("trials", static_cast<std::int64_t>(sim.trials));
  counts.add("accepted", static_cast<std::int64_t>(sim.accepted));
  auto& freq = report.section("frequency");
  for (const auto& [a, f] : sim.frequencies) freq.add("freq(" + to_string(a) + ")", Decimal6::from_double(f));
  auto& post = report.section("exact_posterior");
  for (const auto& [a, p] : exact.posterior) post.add("posterior(" + to_string(a) + ")", p);
  return report;
}

inline Report cmd_validate(const std::string& model_path) {
  const EvidenceModel model = load_model(model_path);
  const auto findings = validate_model(model);
  Report report{"validate", {}};
  auto& rows = report.section("findings");
  for (const auto& f : findings) rows.add(f.kind, f.message);
  auto& summary = report.section("summary");
  summary.add("warnings", static_cast<std::int64_t>(findings.size()));
  summary.add("status", std::string(findings.empty() ? "clean" : "warnings"));
  return report;
}

}  // namespace detail

/// Parses `args` (program name excluded), runs one subcommand and returns its
/// exit status with the rendered report or diagnostics.
inline CommandResult run_command(const std::vector<std::string>& args) {
  CLI::App app{"Belief functions from coded-message evidence, with exact Bayesian comparison", "belief"};
  app.fallthrough();
  app.require_subcommand(1, 1);

  std::string format = "text";
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}));

  std::string model_path;
  std::vector<std::string> model_paths;
  std::string message;
  std::string message2;
  std::string belief_path;
  std::string method = "direct";
  std::vector<std::string> pair;
  detail::PriorOptions prior_opts;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;

  auto* derive = app.add_subcommand("derive", "Derive the mass and belief functions for an observed message");
  derive->add_option("model", model_path, "Model file");
  derive->add_option("--message", message, "Observed message (defaults to the model's observed field)");
  derive->add_option("--from-belief", belief_path, "Invert a dense belief table instead of reading a model");

  auto* combine = app.add_subcommand("combine", "Combine two independent bodies of evidence by Dempster's rule");
  combine->add_option("models", model_paths, "Two model files")->required()->expected(2);
  combine->add_option("--message", message, "Message observed through the first model");
  combine->add_option("--message2", message2, "Message observed through the second model");
  combine->add_option("--method", method, "direct or product")->check(CLI::IsMember({"direct", "product"}));

  auto* bayes = app.add_subcommand("bayes", "Exact posterior over plaintexts under a prior");
  bayes->add_option("model", model_path, "Model file")->required();
  bayes->add_option("--message", message, "Observed message");
  detail::add_prior_options(bayes, prior_opts);

  auto* factors = app.add_subcommand("factors", "Bayes factor between two plaintexts");
  factors->add_option("model", model_path, "Model file")->required();
  factors->add_option("--message", message, "Observed message");
  factors->add_option("--pair", pair, "Two plaintexts A B")->required()->expected(2);

  auto* williams = app.add_subcommand("williams", "Compare the derived mass with the uniform-prior posterior");
  williams->add_option("model", model_path, "Model file")->required();
  williams->add_option("--message", message, "Observed message");

  auto* sim = app.add_subcommand("simulate", "Monte Carlo check of the exact posterior");
  sim->add_option("model", model_path, "Model file")->required();
  sim->add_option("--message", message, "Observed message");
  sim->add_option("--samples", samples, "Number of trials")->check(CLI::PositiveNumber);
  sim->add_option("--seed", seed, "Generator seed")->required();
  detail::add_prior_options(sim, prior_opts);

  auto* validate = app.add_subcommand("validate", "Check a model and list advisory findings");
  validate->add_option("model", model_path, "Model file")->required();

  CommandResult result;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    result.out = app.help();
    return result;
  } catch (const CLI::CallForAllHelp&) {
    result.out = app.help("", CLI::AppFormatMode::All);
    return result;
  } catch (const CLI::ParseError& e) {
    result.exit_code = kExitUsage;
    result.err = std::string("usage error: ") + e.what() + "\n";
    return result;
  }

  try {
    Report report;
    if (derive->parsed())
      report = detail::cmd_derive(model_path, message, belief_path);
    else if (combine->parsed())
      report = detail::cmd_combine(model_paths, message, message2, method);
    else if (bayes->parsed())
      report = detail::cmd_bayes(model_path, message, prior_opts);
    else if (factors->parsed())
      report = detail::cmd_factors(model_path, message, pair);
    else if (williams->parsed())
      report = detail::cmd_williams(model_path, message);
    else if (sim->parsed())
      report = detail::cmd_simulate(model_path, message, prior_opts, samples, seed);
    else
      report = detail::cmd_validate(model_path);
    result.out = emit_report(report, format == "json" ? ReportFormat::Machine : ReportFormat::Text);
  } catch (const UsageError& e) {
    result.exit_code = kExitUsage;
    result.err = std::string("usage error: ") + e.what() + "\n";
  } catch (const Error& e) {
    result.exit_code = kExitModelError;
    result.err = std::string("error: ") + e.what() + "\n";
  }
  return result;
}

}  // namespace belief::cli
