#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "powerpos/conditions.hpp"
#include "powerpos/eventual.hpp"
#include "powerpos/polynomial.hpp"

namespace powerpos {

/// Exit-code contract shared by the CLI subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitFails = 2;
inline constexpr int kExitInconclusive = 3;

enum class BudgetProfile { Fast, Default, Thorough };
BudgetProfile budget_profile_from_string(std::string_view s);
std::string to_string(BudgetProfile profile);

struct PipelineOptions {
  Pos2Options pos2;
  /// Shared by both (Pos3) passes; mode is set per pass.
  Pos3Options pos3;
  /// Run the certifying pass when falsification finds nothing.
  bool pos3_certify = true;
  ScanOptions scan;
};

PipelineOptions profile_options(BudgetProfile profile);

/// Falsify first; certify only when no counterexample turned up.
ConditionReport run_pos3(const Polynomial& p, const PipelineOptions& opts);

struct CheckOutcome {
  std::vector<ConditionReport> reports;  // Pos1, Pos2, Pos3
  int exit_code = kExitOk;
};

/// 2 if any condition Fails, else 3 if any is Inconclusive, else 0.
int exit_code_for(const std::vector<ConditionReport>& reports);

CheckOutcome run_check(const Polynomial& p, const PipelineOptions& opts);
nlohmann::json to_json(const CheckOutcome& outcome, const Polynomial& p);

struct ScanSpec {
  std::string q = "1";
  unsigned max_m = 60;
  /// Present when the entry asserts an onset; a contained nullopt asserts
  /// that no onset occurs within the window.
  std::optional<std::optional<unsigned>> expected_onset;
};

struct CorpusEntry {
  std::string name;
  std::size_t nvars = 0;
  std::string expr;
  Polynomial polynomial{0};
  std::map<Condition, Verdict> expected;
  std::string notes;
  std::optional<ScanSpec> scan;
};

CorpusEntry corpus_entry_from_json(const nlohmann::json& j);
/// Every *.json file of the directory, sorted by entry name.
std::vector<CorpusEntry> load_corpus(const std::filesystem::path& dir);
/// $POWERPOS_CORPUS if set, else the corpus shipped with the sources.
std::filesystem::path default_corpus_dir();

struct ExampleResult {
  std::string name;
  std::vector<ConditionReport> reports;
  std::optional<PositivityPattern> scan;
  std::vector<std::string> mismatches;
  /// Expected verdicts the run could not settle (observed Inconclusive).
  std::vector<std::string> unresolved;
};

struct ExamplesOutcome {
  std::vector<ExampleResult> results;
  /// 2 on any mismatch, else 3 if anything is unresolved, else 0.
  int exit_code = kExitOk;
};

/// Runs one named entry or "all". Throws DomainError on an unknown name.
ExamplesOutcome run_examples(const std::vector<CorpusEntry>& corpus, const std::string& name,
                             const PipelineOptions& opts);
nlohmann::json to_json(const ExamplesOutcome& outcome);

/// (x_1 + x_2)^{2k} - lambda x_1^k x_2^k.
Polynomial dv_polynomial(unsigned k, const Rational& lambda);

struct SweepRow {
  Rational lambda;
  Verdict pos1 = Verdict::Inconclusive;
  Verdict pos2 = Verdict::Inconclusive;
  Verdict pos3 = Verdict::Inconclusive;
  std::optional<unsigned> window_onset;
};

/// One row per lambda, sorted by lambda. Lambdas outside (0, 2^{2k-1}] are
/// evaluated anyway and reported through `warnings`.
std::vector<SweepRow> run_sweep_dv(unsigned k, std::vector<Rational> lambdas, unsigned max_m,
                                   const PipelineOptions& opts, std::vector<std::string>& warnings);
/// Header lambda,pos1,pos2,pos3,window_onset; empty onset when none found.
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace powerpos
