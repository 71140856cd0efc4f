#include "powerpos/pipeline.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "powerpos/errors.hpp"
#include "powerpos/parse.hpp"

namespace powerpos {

namespace {

Condition condition_from_string(const std::string& s) {
  if (s == "Pos1") return Condition::Pos1;
  if (s == "Pos2") return Condition::Pos2;
  if (s == "Pos3") return Condition::Pos3;
  throw DomainError("unknown condition '" + s + "'");
}

nlohmann::json onset_json(const std::optional<unsigned>& onset) {
  return onset ? nlohmann::json(*onset) : nlohmann::json();
}

}  // namespace

BudgetProfile budget_profile_from_string(std::string_view s) {
  if (s == "fast") return BudgetProfile::Fast;
  if (s == "default") return BudgetProfile::Default;
  if (s == "thorough") return BudgetProfile::Thorough;
  throw DomainError("unknown budget profile '" + std::string(s) + "'");
}

std::string to_string(BudgetProfile profile) {
  switch (profile) {
    case BudgetProfile::Fast: return "fast";
    case BudgetProfile::Default: return "default";
    case BudgetProfile::Thorough: return "thorough";
  }
  return "?";
}

PipelineOptions profile_options(BudgetProfile profile) {
  PipelineOptions o;
  switch (profile) {
    case BudgetProfile::Fast:
      o.pos2.polya_budget = 32;
      o.pos2.sample_grid = 8;
      o.pos3.grid = 16;
      o.pos3.max_depth = 18;
      o.pos3.max_boxes = 200'000;
      o.pos3.refine_starts = 4;
      o.pos3.jf_samples = 4;
      o.pos3.polya_budget = 32;
      break;
    case BudgetProfile::Default:
      break;
    case BudgetProfile::Thorough:
      o.pos2.polya_budget = 256;
      o.pos2.sample_grid = 48;
      o.pos3.grid = 64;
      o.pos3.max_depth = 30;
      o.pos3.max_boxes = 40'000'000;
      o.pos3.refine_starts = 32;
      o.pos3.jf_samples = 64;
      o.pos3.polya_budget = 256;
      break;
  }
  return o;
}

ConditionReport run_pos3(const Polynomial& p, const PipelineOptions& opts) {
  Pos3Options o = opts.pos3;
  o.mode = Pos3Mode::Falsify;
  ConditionReport falsified = check_pos3(p, o);
  if (falsified.verdict != Verdict::Inconclusive || !opts.pos3_certify) return falsified;
  o.mode = Pos3Mode::Certify;
  ConditionReport certified = check_pos3(p, o);
  for (const auto& [k, v] : falsified.budget_used) certified.budget_used["falsify_" + k] += v;
  return certified;
}

int exit_code_for(const std::vector<ConditionReport>& reports) {
  const auto any = [&](Verdict v) {
    return std::any_of(reports.begin(), reports.end(), [v](const auto& r) { return r.verdict == v; });
  };
  if (any(Verdict::Fails)) return kExitFails;
  if (any(Verdict::Inconclusive)) return kExitInconclusive;
  return kExitOk;
}

CheckOutcome run_check(const Polynomial& p, const PipelineOptions& opts) {
  CheckOutcome out;
  out.reports.push_back(check_pos1(p));
  out.reports.push_back(check_pos2(p, opts.pos2));
  out.reports.push_back(run_pos3(p, opts));
  out.exit_code = exit_code_for(out.reports);
  return out;
}

nlohmann::json to_json(const CheckOutcome& outcome, const Polynomial& p) {
  nlohmann::json reports = nlohmann::json::array();
  for (const auto& r : outcome.reports) reports.push_back(to_json(r));
  return {{"polynomial", serialize(p)},
          {"nvars", p.nvars()},
          {"reports", reports},
          {"exit_code", outcome.exit_code}};
}

CorpusEntry corpus_entry_from_json(const nlohmann::json& j) {
  CorpusEntry e;
  try {
    e.name = j.at("name").get<std::string>();
    e.nvars = j.at("nvars").get<std::size_t>();
    e.expr = j.at("expr").get<std::string>();
    e.notes = j.value("notes", "");
    if (j.contains("expected")) {
      for (const auto& [k, v] : j.at("expected").items()) {
        e.expected[condition_from_string(k)] = verdict_from_string(v.get<std::string>());
      }
    }
    if (j.contains("scan")) {
      const auto& s = j.at("scan");
      ScanSpec spec;
      spec.q = s.value("q", "1");
      spec.max_m = s.value("max_m", 60u);
      if (s.contains("onset")) {
        spec.expected_onset = s.at("onset").is_null() ? std::optional<unsigned>() : s.at("onset").get<unsigned>();
      }
      e.scan = spec;
    }
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("malformed corpus entry: ") + ex.what(), 0);
  }
  e.polynomial = parse(e.expr, e.nvars);
  return e;
}

std::vector<CorpusEntry> load_corpus(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw DomainError("corpus directory not found: " + dir.string());
  std::vector<CorpusEntry> entries;
  for (const auto& file : std::filesystem::directory_iterator(dir)) {
    if (file.path().extension() != ".json") continue;
    std::ifstream in(file.path());
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& ex) {
      throw ParseError(file.path().filename().string() + ": " + ex.what(), 0);
    }
    entries.push_back(corpus_entry_from_json(j));
  }
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return entries;
}

std::filesystem::path default_corpus_dir() {
  if (const char* env = std::getenv("POWERPOS_CORPUS")) return env;
  return POWERPOS_CORPUS_DIR;
}

ExamplesOutcome run_examples(const std::vector<CorpusEntry>& corpus, const std::string& name,
                             const PipelineOptions& opts) {
  std::vector<const CorpusEntry*> selected;
  for (const auto& e : corpus) {
    if (name == "all" || e.name == name) selected.push_back(&e);
  }
  if (selected.empty()) throw DomainError("unknown corpus entry '" + name + "'");
  ExamplesOutcome out;
  for (const CorpusEntry* e : selected) {
    ExampleResult res;
    res.name = e->name;
    res.reports = run_check(e->polynomial, opts).reports;
    for (const auto& r : res.reports) {
      const auto it = e->expected.find(r.condition);
      if (it == e->expected.end() || it->second == r.verdict) continue;
      const std::string what = to_string(r.condition) + ": expected " + to_string(it->second) + ", observed " +
                               to_string(r.verdict);
      (r.verdict == Verdict::Inconclusive ? res.unresolved : res.mismatches).push_back(what);
    }
    if (e->scan) {
      const Polynomial q = parse(e->scan->q, e->nvars);
      res.scan = power_scan(e->polynomial, q, e->scan->max_m, opts.scan);
      if (e->scan->expected_onset && *e->scan->expected_onset != res.scan->window_onset) {
        const auto show = [](const std::optional<unsigned>& o) { return o ? std::to_string(*o) : "none"; };
        res.mismatches.push_back("window onset: expected " + show(*e->scan->expected_onset) + ", observed " +
                                 show(res.scan->window_onset));
      }
    }
    if (!res.mismatches.empty()) {
      out.exit_code = kExitFails;
    } else if (!res.unresolved.empty() && out.exit_code == kExitOk) {
      out.exit_code = kExitInconclusive;
    }
    out.results.push_back(std::move(res));
  }
  return out;
}

nlohmann::json to_json(const ExamplesOutcome& outcome) {
  nlohmann::json results = nlohmann::json::array();
  for (const auto& r : outcome.results) {
    nlohmann::json reports = nlohmann::json::array();
    for (const auto& c : r.reports) reports.push_back(to_json(c));
    nlohmann::json j = {{"name", r.name},
                        {"reports", reports},
                        {"mismatches", r.mismatches},
                        {"unresolved", r.unresolved}};
    if (r.scan) {
      j["scan"] = {{"max_m", r.scan->max_m()},
                   {"window_onset", onset_json(r.scan->window_onset)},
                   {"first_true", onset_json(r.scan->first_true)}};
    }
    results.push_back(std::move(j));
  }
  return {{"results", results}, {"exit_code", outcome.exit_code}};
}

Polynomial dv_polynomial(unsigned k, const Rational& lambda) {
  if (k == 0) throw DomainError("dv family needs k >= 1");
  MultiIndex mixed{k, k};
  return pow(Polynomial::linear_sum(2), 2 * k) - Polynomial::monomial(mixed, lambda);
}

std::vector<SweepRow> run_sweep_dv(unsigned k, std::vector<Rational> lambdas, unsigned max_m,
                                   const PipelineOptions& opts, std::vector<std::string>& warnings) {
  if (k < 2) throw DomainError("dv sweep needs k >= 2");
  std::sort(lambdas.begin(), lambdas.end());
  lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());
  Rational upper(1);
  upper.get_num() <<= 2 * k - 1;
  std::vector<SweepRow> rows;
  for (const auto& lambda : lambdas) {
    if (sgn(lambda) <= 0 || lambda > upper) {
      warnings.push_back("lambda = " + to_string(lambda) + " lies outside (0, " + to_string(upper) + "]");
    }
    const Polynomial p = dv_polynomial(k, lambda);
    const auto outcome = run_check(p, opts);
    SweepRow row;
    row.lambda = lambda;
    row.pos1 = outcome.reports[0].verdict;
    row.pos2 = outcome.reports[1].verdict;
    row.pos3 = outcome.reports[2].verdict;
    row.window_onset = power_scan(p, Polynomial::constant(2, 1), max_m, opts.scan).window_onset;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "lambda,pos1,pos2,pos3,window_onset\n";
  for (const auto& r : rows) {
    os << to_string(r.lambda) << ',' << to_string(r.pos1) << ',' << to_string(r.pos2) << ',' << to_string(r.pos3)
       << ',';
    if (r.window_onset) os << *r.window_onset;
    os << '\n';
  }
  return os.str();
}

}  // namespace powerpos
