#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "epilepsy_fixture.hpp"
#include "roblev/error.hpp"
#include "roblev/pipeline.hpp"
#include "roblev/reproduce.hpp"
#include "roblev/version.hpp"

namespace roblev::cli {

namespace {

struct Options {
  std::string data;
  RunConfig run;
  std::string format = "csv";
  std::optional<double> c_override;
  std::optional<double> flag_cutoff;
  bool no_small_sample = false;
  bool reproduce = false;
};

void build_app(CLI::App& app, Options& o) {
  app.set_version_flag("--version", std::string("roblev ") + kVersion);
  app.add_option("--data", o.data, "CSV file with a header row");
  app.add_option("--formula", o.run.formula, "model formula, e.g. \"~ Age10 + Base4 * Trt\"");
  app.add_option("--categorical", o.run.categorical,
                 "comma-separated columns to treat as categorical")
      ->delimiter(',');
  app.add_option("--alpha", o.run.mcd.alpha, "MCD subset fraction in [0.5, 1]")
      ->check(CLI::Range(0.5, 1.0));
  app.add_option("--ntrials", o.run.mcd.n_trials, "random elemental starts")
      ->check(CLI::Range(std::size_t{1}, std::size_t{100000000}));
  app.add_option("--reweight-prob", o.run.mcd.reweight_prob,
                 "chi-square probability of the reweighting cutoff")
      ->check(CLI::Range(1e-12, 1.0 - 1e-12));
  app.add_option("--seed", o.run.mcd.seed, "random seed")->default_val(kDefaultSeed);
  app.add_flag("--no-small-sample", o.no_small_sample, "disable the small-sample correction");
  app.add_option("--c-override", o.c_override, "fixed rescale factor c")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", o.format, "report format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", o.run.out, "output file (default: standard output)");
  app.add_option("--flag-cutoff", o.flag_cutoff, "robust-hat flag threshold (default 2p/n)")
      ->check(CLI::PositiveNumber);
  app.add_option("--threads", o.run.mcd.threads, "worker threads for the MCD trials")
      ->check(CLI::Range(1u, 64u));
  app.add_flag("--reproduce-paper", o.reproduce,
               "run the bundled epilepsy example and compare with the published values");
}

int fail(std::ostream& err, const char* kind, const std::string& what, int code) {
  err << "roblev: " << kind << ": " << what << '\n';
  return code;
}

int execute(Options& o, std::ostream& out, std::ostream& err) {
  o.run.mcd.use_small_sample_correction = !o.no_small_sample;
  o.run.mcd.c_override = o.c_override;
  o.run.flag_cutoff = o.flag_cutoff.value_or(0.0);
  o.run.format = *parse_report_format(o.format);

  if (o.reproduce) {
    Dataset data;
    if (o.data.empty()) {
      std::istringstream fixture(kEpilepsyCsv);
      data = parse_csv(fixture, {}, "epilepsy.csv");
    } else {
      data = ingest_csv(o.data);
    }
    const Reproduction r = reproduce_epilepsy(data, o.run.mcd);
    print_reproduction(r, out);
    return kOk;
  }

  if (o.data.empty()) return fail(err, "usage", "--data is required", kUsage);
  if (o.run.formula.empty()) return fail(err, "usage", "--formula is required", kUsage);

  const Dataset data = ingest_csv(o.data, o.run.categorical);
  const Analysis a = analyze(o.run, data);
  emit_report(a.report, o.run.format, o.run.out, out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Classical and robust leverage diagnostics for regression designs", "roblev"};
  Options o;
  build_app(app, o);
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    return execute(o, out, err);
  } catch (const FormulaError& e) {
    return fail(err, "formula error", e.what(), kFormulaError);
  } catch (const DataError& e) {
    return fail(err, "data error", e.what(), kDataError);
  } catch (const DesignError& e) {
    return fail(err, "rank-deficient design", e.what(), kRankDeficient);
  } catch (const McdError& e) {
    return fail(err, "MCD failure", e.what(), kMcdFailure);
  } catch (const ModifiedDesignError& e) {
    return fail(err, "modified design singular", e.what(), kModifiedDesignSingular);
  } catch (const OutputError& e) {
    return fail(err, "output error", e.what(), kUsage);
  } catch (const std::invalid_argument& e) {
    return fail(err, "invalid argument", e.what(), kUsage);
  } catch (const std::domain_error& e) {
    return fail(err, "invalid argument", e.what(), kUsage);
  } catch (const std::exception& e) {
    return fail(err, "internal error", e.what(), kInternal);
  }
}

}  // namespace roblev::cli
