// Command-line driver for the scored auction experiments.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "adscore/equilibrium.h"
#include "adscore/errors.h"
#include "adscore/harness/config.h"
#include "adscore/harness/experiments.h"
#include "adscore/harness/output.h"

namespace {

using namespace adscore;
using namespace adscore::harness;

enum Exit { kOk = 0, kMismatch = 1, kNotConverged = 2, kBadInput = 3 };

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<double> epsilon;
  std::optional<double> delta;
};

void add_common(CLI::App* cmd, Overrides& o, bool needs_config) {
  auto* c = cmd->add_option("--config", o.config, "INI experiment file");
  if (needs_config) c->required()->check(CLI::ExistingFile);
  cmd->add_option("--seed", o.seed, "RNG seed");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--epsilon", o.epsilon, "ladder gap, relative to the ladder top")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--delta", o.delta, "ladder raise per step, relative")
      ->check(CLI::NonNegativeNumber);
}

ExperimentConfig resolve(const Overrides& o) {
  ExperimentConfig cfg = o.config.empty() ? ExperimentConfig{} : load_config(o.config);
  if (o.seed) cfg.seed = *o.seed;
  if (o.out) cfg.out_dir = *o.out;
  if (o.epsilon) cfg.scorer.epsilon = *o.epsilon;
  if (o.delta) cfg.scorer.delta = *o.delta;
  return cfg;
}

void list_files(const std::vector<std::filesystem::path>& files) {
  for (const auto& f : files) fmt::print("wrote {}\n", f.string());
}

int cmd_static(const Overrides& o) {
  const ExperimentConfig cfg = resolve(o);
  const StaticResult r = run_static(cfg);
  list_files(write_static(cfg.out_dir, r));
  fmt::print("final ranking   {}\n", r.report.final_permutation.to_string());
  fmt::print("optimal ranking {}\n", r.optimum.permutation.to_string());
  fmt::print("revenue {} of {} ({:.4f}), t = {}\n", money(r.report.revenue),
             money(r.optimum.social_surplus), r.ratio, r.report.adjustments);
  if (!r.report.terminated) {
    fmt::print(stderr, "scorer stopped at the adjustment cap with values unrevealed\n");
    return kNotConverged;
  }
  return kOk;
}

int cmd_dynamic(const Overrides& o) {
  const ExperimentConfig cfg = resolve(o);
  const DynamicResult r = run_dynamic(cfg);
  list_files(write_dynamic(cfg.out_dir, r));
  int code = kOk;
  for (const auto& item : r.instances) {
    fmt::print("instance {:2}: t = {:5}  {}{}\n", item.index, item.report.adjustments,
               item.report.final_permutation.to_string(),
               item.matches_optimum ? "" : "  != optimum " + item.optimum.permutation.to_string());
    if (!item.report.terminated) code = kNotConverged;
    else if (!item.matches_optimum && code == kOk) code = kMismatch;
  }
  fmt::print("cold start t = {}, warm mean t = {:.2f}\n", r.cold_adjustments,
             r.warm_mean_adjustments);
  if (code == kMismatch) fmt::print(stderr, "a final ranking differs from the optimum\n");
  if (code == kNotConverged) fmt::print(stderr, "an instance hit the adjustment cap\n");
  return code;
}

int cmd_modified_ctr(const Overrides& o) {
  const ExperimentConfig cfg = resolve(o);
  const ModifiedCtrResult r = run_modified_ctr(cfg);
  list_files(write_modified_ctr(cfg.out_dir, r));
  if (r.mean) {
    fmt::print("{} trials: mean ratio {:.4f}, std {:.4f} (reference {:.3f} / {:.4f})\n",
               r.trials.size(), *r.mean, *r.stddev, ModifiedCtrResult::kReferenceMean,
               ModifiedCtrResult::kReferenceStddev);
  } else {
    fmt::print("0 trials\n");
  }
  for (const auto& t : r.trials) {
    if (!t.report.terminated) {
      fmt::print(stderr, "trial {} hit the adjustment cap\n", t.index);
      return kNotConverged;
    }
  }
  return kOk;
}

int cmd_fixtures(const Overrides& o) {
  const ExperimentConfig cfg = resolve(o);
  const FixtureReport r = validate_motivating_example();
  list_files(write_fixtures(cfg.out_dir, r));
  for (const auto& c : r.cells) {
    if (!c.ok) {
      fmt::print(stderr, "scenario {} {} {}: expected {}, got {}\n", c.scenario,
                 c.advertiser.empty() ? "-" : c.advertiser, c.field, money(c.expected),
                 money(c.actual));
    }
  }
  for (std::size_t k = 0; k < r.nash.size(); ++k) {
    for (const auto& d : r.nash[k].deviations) {
      fmt::print(stderr, "scenario {} is not an equilibrium: {} gains {} by moving to rank {}\n",
                 k + 1, kSodaNames[d.advertiser], money(d.gain), d.target_rank + 1);
    }
  }
  if (!r.revenue_ordered) fmt::print(stderr, "scenario revenues are not increasing\n");
  fmt::print("cells {}, equilibria {}, revenue order {}\n", r.cells_ok() ? "ok" : "MISMATCH",
             r.nash_ok() ? "ok" : "MISMATCH", r.revenue_ordered ? "ok" : "MISMATCH");
  return r.ok() ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scored position auctions and adaptive quality scores"};
  app.require_subcommand(1);
  Overrides o;
  auto* s = app.add_subcommand("static", "adaptive scorer on a fixed instance");
  auto* d = app.add_subcommand("dynamic", "warm-started scorer under parameter noise");
  auto* m = app.add_subcommand("modified-ctr", "random trials under the competitor-group click model");
  auto* f = app.add_subcommand("validate-fixtures", "check the four-advertiser soda example");
  add_common(s, o, true);
  add_common(d, o, true);
  add_common(m, o, true);
  add_common(f, o, false);
  CLI11_PARSE(app, argc, argv);

  try {
    if (s->parsed()) return cmd_static(o);
    if (d->parsed()) return cmd_dynamic(o);
    if (m->parsed()) return cmd_modified_ctr(o);
    return cmd_fixtures(o);
  } catch (const NotConvergedError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kNotConverged;
  } catch (const ConfigError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return kBadInput;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kBadInput;
  }
}
