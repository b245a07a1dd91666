#include "adscore/harness/output.h"

#include <fstream>

#include <fmt/format.h>

namespace adscore::harness {
namespace fs = std::filesystem;
namespace {

class CsvFile {
 public:
  CsvFile(const fs::path& path) : out_(path, std::ios::binary), path_(path) {
    if (!out_) throw std::runtime_error("cannot write " + path.string());
  }
  void row(const std::vector<std::string>& fields) {
    for (std::size_t k = 0; k < fields.size(); ++k) {
      if (k > 0) out_ << ',';
      out_ << fields[k];
    }
    out_ << '\n';
  }
  const fs::path& path() const { return path_; }

 private:
  std::ofstream out_;
  fs::path path_;
};

std::string real(double x) { return fmt::format("{:.6f}", x); }
std::string count(std::size_t x) { return fmt::format("{}", x); }

void add_indexed(std::vector<std::string>& header, const std::string& prefix,
                 std::size_t n) {
  for (std::size_t i = 1; i <= n; ++i) header.push_back(fmt::format("{}_{}", prefix, i));
}

}  // namespace

std::string rank_field(const Permutation& sigma) {
  std::string s;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (i > 0) s += ' ';
    s += std::to_string(sigma.rank_of(i) + 1);
  }
  return s;
}

std::string money(double x) {
  // Avoid "-0.0000" for tiny negative rounding noise.
  const std::string s = fmt::format("{:.4f}", x);
  return s == "-0.0000" ? "0.0000" : s;
}

std::vector<fs::path> write_static(const fs::path& dir, const StaticResult& result) {
  fs::create_directories(dir);
  const ScorerReport& r = result.report;
  const std::size_t n = r.final_bids.size();

  CsvFile trace(dir / "trace.csv");
  std::vector<std::string> header = {"t"};
  add_indexed(header, "score_bid", n);
  add_indexed(header, "rank", n);
  header.insert(header.end(), {"revenue", "unrevealed"});
  trace.row(header);
  for (const auto& rec : result.trace) {
    std::vector<std::string> row = {count(rec.t)};
    for (double eb : rec.score_bid) row.push_back(money(eb));
    for (std::size_t i = 0; i < n; ++i) {
      row.push_back(count(rec.permutation.rank_of(i) + 1));
    }
    row.push_back(money(rec.revenue));
    row.push_back(count(rec.unrevealed));
    trace.row(row);
  }

  CsvFile report(dir / "report.csv");
  report.row({"advertiser", "value", "rank", "optimal_rank", "score", "bid",
              "score_bid", "price", "clicks", "revealed_value"});
  for (std::size_t i = 0; i < n; ++i) {
    report.row({count(i + 1), money(result.instance.values[i]),
                count(r.final_permutation.rank_of(i) + 1),
                count(result.optimum.permutation.rank_of(i) + 1),
                money(r.final_scores[i]), money(r.final_bids[i]),
                money(r.final_scores[i] * r.final_bids[i]), money(r.final_prices[i]),
                money(r.final_clicks[i]), money(r.revealed_values[i])});
  }

  CsvFile summary(dir / "summary.csv");
  summary.row({"key", "value"});
  summary.row({"final_ranking", rank_field(r.final_permutation)});
  summary.row({"optimal_ranking", rank_field(result.optimum.permutation)});
  summary.row({"revenue", money(r.revenue)});
  summary.row({"social_optimum", money(result.optimum.social_surplus)});
  summary.row({"ratio", real(result.ratio)});
  summary.row({"adjustments", count(r.adjustments)});
  summary.row({"terminated", r.terminated ? "true" : "false"});
  return {trace.path(), report.path(), summary.path()};
}

std::vector<fs::path> write_dynamic(const fs::path& dir, const DynamicResult& result) {
  fs::create_directories(dir);
  CsvFile inst(dir / "instances.csv");
  inst.row({"instance", "adjustments", "ranking", "optimal_ranking", "matches_optimum",
            "revenue", "social_optimum", "terminated"});
  CsvFile params(dir / "parameters.csv");
  params.row({"instance", "advertiser", "value", "ad_factor", "position_factor", "rank"});
  for (const auto& item : result.instances) {
    const ScorerReport& r = item.report;
    inst.row({count(item.index), count(r.adjustments), rank_field(r.final_permutation),
              rank_field(item.optimum.permutation), item.matches_optimum ? "true" : "false",
              money(r.revenue), money(item.optimum.social_surplus),
              r.terminated ? "true" : "false"});
    for (std::size_t i = 0; i < item.instance.values.size(); ++i) {
      // position_factor is the factor of slot i + 1, not of advertiser i + 1.
      params.row({count(item.index), count(i + 1), money(item.instance.values[i]),
                  money(item.instance.ad_factors[i]),
                  money(item.instance.position_factors[i]),
                  count(r.final_permutation.rank_of(i) + 1)});
    }
  }
  CsvFile summary(dir / "summary.csv");
  summary.row({"key", "value"});
  summary.row({"instances", count(result.instances.size())});
  summary.row({"cold_adjustments", count(result.cold_adjustments)});
  summary.row({"warm_mean_adjustments", real(result.warm_mean_adjustments)});
  return {inst.path(), params.path(), summary.path()};
}

std::vector<fs::path> write_modified_ctr(const fs::path& dir,
                                         const ModifiedCtrResult& result) {
  fs::create_directories(dir);
  CsvFile trials(dir / "trials.csv");
  trials.row({"trial", "values", "ad_factors", "ranking", "optimal_ranking", "revenue",
              "social_optimum", "ratio", "adjustments"});
  auto joined = [](const std::vector<double>& xs) {
    std::string s;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      s += (k > 0 ? " " : "") + fmt::format("{}", xs[k]);
    }
    return s;
  };
  for (const auto& t : result.trials) {
    trials.row({count(t.index), joined(t.values), joined(t.ad_factors),
                rank_field(t.report.final_permutation), rank_field(t.optimum.permutation),
                money(t.report.revenue), money(t.optimum.social_surplus), real(t.ratio),
                count(t.report.adjustments)});
  }
  CsvFile summary(dir / "summary.csv");
  summary.row({"key", "value"});
  summary.row({"trials", count(result.trials.size())});
  summary.row({"mean_ratio", result.mean ? real(*result.mean) : ""});
  summary.row({"stddev_ratio", result.stddev ? real(*result.stddev) : ""});
  summary.row({"reference_mean_ratio", real(ModifiedCtrResult::kReferenceMean)});
  summary.row({"reference_stddev_ratio", real(ModifiedCtrResult::kReferenceStddev)});
  return {trials.path(), summary.path()};
}

std::vector<fs::path> write_fixtures(const fs::path& dir, const FixtureReport& report) {
  fs::create_directories(dir);
  CsvFile cells(dir / "fixtures.csv");
  cells.row({"scenario", "advertiser", "field", "expected", "actual", "ok"});
  for (const auto& c : report.cells) {
    cells.row({count(static_cast<std::size_t>(c.scenario)), c.advertiser, c.field,
               money(c.expected), money(c.actual), c.ok ? "true" : "false"});
  }
  CsvFile nash(dir / "nash.csv");
  nash.row({"scenario", "is_equilibrium", "advertiser", "target_rank", "gain"});
  for (std::size_t k = 0; k < report.nash.size(); ++k) {
    const auto& check = report.nash[k];
    if (check.deviations.empty()) {
      nash.row({count(k + 1), "true", "", "", ""});
    }
    for (const auto& d : check.deviations) {
      nash.row({count(k + 1), "false", kSodaNames[d.advertiser], count(d.target_rank + 1),
                money(d.gain)});
    }
  }
  return {cells.path(), nash.path()};
}

}  // namespace adscore::harness
