#include "adscore/harness/config.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "adscore/errors.h"

namespace adscore::harness {
namespace {

namespace pt = boost::property_tree;

// section.key -> line, for diagnostics on values the INI parser accepts.
std::map<std::string, std::size_t> key_lines(const std::string& text) {
  std::map<std::string, std::size_t> lines;
  std::istringstream in(text);
  std::string line;
  std::string section;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    boost::trim(line);
    if (line.empty() || line[0] == ';' || line[0] == '#') continue;
    if (line.front() == '[' && line.back() == ']') {
      section = boost::trim_copy(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    lines[section + "." + boost::trim_copy(line.substr(0, eq))] = no;
  }
  return lines;
}

class Reader {
 public:
  Reader(const pt::ptree& tree, std::map<std::string, std::size_t> lines,
         std::string source)
      : tree_(tree), lines_(std::move(lines)), source_(std::move(source)) {}

  bool has(const std::string& key) const {
    return tree_.get_child_optional(pt::ptree::path_type(key, '.')).has_value();
  }

  [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
    const auto it = lines_.find(key);
    throw ConfigError(source_, it == lines_.end() ? 0 : it->second,
                      key + ": " + msg);
  }

  std::string text(const std::string& key) const {
    return boost::trim_copy(tree_.get<std::string>(key));
  }

  double number(const std::string& key, double fallback) const {
    return has(key) ? parse_number(key, text(key)) : fallback;
  }

  std::size_t count(const std::string& key, std::size_t fallback) const {
    if (!has(key)) return fallback;
    const double x = number(key, 0.0);
    if (x < 0.0 || x != static_cast<double>(static_cast<std::size_t>(x))) {
      fail(key, "expected a non-negative integer");
    }
    return static_cast<std::size_t>(x);
  }

  std::vector<double> list(const std::string& key) const {
    std::vector<double> out;
    if (!has(key)) return out;
    std::vector<std::string> parts;
    const std::string raw = text(key);
    if (raw.empty()) return out;
    boost::split(parts, raw, boost::is_any_of(", \t"), boost::token_compress_on);
    for (const auto& p : parts) {
      if (!p.empty()) out.push_back(parse_number(key, p));
    }
    return out;
  }

  double parse_number(const std::string& key, const std::string& s) const {
    double x = 0.0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, x);
    if (ec != std::errc() || ptr != end) fail(key, "not a number: '" + s + "'");
    return x;
  }

 private:
  const pt::ptree& tree_;
  std::map<std::string, std::size_t> lines_;
  std::string source_;
};

void require_positive(const Reader& r, const std::string& key,
                      const std::vector<double>& xs) {
  for (double x : xs) {
    if (!(x > 0.0)) r.fail(key, "every entry must be positive");
  }
}

void require_non_negative(const Reader& r, const std::string& key, double x) {
  if (!(x >= 0.0)) r.fail(key, "must be non-negative");
}

}  // namespace

ConfigError::ConfigError(const std::string& source, std::size_t line,
                         const std::string& message)
    : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : "") +
                         ": " + message),
      line_(line) {}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, 0, "cannot open config file");
  return parse_config(in, path);
}

ExperimentConfig parse_config(std::istream& in, const std::string& source) {
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  pt::ptree tree;
  try {
    std::istringstream parse_in(text);
    pt::read_ini(parse_in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(source, e.line(), e.message());
  }
  const Reader r(tree, key_lines(text), source);
  ExperimentConfig cfg;

  InstanceSpec& inst = cfg.instance;
  inst.values = r.list("instance.values");
  if (inst.values.empty() && r.has("instance.slots")) {
    r.fail("instance.values", "missing");
  }
  require_positive(r, "instance.values", inst.values);
  inst.ad_factors = r.list("instance.ad_factors");
  inst.position_factors = r.list("instance.position_factors");
  inst.n_slots = r.count("instance.slots", 0);
  inst.reserve = r.number("instance.reserve", 0.0);
  require_non_negative(r, "instance.reserve", inst.reserve);

  const std::string model = r.has("instance.ctr_model") ? r.text("instance.ctr_model") : "product";
  if (model == "product") {
    inst.ctr = CtrKind::kProduct;
  } else if (model == "competitor_group") {
    inst.ctr = CtrKind::kCompetitorGroup;
  } else {
    r.fail("instance.ctr_model", "expected 'product' or 'competitor_group'");
  }
  for (double g : r.list("instance.group1")) {
    if (g < 1.0 || g != static_cast<double>(static_cast<std::size_t>(g))) {
      r.fail("instance.group1", "expected 1-based advertiser numbers");
    }
    inst.group1.push_back(static_cast<std::size_t>(g) - 1);
  }
  inst.group1_users = r.number("instance.group1_users", 0.0);
  inst.group2_users = r.number("instance.group2_users", 0.0);
  require_non_negative(r, "instance.group1_users", inst.group1_users);
  require_non_negative(r, "instance.group2_users", inst.group2_users);

  // Lists ad factors under the position label and vice versa; swap them back
  // over the real slots and keep the tails where they are.
  const bool swap = r.has("instance.swap_factor_labels") &&
                    r.text("instance.swap_factor_labels") == "true";

  NoiseSpec& noise = cfg.noise;
  noise.var_v = r.number("noise.var_v", 0.0);
  noise.var_q = r.number("noise.var_q", 0.0);
  noise.var_s = r.number("noise.var_s", 0.0);
  for (const char* k : {"noise.var_v", "noise.var_q", "noise.var_s"}) {
    require_non_negative(r, k, r.number(k, 0.0));
  }
  noise.instances = r.count("noise.instances", noise.instances);
  noise.floor = r.number("noise.floor", noise.floor);
  if (!(noise.floor > 0.0)) r.fail("noise.floor", "must be positive");

  if (swap) {
    const std::size_t m = std::min({inst.n_slots, inst.ad_factors.size(),
                                    inst.position_factors.size()});
    for (std::size_t k = 0; k < m; ++k) {
      std::swap(inst.ad_factors[k], inst.position_factors[k]);
    }
    std::swap(noise.var_q, noise.var_s);
  }
  if (inst.position_factors.size() < inst.values.size()) {
    inst.position_factors.resize(inst.values.size(), 0.0);
  }

  ScorerSpec& sc = cfg.scorer;
  sc.initial_score = r.number("scorer.initial_score", sc.initial_score);
  if (!(sc.initial_score > 0.0)) r.fail("scorer.initial_score", "must be positive");
  sc.epsilon = r.number("scorer.epsilon", sc.epsilon);
  if (!(sc.epsilon > 0.0 && sc.epsilon < 1.0)) r.fail("scorer.epsilon", "must lie in (0, 1)");
  sc.delta = r.number("scorer.delta", sc.delta);
  require_non_negative(r, "scorer.delta", sc.delta);
  sc.max_adjustments = r.count("scorer.max_adjustments", sc.max_adjustments);
  sc.max_rounds = r.count("scorer.max_rounds", sc.max_rounds);
  sc.tolerance = r.number("scorer.tolerance", sc.tolerance);
  if (!(sc.tolerance > 0.0)) r.fail("scorer.tolerance", "must be positive");
  if (r.has("scorer.initial_bids")) {
    const std::string b = r.text("scorer.initial_bids");
    if (b == "value") {
      sc.initial_bids = InitialBids::kValue;
    } else if (b == "random") {
      sc.initial_bids = InitialBids::kRandom;
    } else {
      r.fail("scorer.initial_bids", "expected 'value' or 'random'");
    }
  }

  if (r.has("scorer.bid_placement")) {
    const std::string b = r.text("scorer.bid_placement");
    if (b == "balanced") {
      sc.bid_placement = BidPlacement::kBalanced;
    } else if (b == "lazy_balanced") {
      sc.bid_placement = BidPlacement::kLazyBalanced;
    } else if (b == "midpoint") {
      sc.bid_placement = BidPlacement::kMidpoint;
    } else {
      r.fail("scorer.bid_placement", "expected 'balanced', 'lazy_balanced' or 'midpoint'");
    }
  }

  TrialSpec& tr = cfg.trials;
  tr.trials = r.count("trials.count", tr.trials);
  tr.value_min = static_cast<int>(r.count("trials.value_min", tr.value_min));
  tr.value_max = static_cast<int>(r.count("trials.value_max", tr.value_max));
  tr.ad_factor_min = static_cast<int>(r.count("trials.ad_factor_min", tr.ad_factor_min));
  tr.ad_factor_max = static_cast<int>(r.count("trials.ad_factor_max", tr.ad_factor_max));
  if (tr.value_min < 1 || tr.value_max < tr.value_min) {
    r.fail("trials.value_min", "value range must be 1 <= min <= max");
  }
  if (tr.ad_factor_max < tr.ad_factor_min) {
    r.fail("trials.ad_factor_min", "ad factor range must have min <= max");
  }

  if (r.has("run.seed")) {
    const std::string s = r.text("run.seed");
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), cfg.seed);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      r.fail("run.seed", "expected an unsigned 64-bit integer");
    }
  }
  if (r.has("output.dir")) cfg.out_dir = r.text("output.dir");

  if (!inst.values.empty()) {
    try {
      make_instance(inst);
    } catch (const std::exception& e) {
      r.fail("instance.values", e.what());
    }
  }
  return cfg;
}

AuctionInstance make_instance(const InstanceSpec& spec) {
  const std::size_t n = spec.values.size();
  if (spec.ad_factors.size() != n) {
    throw InstanceError("ad_factors must have one entry per advertiser");
  }
  std::vector<double> s = spec.position_factors;
  s.resize(n, 0.0);
  if (spec.ctr == CtrKind::kProduct) {
    return AuctionInstance(spec.values, spec.n_slots,
                           ProductFormCtr(spec.ad_factors, s, spec.n_slots),
                           spec.reserve);
  }
  return AuctionInstance(
      spec.values, spec.n_slots,
      CompetitorGroupCtr(spec.ad_factors, s, spec.n_slots, spec.group1,
                         spec.group1_users, spec.group2_users),
      spec.reserve);
}

}  // namespace adscore::harness
