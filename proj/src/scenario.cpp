#include "ssfm/scenario.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

namespace ssfm {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value))
    throw ConfigError("config: '" + std::string(key) + "' expects a number, got '" + std::string(text) + "'");
  return value;
}

long long parse_integer(std::string_view key, std::string_view text) {
  long long value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end)
    throw ConfigError("config: '" + std::string(key) + "' expects an integer, got '" + std::string(text) + "'");
  return value;
}

int parse_int(std::string_view key, std::string_view text) {
  const long long value = parse_integer(key, text);
  if (value < -2147483647LL || value > 2147483647LL)
    throw ConfigError("config: '" + std::string(key) + "' is out of range");
  return static_cast<int>(value);
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

Scenario paper_base() {
  Scenario s;
  s.fiber = FiberParams{0.0, -21.7, 1.27, 1000.0};
  s.launch = LaunchSpec{10.0, 0.1, 10e9};
  s.candidate_dz = 0.1;
  s.filter_fraction.reset();
  return s;
}

void apply_scale(Scenario& s, bool desk_scale) {
  // The optimizer keeps its 1% grid at desk scale; only plotted axes thin out.
  s.search_fractions = default_search_fractions();
  s.n_symbols = desk_scale ? 64 : 256;
  s.seeds = parse_seeds(desk_scale ? "10" : "20");
}

}  // namespace

void Scenario::validate() const {
  fiber.validate();
  if (!(launch.rolloff >= 0.0 && launch.rolloff <= 1.0)) throw ConfigError("scenario: rolloff must lie in [0, 1]");
  if (!(launch.baud_rate > 0.0)) throw ConfigError("scenario: baud rate must be positive");
  if (n_symbols < 1) throw ConfigError("scenario: n_symbols must be >= 1");
  if (candidate_spp < 2 || benchmark_spp < 2) throw ConfigError("scenario: samples per symbol must be >= 2");
  if (candidate_spp > benchmark_spp) throw ConfigError("scenario: candidate_spp exceeds benchmark_spp");
  if (!(candidate_dz > 0.0) || !(benchmark_dz > 0.0)) throw ConfigError("scenario: step sizes must be positive");
  if (candidate_dz < benchmark_dz) throw ConfigError("scenario: candidate_dz is finer than benchmark_dz");
  if ((static_cast<long long>(n_symbols) * candidate_spp) % 2 != 0 ||
      (static_cast<long long>(n_symbols) * benchmark_spp) % 2 != 0)
    throw ConfigError("scenario: n_symbols * samples_per_symbol must be even");
  if (seeds.empty()) throw ConfigError("scenario: seed list is empty");
  if (filter_fraction && !(*filter_fraction > 0.0 && *filter_fraction <= 1.0))
    throw ConfigError("scenario: filter_fraction must lie in (0, 1]");
  if (!filter_fraction) {
    if (search_fractions.empty()) throw ConfigError("scenario: search grid is empty");
    for (std::size_t i = 0; i < search_fractions.size(); ++i) {
      const double f = search_fractions[i];
      if (!(f > 0.0 && f <= 1.0)) throw ConfigError("scenario: search fractions must lie in (0, 1]");
      if (i > 0 && !(f > search_fractions[i - 1])) throw ConfigError("scenario: search fractions must ascend");
    }
    if (search_fractions.back() != 1.0) throw ConfigError("scenario: search grid must contain 1.0");
  }
}

SamplingGrid Scenario::candidate_grid() const { return make_grid(n_symbols, candidate_spp, launch.symbol_time_ps()); }
SamplingGrid Scenario::benchmark_grid() const { return make_grid(n_symbols, benchmark_spp, launch.symbol_time_ps()); }

std::vector<double> fraction_grid(double lo, double hi, double step) {
  if (!(lo > 0.0 && hi <= 1.0 && lo <= hi && step > 0.0))
    throw ConfigError("search grid: need 0 < lo <= hi <= 1 and step > 0");
  std::vector<double> out;
  const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  for (long i = 0; i <= count; ++i) {
    const double v = std::round((lo + static_cast<double>(i) * step) * 1e9) / 1e9;
    if (v < hi) out.push_back(v);
  }
  out.push_back(hi);
  return out;
}

std::vector<double> default_search_fractions() { return fraction_grid(0.50, 1.00, 0.01); }

std::vector<std::uint64_t> parse_seeds(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw ConfigError("seeds: empty specification");
  std::vector<std::uint64_t> out;
  if (text.find(',') == std::string_view::npos) {
    const long long count = parse_integer("seeds", text);
    if (count < 1) throw ConfigError("seeds: count must be >= 1");
    for (long long i = 0; i < count; ++i) out.push_back(static_cast<std::uint64_t>(i));
    return out;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto item = trim(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    if (item.empty() && comma == std::string_view::npos && !out.empty()) break;
    const long long v = parse_integer("seeds", item);
    if (v < 0) throw ConfigError("seeds: seeds must be non-negative");
    out.push_back(static_cast<std::uint64_t>(v));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

Scenario parse_scenario(std::istream& in, Scenario base) {
  Scenario s = std::move(base);
  std::optional<double> search_min, search_max, search_step;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    const auto key = trim(view.substr(0, eq));
    const auto value = trim(view.substr(eq + 1));

    if (key == "name") s.name = std::string(value);
    else if (key == "baud_rate_gbaud") s.launch.baud_rate = parse_double(key, value) * 1e9;
    else if (key == "rolloff") s.launch.rolloff = parse_double(key, value);
    else if (key == "power_dbm") s.launch.power_dbm = parse_double(key, value);
    else if (key == "alpha_per_km") s.fiber.alpha = parse_double(key, value);
    else if (key == "beta2_ps2_per_km") s.fiber.beta2 = parse_double(key, value);
    else if (key == "gamma_per_w_km") s.fiber.gamma = parse_double(key, value);
    else if (key == "span_km") s.fiber.span_length = parse_double(key, value);
    else if (key == "candidate_spp") s.candidate_spp = parse_int(key, value);
    else if (key == "candidate_dz_km") s.candidate_dz = parse_double(key, value);
    else if (key == "filter_fraction") {
      if (value == "optimize") s.filter_fraction.reset();
      else s.filter_fraction = parse_double(key, value);
    }
    else if (key == "n_symbols") s.n_symbols = parse_int(key, value);
    else if (key == "seeds") s.seeds = parse_seeds(value);
    else if (key == "benchmark_spp") s.benchmark_spp = parse_int(key, value);
    else if (key == "benchmark_dz_km") s.benchmark_dz = parse_double(key, value);
    else if (key == "search_min") search_min = parse_double(key, value);
    else if (key == "search_max") search_max = parse_double(key, value);
    else if (key == "search_step") search_step = parse_double(key, value);
    else throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
  }
  if (search_min || search_max || search_step)
    s.search_fractions = fraction_grid(search_min.value_or(0.50), search_max.value_or(1.00), search_step.value_or(0.01));
  if (s.search_fractions.empty()) s.search_fractions = default_search_fractions();
  if (s.seeds.empty()) s.seeds = parse_seeds("20");
  s.validate();
  return s;
}

Scenario load_scenario(const std::string& path, Scenario base) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open config file '" + path + "'");
  return parse_scenario(in, std::move(base));
}

std::string format_scenario(const Scenario& s) {
  std::ostringstream out;
  out << "name = " << s.name << '\n'
      << "baud_rate_gbaud = " << fmt_double(s.launch.baud_rate / 1e9) << '\n'
      << "rolloff = " << fmt_double(s.launch.rolloff) << '\n'
      << "power_dbm = " << fmt_double(s.launch.power_dbm) << '\n'
      << "alpha_per_km = " << fmt_double(s.fiber.alpha) << '\n'
      << "beta2_ps2_per_km = " << fmt_double(s.fiber.beta2) << '\n'
      << "gamma_per_w_km = " << fmt_double(s.fiber.gamma) << '\n'
      << "span_km = " << fmt_double(s.fiber.span_length) << '\n'
      << "candidate_spp = " << s.candidate_spp << '\n'
      << "candidate_dz_km = " << fmt_double(s.candidate_dz) << '\n'
      << "filter_fraction = " << (s.filter_fraction ? fmt_double(*s.filter_fraction) : "optimize") << '\n'
      << "n_symbols = " << s.n_symbols << '\n'
      << "seeds = ";
  for (std::size_t i = 0; i < s.seeds.size(); ++i) out << (i ? "," : "") << s.seeds[i];
  // A single seed would read back as a count.
  if (s.seeds.size() == 1) out << ',';
  out << '\n'
      << "benchmark_spp = " << s.benchmark_spp << '\n'
      << "benchmark_dz_km = " << fmt_double(s.benchmark_dz) << '\n';
  if (s.search_fractions.size() >= 2) {
    out << "search_min = " << fmt_double(s.search_fractions.front()) << '\n'
        << "search_max = " << fmt_double(s.search_fractions.back()) << '\n'
        << "search_step = " << fmt_double(s.search_fractions[1] - s.search_fractions[0]) << '\n';
  }
  return out.str();
}

Axis parse_axis(std::string_view text) {
  if (text == "distance") return Axis::distance;
  if (text == "power") return Axis::power;
  if (text == "dt" || text == "time_discretization") return Axis::time_discretization;
  if (text == "bandwidth") return Axis::bandwidth;
  throw ConfigError("unknown sweep axis '" + std::string(text) + "'");
}

std::string_view axis_column_name(Axis axis) {
  switch (axis) {
    case Axis::distance: return "distance_km";
    case Axis::power: return "power_dbm";
    case Axis::time_discretization: return "samples_per_symbol";
    case Axis::bandwidth: return "filter_fraction";
  }
  return "axis";
}

std::string_view axis_cli_name(Axis axis) {
  switch (axis) {
    case Axis::distance: return "distance";
    case Axis::power: return "power";
    case Axis::time_discretization: return "dt";
    case Axis::bandwidth: return "bandwidth";
  }
  return "axis";
}

std::vector<Experiment> preset_experiments(std::string_view name, bool desk_scale) {
  Scenario base = paper_base();
  apply_scale(base, desk_scale);
  std::vector<Experiment> out;

  if (name == "fig2") {
    base.name = "fig2";
    base.fiber.span_length = 600.0;
    base.launch.power_dbm = 9.6;
    base.candidate_dz = 1.5;
    base.candidate_spp = 30;
    out.push_back({"fig2", base, Axis::time_discretization, {30, 10, 8, 6, 4}});
  } else if (name == "fig3a") {
    base.name = "fig3a";
    base.candidate_spp = 16;
    std::vector<double> distances;
    if (desk_scale) distances = {200, 600, 1000};
    else for (int z = 100; z <= 1000; z += 100) distances.push_back(z);
    out.push_back({"fig3a", base, Axis::distance, distances});
  } else if (name == "fig3b") {
    base.name = "fig3b";
    base.candidate_spp = 8;
    std::vector<double> powers;
    if (desk_scale) powers = {5.4, 6.6, 7.8};
    else powers = {5.4, 5.8, 6.2, 6.6, 7.0, 7.4, 7.8};
    out.push_back({"fig3b", base, Axis::power, powers});
  } else if (name == "fig3c") {
    base.name = "fig3c";
    base.candidate_spp = 16;
    std::vector<double> spp;
    if (desk_scale) spp = {18, 16, 14};
    else spp = {21, 20, 19, 18, 17, 16, 15, 14};
    out.push_back({"fig3c", base, Axis::time_discretization, spp});
  } else if (name == "fig3d") {
    struct Curve { const char* name; int spp; double power; };
    for (const Curve c : {Curve{"fig3d_ts16_p10", 16, 10.0}, Curve{"fig3d_ts17_p10", 17, 10.0},
                          Curve{"fig3d_ts8_p6.3", 8, 6.3}, Curve{"fig3d_ts7_p6.3", 7, 6.3}}) {
      Scenario s = base;
      s.name = c.name;
      s.candidate_spp = c.spp;
      s.launch.power_dbm = c.power;
      out.push_back({c.name, s, Axis::bandwidth, desk_scale ? fraction_grid(0.50, 1.00, 0.05) : s.search_fractions});
    }
  } else {
    throw ConfigError("unknown preset '" + std::string(name) + "'");
  }
  for (const auto& e : out) e.base.validate();
  return out;
}

}  // namespace ssfm
