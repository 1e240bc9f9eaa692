#include "msched/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <regex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "msched/baselines.hpp"
#include "msched/ratemod.hpp"

namespace msched::harness {

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::Epochs:
      return "epochs";
    case SweepAxis::Users:
      return "users";
    case SweepAxis::Antennas:
      return "antennas";
    case SweepAxis::Snr:
      return "snr";
  }
  return "unknown";
}

std::string_view to_string(Method method) {
  switch (method) {
    case Method::Exhaustive:
      return "exhaustive";
    case Method::Greedy:
      return "greedy";
    case Method::Qrl:
      return "qrl";
    case Method::Random:
      return "random";
  }
  return "unknown";
}

ConfigError::ConfigError(int line, const std::string& message)
    : std::runtime_error(line > 0 ? "config line " + std::to_string(line) + ": " + message : "config: " + message),
      line_(line) {}

bool ExperimentSpec::has(Method m) const { return std::find(methods.begin(), methods.end(), m) != methods.end(); }

chanmod::ChannelConfig ExperimentSpec::channel_config(int t, int a, double snr, std::uint64_t s) const {
  auto cfg = chanmod::make_config(a, t, snr, s, rician_k, corr_coeff);
  if (array_rows > 0 && a == antennas) {
    cfg.array_rows = array_rows;
    cfg.array_cols = array_cols;
  }
  return cfg;
}

std::vector<double> default_axis_values(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::Users:
      return {2, 4, 6, 8, 10};
    case SweepAxis::Antennas:
      return {8, 16, 32, 64};
    case SweepAxis::Snr:
      return {0, 5, 10, 15, 20, 25};
    case SweepAxis::Epochs:
      break;
  }
  return {};
}

// ---------------------------------------------------------------------------
// Config parsing

namespace {

struct Entry {
  int line = 0;
  std::string value;
};

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(value);
  while (std::getline(is, item, ',')) out.push_back(item);
  if (!value.empty() && value.back() == ',') out.emplace_back();
  return out;
}

template <class T>
T parse_number(const std::string& key, const Entry& e, const std::string& text) {
  T v{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (text.empty() || ec != std::errc() || ptr != last) {
    throw ConfigError(e.line, "key '" + key + "': cannot parse '" + text + "' as a number");
  }
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(v)) throw ConfigError(e.line, "key '" + key + "': value must be finite");
  }
  return v;
}

template <class T>
std::vector<T> parse_numbers(const std::string& key, const Entry& e) {
  std::vector<T> out;
  for (const auto& item : split_list(e.value)) out.push_back(parse_number<T>(key, e, item));
  if (out.empty()) throw ConfigError(e.line, "key '" + key + "': empty value");
  return out;
}

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys{
      "axis",          "users",          "antennas",     "array_rows",     "array_cols",
      "snr_db",        "rician_k",       "corr",         "epochs",         "batch",
      "learning_rate", "grover_iters",   "threshold",    "quantile_start", "quantile_end",
      "quantile",      "validation_slots", "forgetting", "guard",          "exploit_rounds",
      "methods",       "realizations",   "seed"};
  return keys;
}

std::map<std::string, Entry> tokenize(std::string_view text) {
  static const std::regex around_equals(R"(\s*=\s*)");
  std::map<std::string, Entry> entries;
  std::istringstream is{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = std::regex_replace(raw, around_equals, "=");
    std::istringstream words(line);
    std::string tok;
    while (words >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw ConfigError(line_no, "expected key=value, got '" + tok + "'");
      }
      std::string key = tok.substr(0, eq);
      const auto& keys = known_keys();
      if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
        throw ConfigError(line_no, "unknown key '" + key + "'");
      }
      if (entries.contains(key)) {
        throw ConfigError(line_no, "key '" + key + "' repeated (first set on line " +
                                       std::to_string(entries[key].line) + ")");
      }
      entries[key] = Entry{line_no, tok.substr(eq + 1)};
    }
  }
  return entries;
}

}  // namespace

ExperimentSpec parse_config(std::string_view text) {
  auto entries = tokenize(text);
  ExperimentSpec spec;
  auto& tc = spec.train;

  auto get = [&](const std::string& key) -> const Entry* {
    auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
  };
  auto single_int = [&](const std::string& key, int& out) {
    if (const auto* e = get(key)) {
      const auto v = parse_numbers<long long>(key, *e);
      if (v.size() != 1) throw ConfigError(e->line, "key '" + key + "' takes a single value");
      if (v[0] < std::numeric_limits<int>::min() || v[0] > std::numeric_limits<int>::max()) {
        throw ConfigError(e->line, "key '" + key + "': value out of range");
      }
      out = static_cast<int>(v[0]);
    }
  };
  auto single_double = [&](const std::string& key, double& out) {
    if (const auto* e = get(key)) {
      const auto v = parse_numbers<double>(key, *e);
      if (v.size() != 1) throw ConfigError(e->line, "key '" + key + "' takes a single value");
      out = v[0];
    }
  };

  // Sweepable keys may carry lists.
  std::vector<double> users_v{static_cast<double>(spec.users)};
  std::vector<double> antennas_v{static_cast<double>(spec.antennas)};
  std::vector<double> snr_v{spec.snr_db};
  struct Sweepable {
    const char* key;
    SweepAxis axis;
    std::vector<double>* values;
    bool integral;
  };
  const Sweepable sweepables[] = {{"users", SweepAxis::Users, &users_v, true},
                                  {"antennas", SweepAxis::Antennas, &antennas_v, true},
                                  {"snr_db", SweepAxis::Snr, &snr_v, false}};
  const Sweepable* list_axis = nullptr;
  for (const auto& s : sweepables) {
    const auto* e = get(s.key);
    if (!e) continue;
    if (s.integral) {
      const auto v = parse_numbers<long long>(s.key, *e);
      s.values->assign(v.begin(), v.end());
      for (auto x : v) {
        if (x < 1 || x > 4096) throw ConfigError(e->line, std::string("key '") + s.key + "': values must lie in [1, 4096]");
      }
    } else {
      *s.values = parse_numbers<double>(s.key, *e);
    }
    if (s.values->size() > 1) {
      if (list_axis) {
        throw ConfigError(e->line, std::string("only one key may list several values; '") + list_axis->key +
                                       "' already does");
      }
      list_axis = &s;
      for (std::size_t i = 1; i < s.values->size(); ++i) {
        if (!((*s.values)[i] > (*s.values)[i - 1])) {
          throw ConfigError(e->line, std::string("key '") + s.key + "': sweep values must be strictly increasing");
        }
      }
    }
  }

  if (const auto* e = get("axis")) {
    SweepAxis ax{};
    if (e->value == "epochs") ax = SweepAxis::Epochs;
    else if (e->value == "users") ax = SweepAxis::Users;
    else if (e->value == "antennas") ax = SweepAxis::Antennas;
    else if (e->value == "snr") ax = SweepAxis::Snr;
    else throw ConfigError(e->line, "key 'axis': expected epochs, users, antennas or snr, got '" + e->value + "'");
    if (list_axis && list_axis->axis != ax) {
      throw ConfigError(e->line, "key 'axis' is '" + e->value + "' but '" + list_axis->key + "' lists several values");
    }
    spec.axis = ax;
    if (!list_axis && ax != SweepAxis::Epochs) {
      for (const auto& s : sweepables) {
        if (s.axis == ax) {
          if (get(s.key)) {
            spec.axis_values = *s.values;
          } else {
            spec.axis_values = default_axis_values(ax);
          }
        }
      }
    }
  } else if (list_axis) {
    spec.axis = list_axis->axis;
  }
  if (list_axis) spec.axis_values = *list_axis->values;

  spec.users = static_cast<int>(users_v.front());
  spec.antennas = static_cast<int>(antennas_v.front());
  spec.snr_db = snr_v.front();

  single_int("array_rows", spec.array_rows);
  single_int("array_cols", spec.array_cols);
  single_double("rician_k", spec.rician_k);
  single_double("corr", spec.corr_coeff);
  single_int("epochs", tc.epochs);
  single_int("batch", tc.batch_size);
  single_double("learning_rate", tc.learning_rate);
  single_double("quantile_start", tc.quantile_start);
  single_double("quantile_end", tc.quantile_end);
  if (const auto* e = get("quantile")) {
    if (get("quantile_start") || get("quantile_end")) {
      throw ConfigError(e->line, "key 'quantile' conflicts with quantile_start/quantile_end");
    }
    single_double("quantile", tc.quantile_start);
    tc.quantile_end = tc.quantile_start;
  }
  single_int("validation_slots", tc.validation_slots);
  single_double("forgetting", tc.forgetting);
  single_double("guard", tc.guard);
  single_int("exploit_rounds", tc.exploit_rounds);
  single_int("realizations", spec.realizations);

  if (const auto* e = get("grover_iters")) {
    if (e->value != "auto") {
      int g = 0;
      single_int("grover_iters", g);
      tc.grover_iters = g;
    }
  }
  if (const auto* e = get("threshold")) {
    if (e->value != "adaptive") {
      double tau = 0.0;
      single_double("threshold", tau);
      tc.oracle_threshold = tau;
    }
  }
  if (const auto* e = get("seed")) {
    const auto v = parse_numbers<unsigned long long>("seed", *e);
    if (v.size() != 1) throw ConfigError(e->line, "key 'seed' takes a single value");
    spec.seed = v[0];
  }
  if (const auto* e = get("methods")) {
    spec.methods.clear();
    for (const auto& name : split_list(e->value)) {
      Method m{};
      if (name == "qrl") m = Method::Qrl;
      else if (name == "exhaustive") m = Method::Exhaustive;
      else if (name == "greedy") m = Method::Greedy;
      else if (name == "random") m = Method::Random;
      else throw ConfigError(e->line, "key 'methods': unknown method '" + name + "'");
      if (spec.has(m)) throw ConfigError(e->line, "key 'methods': '" + name + "' listed twice");
      spec.methods.push_back(m);
    }
  }

  // Whole-config checks.
  if (spec.realizations < 1) throw ConfigError(get("realizations")->line, "key 'realizations' must be >= 1");
  if ((spec.array_rows > 0) != (spec.array_cols > 0)) {
    throw ConfigError(0, "array_rows and array_cols must be given together");
  }
  if (spec.array_rows > 0) {
    if (spec.axis == SweepAxis::Antennas) throw ConfigError(0, "array_rows/array_cols cannot be fixed in an antenna sweep");
    if (spec.array_rows * spec.array_cols != spec.antennas) {
      throw ConfigError(0, "array_rows * array_cols (" + std::to_string(spec.array_rows * spec.array_cols) +
                               ") must equal antennas (" + std::to_string(spec.antennas) + ")");
    }
  }

  std::vector<std::pair<int, int>> points;  // (T, A)
  if (spec.axis == SweepAxis::Users) {
    for (double t : spec.axis_values) points.emplace_back(static_cast<int>(t), spec.antennas);
  } else if (spec.axis == SweepAxis::Antennas) {
    for (double a : spec.axis_values) points.emplace_back(spec.users, static_cast<int>(a));
  } else {
    points.emplace_back(spec.users, spec.antennas);
  }
  const bool sweep = spec.axis != SweepAxis::Epochs;
  for (auto [t, a] : points) {
    if (t > a) {
      throw ConfigError(0, "users (" + std::to_string(t) + ") exceeds antennas (" + std::to_string(a) +
                               "); need T <= A");
    }
    if (t > qsim::kMaxQubits) {
      throw ConfigError(0, "users (" + std::to_string(t) + ") exceeds the statevector cap of 24");
    }
    // Sweeps always run the exhaustive reference scheduler.
    if (sweep && t > baselines::kMaxExhaustiveUsers) {
      throw ConfigError(0, "users (" + std::to_string(t) + ") exceeds the exhaustive-search cap of 20");
    }
  }
  if (sweep && spec.methods.empty()) throw ConfigError(0, "a sweep needs at least one method");

  try {
    auto check = spec.train;
    check.channel = spec.channel_config(points.front().first, points.front().second, spec.snr_db, spec.seed);
    for (double snr : spec.axis == SweepAxis::Snr ? spec.axis_values : std::vector<double>{spec.snr_db}) {
      check.channel.noise_var = chanmod::snr_db_to_noise_var(snr);
      check.validate();
    }
  } catch (const std::invalid_argument& ex) {
    throw ConfigError(0, ex.what());
  }
  return spec;
}

ExperimentSpec load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(0, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

// ---------------------------------------------------------------------------
// Runs

std::vector<ResultRow> run_convergence(const ExperimentSpec& spec) {
  if (spec.axis != SweepAxis::Epochs) {
    throw std::invalid_argument("run_convergence needs axis=epochs, config has axis=" + std::string(to_string(spec.axis)));
  }
  auto tc = spec.train;
  tc.seed = spec.seed;
  tc.channel = spec.channel_config(spec.users, spec.antennas, spec.snr_db, spec.seed);
  tc.log_validation = true;
  const auto result = qrl::train(tc);

  std::vector<ResultRow> rows;
  rows.reserve(result.log.epochs.size());
  for (const auto& rec : result.log.epochs) {
    ResultRow r;
    r.method = "qrl";
    r.users = spec.users;
    r.antennas = spec.antennas;
    r.snr_db = spec.snr_db;
    r.epoch = rec.epoch;
    r.mean_sum_rate = rec.validation_sum_rate;
    r.std_sum_rate = rec.validation_sum_rate_std;
    r.pf_value = rec.validation_reward;
    r.seed = spec.seed;
    rows.push_back(std::move(r));
  }
  return rows;
}

namespace {

struct MethodSamples {
  std::vector<double> sum_rate;
  std::vector<double> pf;
};

// All methods on one (grid point, realization). Every method sees the same
// slots and the same PF state; that state follows the PF-optimal schedule so
// it does not depend on which methods were requested.
std::map<Method, MethodSamples> evaluate_point(const ExperimentSpec& spec, int users, int antennas, double snr,
                                               int realization) {
  const std::uint64_t seed = derive_seed({spec.seed, static_cast<std::uint64_t>(Stream::kRealization),
                                          static_cast<std::uint64_t>(realization)});
  auto tc = spec.train;
  tc.seed = seed;
  tc.channel = spec.channel_config(users, antennas, snr, seed);
  tc.log_validation = false;

  std::optional<qrl::TrainResult> trained;
  if (spec.has(Method::Qrl)) trained = qrl::train(tc);

  const qrl::Scenario scenario(tc.channel);
  std::map<Method, MethodSamples> out;
  for (auto m : spec.methods) {
    out[m].sum_rate.reserve(static_cast<std::size_t>(tc.validation_slots));
    out[m].pf.reserve(static_cast<std::size_t>(tc.validation_slots));
  }

  ratemod::PFState pf;
  for (int v = 0; v < tc.validation_slots; ++v) {
    const auto slot = scenario.validation_slot(v);
    if (v == 0) pf = ratemod::initial_pf_state(slot.gains, tc.forgetting, tc.guard);
    const auto best = baselines::exhaustive_best(slot.gains, pf);
    for (auto m : spec.methods) {
      ratemod::SchedulingVector theta;
      switch (m) {
        case Method::Exhaustive:
          theta = best.policy;
          break;
        case Method::Greedy:
          theta = baselines::greedy_pf(slot.gains, pf);
          break;
        case Method::Random: {
          auto rng = make_rng(seed, Stream::kRandomBaseline, slot.index);
          theta = baselines::random_policy(users, rng);
          break;
        }
        case Method::Qrl:
          theta = qrl::act(trained->agent, tc, slot, pf);
          break;
      }
      const auto report = ratemod::instantaneous_rates(slot.gains, theta);
      out[m].sum_rate.push_back(report.sum_rate);
      out[m].pf.push_back(ratemod::pf_objective(report, pf, theta));
    }
    pf = ratemod::pf_update(pf, ratemod::instantaneous_rates(slot.gains, best.policy), best.policy);
  }
  return out;
}

template <class Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn) {
  if (workers <= 0) workers = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
  workers = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(workers), std::max<std::size_t>(count, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace

std::vector<ResultRow> run_sweep(const ExperimentSpec& spec, int workers) {
  if (spec.axis == SweepAxis::Epochs || spec.axis_values.empty()) {
    throw std::invalid_argument("run_sweep needs a users, antennas or snr axis with values");
  }
  const std::size_t points = spec.axis_values.size();
  const auto reps = static_cast<std::size_t>(spec.realizations);

  auto grid = [&](std::size_t p) {
    int t = spec.users;
    int a = spec.antennas;
    double snr = spec.snr_db;
    const double v = spec.axis_values[p];
    switch (spec.axis) {
      case SweepAxis::Users:
        t = static_cast<int>(v);
        break;
      case SweepAxis::Antennas:
        a = static_cast<int>(v);
        break;
      case SweepAxis::Snr:
        snr = v;
        break;
      case SweepAxis::Epochs:
        break;
    }
    return std::tuple{t, a, snr};
  };

  std::vector<std::map<Method, MethodSamples>> results(points * reps);
  parallel_for(points * reps, workers, [&](std::size_t task) {
    const auto [t, a, snr] = grid(task / reps);
    results[task] = evaluate_point(spec, t, a, snr, static_cast<int>(task % reps));
  });

  std::vector<Method> methods = spec.methods;
  std::sort(methods.begin(), methods.end());
  std::vector<ResultRow> rows;
  for (auto m : methods) {
    for (std::size_t p = 0; p < points; ++p) {
      const auto [t, a, snr] = grid(p);
      double sum = 0.0;
      double pf_sum = 0.0;
      std::size_t n = 0;
      for (std::size_t r = 0; r < reps; ++r) {
        const auto& s = results[p * reps + r].at(m);
        for (std::size_t i = 0; i < s.sum_rate.size(); ++i) {
          sum += s.sum_rate[i];
          pf_sum += s.pf[i];
          ++n;
        }
      }
      const double mean = sum / static_cast<double>(n);
      double var = 0.0;
      for (std::size_t r = 0; r < reps; ++r) {
        for (double x : results[p * reps + r].at(m).sum_rate) var += (x - mean) * (x - mean);
      }
      ResultRow row;
      row.method = std::string(to_string(m));
      row.users = t;
      row.antennas = a;
      row.snr_db = snr;
      row.epoch = -1;
      row.mean_sum_rate = mean;
      row.std_sum_rate = std::sqrt(var / static_cast<double>(n));
      row.pf_value = pf_sum / static_cast<double>(n);
      row.seed = spec.seed;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Output

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

void write_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
  os << kCsvHeader << '\n';
  for (const auto& r : rows) {
    os << r.method << ',' << r.users << ',' << r.antennas << ',' << fmt_double(r.snr_db) << ',' << r.epoch << ','
       << fmt_double(r.mean_sum_rate) << ',' << fmt_double(r.std_sum_rate) << ',' << fmt_double(r.pf_value) << ','
       << r.seed << '\n';
  }
}

void write_json(std::ostream& os, const std::vector<ResultRow>& rows) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json j;
    j["method"] = r.method;
    j["T"] = r.users;
    j["A"] = r.antennas;
    j["snr_db"] = r.snr_db;
    j["epoch"] = r.epoch;
    j["mean_sum_rate"] = r.mean_sum_rate;
    j["std_sum_rate"] = r.std_sum_rate;
    j["pf_value"] = r.pf_value;
    j["seed"] = r.seed;
    arr.push_back(std::move(j));
  }
  os << arr.dump(2) << '\n';
}

std::filesystem::path write_results(const std::filesystem::path& path, const std::vector<ResultRow>& rows) {
  auto json_path = path;
  json_path.replace_extension(".json");
  if (json_path == path) json_path += ".json";

  auto write = [&](const std::filesystem::path& p, auto&& writer) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + p.string() + "' for writing");
    writer(out);
    out.flush();
    if (!out) throw std::runtime_error("write to '" + p.string() + "' failed");
  };
  write(path, [&](std::ostream& os) { write_csv(os, rows); });
  write(json_path, [&](std::ostream& os) { write_json(os, rows); });
  return json_path;
}

}  // namespace msched::harness
