// Acceptance suite: one PASS/FAIL line per criterion.
//
//   msched_acceptance [path/to/msched]
//
// With the CLI path given, the determinism check also runs the binary twice
// per command and compares the files byte for byte.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "msched/baselines.hpp"
#include "msched/chanmod.hpp"
#include "msched/grover.hpp"
#include "msched/harness.hpp"
#include "msched/qrl.hpp"
#include "msched/qsim.hpp"
#include "msched/ratemod.hpp"

using namespace msched;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_s;  // 0: no runtime limit
  std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// --------------------------------------------------------------------------
// 1. Grover closed form

Outcome grover_closed_form() {
  double worst = 0.0;
  int cases = 0;
  for (int n = 2; n <= 10; ++n) {
    const std::uint64_t dim = std::uint64_t{1} << n;
    for (std::uint64_t m : {1u, 2u, 4u}) {
      if (m > dim) continue;
      std::vector<std::uint64_t> idx;
      for (std::uint64_t j = 0; j < m; ++j) idx.push_back((dim - 1) - j * (dim / m));
      const qsim::MarkedSet marked(idx);
      const int kopt = grover::optimal_iterations(n, m);
      for (int k = 0; k <= 3 * kopt; ++k) {
        const auto sv = grover::grover_search({n, marked, k});
        double p = 0.0;
        for (auto i : marked.indices()) p += std::norm(sv[i]);
        const double s = std::sin((2 * k + 1) * std::asin(std::sqrt(double(m) / double(dim))));
        worst = std::max(worst, std::abs(p - s * s));
        ++cases;
      }
    }
  }
  return {worst <= 1e-9, fmt("%d (N,m,k) cases, max |P_sim - closed form| = %.2e (tol 1e-9)", cases, worst)};
}

// --------------------------------------------------------------------------
// 2. Circuit identities

qsim::StateVector random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<qsim::amplitude> a(std::size_t{1} << n);
  double norm = 0.0;
  for (auto& x : a) {
    x = {g(rng), g(rng)};
    norm += std::norm(x);
  }
  for (auto& x : a) x /= std::sqrt(norm);
  return qsim::StateVector::from_amplitudes(std::move(a));
}

double max_diff(const qsim::StateVector& a, const qsim::StateVector& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

Outcome circuit_identities() {
  double uniform_err = 0.0;
  for (int n = 1; n <= 16; ++n) {
    const auto sv = qsim::uniform_state(n);
    const double expect = 1.0 / std::sqrt(std::ldexp(1.0, n));
    for (std::size_t i = 0; i < sv.dimension(); ++i) uniform_err = std::max(uniform_err, std::abs(sv[i] - expect));
  }

  std::mt19937_64 rng(2);
  double oracle_err = 0.0, diff_err = 0.0;
  for (int n = 1; n <= 10; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto v = random_state(n, rng);
      std::vector<std::uint64_t> idx;
      for (std::uint64_t i = 0; i < v.dimension(); ++i) {
        if (rng() % 3 == 0) idx.push_back(i);
      }
      const qsim::MarkedSet marked(idx);
      auto o = v;
      qsim::apply_phase_oracle(o, marked);
      qsim::apply_phase_oracle(o, marked);
      oracle_err = std::max(oracle_err, max_diff(o, v));
      auto d = v;
      qsim::apply_diffusion(d);
      qsim::apply_diffusion(d);
      diff_err = std::max(diff_err, max_diff(d, v));
    }
  }

  // Every 5-qubit pattern, full operator comparison on all 32 basis inputs.
  int pattern_mismatch = 0;
  for (std::uint64_t p = 0; p < 32; ++p) {
    std::string pattern;
    for (int q = 0; q < 5; ++q) pattern += ((p >> (4 - q)) & 1) ? '1' : '0';
    const auto ops = qsim::oracle_from_pattern(pattern);
    for (std::uint64_t c = 0; c < 32; ++c) {
      std::vector<qsim::amplitude> e(32);
      e[c] = 1.0;
      auto gate = qsim::StateVector::from_amplitudes(e);
      qsim::apply_circuit(gate, ops);
      // Diagonal oracle: -e_c if c == p, else e_c.
      for (std::uint64_t r = 0; r < 32; ++r) {
        const qsim::amplitude expect = r == c ? (c == p ? -1.0 : 1.0) : 0.0;
        if (gate[r] != expect) ++pattern_mismatch;
      }
    }
  }
  const bool ok = uniform_err <= 1e-12 && oracle_err <= 1e-10 && diff_err <= 1e-10 && pattern_mismatch == 0;
  return {ok, fmt("uniform err %.1e (tol 1e-12), oracle^2 err %.1e, diffusion^2 err %.1e (tol 1e-10), "
                  "pattern-oracle mismatches %d/32768",
                  uniform_err, oracle_err, diff_err, pattern_mismatch)};
}

// --------------------------------------------------------------------------
// 3. Optimality recovery

Outcome optimality_recovery() {
  const qrl::Scenario sc(chanmod::make_config(16, 8, 20.0, 3));
  Rng rng = make_rng(3, Stream::kMeasure);
  const int slots = 100;
  int equal = 0, within = 0;
  double worst_ratio = 1.0;
  ratemod::PFState pf;
  for (int s = 0; s < slots; ++s) {
    const auto slot = sc.slot(static_cast<std::uint64_t>(s));
    if (s == 0) pf = ratemod::initial_pf_state(slot.gains);
    const auto rewards = qrl::candidate_rewards(slot.gains, pf);
    const double top = *std::max_element(rewards.begin(), rewards.end());
    const auto step = qrl::mark_amplify_measure(rewards, 8, top, std::nullopt, rng);
    const auto best = baselines::exhaustive_best(slot.gains, pf);
    equal += step.policy_index == best.policy.index();
    const double ratio = rewards[step.policy_index] / best.value;
    worst_ratio = std::min(worst_ratio, ratio);
    within += ratio >= 0.95;
    const auto theta = ratemod::SchedulingVector::from_index(step.policy_index, 8);
    pf = ratemod::pf_update(pf, ratemod::instantaneous_rates(slot.gains, theta), theta);
  }
  const bool ok = equal >= 90 && within == slots;
  return {ok, fmt("measured == exhaustive on %d/%d slots (need >= 90%%), PF >= 0.95x optimum on %d/%d "
                  "(worst ratio %.4f)",
                  equal, slots, within, slots, worst_ratio)};
}

// --------------------------------------------------------------------------
// 4. Convergence

Outcome convergence() {
  const int seeds = 20;
  int grew = 0, stable = 0;
  double worst_cv = 0.0;
  std::string failures;
  for (int s = 1; s <= seeds; ++s) {
    auto spec = harness::parse_config("");
    spec.seed = static_cast<std::uint64_t>(s);
    const auto rows = harness::run_convergence(spec);
    const std::size_t n = rows.size();
    if (n != 500) return {false, fmt("seed %d produced %zu rows, expected 500", s, n)};
    double start = 0.0, end = 0.0;
    for (std::size_t i = 0; i < 50; ++i) {
      start += rows[i].pf_value / 50.0;
      end += rows[n - 50 + i].pf_value / 50.0;
    }
    double mean = 0.0;
    for (std::size_t i = n - 100; i < n; ++i) mean += rows[i].pf_value / 100.0;
    double var = 0.0;
    for (std::size_t i = n - 100; i < n; ++i) var += (rows[i].pf_value - mean) * (rows[i].pf_value - mean) / 100.0;
    const double cv = std::sqrt(var) / mean;
    worst_cv = std::max(worst_cv, cv);
    if (end >= start) {
      ++grew;
    } else {
      failures += fmt(" seed %d (%.3f -> %.3f)", s, start, end);
    }
    stable += cv <= 0.15;
  }
  const bool ok = grew * 100 >= 95 * seeds && stable == seeds;
  return {ok, fmt("window-50 end >= start on %d/%d seeds (need >= 95%%), last-100 sd <= 15%% of mean on %d/%d "
                  "(worst %.1f%%)%s",
                  grew, seeds, stable, seeds, 100 * worst_cv, failures.empty() ? "" : (";" + failures).c_str())};
}

// --------------------------------------------------------------------------
// 5. Trend reproduction

std::map<std::string, std::vector<harness::ResultRow>> by_method(const std::vector<harness::ResultRow>& rows) {
  std::map<std::string, std::vector<harness::ResultRow>> out;
  for (const auto& r : rows) out[r.method].push_back(r);
  return out;
}

Outcome trends() {
  // QRL training per realization is shortened to 100 epochs to fit the budget;
  // deployment runs Grover adaptive search on top of the learned threshold.
  const char* common = " realizations=200 epochs=100 seed=11";
  const auto antennas = by_method(harness::run_sweep(harness::parse_config(std::string("axis=antennas users=6 snr_db=20") + common), 0));
  const auto snr = by_method(harness::run_sweep(harness::parse_config(std::string("axis=snr users=6 antennas=16") + common), 0));

  bool ok = true;
  std::string detail;
  auto check_sweep = [&](const char* label, const std::map<std::string, std::vector<harness::ResultRow>>& m,
                         auto axis_of) {
    const auto& q = m.at("qrl");
    const auto& g = m.at("greedy");
    const auto& r = m.at("random");
    bool mono = true, over_random = true, over_greedy = true;
    std::string series;
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (i > 0 && q[i].mean_sum_rate < q[i - 1].mean_sum_rate) mono = false;
      if (q[i].mean_sum_rate < r[i].mean_sum_rate) over_random = false;
      if (q[i].mean_sum_rate < g[i].mean_sum_rate) over_greedy = false;
      series += fmt("%s%g:%.3f/%.3f/%.3f", i ? " " : "", axis_of(q[i]), q[i].mean_sum_rate, g[i].mean_sum_rate,
                    r[i].mean_sum_rate);
    }
    ok = ok && mono && over_random && over_greedy;
    detail += fmt("%s%s [qrl/greedy/random bps/Hz %s] nondecreasing=%s >=random=%s >=greedy=%s",
                  detail.empty() ? "" : "; ", label, series.c_str(), mono ? "yes" : "no", over_random ? "yes" : "no",
                  over_greedy ? "yes" : "no");
  };
  check_sweep("A", antennas, [](const harness::ResultRow& r) { return double(r.antennas); });
  check_sweep("SNR", snr, [](const harness::ResultRow& r) { return r.snr_db; });
  return {ok, detail};
}

// --------------------------------------------------------------------------
// 6. Baseline ordering

Outcome baseline_ordering() {
  // 8 realizations x 32 validation slots = 256 slots per configuration.
  const char* common = " methods=exhaustive,greedy,random realizations=8 validation_slots=32 seed=21";
  const std::vector<std::string> configs{
      std::string("axis=users antennas=32 snr_db=20") + common,
      std::string("axis=antennas users=6 snr_db=20") + common,
      std::string("axis=snr users=6 antennas=16") + common,
      std::string("axis=snr users=8 antennas=8 snr_db=0,10,20") + common,
  };
  int tested = 0, ordered = 0;
  std::string bad;
  for (const auto& text : configs) {
    const auto m = by_method(harness::run_sweep(harness::parse_config(text), 0));
    const auto& e = m.at("exhaustive");
    const auto& g = m.at("greedy");
    const auto& r = m.at("random");
    for (std::size_t i = 0; i < e.size(); ++i) {
      ++tested;
      if (e[i].pf_value >= g[i].pf_value && g[i].pf_value >= r[i].pf_value) {
        ++ordered;
      } else {
        bad += fmt(" (T=%d A=%d snr=%g: %.3f %.3f %.3f)", e[i].users, e[i].antennas, e[i].snr_db, e[i].pf_value,
                   g[i].pf_value, r[i].pf_value);
      }
    }
  }
  return {ordered == tested, fmt("exhaustive >= greedy >= random in mean PF value on %d/%d configurations, 256 "
                                 "slots each%s",
                                 ordered, tested, bad.c_str())};
}

// --------------------------------------------------------------------------
// 7. Determinism

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism(const std::string& cli) {
  const auto dir = fs::temp_directory_path() / "msched_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string conv_cfg = "epochs=60 validation_slots=8 seed=7\n";
  const std::string sweep_cfg = "axis=snr snr_db=0,10,20 users=4 antennas=8 epochs=10 realizations=6 seed=7\n";
  std::ofstream(dir / "conv.cfg") << conv_cfg;
  std::ofstream(dir / "sweep.cfg") << sweep_cfg;

  int compared = 0, identical = 0;
  auto compare = [&](const fs::path& a, const fs::path& b) {
    ++compared;
    const auto x = slurp(a);
    identical += !x.empty() && x == slurp(b);
  };
  for (int run = 0; run < 2; ++run) {
    const auto tag = std::to_string(run);
    harness::write_results(dir / ("lib_conv" + tag + ".csv"), harness::run_convergence(harness::parse_config(conv_cfg)));
    harness::write_results(dir / ("lib_sweep" + tag + ".csv"),
                           harness::run_sweep(harness::parse_config(sweep_cfg), run == 0 ? 1 : 0));
  }
  for (const char* stem : {"lib_conv", "lib_sweep"}) {
    for (const char* ext : {".csv", ".json"}) {
      compare(dir / (std::string(stem) + "0" + ext), dir / (std::string(stem) + "1" + ext));
    }
  }

  std::string note = "library only";
  if (!cli.empty()) {
    note = "library and CLI";
    for (int run = 0; run < 2; ++run) {
      const auto tag = std::to_string(run);
      const std::string c = cli + " converge --config " + (dir / "conv.cfg").string() + " --out " +
                            (dir / ("cli_conv" + tag + ".csv")).string() + " 2>/dev/null";
      const std::string s = cli + " sweep --config " + (dir / "sweep.cfg").string() + " --workers " +
                            (run == 0 ? "1" : "2") + " --out " + (dir / ("cli_sweep" + tag + ".csv")).string() +
                            " 2>/dev/null";
      if (std::system(c.c_str()) != 0 || std::system(s.c_str()) != 0) {
        return {false, "CLI run failed"};
      }
    }
    for (const char* stem : {"cli_conv", "cli_sweep"}) {
      for (const char* ext : {".csv", ".json"}) {
        compare(dir / (std::string(stem) + "0" + ext), dir / (std::string(stem) + "1" + ext));
      }
    }
    // The CLI and the library agree too.
    compare(dir / "cli_conv0.csv", dir / "lib_conv0.csv");
    compare(dir / "cli_sweep0.json", dir / "lib_sweep0.json");
  }
  return {identical == compared, fmt("%d/%d file pairs byte-identical (%s)", identical, compared, note.c_str())};
}

// --------------------------------------------------------------------------
// 8. Model sanity

Outcome model_sanity() {
  std::vector<std::string> failed;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) failed.push_back(what);
  };

  // Unitarity.
  double unitary = 0.0;
  for (int a : {1, 2, 4, 8, 16, 32, 64}) {
    const auto w = chanmod::dft_matrix(a);
    unitary = std::max(unitary, (w.adjoint() * w - chanmod::CMatrix::Identity(a, a)).cwiseAbs().maxCoeff());
  }
  expect(unitary <= 1e-12, fmt("DFT unitarity %.1e", unitary));

  // Parseval, beam distinctness, determinism.
  double parseval = 0.0;
  bool distinct = true, deterministic = true;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const int a = 8 << (seed % 4);
    const auto cfg = chanmod::make_config(a, std::min(a, 10), 10.0, seed);
    const auto ch = chanmod::generate_channel(cfg, seed);
    deterministic = deterministic && ch.matrix == chanmod::generate_channel(cfg, seed).matrix;
    for (int t = 0; t < ch.num_users(); ++t) {
      double sum = 0.0;
      for (double e : chanmod::beam_energy(ch, t)) sum += e;
      parseval = std::max(parseval, std::abs(sum - ch.matrix.col(t).squaredNorm()));
    }
    const auto b = chanmod::select_beams(ch);
    distinct = distinct && std::set<int>(b.beam_index.begin(), b.beam_index.end()).size() == b.beam_index.size();
  }
  expect(parseval <= 1e-10, fmt("Parseval %.1e", parseval));
  expect(distinct, "beam distinctness");
  expect(deterministic, "channel determinism");

  // Rician limits.
  // The NLoS share has RMS 1/sqrt(K) per column; the bound applies to its mean.
  double nlos = 0.0, nlos_max = 0.0;
  {
    const auto cfg = chanmod::make_config(16, 6, 20.0, 5, 1e6);
    const chanmod::ChannelGenerator gen(cfg);
    for (std::uint64_t slot = 0; slot < 200; ++slot) {
      const auto ch = gen.generate(slot);
      for (int t = 0; t < 6; ++t) {
        const chanmod::CVector los = 4.0 * chanmod::steering_vector(cfg.user_angles[t], 16);
        const double rel = (ch.matrix.col(t) - los).norm() / los.norm();
        nlos += rel / 1200.0;
        nlos_max = std::max(nlos_max, rel);
      }
    }
  }
  expect(nlos <= 1e-3, fmt("K=1e6 mean NLoS share %.2e", nlos));
  {
    auto a = chanmod::make_config(16, 3, 20.0, 6, 0.0);
    auto b = a;
    for (double& x : b.user_angles) x = 0.3 - x / 3;
    bool same = true;
    for (std::uint64_t slot = 0; slot < 10; ++slot) {
      same = same && chanmod::generate_channel(a, slot).matrix == chanmod::generate_channel(b, slot).matrix;
    }
    expect(same, "K=0 still depends on LoS angles");
  }

  // Rates: nonnegativity, zero schedule, noise monotonicity, independent
  // enumeration of the PF argmax.
  bool nonneg = true, zero = true, monotone = true, argmax_ok = true, scale_ok = true, idem = true;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const int t = 1 + static_cast<int>(seed % 10);
    const auto cfg = chanmod::make_config(16, t, 5.0 + double(seed), seed);
    const auto ch = chanmod::generate_channel(cfg, 3);
    const auto beams = chanmod::select_beams(ch);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.1, 4.0);
    ratemod::PFState pf{std::vector<double>(static_cast<std::size_t>(t))};
    for (double& x : pf.avg_rates) x = u(rng);

    auto noisy = ch;
    auto ncfg = std::make_shared<chanmod::ChannelConfig>(*ch.config);
    ncfg->noise_var *= 4.0;
    noisy.config = ncfg;

    const double p = cfg.total_power / t;
    double oracle_best = -1.0;
    std::uint64_t oracle_arg = 0;
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << t); ++i) {
      const auto theta = ratemod::SchedulingVector::from_index(i, t);
      const auto r = ratemod::instantaneous_rates(ch, beams, theta);
      const auto rn = ratemod::instantaneous_rates(noisy, beams, theta);
      for (int x = 0; x < t; ++x) {
        nonneg = nonneg && r.per_user_rates[x] >= 0.0;
        monotone = monotone && rn.per_user_rates[x] <= r.per_user_rates[x];
      }
      if (i == 0) zero = zero && r.sum_rate == 0.0 && ratemod::pf_objective(r, pf, theta) == 0.0;
      // Oracle: SINR summed straight from channel and beam vectors.
      double value = 0.0;
      for (int x = 0; x < t; ++x) {
        if (!((i >> (t - 1 - x)) & 1)) continue;
        const auto n = ch.matrix.col(x);
        double interf = 0.0;
        for (int y = 0; y < t; ++y) {
          if (y != x && ((i >> (t - 1 - y)) & 1)) interf += p * std::norm(n.dot(beams.beams.col(y)));
        }
        const double sinr = p * std::norm(n.dot(beams.beams.col(x))) / (interf + cfg.noise_var);
        value += std::log2(1.0 + sinr) / (pf.avg_rates[x] + pf.guard);
      }
      if (value > oracle_best + 1e-12) oracle_best = value, oracle_arg = i;
    }
    const auto best = baselines::exhaustive_best(ch, beams, pf);
    argmax_ok = argmax_ok && best.policy.index() == oracle_arg && std::abs(best.value - oracle_best) <= 1e-9;

    // Common scaling of (S + a) keeps the argmax.
    ratemod::PFState scaled = pf;
    for (double& x : scaled.avg_rates) x = 2.5 * (x + pf.guard) - pf.guard;
    scale_ok = scale_ok && baselines::exhaustive_best(ch, beams, scaled).policy == best.policy;

    // omega = 0 leaves the state alone.
    ratemod::PFState frozen = pf;
    frozen.forgetting = 0.0;
    const auto all = ratemod::SchedulingVector::ones(t);
    idem = idem && ratemod::pf_update(frozen, ratemod::instantaneous_rates(ch, beams, all), all).avg_rates == pf.avg_rates;
  }
  expect(nonneg, "rate nonnegativity");
  expect(zero, "zero schedule");
  expect(monotone, "noise monotonicity");
  expect(argmax_ok, "PF argmax oracle equivalence");
  expect(scale_ok, "PF argmax scaling invariance");
  expect(idem, "omega=0 idempotence");

  // PF update on scheduled/unscheduled users.
  {
    ratemod::RateReport r;
    r.per_user_rates = {4.0, 9.0};
    const auto next = ratemod::pf_update(ratemod::PFState{{2.0, 3.0}, 0.1}, r, ratemod::SchedulingVector({1, 0}));
    expect(std::abs(next.avg_rates[0] - 2.2) <= 1e-12 && next.avg_rates[1] == 3.0, "PF update rule");
  }

  std::string detail = fmt("DFT unitarity %.1e, Parseval %.1e, K=1e6 NLoS share mean %.2e max %.2e; rate and PF "
                           "invariants ",
                           unitary, parseval, nlos, nlos_max);
  if (failed.empty()) {
    detail += "all hold";
  } else {
    detail += "failing:";
    for (const auto& f : failed) detail += " [" + f + "]";
  }
  return {failed.empty(), detail};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::vector<Criterion> criteria{
      {1, "Grover closed-form agreement", 5.0, grover_closed_form},
      {2, "circuit identities", 5.0, circuit_identities},
      {3, "optimality recovery", 30.0, optimality_recovery},
      {4, "convergence", 120.0, convergence},
      {5, "trend reproduction", 300.0, trends},
      {6, "baseline ordering", 60.0, baseline_ordering},
      {7, "determinism", 0.0, [&] { return determinism(cli); }},
      {8, "model sanity", 10.0, model_sanity},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    std::string timing = fmt("%.2fs", secs);
    if (c.budget_s > 0) {
      timing += fmt(" of %.0fs", c.budget_s);
      if (secs > c.budget_s) {
        o.pass = false;
        timing += " OVER BUDGET";
      }
    }
    failures += !o.pass;
    std::printf("criterion %d: %s %s [%s] %s\n", c.id, o.pass ? "PASS" : "FAIL", c.name, timing.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
