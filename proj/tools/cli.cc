#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "stdma/broadcast.hpp"
#include "stdma/crp.hpp"
#include "stdma/io.hpp"
#include "stdma/linksched.hpp"
#include "stdma/net.hpp"
#include "stdma/splitting.hpp"
#include "stdma/tokenbucket.hpp"

using namespace stdma;

namespace {

struct NetSpec {
  double p_mw = 10.0;
  double beta = 4.0;
  double n0_dbm = -90.0;
  double gc_db = 20.0;
  std::optional<double> gi_db;
  bool square = false;
  double extent = 500.0;  // disk radius or square side

  RadioParams params() const {
    RadioParams p;
    p.tx_power_mw = p_mw;
    p.path_loss_exp = beta;
    p.noise_mw = db_to_linear(n0_dbm);
    p.comm_thresh = db_to_linear(gc_db);
    if (gi_db) p.intf_thresh = db_to_linear(*gi_db);
    return p;
  }
  Network make(Rng& rng, int n) const {
    return square ? gen_uniform_square(rng, n, extent, params())
                  : gen_uniform_disk(rng, n, extent, params());
  }
};

struct PresetDef {
  double radius, p_mw, beta, n0_dbm, gc_db, gi_db;
};
const std::map<std::string, PresetDef> kPresets = {
    {"expt1", {500.0, 10.0, 4.0, -90.0, 20.0, 10.0}},
    {"expt2", {700.0, 15.0, 4.0, -85.0, 15.0, 7.0}},
};

// Shared network flags; presets fill the defaults first, explicit flags win.
struct NetFlags {
  std::string preset;
  double p_mw = 0, beta = 0, n0_dbm = 0, gc_db = 0, gi_db = 0;
  double disk = 0, square = 0;
  bool no_intf = false;
  CLI::App* cmd = nullptr;

  void attach(CLI::App* c) {
    cmd = c;
    c->add_option("--preset", preset, "parameter preset")
        ->check(CLI::IsMember({"expt1", "expt2"}));
    c->add_option("--power-mw", p_mw, "transmit power, mW");
    c->add_option("--beta", beta, "path-loss exponent");
    c->add_option("--noise-dbm", n0_dbm, "noise power, dBm");
    c->add_option("--gamma-c-db", gc_db, "decode threshold, dB");
    c->add_option("--gamma-i-db", gi_db, "interference threshold, dB");
    c->add_flag("--no-intf", no_intf, "drop the interference threshold");
    c->add_option("--disk", disk, "deployment disk radius, m");
    c->add_option("--square", square, "deployment square side, m");
  }
  NetSpec resolve() const {
    NetSpec s;
    if (!preset.empty()) {
      const auto& p = kPresets.at(preset);
      s.p_mw = p.p_mw;
      s.beta = p.beta;
      s.n0_dbm = p.n0_dbm;
      s.gc_db = p.gc_db;
      s.gi_db = p.gi_db;
      s.extent = p.radius;
    }
    if (cmd->count("--power-mw")) s.p_mw = p_mw;
    if (cmd->count("--beta")) s.beta = beta;
    if (cmd->count("--noise-dbm")) s.n0_dbm = n0_dbm;
    if (cmd->count("--gamma-c-db")) s.gc_db = gc_db;
    if (cmd->count("--gamma-i-db")) s.gi_db = gi_db;
    if (no_intf) s.gi_db.reset();
    if (cmd->count("--disk")) {
      s.square = false;
      s.extent = disk;
    }
    if (cmd->count("--square")) {
      s.square = true;
      s.extent = square;
    }
    return s;
  }
};

double range_num(const std::string& tok) {
  try {
    std::size_t used = 0;
    double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw CLI::ValidationError(
        "range", "bad number '" + tok + "', expected a value or a:b:step");
  }
}

std::vector<double> parse_range(const std::string& s) {
  auto c1 = s.find(':');
  if (c1 == std::string::npos) return {range_num(s)};
  auto c2 = s.find(':', c1 + 1);
  if (c2 == std::string::npos)
    throw CLI::ValidationError("range", "expected a single value or a:b:step");
  double a = range_num(s.substr(0, c1));
  double b = range_num(s.substr(c1 + 1, c2 - c1 - 1));
  double st = range_num(s.substr(c2 + 1));
  if (st <= 0) throw CLI::ValidationError("range", "step must be positive");
  std::vector<double> out;
  for (int k = 0;; ++k) {
    double v = a + k * st;
    if (v > b + st * 1e-9) break;
    out.push_back(v);
  }
  return out;
}

std::vector<int> parse_int_range(const std::string& s) {
  std::vector<int> out;
  for (double v : parse_range(s)) out.push_back(static_cast<int>(std::lround(v)));
  return out;
}

void parallel_for(size_t count, int threads, const std::function<void(size_t)>& fn) {
  int nt = threads > 0 ? threads
                       : static_cast<int>(std::thread::hardware_concurrency());
  nt = std::max(1, std::min<int>(nt, static_cast<int>(count)));
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= count) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < nt; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

// Writes to the path or stdout; contents are built fully before emission so a
// given seed and argument list always produces identical bytes.
void emit(const std::string& out_path, const std::string& body) {
  if (out_path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw std::runtime_error("cannot open " + out_path);
  f << body;
}

const char* violation_name(ViolationKind k) {
  switch (k) {
    case ViolationKind::endpoint_clash: return "endpoint clash";
    case ViolationKind::not_comm_edge: return "not a communication edge";
    case ViolationKind::duplicate_link: return "scheduled twice";
    case ViolationKind::missing_link: return "never scheduled";
    case ViolationKind::sinr_below_threshold: return "receiver below threshold";
  }
  return "?";
}

double trial_metric(const std::string& algo, const NetSpec& spec, int n,
                    std::uint64_t seed) {
  Rng rng(seed);
  Network net = spec.make(rng, n);
  if (algo == "als" || algo == "als-reuse") {
    auto tg = build_two_tier(net);
    auto sched = algo == "als" ? als(tg) : als_reuse_colors(tg);
    return static_cast<double>(sched.length());
  }
  if (algo == "cfls") {
    auto cg = build_comm_graph(net);
    return static_cast<double>(cfls(net, cg, rng).length());
  }
  if (algo == "sgls") {
    auto cg = build_comm_graph(net);
    auto sg = build_sinr_graph(net, cg);
    return static_cast<double>(sgls(sg, rng).length());
  }
  auto cg = build_comm_graph(net);
  NodeSchedule s =
      algo == "bs" ? broadcast_schedule(cg) : mass(net, cg, rng);
  return broadcast_reuse(net, cg, s);
}

int cmd_gen(const NetFlags& nf, int n, std::uint64_t seed,
            const std::string& out) {
  Rng rng(seed);
  NetSpec spec = nf.resolve();
  Network net = spec.make(rng, n);
  std::ostringstream body;
  print_network(body, net);
  emit(out, body.str());
  return 0;
}

int cmd_schedule(const std::string& net_path, const std::string& algo,
                 std::uint64_t seed, const std::string& out) {
  Network net = load_network(net_path);
  Rng rng(seed);
  std::ostringstream body;
  if (algo == "bs" || algo == "mass") {
    auto cg = build_comm_graph(net);
    NodeSchedule s = algo == "bs" ? broadcast_schedule(cg) : mass(net, cg, rng);
    print_node_schedule(body, s);
  } else if (algo == "als" || algo == "als-reuse") {
    auto tg = build_two_tier(net);
    print_link_schedule(body, algo == "als" ? als(tg) : als_reuse_colors(tg));
  } else if (algo == "cfls") {
    auto cg = build_comm_graph(net);
    print_link_schedule(body, cfls(net, cg, rng));
  } else {  // sgls
    auto cg = build_comm_graph(net);
    auto sg = build_sinr_graph(net, cg);
    print_link_schedule(body, sgls(sg, rng));
  }
  emit(out, body.str());
  return 0;
}

int cmd_validate(const std::string& net_path, const std::string& sched_path,
                 bool broadcast) {
  Network net = load_network(net_path);
  std::ifstream in(sched_path);
  if (!in) throw std::runtime_error("cannot open " + sched_path);
  auto cg = build_comm_graph(net);
  if (broadcast) {
    NodeSchedule s = parse_node_schedule(in);
    auto rep = validate_node_schedule(cg, s);
    std::cout << "slots: " << s.length() << '\n';
    if (rep.structurally_valid)
      std::cout << "goodput per slot: " << fmt_sig(broadcast_reuse(net, cg, s))
                << '\n';
    for (const auto& p : rep.problems) std::cout << p << '\n';
    std::cout << (rep.structurally_valid ? "valid" : "invalid") << '\n';
    return rep.structurally_valid ? 0 : 1;
  }
  LinkSchedule s = parse_link_schedule(in);
  auto rep = validate_schedule(net, cg, s);
  std::cout << "slots: " << s.length() << '\n'
            << "spatial reuse: " << fmt_sig(rep.spatial_reuse) << '\n';
  for (const auto& v : rep.violations) {
    if (v.kind != ViolationKind::missing_link)
      std::cout << "slot " << (v.slot + 1) << ": ";
    std::cout << v.link.tx << "->" << v.link.rx << " "
              << violation_name(v.kind) << '\n';
  }
  std::cout << (rep.conflict_free ? "conflict-free" : "conflicting") << '\n';
  return rep.conflict_free ? 0 : 1;
}

int cmd_sweep(const NetFlags& nf, const std::string& algo,
              const std::string& n_range, int trials, std::uint64_t seed,
              int threads, const std::string& out) {
  NetSpec spec = nf.resolve();
  auto ns = parse_int_range(n_range);
  std::vector<double> metric(ns.size() * static_cast<size_t>(trials));
  parallel_for(metric.size(), threads, [&](size_t idx) {
    size_t ni = idx / static_cast<size_t>(trials);
    metric[idx] = trial_metric(algo, spec, ns[ni], trial_seed(seed, idx));
  });
  std::ostringstream body;
  body << "n,mean_metric,stderr\n";
  for (size_t ni = 0; ni < ns.size(); ++ni) {
    double sum = 0, sum2 = 0;
    for (int t = 0; t < trials; ++t) {
      double v = metric[ni * static_cast<size_t>(trials) + static_cast<size_t>(t)];
      sum += v;
      sum2 += v * v;
    }
    double mean = sum / trials;
    double var = trials > 1 ? std::max(0.0, sum2 / trials - mean * mean) *
                                  (static_cast<double>(trials) / (trials - 1))
                            : 0.0;
    body << ns[ni] << ',' << fmt_sig(mean) << ','
         << fmt_sig(std::sqrt(var / trials)) << '\n';
  }
  emit(out, body.str());
  return 0;
}

int cmd_ra_sim(const std::string& lambda_range, std::uint64_t tau,
               std::uint64_t warmup, std::uint64_t seed,
               const std::string& algo, double phi0_two, double phi0_classic,
               const std::string& out) {
  auto lambdas = parse_range(lambda_range);
  const bool run_classic = algo == "classic" || algo == "both";
  const bool run_two = algo == "two-power" || algo == "both";
  struct Row {
    std::string algo;
    double lambda, thr, delay, power;
  };
  std::vector<Row> rows;
  for (size_t i = 0; i < lambdas.size(); ++i) {
    Rng rng(trial_seed(seed, i));
    auto arrivals = poisson_arrivals(rng, lambdas[i], static_cast<double>(tau));
    if (run_classic) {
      SplitParams p;
      p.two_power = false;
      p.phi0 = phi0_classic;
      auto st = run_splitting(arrivals, tau, p, warmup);
      rows.push_back({"classic", lambdas[i], st.throughput, st.avg_delay_slots,
                      st.avg_power_mw});
    }
    if (run_two) {
      SplitParams p;
      p.phi0 = phi0_two;
      auto st = run_splitting(arrivals, tau, p, warmup);
      rows.push_back({"two-power", lambdas[i], st.throughput,
                      st.avg_delay_slots, st.avg_power_mw});
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return a.algo != b.algo ? a.algo < b.algo : a.lambda < b.lambda;
  });
  std::ostringstream body;
  body << "algo,lambda,throughput,avg_delay,avg_power\n";
  for (const auto& r : rows)
    body << r.algo << ',' << fmt_sig(r.lambda) << ',' << fmt_sig(r.thr) << ','
         << fmt_sig(r.delay) << ',' << fmt_sig(r.power) << '\n';
  emit(out, body.str());
  return 0;
}

int cmd_ra_analyze(const std::string& g0_range, const std::string& out) {
  auto g0s = parse_range(g0_range);
  std::ostringstream body;
  body << "g0,zeta,EK,EF\n";
  for (double g0 : g0s) {
    auto ex = crp_expectations(g0);
    body << fmt_sig(g0) << ',' << fmt_sig(crp_throughput(g0)) << ','
         << fmt_sig(ex.slots) << ',' << fmt_sig(ex.returned) << '\n';
  }
  emit(out, body.str());
  auto opt = maximize_throughput();
  std::printf("zeta*=%.4f at g0=%.3f, phi0=%.2f\n", opt.zeta, opt.g0,
              opt.alloc);
  return 0;
}

int cmd_gtbr_opt(int S, int r, int B, int threads, bool slack,
                 const std::string& out) {
  auto res = best_shaping(S, r, B, threads, slack);
  double hs = uniform_entropy(S, r, B);
  double hg = res.best_bits;
  double gain = hs > 0 ? (hg / hs - 1.0) * 100.0 : 0.0;
  std::ostringstream body;
  body << "r_seq,B_seq,H_g,H_s,gain_pct\n";
  auto join = [](const std::vector<int>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
      if (i) s += ' ';
      s += std::to_string(v[i]);
    }
    return s;
  };
  for (const auto& [rs, bs] : res.ties)
    body << join(rs) << ',' << join(bs) << ',' << fmt_sig(hg) << ','
         << fmt_sig(hs) << ',' << fmt_sig(gain) << '\n';
  emit(out, body.str());
  std::printf("H_s=%s H_g=%s gain=%.1f%% (ties=%zu, programs=%llu)\n",
              fmt_sig(hs).c_str(), fmt_sig(hg).c_str(), gain, res.ties.size(),
              static_cast<unsigned long long>(res.dp_count));
  if (slack)
    std::printf("below-budget best H=%s over %zu ties\n",
                fmt_sig(res.slack_best_bits).c_str(), res.slack_ties.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"STDMA scheduling and random-access workbench"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  int trials = 1000;
  int threads = 0;
  std::string out;
  app.add_option("--seed", seed, "RNG seed")->capture_default_str();
  app.add_option("--trials", trials, "trials per point")->capture_default_str();
  app.add_option("--threads", threads, "worker threads (0 = auto)");
  app.add_option("--out", out, "output file (default stdout)");

  auto* gen = app.add_subcommand("gen", "generate a random network file");
  NetFlags gen_nf;
  gen_nf.attach(gen);
  int gen_n = 0;
  gen->add_option("--n", gen_n, "node count")->required();

  auto* sched = app.add_subcommand("schedule", "run one scheduler on a network");
  std::string s_net, s_algo;
  sched->add_option("--net", s_net, "network file")->required();
  sched->add_option("--algo", s_algo, "scheduler")
      ->required()
      ->check(CLI::IsMember({"als", "als-reuse", "cfls", "sgls", "bs", "mass"}));

  auto* val = app.add_subcommand("validate", "check a schedule against a network");
  std::string v_net, v_sched;
  bool v_bcast = false;
  val->add_option("--net", v_net, "network file")->required();
  val->add_option("--sched", v_sched, "schedule file")->required();
  val->add_flag("--broadcast", v_bcast, "treat as a broadcast schedule");

  auto* sweep = app.add_subcommand("sweep", "metric vs node count");
  NetFlags sweep_nf;
  sweep_nf.attach(sweep);
  std::string w_algo, w_n;
  sweep->add_option("--algo", w_algo, "scheduler")
      ->required()
      ->check(CLI::IsMember({"als", "als-reuse", "cfls", "sgls", "bs", "mass"}));
  sweep->add_option("--n", w_n, "node counts a:b:step")->required();

  auto* rasim = app.add_subcommand("ra-sim", "splitting random-access simulation");
  std::string r_lambda = "0.45:0.58:0.01", r_algo = "both";
  std::uint64_t r_tau = 300000, r_warm = 1000;
  double r_phi_two = 2.54, r_phi_classic = 2.6;
  rasim->add_option("--lambda", r_lambda, "arrival rates a:b:step")
      ->capture_default_str();
  rasim->add_option("--tau", r_tau, "slots")->capture_default_str();
  rasim->add_option("--warmup", r_warm, "warmup slots")->capture_default_str();
  rasim->add_option("--algo", r_algo, "classic, two-power or both")
      ->check(CLI::IsMember({"classic", "two-power", "both"}))
      ->capture_default_str();
  rasim->add_option("--phi0-two", r_phi_two, "fresh allocation, two-power")
      ->capture_default_str();
  rasim->add_option("--phi0-classic", r_phi_classic, "fresh allocation, classic")
      ->capture_default_str();

  auto* raan = app.add_subcommand("ra-analyze", "resolution-chain throughput");
  std::string a_g0 = "0.1:4:0.1";
  raan->add_option("--g0", a_g0, "root loads a:b:step")->capture_default_str();

  auto* gtbr = app.add_subcommand("gtbr-opt", "token-bucket entropy shaping");
  int g_s = 4, g_r = 3, g_b = 6;
  bool g_slack = false;
  gtbr->add_option("-S,--S,--slots", g_s, "slots")->capture_default_str();
  gtbr->add_option("-r,--r,--refill", g_r, "per-slot refill budget")
      ->capture_default_str();
  gtbr->add_option("-B,--B,--cap", g_b, "per-gap cap budget")
      ->capture_default_str();
  gtbr->add_flag("--slack", g_slack, "also sweep strictly smaller cap budgets");

  // let --seed/--trials/--threads/--out appear after the subcommand too
  for (auto* sc : app.get_subcommands([](const CLI::App*) { return true; }))
    sc->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(gen_nf, gen_n, seed, out);
    if (sched->parsed()) return cmd_schedule(s_net, s_algo, seed, out);
    if (val->parsed()) return cmd_validate(v_net, v_sched, v_bcast);
    if (sweep->parsed())
      return cmd_sweep(sweep_nf, w_algo, w_n, trials, seed, threads, out);
    if (rasim->parsed())
      return cmd_ra_sim(r_lambda, r_tau, r_warm, seed, r_algo, r_phi_two,
                        r_phi_classic, out);
    if (raan->parsed()) return cmd_ra_analyze(a_g0, out);
    if (gtbr->parsed())
      return cmd_gtbr_opt(g_s, g_r, g_b, threads, g_slack, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
