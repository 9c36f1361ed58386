#include "ionqaoa/cli.hpp"

#include <CLI11.hpp>
#include <Eigen/Core>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "ionqaoa/csv.hpp"
#include "ionqaoa/error.hpp"
#include "ionqaoa/estimation.hpp"
#include "ionqaoa/gates.hpp"
#include "ionqaoa/instance_db.hpp"
#include "ionqaoa/ion_model.hpp"
#include "ionqaoa/optimizer.hpp"
#include "ionqaoa/single_qubit.hpp"
#include "ionqaoa/sk.hpp"
#include "ionqaoa/symmetry.hpp"

namespace ionqaoa::cli {

namespace {

struct Globals {
  std::uint64_t seed = 1;
  int threads = 0;
  std::string out;
  std::string db;
  std::string config;
};

struct Result {
  csv::Table table;
  std::string summary;
};

using Action = std::function<Result()>;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string fmt(double v) { return csv::format_real(v); }

// Distinct instance masks: all of them when count is 0 or covers the
// whole set, otherwise `count` drawn uniformly without replacement.
std::vector<std::uint64_t> sample_masks(int n, std::uint64_t count, std::uint64_t seed) {
  const std::uint64_t total = sk::instance_count(n);
  std::vector<std::uint64_t> masks;
  if (count == 0 || count >= total) {
    masks.resize(total);
    for (std::uint64_t m = 0; m < total; ++m) masks[m] = m;
    return masks;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, total - 1);
  std::set<std::uint64_t> chosen;
  while (chosen.size() < count) chosen.insert(pick(rng));
  return {chosen.begin(), chosen.end()};
}

std::vector<sk::SKInstance> select_instances(int n, const std::vector<std::uint64_t>& masks,
                                             std::uint64_t sample, const std::string& filter,
                                             std::uint64_t seed) {
  if (filter != "all" && filter != "easy" && filter != "hard")
    fail(ErrorKind::kUsage, "--filter must be all, easy or hard");
  std::vector<sk::SKInstance> out;
  auto keep = [&](const sk::SKInstance& inst) {
    if (filter == "all") return true;
    const bool easy = sym::classify_instance(inst).cls == sym::InstanceClass::kEasySymmetric;
    return (filter == "easy") == easy;
  };
  if (!masks.empty()) {
    for (auto m : masks) {
      sk::SKInstance inst(n, m);
      if (keep(inst)) out.push_back(inst);
    }
    return out;
  }
  if (filter == "all") {
    for (auto m : sample_masks(n, sample, seed)) out.emplace_back(n, m);
    return out;
  }
  // Filtered sampling walks a seeded permutation until enough match.
  std::vector<std::uint64_t> order = sample_masks(n, 0, seed);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  for (auto m : order) {
    sk::SKInstance inst(n, m);
    if (keep(inst)) out.push_back(inst);
    if (sample != 0 && out.size() == sample) break;
  }
  std::sort(out.begin(), out.end(),
            [](const sk::SKInstance& a, const sk::SKInstance& b) { return a.mask() < b.mask(); });
  return out;
}

struct TrainFlags {
  opt::OptimizerConfig cfg;
  std::string method = "nelder-mead";
  std::string config = "sym";
  int search_sets = 50;

  void add(CLI::App* sub) {
    sub->add_option("--pmax", cfg.max_depth, "Largest depth tried")->check(CLI::Range(1, 200));
    sub->add_option("--seeds", cfg.seeds_per_step, "Local descents per step")->check(CLI::PositiveNumber);
    sub->add_option("--repeats", cfg.heuristic_repeats, "Heuristic repeats")->check(CLI::PositiveNumber);
    sub->add_option("--method", method, "nelder-mead, lbfgs-fd or lbfgs");
    sub->add_option("--max-iterations", cfg.max_iterations, "Iterations per descent");
    sub->add_option("--tol", cfg.tol, "Descent stopping tolerance");
    sub->add_option("--config", config, "sym, asym, search or standard");
    sub->add_option("--search-sets", search_sets, "Amplitude sets tried by search");
  }
  opt::OptimizerConfig resolve(std::uint64_t seed) {
    opt::OptimizerConfig c = cfg;
    c.method = opt::parse_method(method);
    c.rng_seed = seed;
    c.validate();
    return c;
  }
};

opt::InstanceDB open_db(const std::string& path) {
  if (path.empty() || !std::filesystem::exists(path)) return {};
  return opt::InstanceDB::load(path);
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUsage: return kExitUsage;
    case ErrorKind::kVerification: return kExitVerification;
    default: return kExitError;
  }
}

// Config keys become `--key value` arguments unless the flag is already on
// the command line, so explicit flags take precedence.
void inject_config(CLI::App& app, std::vector<std::string>& args, const std::string& path) {
  std::ifstream is(path);
  if (!is) fail(ErrorKind::kIo, "cannot read config " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  const auto entries = parse_config(ss.str());

  CLI::App* sub = nullptr;
  for (const auto& a : args) {
    if (a.rfind("-", 0) == 0) continue;
    for (auto* s : app.get_subcommands({}))
      if (s->get_name() == a) sub = s;
    if (sub) break;
  }
  std::vector<std::string> extra;
  for (const auto& [key, value] : entries) {
    const std::string flag = "--" + key;
    const CLI::Option* o = sub ? sub->get_option_no_throw(flag) : nullptr;
    if (!o) o = app.get_option_no_throw(flag);
    if (!o || key == "config") fail(ErrorKind::kUsage, "unknown config key '" + key + "'");
    const bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
    if (given) continue;
    extra.push_back(flag);
    if (o->get_type_size() != 0) extra.push_back(value);
    else if (value != "true" && value != "1") fail(ErrorKind::kUsage, "flag '" + key + "' takes true or 1");
  }
  args.insert(args.end(), extra.begin(), extra.end());
}

}  // namespace

std::string version_string() {
  std::ostringstream os;
  os << "ionqaoa " << IONQAOA_VERSION << " (C++" << (__cplusplus / 100) % 100 << ", Eigen "
     << EIGEN_WORLD_VERSION << '.' << EIGEN_MAJOR_VERSION << '.' << EIGEN_MINOR_VERSION << ", "
#ifdef __VERSION__
     << "compiler " << __VERSION__
#endif
     << ")";
  return os.str();
}

std::map<std::string, std::string> parse_config(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(ErrorKind::kParse, "config line " + std::to_string(line_no) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(ErrorKind::kParse, "config line " + std::to_string(line_no) + ": empty key");
    if (!out.emplace(key, value).second)
      fail(ErrorKind::kParse, "config line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
  }
  return out;
}

int run(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ion-native QAOA simulation toolkit"};
  app.set_version_flag("--version", version_string());
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "RNG seed")->envname("IONQAOA_SEED");
  app.add_option("--threads", g.threads, "Worker threads, 0 = available parallelism")
      ->envname("IONQAOA_THREADS")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--out", g.out, "CSV output path (stdout when absent)")->envname("IONQAOA_OUT");
  app.add_option("--db", g.db, "Ground-space DB path")->envname("IONQAOA_DB");
  app.add_option("--config-file", g.config, "Flat key=value config file");

  Action action;

  // couplings
  int c_n = 6;
  double c_jmax = ion::kDefaultJmax, c_alpha = ion::kDefaultAlpha;
  std::vector<double> c_amps;
  auto* couplings = app.add_subcommand("couplings", "Ion Ising coupling matrix J_jk");
  couplings->add_option("--n", c_n, "Number of ions")->check(CLI::Range(2, 64));
  couplings->add_option("--jmax", c_jmax, "Coupling scale in kHz");
  couplings->add_option("--alpha", c_alpha, "Power-law exponent");
  couplings->add_option("--amplitudes", c_amps, "Comma-separated A_j")->delimiter(',');
  couplings->callback([&] {
    action = [&] {
      if (c_amps.empty()) c_amps.assign(c_n, 1.0);
      const auto c = ion::build_couplings(c_n, c_jmax, c_alpha, c_amps);
      Result r;
      for (int k = 0; k < c.n; ++k) r.table.schema.push_back("J" + std::to_string(k + 1));
      for (int row = 0; row < c.n; ++row) {
        csv::Record rec;
        for (int k = 0; k < c.n; ++k) rec.emplace_back(c.at(row, k));
        r.table.records.push_back(std::move(rec));
      }
      r.summary = "couplings n=" + std::to_string(c.n) + " jmax=" + fmt(c.j_max) + " alpha=" + fmt(c.alpha);
      return r;
    };
  });

  // spectrum
  int s_n = 6;
  std::uint64_t s_mask = 0;
  auto* spectrum = app.add_subcommand("spectrum", "Diagonal spectrum of one SK instance");
  spectrum->add_option("--n", s_n, "Number of spins")->check(CLI::Range(2, 8));
  spectrum->add_option("--mask", s_mask, "Instance mask")->required();
  spectrum->callback([&] {
    action = [&] {
      const sk::SKInstance inst(s_n, s_mask);
      const auto spec = sk::spectrum(inst);
      const std::set<std::uint64_t> ground(spec.ground_indices.begin(), spec.ground_indices.end());
      Result r;
      r.table.schema = {"index", "bitstring", "energy", "ground"};
      for (std::size_t z = 0; z < spec.energies.size(); ++z)
        r.table.records.push_back({static_cast<std::int64_t>(z), sk::bitstring(s_n, z),
                                   spec.energies[z], static_cast<std::int64_t>(ground.count(z))});
      r.summary = "spectrum n=" + std::to_string(s_n) + " mask=" + std::to_string(s_mask) +
                  " lambda_min=" + fmt(spec.lambda_min) + " gap=" + fmt(spec.gap) +
                  " ground_dim=" + std::to_string(spec.ground_indices.size());
      return r;
    };
  });

  // classify
  int k_n = 6;
  bool k_all = false;
  std::vector<std::uint64_t> k_masks;
  auto* classify = app.add_subcommand("classify", "Easy/hard classification under symmetric couplings");
  classify->add_option("--n", k_n, "Number of spins")->check(CLI::Range(2, 8));
  auto* all_flag = classify->add_flag("--all", k_all, "Every instance for n");
  classify->add_option("--mask", k_masks, "Instance masks")->delimiter(',')->excludes(all_flag);
  classify->callback([&] {
    action = [&] {
      if (!k_all && k_masks.empty()) fail(ErrorKind::kUsage, "classify needs --all or --mask");
      const auto masks = k_all ? sample_masks(k_n, 0, 0) : k_masks;
      Result r;
      r.table.schema = {"mask", "class", "lambda_min", "gap", "success_threshold",
                        "min_energy_over_v", "symmetric_ground_dim"};
      std::size_t easy = 0;
      for (auto m : masks) {
        const sk::SKInstance inst(k_n, m);
        const auto spec = sk::spectrum(inst);
        const auto c = sym::classify_instance(inst, spec);
        easy += c.cls == sym::InstanceClass::kEasySymmetric;
        r.table.records.push_back({static_cast<std::int64_t>(m), std::string(sym::to_string(c.cls)),
                                   c.lambda_min, c.gap, sk::success_threshold(spec),
                                   c.min_energy_over_v,
                                   static_cast<std::int64_t>(c.symmetric_ground_dim)});
      }
      const double frac = static_cast<double>(easy) / static_cast<double>(masks.size());
      r.summary = "classify n=" + std::to_string(k_n) + " instances=" + std::to_string(masks.size()) +
                  " easy=" + std::to_string(easy) + " easy_fraction=" + fmt(frac) +
                  " hard_fraction=" + fmt(1.0 - frac);
      return r;
    };
  });

  // train
  int t_n = 6;
  std::uint64_t t_mask = 0;
  TrainFlags t_flags;
  auto* train = app.add_subcommand("train", "Layerwise training of one instance");
  train->add_option("--n", t_n, "Number of spins")->check(CLI::Range(2, 8));
  train->add_option("--mask", t_mask, "Instance mask")->required();
  t_flags.add(train);
  train->callback([&] {
    action = [&] {
      const auto cfg = t_flags.resolve(g.seed);
      const auto config = opt::parse_coupling_config(t_flags.config);
      const sk::SKInstance inst(t_n, t_mask);
      opt::InstanceDB db = open_db(g.db);
      const std::string key = opt::canonical_key(t_n, sk::spectrum(inst));
      Result r;
      r.table.schema = {"depth", "energy", "solved"};
      if (!g.db.empty()) {
        if (auto hit = db.lookup(key)) {
          r.summary = "train mask=" + std::to_string(t_mask) + " cache_hit=1 solved_depth=" +
                      (hit->solved_depth ? std::to_string(*hit->solved_depth) : "-");
          return r;
        }
      }
      const auto outcome = opt::train_instance(inst, config, cfg, t_flags.search_sets);
      for (const auto& rec : outcome.records)
        r.table.records.push_back({static_cast<std::int64_t>(rec.depth), rec.best_energy,
                                   static_cast<std::int64_t>(rec.solved)});
      if (!g.db.empty()) {
        db.insert(key, opt::DbEntry{outcome.solved_depth.has_value(), outcome.solved_depth});
        db.save(g.db);
      }
      r.summary = "train mask=" + std::to_string(t_mask) + " config=" + t_flags.config +
                  " cache_hit=0 solved_depth=" +
                  (outcome.solved_depth ? std::to_string(*outcome.solved_depth) : "-") +
                  " threshold=" + fmt(sk::success_threshold(inst));
      return r;
    };
  });

  // sweep
  int w_n = 6;
  std::vector<std::uint64_t> w_masks;
  std::uint64_t w_sample = 10;
  std::string w_filter = "all";
  TrainFlags w_flags;
  auto* sweep = app.add_subcommand("sweep", "Depth sweep over several instances");
  sweep->add_option("--n", w_n, "Number of spins")->check(CLI::Range(2, 8));
  sweep->add_option("--masks", w_masks, "Instance masks")->delimiter(',');
  sweep->add_option("--sample", w_sample, "Random instances when no masks are given, 0 = all");
  sweep->add_option("--filter", w_filter, "all, easy or hard");
  w_flags.add(sweep);
  sweep->callback([&] {
    action = [&] {
      const auto cfg = w_flags.resolve(g.seed);
      const auto config = opt::parse_coupling_config(w_flags.config);
      const auto instances = select_instances(w_n, w_masks, w_sample, w_filter, g.seed);
      if (instances.empty()) fail(ErrorKind::kDomain, "no instance matches the selection");
      std::vector<opt::InstanceOutcome> outcomes(instances.size());
      // One instance per worker; results land in fixed slots.
      const int threads = g.threads > 0 ? g.threads
                                        : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
      std::atomic<std::size_t> next{0};
      std::exception_ptr error;
      std::mutex mu;
      auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < instances.size();) {
          try {
            outcomes[i] = opt::train_instance(instances[i], config, cfg, w_flags.search_sets);
          } catch (...) {
            std::lock_guard lock(mu);
            if (!error) error = std::current_exception();
          }
        }
      };
      {
        std::vector<std::jthread> pool;
        for (int t = 1; t < std::min<int>(threads, static_cast<int>(instances.size())); ++t)
          pool.emplace_back(worker);
        worker();
      }
      if (error) std::rethrow_exception(error);
      Result r;
      r.table.schema = {"mask", "depth", "energy", "overlap_lower_bound", "solved"};
      int solved = 0;
      for (std::size_t i = 0; i < instances.size(); ++i) {
        const auto spec = sk::spectrum(instances[i]);
        solved += outcomes[i].solved_depth.has_value();
        for (const auto& rec : outcomes[i].records)
          r.table.records.push_back({static_cast<std::int64_t>(instances[i].mask()),
                                     static_cast<std::int64_t>(rec.depth), rec.best_energy,
                                     sk::overlap_lower_bound(rec.best_energy, spec),
                                     static_cast<std::int64_t>(rec.solved)});
      }
      r.summary = "sweep instances=" + std::to_string(instances.size()) + " config=" + w_flags.config +
                  " solved=" + std::to_string(solved);
      return r;
    };
  });

  // fraction
  int f_n = 6;
  std::uint64_t f_sample = 20;
  std::string f_filter = "all";
  TrainFlags f_flags;
  auto* fraction = app.add_subcommand("fraction", "Solved fraction versus depth");
  fraction->add_option("--n", f_n, "Number of spins")->check(CLI::Range(2, 8));
  fraction->add_option("--sample", f_sample, "Random instances, 0 = all");
  fraction->add_option("--filter", f_filter, "all, easy or hard");
  f_flags.add(fraction);
  fraction->callback([&] {
    action = [&] {
      const auto cfg = f_flags.resolve(g.seed);
      opt::FractionOptions fo;
      fo.config = opt::parse_coupling_config(f_flags.config);
      fo.search_sets = f_flags.search_sets;
      fo.threads = g.threads;
      opt::InstanceDB db = open_db(g.db);
      if (!g.db.empty()) fo.db = &db;
      const auto instances = select_instances(f_n, {}, f_sample, f_filter, g.seed);
      if (instances.empty()) fail(ErrorKind::kDomain, "no instance matches the selection");
      const auto curve = opt::fraction_curve(instances, cfg, fo);
      if (!g.db.empty()) db.save(g.db);
      Result r;
      r.table.schema = {"depth", "fraction"};
      for (std::size_t p = 0; p < curve.solved_fraction.size(); ++p)
        r.table.records.push_back({static_cast<std::int64_t>(p + 1), curve.solved_fraction[p]});
      const auto hits = std::count_if(curve.outcomes.begin(), curve.outcomes.end(),
                                      [](const auto& o) { return o.cache_hit; });
      r.summary = "fraction instances=" + std::to_string(instances.size()) + " config=" + f_flags.config +
                  " final_fraction=" + fmt(curve.solved_fraction.back()) +
                  " cache_hits=" + std::to_string(hits);
      return r;
    };
  });

  // shots
  long h_m = 1000;
  double h_eps01 = 0.0, h_eps10 = 0.0, h_h = 0.0;
  int h_replicas = 1;
  auto* shots = app.add_subcommand("shots", "Noisy shot sampling and ML estimation");
  shots->set_help_flag("--help", "Print this help message and exit");  // frees -h for --h
  shots->add_option("--m", h_m, "Shots per replica")->check(CLI::PositiveNumber);
  shots->add_option("--eps01", h_eps01, "P(read 0 | state 1)");
  shots->add_option("--eps10", h_eps10, "P(miss 0 | state 0)");
  shots->add_option("--h", h_h, "True expectation value")->check(CLI::Range(-1.0, 1.0));
  shots->add_option("--replicas", h_replicas, "Independent replicas")->check(CLI::PositiveNumber);
  shots->callback([&] {
    action = [&] {
      const est::ReadoutNoise noise{h_eps01, h_eps10};
      noise.validate();
      Result r;
      r.table.schema = {"replica", "m", "k", "p_hat", "p_ml", "h_hat", "bias", "g", "variance"};
      double sum = 0.0;
      for (int i = 0; i < h_replicas; ++i) {
        auto rng = est::replica_rng(g.seed, static_cast<std::uint64_t>(i));
        const long k = est::sample_bernoulli(0.5 * (1.0 + h_h), h_m, noise, rng);
        const auto e = est::estimate(k, h_m, noise);
        sum += e.h_hat;
        r.table.records.push_back({static_cast<std::int64_t>(i), static_cast<std::int64_t>(h_m),
                                   static_cast<std::int64_t>(k), e.p_hat, e.p_ml, e.h_hat, e.bias,
                                   e.g ? csv::Cell{*e.g} : csv::Cell{std::string{}},
                                   e.variance ? csv::Cell{*e.variance} : csv::Cell{std::string{}}});
      }
      r.summary = "shots m=" + std::to_string(h_m) + " replicas=" + std::to_string(h_replicas) +
                  " mean_h_hat=" + fmt(sum / h_replicas);
      return r;
    };
  });

  // bounds
  est::BoundsInput b_in;
  double b_h = 0.0;
  auto* bounds = app.add_subcommand("bounds", "Concentration bounds and sample-size plans");
  bounds->set_help_flag("--help", "Print this help message and exit");
  bounds->add_option("--eps", b_in.eps, "Accuracy");
  bounds->add_option("--delta", b_in.delta, "Failure probability");
  bounds->add_option("--m", b_in.m, "Sample count");
  bounds->add_option("--variance", b_in.variance, "Variance for Chebyshev");
  bounds->add_option("--mean", b_in.mean, "Mean for Markov");
  bounds->add_option("--h", b_h, "Expectation value for the CLT plan")->check(CLI::Range(-1.0, 1.0));
  bounds->callback([&] {
    action = [&] {
      const auto b = est::concentration_bounds(b_in);
      const long clt = est::sample_size_clt(b_in.eps, b_in.delta, b_h);
      Result r;
      r.table.schema = {"m", "eps", "delta", "markov", "chebyshev", "chebyshev_bernoulli",
                        "hoeffding_delta", "hoeffding_m", "hoeffding_eps", "clt_n"};
      r.table.records.push_back({static_cast<std::int64_t>(b_in.m), b_in.eps, b_in.delta, b.markov,
                                 b.chebyshev, b.chebyshev_bernoulli, b.hoeffding_delta,
                                 static_cast<std::int64_t>(b.hoeffding_m), b.hoeffding_eps,
                                 static_cast<std::int64_t>(clt)});
      r.summary = "bounds hoeffding_m=" + std::to_string(b.hoeffding_m) +
                  " hoeffding_delta=" + fmt(b.hoeffding_delta) + " clt_n=" + std::to_string(clt);
      return r;
    };
  });

  // vqe1q
  double v_nx = -std::sqrt(1.0 / 6.0), v_ny = std::sqrt(2.0 / 6.0), v_nz = -std::sqrt(3.0 / 6.0);
  q1::VqeConfig v_cfg;
  int v_runs = 30;
  auto* vqe = app.add_subcommand("vqe1q", "Shot-driven single-qubit VQE");
  vqe->add_option("--nx", v_nx, "Bloch x component");
  vqe->add_option("--ny", v_ny, "Bloch y component");
  vqe->add_option("--nz", v_nz, "Bloch z component");
  vqe->add_option("--shots", v_cfg.shots, "Shots per Pauli term, 0 = exact")->check(CLI::NonNegativeNumber);
  vqe->add_option("--runs", v_runs, "Independent runs")->check(CLI::PositiveNumber);
  vqe->add_option("--eps01", v_cfg.noise.eps01, "P(read 0 | state 1)");
  vqe->add_option("--eps10", v_cfg.noise.eps10, "P(miss 0 | state 0)");
  vqe->add_option("--max-iterations", v_cfg.max_iterations, "Optimizer iterations");
  vqe->callback([&] {
    action = [&] {
      const double norm = std::sqrt(v_nx * v_nx + v_ny * v_ny + v_nz * v_nz);
      if (!(norm > 0.0)) fail(ErrorKind::kDomain, "Bloch vector must be nonzero");
      const auto h = q1::BlochHamiltonian::from_vector({v_nx / norm, v_ny / norm, v_nz / norm});
      Result r;
      r.table.schema = {"run", "iteration", "energy", "N_tot", "error"};
      double err_sum = 0.0;
      for (int run_id = 0; run_id < v_runs; ++run_id) {
        q1::VqeConfig cfg = v_cfg;
        cfg.seed = g.seed + static_cast<std::uint64_t>(run_id);
        const auto trace = q1::vqe_run(h, cfg);
        for (const auto& s : trace.steps)
          r.table.records.push_back({static_cast<std::int64_t>(run_id), static_cast<std::int64_t>(s.evaluation),
                                     s.energy, static_cast<std::int64_t>((s.evaluation + 1) * trace.shots_per_estimate),
                                     std::abs(s.energy + 1.0)});
        r.table.records.push_back({static_cast<std::int64_t>(run_id), std::int64_t{-1}, trace.final_energy,
                                   static_cast<std::int64_t>(trace.shots_per_estimate), trace.final_error});
        err_sum += trace.final_error;
      }
      const double mean_err = err_sum / v_runs;
      r.summary = "vqe1q shots=" + std::to_string(v_cfg.shots) + " runs=" + std::to_string(v_runs) +
                  " mean_final_error=" + fmt(mean_err);
      if (v_cfg.shots > 0)
        r.summary += " reference=" + fmt(2.0 / 3.0 / std::sqrt(3.0 * static_cast<double>(v_cfg.shots)));
      return r;
    };
  });

  // toffoli-verify
  int y_k = 2, y_levels = -1;
  auto* toffoli = app.add_subcommand("toffoli-verify", "Check the k-controlled X synthesis");
  toffoli->add_option("--k", y_k, "Number of controls")->check(CLI::Range(2, 6));
  toffoli->add_option("--levels", y_levels, "Recursion levels, -1 = full");
  toffoli->callback([&] {
    action = [&] {
      const auto seq = y_k == 2 && y_levels < 0 ? synth::toffoli2_sequence()
                                                : synth::k_toffoli_recursive(y_k, y_levels);
      const double max_err =
          synth::max_abs_diff(synth::compose(seq), synth::k_controlled(synth::sqrt_x_power(2.0), y_k));
      const auto ids = synth::boolean_identity_check();
      Result r;
      r.table.schema = {"k", "elements", "multi_qubit", "max_err", "identities_passed"};
      r.table.records.push_back({static_cast<std::int64_t>(y_k), static_cast<std::int64_t>(seq.elements.size()),
                                 static_cast<std::int64_t>(synth::multi_qubit_count(seq)), max_err,
                                 static_cast<std::int64_t>(ids.all_passed())});
      if (!(max_err < 1e-9) || !ids.all_passed())
        fail(ErrorKind::kVerification, "toffoli-verify k=" + std::to_string(y_k) + " max_err=" + fmt(max_err));
      std::ostringstream os;
      os << "toffoli-verify k=" << y_k << " elements=" << seq.elements.size() << " max_err=" << max_err
         << " max_err < 1e-9";
      r.summary = os.str();
      return r;
    };
  });

  try {
    std::vector<std::string> args = args_in;
    // Locate the config file before the real parse so its keys can be merged.
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i] == "--config-file" && i + 1 < args.size()) g.config = args[i + 1];
      else if (args[i].rfind("--config-file=", 0) == 0) g.config = args[i].substr(14);
    }
    if (!g.config.empty()) inject_config(app, args, g.config);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (const CLI::Success& e) {
      return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
      app.exit(e, out, err);
      err << "error: category=usage message=" << e.what() << "\n";
      return kExitUsage;
    }
    const Result r = action();
    if (g.out.empty()) {
      out << csv::to_string(r.table);
      err << r.summary << "\n";
    } else {
      csv::emit_csv(r.table, g.out);
      out << r.summary << "\n";
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "error: category=" << to_string(e.kind()) << " message=" << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: category=internal message=" << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace ionqaoa::cli
