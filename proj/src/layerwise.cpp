#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <thread>

#include "ionqaoa/error.hpp"
#include "ionqaoa/instance_db.hpp"
#include "ionqaoa/optimizer.hpp"

namespace ionqaoa::opt {

namespace {

constexpr Range kBetaRange{0.0, std::numbers::pi};
constexpr Range kGammaRange{0.0, 2.0 * std::numbers::pi};

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  // splitmix64 finalizer over the running hash
  std::uint64_t z = h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct RepeatState {
  std::vector<double> x;
  double energy = INFINITY;
};

}  // namespace

std::vector<TrainRecord> layerwise_train(const sk::SKInstance& inst, const AnsatzModel& model,
                                         const OptimizerConfig& cfg, std::uint64_t stream) {
  cfg.validate();
  if (model.n_qubits() != inst.n()) fail(ErrorKind::kDimension, "ansatz/instance width mismatch");
  const auto spec = sk::spectrum(inst);
  const double threshold = sk::success_threshold(spec);
  const LeveledDiagonal problem(inst.diagonal());

  Statevector work(inst.n());
  auto energy_of = [&](std::span<const double> x) {
    model.prepare_into(x, work);
    return problem.expectation(work);
  };
  AnsatzModel::Workspace ws;
  std::vector<double> full_grad;
  const bool exact = cfg.method == Method::kLbfgs;
  Gradient joint_grad;
  if (exact)
    joint_grad = [&](std::span<const double> x, std::span<double> g) {
      return model.energy_gradient(x, problem, g, ws);
    };

  std::vector<RepeatState> repeats(cfg.heuristic_repeats);
  std::vector<TrainRecord> records;
  long evaluations = 0;
  std::vector<double> full;
  const Range new_layer_ranges[2] = {kBetaRange, kGammaRange};

  // Depth-major so the first solved depth over all repeats is found.
  for (int p = 1; p <= cfg.max_depth; ++p) {
    TrainRecord rec;
    rec.depth = p;
    rec.best_energy = INFINITY;
    for (int r = 0; r < cfg.heuristic_repeats; ++r) {
      RepeatState& st = repeats[r];
      const std::uint64_t base = mix(mix(mix(stream, static_cast<std::uint64_t>(r)), p), 0);

      // Append a layer with everything before it frozen; (0, 0) is the identity.
      const std::vector<double> frozen = st.x;
      auto new_layer = [&](std::span<const double> y) {
        full = frozen;
        full.push_back(y[0]);
        full.push_back(y[1]);
        return energy_of(full);
      };
      Gradient new_layer_grad;
      if (exact)
        new_layer_grad = [&](std::span<const double> y, std::span<double> g) {
          full = frozen;
          full.push_back(y[0]);
          full.push_back(y[1]);
          full_grad.resize(full.size());
          const double v = model.energy_gradient(full, problem, full_grad, ws);
          g[0] = full_grad[full.size() - 2];
          g[1] = full_grad[full.size() - 1];
          return v;
        };
      const double zero[2] = {0.0, 0.0};
      MinimizeResult layer =
          local_minimize(new_layer, zero, new_layer_ranges, cfg, base, new_layer_grad);
      evaluations += layer.evaluations;
      st.x = frozen;
      st.x.push_back(layer.x[0]);
      st.x.push_back(layer.x[1]);
      st.energy = layer.value;

      if (p > 1) {
        MinimizeResult joint = local_minimize(energy_of, st.x, {}, cfg, mix(base, 1), joint_grad);
        evaluations += joint.evaluations;
        if (joint.value < st.energy) {
          st.x = std::move(joint.x);
          st.energy = joint.value;
        }
      }
      if (st.energy < rec.best_energy) {
        rec.best_energy = st.energy;
        rec.best_params = AnsatzParams::unflatten(st.x);
      }
    }
    // Repeats are individually non-increasing; keep the record so too.
    if (!records.empty() && records.back().best_energy < rec.best_energy) {
      rec.best_energy = records.back().best_energy;
      rec.best_params = records.back().best_params;
      rec.best_params.beta.push_back(0.0);
      rec.best_params.gamma.push_back(0.0);
    }
    rec.solved = rec.best_energy <= threshold;
    rec.evaluations = evaluations;
    records.push_back(rec);
    if (rec.solved) break;
  }
  return records;
}

std::optional<int> first_solved_depth(const std::vector<TrainRecord>& records) {
  for (const auto& r : records)
    if (r.solved) return r.depth;
  return std::nullopt;
}

std::string_view to_string(CouplingConfig c) {
  switch (c) {
    case CouplingConfig::kSymmetric: return "sym";
    case CouplingConfig::kAsymmetric: return "asym";
    case CouplingConfig::kSearch: return "search";
    case CouplingConfig::kStandard: return "standard";
  }
  return "?";
}

CouplingConfig parse_coupling_config(std::string_view s) {
  if (s == "sym") return CouplingConfig::kSymmetric;
  if (s == "asym") return CouplingConfig::kAsymmetric;
  if (s == "search") return CouplingConfig::kSearch;
  if (s == "standard") return CouplingConfig::kStandard;
  fail(ErrorKind::kUsage, "unknown coupling config '" + std::string(s) + "'");
}

std::vector<double> random_asymmetric_amplitudes(int n, std::uint64_t seed) {
  if (n < 2) fail(ErrorKind::kDomain, "asymmetric amplitudes need n >= 2");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> a(n);
  for (;;) {
    for (auto& v : a) v = u(rng);
    for (int j = 0; j < n / 2; ++j)
      if (std::abs(a[j] - a[n - 1 - j]) > 1e-3) return a;
  }
}

InstanceOutcome train_instance(const sk::SKInstance& inst, CouplingConfig config,
                               const OptimizerConfig& cfg, int search_sets) {
  InstanceOutcome out;
  out.mask = inst.mask();
  const int n = inst.n();
  const std::uint64_t stream = mix(cfg.rng_seed, inst.mask());
  switch (config) {
    case CouplingConfig::kSymmetric: {
      const auto model = AnsatzModel::ion_native(ion::uniform_couplings(n));
      out.records = layerwise_train(inst, model, cfg, stream);
      break;
    }
    case CouplingConfig::kAsymmetric: {
      const auto a = random_asymmetric_amplitudes(n, mix(stream, 0xA5));
      const auto model =
          AnsatzModel::ion_native(ion::build_couplings(n, ion::kDefaultJmax, ion::kDefaultAlpha, a));
      out.records = layerwise_train(inst, model, cfg, stream);
      break;
    }
    case CouplingConfig::kSearch: {
      if (search_sets < 1) fail(ErrorKind::kDomain, "search_sets must be >= 1");
      std::mt19937_64 rng(mix(stream, 0x5E));
      std::uniform_real_distribution<double> u(-1.0, 1.0);
      OptimizerConfig local = cfg;
      for (int s = 0; s < search_sets && local.max_depth >= 1; ++s) {
        std::vector<double> a(n);
        for (auto& v : a) v = u(rng);
        const auto model = AnsatzModel::ion_native(
            ion::build_couplings(n, ion::kDefaultJmax, ion::kDefaultAlpha, a));
        auto records = layerwise_train(inst, model, local, mix(stream, s));
        const auto depth = first_solved_depth(records);
        if (depth) {
          out.records = std::move(records);
          out.solved_depth = depth;
          // Only a strictly shallower solution can improve on this one.
          local.max_depth = *depth - 1;
        } else if (!out.solved_depth &&
                   (out.records.empty() || records.back().best_energy < out.records.back().best_energy)) {
          out.records = std::move(records);
        }
      }
      break;
    }
    case CouplingConfig::kStandard: {
      const auto model = AnsatzModel::standard(inst);
      out.records = layerwise_train(inst, model, cfg, stream);
      break;
    }
  }
  if (config != CouplingConfig::kSearch) out.solved_depth = first_solved_depth(out.records);
  return out;
}

FractionCurve fraction_curve(const std::vector<sk::SKInstance>& instances,
                             const OptimizerConfig& cfg, const FractionOptions& options) {
  cfg.validate();
  if (instances.empty()) fail(ErrorKind::kDomain, "fraction_curve needs at least one instance");

  FractionCurve curve;
  curve.outcomes.resize(instances.size());

  // With a DB, instances sharing a ground space are trained once: the first
  // one by position is the representative, the rest become cache hits.
  std::vector<std::string> keys(instances.size());
  std::vector<std::size_t> work;
  std::map<std::string, std::size_t> representative;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    curve.outcomes[i].mask = instances[i].mask();
    if (!options.db) {
      work.push_back(i);
      continue;
    }
    keys[i] = canonical_key(instances[i].n(), sk::spectrum(instances[i]));
    if (auto hit = options.db->lookup(keys[i])) {
      curve.outcomes[i].solved_depth = hit->solved_depth;
      curve.outcomes[i].cache_hit = true;
    } else if (representative.emplace(keys[i], i).second) {
      work.push_back(i);
    }
  }

  int threads = options.threads > 0 ? options.threads
                                    : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min<int>(threads, static_cast<int>(std::max<std::size_t>(1, work.size())));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (;;) {
      const std::size_t w = next.fetch_add(1);
      if (w >= work.size()) return;
      try {
        const std::size_t i = work[w];
        curve.outcomes[i] = train_instance(instances[i], options.config, cfg, options.search_sets);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  if (error) std::rethrow_exception(error);

  if (options.db) {
    for (const auto& [key, i] : representative) {
      const auto& o = curve.outcomes[i];
      options.db->insert(key, DbEntry{o.solved_depth.has_value(), o.solved_depth});
    }
    for (std::size_t i = 0; i < instances.size(); ++i) {
      if (curve.outcomes[i].cache_hit) continue;
      auto it = representative.find(keys[i]);
      if (it != representative.end() && it->second != i) {
        curve.outcomes[i].solved_depth = curve.outcomes[it->second].solved_depth;
        curve.outcomes[i].cache_hit = true;
      }
    }
  }

  curve.solved_fraction.assign(cfg.max_depth, 0.0);
  for (const auto& o : curve.outcomes)
    if (o.solved_depth)
      for (int p = *o.solved_depth; p <= cfg.max_depth; ++p) curve.solved_fraction[p - 1] += 1.0;
  for (auto& f : curve.solved_fraction) f /= static_cast<double>(instances.size());
  return curve;
}

}  // namespace ionqaoa::opt
