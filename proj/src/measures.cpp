#include "ngrover/measures.hpp"

#include <cstdio>
#include <utility>

namespace ngrover {

namespace {

std::string violation_message(const std::string& name, double deviation) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", deviation);
  return "invariant violated: " + name + " (deviation " + buf + ")";
}

void require_horizon(int horizon) {
  if (horizon < 2) throw std::invalid_argument("measure: horizon must be >= 2");
}

// 1_M (x) K applied as K R_ij K^dagger on every M x M grid block.
ComplexMatrix apply_extended(const KrausSet& kraus, const ComplexMatrix& r, Eigen::Index blocks) {
  const Eigen::Index d = r.rows() / blocks;
  ComplexMatrix out(r.rows(), r.cols());
  for (Eigen::Index i = 0; i < blocks; ++i) {
    for (Eigen::Index j = 0; j < blocks; ++j) {
      out.block(i * d, j * d, d, d) = kraus.apply(r.block(i * d, j * d, d, d));
    }
  }
  return out;
}

ComplexMatrix cp_operator(const GroverInstance& inst) {
  return projector(uniform_superposition(inst)) - projector(marked_state(inst));
}

CollisionChannel channel_for(const GroverInstance& inst, const NoiseSpec& spec,
                             const MarkovNoiseParams& params,
                             const std::optional<ThermalBath>& bath) {
  const ComplexMatrix g = grover_operator(inst);
  return collision_channel(g, noisy_grover(g, build_chi(inst.qubits(), spec)), params, bath);
}

}  // namespace

InvariantViolation::InvariantViolation(std::string name, double deviation)
    : std::runtime_error(violation_message(name, deviation)),
      name_(std::move(name)),
      deviation_(deviation) {}

StatePair blp_pair(const GroverInstance& inst) {
  const auto n = static_cast<Eigen::Index>(inst.dim());
  const Eigen::Index h = n / 2;
  DensityMatrix second = DensityMatrix::Zero(n, n);
  const double v = 1.0 / static_cast<double>(n);
  for (Eigen::Index i = 0; i < h; ++i) {
    second(i, i) = second(i + h, i + h) = v;
    second(i, i + h) = second(i + h, i) = -v;
  }
  return {projector(uniform_superposition(inst)), std::move(second)};
}

double sum_positive_increments(const std::vector<double>& series, double threshold) {
  double total = 0.0;
  for (std::size_t t = 1; t < series.size(); ++t) {
    const double delta = series[t] - series[t - 1];
    if (delta > threshold) total += delta;
  }
  return total;
}

MeasureResult n_blp(const StatePair& pair, const CollisionChannel& channel, int horizon) {
  require_horizon(horizon);
  MeasureResult result;
  result.horizon = horizon;
  ComplexMatrix a = initial_joint_state(pair.first);
  ComplexMatrix b = initial_joint_state(pair.second);
  for (int t = 0;; ++t) {
    result.series.push_back(trace_distance(reduce_walker(a), reduce_walker(b)));
    result.joint_series.push_back(trace_distance(a, b));
    if (t >= 2) {
      const double rise = result.joint_series[t] - result.joint_series[t - 1];
      if (rise > kJointMonotoneTol) throw InvariantViolation("joint_trace_distance_monotone", rise);
    }
    if (t == horizon) break;
    const KrausSet& k = t == 0 ? channel.first : channel.steady;
    a = k.apply(a);
    b = k.apply(b);
  }
  result.value = sum_positive_increments(result.series);
  return result;
}

MeasureResult n_blp(const GroverInstance& inst, const NoiseSpec& spec,
                    const MarkovNoiseParams& params, int horizon,
                    const std::optional<ThermalBath>& bath) {
  require_horizon(horizon);
  const StatePair pair = blp_pair(inst);
  if (bath) return n_blp(pair, channel_for(inst, spec, params, bath), horizon);

  const WalkerChannel channel = make_channel(inst, spec, params);
  const TraceOptions opts{false, true};
  const EvolutionTrace ta = evolve_with(channel, pair.first, inst.marked(), horizon, opts);
  const EvolutionTrace tb = evolve_with(channel, pair.second, inst.marked(), horizon, opts);

  MeasureResult result;
  result.horizon = horizon;
  for (int t = 0; t <= horizon; ++t) {
    const auto& a = ta.joint_states[static_cast<std::size_t>(t)];
    const auto& b = tb.joint_states[static_cast<std::size_t>(t)];
    result.series.push_back(trace_distance(reduce_walker(a), reduce_walker(b)));
    result.joint_series.push_back(trace_distance(a, b));
    if (t >= 2) {
      const double rise = result.joint_series[t] - result.joint_series[t - 1];
      if (rise > kJointMonotoneTol) throw InvariantViolation("joint_trace_distance_monotone", rise);
    }
  }
  result.value = sum_positive_increments(result.series);
  return result;
}

MeasureResult n_cp(const GroverInstance& inst, const NoiseSpec& spec,
                   const MarkovNoiseParams& params, int horizon) {
  require_horizon(horizon);
  const CollisionChannel channel = channel_for(inst, spec, params, std::nullopt);
  const std::size_t n = inst.dim();
  const auto spectator = static_cast<Eigen::Index>(n);

  const ComplexMatrix mixed = ComplexMatrix::Identity(spectator, spectator) / static_cast<double>(n);
  const ComplexMatrix plus = ComplexMatrix::Constant(2, 2, Complex(0.5, 0.0));
  ComplexMatrix r = tensor(mixed, tensor(plus, cp_operator(inst)));

  MeasureResult result;
  result.horizon = horizon;
  for (int t = 0;; ++t) {
    const ComplexMatrix reduced = partial_trace(r, {n, std::size_t{2}, n}, {std::size_t{0}, std::size_t{2}});
    result.series.push_back(0.5 * trace_norm(reduced));
    if (t == horizon) break;
    r = apply_extended(t == 0 ? channel.first : channel.steady, r, spectator);
  }
  result.value = sum_positive_increments(result.series);
  return result;
}

std::vector<double> n_cp_factorized_series(const GroverInstance& inst, const NoiseSpec& spec,
                                           const MarkovNoiseParams& params, int horizon) {
  const WalkerChannel channel = make_channel(inst, spec, params);
  const ComplexMatrix plus = ComplexMatrix::Constant(2, 2, Complex(0.5, 0.0));
  ComplexMatrix r = tensor(plus, cp_operator(inst));
  std::vector<double> out;
  for (int t = 0;; ++t) {
    out.push_back(0.5 * trace_norm(reduce_walker(r)));
    if (t == horizon) break;
    r = channel.apply(r, t == 0);
  }
  return out;
}

std::vector<TemperaturePoint> temperature_sweep(const GroverInstance& inst, const NoiseSpec& spec,
                                                const std::vector<double>& ps,
                                                const std::vector<double>& mus, int horizon,
                                                const std::vector<double>& temperatures) {
  std::vector<ThermalBath> baths;
  for (double temp : temperatures) baths.push_back(thermal_weights(temp));
  std::vector<TemperaturePoint> out;
  for (double p : ps) {
    for (double mu : mus) {
      const MarkovNoiseParams params(p, mu);
      for (const ThermalBath& bath : baths) {
        out.push_back({p, mu, bath.temperature, n_blp(inst, spec, params, horizon, bath).value});
      }
    }
  }
  return out;
}

}  // namespace ngrover
