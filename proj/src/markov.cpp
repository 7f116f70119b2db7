#include "ngrover/markov.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace ngrover {

namespace {

void require_unit_interval(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument(std::string("MarkovNoiseParams: ") + name + " = " +
                                std::to_string(v) + " outside [0, 1]");
  }
}

void require_joint(const ComplexMatrix& joint, std::size_t system_dim) {
  const auto d = static_cast<Eigen::Index>(2 * system_dim);
  if (joint.rows() != d || joint.cols() != d) {
    throw std::invalid_argument("walker channel: joint state has wrong dimension");
  }
}

}  // namespace

MarkovNoiseParams::MarkovNoiseParams(double p, double mu) : p_(p), mu_(mu) {
  require_unit_interval(p, "p");
  require_unit_interval(mu, "mu");
}

TransitionProbs conditional_probs(const MarkovNoiseParams& params) {
  const double p_ideal = 1.0 - params.p();
  const double p_noisy = params.p();
  const double mu = params.mu();
  return TransitionProbs{
      (1.0 - mu) * p_ideal + mu,
      (1.0 - mu) * p_noisy,
      (1.0 - mu) * p_ideal,
      (1.0 - mu) * p_noisy + mu,
  };
}

TransitionProbs stationary_probs(const MarkovNoiseParams& params) {
  return TransitionProbs{1.0 - params.p(), params.p(), 1.0 - params.p(), params.p()};
}

ComplexMatrix initial_joint_state(const DensityMatrix& rho0) {
  const ComplexMatrix plus = ComplexMatrix::Constant(2, 2, Complex(0.5, 0.0));
  return tensor(plus, rho0);
}

ComplexMatrix initial_joint_state(const GroverInstance& inst) {
  return initial_joint_state(projector(uniform_superposition(inst)));
}

DensityMatrix reduce_walker(const ComplexMatrix& joint) {
  if (joint.rows() != joint.cols() || joint.rows() % 2 != 0) {
    throw std::invalid_argument("reduce_walker: expected a square 2N x 2N matrix");
  }
  const Eigen::Index n = joint.rows() / 2;
  return joint.topLeftCorner(n, n) + joint.bottomRightCorner(n, n);
}

WalkerChannel::WalkerChannel(ComplexMatrix ideal, ComplexMatrix noisy,
                             const MarkovNoiseParams& params)
    : ideal_(std::move(ideal)),
      noisy_(std::move(noisy)),
      first_(stationary_probs(params)),
      steady_(conditional_probs(params)) {
  if (ideal_.rows() != ideal_.cols() || noisy_.rows() != noisy_.cols() ||
      ideal_.rows() != noisy_.rows()) {
    throw std::invalid_argument("WalkerChannel: G and G' must be square and equal-sized");
  }
}

ComplexMatrix WalkerChannel::apply(const ComplexMatrix& joint, bool first_step) const {
  require_joint(joint, system_dim());
  const TransitionProbs& pr = first_step ? first_ : steady_;
  const Eigen::Index n = ideal_.rows();
  const auto r_ideal = joint.topLeftCorner(n, n);
  const auto r_noisy = joint.bottomRightCorner(n, n);

  ComplexMatrix out = ComplexMatrix::Zero(2 * n, 2 * n);
  const ComplexMatrix to_ideal = pr.ideal_given_ideal * r_ideal + pr.ideal_given_noisy * r_noisy;
  const ComplexMatrix to_noisy = pr.noisy_given_ideal * r_ideal + pr.noisy_given_noisy * r_noisy;
  out.topLeftCorner(n, n).noalias() = ideal_ * to_ideal * ideal_.adjoint();
  out.bottomRightCorner(n, n).noalias() = noisy_ * to_noisy * noisy_.adjoint();
  return out;
}

ComplexMatrix WalkerChannel::transfer(const ComplexMatrix& joint, bool first_step) const {
  require_joint(joint, system_dim());
  const Eigen::Index n = ideal_.rows();
  const ComplexMatrix pops[2] = {joint.topLeftCorner(n, n), joint.bottomRightCorner(n, n)};
  const ComplexMatrix* phi[2] = {&ideal_, &noisy_};

  // weight[k][l]: coefficient of the |k><l| (x) Phi^k term.
  double weight[2][2];
  if (first_step) {
    // S0 = p_g |g><g| Phi0 + p_g' |g'><g'| Phi1 + p_g |g><g'| Phi0 + p_g' |g'><g| Phi1
    weight[0][0] = weight[0][1] = first_.ideal_given_ideal;
    weight[1][0] = weight[1][1] = first_.noisy_given_noisy;
  } else {
    weight[0][0] = steady_.ideal_given_ideal;
    weight[0][1] = steady_.ideal_given_noisy;
    weight[1][0] = steady_.noisy_given_ideal;
    weight[1][1] = steady_.noisy_given_noisy;
  }

  ComplexMatrix out = ComplexMatrix::Zero(2 * n, 2 * n);
  for (int k = 0; k < 2; ++k) {
    ComplexMatrix acc = ComplexMatrix::Zero(n, n);
    for (int l = 0; l < 2; ++l) {
      acc += weight[k][l] * (*phi[k]) * pops[l] * phi[k]->adjoint();
    }
    out.block(k * n, k * n, n, n) = acc;
  }
  return out;
}

WalkerChannel make_channel(const GroverInstance& inst, const NoiseSpec& spec,
                           const MarkovNoiseParams& params) {
  ComplexMatrix g = grover_operator(inst);
  ComplexMatrix g_noisy = noisy_grover(g, build_chi(inst.qubits(), spec));
  return WalkerChannel(std::move(g), std::move(g_noisy), params);
}

EvolutionTrace evolve_with(const WalkerChannel& channel, const DensityMatrix& rho0,
                           std::size_t marked, int steps, TraceOptions opts) {
  if (steps < 0) throw std::invalid_argument("evolve: negative step count");
  if (marked >= channel.system_dim()) throw std::invalid_argument("evolve: marked out of range");
  const auto w = static_cast<Eigen::Index>(marked);

  EvolutionTrace trace;
  trace.success.reserve(static_cast<std::size_t>(steps) + 1);
  ComplexMatrix joint = initial_joint_state(rho0);
  auto record = [&](const ComplexMatrix& r) {
    DensityMatrix rho = reduce_walker(r);
    trace.success.push_back(rho(w, w).real());
    trace.max_trace_defect = std::max(trace.max_trace_defect, std::abs(r.trace() - 1.0));
    if (opts.keep_states) trace.states.push_back(std::move(rho));
    if (opts.keep_joint) trace.joint_states.push_back(r);
  };

  record(joint);
  for (int t = 1; t <= steps; ++t) {
    joint = channel.apply(joint, t == 1);
    record(joint);
  }
  return trace;
}

EvolutionTrace markov_evolve(const GroverInstance& inst, const NoiseSpec& spec,
                             const MarkovNoiseParams& params, int steps, TraceOptions opts) {
  if (steps < 1) throw std::invalid_argument("markov_evolve: requires at least one step");
  const WalkerChannel channel = make_channel(inst, spec, params);
  return evolve_with(channel, projector(uniform_superposition(inst)), inst.marked(), steps, opts);
}

DensityMatrix history_oracle(const GroverInstance& inst, const NoiseSpec& spec,
                             const MarkovNoiseParams& params, int steps) {
  if (steps < 0 || steps > kMaxHistorySteps) {
    throw std::invalid_argument("history_oracle: horizon " + std::to_string(steps) +
                                " outside [0, " + std::to_string(kMaxHistorySteps) + "]");
  }
  const ComplexMatrix g = grover_operator(inst);
  const ComplexMatrix ops[2] = {g, noisy_grover(g, build_chi(inst.qubits(), spec))};
  const double first[2] = {1.0 - params.p(), params.p()};
  const TransitionProbs c = conditional_probs(params);
  // cond[k][l] = p_{k|l}
  const double cond[2][2] = {{c.ideal_given_ideal, c.ideal_given_noisy},
                             {c.noisy_given_ideal, c.noisy_given_noisy}};

  const auto n = static_cast<Eigen::Index>(inst.dim());
  DensityMatrix rho = DensityMatrix::Zero(n, n);
  const StateVector s = uniform_superposition(inst);
  if (steps == 0) return projector(s);

  std::function<void(const StateVector&, double, int, int)> branch =
      [&](const StateVector& psi, double weight, int previous, int depth) {
        if (weight == 0.0) return;
        if (depth == steps) {
          rho.noalias() += weight * psi * psi.adjoint();
          return;
        }
        for (int k = 0; k < 2; ++k) {
          const double pk = depth == 0 ? first[k] : cond[k][previous];
          branch(ops[k] * psi, weight * pk, k, depth + 1);
        }
      };
  branch(s, 1.0, -1, 0);
  return rho;
}

double perfect_memory_success(std::size_t database_size, double t) {
  if (database_size < 8) throw std::invalid_argument("perfect_memory_success: requires N >= 8");
  const double n = static_cast<double>(database_size);
  const double theta = std::acos(2.0 / n);
  // cos(x)(tan(h) tan(x) - 1) = tan(h) sin(x) - cos(x), finite at cos(x) = 0.
  const double amplitude = std::tan(theta / 2.0) * std::sin(theta * t) - std::cos(theta * t);
  return amplitude * amplitude / n;
}

double perfect_memory_first_maximum(std::size_t database_size) {
  if (database_size < 8) {
    throw std::invalid_argument("perfect_memory_first_maximum: requires N >= 8");
  }
  return std::numbers::pi / std::acos(2.0 / static_cast<double>(database_size)) - 0.5;
}

}  // namespace ngrover
