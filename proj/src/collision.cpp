#include "ngrover/collision.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <stdexcept>
#include <utility>

namespace ngrover {

namespace {

struct SqrtProbs {
  double gg, gpg, ggp, gpgp;  // sqrt p_{g|g}, p_{g'|g}, p_{g|g'}, p_{g'|g'}
};

SqrtProbs sqrt_probs(const TransitionProbs& p) {
  return {std::sqrt(p.ideal_given_ideal), std::sqrt(p.noisy_given_ideal),
          std::sqrt(p.ideal_given_noisy), std::sqrt(p.noisy_given_noisy)};
}

TransitionProbs probs_for(StepKind kind, const MarkovNoiseParams& params) {
  return kind == StepKind::Initial ? stationary_probs(params) : conditional_probs(params);
}

void require_pair(const ComplexMatrix& g, const ComplexMatrix& g_noisy) {
  if (g.rows() != g.cols() || g_noisy.rows() != g_noisy.cols() || g.rows() != g_noisy.rows() ||
      g.rows() == 0) {
    throw std::invalid_argument("collision: G and G' must be square and equal-sized");
  }
}

// Mixer entry (row -> (col, coefficient)); rows 0..3 carry G, rows 4..7 G'.
struct MixerEntry {
  int col;
  double coeff;
};

std::array<std::array<MixerEntry, 2>, 8> mixer_entries(const SqrtProbs& s) {
  return {{
      {{{0, s.gg}, {5, s.gpg}}},
      {{{2, s.ggp}, {7, s.gpgp}}},
      {{{1, s.ggp}, {4, s.gpgp}}},
      {{{3, s.gpg}, {6, s.gg}}},
      {{{2, s.gpgp}, {7, -s.ggp}}},
      {{{0, s.gpg}, {5, -s.gg}}},
      {{{3, s.gg}, {6, -s.gpg}}},
      {{{1, s.gpgp}, {4, -s.ggp}}},
  }};
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0)) {
    throw std::invalid_argument(std::string("mixer blocks: ") + what + " must be positive");
  }
}

}  // namespace

ComplexMatrix KrausSet::apply(const ComplexMatrix& r) const {
  ComplexMatrix out = ComplexMatrix::Zero(r.rows(), r.cols());
  for (const auto& k : ops) out.noalias() += k * r * k.adjoint();
  return out;
}

double KrausSet::completeness_defect() const {
  if (ops.empty()) return 0.0;
  const auto d = static_cast<Eigen::Index>(dim());
  ComplexMatrix acc = ComplexMatrix::Zero(d, d);
  for (const auto& k : ops) acc.noalias() += k.adjoint() * k;
  return max_abs_diff(acc, ComplexMatrix::Identity(d, d));
}

double KrausSet::unitality_defect() const {
  if (ops.empty()) return 0.0;
  const auto d = static_cast<Eigen::Index>(dim());
  ComplexMatrix acc = ComplexMatrix::Zero(d, d);
  for (const auto& k : ops) acc.noalias() += k * k.adjoint();
  return max_abs_diff(acc, ComplexMatrix::Identity(d, d));
}

KrausSet kraus_step(StepKind kind, const MarkovNoiseParams& params, const ComplexMatrix& g,
                    const ComplexMatrix& g_noisy) {
  require_pair(g, g_noisy);
  const SqrtProbs s = sqrt_probs(probs_for(kind, params));
  const Eigen::Index n = g.rows();
  auto op = [&](int row, int col, double coeff, const ComplexMatrix& phi) {
    ComplexMatrix k = ComplexMatrix::Zero(2 * n, 2 * n);
    k.block(row * n, col * n, n, n) = coeff * phi;
    return k;
  };
  KrausSet set;
  set.ops = {op(0, 0, s.gg, g), op(0, 1, s.ggp, g), op(1, 0, s.gpg, g_noisy),
             op(1, 1, s.gpgp, g_noisy)};
  set.labels = {"K1", "K2", "K3", "K4"};
  return set;
}

ComplexMatrix DilationUnitary::ancilla_block(int alpha, int beta) const {
  if (alpha < 0 || alpha > 3 || beta < 0 || beta > 3) {
    throw std::invalid_argument("ancilla_block: ancilla index outside 0..3");
  }
  const auto d = static_cast<Eigen::Index>(walker_system_dim());
  return matrix.block(alpha * d, beta * d, d, d);
}

DilationUnitary dilation_unitary(StepKind kind, const MarkovNoiseParams& params,
                                 const ComplexMatrix& g, const ComplexMatrix& g_noisy) {
  require_pair(g, g_noisy);
  const Eigen::Index n = g.rows();
  const auto entries = mixer_entries(sqrt_probs(probs_for(kind, params)));
  DilationUnitary u{ComplexMatrix::Zero(8 * n, 8 * n), kind};
  for (int row = 0; row < 8; ++row) {
    const ComplexMatrix& phi = row < 4 ? g : g_noisy;
    for (const auto& e : entries[row]) {
      u.matrix.block(row * n, e.col * n, n, n) = e.coeff * phi;
    }
  }
  return u;
}

KrausSet pure_ancilla_kraus(const DilationUnitary& u) {
  KrausSet set;
  static const char* const names[4] = {"00", "01", "10", "11"};
  for (int alpha = 0; alpha < 4; ++alpha) {
    set.ops.push_back(u.ancilla_block(alpha, 0));
    set.labels.emplace_back(names[alpha]);
  }
  return set;
}

DilationReport verify_dilation(const DilationUnitary& u, const KrausSet& kraus, int trials,
                               double tol, std::uint64_t seed) {
  const std::size_t d = u.walker_system_dim();
  if (kraus.dim() != d) throw std::invalid_argument("verify_dilation: dimension mismatch");
  DilationReport report;
  report.trials = trials;
  report.tolerance = tol;
  report.unitarity_defect = unitarity_defect(u.matrix);

  const KrausSet induced = pure_ancilla_kraus(u);
  for (std::size_t i = 0; i < std::min(induced.ops.size(), kraus.ops.size()); ++i) {
    report.kraus_mismatch =
        std::max(report.kraus_mismatch, max_abs_diff(induced.ops[i], kraus.ops[i]));
  }
  if (induced.ops.size() != kraus.ops.size()) report.kraus_mismatch = INFINITY;

  const ComplexMatrix anc = projector(basis_state(4, 0));
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    const DensityMatrix r = random_density(d, rng());
    const ComplexMatrix full = u.matrix * tensor(anc, r) * u.matrix.adjoint();
    const ComplexMatrix via_unitary = partial_trace(full, {std::size_t{4}, d}, {std::size_t{1}});
    report.max_deviation =
        std::max(report.max_deviation, trace_distance(via_unitary, kraus.apply(r)));
  }
  report.passed = report.max_deviation <= tol && report.kraus_mismatch <= tol &&
                  report.unitarity_defect <= kDilationUnitarityTol;
  return report;
}

MixerFactorization extract_mixer(const DilationUnitary& u, const ComplexMatrix& chi,
                                 const ComplexMatrix& g, double tol) {
  const Eigen::Index n = g.rows();
  if (u.matrix.rows() != 8 * n || chi.rows() != n) {
    throw std::invalid_argument("extract_mixer: dimension mismatch");
  }
  const ComplexMatrix g_inv = g.adjoint();
  const ComplexMatrix chi_inv = chi.adjoint();

  MixerFactorization best;
  best.residual = INFINITY;
  for (int control : {1, 0}) {
    // M_full = C^dagger U (1_8 (x) G^dagger), block by block.
    Matrix8c mixer;
    double residual = 0.0;
    std::array<std::array<ComplexMatrix, 8>, 8> blocks;
    for (int r = 0; r < 8; ++r) {
      const bool controlled = (r >= 4) == (control == 1);
      for (int c = 0; c < 8; ++c) {
        ComplexMatrix b = u.matrix.block(r * n, c * n, n, n) * g_inv;
        if (controlled) b = chi_inv * b;
        mixer(r, c) = b.trace() / static_cast<double>(n);
        blocks[r][c] = std::move(b);
      }
    }
    for (int r = 0; r < 8; ++r) {
      for (int c = 0; c < 8; ++c) {
        residual = std::max(
            residual, max_abs_diff(blocks[r][c], mixer(r, c) * ComplexMatrix::Identity(n, n)));
      }
    }
    if (residual < best.residual) {
      best.mixer = mixer;
      best.residual = residual;
      best.control_state = control;
    }
  }
  best.unitarity_defect = max_abs_diff(best.mixer.adjoint() * best.mixer, Matrix8c::Identity());
  best.factorized = best.residual <= tol;
  return best;
}

MixerEigenBlocks printed_mixer_blocks(const TransitionProbs& probs) {
  const SqrtProbs s = sqrt_probs(probs);
  require_positive(s.gg, "p_{g|g}");
  require_positive(s.gpg, "p_{g'|g}");
  require_positive(s.gpgp, "p_{g'|g'}");
  MixerEigenBlocks out;
  out.minus << 0, (s.gg - 1) / s.gpg, 0, 0,
               s.ggp / s.gpgp, 0, 0, -1 / s.gpgp,
               -1 / s.gpgp, 0, 0, s.ggp / s.gpgp,
               0, 0, -s.gg / s.gpg, 0;
  out.plus << 0, (s.gg + 1) / s.gpg, 0, 0,
              s.ggp / s.gpgp, 0, 0, 1 / s.gpgp,
              1 / s.gpgp, 0, 0, s.ggp / s.gpgp,
              0, 0, (s.gpg + 1) / s.gg, 0;
  return out;
}

MixerEigenBlocks corrected_mixer_blocks(const TransitionProbs& probs) {
  MixerEigenBlocks out = printed_mixer_blocks(probs);
  const SqrtProbs s = sqrt_probs(probs);
  out.minus(3, 2) = (s.gpg - 1) / s.gg;
  return out;
}

std::array<double, 8> mixer_eigen_residuals(const Matrix8c& mixer, const MixerEigenBlocks& blocks) {
  std::array<double, 8> out{};
  for (int half = 0; half < 2; ++half) {
    const Eigen::Matrix4d& top = half == 0 ? blocks.plus : blocks.minus;
    const double lambda = half == 0 ? 1.0 : -1.0;
    for (int j = 0; j < 4; ++j) {
      Eigen::Matrix<Complex, 8, 1> v = Eigen::Matrix<Complex, 8, 1>::Zero();
      for (int i = 0; i < 4; ++i) v(i) = top(i, j);
      v(4 + j) = 1.0;
      const double scale = v.cwiseAbs().maxCoeff();
      out[static_cast<std::size_t>(4 * half + j)] =
          (mixer * v - lambda * v).cwiseAbs().maxCoeff() / scale;
    }
  }
  return out;
}

ThermalBath thermal_weights(double temperature) {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw std::invalid_argument("thermal_weights: temperature must be positive and finite");
  }
  const double e = std::exp(-1.0 / temperature);
  return ThermalBath{temperature, 1.0 / (1.0 + e), e / (1.0 + e)};
}

KrausSet thermal_kraus(const DilationUnitary& u, const ThermalBath& bath) {
  const double mixed = std::sqrt(bath.z1 * bath.z2);
  const double pi[4] = {bath.z1, mixed, mixed, bath.z2};
  static const char* const names[4] = {"00", "01", "10", "11"};
  KrausSet set;
  for (int alpha = 0; alpha < 4; ++alpha) {
    for (int beta = 0; beta < 4; ++beta) {
      set.ops.push_back(pi[beta] * u.ancilla_block(alpha, beta));
      set.labels.push_back(std::string(names[alpha]) + "|" + names[beta]);
    }
  }
  return set;
}

CollisionChannel collision_channel(const ComplexMatrix& g, const ComplexMatrix& g_noisy,
                                   const MarkovNoiseParams& params,
                                   const std::optional<ThermalBath>& bath) {
  if (!bath) {
    return {kraus_step(StepKind::Initial, params, g, g_noisy),
            kraus_step(StepKind::Steady, params, g, g_noisy)};
  }
  return {thermal_kraus(dilation_unitary(StepKind::Initial, params, g, g_noisy), *bath),
          thermal_kraus(dilation_unitary(StepKind::Steady, params, g, g_noisy), *bath)};
}

EvolutionTrace collision_evolve(const CollisionChannel& channel, const ComplexMatrix& joint0,
                                std::size_t marked, int steps, TraceOptions opts) {
  if (steps < 0) throw std::invalid_argument("collision_evolve: negative step count");
  const std::size_t d = channel.steady.dim();
  if (static_cast<std::size_t>(joint0.rows()) != d || channel.first.dim() != d) {
    throw std::invalid_argument("collision_evolve: dimension mismatch");
  }
  if (marked >= d / 2) throw std::invalid_argument("collision_evolve: marked out of range");
  const auto w = static_cast<Eigen::Index>(marked);

  EvolutionTrace trace;
  auto record = [&](const ComplexMatrix& r) {
    DensityMatrix rho = reduce_walker(r);
    trace.success.push_back(rho(w, w).real());
    trace.max_trace_defect = std::max(trace.max_trace_defect, std::abs(r.trace() - 1.0));
    if (opts.keep_states) trace.states.push_back(std::move(rho));
    if (opts.keep_joint) trace.joint_states.push_back(r);
  };
  ComplexMatrix joint = joint0;
  record(joint);
  for (int t = 1; t <= steps; ++t) {
    joint = (t == 1 ? channel.first : channel.steady).apply(joint);
    record(joint);
  }
  return trace;
}

}  // namespace ngrover
