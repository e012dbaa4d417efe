// Copyright 2026 The causalis developers.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#ifndef CAUSALIS_TOMOGRAPHY_HPP
#define CAUSALIS_TOMOGRAPHY_HPP

#include <cstdint>
#include <vector>

#include "causalis/channels.hpp"
#include "causalis/comb.hpp"

namespace causalis {

/// Informationally complete set of d*d density matrices.
struct StateFrame {
  Eigen::Index d = 0;
  std::vector<Eigen::MatrixXcd> states;
};

/// POVM whose effects span the full operator space.
struct MeasurementFrame {
  Eigen::Index d = 0;
  std::vector<Eigen::MatrixXcd> effects;

  /// Max-norm residual of sum(effects) - I.
  double completeness_residual() const;
};

/// Standard IC frame: basis states |j> plus the real and imaginary
/// two-level superpositions, completed to d*d elements; the measurement
/// frame is the same set rescaled so the effects sum to the identity.
std::pair<StateFrame, MeasurementFrame> ic_frames(Eigen::Index d);

/// Rank of the Gram matrix Tr[F_m F_n]; d*d certifies informational
/// completeness.
Eigen::Index frame_gram_rank(const std::vector<Eigen::MatrixXcd>& frame);

struct TomographyReport {
  ChoiOperator reconstructed;
  /// probabilities[m][e]: frame state m, effect e.
  std::vector<std::vector<double>> probabilities;
  /// Smallest decoding weight (norm retained when projecting onto the
  /// output encoder's image); 1 for a valid comb.
  double min_projection_weight = 1.0;
  std::uint64_t shots = 0;  // 0 = exact mode
  std::uint64_t seed = 0;
};

/// Process tomography of the operation acting on the time-delocalized
/// slot of `circuit`: frame states are prepared on the slot input through
/// w_in (with env_prep on the residual factor), evolved, decoded through
/// w_out, and measured on the slot output. Linear inversion with dual
/// frames; shot mode replaces each setting's distribution with seeded
/// multinomial frequencies.
TomographyReport tomograph_delocalized_operation(const LabeledOperator& circuit,
                                                 const SubsystemEncoderPair& encoders,
                                                 const Eigen::MatrixXcd& env_prep,
                                                 std::uint64_t shots = 0,
                                                 std::uint64_t seed = 0);

struct ChannelComparison {
  /// Max over IC frame states of the output trace distance.
  double max_trace_distance = 0.0;
  double choi_max_residual = 0.0;
};

ChannelComparison compare_channels(const ChoiOperator& a, const ChoiOperator& b);

}  // namespace causalis

#endif
