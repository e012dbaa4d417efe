// Copyright 2026 The causalis developers.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#ifndef CAUSALIS_COMB_HPP
#define CAUSALIS_COMB_HPP

#include <vector>

#include "causalis/process.hpp"

namespace causalis {

/// Channel form of a four-party process with an output-only party (D) and
/// an input-only party (C): an isometry or unitary from [D_O, A_O, B_O]
/// to [A_I, B_I, C_I], stored with those labels.
struct FourPartyProcessChannel {
  LabeledOperator v;

  SystemList in_systems() const { return v.cols(); }
  SystemList out_systems() const { return v.rows(); }
};

/// The controlled-order composition as a four-party process channel at
/// target dimension d (D_O and C_I have dimension 2d).
FourPartyProcessChannel switch_process_channel(Eigen::Index d);

/// Process matrix of the channel (transposed Choi, canonical 4-party layout).
ProcessMatrix process_of(const FourPartyProcessChannel& channel);

/// Inverse of process_of for unitary (rank-one Choi) processes with one
/// output-only and one input-only party; systems are relabeled to the
/// canonical D_O/A/B/C names by party role. Throws when the dual channel
/// is not an isometry.
FourPartyProcessChannel channel_of_process(const ProcessMatrix& w);

/// Contraction of Alice's extended unitary (rows [a_O, A_O], cols
/// [a_I, A_I]) with the process channel; closes the feedback wire A_I and
/// returns the comb from [a_I, D_O, B_O] to [a_O, B_I, C_I].
LabeledOperator compose_with_alice(const FourPartyProcessChannel& channel,
                                   const LabeledOperator& u_a);

/// Slot boundary for the two-tooth factorization of an isometry: the
/// first tooth maps first_in to first_out (plus memory), the second maps
/// the memory and second_in to second_out.
struct CombCut {
  std::vector<std::string> first_in;
  std::vector<std::string> first_out;
  std::vector<std::string> second_in;
  std::vector<std::string> second_out;
};

/// Two-isometry factorization G = (I_{first_out} x V2)(V1 x I_{second_in})
/// through a minimal memory system X.
struct OneComb {
  LabeledOperator v1;  // first_in -> [first_out, X]
  LabeledOperator v2;  // [X, second_in] -> second_out
  SystemId x;
  double reconstruction_residual = 0.0;
  double probe_gap = 0.0;
};

/// Minimal-dilation factorization of an isometric comb. The memory
/// dimension equals the Choi rank of the first-tooth reduced channel;
/// V2 is recovered by least squares on V1's image. Throws when the
/// reduced channel depends on the second-slot input (no valid comb with
/// this cut ordering).
OneComb comb_factorize(const LabeledOperator& g, const CombCut& cut);

/// Unitaries (isometries in the Theorem-2 case) identifying Alice's
/// time-delocalized slot: w_in maps [At_I, Abar] onto [D_O, B_O] and
/// w_out maps [At_O, Abar] into [B_I, C_I], with the residual subsystem
/// Abar carried identically from input to output.
struct SubsystemEncoderPair {
  LabeledOperator w_in;
  LabeledOperator w_out;
  SystemId a_tilde_in;   // At_I
  SystemId a_tilde_out;  // At_O
  SystemId a_bar;        // Abar
};

/// Computes the encoders by factorizing the process channel itself with
/// Alice's slot as the comb boundary (formally, the SWAP plugged into
/// Bob's slot).
SubsystemEncoderPair extract_delocalized_subsystems(const FourPartyProcessChannel& channel);

/// Max residual of ||compose_with_alice(V, U_A) - w_out (U_A x I) w_in†||
/// over `samples` seeded Haar unitaries with ancilla dimension anc_dim
/// (the identity is always included).
double verify_theorem_factorization(const FourPartyProcessChannel& channel,
                                    const SubsystemEncoderPair& encoders,
                                    int samples, Eigen::Index anc_dim,
                                    std::uint64_t seed);

struct Theorem2Report {
  bool satisfies = false;
  double probe_gap = 0.0;
  Eigen::Index choi_rank = 0;
  Eigen::Index k_dim = 0;  // codimension of the embedded product subspace
};

/// Tests whether the isometry factors as a unitary identification of a
/// subsystem of [D_O, B_O] with A_I followed by an isometric second
/// tooth: the marginal channel [D_O, B_O] -> A_I must be probe
/// independent and its Choi rank must make the first tooth square.
Theorem2Report check_theorem2_form(const FourPartyProcessChannel& channel);

/// Distance between the orthogonal projectors onto the linear spans of
/// two operator lists (basis-freedom-invariant algebra comparison).
double span_projector_distance(const std::vector<Eigen::MatrixXcd>& a,
                               const std::vector<Eigen::MatrixXcd>& b);

}  // namespace causalis

#endif
