// Copyright 2026 The causalis developers.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#ifndef CAUSALIS_PROCESS_HPP
#define CAUSALIS_PROCESS_HPP

#include <optional>
#include <string>
#include <vector>

#include "causalis/channels.hpp"
#include "causalis/labeled_operator.hpp"

namespace causalis {

/// One party with an optional input and an optional output system.
/// Input-only parties (a final measurement) and output-only parties (an
/// initial preparation) carry a single slot.
struct Party {
  std::string name;
  std::optional<SystemId> in;
  std::optional<SystemId> out;
};

struct PartyLayout {
  std::vector<Party> parties;

  const Party& party(const std::string& name) const;
  SystemList input_systems() const;
  SystemList output_systems() const;
  /// All systems in canonical order: per party, input then output.
  SystemList all_systems() const;
};

/// Positive operator over all party systems that assigns probabilities to
/// joint local outcomes via p = Tr[W (M_A x M_B x ...)].
struct ProcessMatrix {
  PartyLayout layout;
  LabeledOperator w;

  /// W permuted to the layout's canonical system order.
  LabeledOperator canonical() const;
};

struct ProbabilityTable {
  std::vector<std::string> parties;
  std::vector<std::vector<std::string>> outcome_labels;  // per party
  std::vector<double> p;  // flat, row-major over the party order

  double total() const;
};

/// Joint outcome distribution for one instrument per party.
ProbabilityTable born_probabilities(const ProcessMatrix& w,
                                    const std::vector<Instrument>& instruments);

struct ProcessValidationReport {
  bool hermitian = false;
  bool psd = false;
  double min_eigenvalue = 0.0;
  double identity_weight = 0.0;
  double identity_weight_expected = 0.0;
  bool identity_weight_ok = false;
  /// Flat Hilbert-Schmidt indices of nonzero terms violating the term-type
  /// rule (no party has a nontrivial component on its input together with
  /// identity on its output).
  std::vector<Eigen::Index> forbidden_terms;
  double max_normalization_error = 0.0;
  bool normalization_ok = false;

  bool valid() const {
    return hermitian && psd && identity_weight_ok && forbidden_terms.empty() &&
           normalization_ok;
  }
};

/// Full validity check: positivity, identity weight 1/prod(d_in), the
/// Hilbert-Schmidt term-type rule, and unit normalization sampled over
/// random CPTP tuples.
ProcessValidationReport validate_process_matrix(const ProcessMatrix& w,
                                                int normalization_samples = 50,
                                                std::uint64_t seed = 0);

/// Channel dual to the process matrix: a channel from all party outputs to
/// all party inputs whose (transposed) Choi operator is W reshuffled.
ChoiOperator process_channel_duality(const ProcessMatrix& w);
/// Inverse of the duality for a given layout.
ProcessMatrix process_from_channel(const ChoiOperator& c, const PartyLayout& layout);

struct SignalingResult {
  double structural_residual = 0.0;
  bool structural_no_signaling = false;
  double operational_gap = 0.0;
};

/// Signaling diagnostics from `from` to `to`. The structural test checks
/// whether W factors as (Tr_{from_O} W)/d ⊗ I on from's output (no signaling
/// from `from` at all); the operational gap is the largest total-variation
/// distance between `to`'s outcome distributions over `samples` seeded
/// random CPTP choices for `from`, all other parties held fixed.
SignalingResult signaling_test(const ProcessMatrix& w, const std::string& from,
                               const std::string& to, int samples = 64,
                               std::uint64_t seed = 0);

struct NonseparabilityCertificate {
  bool certified = false;
  Eigen::Index rank = 0;
  double gap_ab = 0.0;
  double gap_ba = 0.0;
};

/// Sufficient certificate of causal nonseparability for a tripartite
/// process (A, B with both slots; C input-only): W proportional to a
/// rank-one projector together with two-way operational signaling between
/// A and B. Absence of the certificate proves nothing.
NonseparabilityCertificate nonseparability_certificate(const ProcessMatrix& w,
                                                       double gap_threshold = 0.01,
                                                       std::uint64_t seed = 0);

/// Max-norm residual of the no-signaling-from-last-party constraint for a
/// fixed party order; zero residual means W is compatible with that order.
double fixed_order_form_check(const ProcessMatrix& w,
                              const std::vector<std::string>& order);

}  // namespace causalis

#endif
