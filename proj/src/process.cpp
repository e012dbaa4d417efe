// Copyright 2026 The causalis developers.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#include "causalis/process.hpp"

#include <cmath>
#include <stdexcept>

#include "causalis/hs_basis.hpp"
#include "causalis/predicates.hpp"

namespace causalis {

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x += a * 0x94d049bb133111ebULL + b;
  x = (x ^ (x >> 27)) * 0x2545f4914f6cdd1dULL;
  return x ^ (x >> 31);
}

SystemList party_systems(const Party& p) {
  SystemList s;
  if (p.in) s.push_back(*p.in);
  if (p.out) s.push_back(*p.out);
  return s;
}

double real_trace_product(const LabeledOperator& w, const LabeledOperator& m) {
  LabeledOperator aligned = permute_like(m, w);
  return (w.matrix() * aligned.matrix()).trace().real();
}

/// Deterministic CPTP default for spectator parties: trace the input and
/// reprepare the maximally mixed state.
ChoiOperator spectator_choi(const Party& p) {
  SystemList in = p.in ? SystemList{*p.in} : SystemList{};
  SystemList out = p.out ? SystemList{*p.out} : SystemList{};
  Eigen::Index din = total_dim(in);
  Eigen::Index dout = total_dim(out);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(din * dout, din * dout) /
                       static_cast<double>(dout);
  return ChoiOperator{in, out, LabeledOperator(concat(in, out), concat(in, out), m)};
}

Eigen::VectorXcd basis_state(Eigen::Index d, int basis, Eigen::Index j) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d);
  if (basis == 0) {
    v(j) = 1.0;
  } else {
    double dd = static_cast<double>(d);
    for (Eigen::Index k = 0; k < d; ++k)
      v(k) = std::polar(1.0 / std::sqrt(dd),
                        2.0 * M_PI * static_cast<double>(j * k) / dd);
  }
  return v;
}

/// Destructive (or measure-and-reset) instrument measuring `basis` on the
/// party's input.
Instrument basis_instrument(const Party& p, int basis) {
  if (!p.in) throw std::invalid_argument("signaling: receiving party has no input");
  SystemList in{*p.in};
  SystemList out = p.out ? SystemList{*p.out} : SystemList{};
  Eigen::Index d = p.in->dim;
  Instrument inst{p.name, {}};
  for (Eigen::Index j = 0; j < d; ++j) {
    Eigen::VectorXcd phi = basis_state(d, basis, j);
    Eigen::MatrixXcd k(total_dim(out), d);
    k.setZero();
    k.row(0) = phi.adjoint();
    inst.outcomes.emplace_back(std::to_string(j),
                               choi_from_map({LabeledOperator(out, in, k)}));
  }
  return inst;
}

double total_variation(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return 0.5 * (a - b).cwiseAbs().sum();
}

}  // namespace

const Party& PartyLayout::party(const std::string& name) const {
  for (const auto& p : parties)
    if (p.name == name) return p;
  throw std::invalid_argument("unknown party " + name);
}

SystemList PartyLayout::input_systems() const {
  SystemList s;
  for (const auto& p : parties)
    if (p.in) s.push_back(*p.in);
  return s;
}

SystemList PartyLayout::output_systems() const {
  SystemList s;
  for (const auto& p : parties)
    if (p.out) s.push_back(*p.out);
  return s;
}

SystemList PartyLayout::all_systems() const {
  SystemList s;
  for (const auto& p : parties) {
    SystemList ps = party_systems(p);
    s.insert(s.end(), ps.begin(), ps.end());
  }
  return s;
}

LabeledOperator ProcessMatrix::canonical() const {
  return permute_systems(w, names_of(layout.all_systems()));
}

double ProbabilityTable::total() const {
  double s = 0.0;
  for (double x : p) s += x;
  return s;
}

ProbabilityTable born_probabilities(const ProcessMatrix& w,
                                    const std::vector<Instrument>& instruments) {
  const LabeledOperator wc = w.canonical();
  std::vector<const Instrument*> per_party;
  for (const auto& p : w.layout.parties) {
    const Instrument* found = nullptr;
    for (const auto& inst : instruments)
      if (inst.party == p.name) found = &inst;
    if (!found) throw std::invalid_argument("no instrument for party " + p.name);
    per_party.push_back(found);
  }
  ProbabilityTable table;
  Eigen::Index n_tuples = 1;
  for (std::size_t i = 0; i < per_party.size(); ++i) {
    table.parties.push_back(w.layout.parties[i].name);
    std::vector<std::string> labels;
    for (const auto& o : per_party[i]->outcomes) labels.push_back(o.first);
    table.outcome_labels.push_back(std::move(labels));
    n_tuples *= static_cast<Eigen::Index>(per_party[i]->outcomes.size());
  }
  std::vector<Eigen::Index> idx(per_party.size(), 0);
  for (Eigen::Index t = 0; t < n_tuples; ++t) {
    LabeledOperator m = per_party[0]->outcomes[idx[0]].second.op;
    for (std::size_t i = 1; i < per_party.size(); ++i)
      m = tensor(m, per_party[i]->outcomes[idx[i]].second.op);
    double p = real_trace_product(wc, m);
    if (p < -1e-10)
      throw std::runtime_error("born_probabilities: negative probability " +
                               std::to_string(p));
    table.p.push_back(p < 0 ? 0.0 : p);
    for (std::size_t i = per_party.size(); i-- > 0;) {
      if (++idx[i] < static_cast<Eigen::Index>(per_party[i]->outcomes.size())) break;
      idx[i] = 0;
    }
  }
  return table;
}

ProcessValidationReport validate_process_matrix(const ProcessMatrix& w,
                                                int normalization_samples,
                                                std::uint64_t seed) {
  ProcessValidationReport report;
  const LabeledOperator wc = w.canonical();
  MatrixPredicates preds = matrix_predicates(wc, 1e-10);
  report.hermitian = preds.hermitian;
  report.psd = preds.psd;
  report.min_eigenvalue = preds.min_eigenvalue;
  if (!report.hermitian)
    throw std::invalid_argument("validate_process_matrix: W is not Hermitian");

  const SystemList systems = w.layout.all_systems();
  auto bases = standard_bases(systems);
  HsDecomposition dec = hs_decompose(wc, bases);

  double expected = 1.0;
  for (const auto& s : w.layout.input_systems()) expected /= static_cast<double>(s.dim);
  report.identity_weight = dec.identity_coeff();
  report.identity_weight_expected = expected;
  report.identity_weight_ok = std::abs(report.identity_weight - expected) <= 1e-10;

  std::vector<Eigen::Index> radices = dec.radices();
  std::vector<Eigen::Index> strides(radices.size(), 1);
  for (std::size_t i = radices.size(); i-- > 1;)
    strides[i - 1] = strides[i] * radices[i];
  std::vector<Eigen::Index> digits(radices.size());
  for (Eigen::Index flat = 1; flat < static_cast<Eigen::Index>(dec.coeffs.size());
       ++flat) {
    if (std::abs(dec.coeffs[flat]) <= 1e-10) continue;
    for (std::size_t i = 0; i < radices.size(); ++i)
      digits[i] = (flat / strides[i]) % radices[i];
    bool allowed = false;
    for (const auto& p : w.layout.parties) {
      if (!p.in) continue;
      bool in_nontrivial = digits[index_of(systems, p.in->name)] != 0;
      bool out_trivial = !p.out || digits[index_of(systems, p.out->name)] == 0;
      if (in_nontrivial && out_trivial) {
        allowed = true;
        break;
      }
    }
    if (!allowed) report.forbidden_terms.push_back(flat);
  }

  report.max_normalization_error = 0.0;
  for (int s = 0; s < normalization_samples; ++s) {
    LabeledOperator m = LabeledOperator::identity({});
    bool first = true;
    for (std::size_t pi = 0; pi < w.layout.parties.size(); ++pi) {
      const Party& p = w.layout.parties[pi];
      SystemList in = p.in ? SystemList{*p.in} : SystemList{};
      SystemList out = p.out ? SystemList{*p.out} : SystemList{};
      ChoiOperator c = random_cptp(in, out, 2, mix_seed(seed, s, pi));
      m = first ? c.op : tensor(m, c.op);
      first = false;
    }
    double p = real_trace_product(wc, m);
    report.max_normalization_error =
        std::max(report.max_normalization_error, std::abs(p - 1.0));
  }
  report.normalization_ok = report.max_normalization_error <= 1e-9;
  return report;
}

ChoiOperator process_channel_duality(const ProcessMatrix& w) {
  SystemList outs = w.layout.output_systems();
  SystemList ins = w.layout.input_systems();
  std::vector<std::string> order = names_of(concat(outs, ins));
  LabeledOperator op = permute_systems(w.w, order).transpose_square();
  return ChoiOperator{outs, ins, std::move(op)};
}

ProcessMatrix process_from_channel(const ChoiOperator& c, const PartyLayout& layout) {
  LabeledOperator op =
      permute_systems(c.op.transpose_square(), names_of(layout.all_systems()));
  return ProcessMatrix{layout, std::move(op)};
}

SignalingResult signaling_test(const ProcessMatrix& w, const std::string& from,
                               const std::string& to, int samples,
                               std::uint64_t seed) {
  if (from == to) throw std::invalid_argument("signaling_test: from == to");
  const Party& pf = w.layout.party(from);
  const Party& pt = w.layout.party(to);
  const LabeledOperator wc = w.canonical();

  SignalingResult result;
  if (pf.out) {
    LabeledOperator reduced = partial_trace(wc, {pf.out->name});
    LabeledOperator candidate =
        tensor((1.0 / static_cast<double>(pf.out->dim)) * reduced,
               LabeledOperator::identity({*pf.out}));
    result.structural_residual = max_abs_diff(wc, candidate);
  }
  result.structural_no_signaling = result.structural_residual <= 1e-9;

  SystemList from_in = pf.in ? SystemList{*pf.in} : SystemList{};
  SystemList from_out = pf.out ? SystemList{*pf.out} : SystemList{};

  for (int basis = 0; basis < 2; ++basis) {
    Instrument meas = basis_instrument(pt, basis);
    const Eigen::Index n_out = static_cast<Eigen::Index>(meas.outcomes.size());
    std::vector<Eigen::VectorXd> dists;
    for (int s = 0; s < samples; ++s) {
      ChoiOperator mf = random_cptp(from_in, from_out, 2, mix_seed(seed, s, basis));
      Eigen::VectorXd dist(n_out);
      for (Eigen::Index j = 0; j < n_out; ++j) {
        LabeledOperator m = mf.op;
        m = tensor(m, meas.outcomes[j].second.op);
        for (const auto& p : w.layout.parties) {
          if (p.name == from || p.name == to) continue;
          m = tensor(m, spectator_choi(p).op);
        }
        dist(j) = real_trace_product(wc, m);
      }
      dists.push_back(std::move(dist));
    }
    for (std::size_t a = 0; a < dists.size(); ++a)
      for (std::size_t b = a + 1; b < dists.size(); ++b)
        result.operational_gap =
            std::max(result.operational_gap, total_variation(dists[a], dists[b]));
  }
  return result;
}

NonseparabilityCertificate nonseparability_certificate(const ProcessMatrix& w,
                                                       double gap_threshold,
                                                       std::uint64_t seed) {
  const Party* a = nullptr;
  const Party* b = nullptr;
  const Party* c = nullptr;
  for (const auto& p : w.layout.parties) {
    if (p.in && p.out) {
      if (!a)
        a = &p;
      else if (!b)
        b = &p;
      else
        throw std::invalid_argument("certificate: more than two full parties");
    } else if (p.in && !p.out) {
      if (c) throw std::invalid_argument("certificate: more than one input-only party");
      c = &p;
    } else {
      throw std::invalid_argument("certificate: unsupported party shape");
    }
  }
  if (!a || !b || !c)
    throw std::invalid_argument("certificate: layout must be A, B full and C input-only");

  NonseparabilityCertificate cert;
  cert.rank = matrix_predicates(w.canonical(), 1e-10).rank;
  cert.gap_ab = signaling_test(w, a->name, b->name, 64, seed).operational_gap;
  cert.gap_ba = signaling_test(w, b->name, a->name, 64, seed + 1).operational_gap;
  cert.certified = cert.rank == 1 && cert.gap_ab >= gap_threshold &&
                   cert.gap_ba >= gap_threshold;
  return cert;
}

double fixed_order_form_check(const ProcessMatrix& w,
                              const std::vector<std::string>& order) {
  if (order.empty()) throw std::invalid_argument("fixed_order_form_check: empty order");
  const Party& last = w.layout.party(order.back());
  if (!last.out) return 0.0;
  const LabeledOperator wc = w.canonical();
  LabeledOperator reduced = partial_trace(wc, {last.out->name});
  LabeledOperator candidate =
      tensor((1.0 / static_cast<double>(last.out->dim)) * reduced,
             LabeledOperator::identity({*last.out}));
  return max_abs_diff(wc, candidate);
}

}  // namespace causalis
