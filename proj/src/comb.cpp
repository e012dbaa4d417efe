// Copyright 2026 The causalis developers.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#include "causalis/comb.hpp"

#include <stdexcept>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "causalis/predicates.hpp"
#include "causalis/qswitch.hpp"
#include "causalis/random.hpp"

namespace causalis {

namespace {

struct CutDims {
  Eigen::Index fo, so, fi, si;
};

struct ReducedChoi {
  Eigen::MatrixXcd c;  // on (first_in, first_out), index fi * fo + fo
  double probe_gap = 0.0;
};

/// Choi (untransposed) of the first-tooth reduced channel, with the
/// second-slot input averaged over the maximally mixed state, plus the
/// largest deviation over pure probe states.
ReducedChoi reduced_first_tooth_choi(const Eigen::MatrixXcd& gm, const CutDims& d,
                                     int probes, std::uint64_t seed) {
  auto choi_for_columns = [&](const Eigen::MatrixXcd& a) {
    // a has shape (fo*so) x fi for a fixed second-slot input vector.
    Eigen::MatrixXcd t(d.fi * d.fo, d.so);
    for (Eigen::Index fi = 0; fi < d.fi; ++fi)
      for (Eigen::Index fo = 0; fo < d.fo; ++fo)
        for (Eigen::Index so = 0; so < d.so; ++so)
          t(fi * d.fo + fo, so) = a(fo * d.so + so, fi);
    return Eigen::MatrixXcd(t * t.adjoint());
  };
  auto slice = [&](const Eigen::VectorXcd& probe) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(d.fo * d.so, d.fi);
    for (Eigen::Index fi = 0; fi < d.fi; ++fi)
      for (Eigen::Index si = 0; si < d.si; ++si)
        a.col(fi) += probe(si) * gm.col(fi * d.si + si);
    return a;
  };
  ReducedChoi out;
  out.c = Eigen::MatrixXcd::Zero(d.fi * d.fo, d.fi * d.fo);
  for (Eigen::Index si = 0; si < d.si; ++si) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(d.si);
    e(si) = 1.0;
    out.c += choi_for_columns(slice(e));
  }
  out.c /= static_cast<double>(d.si);
  for (int p = 0; p < probes; ++p) {
    Eigen::VectorXcd probe = random_pure_state(d.si, seed + p);
    out.probe_gap = std::max(out.probe_gap,
                             max_abs(choi_for_columns(slice(probe)) - out.c));
  }
  return out;
}

CutDims cut_dims(const LabeledOperator& g, const CombCut& cut) {
  CutDims d;
  d.fo = total_dim(select(g.rows(), cut.first_out));
  d.so = total_dim(select(g.rows(), cut.second_out));
  d.fi = total_dim(select(g.cols(), cut.first_in));
  d.si = total_dim(select(g.cols(), cut.second_in));
  return d;
}

LabeledOperator aligned_to_cut(const LabeledOperator& g, const CombCut& cut) {
  std::vector<std::string> rows = cut.first_out;
  rows.insert(rows.end(), cut.second_out.begin(), cut.second_out.end());
  std::vector<std::string> cols = cut.first_in;
  cols.insert(cols.end(), cut.second_in.begin(), cut.second_in.end());
  if (rows.size() != g.rows().size() || cols.size() != g.cols().size())
    throw std::invalid_argument("comb cut does not cover the operator's systems");
  return permute_systems(g, rows, cols);
}

}  // namespace

FourPartyProcessChannel switch_process_channel(Eigen::Index d) {
  SystemId q{"Q", 2}, qp{"Q'", 2}, s{"S", d}, sp{"S'", d};
  SystemId a_i{"A_I", d}, a_o{"A_O", d}, b_i{"B_I", d}, b_o{"B_O", d};
  Eigen::MatrixXcd p0 = Eigen::MatrixXcd::Zero(2, 2);
  p0(0, 0) = 1.0;
  Eigen::MatrixXcd p1 = Eigen::MatrixXcd::Zero(2, 2);
  p1(1, 1) = 1.0;
  LabeledOperator term0 =
      tensor(tensor(LabeledOperator({qp}, {q}, p0), LabeledOperator::wire(s, a_i)),
             tensor(LabeledOperator::wire(a_o, b_i), LabeledOperator::wire(b_o, sp)));
  LabeledOperator term1 =
      tensor(tensor(LabeledOperator({qp}, {q}, p1), LabeledOperator::wire(s, b_i)),
             tensor(LabeledOperator::wire(b_o, a_i), LabeledOperator::wire(a_o, sp)));
  std::vector<std::string> rows{"Q'", "S'", "A_I", "B_I"};
  std::vector<std::string> cols{"Q", "S", "A_O", "B_O"};
  LabeledOperator v = permute_systems(term0, rows, cols) + permute_systems(term1, rows, cols);
  v = merge_systems(v, {"Q'", "S'"}, "C_I");
  v = merge_systems(v, {"Q", "S"}, "D_O");
  v = permute_systems(v, {"A_I", "B_I", "C_I"}, {"D_O", "A_O", "B_O"});
  return FourPartyProcessChannel{std::move(v)};
}

ProcessMatrix process_of(const FourPartyProcessChannel& channel) {
  ChoiOperator choi = choi_from_map({channel.v});
  PartyLayout layout;
  layout.parties = {
      Party{"D", std::nullopt, find_system(channel.v.cols(), "D_O")},
      Party{"A", find_system(channel.v.rows(), "A_I"), find_system(channel.v.cols(), "A_O")},
      Party{"B", find_system(channel.v.rows(), "B_I"), find_system(channel.v.cols(), "B_O")},
      Party{"C", find_system(channel.v.rows(), "C_I"), std::nullopt}};
  return process_from_channel(choi, layout);
}

FourPartyProcessChannel channel_of_process(const ProcessMatrix& w) {
  const Party* first = nullptr;
  const Party* last = nullptr;
  std::vector<const Party*> slots;
  for (const auto& p : w.layout.parties) {
    if (p.out && !p.in)
      first = &p;
    else if (p.in && !p.out)
      last = &p;
    else if (p.in && p.out)
      slots.push_back(&p);
  }
  if (!first || !last || slots.size() != 2)
    throw std::invalid_argument(
        "channel_of_process: need one output-only party, one input-only party, "
        "and two full slots");

  ChoiOperator dual = process_channel_duality(w);
  HermitianEig eig = sorted_hermitian_eig(dual.op.matrix());
  if (eig.values.size() > 1 && eig.values(1) > 1e-9 * std::abs(eig.values(0)))
    throw std::invalid_argument("channel_of_process: process is not unitary (Choi rank > 1)");
  const Eigen::Index din = total_dim(dual.in_systems);
  const Eigen::Index dout = total_dim(dual.out_systems);
  Eigen::VectorXcd v = std::sqrt(std::max(eig.values(0), 0.0)) * eig.vectors.col(0);
  Eigen::MatrixXcd k(dout, din);
  for (Eigen::Index i = 0; i < din; ++i)
    for (Eigen::Index o = 0; o < dout; ++o) k(o, i) = std::conj(v(i * dout + o));
  if ((k.adjoint() * k - Eigen::MatrixXcd::Identity(din, din)).cwiseAbs().maxCoeff() > 1e-8)
    throw std::invalid_argument("channel_of_process: dual channel is not an isometry");

  LabeledOperator op(dual.out_systems, dual.in_systems, std::move(k));
  op = op.relabeled({{first->out->name, "D_O"},
                     {slots[0]->in->name, "A_I"},
                     {slots[0]->out->name, "A_O"},
                     {slots[1]->in->name, "B_I"},
                     {slots[1]->out->name, "B_O"},
                     {last->in->name, "C_I"}});
  op = permute_systems(op, {"A_I", "B_I", "C_I"}, {"D_O", "A_O", "B_O"});
  return FourPartyProcessChannel{std::move(op)};
}

LabeledOperator compose_with_alice(const FourPartyProcessChannel& channel,
                                   const LabeledOperator& u_a) {
  LabeledOperator looped = compose(channel.v, u_a);
  return partial_trace(looped, {"A_I"});
}

OneComb comb_factorize(const LabeledOperator& g, const CombCut& cut) {
  LabeledOperator gp = aligned_to_cut(g, cut);
  CutDims d = cut_dims(gp, cut);
  const Eigen::MatrixXcd& gm = gp.matrix();

  ReducedChoi reduced = reduced_first_tooth_choi(gm, d, 10, 0x5eedULL);
  if (reduced.probe_gap > 1e-9)
    throw std::runtime_error(
        "comb_factorize: first tooth depends on the second-slot input (gap " +
        std::to_string(reduced.probe_gap) + "); wrong cut ordering");

  HermitianEig eig = sorted_hermitian_eig(reduced.c);
  const double lmax = std::max(eig.values(0), 1e-300);
  Eigen::Index r = 0;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k)
    if (eig.values(k) > 1e-9 * lmax) ++r;

  Eigen::MatrixXcd v1 = Eigen::MatrixXcd::Zero(d.fo * r, d.fi);
  for (Eigen::Index k = 0; k < r; ++k) {
    double scale = std::sqrt(eig.values(k));
    for (Eigen::Index fo = 0; fo < d.fo; ++fo)
      for (Eigen::Index fi = 0; fi < d.fi; ++fi)
        v1(fo * r + k, fi) = scale * eig.vectors(fi * d.fo + fo, k);
  }

  // G[(fo,so),(fi,si)] = sum_x V1[(fo,x),fi] V2[so,(x,si)]; solve per si.
  Eigen::MatrixXcd kmat(d.fo * d.fi, r);
  for (Eigen::Index fo = 0; fo < d.fo; ++fo)
    for (Eigen::Index fi = 0; fi < d.fi; ++fi)
      for (Eigen::Index x = 0; x < r; ++x)
        kmat(fo * d.fi + fi, x) = v1(fo * r + x, fi);
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(kmat);
  Eigen::MatrixXcd v2 = Eigen::MatrixXcd::Zero(d.so, r * d.si);
  for (Eigen::Index si = 0; si < d.si; ++si) {
    Eigen::MatrixXcd b(d.fo * d.fi, d.so);
    for (Eigen::Index fo = 0; fo < d.fo; ++fo)
      for (Eigen::Index fi = 0; fi < d.fi; ++fi)
        for (Eigen::Index so = 0; so < d.so; ++so)
          b(fo * d.fi + fi, so) = gm(fo * d.so + so, fi * d.si + si);
    Eigen::MatrixXcd y = cod.solve(b);  // r x so
    for (Eigen::Index x = 0; x < r; ++x)
      for (Eigen::Index so = 0; so < d.so; ++so) v2(so, x * d.si + si) = y(x, so);
  }

  double residual = 0.0;
  for (Eigen::Index fo = 0; fo < d.fo; ++fo)
    for (Eigen::Index so = 0; so < d.so; ++so)
      for (Eigen::Index fi = 0; fi < d.fi; ++fi)
        for (Eigen::Index si = 0; si < d.si; ++si) {
          Complex acc = 0.0;
          for (Eigen::Index x = 0; x < r; ++x)
            acc += v1(fo * r + x, fi) * v2(so, x * d.si + si);
          residual = std::max(residual,
                              std::abs(acc - gm(fo * d.so + so, fi * d.si + si)));
        }

  SystemId x{"X", r};
  OneComb comb;
  comb.v1 = LabeledOperator(concat(select(gp.rows(), cut.first_out), {x}),
                            select(gp.cols(), cut.first_in), std::move(v1));
  comb.v2 = LabeledOperator(select(gp.rows(), cut.second_out),
                            concat({x}, select(gp.cols(), cut.second_in)), std::move(v2));
  comb.x = x;
  comb.reconstruction_residual = residual;
  comb.probe_gap = reduced.probe_gap;
  return comb;
}

SubsystemEncoderPair extract_delocalized_subsystems(const FourPartyProcessChannel& channel) {
  CombCut cut{{"D_O", "B_O"}, {"A_I"}, {"A_O"}, {"B_I", "C_I"}};
  OneComb comb = comb_factorize(channel.v, cut);
  const Eigen::Index d_ai = find_system(channel.v.rows(), "A_I").dim;
  const Eigen::Index d_ao = find_system(channel.v.cols(), "A_O").dim;
  SubsystemEncoderPair enc;
  enc.a_tilde_in = SystemId{"At_I", d_ai};
  enc.a_tilde_out = SystemId{"At_O", d_ao};
  enc.a_bar = SystemId{"Abar", comb.x.dim};
  enc.w_in = comb.v1.adjoint().relabeled({{"A_I", "At_I"}, {"X", "Abar"}});
  LabeledOperator w_out = comb.v2.relabeled({{"A_O", "At_O"}, {"X", "Abar"}});
  enc.w_out = permute_systems(w_out, names_of(w_out.rows()), {"At_O", "Abar"});
  return enc;
}

double verify_theorem_factorization(const FourPartyProcessChannel& channel,
                                    const SubsystemEncoderPair& encoders,
                                    int samples, Eigen::Index anc_dim,
                                    std::uint64_t seed) {
  const Eigen::Index d_ai = encoders.a_tilde_in.dim;
  const Eigen::Index d_ao = encoders.a_tilde_out.dim;
  if (anc_dim * d_ai != anc_dim * d_ao)
    throw std::invalid_argument("verify_theorem_factorization: slot dims differ");
  SystemId ai{"a_I", anc_dim}, ao{"a_O", anc_dim};
  SystemId chan_in = find_system(channel.v.rows(), "A_I");
  SystemId chan_out = find_system(channel.v.cols(), "A_O");

  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    Eigen::MatrixXcd u =
        k == 0 ? Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(anc_dim * d_ai, anc_dim * d_ai))
               : random_unitary_matrix(anc_dim * d_ai, seed + k);
    LabeledOperator u_chan({ao, chan_out}, {ai, chan_in}, u);
    LabeledOperator u_enc({ao, encoders.a_tilde_out}, {ai, encoders.a_tilde_in}, u);

    LabeledOperator g = compose_with_alice(channel, u_chan);
    LabeledOperator inner =
        compose(tensor(u_enc, LabeledOperator::identity({encoders.a_bar})),
                encoders.w_in.adjoint());
    LabeledOperator candidate = compose(encoders.w_out, inner);
    worst = std::max(worst, max_abs_diff(g, candidate));
  }
  return worst;
}

Theorem2Report check_theorem2_form(const FourPartyProcessChannel& channel) {
  CombCut cut{{"D_O", "B_O"}, {"A_I"}, {"A_O"}, {"B_I", "C_I"}};
  LabeledOperator gp = aligned_to_cut(channel.v, cut);
  CutDims d = cut_dims(gp, cut);
  ReducedChoi reduced = reduced_first_tooth_choi(gp.matrix(), d, 10, 0x5eedULL);
  if (reduced.probe_gap > 1e-9)
    throw std::runtime_error(
        "check_theorem2_form: marginal to A_I depends on Alice's output state");
  Theorem2Report report;
  report.probe_gap = reduced.probe_gap;
  report.choi_rank = numerical_rank(reduced.c, 1e-9);
  report.satisfies = d.fo * report.choi_rank == d.fi;
  report.k_dim = d.so - d.si * report.choi_rank;
  return report;
}

double span_projector_distance(const std::vector<Eigen::MatrixXcd>& a,
                               const std::vector<Eigen::MatrixXcd>& b) {
  auto projector = [](const std::vector<Eigen::MatrixXcd>& ops) {
    if (ops.empty()) throw std::invalid_argument("span of empty operator list");
    Eigen::Index n = ops.front().size();
    Eigen::MatrixXcd m(n, ops.size());
    for (std::size_t k = 0; k < ops.size(); ++k)
      m.col(k) = Eigen::Map<const Eigen::VectorXcd>(ops[k].data(), n);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > 1e-9 * sv(0)) ++r;
    Eigen::MatrixXcd u = svd.matrixU().leftCols(r);
    return Eigen::MatrixXcd(u * u.adjoint());
  };
  return max_abs(projector(a) - projector(b));
}

}  // namespace causalis
