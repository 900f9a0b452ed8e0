// Copyright 2026 The Retro Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "retro/report.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "retro/dynamics.hpp"
#include "retro/fsb.hpp"
#include "retro/inference.hpp"
#include "retro/linalg.hpp"
#include "retro/oracle.hpp"
#include "retro/spin_triad.hpp"

namespace retro {

namespace {

using ojson = nlohmann::ordered_json;

constexpr double kBayesLimit = 1e-10;
constexpr double kFsbLimit = 1e-8;
constexpr double kForwardBackwardLimit = 1e-10;

std::string format12(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double probability(double x, const std::string& what) {
  if (!std::isfinite(x) || x < -1e-12 || x > 1.0 + 1e-12) {
    throw Error(ErrorCode::NumericalInconsistency, what + " = " + std::to_string(x) + " outside [0, 1]");
  }
  return reported(std::clamp(x, 0.0, 1.0));
}

ojson header(const std::string& command, std::string_view digest) {
  ojson j;
  j["tool"] = "retro";
  j["version"] = kToolVersion;
  j["command"] = command;
  j["scenario_digest"] = digest;
  return j;
}

RunReport make_report(const std::string& command, std::string_view digest) {
  return RunReport{command, std::string(digest), header(command, digest), {}};
}

ojson complex_matrix_json(const ComplexMatrix& m) {
  ojson rows = ojson::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    ojson row = ojson::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({reported(m(r, c).real()), reported(m(r, c).imag())});
    rows.push_back(std::move(row));
  }
  return rows;
}

class TableWriter {
 public:
  TableWriter(RunReport& r, const std::vector<std::string>& preps, const std::vector<std::string>& outcomes)
      : r_(r), preps_(preps), outcomes_(outcomes) {}

  ojson matrix(const std::string& quantity, const RealMatrix& m, const RealMatrix* se = nullptr) {
    ojson rows = ojson::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      ojson row = ojson::array();
      for (Eigen::Index k = 0; k < m.cols(); ++k) {
        const double v = probability(m(i, k), quantity);
        row.push_back(v);
        r_.rows.push_back({quantity, prep(i), outcome(k), format12(v), se ? format12(reported((*se)(i, k))) : ""});
      }
      rows.push_back(std::move(row));
    }
    return rows;
  }

  ojson conditional(const std::string& quantity, const ConditionalTable& t,
                    const ConditionalTable* se = nullptr) {
    ojson rows = ojson::array();
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
      ojson row = ojson::array();
      for (Eigen::Index k = 0; k < t.cols(); ++k) {
        if (auto v = t.at(i, k)) {
          const double p = probability(*v, quantity);
          row.push_back(p);
          r_.rows.push_back({quantity, prep(i), outcome(k), format12(p),
                             se ? format12(reported(se->value(i, k))) : ""});
        } else {
          row.push_back(nullptr);
          r_.rows.push_back({quantity, prep(i), outcome(k), "undefined", ""});
        }
      }
      rows.push_back(std::move(row));
    }
    return rows;
  }

  ojson prep_vector(const std::string& quantity, const RealVector& v) {
    ojson out = ojson::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      const double p = probability(v(i), quantity);
      out.push_back(p);
      r_.rows.push_back({quantity, prep(i), "", format12(p), ""});
    }
    return out;
  }

  ojson outcome_vector(const std::string& quantity, const RealVector& v) {
    ojson out = ojson::array();
    for (Eigen::Index k = 0; k < v.size(); ++k) {
      const double p = probability(v(k), quantity);
      out.push_back(p);
      r_.rows.push_back({quantity, "", outcome(k), format12(p), ""});
    }
    return out;
  }

  double scalar(const std::string& quantity, double v, std::optional<double> se = std::nullopt) {
    const double x = reported(v);
    r_.rows.push_back({quantity, "", "", format12(x), se ? format12(reported(*se)) : ""});
    return x;
  }

  void cell(const std::string& quantity, Eigen::Index i, Eigen::Index k, double v) {
    r_.rows.push_back({quantity, i >= 0 ? prep(i) : "", k >= 0 ? outcome(k) : "", format12(reported(v)), ""});
  }

  std::string prep(Eigen::Index i) const { return preps_.at(std::size_t(i)); }
  std::string outcome(Eigen::Index k) const { return outcomes_.at(std::size_t(k)); }

 private:
  RunReport& r_;
  std::vector<std::string> preps_;
  std::vector<std::string> outcomes_;
};

ojson labels_json(const std::vector<std::string>& labels) { return ojson(labels); }

// Largest |estimate - analytic| / se over cells defined in both tables, with the
// band check from the oracle.
struct Comparison {
  double max_z = 0.0;
  bool agrees = true;
  bool undefined_match = true;
};

void compare(const ConditionalTable& analytic, const ConditionalTable& empirical,
             const ConditionalTable& se, const CountMatrix& counts, bool by_row, Comparison& out) {
  for (Eigen::Index i = 0; i < analytic.rows(); ++i) {
    for (Eigen::Index m = 0; m < analytic.cols(); ++m) {
      const auto a = analytic.at(i, m);
      const auto e = empirical.at(i, m);
      if (!a) {
        // An undefined analytic conditional must correspond to an empty count cell.
        out.undefined_match = out.undefined_match && counts(i, m) == 0;
        continue;
      }
      if (!e) continue;
      const std::uint64_t n = by_row ? std::uint64_t(counts.row(i).sum()) : std::uint64_t(counts.col(m).sum());
      const double s = se.value(i, m);
      if (s > 0.0) out.max_z = std::max(out.max_z, std::abs(*e - *a) / s);
      out.agrees = out.agrees && within_band(*a, *e, s, n);
    }
  }
}

std::optional<Ket> pure_ket(const ComplexMatrix& rho) {
  const ComplexMatrix unit = rho / rho.trace().real();
  if (std::abs(real_trace_product(unit, unit) - 1.0) > 1e-10) return std::nullopt;
  const auto s = eig_hermitian(unit);
  return Ket(s.eigenvectors.col(s.dim() - 1));
}

}  // namespace

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::NumericalInconsistency, "SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned k = 0; k < length; ++k) {
    out += kHex[digest[k] >> 4];
    out += kHex[digest[k] & 0xF];
  }
  return out;
}

double reported(double x) {
  if (!std::isfinite(x)) return x;
  return std::stod(format12(x));
}

RunReport infer_report(const ScenarioFile& s, std::string_view digest, const std::optional<McSettings>& mc) {
  RunReport r = make_report("infer", digest);
  TableWriter w(r, s.ensemble.labels(), s.povm.labels());
  const ProbabilityTable t = quantum_table(s.ensemble, s.povm);
  const double residual = bayes_residual(t);
  if (!(residual < kBayesLimit)) {
    throw Error(ErrorCode::NumericalInconsistency, "Bayes residual " + std::to_string(residual));
  }

  r.body["preparations"] = labels_json(s.ensemble.labels());
  r.body["outcomes"] = labels_json(s.povm.labels());
  r.body["is_unbiased"] = is_unbiased(s.ensemble);
  ojson analytic;
  analytic["joint"] = w.matrix("joint", t.joint);
  analytic["prep_marginals"] = w.prep_vector("prep_marginal", t.prep_marginals);
  analytic["outcome_marginals"] = w.outcome_vector("outcome_marginal", t.outcome_marginals);
  analytic["predictive"] = w.conditional("predictive", t.predictive);
  analytic["retrodictive"] = w.conditional("retrodictive", t.retrodictive);
  analytic["bayes_residual"] = w.scalar("bayes_residual", residual);
  r.body["analytic"] = std::move(analytic);

  if (s.postselection_bias) {
    ojson post;
    post["bias"] = s.postselection_bias->weights();
    post["predictive"] = w.matrix("postselected_predictive",
                                  biased_postselection_predictive(s.ensemble, s.povm, *s.postselection_bias));
    r.body["postselection"] = std::move(post);
  }

  if (mc) {
    const EmpiricalTable e = estimate(s.ensemble, s.povm, mc->samples, mc->seed);
    Comparison cmp;
    compare(t.predictive, e.predictive, e.predictive_se, e.counts, true, cmp);
    compare(t.retrodictive, e.retrodictive, e.retrodictive_se, e.counts, false, cmp);
    ojson emp;
    emp["samples"] = mc->samples;
    emp["seed"] = mc->seed;
    ojson counts = ojson::array();
    for (Eigen::Index i = 0; i < e.counts.rows(); ++i) {
      ojson row = ojson::array();
      for (Eigen::Index m = 0; m < e.counts.cols(); ++m) {
        row.push_back(e.counts(i, m));
        w.cell("count", i, m, double(e.counts(i, m)));
      }
      counts.push_back(std::move(row));
    }
    emp["counts"] = std::move(counts);
    emp["joint"] = w.matrix("empirical_joint", e.joint, &e.joint_se);
    emp["predictive"] = w.conditional("empirical_predictive", e.predictive, &e.predictive_se);
    ojson pse = ojson::array(), rse = ojson::array();
    for (Eigen::Index i = 0; i < e.counts.rows(); ++i) {
      ojson prow = ojson::array(), rrow = ojson::array();
      for (Eigen::Index m = 0; m < e.counts.cols(); ++m) {
        if (auto v = e.predictive_se.at(i, m)) prow.push_back(reported(*v)); else prow.push_back(nullptr);
        if (auto v = e.retrodictive_se.at(i, m)) rrow.push_back(reported(*v)); else rrow.push_back(nullptr);
      }
      pse.push_back(std::move(prow));
      rse.push_back(std::move(rrow));
    }
    emp["predictive_se"] = std::move(pse);
    emp["retrodictive"] = w.conditional("empirical_retrodictive", e.retrodictive, &e.retrodictive_se);
    emp["retrodictive_se"] = std::move(rse);
    emp["max_abs_z"] = w.scalar("max_abs_z", cmp.max_z);
    emp["within_5_se"] = cmp.agrees && cmp.undefined_match;
    r.body["empirical"] = std::move(emp);
  }
  return r;
}

RunReport spin_triad_report(double theta, double phi, const std::optional<McSettings>& mc) {
  std::ostringstream params;
  params << "spin-triad theta=" << format12(theta) << " phi=" << format12(phi);
  if (mc) params << " mc=" << mc->samples << " seed=" << mc->seed;
  RunReport r = make_report("spin-triad", "sha256:" + sha256_hex(params.str()));
  TableWriter w(r, {}, {});
  const SpinTriadScenario s(theta, phi);
  r.body["theta"] = theta;
  r.body["phi"] = phi;
  r.body["claire_alice_only"] = w.scalar("claire_alice_only", probability(claire_alice_only(s), "claire_alice_only"));
  r.body["claire_bob_only"] = w.scalar("claire_bob_only", probability(claire_bob_only(s), "claire_bob_only"));
  const double both = probability(claire_both(s), "claire_both");
  r.body["claire_both"] = w.scalar("claire_both", both);
  r.body["claire_both_sequential"] =
      w.scalar("claire_both_sequential", probability(claire_both_sequential(s), "claire_both_sequential"));
  if (mc) {
    const TriadEstimate e = estimate_triad(s, mc->samples, mc->seed);
    ojson emp;
    emp["samples"] = mc->samples;
    emp["seed"] = mc->seed;
    emp["claire_parallel"] = w.scalar("empirical_claire_alice_only", e.claire_parallel, e.claire_parallel_se);
    emp["claire_parallel_se"] = reported(e.claire_parallel_se);
    emp["bob_aligned_runs"] = e.bob_aligned;
    if (e.claire_given_bob) {
      emp["claire_both"] = w.scalar("empirical_claire_both", *e.claire_given_bob, e.claire_given_bob_se);
      emp["claire_both_se"] = reported(e.claire_given_bob_se);
      emp["within_5_se"] =
          within_band(both, *e.claire_given_bob, e.claire_given_bob_se, e.bob_aligned) &&
          within_band(claire_alice_only(s), e.claire_parallel, e.claire_parallel_se, e.samples);
    } else {
      emp["claire_both"] = nullptr;
      emp["within_5_se"] = false;
    }
    r.body["empirical"] = std::move(emp);
  }
  return r;
}

RunReport fsb_report(const ScenarioFile& s, std::string_view digest) {
  RunReport r = make_report("fsb", digest);
  TableWriter w(r, s.ensemble.labels(), s.povm.labels());
  const FsbDecomposition d = fsb_decompose(s.ensemble, s.povm);
  const ConditionalTable standard = retrodictive(s.ensemble, s.povm);

  r.body["preparations"] = labels_json(s.ensemble.labels());
  r.body["outcomes"] = labels_json(s.povm.labels());
  ojson states = ojson::array();
  for (std::size_t m = 0; m < d.retro_states.size(); ++m) {
    states.push_back({{"outcome", s.povm.labels()[m]},
                      {"fsb_state", complex_matrix_json(d.retro_states[m].matrix())},
                      {"standard_state", complex_matrix_json(retrodictive_state(s.povm, m).matrix())}});
  }
  r.body["retro_states"] = std::move(states);
  ojson effects = ojson::array();
  for (std::size_t i = 0; i < d.retro_povm.size(); ++i) {
    effects.push_back({{"preparation", s.ensemble.labels()[i]}, {"effect", complex_matrix_json(d.retro_povm[i])}});
  }
  r.body["retro_povm"] = std::move(effects);
  r.body["support_projector"] = complex_matrix_json(d.support_projector);

  RealMatrix fsb(Eigen::Index(s.ensemble.size()), Eigen::Index(s.povm.size()));
  double residual = 0.0;
  for (std::size_t i = 0; i < s.ensemble.size(); ++i) {
    for (std::size_t m = 0; m < s.povm.size(); ++m) {
      fsb(Eigen::Index(i), Eigen::Index(m)) = fsb_probability(d, i, m);
      if (auto v = standard.at(Eigen::Index(i), Eigen::Index(m))) {
        residual = std::max(residual, std::abs(fsb(Eigen::Index(i), Eigen::Index(m)) - *v));
      }
    }
  }
  if (!(residual <= kFsbLimit)) {
    throw Error(ErrorCode::NumericalInconsistency, "FSB probabilities deviate by " + std::to_string(residual));
  }
  r.body["fsb_retrodictive"] = w.matrix("fsb_retrodictive", fsb);
  r.body["standard_retrodictive"] = w.conditional("retrodictive", standard);
  r.body["equivalence_residual"] = w.scalar("equivalence_residual", residual);

  const OutcomeDependenceReport dep = outcome_dependence_report(s.ensemble, s.povm);
  ojson pairs = ojson::array();
  for (const auto& p : dep.pairs) {
    const std::string pair_label = s.povm.labels()[p.first] + "|" + s.povm.labels()[p.second];
    pairs.push_back({{"first", s.povm.labels()[p.first]},
                     {"second", s.povm.labels()[p.second]},
                     {"fsb_distance", reported(p.fsb)},
                     {"standard_distance", reported(p.standard)}});
    r.rows.push_back({"fsb_distance", "", pair_label, format12(reported(p.fsb)), ""});
    r.rows.push_back({"standard_distance", "", pair_label, format12(reported(p.standard)), ""});
  }
  ojson dep_json;
  dep_json["pairs"] = std::move(pairs);
  dep_json["max_fsb_distance"] = w.scalar("max_fsb_distance", dep.max_fsb);
  dep_json["max_standard_distance"] = w.scalar("max_standard_distance", dep.max_standard);
  r.body["outcome_dependence"] = std::move(dep_json);
  return r;
}

RunReport dynamics_report(const ScenarioFile& s, std::string_view digest, double t0, double t1,
                          std::size_t samples) {
  if (!s.hamiltonian) throw Error(ErrorCode::ValidationError, "hamiltonian: missing, required by dynamics");
  if (!(t1 >= t0)) throw Error(ErrorCode::TimeDirectionViolation, "t1 must not precede t0");
  RunReport r = make_report("dynamics", digest);
  TableWriter w(r, s.ensemble.labels(), s.povm.labels());
  const ComplexMatrix& h = *s.hamiltonian;

  r.body["t0"] = t0;
  r.body["t1"] = t1;
  r.body["samples"] = samples;
  ojson pairs = ojson::array();
  double max_deviation = 0.0, max_gap = 0.0;
  for (std::size_t i = 0; i < s.ensemble.size(); ++i) {
    const DensityOperator& rho = s.ensemble[i].state;
    for (std::size_t m = 0; m < s.povm.size(); ++m) {
      const ComplexMatrix& element = s.povm[m];
      const double element_trace = element.trace().real();
      if (element_trace <= tol::kZeroProbability) continue;
      const auto ket_i = pure_ket(rho.matrix());
      const auto ket_m = pure_ket(element);
      const bool pure = ket_i && ket_m;
      const double deviation = pure ? amplitude_invariance_deviation(*ket_i, *ket_m, h, t0, t1, samples)
                                    : overlap_invariance_deviation(rho, element, h, t0, t1, samples);
      // Forward: the prepared state runs to t1. Backward: the retrodictive
      // state runs from t1 back to t0 and meets the preparation there.
      const double forward = predictive_outcome_probability(rho, h, t0, t1, s.povm, m);
      const EvolvingState retro{retrodictive_state(element), t1, TimeDirection::Retrodictive};
      const double backward = element_trace * real_trace_product(evolve(retro, h, t0).matrix(), rho.matrix());
      max_deviation = std::max(max_deviation, deviation);
      max_gap = std::max(max_gap, std::abs(forward - backward));
      pairs.push_back({{"preparation", s.ensemble.labels()[i]},
                       {"outcome", s.povm.labels()[m]},
                       {"certificate", pure ? "amplitude" : "overlap"},
                       {"invariance_deviation", reported(deviation)},
                       {"forward_probability", probability(forward, "forward probability")},
                       {"backward_probability", probability(backward, "backward probability")}});
      w.cell("invariance_deviation", Eigen::Index(i), Eigen::Index(m), deviation);
      w.cell("forward_probability", Eigen::Index(i), Eigen::Index(m), forward);
      w.cell("backward_probability", Eigen::Index(i), Eigen::Index(m), backward);
    }
  }
  if (!(max_gap <= kForwardBackwardLimit)) {
    throw Error(ErrorCode::NumericalInconsistency, "forward/backward gap " + std::to_string(max_gap));
  }
  r.body["pairs"] = std::move(pairs);
  r.body["max_invariance_deviation"] = w.scalar("max_invariance_deviation", max_deviation);
  r.body["max_forward_backward_gap"] = w.scalar("max_forward_backward_gap", max_gap);
  return r;
}

RunReport validate_report(const ScenarioFile& s, std::string_view digest) {
  RunReport r = make_report("validate", digest);
  TableWriter w(r, s.ensemble.labels(), s.povm.labels());
  r.body["valid"] = true;
  r.body["dimension"] = s.dimension;
  r.body["preparations"] = labels_json(s.ensemble.labels());
  r.body["outcomes"] = labels_json(s.povm.labels());
  r.body["is_unbiased"] = is_unbiased(s.ensemble);
  r.body["povm_completeness_defect"] = w.scalar("povm_completeness_defect", s.povm.completeness_defect());
  r.body["has_hamiltonian"] = s.hamiltonian.has_value();
  r.body["has_postselection_bias"] = s.postselection_bias.has_value();
  r.rows.push_back({"valid", "", "", "true", ""});
  return r;
}

std::string render(const RunReport& r, Format f) {
  if (f == Format::Json) return r.body.dump(2) + "\n";
  std::string out = "quantity,preparation,outcome,value,std_error\n";
  auto quote = [](const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string q = "\"";
    for (char c : field) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  };
  for (const auto& row : r.rows) {
    out += quote(row.quantity) + "," + quote(row.preparation) + "," + quote(row.outcome) + "," +
           quote(row.value) + "," + quote(row.std_error) + "\n";
  }
  return out;
}

}  // namespace retro
