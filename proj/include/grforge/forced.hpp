#pragma once

#include "grforge/module.hpp"

namespace grforge {

// N cap N'_K(lambda), where N'_K(lambda) is the A_K-submodule of N_K generated
// by the mu-weight vectors with mu > lambda.
struct NPrime {
  LatticeRep lattice;
  SpaceK span;
};

NPrime n_prime(const StructureAlgebra& A, const ModO& N, const std::string& lambda);

struct PrimitivityReport {
  Vec<Scalar> v;
  std::string lambda;
  int grade = -1;  // largest i with v in rad~^i N
  bool primitive = false;
  bool strongly_primitive = false;
  bool pure_primitive = false;  // O v + N cap N'_K(lambda) is pure
  bool pure_strong = false;     // O v + N cap (rad^{i+1} N_K + N'_K(lambda)) is pure
  bool top_weight = true;       // lambda maximal among weights of N_K / N'_K(lambda)
};

// Cached filtration and N' data for repeated primitivity tests on one module.
class PrimitivityContext {
 public:
  PrimitivityContext(const StructureAlgebra& A, const ModO& N);
  PrimitivityReport test(const Vec<Scalar>& v, const std::string& lambda) const;
  const NPrime& nprime(const std::string& lambda) const;
  const std::vector<LatticeRep>& filtration() const { return filtration_; }
  // lambda-weight lattice N_lambda
  LatticeRep weight_lattice(const std::string& lambda) const;

 private:
  const StructureAlgebra* A_;
  const ModO* N_;
  std::vector<LatticeRep> filtration_;
  mutable std::map<std::string, NPrime> nprime_;
};

PrimitivityReport primitivity_test(const StructureAlgebra& A, const ModO& N, const Vec<Scalar>& v,
                                   const std::string& lambda);

struct GrBModule {
  LatticeRep lattice;  // inside gr N, on the gr basis
  std::vector<std::pair<std::string, int>> strata;  // (lambda, i) contributing
  std::vector<int> grade_ranks;
  std::string acting;  // name of the acting algebra
  bool full() const { return lattice.rank() == lattice.n; }
};

// gr^b N for the algebra A acting on N, with GM = gr_module(A, G, N).
GrBModule gr_b(const StructureAlgebra& A, const GradedModule& GM, const ModO& N);

// The truncated algebra A_Gamma together with N viewed as an A_Gamma-module;
// nullopt unless A e_nu A kills N for every nu outside Gamma.
struct TruncatedAction {
  StructureAlgebra alg;
  ModO mod;
};
std::optional<TruncatedAction> truncated_action(const StructureAlgebra& A, const ModO& N,
                                                const std::vector<std::string>& gamma);

struct Lemma49Report {
  bool refused = false;
  std::string reason;
  bool simple_head = false;
  bool grb_equals_gr = false;
  bool biconditional = false;
};

Lemma49Report lemma_4_9_check(const StructureAlgebra& A, const std::string& lambda);

struct GradedSection {
  std::string label;
  int shift = 0;
  int multiplicity = 0;
  bool pure = true;
  bool isomorphic = true;
  bool radical_compatible = true;  // rad^s R_K = R_K cap rad^{m+s} N_K for all s
  bool standard = false;
  bool sandwich = false;           // gr^b Delta(m) (x) M inside the section inside gr Delta(m) (x) M
  std::vector<int> grade_ranks;    // of gr^# R, indexed by the grade in gr N
  // conditions (1)-(3) for R inside the current module, and the resulting
  // surjectivity of gr^b N -> gr^b N/R
  bool cond1 = false, cond2 = false, cond3 = false;
  bool grb_surjects = false;
  std::string problem;
};

struct GradedFiltration {
  bool ok = false;
  bool k_level_ok = true;
  bool ordering_ok = true;
  bool matches_delta_filtration = false;
  std::vector<GradedSection> sections;  // bottom to top
  std::string failure;
  // (3) holding while (2) fails at some step
  int cond3_tested = 0;
  int cond3_without_cond2 = 0;
  std::map<std::string, int> multiset() const {
    std::map<std::string, int> m;
    for (const auto& s : sections) m[s.label] += s.multiplicity;
    return m;
  }
};

GradedFiltration gr_delta_filtration(const StructureAlgebra& A, const ModO& N,
                                     const std::vector<std::string>* order = nullptr);

}  // namespace grforge
