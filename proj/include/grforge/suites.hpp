#pragma once

#include "grforge/forced.hpp"
#include "grforge/qha.hpp"
#include "grforge/tight.hpp"

namespace grforge {

// Nonempty poset ideals of Lambda, smallest first; `proper` drops Lambda itself.
std::vector<std::vector<std::string>> poset_ideals(const WeightDatum& W, bool proper = false);

// A_Gamma = A / A e A, e the sum of e_nu for nu in Lambda outside Gamma.
std::optional<StructureAlgebra> truncated_structure(const StructureAlgebra& A, const std::vector<std::string>& gamma);

// Each e_lambda, lambda in Lambda, is split as f_lambda + (e_lambda - f_lambda)
// with f_lambda primitive and f_lambda L(lambda) != 0; the second part joins X
// as "lambda~". Returns B unchanged when every e_lambda is primitive; throws
// std::logic_error when Delta(lambda)_lambda is not a line.
template <class D>
WAlg<D> primitive_refinement(const WAlg<D>& B);

// ---------------------------------------------------------------- graded field algebras

template <class D>
struct GradedFieldAlgebra {
  using E = typename D::Elem;
  WAlg<D> alg;  // on the gr basis; weights are the degree 0 symbols
  std::vector<int> grade;
  Mat<E> lifts;  // rows in the coordinates of B
  Mat<E> lifts_inv;
  std::vector<int> grade_ranks;
  Span<D> radical;  // rad B, in the coordinates of B
};

template <class D>
GradedFieldAlgebra<D> gr_field(const WAlg<D>& B);

template <class D>
struct GradedFieldModule {
  using E = typename D::Elem;
  ModuleT<D> mod;
  std::vector<int> grade;
  Mat<E> lifts;
  Mat<E> lifts_inv;
  std::vector<int> grade_ranks;
  Vec<E> symbol(const Vec<E>& v, int s) const;
};

template <class D>
GradedFieldModule<D> gr_field_module(const WAlg<D>& B, const GradedFieldAlgebra<D>& G, const ModuleT<D>& M);

// ---------------------------------------------------------------- shared comparisons

// rank of e_nu M_s for every nu in X and grade s
template <class D>
std::map<std::string, std::vector<int>> weight_grade_ranks(const WAlg<D>& A, const ModuleT<D>& M,
                                                           const std::vector<int>& grade);

// M is isomorphic to Delta(lambda) via x e_lambda -> x u, u spanning M_lambda.
template <class D>
bool is_standard_iso(const WAlg<D>& A, const StandardData<D>& S, const ModuleT<D>& M, std::string* why = nullptr);

// Standard module of a graded algebra against a graded module, gradewise.
struct StandardComparison {
  std::string label;
  bool isomorphic = false;
  bool ranks_equal = false;
  std::map<std::string, std::vector<int>> expected;  // of the given graded module
  std::map<std::string, std::vector<int>> found;     // of the standard module of the graded algebra
  std::string problem;
  bool ok() const { return isomorphic && ranks_equal; }
};

template <class D>
StandardComparison compare_standard(const WAlg<D>& grA, const std::vector<int>& alg_grade, const std::string& lambda,
                                    const ModuleT<D>& M, const std::vector<int>& grade);

// gr(N_Gamma) against (gr N)_Gamma through the map induced by N -> N_Gamma.
struct TruncationCheck {
  bool hypotheses = false;
  std::string hypothesis_problem;
  bool equivariant = false, surjective = false, kernel_matches = false, ranks_equal = false;
  std::vector<int> lhs_grade_ranks, rhs_grade_ranks;  // gr(N_Gamma), (gr N)_Gamma
  std::map<std::string, std::vector<int>> lhs_ranks, rhs_ranks;
  std::string problem;
  bool isomorphic() const { return equivariant && surjective && kernel_matches; }
  bool ok() const { return hypotheses && isomorphic() && ranks_equal; }
};

// ---------------------------------------------------------------- suites

struct Thm417Report {
  bool qha = false;              // A split QHA over O
  bool gr_K_qha = false;         // gr A_K QHA over K with poset Lambda
  bool gr_K_standard = false;    // with standard modules gr Delta_K(lambda)
  bool heads_simple = false;     // every gr Delta(lambda) has a simple head
  bool lambda_standard = false;  // reported, not a hypothesis
  bool conclusion_qha = false;   // certify_qha(gr A)
  bool conclusion_standard = false;
  bool falsified = false;  // hypotheses hold and the conclusion fails
  std::vector<StandardComparison> comparisons;
  std::vector<std::vector<std::string>> refined_orders;  // total orders certifying gr A_K when Lambda fails
  std::vector<std::string> notes;
  bool hypotheses() const { return qha && gr_K_qha && gr_K_standard && heads_simple; }
  bool passed() const { return hypotheses() && conclusion_qha && conclusion_standard; }
};

Thm417Report thm_4_17_suite(const StructureAlgebra& A);

TruncationCheck cor_4_16_check(const StructureAlgebra& A, const ModO& N, const std::vector<std::string>& gamma);

struct PimCheck {
  std::string label;
  bool surjective = false;  // x e_gamma -> x [e_gamma] onto gr(P(gamma)_Gamma)
  bool dims_equal = false;  // against (gr B)_Gamma e_gamma
  bool head_simple = false;
  bool ok() const { return surjective && dims_equal && head_simple; }
};

struct FieldCaseReport {
  bool qha = false;
  bool gr_qha = false;
  std::vector<std::string> gamma;
  std::vector<PimCheck> pims;
  std::vector<StandardComparison> standard;
  std::vector<TruncationCheck> modules;  // one per module with standard filtrations
  int skipped_modules = 0;               // no standard filtration on M or gr M
  std::vector<std::string> notes;
  bool hypotheses() const { return qha && gr_qha; }
  bool ok() const;
};

// Default modules: the regular module and every P(lambda) and Delta(lambda).
template <class D>
FieldCaseReport field_case_suite(const WAlg<D>& B, const std::vector<std::string>& gamma,
                                 const std::vector<ModuleT<D>>* modules = nullptr);

struct Thm53Inputs {
  Mat<Scalar> Pdagger;
  Vec<Scalar> v;
  Mat<Scalar> P0;
};

// P-dagger = A e_lambda, v = e_lambda, P0 = a_0 e_lambda.
Thm53Inputs default_thm_5_3_inputs(const StructureAlgebra& A, const GradedSubalgebraDatum& a, const std::string& lambda);

struct Thm55Report {
  std::vector<std::string> gamma;
  std::map<std::string, Thm53Report> pipelines;
  bool hypotheses = false;
  bool qha = false;
  std::vector<StandardComparison> comparisons;
  bool falsified = false;
  std::string problem;
  bool passed() const {
    return hypotheses && qha && std::all_of(comparisons.begin(), comparisons.end(), [](const auto& c) { return c.ok(); });
  }
};

Thm55Report thm_5_5_check(const StructureAlgebra& A, const GradedSubalgebraDatum& a, const std::vector<std::string>& gamma,
                          const std::map<std::string, Thm53Inputs>* inputs = nullptr);

}  // namespace grforge
