#include "grforge/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "grforge/cyclo.hpp"
#include "grforge/fixtures.hpp"
#include "grforge/io.hpp"
#include "grforge/quantum.hpp"
#include "grforge/sampling.hpp"
#include "grforge/suites.hpp"

namespace grforge {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Options {
  std::string report_dir = ".";
  bool quiet = false;
  // gen
  std::string fixture;
  int p = 3, n = 2, d = 3, copies = 2, count = 1;
  uint64_t seed = 0;
  bool seed_given = false;
  std::string ring = "rational";
  std::string input, nu, out;
  // certify / gr / verify / filtration
  std::string algebra_file, module_file, order;
  std::string suite;
  std::vector<std::string> inputs;
  std::string gamma, lambda, type = "A1", field = "both";
  int trunc_order = 8, trials = 0, max_shift = 2;
};

struct Ctx {
  std::ostream& out;
  std::ostream& err;
  const Options& o;
};

std::string braces(const std::vector<std::string>& xs) {
  std::string s = "{";
  for (size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + xs[i];
  return s + "}";
}

std::string rank_map(const std::map<std::string, int>& m) {
  std::string s = "{";
  bool first = true;
  for (const auto& [k, v] : m) {
    s += (first ? "" : ", ") + k + ": " + std::to_string(v);
    first = false;
  }
  return s + "}";
}

std::string ints(const std::vector<int>& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + ")";
}

std::string sanitize(const std::string& s) {
  std::string r;
  for (char c : s) r += (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.') ? c : '_';
  return r;
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << content;
}

LoadedAlgebra load_algebra_file(const std::string& path) {
  const json doc = read_json_file(path);
  try {
    return load_algebra(doc);
  } catch (const InputError& e) {
    throw InputError(path + ":" + e.where, std::string(e.what()).substr(e.where.size() + 2));
  }
}

template <class F>
auto in_file(const std::string& path, F&& f) {
  try {
    return f(read_json_file(path));
  } catch (const InputError& e) {
    if (e.where.rfind(path, 0) == 0) throw;
    throw InputError(path + ":" + e.where, std::string(e.what()).substr(e.where.size() + 2));
  }
}

const WeightDatum& need_weights(const LoadedAlgebra& L) {
  if (!L.alg.weights) throw InputError("/weights", "the algebra carries no weight datum");
  return *L.alg.weights;
}

std::string input_hash(const std::vector<std::string>& hashes, const std::string& params) {
  std::string s;
  for (const auto& h : hashes) s += h + "\n";
  return sha256_hex(s + params);
}

std::vector<std::vector<std::string>> ideals_for(const WeightDatum& W, const std::string& gamma) {
  if (gamma.empty()) return poset_ideals(W, true);
  std::vector<std::string> g;
  std::stringstream ss(gamma);
  std::string part;
  while (std::getline(ss, part, ',')) g.push_back(part);
  for (const auto& l : g)
    if (!W.in_lambda(l)) throw InputError("--gamma", "unknown weight " + l);
  if (!W.is_ideal(g)) throw InputError("--gamma", braces(g) + " is not a poset ideal");
  return {g};
}

int emit(const Ctx& c, SuiteReport& R, Clock::time_point t0) {
  R.wall_clock_ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
  if (!c.o.quiet) c.out << R.text();
  const fs::path path = fs::path(c.o.report_dir) / (sanitize(R.suite + "-" + R.fixture) + ".report.json");
  write_file(path, serialize(R.to_json()));
  return R.passed() ? 0 : 1;
}

// ---------------------------------------------------------------- gen

struct Generated {
  StructureAlgebra alg;
  json metadata = json::object();
  std::optional<GradedSubalgebraDatum> grading;
  std::string grading_name;
  std::vector<StructureAlgebra> extra;  // further algebras split off the fixture
};

void require(bool ok, const std::string& opt, const std::string& msg) {
  if (!ok) throw InputError(opt, msg);
}

Generated generate(const Options& o) {
  Generated g;
  json params = json::object();
  const std::string& f = o.fixture;
  auto ring = [&]() {
    require(is_odd_prime(o.p), "--p", "p must be an odd prime");
    require(o.ring == "rational" || o.ring == "cyclotomic", "--ring", "expected rational or cyclotomic");
    params["p"] = o.p;
    params["ring"] = o.ring;
    return o.ring == "rational" ? rational_spec(o.p) : cyclotomic_spec(o.p);
  };
  auto suffix = [&](const RingSpec& rs) {
    if (!rs.cyclotomic() && rs.p == 3) return std::string();
    return std::string(rs.cyclotomic() ? "_c" : "_p") + std::to_string(rs.p);
  };
  if (f == "z5" || f == "z5s") {
    const RingSpec rs = ring();
    g.alg = f == "z5" ? zigzag5(rs) : zigzag5(rs, uniformizer(rs));
    g.alg.name = f + suffix(rs);
    if (f == "z5") {
      Mat<Scalar> I;
      for (int i = 0; i < 5; ++i) I.push_back(g.alg.alg.basis(i));
      g.grading = GradedSubalgebraDatum::from_basis(I, {0, 0, 1, 1, 2});
      g.grading_name = "path_grading";
    }
  } else if (f == "qschur") {
    require(o.n == 2, "--n", "only n = 2 is supported");
    require(o.d >= 1 && o.d <= 6, "--d", "d must lie in 1..6");
    require(o.p == 3 || o.p == 5, "--p", "p must be 3 or 5");
    params = json{{"n", o.n}, {"d", o.d}, {"p", o.p}};
    auto Q = qschur(o.n, o.d, o.p);
    g.alg = std::move(Q.alg);
    g.metadata["regular_weights"] = Q.regular;
    if (radical_field(to_K(g.alg.alg)).rank() == 0) {
      Mat<Scalar> I;
      for (int i = 0; i < g.alg.n(); ++i) I.push_back(g.alg.alg.basis(i));
      g.grading = GradedSubalgebraDatum::from_basis(I, std::vector<int>(g.alg.n(), 0));
      g.grading_name = "trivial_grading";
    }
  } else if (f == "usl2") {
    require(o.p == 3 || o.p == 5, "--p", "p must be 3 or 5");
    params["p"] = o.p;
    auto U = usl2(o.p);
    g.metadata["regular_weights"] = U.regular;
    json blocks = json::array();
    for (size_t k = 0; k < U.block_weights.size(); ++k) {
      bool regular = true;
      for (const auto& w : U.block_weights[k]) regular = regular && p_regular_sl2(std::stol(w), o.p);
      blocks.push_back(json{{"weights", U.block_weights[k]}, {"regular", regular}});
    }
    g.metadata["blocks"] = blocks;
    g.metadata["blocked"] = U.blocks_integral;
    g.metadata["note"] = U.note;
    if (U.blocks_integral)
      for (size_t k = 0; k < U.block_weights.size(); ++k) g.extra.push_back(block_algebra(U, static_cast<int>(k)));
    g.alg = std::move(U.alg);
  } else if (f == "inflate" || f == "perturb") {
    require(!o.input.empty(), "--input", "the transform needs an input algebra");
    const LoadedAlgebra L = load_algebra_file(o.input);
    params["input"] = L.hash;
    if (f == "inflate") {
      require(!o.nu.empty(), "--nu", "the weight to inflate is required");
      params["nu"] = o.nu;
      params["copies"] = o.copies;
      try {
        g.alg = inflate(L.alg, o.nu, o.copies);
      } catch (const std::invalid_argument& e) {
        throw InputError("--nu", e.what());
      }
      g.alg.name = L.alg.name + "_inflate_" + sanitize(o.nu) + "x" + std::to_string(o.copies);
    } else {
      const uint64_t seed = o.seed_given ? o.seed : env_seed(1);
      params["seed"] = std::to_string(seed);
      params["count"] = o.count;
      g.alg = perturb(L.alg, seed, o.count);
      g.alg.name = L.alg.name + "_perturb" + std::to_string(seed);
    }
  } else {
    throw InputError("fixture", "unknown fixture " + f + " (expected z5, z5s, qschur, usl2, inflate or perturb)");
  }
  g.metadata["fixture"] = json{{"name", f}, {"params", params}};
  return g;
}

int cmd_gen(const Ctx& c) {
  const Options& o = c.o;
  Generated g = generate(o);
  const fs::path dir(o.out);
  fs::create_directories(dir);
  std::vector<fs::path> written;
  auto put = [&](const std::string& name, const json& doc) {
    const fs::path path = dir / (sanitize(name) + ".json");
    write_file(path, serialize(doc));
    written.push_back(path);
  };
  auto emit_algebra = [&](const StructureAlgebra& A, const json& meta) {
    const json doc = algebra_to_json(A, meta);
    const LoadedAlgebra L = load_algebra(doc);
    put(A.name, doc);
    put(A.name + ".regular", module_to_json(regular_module(A.alg), A.name + ".regular", L));
    if (A.weights) {
      const auto W = at_O(A);
      for (const auto& l : A.weights->Lambda) {
        auto S = standard_data(W, nullptr, l);
        if (!S.trunc.pure) continue;
        put(A.name + ".delta_" + l, module_to_json(S.Delta, A.name + ".delta_" + l, L));
      }
    }
    return L;
  };
  const LoadedAlgebra L = emit_algebra(g.alg, g.metadata);
  if (g.grading) put(g.alg.name + "." + g.grading_name, subalgebra_to_json(*g.grading, g.grading_name, L));
  for (const auto& B : g.extra) {
    json meta = json{{"fixture", g.metadata["fixture"]}, {"block_of", json{{"hash", L.hash}, {"name", g.alg.name}}}};
    emit_algebra(B, meta);
  }
  if (!o.quiet) {
    c.out << "generated " << g.alg.name << " (rank " << g.alg.n() << ", " << g.alg.rs.name() << ")\n";
    for (const auto& p : written) c.out << "  " << p.string() << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------- certify, gr

std::vector<std::string> linear_order(const std::string& s) {
  std::vector<std::string> r;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) r.push_back(part);
  return r;
}

std::string condition_name(const std::string& c) { return c == "nonzero" ? "J != 0" : "(" + c + ")"; }

void certificate_checks(SuiteReport& R, const std::string& prefix, const ChainCertificate<DomO>& C,
                        const WAlg<DomO>& W, const std::string& hash) {
  if (C.ok) {
    R.check(prefix + "heredity chain", true,
            "chain length " + std::to_string(C.steps.size()) + ", Delta ranks " + rank_map(C.delta_ranks()));
  } else {
    std::string where = C.failed_step >= 0 ? braces(C.steps[C.failed_step].removed) : "{}";
    R.check(prefix + "heredity chain", false,
            "failing condition " + condition_name(C.failed_condition) + " at step " + where + ": " + C.failure);
    if (C.failed_step >= 0) {
      const auto& v = C.steps[C.failed_step].verdict;
      json w{{"failed_step", C.failed_step},
             {"failed_condition", C.failed_condition},
             {"removed", C.steps[C.failed_step].removed},
             {"torsion", v.torsion}};
      json tw = json::array();
      for (const auto& x : v.torsion_witness) tw.push_back(scalar_to_string(x));
      w["torsion_witness"] = tw;
      R.witnesses[prefix + "failure"] = w;
    }
  }
  const auto CR = check_certificate(W, C);
  std::string mm;
  for (const auto& m : CR.mismatches) mm += (mm.empty() ? "" : "; ") + m;
  R.check(prefix + "independent checker agrees", CR.agrees, mm);
  R.certificates.push_back(json{{"algebra_hash", hash}, {"subject", prefix.empty() ? "A" : prefix}, {"certificate", certificate_to_json(C)}});
}

int cmd_certify(const Ctx& c) {
  const auto t0 = Clock::now();
  const LoadedAlgebra L = load_algebra_file(c.o.algebra_file);
  need_weights(L);
  std::vector<std::string> lin = linear_order(c.o.order);
  for (const auto& l : lin)
    if (!L.alg.weights->in_lambda(l)) throw InputError("--order", "unknown weight " + l);
  SuiteReport R;
  R.suite = "certify";
  R.fixture = L.alg.name;
  R.input_hash = input_hash({L.hash}, c.o.order);
  const auto C = certify_qha(L.alg, lin.empty() ? nullptr : &lin);
  certificate_checks(R, "", C, at_O(L.alg), L.hash);
  return emit(c, R, t0);
}

int cmd_gr(const Ctx& c) {
  const auto t0 = Clock::now();
  const LoadedAlgebra L = load_algebra_file(c.o.algebra_file);
  GradedAlgebra G = gr_algebra(L.alg);
  G.alg.name = L.alg.name + "_gr";
  json meta{{"grading", G.grade}, {"grade_ranks", G.grade_ranks}, {"source", json{{"hash", L.hash}, {"name", L.alg.name}}}};
  const json doc = algebra_to_json(G.alg, meta);
  const LoadedAlgebra LG = load_algebra(doc);
  write_file(c.o.out, serialize(doc));
  SuiteReport R;
  R.suite = "gr";
  R.fixture = L.alg.name;
  R.input_hash = input_hash({L.hash}, "");
  R.check("multiplication respects the grading", respects_grading(G.alg.alg, G.grade));
  R.check("gr A is O-free of rank " + std::to_string(L.alg.n()), G.alg.n() == L.alg.n(), "grade ranks " + ints(G.grade_ranks));
  R.witnesses["output"] = json{{"path", c.o.out}, {"hash", LG.hash}};
  return emit(c, R, t0);
}

// ---------------------------------------------------------------- verify

json comparison_json(const StandardComparison& s) {
  return json{{"label", s.label}, {"isomorphic", s.isomorphic}, {"ranks_equal", s.ranks_equal},
              {"expected", s.expected}, {"found", s.found}, {"problem", s.problem}};
}

SuiteReport suite_thm417(const LoadedAlgebra& L) {
  need_weights(L);
  SuiteReport R;
  R.suite = "thm417";
  R.fixture = L.alg.name;
  R.input_hash = input_hash({L.hash}, "");
  const Thm417Report T = thm_4_17_suite(L.alg);
  R.check("A is a split QHA over O", T.qha);
  R.check("gr A_K is a QHA with weight poset Lambda", T.gr_K_qha);
  R.check("standard modules of gr A_K are the gr Delta_K", T.gr_K_standard);
  R.check("every gr Delta has a simple head", T.heads_simple);
  if (T.hypotheses()) {
    R.check("gr A is a split QHA over O", T.conclusion_qha);
    R.check("standard modules of gr A are the gr Delta, gradewise", T.conclusion_standard);
  }
  R.check("no falsification", !T.falsified);
  json cmp = json::array();
  for (const auto& s : T.comparisons) cmp.push_back(comparison_json(s));
  R.witnesses["comparisons"] = cmp;
  R.witnesses["lambda_standard"] = T.lambda_standard;
  R.witnesses["refined_orders"] = T.refined_orders;
  R.witnesses["notes"] = T.notes;
  const auto C = certify_qha(L.alg);
  R.certificates.push_back(json{{"algebra_hash", L.hash}, {"subject", "A"}, {"certificate", certificate_to_json(C)}});
  if (T.hypotheses()) {
    GradedAlgebra G = gr_algebra(L.alg);
    G.alg.name = L.alg.name + "_gr";
    const auto CG = certify_qha(G.alg);
    R.certificates.push_back(json{{"algebra_hash", content_hash(algebra_to_json(G.alg))},
                                  {"subject", "gr A"},
                                  {"certificate", certificate_to_json(CG)}});
  }
  return R;
}

SuiteReport suite_cor416(const Ctx& c, const LoadedAlgebra& L) {
  const WeightDatum& W = need_weights(L);
  require(!c.o.inputs.empty() || !c.o.module_file.empty(), "module", "cor416 needs a module document");
  const std::string mf = c.o.module_file.empty() ? c.o.inputs.at(0) : c.o.module_file;
  std::string name;
  const ModO N = in_file(mf, [&](const json& j) { return load_module(j, L, &name); });
  SuiteReport R;
  R.suite = "cor416";
  R.fixture = name;
  R.input_hash = input_hash({L.hash, sha256_hex(read_json_file(mf).dump())}, c.o.gamma);
  json per = json::array();
  for (const auto& g : ideals_for(W, c.o.gamma)) {
    const auto T = cor_4_16_check(L.alg, N, g);
    const std::string tag = "Gamma " + braces(g) + ": ";
    R.check(tag + "hypotheses", T.hypotheses, T.hypothesis_problem);
    if (T.hypotheses) {
      R.check(tag + "gr(N_Gamma) -> (gr N)_Gamma is an isomorphism", T.isomorphic(), T.problem);
      R.check(tag + "gradewise ranks agree", T.ranks_equal,
              "gr(N_Gamma) " + ints(T.lhs_grade_ranks) + ", (gr N)_Gamma " + ints(T.rhs_grade_ranks));
    }
    per.push_back(json{{"gamma", g}, {"lhs_grade_ranks", T.lhs_grade_ranks}, {"rhs_grade_ranks", T.rhs_grade_ranks},
                       {"lhs_ranks", T.lhs_ranks}, {"rhs_ranks", T.rhs_ranks}});
  }
  R.witnesses["ideals"] = per;
  return R;
}

GradedSubalgebraDatum subalgebra_input(const Ctx& c, const LoadedAlgebra& L) {
  require(!c.o.inputs.empty(), "subalgebra", "a graded subalgebra document is required");
  return in_file(c.o.inputs.at(0), [&](const json& j) { return load_subalgebra(j, L); });
}

SuiteReport suite_conds51(const Ctx& c, const LoadedAlgebra& L) {
  need_weights(L);
  const auto a = subalgebra_input(c, L);
  SuiteReport R;
  R.suite = "conds51";
  R.fixture = L.alg.name;
  R.input_hash = input_hash({L.hash, sha256_hex(read_json_file(c.o.inputs[0]).dump())}, "");
  const Conditions51 C = conditions_5_1_check(L.alg, a);
  std::string reasons;
  for (const auto& r : C.grading.reasons) reasons += (reasons.empty() ? "" : "; ") + r;
  R.check("(1) a_K is tightly graded", C.c1, reasons);
  R.check("(2) rad A_K = A_K (rad a_K) A_K", C.c2);
  std::string d3, d4;
  for (const auto& [l, p] : C.delta_problems) d3 += (d3.empty() ? "" : "; ") + l + ": " + p;
  R.check("(3) Delta_K(lambda) is generated in degree 0", C.c3, d3);
  R.check("(4) Delta_K(lambda)_0 is A_{K,0}-stable", C.c4);
  R.check("(5) a is the direct sum of pure graded pieces", C.c5,
          std::string("direct sum ") + (C.direct_sum ? "yes" : "no") + ", pure pieces " + (C.pure_pieces ? "yes" : "no"));
  R.witnesses["symbol_iso"] = C.symbol_iso;
  R.witnesses["witnesses"] = C.witnesses;
  return R;
}

SuiteReport suite_thm53(const Ctx& c, const LoadedAlgebra& L) {
  const WeightDatum& W = need_weights(L);
  const auto a = subalgebra_input(c, L);
  SuiteReport R;
  R.suite = "thm53";
  R.fixture = L.alg.name;
  R.input_hash = input_hash({L.hash, sha256_hex(read_json_file(c.o.inputs[0]).dump())}, c.o.lambda);
  std::vector<std::string> lams = c.o.lambda.empty() ? W.Lambda : std::vector<std::string>{c.o.lambda};
  json notes = json::object();
  for (const auto& l : lams) {
    if (!W.in_lambda(l)) throw InputError("--lambda", "unknown weight " + l);
    const auto in = default_thm_5_3_inputs(L.alg, a, l);
    const auto P = thm_5_3_pipeline(L.alg, a, l, in.Pdagger, in.v, in.P0);
    const std::string t = "lambda " + l + ": ";
    R.check(t + "graded subalgebra conditions (1)-(5)", P.conditions_5_1);
    R.check(t + "A is a Lambda-standard split QHA", P.hypothesis_4_7);
    R.check(t + "(i) a v = P-dagger", P.cond_i);
    R.check(t + "(ii) P-dagger = P0 + (P-dagger cap rad)", P.cond_ii_sum);
    R.check(t + "(ii) K P0 + E_K(lambda) is A_{K,0}-stable", P.cond_ii_stable);
    R.check(t + "(iii) P-dagger is tight", P.cond_iii);
    R.check(t + "Delta(lambda) restricted to a is tight", P.delta_tight);
    R.check(t + "head of (gr Delta(lambda))_k is L(lambda)", P.head_is_L);
    R.check(t + "no divergence", !P.divergence);
    notes[l] = P.notes;
  }
  R.witnesses["notes"] = notes;
  R.witnesses["inputs"] = "P-dagger = A e_lambda, v = e_lambda, P0 = a_0 e_lambda";
  return R;
}

template <class D>
void field_checks(SuiteReport& R, const std::string& tag, const WAlg<D>& B, const std::vector<std::string>& g,
                  json& per) {
  const FieldCaseReport F = field_case_suite(B, g);
  const std::string t = tag + " Gamma " + braces(g) + ": ";
  std::string notes;
  for (const auto& n : F.notes) notes += (notes.empty() ? "" : "; ") + n;
  R.check(t + "B and gr B are QHAs", F.hypotheses(), notes);
  if (!F.hypotheses()) return;
  for (const auto& pc : F.pims)
    R.check(t + "gr(P(" + pc.label + ")_Gamma) is a PIM of (gr B)_Gamma", pc.ok(),
            std::string("surjective ") + (pc.surjective ? "yes" : "no") + ", dims " + (pc.dims_equal ? "equal" : "differ") +
                ", simple head " + (pc.head_simple ? "yes" : "no"));
  bool std_ok = true;
  for (const auto& s : F.standard) std_ok = std_ok && s.ok();
  R.check(t + "gr Delta(lambda) are the standard modules of gr B", std_ok);
  bool mods = true;
  for (const auto& m : F.modules) mods = mods && m.ok();
  R.check(t + "(gr M)_Gamma = gr(M_Gamma)", mods,
          std::to_string(F.modules.size()) + " modules, " + std::to_string(F.skipped_modules) + " without standard filtrations");
  per.push_back(json{{"field", tag}, {"gamma", g}, {"modules", F.modules.size()}, {"skipped", F.skipped_modules}});
}

SuiteReport suite_appendix1(const Ctx& c, const LoadedAlgebra& L) {
  const WeightDatum& W = need_weights(L);
  require(c.o.field == "k" || c.o.field == "K" || c.o.field == "both", "--field", "expected k, K or both");
  SuiteReport R;
  R.suite = "appendix1";
  R.fixture = L.alg.name;
  R.input_hash = input_hash({L.hash}, c.o.gamma + "|" + c.o.field);
  json per = json::array();
  for (const auto& g : ideals_for(W, c.o.gamma)) {
    if (c.o.field != "K") field_checks(R, "k", at_k(L.alg), g, per);
    if (c.o.field != "k") field_checks(R, "K", at_K(L.alg, true), g, per);
  }
  if (R.checks.empty()) R.check("no proper poset ideals", true);
  R.witnesses["cases"] = per;
  return R;
}

SuiteReport suite_appendix2(const Ctx& c) {
  require(is_odd_prime(c.o.p), "--p", "p must be an odd prime");
  require(c.o.trunc_order >= 2, "--order", "the truncation order must be at least 2");
  RootDatum Rd;
  try {
    Rd = root_datum(c.o.type);
  } catch (const std::invalid_argument& e) {
    throw InputError("--type", e.what());
  }
  SuiteReport R;
  R.suite = "appendix2";
  R.fixture = c.o.type + "_p" + std::to_string(c.o.p) + "_N" + std::to_string(c.o.trunc_order);
  R.input_hash = input_hash({}, R.fixture);
  AppendixReport A;
  try {
    A = appendix_identity_suite(Rd, c.o.p, c.o.trunc_order);
  } catch (const std::invalid_argument& e) {
    throw InputError("--p", e.what());
  }
  json failures = json::array();
  for (int item = 1; item <= 6; ++item) {
    int total = 0, bad = 0;
    for (const auto& it : A.items) {
      if (it.item != item) continue;
      ++total;
      if (!it.ok) {
        ++bad;
        failures.push_back(json{{"item", item}, {"root", Rd.root_name(it.root)}, {"j", it.j}, {"detail", it.detail}});
      }
    }
    R.check("item (" + std::to_string(item) + ")", bad == 0 && total > 0,
            std::to_string(total - bad) + "/" + std::to_string(total) + " identities hold");
  }
  int bad = 0;
  for (int b = 0; b < static_cast<int>(Rd.positive.size()); ++b) {
    const auto cm = comult_check(Rd, c.o.p, b, c.o.trunc_order);
    if (!cm.ok()) {
      ++bad;
      failures.push_back(json{{"item", "comultiplication"}, {"root", Rd.root_name(b)}});
    }
  }
  R.check("comultiplication display", bad == 0,
          std::to_string(Rd.positive.size() - bad) + "/" + std::to_string(Rd.positive.size()) + " roots");
  R.witnesses["failures"] = failures;
  return R;
}

SuiteReport suite_prop52(const Ctx& c, const LoadedAlgebra& L) {
  const auto base = subalgebra_input(c, L);
  if (base.span != base.graded) throw InputError("/graded", "prop52 needs a homogeneous O-basis (span equal to graded)");
  const int trials = c.o.trials > 0 ? c.o.trials : 100;
  const uint64_t seed = c.o.seed_given ? c.o.seed : env_seed(20261014);
  std::mt19937_64 rng(seed);
  SuiteReport R;
  R.suite = "prop52";
  R.fixture = L.alg.name;
  R.input_hash = input_hash({L.hash, sha256_hex(read_json_file(c.o.inputs[0]).dump())},
                            std::to_string(trials) + "|" + std::to_string(seed) + "|" + std::to_string(c.o.max_shift));
  int agree = 0, tight = 0, done = 0, iso_needed = 0, iso_ok = 0;
  std::map<Mat<Scalar>, bool> iso_cache;
  json disagreements = json::array();
  for (int t = 0; t < trials; ++t) {
    const auto a = c.o.max_shift > 0 ? random_scaled_subalgebra(rng, L.alg, base, c.o.max_shift) : base;
    auto M = random_subalgebra_lattice(rng, L.alg, a);
    if (!M) continue;
    ++done;
    const AlgO ao = subalgebra_of(L.alg, a);
    const auto V = prop_5_2_verdicts(ao, a.grade, *M);
    if (V.agree()) ++agree;
    else if (disagreements.size() < 5) disagreements.push_back(json{{"trial", t}, {"i", V.tight}, {"ii", V.graded_radical}, {"iii", V.generated_by_zero}});
    if (V.tight) ++tight;
    auto it = iso_cache.find(a.graded);
    if (it == iso_cache.end()) {
      bool needs = false, ok = true;
      if (L.alg.weights) {
        const auto C = conditions_5_1_check(L.alg, a);
        needs = C.c1 && C.c5;
        ok = C.symbol_iso;
      }
      if (needs) {
        ++iso_needed;
        if (ok) ++iso_ok;
      }
      iso_cache.emplace(a.graded, !needs || ok);
    }
  }
  R.check("(i), (ii) and (iii) agree", done > 0 && agree == done,
          std::to_string(agree) + "/" + std::to_string(done) + " lattices, " + std::to_string(tight) + " tight");
  R.check("x -> [x] is a graded isomorphism whenever (1) and (5) hold", iso_ok == iso_needed,
          std::to_string(iso_ok) + "/" + std::to_string(iso_needed) + " subalgebras");
  R.witnesses["seed"] = std::to_string(seed);
  R.witnesses["disagreements"] = disagreements;
  R.witnesses["distinct_subalgebras"] = iso_cache.size();
  return R;
}

SuiteReport suite_primitivity(const Ctx& c, const LoadedAlgebra& L) {
  const WeightDatum& W = need_weights(L);
  std::string name = L.alg.name + ".regular";
  std::vector<std::string> hashes{L.hash};
  ModO N = regular_module(L.alg.alg);
  if (!c.o.inputs.empty()) {
    N = in_file(c.o.inputs[0], [&](const json& j) { return load_module(j, L, &name); });
    hashes.push_back(sha256_hex(read_json_file(c.o.inputs[0]).dump()));
  }
  const int trials = c.o.trials > 0 ? c.o.trials : 1000;
  const uint64_t seed = c.o.seed_given ? c.o.seed : env_seed(20261014);
  std::mt19937_64 rng(seed);
  SuiteReport R;
  R.suite = "primitivity";
  R.fixture = name;
  R.input_hash = input_hash(hashes, std::to_string(trials) + "|" + std::to_string(seed));
  PrimitivityContext ctx(L.alg, N);
  std::map<std::string, LatticeRep> wl;
  for (const auto& l : W.Lambda) wl.emplace(l, ctx.weight_lattice(l));
  int tested = 0, strong = 0, prim = 0, exceptions = 0, maximal_bad = 0;
  for (int t = 0; t < trials; ++t) {
    const std::string& l = W.Lambda[rng() % W.Lambda.size()];
    const auto& Lat = wl.at(l);
    if (Lat.rank() == 0) continue;
    const Vec<Scalar> v = random_lattice_vector(rng, L.alg.rs, Lat);
    if (std::all_of(v.begin(), v.end(), [](const Scalar& x) { return x.is_zero(); })) continue;
    const auto P = ctx.test(v, l);
    ++tested;
    if (P.strongly_primitive) ++strong;
    if (P.primitive) ++prim;
    if (P.strongly_primitive && !P.primitive) ++exceptions;
    if ((P.primitive || P.strongly_primitive) && !P.top_weight) ++maximal_bad;
  }
  R.check("strongly primitive implies primitive", tested > 0 && exceptions == 0,
          std::to_string(tested) + " vectors, " + std::to_string(strong) + " strongly primitive, " +
              std::to_string(prim) + " primitive, " + std::to_string(exceptions) + " exceptions");
  R.check("positive verdicts have lambda maximal", maximal_bad == 0, std::to_string(maximal_bad) + " violations");
  R.witnesses["seed"] = std::to_string(seed);
  return R;
}

int cmd_verify(const Ctx& c) {
  const auto t0 = Clock::now();
  const std::string& s = c.o.suite;
  static const std::set<std::string> suites{"thm417", "cor416", "conds51", "thm53", "appendix1", "appendix2", "prop52", "primitivity"};
  if (!suites.count(s)) throw InputError("suite", "unknown suite " + s);
  if (s == "appendix2") {
    SuiteReport R = suite_appendix2(c);
    return emit(c, R, t0);
  }
  require(!c.o.inputs.empty(), "inputs", "suite " + s + " needs an algebra document");
  if (s == "thm417") {
    // one report per algebra, computed in parallel and written in input order
    std::vector<std::future<std::pair<SuiteReport, long>>> jobs;
    std::vector<LoadedAlgebra> algs;
    for (const auto& f : c.o.inputs) algs.push_back(load_algebra_file(f));
    for (const auto& L : algs)
      jobs.push_back(std::async(std::launch::async, [&L]() {
        const auto t = Clock::now();
        SuiteReport R = suite_thm417(L);
        return std::make_pair(std::move(R), static_cast<long>(std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t).count()));
      }));
    int code = 0;
    for (auto& j : jobs) {
      auto [R, ms] = j.get();
      const auto start = Clock::now() - std::chrono::milliseconds(ms);
      code = std::max(code, emit(c, R, start));
    }
    return code;
  }
  Options rest = c.o;
  rest.inputs.erase(rest.inputs.begin());
  const Ctx c2{c.out, c.err, rest};
  const LoadedAlgebra L = load_algebra_file(c.o.inputs[0]);
  SuiteReport R;
  if (s == "cor416") R = suite_cor416(c2, L);
  else if (s == "conds51") R = suite_conds51(c2, L);
  else if (s == "thm53") R = suite_thm53(c2, L);
  else if (s == "appendix1") R = suite_appendix1(c2, L);
  else if (s == "prop52") R = suite_prop52(c2, L);
  else R = suite_primitivity(c2, L);
  return emit(c, R, t0);
}

// ---------------------------------------------------------------- filtration

int cmd_filtration(const Ctx& c) {
  const auto t0 = Clock::now();
  const LoadedAlgebra L = load_algebra_file(c.o.algebra_file);
  const WeightDatum& W = need_weights(L);
  std::string name;
  const ModO N = in_file(c.o.module_file, [&](const json& j) { return load_module(j, L, &name); });
  SuiteReport R;
  R.suite = "filtration";
  R.fixture = name;
  R.input_hash = input_hash({L.hash, sha256_hex(read_json_file(c.o.module_file).dump())}, "");
  const auto WO = at_O(L.alg);
  std::map<std::string, StandardData<DomO>> stds;
  for (const auto& l : W.Lambda) stds.emplace(l, standard_data(WO, nullptr, l));
  const auto F = delta_filtration(WO, stds, N);
  R.check("Delta-filtration", F.ok, F.failure);
  const auto G = gr_delta_filtration(L.alg, N);
  R.check("graded Delta-filtration of gr N", G.ok, G.failure);
  if (F.ok && G.ok) R.check("section multisets coincide", F.multiset() == G.multiset(), rank_map(F.multiset()));
  json secs = json::array();
  for (const auto& s : F.steps) secs.push_back(json{{"label", s.label}, {"multiplicity", s.multiplicity}});
  R.witnesses["sections"] = secs;
  json gsecs = json::array();
  for (const auto& s : G.sections)
    gsecs.push_back(json{{"label", s.label}, {"shift", s.shift}, {"multiplicity", s.multiplicity}, {"grade_ranks", s.grade_ranks}});
  R.witnesses["graded_sections"] = gsecs;
  return emit(c, R, t0);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"grforge: forced gradings of integral quasi-hereditary algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--report-dir", o.report_dir, "directory for JSON reports");
  app.add_flag("-q,--quiet", o.quiet, "no text report");

  auto* gen = app.add_subcommand("gen", "generate a fixture");
  gen->add_option("fixture", o.fixture, "z5, z5s, qschur, usl2, inflate or perturb")->required();
  gen->add_option("--p", o.p, "residue characteristic");
  gen->add_option("--n", o.n, "qschur: rank of the natural module");
  gen->add_option("--d", o.d, "qschur: tensor degree");
  gen->add_option("--ring", o.ring, "z5, z5s: rational or cyclotomic");
  gen->add_option("--input", o.input, "inflate, perturb: input algebra");
  gen->add_option("--nu", o.nu, "inflate: weight label");
  gen->add_option("--copies", o.copies, "inflate: number of copies");
  auto* seed_opt = gen->add_option("--seed", o.seed, "perturb: seed");
  gen->add_option("--count", o.count, "perturb: number of mutations");
  gen->add_option("-o,--out", o.out, "output directory")->required();

  auto* cert = app.add_subcommand("certify", "certify a split quasi-hereditary structure");
  cert->add_option("algebra", o.algebra_file)->required();
  cert->add_option("--order", o.order, "comma-separated total order, top first");

  auto* gr = app.add_subcommand("gr", "forced graded algebra");
  gr->add_option("algebra", o.algebra_file)->required();
  gr->add_option("-o,--out", o.out, "output algebra document")->required();

  auto* ver = app.add_subcommand("verify", "run a verification suite");
  ver->add_option("suite", o.suite, "thm417, cor416, conds51, thm53, appendix1, appendix2, prop52, primitivity")->required();
  ver->add_option("inputs", o.inputs, "algebra document, then module or subalgebra documents");
  ver->add_option("--gamma", o.gamma, "comma-separated poset ideal (default: every proper ideal)");
  ver->add_option("--lambda", o.lambda, "thm53: weight (default: all)");
  ver->add_option("--field", o.field, "appendix1: k, K or both");
  ver->add_option("--p", o.p, "appendix2: prime");
  ver->add_option("--type", o.type, "appendix2: root system type");
  ver->add_option("--order", o.trunc_order, "appendix2: truncation order");
  ver->add_option("--trials", o.trials, "prop52, primitivity: number of random trials");
  ver->add_option("--max-shift", o.max_shift, "prop52: largest pi-power rescaling");
  auto* vseed = ver->add_option("--seed", o.seed, "prop52, primitivity: seed (default GRFORGE_SEED)");

  auto* fil = app.add_subcommand("filtration", "Delta-filtrations of a module and of its forced grading");
  fil->add_option("algebra", o.algebra_file)->required();
  fil->add_option("module", o.module_file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "grforge: " << e.what() << "\n";
    return 2;
  }
  o.seed_given = seed_opt->count() > 0 || vseed->count() > 0;
  const Ctx c{out, err, o};
  try {
    if (gen->parsed()) return cmd_gen(c);
    if (cert->parsed()) return cmd_certify(c);
    if (gr->parsed()) return cmd_gr(c);
    if (ver->parsed()) return cmd_verify(c);
    if (fil->parsed()) return cmd_filtration(c);
  } catch (const InputError& e) {
    err << "grforge: malformed input at " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "grforge: error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace grforge
