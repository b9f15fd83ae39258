#include "grforge/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <limits>
#include <regex>
#include <set>
#include <sstream>

namespace grforge {

namespace {

const std::regex& rational_re() {
  static const std::regex re("-?[0-9]+(/[0-9]+)?");
  return re;
}

std::string ptr(const std::string& base, const std::string& key) { return base + "/" + key; }
std::string ptr(const std::string& base, size_t i) { return base + "/" + std::to_string(i); }

const json& field(const json& j, const std::string& where, const std::string& key) {
  if (!j.is_object()) throw InputError(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(ptr(where, key), "missing field");
  return *it;
}

long int_field(const json& j, const std::string& where, const std::string& key, long lo, long hi) {
  const json& v = field(j, where, key);
  if (!v.is_number_integer()) throw InputError(ptr(where, key), "expected an integer");
  long x = v.get<long>();
  if (x < lo || x > hi) throw InputError(ptr(where, key), "out of range");
  return x;
}

std::string str_field(const json& j, const std::string& where, const std::string& key) {
  const json& v = field(j, where, key);
  if (!v.is_string()) throw InputError(ptr(where, key), "expected a string");
  return v.get<std::string>();
}

void expect_format(const json& doc, const std::string& format) {
  if (!doc.is_object()) throw InputError("", "expected a JSON object");
  if (str_field(doc, "", "format") != format) throw InputError("/format", "expected \"" + format + "\"");
  if (int_field(doc, "", "version", 0, 1000) != kFormatVersion) throw InputError("/version", "unsupported version");
}

Scalar scalar_at(const json& v, const std::string& where, const RingSpec& rs) {
  if (!v.is_string()) throw InputError(where, "expected a value string");
  try {
    return scalar_from_string(v.get<std::string>(), rs);
  } catch (const std::invalid_argument& e) {
    throw InputError(where, e.what());
  }
}

json vec_to_json(const Vec<Scalar>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(scalar_to_string(x));
  return a;
}

Vec<Scalar> vec_from_json(const json& j, const std::string& where, const RingSpec& rs, int n) {
  if (!j.is_array()) throw InputError(where, "expected an array");
  if (static_cast<int>(j.size()) != n) throw InputError(where, "expected " + std::to_string(n) + " entries");
  Vec<Scalar> v(n);
  for (int i = 0; i < n; ++i) v[i] = scalar_at(j[i], ptr(where, i), rs);
  return v;
}

json mat_to_json(const Mat<Scalar>& m) {
  json a = json::array();
  for (const auto& r : m) a.push_back(vec_to_json(r));
  return a;
}

Mat<Scalar> mat_from_json(const json& j, const std::string& where, const RingSpec& rs, int n) {
  if (!j.is_array()) throw InputError(where, "expected an array of vectors");
  Mat<Scalar> m;
  for (size_t i = 0; i < j.size(); ++i) m.push_back(vec_from_json(j[i], ptr(where, i), rs, n));
  return m;
}

std::vector<std::string> strings_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where, "expected an array of strings");
  std::vector<std::string> r;
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) throw InputError(ptr(where, i), "expected a string");
    r.push_back(j[i].get<std::string>());
  }
  return r;
}

json triples_to_json(const std::vector<std::vector<SparseRow<Scalar>>>& rows) {
  json a = json::array();
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j) {
      auto r = rows[i][j];
      std::sort(r.begin(), r.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      for (const auto& [k, v] : r)
        if (!v.is_zero()) a.push_back(json::array({i, j, k, scalar_to_string(v)}));
    }
  return a;
}

// [i, j, k, "value"] into rows[i][j].
void triples_from_json(const json& j, const std::string& where, const RingSpec& rs, int ni, int nj, int nk,
                       std::vector<std::vector<SparseRow<Scalar>>>& rows) {
  if (!j.is_array()) throw InputError(where, "expected an array of triples");
  rows.assign(ni, std::vector<SparseRow<Scalar>>(nj));
  std::set<std::tuple<int, int, int>> seen;
  for (size_t t = 0; t < j.size(); ++t) {
    const std::string w = ptr(where, t);
    const json& e = j[t];
    if (!e.is_array() || e.size() != 4) throw InputError(w, "expected [i, j, k, \"value\"]");
    int idx[3];
    const int bound[3] = {ni, nj, nk};
    for (int c = 0; c < 3; ++c) {
      if (!e[c].is_number_integer()) throw InputError(ptr(w, c), "expected an integer index");
      long x = e[c].get<long>();
      if (x < 0 || x >= bound[c]) throw InputError(ptr(w, c), "index out of range");
      idx[c] = static_cast<int>(x);
    }
    if (!seen.insert({idx[0], idx[1], idx[2]}).second) throw InputError(w, "duplicate entry");
    Scalar v = scalar_at(e[3], ptr(w, 3), rs);
    if (!v.is_zero()) rows[idx[0]][idx[1]].emplace_back(idx[2], v);
  }
}

json weights_to_json(const WeightDatum& W) {
  json w;
  w["X"] = W.X;
  w["Lambda"] = W.Lambda;
  json poset = json::array();
  for (const auto& [a, b] : W.less) poset.push_back(json::array({a, b}));
  w["poset"] = poset;
  w["idempotents"] = mat_to_json(W.idem);
  return w;
}

WeightDatum weights_from_json(const json& j, const std::string& where, const RingSpec& rs, int n) {
  WeightDatum W;
  W.X = strings_from_json(field(j, where, "X"), ptr(where, "X"));
  W.Lambda = strings_from_json(field(j, where, "Lambda"), ptr(where, "Lambda"));
  std::set<std::string> xs(W.X.begin(), W.X.end());
  if (xs.size() != W.X.size()) throw InputError(ptr(where, "X"), "duplicate weight label");
  for (size_t i = 0; i < W.Lambda.size(); ++i)
    if (!xs.count(W.Lambda[i])) throw InputError(ptr(ptr(where, "Lambda"), i), "not a label in X");
  const json& poset = field(j, where, "poset");
  if (!poset.is_array()) throw InputError(ptr(where, "poset"), "expected an array of pairs");
  for (size_t i = 0; i < poset.size(); ++i) {
    auto pr = strings_from_json(poset[i], ptr(ptr(where, "poset"), i));
    if (pr.size() != 2) throw InputError(ptr(ptr(where, "poset"), i), "expected a pair");
    for (const auto& l : pr)
      if (std::find(W.Lambda.begin(), W.Lambda.end(), l) == W.Lambda.end())
        throw InputError(ptr(ptr(where, "poset"), i), "label " + l + " is not in Lambda");
    W.less.emplace_back(pr[0], pr[1]);
  }
  W.idem = mat_from_json(field(j, where, "idempotents"), ptr(where, "idempotents"), rs, n);
  if (W.idem.size() != W.X.size()) throw InputError(ptr(where, "idempotents"), "expected one vector per label in X");
  W.close();
  for (size_t i = 0; i < W.Lambda.size(); ++i)
    if (W.lt(W.Lambda[i], W.Lambda[i])) throw InputError(ptr(where, "poset"), "the relations contain a cycle");
  return W;
}

json algebra_ref(const LoadedAlgebra& A) { return json{{"hash", A.hash}, {"name", A.alg.name}}; }

void check_algebra_ref(const json& doc, const LoadedAlgebra& A) {
  const json& ref = field(doc, "", "algebra");
  const std::string h = str_field(ref, "/algebra", "hash");
  if (h != A.hash) throw InputError("/algebra/hash", "does not match the algebra document (" + A.hash + ")");
}

}  // namespace

std::string scalar_to_string(const Scalar& x) { return x.str(); }

Scalar scalar_from_string(const std::string& s, const RingSpec& rs) {
  if (!s.empty() && s.front() == '[') {
    if (!rs.cyclotomic()) throw std::invalid_argument("cyclotomic value in a rational ring: " + s);
    if (s.back() != ']') throw std::invalid_argument("unterminated coefficient list: " + s);
    std::vector<mpq_class> c;
    std::stringstream ss(s.substr(1, s.size() - 2));
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (!std::regex_match(part, rational_re())) throw std::invalid_argument("bad rational: " + part);
      c.push_back(q_from_string(part));
    }
    if (static_cast<int>(c.size()) != rs.width())
      throw std::invalid_argument("expected " + std::to_string(rs.width()) + " coefficients: " + s);
    return Scalar::from_coeffs(c);
  }
  if (!std::regex_match(s, rational_re())) throw std::invalid_argument("bad value string: " + s);
  return Scalar(q_from_string(s));
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    size_t line = 1;
    for (size_t i = 0; i < e.byte && i < text.size(); ++i)
      if (text[i] == '\n') ++line;
    throw InputError("line " + std::to_string(line), e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_json(ss.str());
  } catch (const InputError& e) {
    throw InputError(path + ":" + e.where, std::string(e.what()).substr(e.where.size() + 2));
  }
}

std::string serialize(const json& doc) { return doc.dump(2) + "\n"; }

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr))
    throw std::runtime_error("sha256 failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

std::string content_hash(const json& doc) { return sha256_hex(doc.dump()); }

json ring_to_json(const RingSpec& rs) {
  return json{{"flavor", rs.cyclotomic() ? "cyclotomic" : "rational"}, {"p", rs.p}};
}

RingSpec ring_from_json(const json& j, const std::string& where) {
  const std::string fl = str_field(j, where, "flavor");
  const long p = int_field(j, where, "p", 3, 1000);
  if (!is_odd_prime(p)) throw InputError(ptr(where, "p"), "p must be an odd prime");
  if (fl == "rational") return rational_spec(static_cast<int>(p));
  if (fl == "cyclotomic") return cyclotomic_spec(static_cast<int>(p));
  throw InputError(ptr(where, "flavor"), "expected \"rational\" or \"cyclotomic\"");
}

json algebra_to_json(const StructureAlgebra& A, const json& metadata) {
  json doc;
  doc["format"] = "grforge.algebra";
  doc["version"] = kFormatVersion;
  doc["name"] = A.name;
  doc["ring"] = ring_to_json(A.rs);
  doc["rank"] = A.n();
  doc["basis"] = A.labels;
  doc["unit"] = vec_to_json(A.alg.unit);
  std::vector<std::vector<SparseRow<Scalar>>> rows(A.n(), std::vector<SparseRow<Scalar>>(A.n()));
  for (int i = 0; i < A.n(); ++i)
    for (int j = 0; j < A.n(); ++j) rows[i][j] = A.alg.prod(i, j);
  doc["structure_constants"] = triples_to_json(rows);
  if (A.weights) doc["weights"] = weights_to_json(*A.weights);
  if (A.weights_K) doc["weights_K"] = weights_to_json(*A.weights_K);
  if (!metadata.empty()) doc["metadata"] = metadata;
  return doc;
}

LoadedAlgebra load_algebra(const json& doc) {
  expect_format(doc, "grforge.algebra");
  LoadedAlgebra L;
  StructureAlgebra& A = L.alg;
  A.name = str_field(doc, "", "name");
  A.rs = ring_from_json(field(doc, "", "ring"), "/ring");
  const int n = static_cast<int>(int_field(doc, "", "rank", 1, 100000));
  A.labels = strings_from_json(field(doc, "", "basis"), "/basis");
  if (static_cast<int>(A.labels.size()) != n) throw InputError("/basis", "expected one label per basis element");
  A.alg.d = DomO{A.rs};
  A.alg.n = n;
  A.alg.unit = vec_from_json(field(doc, "", "unit"), "/unit", A.rs, n);
  std::vector<std::vector<SparseRow<Scalar>>> rows;
  triples_from_json(field(doc, "", "structure_constants"), "/structure_constants", A.rs, n, n, n, rows);
  A.alg.sc.assign(static_cast<size_t>(n) * n, {});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A.alg.sc[static_cast<size_t>(i) * n + j] = std::move(rows[i][j]);
  if (doc.contains("weights")) A.weights = weights_from_json(doc["weights"], "/weights", A.rs, n);
  if (doc.contains("weights_K")) A.weights_K = weights_from_json(doc["weights_K"], "/weights_K", A.rs, n);
  if (doc.contains("metadata")) {
    if (!doc["metadata"].is_object()) throw InputError("/metadata", "expected an object");
    L.metadata = doc["metadata"];
  }
  std::vector<std::string> problems = validate_algebra(A);
  if (A.weights)
    for (auto& p : validate_weights(A, *A.weights, true)) problems.push_back("weights: " + p);
  if (A.weights_K)
    for (auto& p : validate_weights(A, *A.weights_K, false)) problems.push_back("weights_K: " + p);
  if (!problems.empty()) {
    std::string msg;
    for (const auto& p : problems) msg += (msg.empty() ? "" : "; ") + p;
    throw InputError("/structure_constants", "algebra axioms violated: " + msg);
  }
  L.hash = content_hash(doc);
  return L;
}

json module_to_json(const ModO& M, const std::string& name, const LoadedAlgebra& A) {
  json doc;
  doc["format"] = "grforge.module";
  doc["version"] = kFormatVersion;
  doc["name"] = name;
  doc["algebra"] = algebra_ref(A);
  doc["rank"] = M.m;
  doc["action"] = triples_to_json(M.act);
  return doc;
}

ModO load_module(const json& doc, const LoadedAlgebra& A, std::string* name) {
  expect_format(doc, "grforge.module");
  check_algebra_ref(doc, A);
  if (name) *name = str_field(doc, "", "name");
  ModO M;
  M.d = DomO{A.alg.rs};
  M.m = static_cast<int>(int_field(doc, "", "rank", 0, 100000));
  M.n_alg = A.alg.n();
  triples_from_json(field(doc, "", "action"), "/action", A.alg.rs, M.n_alg, M.m, M.m, M.act);
  auto problems = validate_module(A.alg.alg, M);
  if (!problems.empty()) {
    std::string msg;
    for (const auto& p : problems) msg += (msg.empty() ? "" : "; ") + p;
    throw InputError("/action", "module axioms violated: " + msg);
  }
  return M;
}

json subalgebra_to_json(const GradedSubalgebraDatum& a, const std::string& name, const LoadedAlgebra& A) {
  json doc;
  doc["format"] = "grforge.graded_subalgebra";
  doc["version"] = kFormatVersion;
  doc["name"] = name;
  doc["algebra"] = algebra_ref(A);
  doc["span"] = mat_to_json(a.span);
  doc["graded"] = mat_to_json(a.graded);
  doc["grade"] = a.grade;
  if (a.complement_K0) doc["complement_K0"] = mat_to_json(*a.complement_K0);
  return doc;
}

GradedSubalgebraDatum load_subalgebra(const json& doc, const LoadedAlgebra& A) {
  expect_format(doc, "grforge.graded_subalgebra");
  check_algebra_ref(doc, A);
  const RingSpec& rs = A.alg.rs;
  const int n = A.alg.n();
  GradedSubalgebraDatum a;
  a.span = mat_from_json(field(doc, "", "span"), "/span", rs, n);
  a.graded = mat_from_json(field(doc, "", "graded"), "/graded", rs, n);
  const json& g = field(doc, "", "grade");
  if (!g.is_array() || g.size() != a.graded.size()) throw InputError("/grade", "expected one grade per graded vector");
  for (size_t i = 0; i < g.size(); ++i) {
    if (!g[i].is_number_integer() || g[i].get<long>() < 0) throw InputError(ptr("/grade", i), "expected a grade >= 0");
    a.grade.push_back(g[i].get<int>());
  }
  if (a.span.size() != a.graded.size()) throw InputError("/graded", "span and graded have different sizes");
  if (doc.contains("complement_K0")) a.complement_K0 = mat_from_json(doc["complement_K0"], "/complement_K0", rs, n);
  try {
    (void)subalgebra_of(A.alg, a);
  } catch (const std::exception& e) {
    throw InputError("/span", e.what());
  }
  return a;
}

json certificate_to_json(const ChainCertificate<DomO>& C) {
  json c;
  c["ok"] = C.ok;
  c["failed_step"] = C.failed_step;
  c["failed_condition"] = C.failed_condition;
  c["failure"] = C.failure;
  json steps = json::array();
  for (const auto& s : C.steps) {
    json st;
    st["removed"] = s.removed;
    st["e"] = vec_to_json(s.e);
    st["J"] = mat_to_json(s.J.rows);
    const auto& v = s.verdict;
    json torsion = json::array();
    for (long t : v.torsion) torsion.push_back(t);
    st["verdict"] = json{{"nonzero", v.nonzero},
                         {"quotient_free", v.quotient_free},
                         {"idempotent", v.idempotent},
                         {"projective", v.projective},
                         {"end_split", v.end_split},
                         {"failed", v.failed()},
                         {"torsion", torsion},
                         {"torsion_witness", vec_to_json(v.torsion_witness)}};
    json units = json::array();
    for (const auto& block : s.units) {
      json b = json::array();
      for (const auto& row : block) b.push_back(mat_to_json(row));
      units.push_back(b);
    }
    st["units"] = units;
    st["delta_ranks"] = s.delta_ranks;
    steps.push_back(st);
  }
  c["steps"] = steps;
  return c;
}

ChainCertificate<DomO> certificate_from_json(const json& j, const RingSpec& rs, int n) {
  const std::string w = "/certificate";
  ChainCertificate<DomO> C;
  const json& ok = field(j, w, "ok");
  if (!ok.is_boolean()) throw InputError(ptr(w, "ok"), "expected a boolean");
  C.ok = ok.get<bool>();
  C.failed_step = static_cast<int>(int_field(j, w, "failed_step", -1, 100000));
  C.failed_condition = str_field(j, w, "failed_condition");
  C.failure = str_field(j, w, "failure");
  const json& steps = field(j, w, "steps");
  if (!steps.is_array()) throw InputError(ptr(w, "steps"), "expected an array");
  for (size_t i = 0; i < steps.size(); ++i) {
    const std::string sw = ptr(ptr(w, "steps"), i);
    const json& st = steps[i];
    ChainStep<DomO> s;
    s.removed = strings_from_json(field(st, sw, "removed"), ptr(sw, "removed"));
    s.e = vec_from_json(field(st, sw, "e"), ptr(sw, "e"), rs, n);
    s.J.n = n;
    s.J.rows = mat_from_json(field(st, sw, "J"), ptr(sw, "J"), rs, n);
    const json& v = field(st, sw, "verdict");
    auto flag = [&](const std::string& k) {
      const json& b = field(v, ptr(sw, "verdict"), k);
      if (!b.is_boolean()) throw InputError(ptr(ptr(sw, "verdict"), k), "expected a boolean");
      return b.get<bool>();
    };
    s.verdict.nonzero = flag("nonzero");
    s.verdict.quotient_free = flag("quotient_free");
    s.verdict.idempotent = flag("idempotent");
    s.verdict.projective = flag("projective");
    s.verdict.end_split = flag("end_split");
    const json& units = field(st, sw, "units");
    if (!units.is_array()) throw InputError(ptr(sw, "units"), "expected an array");
    for (size_t b = 0; b < units.size(); ++b) {
      std::vector<std::vector<Vec<Scalar>>> block;
      const std::string bw = ptr(ptr(sw, "units"), b);
      if (!units[b].is_array()) throw InputError(bw, "expected an array");
      for (size_t r = 0; r < units[b].size(); ++r) block.push_back(mat_from_json(units[b][r], ptr(bw, r), rs, n));
      s.units.push_back(std::move(block));
    }
    const json& dr = field(st, sw, "delta_ranks");
    if (!dr.is_object()) throw InputError(ptr(sw, "delta_ranks"), "expected an object");
    for (const auto& [k, x] : dr.items()) {
      if (!x.is_number_integer()) throw InputError(ptr(ptr(sw, "delta_ranks"), k), "expected an integer");
      s.delta_ranks[k] = x.get<int>();
    }
    C.steps.push_back(std::move(s));
  }
  return C;
}

void SuiteReport::check(std::string name, bool passed, std::string detail) {
  checks.push_back({std::move(name), passed, std::move(detail)});
}

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const SuiteCheck& c) { return c.passed; });
}

json SuiteReport::to_json() const {
  json r;
  r["format"] = "grforge.report";
  r["version"] = kFormatVersion;
  r["suite"] = suite;
  r["fixture"] = fixture;
  r["input_hash"] = input_hash;
  r["tool_version"] = kToolVersion;
  r["verdict"] = passed() ? "pass" : "fail";
  json cs = json::array();
  for (const auto& c : checks) cs.push_back(json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  r["checks"] = cs;
  r["witnesses"] = witnesses;
  r["certificates"] = certificates;
  r["wall_clock_ms"] = wall_clock_ms;
  return r;
}

SuiteReport SuiteReport::from_json(const json& j) {
  expect_format(j, "grforge.report");
  SuiteReport R;
  R.suite = str_field(j, "", "suite");
  R.fixture = str_field(j, "", "fixture");
  R.input_hash = str_field(j, "", "input_hash");
  const json& cs = field(j, "", "checks");
  if (!cs.is_array()) throw InputError("/checks", "expected an array");
  for (size_t i = 0; i < cs.size(); ++i) {
    const std::string w = ptr("/checks", i);
    const json& p = field(cs[i], w, "passed");
    if (!p.is_boolean()) throw InputError(ptr(w, "passed"), "expected a boolean");
    R.checks.push_back({str_field(cs[i], w, "name"), p.get<bool>(), str_field(cs[i], w, "detail")});
  }
  R.witnesses = field(j, "", "witnesses");
  R.certificates = field(j, "", "certificates");
  R.wall_clock_ms = int_field(j, "", "wall_clock_ms", 0, std::numeric_limits<long>::max());
  return R;
}

std::string SuiteReport::text() const {
  std::ostringstream os;
  os << suite << " on " << fixture << ": " << (passed() ? "PASS" : "FAIL") << "\n";
  for (const auto& c : checks) {
    os << "  [" << (c.passed ? "pass" : "FAIL") << "] " << c.name;
    if (!c.detail.empty()) os << ": " << c.detail;
    os << "\n";
  }
  os << "  input " << input_hash.substr(0, 16) << ", " << wall_clock_ms << " ms\n";
  return os.str();
}

}  // namespace grforge
