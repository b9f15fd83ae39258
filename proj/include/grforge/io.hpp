#pragma once

#include <stdexcept>

#include "json.hpp"

#include "grforge/qha.hpp"
#include "grforge/tight.hpp"

namespace grforge {

using json = nlohmann::json;

inline constexpr const char* kToolVersion = "grforge 1.0.0";
inline constexpr int kFormatVersion = 1;

// Malformed input; `where` is a JSON pointer or "line N" for parse errors.
struct InputError : std::runtime_error {
  std::string where;
  InputError(std::string w, const std::string& msg) : std::runtime_error(w + ": " + msg), where(std::move(w)) {}
};

std::string scalar_to_string(const Scalar& x);
Scalar scalar_from_string(const std::string& s, const RingSpec& rs);

// Parses text; parse errors become InputError with the line number.
json parse_json(const std::string& text);
json read_json_file(const std::string& path);
// Two-space indentation and a trailing newline.
std::string serialize(const json& doc);
// Lowercase hex SHA-256 of the compact form.
std::string content_hash(const json& doc);
std::string sha256_hex(const std::string& bytes);

json ring_to_json(const RingSpec& rs);
RingSpec ring_from_json(const json& j, const std::string& where);

json algebra_to_json(const StructureAlgebra& A, const json& metadata = json::object());

struct LoadedAlgebra {
  StructureAlgebra alg;
  json metadata = json::object();
  std::string hash;
};

// Checks the document layout and then every algebra and weight axiom; a
// violation throws InputError listing all of them.
LoadedAlgebra load_algebra(const json& doc);

json module_to_json(const ModO& M, const std::string& name, const LoadedAlgebra& A);
// The module must reference A by content hash.
ModO load_module(const json& doc, const LoadedAlgebra& A, std::string* name = nullptr);

json subalgebra_to_json(const GradedSubalgebraDatum& a, const std::string& name, const LoadedAlgebra& A);
GradedSubalgebraDatum load_subalgebra(const json& doc, const LoadedAlgebra& A);

json certificate_to_json(const ChainCertificate<DomO>& C);
ChainCertificate<DomO> certificate_from_json(const json& j, const RingSpec& rs, int n);

struct SuiteCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::string fixture;
  std::string input_hash;
  std::vector<SuiteCheck> checks;
  json witnesses = json::object();
  json certificates = json::array();
  long wall_clock_ms = 0;

  void check(std::string name, bool passed, std::string detail = {});
  bool passed() const;
  json to_json() const;
  static SuiteReport from_json(const json& j);
  std::string text() const;
};

}  // namespace grforge
