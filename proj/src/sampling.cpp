#include "grforge/sampling.hpp"

#include <cstdlib>

namespace grforge {

uint64_t env_seed(uint64_t fallback) {
  const char* s = std::getenv("GRFORGE_SEED");
  return s && *s ? std::strtoull(s, nullptr, 10) : fallback;
}

Scalar random_O_entry(std::mt19937_64& rng, const RingSpec& rs, long bound) {
  std::uniform_int_distribution<long> u(-bound, bound);
  Scalar x;
  if (!rs.cyclotomic()) {
    x = Scalar(u(rng));
  } else {
    std::vector<mpq_class> c(rs.width());
    for (auto& q : c) q = u(rng);
    x = Scalar::from_coeffs(c);
  }
  if (rng() % 4 == 0) x *= uniformizer(rs);
  return x;
}

Vec<Scalar> random_lattice_vector(std::mt19937_64& rng, const RingSpec& rs, const LatticeRep& L) {
  Vec<Scalar> v(L.n);
  for (const auto& r : L.rows) {
    const Scalar c = random_O_entry(rng, rs, 2);
    if (c.is_zero()) continue;
    for (int i = 0; i < L.n; ++i) v[i] += c * r[i];
  }
  return v;
}

GradedSubalgebraDatum random_scaled_subalgebra(std::mt19937_64& rng, const StructureAlgebra& A,
                                               const GradedSubalgebraDatum& base, int max_shift) {
  const Scalar pi = uniformizer(A.rs);
  for (int attempt = 0; attempt < 64; ++attempt) {
    GradedSubalgebraDatum a = base;
    for (size_t j = 0; j < a.graded.size(); ++j) {
      if (a.grade[j] == 0) continue;
      const int k = static_cast<int>(rng() % (max_shift + 1));
      const Scalar s = pi.pow(k);
      for (auto& x : a.graded[j]) x *= s;
    }
    a.span = a.graded;
    a.complement_K0.reset();
    try {
      (void)subalgebra_of(A, a);
      return a;
    } catch (const std::exception&) {
    }
  }
  return base;
}

std::optional<ModO> random_subalgebra_lattice(std::mt19937_64& rng, const StructureAlgebra& A,
                                              const GradedSubalgebraDatum& a) {
  const ModO reg = restrict_module(regular_module(A.alg), a.span);
  const LatticeRep full = ambient_lattice(A.rs, A.n());
  Mat<Scalar> gens;
  const int g = 1 + static_cast<int>(rng() % 2);
  for (int i = 0; i < g; ++i) gens.push_back(random_lattice_vector(rng, A.rs, full));
  const auto L = generated_submodule(reg, gens);
  if (L.rank() == 0) return std::nullopt;
  return lattice_module(reg, L.rows);
}

}  // namespace grforge
