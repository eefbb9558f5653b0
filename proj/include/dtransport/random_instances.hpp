#pragma once

// Seeded generators for the randomised suites. Instance i of a run with seed s
// draws from its own engine seeded with splitmix64(s, i), so instances can be
// produced in any order or in parallel with identical results.

#include <cstdint>
#include <random>
#include <vector>

#include "dtransport/measures.hpp"
#include "dtransport/operations.hpp"
#include "dtransport/verify.hpp"

namespace dtransport {

std::uint64_t splitmix64(std::uint64_t state);

/// Engine for instance `index` of a run seeded with `seed`.
std::mt19937_64 instance_engine(std::uint64_t seed, std::uint64_t index);

struct MeasureParams {
  int max_atoms = 8;
  long coord_radius = 10;
  int max_weight = 20;
};

/// Up to max_atoms points in [-r, r]^dim with weights w_i / sum w, w_i
/// uniform in [1, max_weight].
ProbabilityMeasure random_measure(std::mt19937_64& rng, std::size_t dim,
                                  const MeasureParams& params = {});

/// Numerators in [1, 8], denominators in [1, 4]; gamma and delta are raised
/// to max{alpha, beta} when needed.
ExponentQuadruple random_exponents(std::mt19937_64& rng);

/// Up to max_points points of [-10, 10]^dim with values uniform in [-3, 3].
RealFunction random_phi(std::mt19937_64& rng, std::size_t dim, int max_points = 10);

enum class QuadrupleKind { indicators, scaled_indicators, maximal_f };

/// A quadruple satisfying the hypothesis for (op, e) exactly.
///  - indicators: f = 1_A, g = 1_B, h = 1_{T-(A,B)}, k = 1_{T+(A,B)};
///  - scaled_indicators: the same sets with random positive rational scales,
///    h and k scaled up until the hypothesis holds;
///  - maximal_f: random g, h, k and f(x) = min_y (h^c(T-) k^d(T+) / g^b(y))^{1/a}
///    evaluated in floating point, rounded down to a rational and then
///    decreased until the exact check passes.
FunctionQuadruple random_quadruple(std::mt19937_64& rng, const LatticeOperation& op,
                                   const ExponentQuadruple& e, QuadrupleKind kind);

/// f_eps = max(eps, f) on the window [-r, r]^n (and h, k on the images of
/// the window pair under T-, T+).
FunctionQuadruple regularize(const FunctionQuadruple& q, const LatticeOperation& op,
                             const Rational& eps, long window_radius);

}  // namespace dtransport
