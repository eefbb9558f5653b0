#pragma once

// Verifiers for the weighted discrete Brunn-Minkowski inequality, its
// set version, the transport term bound, the P functional, the entropy
// inequality, and the log-Laplace variational identity.

#include <cstdint>
#include <map>
#include <vector>

#include "dtransport/coupling.hpp"
#include "dtransport/measures.hpp"
#include "dtransport/operations.hpp"
#include "dtransport/report.hpp"

namespace dtransport {

/// Nonnegative finitely supported functions f, g, h, k sharing one dimension.
struct FunctionQuadruple {
  FiniteMeasure f, g, h, k;

  /// Throws std::invalid_argument when the dimensions differ.
  void validate() const;
};

/// Absolute tolerance for floating point (log-domain) comparisons.
inline constexpr double kDefaultTolerance = 1e-9;

/// f(x)^a g(y)^b <= h(T-(x,y))^c k(T+(x,y))^d on supp f x supp g, compared
/// exactly after raising both sides to the common denominator of the exponents.
VerificationReport verify_hypothesis(const FunctionQuadruple& q, const ExponentQuadruple& e,
                                     const LatticeOperation& op);

/// (sum f)^a (sum g)^b <= (sum h)^c (sum k)^d, exactly.
VerificationReport verify_conclusion(const FunctionQuadruple& q, const ExponentQuadruple& e);

/// Operation checks, then hypothesis, then conclusion. `inapplicable` when
/// the operation or the hypothesis fails; sub-reports are kept in `details`.
VerificationReport verify_dbm(const FunctionQuadruple& q, const ExponentQuadruple& e,
                              const LatticeOperation& op,
                              long box_radius = kDefaultBoxRadius);

/// As above with the operation checks already computed by check_operation.
VerificationReport verify_dbm(const FunctionQuadruple& q, const ExponentQuadruple& e,
                              const LatticeOperation& op,
                              const std::vector<VerificationReport>& operation_checks);

/// |A|^a |B|^b <= |T-(A,B)|^c |T+(A,B)|^d, exactly.
VerificationReport set_dbm(const std::vector<LatticePoint>& a, const std::vector<LatticePoint>& b,
                           const LatticeOperation& op, const ExponentQuadruple& e);

/// For every (x,y) in supp pi:
///   kappa_-(T-(x,y))^c kappa_+(T+(x,y))^d <= mu(x)^a nu(y)^b,
/// with kappa_+- the images of pi. Exact. `lhs`/`rhs` describe the largest term.
VerificationReport pointwise_term_bound(const ProbabilityMeasure& mu,
                                        const ProbabilityMeasure& nu, const Coupling& pi,
                                        const LatticeOperation& op,
                                        const ExponentQuadruple& e);

struct PValue {
  double log_p;
  VerificationReport report;
};

/// P = sum_{(x,y)} pi(x,y) kappa_-^c kappa_+^d / (mu^a nu^b). `log_p` is
/// computed by log-sum-exp. The report is verified exactly when the pointwise
/// bound holds, or when all exponents are integers and P <= 1 as a rational;
/// otherwise it is verified iff log P <= tolerance.
PValue p_value(const ProbabilityMeasure& mu, const ProbabilityMeasure& nu, const Coupling& pi,
               const LatticeOperation& op, const ExponentQuadruple& e,
               double tolerance = kDefaultTolerance);

struct EntropyGap {
  double gap;
  VerificationReport report;
};

/// a H(mu) + b H(nu) - c H(kappa_-) - d H(kappa_+) for the Knothe coupling
/// along `d`; verified iff gap >= -tolerance. Throws std::invalid_argument
/// when `d` differs from the operation's decomposition.
EntropyGap entropy_gap(const ProbabilityMeasure& mu, const ProbabilityMeasure& nu,
                       const LatticeOperation& op, const Decomposition& d,
                       const ExponentQuadruple& e, double tolerance = kDefaultTolerance);

using RealFunction = std::map<LatticePoint, double>;

struct LogLaplaceGap {
  double gap;  // L - R
  VerificationReport report;
};

/// L = log sum e^phi against R = int phi dnu* - H(nu*) for the Gibbs measure
/// nu* proportional to e^phi, plus `competitors` seeded random measures on
/// the domain that must not exceed L + tolerance. Throws std::invalid_argument
/// on an empty domain.
LogLaplaceGap log_laplace_gap(const RealFunction& phi, double tolerance = kDefaultTolerance,
                              std::uint64_t seed = 0, int competitors = 100);

}  // namespace dtransport
