#include "dtransport/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace dtransport {

namespace {

std::string format_real(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

/// base_a^ea * base_b^eb.
Rational power_product(const Rational& a, unsigned long ea, const Rational& b, unsigned long eb) {
  return pow(a, ea) * pow(b, eb);
}

struct ScaledExponents {
  unsigned long alpha, beta, gamma, delta;
};

ScaledExponents scale(const ExponentQuadruple& e) {
  return {e.scaled(e.alpha()), e.scaled(e.beta()), e.scaled(e.gamma()), e.scaled(e.delta())};
}

std::string scaled_note(const ExponentQuadruple& e) {
  return e.all_integral() ? std::string()
                          : " (both sides raised to the power " +
                                to_string(e.common_denominator()) + ")";
}

double logsumexp(const std::vector<double>& terms) {
  const double top = *std::max_element(terms.begin(), terms.end());
  if (!std::isfinite(top)) return top;
  double s = 0.0;
  for (double t : terms) s += std::exp(t - top);
  return top + std::log(s);
}

void require_marginals(const ProbabilityMeasure& mu, const ProbabilityMeasure& nu,
                       const Coupling& pi, const LatticeOperation& op) {
  if (!(pi.left() == mu) || !(pi.right() == nu)) {
    throw std::invalid_argument("coupling marginals differ from the given measures");
  }
  if (op.dim() != mu.dim()) throw std::invalid_argument("operation and measure dims differ");
}

}  // namespace

void FunctionQuadruple::validate() const {
  const std::size_t n = f.dim();
  if (g.dim() != n || h.dim() != n || k.dim() != n) {
    throw std::invalid_argument("function quadruple has mixed dimensions");
  }
}

VerificationReport verify_hypothesis(const FunctionQuadruple& q, const ExponentQuadruple& e,
                                     const LatticeOperation& op) {
  q.validate();
  if (op.dim() != q.f.dim()) throw std::invalid_argument("operation and function dims differ");
  const ScaledExponents s = scale(e);
  VerificationReport report = VerificationReport::pass("hypothesis");
  std::optional<Rational> tightest;
  for (const auto& [x, fx] : q.f.atoms()) {
    const Rational fpow = pow(fx, s.alpha);
    for (const auto& [y, gy] : q.g.atoms()) {
      const Rational lhs = fpow * pow(gy, s.beta);
      const Rational rhs = power_product(q.h.weight(op.t_minus(x, y)), s.gamma,
                                         q.k.weight(op.t_plus(x, y)), s.delta);
      if (lhs > rhs) {
        report = VerificationReport::fail(
            "hypothesis",
            Witness{{{"x", x}, {"y", y}},
                    "f(x)^a g(y)^b > h(T-(x,y))^c k(T+(x,y))^d" + scaled_note(e)});
        report.lhs = to_string(lhs);
        report.rhs = to_string(rhs);
        return report;
      }
      const Rational ratio = lhs / rhs;
      if (!tightest || ratio > *tightest) {
        tightest = ratio;
        report.lhs = to_string(lhs);
        report.rhs = to_string(rhs);
      }
    }
  }
  return report;
}

VerificationReport verify_conclusion(const FunctionQuadruple& q, const ExponentQuadruple& e) {
  q.validate();
  const ScaledExponents s = scale(e);
  const Rational lhs = power_product(q.f.total_mass(), s.alpha, q.g.total_mass(), s.beta);
  const Rational rhs = power_product(q.h.total_mass(), s.gamma, q.k.total_mass(), s.delta);
  VerificationReport report = VerificationReport::pass("conclusion");
  if (lhs > rhs) {
    report = VerificationReport::fail(
        "conclusion",
        Witness{{},
                "masses f=" + to_string(q.f.total_mass()) + " g=" + to_string(q.g.total_mass()) +
                    " h=" + to_string(q.h.total_mass()) + " k=" + to_string(q.k.total_mass()) +
                    scaled_note(e)});
  }
  report.lhs = to_string(lhs);
  report.rhs = to_string(rhs);
  return report;
}

VerificationReport verify_dbm(const FunctionQuadruple& q, const ExponentQuadruple& e,
                              const LatticeOperation& op, long box_radius) {
  return verify_dbm(q, e, op, check_operation(op, box_radius));
}

VerificationReport verify_dbm(const FunctionQuadruple& q, const ExponentQuadruple& e,
                              const LatticeOperation& op,
                              const std::vector<VerificationReport>& operation_checks) {
  VerificationReport report;
  report.check = "dbm";
  for (const auto& sub : operation_checks) {
    report.details.push_back(sub);
    if (!sub.verified()) {
      report.outcome = Outcome::inapplicable;
      report.witness = sub.witness;
      return report;
    }
  }
  VerificationReport hyp = verify_hypothesis(q, e, op);
  report.details.push_back(hyp);
  if (!hyp.verified()) {
    report.outcome = Outcome::inapplicable;
    report.witness = hyp.witness;
    return report;
  }
  VerificationReport concl = verify_conclusion(q, e);
  report.details.push_back(concl);
  report.outcome = concl.outcome;
  report.lhs = concl.lhs;
  report.rhs = concl.rhs;
  report.witness = concl.witness;
  return report;
}

VerificationReport set_dbm(const std::vector<LatticePoint>& a, const std::vector<LatticePoint>& b,
                           const LatticeOperation& op, const ExponentQuadruple& e) {
  if (a.empty() || b.empty()) throw std::invalid_argument("set_dbm needs nonempty sets");
  const std::set<LatticePoint> sa(a.begin(), a.end());
  const std::set<LatticePoint> sb(b.begin(), b.end());
  std::set<LatticePoint> lower, upper;
  for (const auto& x : sa) {
    for (const auto& y : sb) {
      lower.insert(op.t_minus(x, y));
      upper.insert(op.t_plus(x, y));
    }
  }
  const ScaledExponents s = scale(e);
  const Rational lhs = power_product(Rational(sa.size()), s.alpha, Rational(sb.size()), s.beta);
  const Rational rhs =
      power_product(Rational(lower.size()), s.gamma, Rational(upper.size()), s.delta);
  VerificationReport report = VerificationReport::pass("set_bm");
  if (lhs > rhs) {
    report = VerificationReport::fail(
        "set_bm", Witness{{},
                          "|A|=" + std::to_string(sa.size()) + " |B|=" +
                              std::to_string(sb.size()) + " |T-(A,B)|=" +
                              std::to_string(lower.size()) + " |T+(A,B)|=" +
                              std::to_string(upper.size()) + scaled_note(e)});
  }
  report.lhs = to_string(lhs);
  report.rhs = to_string(rhs);
  return report;
}

VerificationReport pointwise_term_bound(const ProbabilityMeasure& mu,
                                        const ProbabilityMeasure& nu, const Coupling& pi,
                                        const LatticeOperation& op,
                                        const ExponentQuadruple& e) {
  require_marginals(mu, nu, pi, op);
  const ProbabilityMeasure k_minus = pi.pushforward(op, Side::minus);
  const ProbabilityMeasure k_plus = pi.pushforward(op, Side::plus);
  const ScaledExponents s = scale(e);
  VerificationReport report = VerificationReport::pass("pointwise");
  std::optional<Rational> worst;
  for (const auto& [pair, w] : pi.atoms()) {
    const auto& [x, y] = pair;
    const Rational lhs = power_product(k_minus.weight(op.t_minus(x, y)), s.gamma,
                                       k_plus.weight(op.t_plus(x, y)), s.delta);
    const Rational rhs = power_product(mu.weight(x), s.alpha, nu.weight(y), s.beta);
    if (lhs > rhs) {
      report = VerificationReport::fail(
          "pointwise", Witness{{{"x", x}, {"y", y}},
                               "kappa_-(T-)^c kappa_+(T+)^d > mu(x)^a nu(y)^b" +
                                   scaled_note(e)});
      report.lhs = to_string(lhs);
      report.rhs = to_string(rhs);
      return report;
    }
    const Rational ratio = lhs / rhs;
    if (!worst || ratio > *worst) {
      worst = ratio;
      report.lhs = to_string(lhs);
      report.rhs = to_string(rhs);
    }
  }
  return report;
}

PValue p_value(const ProbabilityMeasure& mu, const ProbabilityMeasure& nu, const Coupling& pi,
               const LatticeOperation& op, const ExponentQuadruple& e, double tolerance) {
  require_marginals(mu, nu, pi, op);
  const ProbabilityMeasure k_minus = pi.pushforward(op, Side::minus);
  const ProbabilityMeasure k_plus = pi.pushforward(op, Side::plus);
  const double a = e.alpha().get_d(), b = e.beta().get_d();
  const double c = e.gamma().get_d(), d = e.delta().get_d();

  std::vector<double> terms;
  terms.reserve(pi.size());
  Rational exact_p = 0;
  for (const auto& [pair, w] : pi.atoms()) {
    const auto& [x, y] = pair;
    const Rational km = k_minus.weight(op.t_minus(x, y));
    const Rational kp = k_plus.weight(op.t_plus(x, y));
    terms.push_back(log(w) + c * log(km) + d * log(kp) - a * log(mu.weight(x)) -
                    b * log(nu.weight(y)));
    if (e.all_integral()) {
      exact_p += w * power_product(km, e.gamma().get_num().get_ui(), kp,
                                   e.delta().get_num().get_ui()) /
                 power_product(mu.weight(x), e.alpha().get_num().get_ui(), nu.weight(y),
                               e.beta().get_num().get_ui());
    }
  }
  PValue out{logsumexp(terms), VerificationReport::pass("p_bound")};
  VerificationReport& r = out.report;
  r.log_p = out.log_p;
  if (e.all_integral()) {
    r.lhs = to_string(exact_p);
    r.rhs = "1";
    if (exact_p > 1) {
      r.outcome = Outcome::violated;
      r.witness = Witness{{}, "P = " + to_string(exact_p) + " > 1"};
    }
    return out;
  }
  r.lhs = format_real(out.log_p);
  r.rhs = "0";
  const VerificationReport pointwise = pointwise_term_bound(mu, nu, pi, op, e);
  r.details.push_back(pointwise);
  if (pointwise.verified()) return out;
  r.tolerance = tolerance;
  if (out.log_p > tolerance) {
    r.outcome = Outcome::violated;
    r.witness = Witness{{}, "log P = " + format_real(out.log_p) + " > tolerance"};
  }
  return out;
}

EntropyGap entropy_gap(const ProbabilityMeasure& mu, const ProbabilityMeasure& nu,
                       const LatticeOperation& op, const Decomposition& d,
                       const ExponentQuadruple& e, double tolerance) {
  if (!(d == op.decomposition())) {
    throw std::invalid_argument("decomposition differs from the operation's decomposition");
  }
  if (mu.dim() != op.dim() || nu.dim() != op.dim()) {
    throw std::invalid_argument("measure dims do not match the operation");
  }
  const Coupling pi = knothe_coupling(mu, nu, d);
  const double lhs = e.alpha().get_d() * relative_entropy(mu) +
                     e.beta().get_d() * relative_entropy(nu);
  const double rhs = e.gamma().get_d() * relative_entropy(pi.pushforward(op, Side::minus)) +
                     e.delta().get_d() * relative_entropy(pi.pushforward(op, Side::plus));
  EntropyGap out{lhs - rhs, VerificationReport::pass("entropy")};
  VerificationReport& r = out.report;
  r.lhs = format_real(lhs);
  r.rhs = format_real(rhs);
  r.gap = out.gap;
  r.tolerance = tolerance;
  if (out.gap < -tolerance) {
    r.outcome = Outcome::violated;
    r.witness = Witness{{}, "a H(mu) + b H(nu) < c H(kappa_-) + d H(kappa_+)"};
  }
  return out;
}

LogLaplaceGap log_laplace_gap(const RealFunction& phi, double tolerance, std::uint64_t seed,
                              int competitors) {
  if (phi.empty()) throw std::invalid_argument("log-Laplace needs a nonempty domain");
  std::vector<double> values;
  values.reserve(phi.size());
  for (const auto& [x, v] : phi) {
    if (!std::isfinite(v)) throw std::invalid_argument("phi must be finite");
    values.push_back(v);
  }
  const double L = logsumexp(values);

  auto objective = [&values](const std::vector<double>& nu) {
    double s = 0.0;
    for (std::size_t i = 0; i < nu.size(); ++i) {
      if (nu[i] > 0.0) s += nu[i] * (values[i] - std::log(nu[i]));
    }
    return s;
  };

  double z = 0.0;
  for (double v : values) z += std::exp(v - values.front());
  std::vector<double> gibbs(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) gibbs[i] = std::exp(values[i] - values.front()) / z;
  const double R = objective(gibbs);

  LogLaplaceGap out{L - R, VerificationReport::pass("log_laplace")};
  VerificationReport& r = out.report;
  r.lhs = format_real(L);
  r.rhs = format_real(R);
  r.gap = out.gap;
  r.tolerance = tolerance;
  if (std::abs(L - R) > tolerance) {
    r.outcome = Outcome::violated;
    r.witness = Witness{{}, "|L - R| exceeds tolerance at the Gibbs maximiser"};
    return out;
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> weight(0, 20);
  for (int trial = 0; trial < competitors; ++trial) {
    std::vector<double> nu(values.size());
    double total = 0.0;
    while (total == 0.0) {
      total = 0.0;
      for (auto& w : nu) total += (w = weight(rng));
    }
    for (auto& w : nu) w /= total;
    const double value = objective(nu);
    if (value > L + tolerance) {
      r.outcome = Outcome::violated;
      r.witness = Witness{{}, "competitor " + std::to_string(trial) + " reaches " +
                                  format_real(value) + " > L"};
      return out;
    }
  }
  return out;
}

}  // namespace dtransport
