#include "dtransport/random_instances.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace dtransport {

std::uint64_t splitmix64(std::uint64_t state) {
  std::uint64_t z = state + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::mt19937_64 instance_engine(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(index + 1)));
}

namespace {

long uniform(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

LatticePoint random_point(std::mt19937_64& rng, std::size_t dim, long radius) {
  std::vector<Integer> c(dim);
  for (auto& v : c) v = uniform(rng, -radius, radius);
  return LatticePoint(std::move(c));
}

std::vector<LatticePoint> random_set(std::mt19937_64& rng, std::size_t dim, long radius,
                                     int max_size) {
  std::set<LatticePoint> s;
  const long n = uniform(rng, 1, max_size);
  for (long i = 0; i < n; ++i) s.insert(random_point(rng, dim, radius));
  return {s.begin(), s.end()};
}

Rational random_scale(std::mt19937_64& rng, long max_num, long max_den) {
  Rational r(uniform(rng, 1, max_num), uniform(rng, 1, max_den));
  r.canonicalize();
  return r;
}

FiniteMeasure function_on(const std::vector<LatticePoint>& points,
                          const std::vector<Rational>& values) {
  std::vector<Atom> entries;
  for (std::size_t i = 0; i < points.size(); ++i) entries.emplace_back(points[i], values[i]);
  return FiniteMeasure::make(points.front().dim(), entries);
}

std::pair<std::vector<LatticePoint>, std::vector<LatticePoint>> images(
    const LatticeOperation& op, const std::vector<LatticePoint>& a,
    const std::vector<LatticePoint>& b) {
  std::set<LatticePoint> lower, upper;
  for (const auto& x : a) {
    for (const auto& y : b) {
      lower.insert(op.t_minus(x, y));
      upper.insert(op.t_plus(x, y));
    }
  }
  return {{lower.begin(), lower.end()}, {upper.begin(), upper.end()}};
}

bool hypothesis_at(const Rational& fx, const LatticePoint& x, const FiniteMeasure& g,
                   const FiniteMeasure& h, const FiniteMeasure& k, const LatticeOperation& op,
                   const ExponentQuadruple& e) {
  const Rational lhs_f = pow(fx, e.scaled(e.alpha()));
  for (const auto& [y, gy] : g.atoms()) {
    const Rational lhs = lhs_f * pow(gy, e.scaled(e.beta()));
    const Rational rhs = pow(h.weight(op.t_minus(x, y)), e.scaled(e.gamma())) *
                         pow(k.weight(op.t_plus(x, y)), e.scaled(e.delta()));
    if (lhs > rhs) return false;
  }
  return true;
}

}  // namespace

ProbabilityMeasure random_measure(std::mt19937_64& rng, std::size_t dim,
                                  const MeasureParams& params) {
  const long n = uniform(rng, 1, params.max_atoms);
  std::vector<Atom> entries;
  for (long i = 0; i < n; ++i) {
    LatticePoint p = random_point(rng, dim, params.coord_radius);
    entries.emplace_back(std::move(p), Rational(uniform(rng, 1, params.max_weight)));
  }
  return normalize(FiniteMeasure::make(dim, entries));
}

ExponentQuadruple random_exponents(std::mt19937_64& rng) {
  Rational v[4];
  for (auto& r : v) r = random_scale(rng, 8, 4);
  const Rational top = std::max(v[0], v[1]);
  return ExponentQuadruple::make(v[0], v[1], std::max(v[2], top), std::max(v[3], top));
}

RealFunction random_phi(std::mt19937_64& rng, std::size_t dim, int max_points) {
  RealFunction phi;
  const long n = uniform(rng, 1, max_points);
  std::uniform_real_distribution<double> value(-3.0, 3.0);
  for (long i = 0; i < n; ++i) {
    LatticePoint p = random_point(rng, dim, 10);
    phi[p] = value(rng);
  }
  return phi;
}

FunctionQuadruple random_quadruple(std::mt19937_64& rng, const LatticeOperation& op,
                                   const ExponentQuadruple& e, QuadrupleKind kind) {
  const std::size_t dim = op.dim();
  const auto a = random_set(rng, dim, 3, 4);
  const auto b = random_set(rng, dim, 3, 4);
  const auto [lower, upper] = images(op, a, b);

  auto constant = [](const std::vector<LatticePoint>& pts, const Rational& c) {
    return function_on(pts, std::vector<Rational>(pts.size(), c));
  };

  switch (kind) {
    case QuadrupleKind::indicators:
      return {constant(a, 1), constant(b, 1), constant(lower, 1), constant(upper, 1)};

    case QuadrupleKind::scaled_indicators: {
      const Rational sf = random_scale(rng, 5, 5);
      const Rational sg = random_scale(rng, 5, 5);
      Rational sh = random_scale(rng, 5, 5);
      Rational sk = random_scale(rng, 5, 5);
      const auto s = [&e](const Rational& r) { return e.scaled(r); };
      while (pow(sf, s(e.alpha())) * pow(sg, s(e.beta())) >
             pow(sh, s(e.gamma())) * pow(sk, s(e.delta()))) {
        sh *= 2;
        sk *= 2;
      }
      return {constant(a, sf), constant(b, sg), constant(lower, sh), constant(upper, sk)};
    }

    case QuadrupleKind::maximal_f: {
      auto random_values = [&rng](std::size_t n) {
        std::vector<Rational> v(n);
        for (auto& r : v) r = random_scale(rng, 20, 10);
        return v;
      };
      const FiniteMeasure g = function_on(b, random_values(b.size()));
      const FiniteMeasure h = function_on(lower, random_values(lower.size()));
      const FiniteMeasure k = function_on(upper, random_values(upper.size()));
      const double ea = e.alpha().get_d(), eb = e.beta().get_d();
      const double ec = e.gamma().get_d(), ed = e.delta().get_d();
      std::vector<Atom> f_entries;
      for (const auto& x : a) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& [y, gy] : g.atoms()) {
          best = std::min(best, ec * log(h.weight(op.t_minus(x, y))) +
                                    ed * log(k.weight(op.t_plus(x, y))) - eb * log(gy));
        }
        const double value = std::exp(best / ea);
        Rational fx = floor_to_grid(value, 1UL << 20);
        if (sgn(fx) == 0) fx = Rational(value) / 2;
        while (!hypothesis_at(fx, x, g, h, k, op, e)) fx *= Rational(1023, 1024);
        f_entries.emplace_back(x, fx);
      }
      return {FiniteMeasure::make(dim, f_entries), g, h, k};
    }
  }
  throw std::logic_error("unknown quadruple kind");
}

FunctionQuadruple regularize(const FunctionQuadruple& q, const LatticeOperation& op,
                             const Rational& eps, long window_radius) {
  q.validate();
  const auto window = box_points(q.f.dim(), window_radius);
  auto lifted = [&eps, &window](const FiniteMeasure& m, std::vector<LatticePoint> extra) {
    std::set<LatticePoint> domain(window.begin(), window.end());
    for (const auto& [x, w] : m.atoms()) domain.insert(x);
    domain.insert(extra.begin(), extra.end());
    std::vector<Atom> entries;
    for (const auto& x : domain) entries.emplace_back(x, std::max(eps, m.weight(x)));
    return FiniteMeasure::make(m.dim(), entries);
  };
  const FiniteMeasure f = lifted(q.f, {});
  const FiniteMeasure g = lifted(q.g, {});
  const auto [lower, upper] = images(op, f.support(), g.support());
  return {f, g, lifted(q.h, lower), lifted(q.k, upper)};
}

}  // namespace dtransport
