#pragma once

#include <string>
#include <vector>

#include "dtransport/coupling.hpp"
#include "dtransport/exact.hpp"
#include "dtransport/lattice_order.hpp"
#include "dtransport/measures.hpp"
#include "oracles.hpp"

namespace dt_test {

using namespace dtransport;

inline Rational q(const char* text) { return parse_rational(text); }

inline LatticePoint p1(long x) { return LatticePoint{x}; }

/// Uniform probability measure on the given integers.
inline ProbabilityMeasure uniform1(const std::vector<long>& xs) {
  std::vector<LatticePoint> pts;
  for (long x : xs) pts.push_back(p1(x));
  return ProbabilityMeasure::uniform(pts);
}

inline ProbabilityMeasure measure1(const oracle::Atoms1& atoms) {
  std::vector<Atom> entries;
  for (const auto& [x, w] : atoms) entries.emplace_back(p1(x), w);
  return ProbabilityMeasure::make(1, entries);
}

inline oracle::Atoms1 atoms1(const ProbabilityMeasure& mu) {
  oracle::Atoms1 out;
  for (const auto& [x, w] : mu.atoms()) out.emplace_back(x[0].get_si(), w);
  return out;
}

inline std::map<std::pair<long, long>, Rational> pairs1(const Coupling& pi) {
  std::map<std::pair<long, long>, Rational> out;
  for (const auto& [xy, w] : pi.atoms()) out[{xy.first[0].get_si(), xy.second[0].get_si()}] = w;
  return out;
}

inline const LatticePoint* witness_point(const VerificationReport& r, const std::string& name) {
  if (!r.witness) return nullptr;
  for (const auto& [n, p] : r.witness->points) {
    if (n == name) return &p;
  }
  return nullptr;
}

}  // namespace dt_test
