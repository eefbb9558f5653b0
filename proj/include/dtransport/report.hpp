#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dtransport/lattice_order.hpp"

namespace dtransport {

enum class Outcome { verified, violated, inapplicable };

const char* to_string(Outcome o);

/// Labelled points locating a failure, plus a short free-form reason.
struct Witness {
  std::vector<std::pair<std::string, LatticePoint>> points;
  std::string detail;
};

/// Outcome of one check. `lhs`/`rhs` hold exact rationals ("p/q") when the
/// comparison was exact, otherwise decimal log-domain values.
struct VerificationReport {
  std::string check;
  Outcome outcome = Outcome::verified;
  std::string lhs;
  std::string rhs;
  std::optional<double> log_p;
  std::optional<double> gap;
  std::optional<Witness> witness;
  double tolerance = 0.0;
  std::vector<VerificationReport> details;

  bool verified() const { return outcome == Outcome::verified; }

  static VerificationReport pass(std::string check) {
    VerificationReport r;
    r.check = std::move(check);
    return r;
  }
  static VerificationReport fail(std::string check, Witness w) {
    VerificationReport r;
    r.check = std::move(check);
    r.outcome = Outcome::violated;
    r.witness = std::move(w);
    return r;
  }
};

}  // namespace dtransport
