#include "dtransport/report.hpp"

namespace dtransport {

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::verified: return "verified";
    case Outcome::violated: return "violated";
    case Outcome::inapplicable: return "inapplicable";
  }
  return "?";
}

}  // namespace dtransport
