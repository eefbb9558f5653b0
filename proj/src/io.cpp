#include "dtransport/io.hpp"

#include <limits>
#include <stdexcept>

namespace dtransport::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument(what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t positive_size(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() <= 0) {
    bad(std::string(what) + " must be a positive integer");
  }
  return j.get<std::size_t>();
}

Integer parse_coordinate(const json& j) {
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? Integer(std::to_string(j.get<unsigned long long>()))
                                  : Integer(std::to_string(j.get<long long>()));
  }
  if (j.is_string()) return parse_integer(j.get<std::string>());
  bad("coordinate must be an integer or a decimal integer string");
}

json coordinate_json(const Integer& v) {
  if (mpz_fits_slong_p(v.get_mpz_t())) return v.get_si();
  return v.get_str();
}

}  // namespace

json to_json(const LatticePoint& x) {
  json out = json::array();
  for (const auto& c : x.coords()) out.push_back(coordinate_json(c));
  return out;
}

LatticePoint parse_point(const json& j) {
  if (!j.is_array() || j.empty()) bad("point must be a nonempty array");
  std::vector<Integer> c;
  for (const auto& v : j) c.push_back(parse_coordinate(v));
  return LatticePoint(std::move(c));
}

Rational parse_weight(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(parse_coordinate(j));
  bad("weight must be an exact rational string \"p/q\"");
}

json to_json(const AdditiveTotalOrder& order) {
  json perm = json::array();
  for (auto p : order.perm()) perm.push_back(p + 1);
  return {{"dim", order.dim()}, {"perm", perm}, {"signs", order.signs()}};
}

AdditiveTotalOrder parse_order(const json& j) {
  const std::size_t dim = positive_size(field(j, "dim"), "order dim");
  std::vector<std::size_t> perm;
  std::vector<int> signs;
  if (j.contains("perm")) {
    for (const auto& p : j.at("perm")) {
      if (!p.is_number_integer() || p.get<long long>() < 1) bad("perm entries are 1-based");
      perm.push_back(p.get<std::size_t>() - 1);
    }
  } else {
    for (std::size_t i = 0; i < dim; ++i) perm.push_back(i);
  }
  if (j.contains("signs")) {
    for (const auto& s : j.at("signs")) {
      if (!s.is_number_integer()) bad("signs must be +1 or -1");
      signs.push_back(s.get<int>());
    }
  } else {
    signs.assign(dim, 1);
  }
  if (perm.size() != dim || signs.size() != dim) bad("order perm/signs must have length dim");
  return AdditiveTotalOrder(std::move(perm), std::move(signs));
}

json to_json(const Decomposition& d) {
  json blocks = json::array();
  for (const auto& b : d.blocks()) blocks.push_back({{"dim", b.dim}, {"order", to_json(b.order)}});
  return {{"blocks", blocks}};
}

Decomposition parse_decomposition(const json& j) {
  const json& blocks = field(j, "blocks");
  if (!blocks.is_array()) bad("blocks must be an array");
  std::vector<Block> out;
  for (const auto& b : blocks) {
    const std::size_t dim = positive_size(field(b, "dim"), "block dim");
    out.push_back({dim, b.contains("order") ? parse_order(b.at("order"))
                                            : AdditiveTotalOrder::standard(dim)});
  }
  return Decomposition::make(std::move(out));
}

json to_json(const FiniteMeasure& m) {
  json atoms = json::array();
  for (const auto& [x, w] : m.atoms()) atoms.push_back({{"x", to_json(x)}, {"w", to_string(w)}});
  return {{"dim", m.dim()}, {"atoms", atoms}};
}

FiniteMeasure parse_measure(const json& j) {
  const std::size_t dim = positive_size(field(j, "dim"), "measure dim");
  const json& atoms = field(j, "atoms");
  if (!atoms.is_array()) bad("atoms must be an array");
  std::vector<Atom> entries;
  for (const auto& a : atoms) entries.emplace_back(parse_point(field(a, "x")), parse_weight(field(a, "w")));
  return FiniteMeasure::make(dim, entries);
}

ProbabilityMeasure parse_probability(const json& j) {
  return ProbabilityMeasure::from(parse_measure(j));
}

json to_json(const Coupling& pi) {
  json atoms = json::array();
  for (const auto& [pair, w] : pi.atoms()) {
    atoms.push_back({{"x", to_json(pair.first)}, {"y", to_json(pair.second)}, {"w", to_string(w)}});
  }
  return {{"dim", pi.dim()}, {"atoms", atoms}};
}

Coupling parse_coupling(const json& j) {
  const std::size_t dim = positive_size(field(j, "dim"), "coupling dim");
  std::map<PointPair, Rational> atoms;
  for (const auto& a : field(j, "atoms")) {
    atoms[{parse_point(field(a, "x")), parse_point(field(a, "y"))}] += parse_weight(field(a, "w"));
  }
  return Coupling::from_atoms(dim, std::move(atoms));
}

namespace {

PointMap named_difference_default(const std::string& name, std::size_t dim) {
  if (name == "floor_half") return floor_half;
  if (name == "negate") return [](const LatticePoint& w) { return -w; };
  if (name == "identity") return [](const LatticePoint& w) { return w; };
  if (name == "zero") return [dim](const LatticePoint&) { return LatticePoint::zero(dim); };
  bad("unknown difference-map default '" + name + "'");
}

}  // namespace

LatticeOperation parse_operation(const json& j, std::size_t default_dim) {
  if (!j.is_object()) bad("operation spec must be an object");
  const std::string kind = field(j, "kind").get<std::string>();
  auto dim_of = [&]() {
    return j.contains("dim") ? positive_size(j.at("dim"), "operation dim") : default_dim;
  };
  if (kind == "midpoint") return midpoint(dim_of());
  if (kind == "meet_join") return meet_join(dim_of());
  if (kind == "product") {
    const json& factors = field(j, "factors");
    if (!factors.is_array() || factors.empty()) bad("product needs a nonempty factor list");
    LatticeOperation op = parse_operation(factors.at(0), default_dim);
    for (std::size_t i = 1; i < factors.size(); ++i) {
      op = product(op, parse_operation(factors.at(i), default_dim));
    }
    return op;
  }
  if (kind == "difference_map") {
    const std::size_t dim = dim_of();
    if (dim == 0) bad("operation dim must be positive");
    const Decomposition d = j.contains("decomposition")
                                ? parse_decomposition(j.at("decomposition"))
                                : Decomposition::coordinatewise(dim);
    if (d.total_dim() != dim) bad("difference-map decomposition does not match dim");
    std::map<LatticePoint, LatticePoint> table;
    if (j.contains("table")) {
      for (const auto& row : j.at("table")) {
        LatticePoint w = parse_point(field(row, "w"));
        LatticePoint t = parse_point(field(row, "t"));
        if (w.dim() != dim || t.dim() != dim) bad("difference-map table entry of wrong dim");
        table.insert_or_assign(std::move(w), std::move(t));
      }
    }
    const PointMap fallback =
        named_difference_default(j.value("default", std::string("floor_half")), dim);
    return from_difference_map(d, [table, fallback](const LatticePoint& w) {
      const auto it = table.find(w);
      return it != table.end() ? it->second : fallback(w);
    });
  }
  bad("unknown operation kind '" + kind + "'");
}

LatticeOperation parse_operation_text(const std::string& text, std::size_t default_dim) {
  if (text == "midpoint" || text == "meet_join") {
    return parse_operation(json{{"kind", text}}, default_dim);
  }
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("operation spec is neither a kind name nor JSON: ") + e.what());
  }
  return parse_operation(j, default_dim);
}

ExponentQuadruple parse_exponents(const json& j) {
  auto get = [&j](const char* key) {
    return j.is_object() && j.contains(key) ? parse_weight(j.at(key)) : Rational(1);
  };
  return ExponentQuadruple::make(get("alpha"), get("beta"), get("gamma"), get("delta"));
}

json to_json(const ExponentQuadruple& e) {
  return {{"alpha", to_string(e.alpha())},
          {"beta", to_string(e.beta())},
          {"gamma", to_string(e.gamma())},
          {"delta", to_string(e.delta())}};
}

RealFunction parse_real_function(const json& j) {
  if (!j.is_array()) bad("phi must be an array of {x, v}");
  RealFunction phi;
  for (const auto& row : j) {
    const json& v = field(row, "v");
    if (!v.is_number()) bad("phi values must be numbers");
    phi[parse_point(field(row, "x"))] = v.get<double>();
  }
  return phi;
}

std::vector<LatticePoint> parse_point_list(const json& j) {
  if (!j.is_array()) bad("point set must be an array");
  std::vector<LatticePoint> out;
  for (const auto& p : j) out.push_back(parse_point(p));
  return out;
}

json to_json(const VerificationReport& r) {
  json out = {{"check", r.check}, {"outcome", to_string(r.outcome)}, {"lhs", r.lhs},
              {"rhs", r.rhs}};
  if (r.log_p) out["log_p"] = *r.log_p;
  if (r.gap) out["gap"] = *r.gap;
  if (r.witness) {
    json w = json::object();
    for (const auto& [label, p] : r.witness->points) w[label] = to_json(p);
    if (!r.witness->detail.empty()) w["detail"] = r.witness->detail;
    out["witness"] = w;
  }
  out["tolerance"] = r.tolerance;
  if (!r.details.empty()) {
    json d = json::array();
    for (const auto& sub : r.details) d.push_back(to_json(sub));
    out["details"] = d;
  }
  return out;
}

}  // namespace dtransport::io
