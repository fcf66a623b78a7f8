#include "circdom/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "circdom/errors.hpp"
#include "json.hpp"

namespace circdom::io {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string pair_str(Complex v) {
  return "[" + fmt(v.real()) + ", " + fmt(v.imag()) + "]";
}

std::string triple_str(Complex v, int mult) {
  return "[" + fmt(v.real()) + ", " + fmt(v.imag()) + ", " +
         std::to_string(mult) + "]";
}

std::string disk_str(const Disk& d) {
  return "{\"center\": " + pair_str(d.center) + ", \"radius\": " +
         fmt(d.radius) + "}";
}

// Repetition-encoded lists collapse to [re, im, mult] triples grouped by
// exact value in first-appearance order, so emit(parse(emit(x))) is byte
// stable.
std::string grouped_str(const std::vector<Complex>& values) {
  std::vector<std::pair<Complex, int>> groups;
  for (Complex v : values) {
    bool found = false;
    for (auto& [w, m] : groups)
      if (w == v) {
        ++m;
        found = true;
        break;
      }
    if (!found) groups.push_back({v, 1});
  }
  std::string out = "[";
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (i) out += ", ";
    out += triple_str(groups[i].first, groups[i].second);
  }
  return out + "]";
}

std::string coeffs_str(const std::vector<Complex>& coeffs) {
  std::string out = "[";
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (i) out += ", ";
    out += pair_str(coeffs[i]);
  }
  return out + "]";
}

std::string series_str(const ComponentSeries& s, const std::string& indent) {
  std::string out = "{\n";
  out += indent + "  \"basis\": \"" +
         (s.kind == BasisKind::OuterPower ? "outer_power" : "hole_power") +
         "\",\n";
  out += indent + "  \"component\": " + std::to_string(s.component) + ",\n";
  out += indent + "  \"disk\": " + disk_str(s.disk) + ",\n";
  out += indent + "  \"coeffs\": " + coeffs_str(s.coeffs) + "\n";
  out += indent + "}";
  return out;
}

std::string parts_str(const CauchyParts& parts, const std::string& indent) {
  std::string out = "[\n";
  for (std::size_t j = 0; j < parts.parts.size(); ++j) {
    out += indent + "  " + series_str(parts.parts[j], indent + "  ");
    out += j + 1 < parts.parts.size() ? ",\n" : "\n";
  }
  return out + indent + "]";
}

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded())
    fail_validation("InvalidJson", "input is not well-formed JSON");
  return j;
}

void check_schema(const json& j) {
  if (j.contains("schema_version") && j["schema_version"] != 1)
    fail_validation("SchemaMismatch", "only schema_version 1 is supported");
}

double finite_number(const json& j, const char* what) {
  if (!j.is_number())
    fail_validation("InvalidJson", std::string(what) + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v))
    fail_validation("InvalidJson", std::string(what) + " must be finite");
  return v;
}

Complex parse_pair(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2)
    fail_validation("InvalidJson",
                    std::string(what) + " must be a [re, im] pair");
  return Complex(finite_number(j[0], what), finite_number(j[1], what));
}

Disk parse_disk(const json& j, const char* what) {
  if (!j.is_object() || !j.contains("center") || !j.contains("radius"))
    fail_validation("InvalidDisk",
                    std::string(what) + " needs center and radius");
  return Disk{parse_pair(j["center"], what),
              finite_number(j["radius"], what)};
}

std::vector<Complex> parse_point_list(const json& j, const char* what) {
  std::vector<Complex> out;
  if (j.is_null()) return out;
  if (!j.is_array())
    fail_validation("InvalidFunction", std::string(what) + " must be a list");
  for (const auto& entry : j) {
    if (!entry.is_array() || entry.size() < 2 || entry.size() > 3)
      fail_validation("InvalidFunction",
                      std::string(what) + " entries are [re, im] or [re, im, mult]");
    const Complex v = Complex(finite_number(entry[0], what),
                              finite_number(entry[1], what));
    int mult = 1;
    if (entry.size() == 3) {
      const double m = finite_number(entry[2], what);
      if (m < 1 || m != std::floor(m))
        fail_validation("InvalidFunction",
                        "multiplicity must be a positive integer");
      mult = static_cast<int>(m);
    }
    for (int k = 0; k < mult; ++k) out.push_back(v);
  }
  return out;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open " + path + " for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoFailure("read failure on " + path);
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoFailure("cannot open " + path + " for writing");
  out << content;
  if (!out) throw IoFailure("write failure on " + path);
}

CircularDomain parse_domain(const std::string& text) {
  const json j = parse_json(text);
  check_schema(j);
  if (!j.is_object() || !j.contains("outer"))
    fail_validation("InvalidDisk", "domain needs an outer disk");
  const Disk outer = parse_disk(j["outer"], "outer disk");
  std::vector<Disk> holes;
  if (j.contains("holes")) {
    if (!j["holes"].is_array())
      fail_validation("InvalidDisk", "holes must be a list of disks");
    for (const auto& h : j["holes"]) holes.push_back(parse_disk(h, "hole"));
  }
  return CircularDomain::validate(outer, std::move(holes));
}

ComplexRational parse_function(const std::string& text) {
  const json j = parse_json(text);
  check_schema(j);
  if (!j.is_object())
    fail_validation("InvalidFunction", "function file must hold an object");
  std::vector<Complex> zeros =
      parse_point_list(j.contains("zeros") ? j["zeros"] : json(), "zeros");
  std::vector<Complex> poles =
      parse_point_list(j.contains("poles") ? j["poles"] : json(), "poles");
  Complex scale(1, 0);
  if (j.contains("scale")) scale = parse_pair(j["scale"], "scale");
  return ComplexRational(std::move(zeros), std::move(poles), scale);
}

Disk parse_circle(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_array() || j.size() != 3)
    fail_validation("InvalidDisk", "circle literal must be [re, im, r]");
  const Disk d{Complex(finite_number(j[0], "circle"),
                       finite_number(j[1], "circle")),
               finite_number(j[2], "circle")};
  if (d.radius <= 0)
    fail_validation("InvalidDisk", "circle radius must be positive");
  return d;
}

std::string domain_json(const CircularDomain& domain) {
  std::string out = "{\n  \"schema_version\": 1,\n";
  out += "  \"outer\": " + disk_str(domain.outer()) + ",\n";
  out += "  \"holes\": [";
  for (std::size_t j = 0; j < domain.holes().size(); ++j) {
    if (j) out += ", ";
    out += disk_str(domain.holes()[j]);
  }
  out += "]\n}\n";
  return out;
}

std::string function_json(const ComplexRational& f) {
  std::string out = "{\n  \"schema_version\": 1,\n";
  out += "  \"zeros\": " + grouped_str(f.zeros()) + ",\n";
  out += "  \"poles\": " + grouped_str(f.poles()) + ",\n";
  out += "  \"scale\": " + pair_str(f.scale()) + "\n}\n";
  return out;
}

std::string decomposition_json(const CauchyParts& parts, double residual) {
  std::string out = "{\n  \"schema_version\": 1,\n";
  out += "  \"residual\": " + fmt(residual) + ",\n";
  out += "  \"components\": " + parts_str(parts, "  ") + "\n}\n";
  return out;
}

std::string factorization_json(const Factorization& fact) {
  std::string out = "{\n  \"schema_version\": 1,\n";
  out += "  \"sign\": " + std::to_string(fact.monomials.sign) + ",\n";
  out += "  \"exponents\": [";
  for (std::size_t j = 0; j < fact.monomials.exponents.size(); ++j) {
    if (j) out += ", ";
    out += std::to_string(fact.monomials.exponents[j]);
  }
  out += "],\n";
  out += "  \"centers\": [";
  for (std::size_t j = 0; j < fact.monomials.centers.size(); ++j) {
    if (j) out += ", ";
    out += pair_str(fact.monomials.centers[j]);
  }
  out += "],\n";
  out += "  \"factors\": [\n";
  for (std::size_t j = 0; j < fact.factors.size(); ++j) {
    const AnalyticFactor& factor = fact.factors[j];
    out += "    {\n";
    out += "      \"component\": " + std::to_string(factor.log_part.component) +
           ",\n";
    out += "      \"blaschke\": {\"exterior\": ";
    out += factor.blaschke.exterior ? "true" : "false";
    out += ", \"disk\": " + disk_str(factor.blaschke.disk);
    out += ", \"zeros\": " + grouped_str(factor.blaschke.zeros) + "},\n";
    out += "      \"log_series\": " + series_str(factor.log_part, "      ") +
           "\n";
    out += j + 1 < fact.factors.size() ? "    },\n" : "    }\n";
  }
  out += "  ],\n";
  out += "  \"residual\": " + fmt(fact.residual) + "\n}\n";
  return out;
}

std::string certificate_json(const UnimodularCertificate& cert) {
  std::string out = "{\n  \"schema_version\": 1,\n";
  out += "  \"delta\": " + fmt(cert.delta) + ",\n";
  out += "  \"residual\": " + fmt(cert.residual) + ",\n";
  out += "  \"basis_size\": " + std::to_string(cert.basis_size) + ",\n";
  out += "  \"collocation_samples\": " +
         std::to_string(cert.collocation_samples) + ",\n";
  out += "  \"norms\": [";
  for (std::size_t i = 0; i < cert.norms.size(); ++i) {
    if (i) out += ", ";
    out += fmt(cert.norms[i]);
  }
  out += "],\n";
  out += "  \"bezout\": [\n";
  for (std::size_t i = 0; i < cert.bezout.size(); ++i) {
    out += "    " + parts_str(cert.bezout[i], "    ");
    out += i + 1 < cert.bezout.size() ? ",\n" : "\n";
  }
  out += "  ]\n}\n";
  return out;
}

std::string perturbation_json(const PerturbationResult& result) {
  std::string out = "{\n  \"schema_version\": 1,\n";
  out += "  \"distance\": " + fmt(result.distance) + ",\n";
  out += "  \"delta_out\": " + fmt(result.delta_out) + ",\n";
  out += "  \"seed\": " + std::to_string(result.seed) + ",\n";
  out += "  \"f\": {\"zeros\": " + grouped_str(result.f.zeros()) +
         ", \"poles\": " + grouped_str(result.f.poles()) +
         ", \"scale\": " + pair_str(result.f.scale()) + "},\n";
  out += "  \"g\": {\"zeros\": " + grouped_str(result.g.zeros()) +
         ", \"poles\": " + grouped_str(result.g.poles()) +
         ", \"scale\": " + pair_str(result.g.scale()) + "},\n";
  out += "  \"shifts\": [\n";
  for (std::size_t i = 0; i < result.shifts.size(); ++i) {
    const ZeroShift& s = result.shifts[i];
    out += "    {\"component\": " + std::to_string(s.component) +
           ", \"from\": " + pair_str(s.from) + ", \"to\": " + pair_str(s.to) +
           ", \"change\": " + fmt(s.change) + "}";
    out += i + 1 < result.shifts.size() ? ",\n" : "\n";
  }
  if (result.shifts.empty()) {
    out.pop_back();  // drop the newline after "[\n"
    out += "],\n";
  } else {
    out += "  ],\n";
  }
  out += "  \"certificate\": ";
  // Nest the certificate body with one extra indent level.
  std::string cert = certificate_json(result.certificate);
  if (!cert.empty() && cert.back() == '\n') cert.pop_back();
  std::string nested;
  for (std::size_t i = 0; i < cert.size(); ++i) {
    nested += cert[i];
    if (cert[i] == '\n' && i + 1 < cert.size()) nested += "  ";
  }
  out += nested + "\n}\n";
  return out;
}

std::string lower_bound_json(const LowerBound& lb) {
  std::string out = "{\n  \"schema_version\": 1,\n";
  out += "  \"delta\": " + fmt(lb.value) + ",\n";
  out += "  \"argmin\": " + pair_str(lb.argmin) + ",\n";
  out += "  \"grid\": {\"radial\": " + std::to_string(lb.grid.radial) +
         ", \"angular\": " + std::to_string(lb.grid.angular) + "},\n";
  out += "  \"unimodular\": ";
  out += lb.value > tol::delta_min ? "true" : "false";
  out += "\n}\n";
  return out;
}

std::string zeros_json(const std::vector<std::pair<Complex, int>>& zeros) {
  std::string out = "{\n  \"schema_version\": 1,\n  \"zeros\": [";
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    if (i) out += ", ";
    out += triple_str(zeros[i].first, zeros[i].second);
  }
  out += "]\n}\n";
  return out;
}

std::string blaschke_report_json(const std::vector<GeneralizedBlaschke>& factors,
                                 const std::vector<double>& modulus_defects) {
  std::string out = "{\n  \"schema_version\": 1,\n  \"components\": [\n";
  for (std::size_t j = 0; j < factors.size(); ++j) {
    out += "    {\"component\": " + std::to_string(j) + ", \"exterior\": ";
    out += factors[j].exterior ? "true" : "false";
    out += ", \"zeros\": " + grouped_str(factors[j].zeros);
    out += ", \"modulus_defect\": " + fmt(modulus_defects[j]) + "}";
    out += j + 1 < factors.size() ? ",\n" : "\n";
  }
  out += "  ]\n}\n";
  return out;
}

std::string grid_csv(const std::vector<ComplexRational>& fs,
                     const CircularDomain& domain, int radial, int angular) {
  const auto pts = polar_grid(domain, radial, angular, 0.0);
  std::string out = "x,y,value\n";
  for (Complex z : pts) {
    double s = 0.0;
    for (const auto& f : fs) s += std::abs(f(z));
    out += fmt(z.real()) + "," + fmt(z.imag()) + "," + fmt(s) + "\n";
  }
  return out;
}

}  // namespace circdom::io
