#pragma once

#include <stdexcept>
#include <string>

#include "circdom/corona.hpp"
#include "circdom/factorization.hpp"
#include "circdom/geometry.hpp"
#include "circdom/rational.hpp"
#include "circdom/series.hpp"

namespace circdom::io {

// File system failures (open/read/write) are distinct from validation and
// numerical errors; the CLI maps them to exit 74.
struct IoFailure : std::runtime_error {
  explicit IoFailure(const std::string& what) : std::runtime_error(what) {}
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Parsers accept schema_version 1 or an absent field and throw Validation
// errors (InvalidJson, SchemaMismatch, InvalidDisk, InvalidFunction, or a
// domain violation name) on bad input.
CircularDomain parse_domain(const std::string& text);
ComplexRational parse_function(const std::string& text);
// Inline circle literal "[re,im,r]" as passed to --circle.
Disk parse_circle(const std::string& text);

// Canonical emitters: fixed key order, two-space indent, every double
// printed with 17 significant digits, so identical values give identical
// bytes. Zero and pole lists are grouped into [re, im, multiplicity]
// triples by exact value.
std::string domain_json(const CircularDomain& domain);
std::string function_json(const ComplexRational& f);
std::string decomposition_json(const CauchyParts& parts, double residual);
std::string factorization_json(const Factorization& fact);
std::string certificate_json(const UnimodularCertificate& cert);
std::string perturbation_json(const PerturbationResult& result);
std::string lower_bound_json(const LowerBound& lb);
std::string zeros_json(const std::vector<std::pair<Complex, int>>& zeros);
std::string blaschke_report_json(const std::vector<GeneralizedBlaschke>& factors,
                                 const std::vector<double>& modulus_defects);

// Polar-raster CSV with header x,y,value where value = sum of |f_i(z)|.
std::string grid_csv(const std::vector<ComplexRational>& fs,
                     const CircularDomain& domain, int radial, int angular);

}  // namespace circdom::io
