#include "circdom/cli.hpp"

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "circdom/blaschke.hpp"
#include "circdom/cauchy.hpp"
#include "circdom/corona.hpp"
#include "circdom/errors.hpp"
#include "circdom/factorization.hpp"
#include "circdom/geometry.hpp"
#include "circdom/io.hpp"
#include "circdom/rational.hpp"

namespace circdom::cli {

namespace {

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    io::write_file(out_path, text);
  }
}

CircularDomain load_domain(const std::string& path) {
  return io::parse_domain(io::read_file(path));
}

ComplexRational load_function(const std::string& path) {
  return io::parse_function(io::read_file(path));
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"circular-domain function toolkit"};
  app.require_subcommand(1);

  std::string domain_path, f_path, g_path, out_path, circle_literal;
  double epsilon = 0.1;
  bool symmetric = false;
  int samples = 256;
  int series = 512;
  std::uint64_t seed = 0;
  int grid_res = 64;

  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", out_path, "output file (default: stdout)");
  };

  CLI::App* validate = app.add_subcommand("validate", "check a domain file");
  validate->add_option("--domain", domain_path)->required();
  add_out(validate);

  CLI::App* decompose =
      app.add_subcommand("decompose", "additive component decomposition");
  decompose->add_option("--domain", domain_path)->required();
  decompose->add_option("--f", f_path)->required();
  decompose->add_option("--samples", samples, "initial samples per circle");
  add_out(decompose);

  CLI::App* factorize =
      app.add_subcommand("factorize", "multiplicative factorization");
  factorize->add_option("--domain", domain_path)->required();
  factorize->add_option("--f", f_path)->required();
  factorize->add_flag("--symmetric", symmetric, "symmetrize the factorization");
  add_out(factorize);

  CLI::App* winding =
      app.add_subcommand("winding", "winding number about a circle");
  winding->add_option("--f", f_path)->required();
  winding->add_option("--circle", circle_literal, "[re,im,r]")->required();
  winding->add_option("--samples", samples);

  CLI::App* zeros = app.add_subcommand("zeros", "zeros inside the domain");
  zeros->add_option("--domain", domain_path)->required();
  zeros->add_option("--f", f_path)->required();
  add_out(zeros);

  CLI::App* blaschke_eval = app.add_subcommand(
      "blaschke-eval", "per-component Blaschke factors and modulus defects");
  blaschke_eval->add_option("--domain", domain_path)->required();
  blaschke_eval->add_option("--f", f_path)->required();
  blaschke_eval->add_option("--samples", samples, "boundary samples per circle");
  add_out(blaschke_eval);

  CLI::App* corona_check = app.add_subcommand(
      "corona-check", "lower bound of the modulus sum over the domain");
  corona_check->add_option("--domain", domain_path)->required();
  corona_check->add_option("--f", f_path)->required();
  corona_check->add_option("--g", g_path);
  add_out(corona_check);

  CLI::App* bezout =
      app.add_subcommand("bezout", "solve the Bezout identity sum x_i f_i = 1");
  bezout->add_option("--domain", domain_path)->required();
  bezout->add_option("--f", f_path)->required();
  bezout->add_option("--g", g_path);
  bezout->add_option("--series", series, "basis order cap");
  bezout->add_flag("--symmetric", symmetric, "symmetrize the certificate");
  add_out(bezout);

  CLI::App* perturb = app.add_subcommand(
      "perturb", "approximate a pair by a unimodular pair within epsilon");
  perturb->add_option("--domain", domain_path)->required();
  perturb->add_option("--f", f_path)->required();
  perturb->add_option("--g", g_path)->required();
  perturb->add_option("--epsilon", epsilon);
  perturb->add_flag("--symmetric", symmetric);
  perturb->add_option("--seed", seed, "perturbation direction seed");
  perturb->add_option("--series", series, "Bezout basis order cap");
  add_out(perturb);

  CLI::App* grid =
      app.add_subcommand("grid", "CSV raster of |f|+|g| over the domain");
  grid->add_option("--domain", domain_path)->required();
  grid->add_option("--f", f_path)->required();
  grid->add_option("--g", g_path);
  grid->add_option("--grid-res", grid_res, "radial resolution");
  add_out(grid);

  try {
    app.parse(argc, argv);

    if (validate->parsed()) {
      const CircularDomain domain = load_domain(domain_path);
      emit(io::domain_json(domain), out_path);
      return 0;
    }

    if (decompose->parsed()) {
      const CircularDomain domain = load_domain(domain_path);
      const ComplexRational f = load_function(f_path);
      DecomposeOptions opts;
      opts.initial_samples = samples;
      const CauchyParts parts = cauchy_decompose(f, domain, opts);
      const double residual = decompose_residual(parts, f.evaluator(), domain);
      emit(io::decomposition_json(parts, residual), out_path);
      return 0;
    }

    if (factorize->parsed()) {
      const CircularDomain domain = load_domain(domain_path);
      const ComplexRational f = load_function(f_path);
      Factorization fact = multiplicative_factorize(f, domain);
      if (symmetric) fact = symmetrize_factorization(fact, f, domain);
      emit(io::factorization_json(fact), out_path);
      return 0;
    }

    if (winding->parsed()) {
      const ComplexRational f = load_function(f_path);
      const Disk disk = io::parse_circle(circle_literal);
      Contour contour;
      contour.disk = disk;
      contour.offset = 0.0;
      contour.samples = samples;
      const int w = winding_number(f, contour);
      std::printf("%d\n", w);
      return 0;
    }

    if (zeros->parsed()) {
      const CircularDomain domain = load_domain(domain_path);
      const ComplexRational f = load_function(f_path);
      emit(io::zeros_json(f.zeros_in(domain)), out_path);
      return 0;
    }

    if (blaschke_eval->parsed()) {
      const CircularDomain domain = load_domain(domain_path);
      const ComplexRational f = load_function(f_path);
      std::vector<Complex> interior;
      for (const auto& [z, m] : f.zeros_in(domain))
        for (int k = 0; k < m; ++k) interior.push_back(z);
      const auto grouped = split_zeros(interior, domain);
      std::vector<GeneralizedBlaschke> factors;
      std::vector<double> defects;
      for (int j = 0; j < domain.connectivity(); ++j) {
        factors.push_back(blaschke_for_component(domain, j, grouped[j]));
        const auto ring = component_contour(domain, j, 0.0, samples).points();
        double defect = 0.0;
        for (Complex z : ring)
          defect = std::max(defect, std::abs(std::abs(factors[j].eval(z)) - 1.0));
        defects.push_back(defect);
      }
      emit(io::blaschke_report_json(factors, defects), out_path);
      return 0;
    }

    if (corona_check->parsed()) {
      const CircularDomain domain = load_domain(domain_path);
      std::vector<ComplexRational> fs = {load_function(f_path)};
      if (!g_path.empty()) fs.push_back(load_function(g_path));
      emit(io::lower_bound_json(lower_bound(fs, domain)), out_path);
      return 0;
    }

    if (bezout->parsed()) {
      const CircularDomain domain = load_domain(domain_path);
      std::vector<ComplexRational> fs = {load_function(f_path)};
      if (!g_path.empty()) fs.push_back(load_function(g_path));
      BezoutOptions opts;
      opts.max_basis = series;
      UnimodularCertificate cert = bezout_solve(fs, domain, opts);
      if (symmetric) cert = symmetrize_bezout(fs, cert, domain);
      emit(io::certificate_json(cert), out_path);
      return 0;
    }

    if (perturb->parsed()) {
      const CircularDomain domain = load_domain(domain_path);
      const ComplexRational f = load_function(f_path);
      const ComplexRational g = load_function(g_path);
      PerturbOptions opts;
      opts.epsilon = epsilon;
      opts.symmetric = symmetric;
      opts.seed = seed;
      opts.bezout.max_basis = series;
      const PerturbationResult result =
          approximate_by_unimodular(f, g, domain, opts);
      emit(io::perturbation_json(result), out_path);
      return 0;
    }

    if (grid->parsed()) {
      const CircularDomain domain = load_domain(domain_path);
      std::vector<ComplexRational> fs = {load_function(f_path)};
      if (!g_path.empty()) fs.push_back(load_function(g_path));
      emit(io::grid_csv(fs, domain, grid_res, 4 * grid_res), out_path);
      return 0;
    }

    std::cerr << "UsageError: no subcommand selected\n";
    return 64;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "UsageError: " << e.what() << "\n";
    return 64;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return e.kind() == ErrorKind::Validation ? 2 : 3;
  } catch (const io::IoFailure& e) {
    std::cerr << "IoError: " << e.what() << "\n";
    return 74;
  }
}

}  // namespace circdom::cli
