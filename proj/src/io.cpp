#include "normctl/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>

#include "normctl/errors.hpp"

namespace normctl {

std::string format_g17(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

ojson json_double(double v) {
  // JSON has no inf/nan literals; reports carry them as strings so the files
  // stay parseable and the markers survive a round trip.
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

}  // namespace

ojson element_to_json(const AlgebraElement& a) {
  ojson j;
  if (element_is_torus(a)) {
    const auto& f = std::get<TorusPolynomial>(a);
    j["type"] = "torus_poly";
    ojson coeffs = ojson::array();
    for (const auto& [k, c] : f.coeffs()) coeffs.push_back({k, c.real(), c.imag()});
    j["coeffs"] = std::move(coeffs);
  } else {
    const auto& m = std::get<ComplexMatrix>(a);
    j["type"] = "matrix";
    j["n"] = m.dim();
    ojson entries = ojson::array();
    for (int i = 0; i < m.dim(); ++i)
      for (int k = 0; k < m.dim(); ++k) {
        entries.push_back(m.at(i, k).real());
        entries.push_back(m.at(i, k).imag());
      }
    j["entries"] = std::move(entries);
  }
  return j;
}

AlgebraElement element_from_json(const ojson& j) {
  try {
    const std::string type = j.at("type").get<std::string>();
    if (type == "torus_poly") {
      TorusPolynomial f;
      for (const auto& entry : j.at("coeffs")) {
        if (!entry.is_array() || entry.size() != 3)
          throw ConfigError("torus_poly coeff entries must be [k, re, im]");
        const int k = entry[0].get<int>();
        f.set_coeff(k, cdouble(entry[1].get<double>(), entry[2].get<double>()));
      }
      return f;
    }
    if (type == "matrix") {
      const int n = j.at("n").get<int>();
      if (n < 1) throw ConfigError("matrix dimension must be >= 1");
      const auto& entries = j.at("entries");
      if (!entries.is_array() || entries.size() != static_cast<std::size_t>(2 * n * n))
        throw ConfigError("matrix entries must hold 2*n*n reals (re, im pairs)");
      ComplexMatrix m(n);
      std::size_t pos = 0;
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
          const double re = entries[pos++].get<double>();
          const double im = entries[pos++].get<double>();
          m.at(i, k) = cdouble(re, im);
        }
      return m;
    }
    throw ConfigError("unknown element type: " + type);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed element JSON: ") + e.what());
  }
}

AlgebraElement load_element(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open element file: " + path);
  ojson j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("cannot parse ") + path + ": " + e.what());
  }
  return element_from_json(j);
}

void save_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw DomainError("cannot open output path: " + path);
  out << text;
  if (!out) throw DomainError("write failed: " + path);
}

void save_json(const std::string& path, const ojson& j) {
  save_text(path, j.dump(2) + "\n");
}

AlgebraPair pair_from_name(const std::string& name) {
  if (name == "c1") return AlgebraPair::c1_in_c();
  if (name == "approx") {
    ApproxParams params;
    params.p = 2.0;
    params.weight = WeightFunction::pow_r(0.5);
    params.n_max = 8;
    return AlgebraPair::approx_space(params);
  }
  throw ConfigError("unknown pair name: " + name + " (expected c1 or approx)");
}

ojson to_json(const DiffNormCertificate& cert) {
  ojson j;
  j["pair"] = cert.pair_name;
  j["measured_C"] = json_double(cert.measured_C);
  j["sample_count"] = cert.sample_count;
  j["seed"] = cert.seed;
  j["worst_index"] = cert.worst_index;
  j["min_embedding_ratio"] = json_double(cert.min_embedding_ratio);
  return j;
}

ojson to_json(const InverseReport& rep) {
  ojson j;
  j["terms_used"] = rep.terms_used;
  j["residual_B"] = json_double(rep.residual_B);
  j["tail_bound"] = json_double(rep.tail_bound);
  j["norm_A_inverse"] = json_double(rep.norm_A_inverse);
  j["norm_B_inverse"] = json_double(rep.norm_B_inverse);
  j["kappa"] = json_double(rep.kappa);
  j["embedding_ratio"] = json_double(rep.embedding_ratio);
  j["inverse"] = element_to_json(rep.inverse);
  return j;
}

ojson to_json(const BoundReport& rep) {
  ojson j;
  ojson in;
  in["u"] = json_double(rep.inputs.u);
  in["v"] = json_double(rep.inputs.v);
  in["c"] = json_double(rep.inputs.c);
  j["inputs"] = std::move(in);
  j["xi"] = json_double(rep.xi);
  if (rep.M)
    j["M"] = *rep.M;
  else
    j["M"] = nullptr;
  j["product_bound"] = rep.product_overflows ? ojson(nullptr) : json_double(rep.product_bound);
  j["product_bound_ln"] = json_double(rep.product_bound_ln);
  j["product_overflows"] = rep.product_overflows;
  if (rep.asymptotic_bound_ln) {
    j["asymptotic_bound"] =
        rep.asymptotic_overflows ? ojson(nullptr) : json_double(rep.asymptotic_bound);
    j["asymptotic_bound_ln"] = json_double(*rep.asymptotic_bound_ln);
    j["asymptotic_overflows"] = rep.asymptotic_overflows;
    j["branch"] = branch_name(rep.branch);
    j["first_branch_sufficient"] = rep.first_branch_sufficient;
  } else {
    j["asymptotic_bound"] = nullptr;
    j["asymptotic_bound_ln"] = nullptr;
  }
  if (rep.measured_norm_A_inverse)
    j["measured"] = json_double(*rep.measured_norm_A_inverse);
  else
    j["measured"] = nullptr;
  j["kappa"] = json_double(rep.kappa);
  j["ratio"] = json_double(rep.ratio);
  return j;
}

ojson to_json(const VisibilityEstimate& est) {
  ojson j;
  j["delta"] = json_double(est.delta);
  j["lower_bound"] = json_double(est.lower_bound);
  j["trials"] = est.trials;
  j["feasible_count"] = est.feasible_count;
  j["seed"] = est.seed;
  j["witness_norm_A"] = json_double(est.witness_norm_A);
  j["witness_inv_norm_B"] = json_double(est.witness_inv_norm_B);
  j["witness"] = element_to_json(est.witness);
  return j;
}

ojson to_json(const QuotientRuleReport& rep) {
  ojson j;
  j["norm_C_f"] = json_double(rep.norm_C_f);
  j["norm_C1_f"] = json_double(rep.norm_C1_f);
  j["norm_C_inv"] = json_double(rep.norm_C_inv);
  j["sup_inv_deriv"] = json_double(rep.sup_inv_deriv);
  j["lhs"] = json_double(rep.lhs);
  j["rhs"] = json_double(rep.rhs);
  j["slack"] = json_double(rep.slack);
  j["holds"] = rep.holds;
  return j;
}

ojson to_json(const AnFamilyRow& row) {
  ojson j;
  j["n"] = row.n;
  j["norm_B"] = json_double(row.norm_B);
  j["norm_A"] = json_double(row.norm_A);
  j["kappa"] = json_double(row.kappa);
  j["ratio"] = json_double(row.ratio);
  j["ratio_formula"] = json_double(row.ratio_formula);
  j["inv_norm_C"] = json_double(row.inv_norm_C);
  j["inv_norm_C1"] = json_double(row.inv_norm_C1);
  j["inv_C1_over_n"] = json_double(row.inv_C1_over_n);
  j["two_pi_n"] = json_double(row.two_pi_n);
  j["product_bound_ln"] = json_double(row.product_bound_ln);
  return j;
}

ojson to_json(const BaskakovReport& rep) {
  ojson j;
  j["sup_a"] = json_double(rep.sup_a);
  j["sup_ainv"] = json_double(rep.sup_ainv);
  j["x_star"] = json_double(rep.x_star);
  j["psi_literal"] = json_double(rep.psi_literal);
  j["psi_indexed"] = json_double(rep.psi_indexed);
  j["rhs_literal"] = json_double(rep.rhs_literal);
  j["rhs_indexed"] = json_double(rep.rhs_indexed);
  j["lhs_series_l1"] = json_double(rep.lhs_series_l1);
  j["holds_literal"] = rep.holds_literal;
  j["holds_indexed"] = rep.holds_indexed;
  j["degenerate_tail"] = rep.degenerate_tail;
  return j;
}

ojson to_json(const SunReport& rep) {
  ojson j;
  j["theta"] = json_double(rep.theta);
  j["C_theta"] = json_double(rep.C_theta);
  j["samples"] = rep.samples;
  j["seed"] = rep.seed;
  j["worst_index"] = rep.worst_index;
  return j;
}

}  // namespace normctl
