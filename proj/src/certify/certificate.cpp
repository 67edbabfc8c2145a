#include "sosgap/certify/certificate.hpp"

#include <algorithm>
#include <cmath>

#include "sosgap/certify/bound.hpp"
#include "sosgap/certify/residual.hpp"
#include "sosgap/error.hpp"
#include "sosgap/io/digest.hpp"
#include "sosgap/io/group_io.hpp"
#include "sosgap/io/solver_io.hpp"
#include "sosgap/numerics/interval.hpp"

namespace sosgap {

using nlohmann::json;

namespace {

constexpr const char* kFormat = "sosgap-certificate";
constexpr int kVersion = 1;

json witness_columns(const RationalMatrix& q) {
  json cols = json::array();
  for (std::size_t j = 0; j < q.cols(); ++j) {
    json col = json::array();
    for (std::size_t i = 0; i < q.rows(); ++i) col.push_back(q(i, j).to_string());
    cols.push_back(std::move(col));
  }
  return cols;
}

std::string hash_instance(const json& generators, int radius, const std::string& basis_fp,
                          const std::string& product_fp) {
  return sha256_hex(json{{"generators", generators}, {"radius", radius}, {"basis", basis_fp}, {"product", product_fp}}
                        .dump());
}

std::string hash_witness(const json& columns, const std::string& lambda_used, int bits) {
  return sha256_hex(json{{"columns", columns}, {"lambda_used", lambda_used}, {"denominator_bits", bits}}.dump());
}

// A failed check: the name of the check and what went wrong.
struct Reject {
  std::string check;
  std::string message;
};

[[noreturn]] void reject(const std::string& check, const std::string& message) { throw Reject{check, message}; }

double hex_field(const json& doc, const char* key) {
  const std::string text = doc.at(key).get<std::string>();
  const double x = parse_hex_double(text);
  if (!std::isfinite(x) || hex_double(x) != text) reject("schema", std::string(key) + " is not a canonical hex float");
  return x;
}

void expect_equal_hex(const char* check, double stored, double recomputed) {
  if (hex_double(stored) != hex_double(recomputed)) {
    reject(check, std::string("stored ") + hex_double(stored) + ", recomputed " + hex_double(recomputed));
  }
}

}  // namespace

Certificate certify(const SosInstance& inst, const SolverSolution& solution, const SolverSettings& settings,
                    int denominator_bits) {
  if (solution.status != SolverStatus::Optimal) {
    throw InputError("certify: solver status is " + to_string(solution.status) + ", refusing to certify");
  }
  if (static_cast<std::size_t>(solution.p0.rows()) != inst.basis->size()) {
    throw InputError("certify: solution does not match the instance");
  }
  Certificate c;
  c.witness = make_witness(inst.basis, solution.p0, Rational::from_double(solution.lambda0), denominator_bits);
  c.product_fingerprint = inst.product->fingerprint();
  c.product_size = inst.product->size();
  c.prec = solution.eps;
  c.r_l1_upper = compute_residual(inst, c.witness).l1_upper;
  c.chi = chi(inst.generators());
  c.m = m_of(*inst.product, inst.generators());
  c.lambda_certified = certified_bound(c.witness.lambda_used, c.prec, c.r_l1_upper, c.m);
  c.kappa_certified = kazhdan_from_lambda(c.lambda_certified, static_cast<int>(inst.generators().size()));
  c.solver_settings = settings;
  c.solver_settings.eps = solution.eps;
  const json gens = generators_to_json(inst.generators());
  c.instance_hash = hash_instance(gens, inst.radius(), inst.basis->fingerprint(), c.product_fingerprint);
  c.settings_hash = sha256_hex(settings_to_json(c.solver_settings).dump());
  c.witness_hash = hash_witness(witness_columns(c.witness.q), c.witness.lambda_used.to_string(), denominator_bits);
  return c;
}

json certificate_to_json(const Certificate& c) {
  const Ball& basis = c.basis();
  json j;
  j["format"] = kFormat;
  j["version"] = kVersion;
  j["generators"] = generators_to_json(basis.generators());
  j["radius"] = basis.radius();
  j["basis_fingerprint"] = basis.fingerprint();
  j["product_fingerprint"] = c.product_fingerprint;
  j["basis_size"] = basis.size();
  j["product_size"] = c.product_size;
  j["denominator_bits"] = c.witness.denominator_bits;
  j["lambda_used"] = c.witness.lambda_used.to_string();
  j["witness_columns"] = witness_columns(c.witness.q);
  j["prec"] = hex_double(c.prec);
  j["r_l1_upper"] = hex_double(c.r_l1_upper);
  j["m"] = c.m;
  j["chi"] = c.chi;
  j["lambda_certified"] = hex_double(c.lambda_certified);
  j["kappa_certified"] = hex_double(c.kappa_certified);
  j["solver_settings"] = settings_to_json(c.solver_settings);
  j["provenance"] = {{"instance", c.instance_hash}, {"solver_settings", c.settings_hash}, {"witness", c.witness_hash}};
  return j;
}

std::string certificate_to_string(const Certificate& c) { return certificate_to_json(c).dump(1) + "\n"; }

VerifyReport verify_certificate(const json& doc) {
  static const std::vector<std::string> kKeys = {
      "format", "version", "generators", "radius", "basis_fingerprint", "product_fingerprint", "basis_size",
      "product_size", "denominator_bits", "lambda_used", "witness_columns", "prec", "r_l1_upper", "m", "chi",
      "lambda_certified", "kappa_certified", "solver_settings", "provenance"};
  VerifyReport report;
  try {
    try {
      if (!doc.is_object()) reject("schema", "certificate is not a JSON object");
      for (const auto& [key, value] : doc.items()) {
        if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) reject("schema", "unknown key '" + key + "'");
      }
      if (doc.at("format").get<std::string>() != kFormat) reject("schema", "wrong format tag");
      if (doc.at("version").get<int>() != kVersion) reject("schema", "unsupported version");
      const json& prov = doc.at("provenance");
      if (!prov.is_object() || prov.size() != 3) reject("schema", "provenance must hold exactly three hashes");
      const double prec = hex_field(doc, "prec");
      const double r_stored = hex_field(doc, "r_l1_upper");
      const double lambda_stored = hex_field(doc, "lambda_certified");
      const double kappa_stored = hex_field(doc, "kappa_certified");
      const int radius = doc.at("radius").get<int>();
      const int bits = doc.at("denominator_bits").get<int>();
      if (radius < 1 || radius > 64) reject("schema", "radius out of range");
      if (bits < 0 || bits > 1000) reject("schema", "denominator_bits out of range");

      // Instance: regenerate both balls from the generators.
      const GeneratingSet gens = generators_from_json(doc.at("generators"));
      const SosInstance inst = build_instance(gens, radius);
      if (inst.basis->fingerprint() != doc.at("basis_fingerprint").get<std::string>() ||
          inst.basis->size() != doc.at("basis_size").get<std::size_t>()) {
        reject("basis", "regenerated basis ball does not match");
      }
      if (inst.product->fingerprint() != doc.at("product_fingerprint").get<std::string>() ||
          inst.product->size() != doc.at("product_size").get<std::size_t>()) {
        reject("product", "regenerated product ball does not match");
      }
      const std::string instance_hash = hash_instance(doc.at("generators"), radius, inst.basis->fingerprint(),
                                                      inst.product->fingerprint());
      if (prov.at("instance").get<std::string>() != instance_hash) reject("instance_hash", "instance hash differs");

      // Solver settings.
      const SolverSettings settings = settings_from_json(doc.at("solver_settings"));
      if (settings_to_json(settings) != doc.at("solver_settings")) reject("schema", "solver settings incomplete");
      if (prov.at("solver_settings").get<std::string>() != sha256_hex(settings_to_json(settings).dump())) {
        reject("settings_hash", "solver settings hash differs");
      }
      if (hex_double(settings.eps) != hex_double(prec)) reject("prec", "prec differs from the solver eps");

      // Witness.
      const json& columns = doc.at("witness_columns");
      const std::size_t n = inst.basis->size();
      if (!columns.is_array() || columns.empty()) reject("witness_shape", "no witness columns");
      SosWitness w;
      w.basis = inst.basis;
      w.denominator_bits = bits;
      w.lambda_used = Rational::parse(doc.at("lambda_used").get<std::string>());
      if (w.lambda_used.to_string() != doc.at("lambda_used").get<std::string>()) {
        reject("schema", "lambda_used is not in lowest terms");
      }
      w.q = RationalMatrix(n, columns.size());
      for (std::size_t j = 0; j < columns.size(); ++j) {
        const json& col = columns[j];
        if (!col.is_array() || col.size() != n) reject("witness_shape", "column " + std::to_string(j) + " has wrong length");
        for (std::size_t i = 0; i < n; ++i) {
          const std::string text = col[i].get<std::string>();
          w.q(i, j) = Rational::parse(text);
          if (w.q(i, j).to_string() != text) reject("schema", "witness entry is not in lowest terms");
        }
      }
      if (prov.at("witness").get<std::string>() != hash_witness(columns, w.lambda_used.to_string(), bits)) {
        reject("witness_hash", "witness hash differs");
      }
      for (std::size_t j = 0; j < w.q.cols(); ++j) {
        Rational sum;
        for (std::size_t i = 0; i < n; ++i) sum += w.q(i, j);
        if (!sum.is_zero()) reject("augmentation", "column " + std::to_string(j) + " does not sum to zero");
      }

      // The numbers.
      const ResidualBound rb = compute_residual(inst, w);
      expect_equal_hex("residual", r_stored, rb.l1_upper);
      const int chi_value = chi(gens);
      if (doc.at("chi").get<int>() != chi_value) reject("chi", "chi differs");
      const int m = m_of(*inst.product, gens);
      if (doc.at("m").get<int>() != m) reject("m", "m differs");
      const double lambda = certified_bound(w.lambda_used, prec, rb.l1_upper, m);
      expect_equal_hex("lambda_certified", lambda_stored, lambda);
      if (!(lambda > 0.0)) reject("positive", "certified bound is not positive");
      const double kappa = kazhdan_from_lambda(lambda, static_cast<int>(gens.size()));
      expect_equal_hex("kappa_certified", kappa_stored, kappa);

      report.ok = true;
      report.lambda_certified = lambda;
      report.kappa_certified = kappa;
    } catch (const json::exception& e) {
      reject("schema", e.what());
    } catch (const Error& e) {
      reject("schema", e.what());
    }
  } catch (const Reject& r) {
    report.ok = false;
    report.failed_check = r.check;
    report.message = r.message;
  }
  return report;
}

VerifyReport verify_certificate_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    VerifyReport r;
    r.failed_check = "schema";
    r.message = e.what();
    return r;
  }
  return verify_certificate(doc);
}

}  // namespace sosgap
