#include <cmath>

#include <json.hpp>

#include "cosparse/io.hpp"

namespace cosparse::io {
namespace {

using Json = nlohmann::ordered_json;

Json number_or_null(double value) {
  if (!std::isfinite(value)) return nullptr;
  return value;
}

}  // namespace

std::string descriptor_to_json(const SensingDescriptor& descriptor) {
  Json j;
  j["kind"] = std::string(to_string(descriptor.kind));
  j["m"] = descriptor.m;
  j["n"] = descriptor.n;
  j["seed"] = descriptor.seed;
  return j.dump(2) + "\n";
}

SensingDescriptor descriptor_from_json(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("descriptor is not valid JSON: ") + e.what());
  }
  SensingDescriptor d;
  try {
    const auto kind = parse_sensing_kind(j.at("kind").get<std::string>());
    if (!kind) throw ParseError("unknown sensing kind '" + j.at("kind").get<std::string>() + "'");
    d.kind = *kind;
    d.m = j.at("m").get<Index>();
    d.n = j.at("n").get<Index>();
    d.seed = j.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("descriptor is missing a field: ") + e.what());
  }
  return d;
}

std::string report_to_json(const RecoveryReport& report) {
  Json j;
  j["method"] = report.method;
  j["n"] = report.n;
  j["d"] = report.d;
  j["m"] = report.m;
  j["eps"] = report.eps;
  j["objective"] = report.objective;
  j["feasibility"] = report.feasibility;
  j["iterations"] = report.iterations;
  j["converged"] = report.converged;
  if (report.diagnostics) {
    j["cone_slack"] = report.diagnostics->cone_slack;
    j["tube_norm"] = report.diagnostics->tube_norm;
  } else {
    j["cone_slack"] = nullptr;
    j["tube_norm"] = nullptr;
  }
  if (report.relative_error) j["relative_error"] = *report.relative_error;
  if (report.diagnostics) {
    j["tail_lhs"] = number_or_null(report.diagnostics->tail_lhs);
    j["tail_rhs"] = number_or_null(report.diagnostics->tail_rhs);
    j["tail_holds"] = report.diagnostics->tail_holds;
  }
  return j.dump(2) + "\n";
}

std::string estimate_to_json(const DripEstimate& estimate) {
  Json j;
  j["s"] = estimate.s;
  j["delta_hat"] = estimate.delta_hat;
  j["method"] = std::string(to_string(estimate.method));
  j[estimate.method == DripMethod::monte_carlo ? "trials" : "supports_checked"] = estimate.count;
  j["seed"] = estimate.seed;
  return j.dump(2) + "\n";
}

std::string constants_to_json(const ConstantsReport& c) {
  Json j;
  j["c1"] = c.c1;
  j["c2"] = c.c2;
  j["rho"] = c.rho;
  j["delta_sM"] = c.delta_sM;
  j["delta_M"] = c.delta_M;
  j["K1"] = number_or_null(c.K1);
  j["K2"] = number_or_null(c.K2);
  j["C0"] = number_or_null(c.C0);
  j["C1"] = number_or_null(c.C1);
  j["valid"] = c.valid;
  j["k2_variant"] = c.variant == K2Variant::verbatim ? "verbatim" : "derived";
  if (!c.diagnostic.empty()) j["diagnostic"] = c.diagnostic;
  return j.dump(2) + "\n";
}

}  // namespace cosparse::io
