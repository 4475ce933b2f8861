#include "snowlab/analysis/report.hpp"

namespace snowlab {

Json make_report(const std::string& op, Json params, std::uint64_t seed) {
  Json r;
  r["schema"] = kReportSchema;
  r["tool_version"] = kToolVersion;
  r["op"] = op;
  r["params"] = std::move(params);
  r["seed"] = seed;
  r["samples"] = nullptr;
  r["estimate"] = nullptr;
  r["std_error"] = nullptr;
  r["pass"] = false;
  return r;
}

Json bias_json(const BiasReport& b) {
  Json j;
  j["relation_id"] = b.relation_id;
  j["samples"] = b.samples;
  j["zeros"] = b.zeros;
  j["estimate"] = b.estimate;
  j["std_error"] = b.std_error;
  j["probability"] = b.probability();
  j["bias"] = b.bias();
  j["sigmas"] = b.sigmas();
  j["seed"] = b.seed;
  return j;
}

void attach_bias(Json& report, const BiasReport& b) {
  report["samples"] = b.samples;
  report["estimate"] = b.estimate;
  report["std_error"] = b.std_error;
  report["relation"] = bias_json(b);
}

std::string dump_report(const Json& report) { return report.dump(2); }

}  // namespace snowlab
