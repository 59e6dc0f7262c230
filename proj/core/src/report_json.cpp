#include "ophh/report_json.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>

#include "json.hpp"
#include "ophh/errors.hpp"

namespace ophh {
namespace {

nlohmann::json vector_to_json(const ComplexVector& x) {
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    re.push_back(x(i).real());
    im.push_back(x(i).imag());
  }
  nlohmann::json j;
  j["real"] = std::move(re);
  j["imag"] = std::move(im);
  return j;
}

nlohmann::json witness_to_json(const TheoremWitness& w) {
  nlohmann::json j;
  j["trial"] = w.trial;
  j["lambda"] = w.lambda ? nlohmann::json(*w.lambda) : nlohmann::json(nullptr);
  j["min_eig"] = w.min_eig;
  j["A"] = w.a ? nlohmann::json::parse(matrix_to_json(*w.a)) : nlohmann::json(nullptr);
  j["B"] = w.b ? nlohmann::json::parse(matrix_to_json(*w.b)) : nlohmann::json(nullptr);
  j["x"] = w.x ? vector_to_json(*w.x) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json meta_block() {
  char buf[32];
  const std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  nlohmann::json meta;
  meta["timestamp"] = buf;
  return meta;
}

}  // namespace

std::string suite_result_to_json(const SuiteResult& result, bool with_meta) {
  nlohmann::json j;
  j["theorem"] = result.check_name;
  j["seed"] = result.master_seed;
  j["trials"] = result.trials;
  j["dim"] = result.dim;
  j["min_slack"] = result.min_slack;
  j["tolerance"] = result.max_tolerance;
  j["verdict"] = result.verdict();
  j["failures"] = result.failure_count;
  j["vacuous"] = result.vacuous_count;
  j["pairs"] = to_string(result.pair_source);
  j["inputs"] = result.inputs_digest;
  nlohmann::json witnesses = nlohmann::json::array();
  for (const TheoremWitness& w : result.witnesses) witnesses.push_back(witness_to_json(w));
  j["witnesses"] = std::move(witnesses);
  if (!result.quantities.empty()) {
    nlohmann::json q;
    for (const auto& [k, v] : result.quantities) q[k] = v;
    j["quantities"] = std::move(q);
  }
  if (with_meta) j["meta"] = meta_block();
  return j.dump(2);
}

std::string inequality_report_to_json(const InequalityReport& report, bool with_meta) {
  nlohmann::json j;
  j["theorem"] = report.name;
  j["seed"] = 0;
  j["trials"] = 1;
  j["dim"] = report.witness && report.witness->a ? report.witness->a->dim() : 0;
  j["min_slack"] = report.min_slack();
  j["tolerance"] = report.max_tolerance();
  j["verdict"] = report.holds() ? "pass" : "fail";
  j["inputs"] = report.inputs_digest;
  nlohmann::json sides = nlohmann::json::array();
  for (const SideCheck& s : report.sides) {
    nlohmann::json side;
    side["label"] = s.label;
    side["min_eigenvalue"] = s.min_eigenvalue;
    side["tolerance"] = s.tolerance;
    side["holds"] = s.holds;
    sides.push_back(std::move(side));
  }
  j["sides"] = std::move(sides);
  nlohmann::json witnesses = nlohmann::json::array();
  if (report.witness) witnesses.push_back(witness_to_json(*report.witness));
  j["witnesses"] = std::move(witnesses);
  if (!report.quantities.empty()) {
    nlohmann::json q;
    for (const auto& [k, v] : report.quantities) q[k] = v;
    j["quantities"] = std::move(q);
  }
  if (with_meta) j["meta"] = meta_block();
  return j.dump(2);
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw InputError("cannot open " + tmp.string() + " for writing");
    }
    out << text << '\n';
    out.flush();
    if (!out) {
      throw InputError("failed while writing " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw InputError("failed to move report into place at " + path.string() + ": " +
                     ec.message());
  }
}

}  // namespace ophh
