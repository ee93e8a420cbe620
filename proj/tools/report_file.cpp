#include "report_file.hpp"

#include <algorithm>

namespace loccwit::cli {

void Report::absorb(const WitnessReport& r) {
  verdict = std::string(to_string(r.verdict));
  margin = r.margin;
  tol = r.tol;
  source_schmidt = r.source_schmidt.entries();
  target_average = r.target_average.entries();
  source_partial_sums = r.trace.source_partial_sums;
  average_partial_sums = r.trace.average_partial_sums;
  warnings.insert(warnings.end(), r.warnings.begin(), r.warnings.end());
  notes.insert(notes.end(), r.notes.begin(), r.notes.end());
}

std::string write_report(const Report& r) {
  ordered_json doc;
  doc["tool"] = r.tool;
  doc["version"] = r.version;
  doc["command"] = r.command;
  doc["seed"] = r.seed;
  doc["tol"] = r.tol;
  doc["verdict"] = r.verdict;
  doc["margin"] = r.margin ? ordered_json(*r.margin) : ordered_json(nullptr);
  doc["source_schmidt"] = r.source_schmidt;
  doc["target_average"] = r.target_average;
  doc["partial_sums"] = {{"source", r.source_partial_sums}, {"average", r.average_partial_sums}};
  doc["warnings"] = r.warnings;
  doc["notes"] = r.notes;
  doc["details"] = r.details;
  doc["input"] = r.input;
  return doc.dump(2) + "\n";
}

Report parse_report(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
  try {
    Report r;
    r.tool = doc.at("tool").get<std::string>();
    r.version = doc.at("version").get<std::string>();
    r.command = doc.at("command").get<std::string>();
    r.seed = doc.at("seed").get<std::uint64_t>();
    r.tol = doc.at("tol").get<double>();
    r.verdict = doc.at("verdict").get<std::string>();
    const auto& vocab = verdict_vocabulary();
    if (std::find(vocab.begin(), vocab.end(), r.verdict) == vocab.end())
      throw ParseError("report: field /verdict: unknown verdict '" + r.verdict + "'");
    if (!doc.at("margin").is_null()) r.margin = doc.at("margin").get<double>();
    r.source_schmidt = doc.at("source_schmidt").get<std::vector<double>>();
    r.target_average = doc.at("target_average").get<std::vector<double>>();
    r.source_partial_sums = doc.at("partial_sums").at("source").get<std::vector<double>>();
    r.average_partial_sums = doc.at("partial_sums").at("average").get<std::vector<double>>();
    r.warnings = doc.at("warnings").get<std::vector<std::string>>();
    r.notes = doc.at("notes").get<std::vector<std::string>>();
    r.details = doc.at("details");
    r.input = doc.at("input");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
}

}  // namespace loccwit::cli
