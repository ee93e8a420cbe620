#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "problem_file.hpp"

namespace loccwit::cli {

inline const std::vector<std::string>& verdict_vocabulary() {
  static const std::vector<std::string> v = {
      "CERTIFIED_INDISTINGUISHABLE", "INCONCLUSIVE",           "ALL_PRODUCT_PROBABILISTICALLY_DISTINGUISHABLE",
      "CONTAINS_ENTANGLED_LOCC_INDISTINGUISHABLE", "PROTOCOL_DISTINGUISHES", "PROTOCOL_FAILS"};
  return v;
}

/// Machine-readable result of one subcommand.
struct Report {
  std::string tool = "loccwit";
  std::string version = LOCCWIT_VERSION;
  std::string command;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  std::string verdict;
  std::optional<double> margin;
  std::vector<double> source_schmidt;
  std::vector<double> target_average;
  std::vector<double> source_partial_sums;
  std::vector<double> average_partial_sums;
  std::vector<std::string> warnings;
  std::vector<std::string> notes;
  ordered_json details = ordered_json::object();  // command-specific fields
  ordered_json input = ordered_json::object();    // echo of the parsed input

  /// Fills verdict, margin, vectors, trace and notes from a witness report.
  void absorb(const WitnessReport& r);
};

std::string write_report(const Report& r);
/// Throws ParseError on malformed reports or unknown verdict strings.
Report parse_report(const std::string& text);

}  // namespace loccwit::cli
