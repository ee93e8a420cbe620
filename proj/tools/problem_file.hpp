#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "loccwit/pure_state.hpp"
#include "loccwit/witness.hpp"

namespace loccwit::cli {

using ordered_json = nlohmann::ordered_json;

/// Input error with a location: a JSON field path or a line/column.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NamedState {
  std::string name;
  PureState state;
};

struct DetectorBlock {
  SubsystemLayout layout;
  std::vector<NamedState> states;
  std::vector<double> probs;
};

/// Documented command and outcome for a bundled fixture.
struct Expectation {
  std::string command;
  std::vector<std::string> args;
  std::string verdict;
};

struct ProblemFile {
  std::string comment;
  std::optional<Expectation> expect;
  SubsystemLayout layout;
  std::vector<NamedState> states;
  std::optional<DetectorBlock> detectors;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;

  std::vector<PureState> pure_states() const;
  /// Requires a detector block. Probabilities within 1e-8 of summing to 1 are
  /// rescaled to sum to 1.
  WitnessProblem witness_problem(double tol) const;
};

ProblemFile parse_problem(const std::string& text, const std::string& source = "<input>");
ProblemFile read_problem(const std::string& path);

ordered_json to_json(const ProblemFile& f);
std::string write_problem(const ProblemFile& f);

/// Problem file carrying a witness problem's states, detectors and weights.
ProblemFile problem_from_witness(const WitnessProblem& p, std::string comment = {});
ProblemFile problem_from_states(const std::vector<PureState>& states, std::string comment = {},
                                const std::string& name_prefix = "psi");

ordered_json amplitudes_to_json(const PureState& s);
ordered_json layout_to_json(const SubsystemLayout& l);

}  // namespace loccwit::cli
