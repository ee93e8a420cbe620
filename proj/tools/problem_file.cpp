#include "problem_file.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace loccwit::cli {

namespace {

constexpr double kFileProbTolerance = 1e-8;

[[noreturn]] void fail(const std::string& source, const std::string& path, const std::string& what) {
  throw ParseError(source + ": field " + path + ": " + what);
}

const ordered_json& require(const ordered_json& obj, const char* key, const std::string& source,
                            const std::string& path) {
  if (!obj.is_object()) fail(source, path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(source, path + "/" + key, "missing");
  return *it;
}

double as_number(const ordered_json& v, const std::string& source, const std::string& path) {
  if (!v.is_number()) fail(source, path, "expected a number, got " + std::string(v.type_name()));
  return v.get<double>();
}

SubsystemLayout parse_layout(const ordered_json& v, const std::string& source, const std::string& path) {
  if (!v.is_object() || v.empty()) fail(source, path, "expected a nonempty object of label: dimension");
  std::vector<Part> parts;
  for (auto it = v.begin(); it != v.end(); ++it) {
    if (!it.value().is_number_unsigned() || it.value().get<std::size_t>() == 0)
      fail(source, path + "/" + it.key(), "dimension must be a positive integer");
    parts.push_back({it.key(), it.value().get<std::size_t>()});
  }
  try {
    return SubsystemLayout(std::move(parts));
  } catch (const std::invalid_argument& e) {
    fail(source, path, e.what());
  }
}

std::vector<NamedState> parse_states(const ordered_json& v, const SubsystemLayout& layout, const std::string& source,
                                     const std::string& path) {
  if (!v.is_array() || v.empty()) fail(source, path, "expected a nonempty array of states");
  std::vector<NamedState> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string here = path + "/" + std::to_string(i);
    const auto& entry = v[i];
    std::string name = "psi" + std::to_string(i + 1);
    if (entry.is_object() && entry.contains("name")) {
      if (!entry["name"].is_string()) fail(source, here + "/name", "expected a string");
      name = entry["name"].get<std::string>();
    }
    const auto& amps = require(entry, "amplitudes", source, here);
    const std::string apath = here + "/amplitudes";
    if (!amps.is_array()) fail(source, apath, "expected an array of [re, im] pairs");
    if (amps.size() != layout.total_dim())
      fail(source, apath,
           "expected " + std::to_string(layout.total_dim()) + " amplitudes for layout " + layout.to_string() +
               ", got " + std::to_string(amps.size()));
    std::vector<Complex> values;
    for (std::size_t k = 0; k < amps.size(); ++k) {
      const std::string kpath = apath + "/" + std::to_string(k);
      if (!amps[k].is_array() || amps[k].size() != 2) fail(source, kpath, "expected a [re, im] pair");
      values.emplace_back(as_number(amps[k][0], source, kpath + "/0"), as_number(amps[k][1], source, kpath + "/1"));
    }
    try {
      out.push_back({name, PureState(layout, values)});
    } catch (const std::invalid_argument& e) {
      fail(source, apath, e.what());
    }
  }
  return out;
}

}  // namespace

std::vector<PureState> ProblemFile::pure_states() const {
  std::vector<PureState> out;
  for (const auto& s : states) out.push_back(s.state);
  return out;
}

WitnessProblem ProblemFile::witness_problem(double tol_) const {
  if (!detectors) throw ParseError("problem has no detectors block");
  std::vector<PureState> dets;
  for (const auto& d : detectors->states) dets.push_back(d.state);
  std::vector<double> probs = detectors->probs;
  double total = 0.0;
  for (double p : probs) total += p;
  if (std::abs(total - 1.0) > kFileProbTolerance)
    throw ParseError("field /detectors/probs: probabilities sum to " + std::to_string(total) + ", expected 1");
  if (std::abs(total - 1.0) > 1e-12)
    for (double& p : probs) p /= total;
  return WitnessProblem(pure_states(), std::move(dets), std::move(probs), tol_);
}

ProblemFile parse_problem(const std::string& text, const std::string& source) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const nlohmann::json::parse_error& e) {
    // e.what() carries "at line L, column C".
    throw ParseError(source + ": " + e.what());
  }
  if (!doc.is_object()) throw ParseError(source + ": top level must be an object");

  ProblemFile f;
  if (doc.contains("comment")) {
    if (!doc["comment"].is_string()) fail(source, "/comment", "expected a string");
    f.comment = doc["comment"].get<std::string>();
  }
  if (doc.contains("expect")) {
    const auto& e = doc["expect"];
    Expectation x;
    const auto& cmd = require(e, "command", source, "/expect");
    const auto& verdict = require(e, "verdict", source, "/expect");
    if (!cmd.is_string() || !verdict.is_string()) fail(source, "/expect", "command and verdict must be strings");
    x.command = cmd.get<std::string>();
    x.verdict = verdict.get<std::string>();
    if (e.contains("args")) {
      if (!e["args"].is_array()) fail(source, "/expect/args", "expected an array of strings");
      for (const auto& a : e["args"]) {
        if (!a.is_string()) fail(source, "/expect/args", "expected an array of strings");
        x.args.push_back(a.get<std::string>());
      }
    }
    f.expect = std::move(x);
  }
  f.layout = parse_layout(require(doc, "layout", source, ""), source, "/layout");
  f.states = parse_states(require(doc, "states", source, ""), f.layout, source, "/states");

  if (doc.contains("detectors")) {
    const auto& d = doc["detectors"];
    DetectorBlock block{parse_layout(require(d, "layout", source, "/detectors"), source, "/detectors/layout"), {}, {}};
    block.states = parse_states(require(d, "states", source, "/detectors"), block.layout, source, "/detectors/states");
    const auto& probs = require(d, "probs", source, "/detectors");
    if (!probs.is_array()) fail(source, "/detectors/probs", "expected an array of numbers");
    double total = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      const double p = as_number(probs[i], source, "/detectors/probs/" + std::to_string(i));
      if (p < 0.0) fail(source, "/detectors/probs/" + std::to_string(i), "probability must be nonnegative");
      block.probs.push_back(p);
      total += p;
    }
    if (block.probs.size() != f.states.size() || block.states.size() != f.states.size())
      fail(source, "/detectors", "need one detector and one probability per state (" + std::to_string(f.states.size()) +
                                     " states)");
    if (std::abs(total - 1.0) > kFileProbTolerance)
      fail(source, "/detectors/probs", "probabilities sum to " + std::to_string(total) + ", expected 1 within 1e-8");
    f.detectors = std::move(block);
  }
  if (doc.contains("options")) {
    const auto& o = doc["options"];
    if (!o.is_object()) fail(source, "/options", "expected an object");
    if (o.contains("tol")) {
      f.tol = as_number(o["tol"], source, "/options/tol");
      if (!(*f.tol > 0.0)) fail(source, "/options/tol", "must be positive");
    }
    if (o.contains("seed")) {
      if (!o["seed"].is_number_unsigned()) fail(source, "/options/seed", "expected a nonnegative integer");
      f.seed = o["seed"].get<std::uint64_t>();
    }
  }
  return f;
}

ProblemFile read_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str(), path);
}

ordered_json layout_to_json(const SubsystemLayout& l) {
  ordered_json out = ordered_json::object();
  for (const auto& p : l.parts()) out[p.label] = p.dim;
  return out;
}

ordered_json amplitudes_to_json(const PureState& s) {
  ordered_json out = ordered_json::array();
  for (std::size_t i = 0; i < s.dim(); ++i) out.push_back({s.amplitude(i).real(), s.amplitude(i).imag()});
  return out;
}

namespace {

ordered_json states_to_json(const std::vector<NamedState>& states) {
  ordered_json out = ordered_json::array();
  for (const auto& s : states) out.push_back({{"name", s.name}, {"amplitudes", amplitudes_to_json(s.state)}});
  return out;
}

}  // namespace

ordered_json to_json(const ProblemFile& f) {
  ordered_json doc;
  if (!f.comment.empty()) doc["comment"] = f.comment;
  if (f.expect) {
    doc["expect"] = {{"command", f.expect->command}, {"args", f.expect->args}, {"verdict", f.expect->verdict}};
  }
  doc["layout"] = layout_to_json(f.layout);
  doc["states"] = states_to_json(f.states);
  if (f.detectors) {
    doc["detectors"] = {{"layout", layout_to_json(f.detectors->layout)},
                        {"states", states_to_json(f.detectors->states)},
                        {"probs", f.detectors->probs}};
  }
  if (f.tol || f.seed) {
    ordered_json o = ordered_json::object();
    if (f.tol) o["tol"] = *f.tol;
    if (f.seed) o["seed"] = *f.seed;
    doc["options"] = o;
  }
  return doc;
}

std::string write_problem(const ProblemFile& f) { return to_json(f).dump(2) + "\n"; }

ProblemFile problem_from_states(const std::vector<PureState>& states, std::string comment,
                                const std::string& name_prefix) {
  if (states.empty()) throw std::invalid_argument("no states to write");
  ProblemFile f;
  f.comment = std::move(comment);
  f.layout = states.front().layout();
  for (std::size_t i = 0; i < states.size(); ++i)
    f.states.push_back({name_prefix + std::to_string(i + 1), states[i]});
  return f;
}

ProblemFile problem_from_witness(const WitnessProblem& p, std::string comment) {
  ProblemFile f = problem_from_states(p.states(), std::move(comment));
  DetectorBlock block{p.detector_layout(), {}, p.probs()};
  for (std::size_t i = 0; i < p.size(); ++i) block.states.push_back({"phi" + std::to_string(i + 1), p.detectors()[i]});
  f.detectors = std::move(block);
  return f;
}

}  // namespace loccwit::cli
