#include "loccwit/layout.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace loccwit {

SubsystemLayout::SubsystemLayout(std::vector<Part> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw std::invalid_argument("layout must have at least one part");
  std::set<std::string> seen;
  for (const auto& p : parts_) {
    if (p.label.empty()) throw std::invalid_argument("empty part label");
    if (p.dim == 0) throw std::invalid_argument("part '" + p.label + "' has dimension 0");
    if (!seen.insert(p.label).second) throw std::invalid_argument("duplicate part label '" + p.label + "'");
    total_dim_ *= p.dim;
  }
}

std::vector<std::string> SubsystemLayout::labels() const {
  std::vector<std::string> out;
  out.reserve(parts_.size());
  for (const auto& p : parts_) out.push_back(p.label);
  return out;
}

bool SubsystemLayout::contains(std::string_view label) const {
  return std::any_of(parts_.begin(), parts_.end(), [&](const Part& p) { return p.label == label; });
}

std::size_t SubsystemLayout::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < parts_.size(); ++i)
    if (parts_[i].label == label) return i;
  throw std::invalid_argument("unknown part label '" + std::string(label) + "' in layout " + to_string());
}

std::size_t SubsystemLayout::dim_of(std::string_view label) const { return parts_[index_of(label)].dim; }

std::vector<std::size_t> SubsystemLayout::strides() const {
  std::vector<std::size_t> s(parts_.size(), 1);
  for (std::size_t i = parts_.size(); i-- > 1;) s[i - 1] = s[i] * parts_[i].dim;
  return s;
}

SubsystemLayout SubsystemLayout::concat(const SubsystemLayout& other) const {
  std::vector<Part> parts = parts_;
  parts.insert(parts.end(), other.parts_.begin(), other.parts_.end());
  return SubsystemLayout(std::move(parts));
}

std::string SubsystemLayout::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += ", ";
    out += parts_[i].label + ":" + std::to_string(parts_[i].dim);
  }
  return out + ")";
}

Bipartition::Bipartition(std::vector<std::string> left, std::vector<std::string> right)
    : left_(std::move(left)), right_(std::move(right)) {
  if (left_.empty() || right_.empty()) throw std::invalid_argument("both sides of a cut must be nonempty");
  std::set<std::string> seen;
  for (const auto* side : {&left_, &right_})
    for (const auto& l : *side)
      if (!seen.insert(l).second) throw std::invalid_argument("label '" + l + "' appears twice in cut");
}

namespace {

std::vector<std::string> split_side(std::string_view side) {
  std::vector<std::string> out;
  if (side.find(',') != std::string_view::npos) {
    std::size_t start = 0;
    while (start <= side.size()) {
      auto end = side.find(',', start);
      if (end == std::string_view::npos) end = side.size();
      out.emplace_back(side.substr(start, end - start));
      if (out.back().empty()) throw std::invalid_argument("empty label in cut");
      start = end + 1;
    }
  } else {
    for (char c : side) out.emplace_back(1, c);
  }
  return out;
}

}  // namespace

Bipartition Bipartition::parse(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos || text.find(':', colon + 1) != std::string_view::npos)
    throw std::invalid_argument("cut must have the form LEFT:RIGHT, got '" + std::string(text) + "'");
  return Bipartition(split_side(text.substr(0, colon)), split_side(text.substr(colon + 1)));
}

void Bipartition::check_against(const SubsystemLayout& layout) const {
  for (const auto* side : {&left_, &right_})
    for (const auto& l : *side)
      if (!layout.contains(l))
        throw std::invalid_argument("cut " + to_string() + " names '" + l + "' which is not in layout " +
                                    layout.to_string());
  if (left_.size() + right_.size() != layout.size())
    throw std::invalid_argument("cut " + to_string() + " does not cover layout " + layout.to_string());
}

Bipartition Bipartition::canonical(const SubsystemLayout& layout) const {
  check_against(layout);
  auto by_position = [&](std::vector<std::string> side) {
    std::sort(side.begin(), side.end(),
              [&](const std::string& a, const std::string& b) { return layout.index_of(a) < layout.index_of(b); });
    return side;
  };
  return Bipartition(by_position(left_), by_position(right_));
}

std::string Bipartition::to_string() const {
  auto join = [](const std::vector<std::string>& side) {
    bool single = std::all_of(side.begin(), side.end(), [](const std::string& s) { return s.size() == 1; });
    std::string out;
    for (std::size_t i = 0; i < side.size(); ++i) {
      if (i && !single) out += ",";
      out += side[i];
    }
    return out;
  };
  return join(left_) + ":" + join(right_);
}

}  // namespace loccwit
