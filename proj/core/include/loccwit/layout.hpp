#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace loccwit {

struct Part {
  std::string label;
  std::size_t dim = 0;

  friend bool operator==(const Part&, const Part&) = default;
};

/// Ordered list of labeled subsystems. Amplitudes over a layout are indexed
/// lexicographically, first part most significant.
class SubsystemLayout {
 public:
  SubsystemLayout() = default;
  explicit SubsystemLayout(std::vector<Part> parts);

  const std::vector<Part>& parts() const { return parts_; }
  std::size_t size() const { return parts_.size(); }
  std::size_t total_dim() const { return total_dim_; }

  std::vector<std::string> labels() const;
  bool contains(std::string_view label) const;
  /// Position of `label` in the part list; throws std::invalid_argument if absent.
  std::size_t index_of(std::string_view label) const;
  std::size_t dim_of(std::string_view label) const;

  /// Strides for lexicographic indexing (last part has stride 1).
  std::vector<std::size_t> strides() const;

  /// Concatenation; throws on duplicate labels.
  SubsystemLayout concat(const SubsystemLayout& other) const;

  std::string to_string() const;

  friend bool operator==(const SubsystemLayout& a, const SubsystemLayout& b) {
    return a.parts_ == b.parts_;
  }

 private:
  std::vector<Part> parts_;
  std::size_t total_dim_ = 1;
};

/// A split of a layout's labels into two nonempty disjoint sides.
class Bipartition {
 public:
  Bipartition(std::vector<std::string> left, std::vector<std::string> right);

  /// Parses "AC:BD" (one character per label) or "A,C:B,D".
  static Bipartition parse(std::string_view text);

  const std::vector<std::string>& left() const { return left_; }
  const std::vector<std::string>& right() const { return right_; }

  /// Throws std::invalid_argument unless the two sides partition `layout`.
  void check_against(const SubsystemLayout& layout) const;

  /// Both sides reordered to follow the layout's part order.
  Bipartition canonical(const SubsystemLayout& layout) const;

  std::string to_string() const;

 private:
  std::vector<std::string> left_;
  std::vector<std::string> right_;
};

}  // namespace loccwit
