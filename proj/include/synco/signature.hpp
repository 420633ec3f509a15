#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace synco {

struct OpSymbol {
  std::string name;
  int arity = 0;
  bool operator==(const OpSymbol&) const = default;
};

// Ordered list of operation symbols; the order fixes operation indices
// everywhere (tables, terms, reports).
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<OpSymbol> ops);  // validates names and arities

  int op_count() const { return static_cast<int>(ops_.size()); }
  const OpSymbol& op(int i) const { return ops_[static_cast<std::size_t>(i)]; }
  std::span<const OpSymbol> ops() const { return ops_; }
  int index_of(std::string_view name) const;  // -1 when absent
  bool operator==(const Signature&) const = default;

 private:
  std::vector<OpSymbol> ops_;
};

}  // namespace synco
