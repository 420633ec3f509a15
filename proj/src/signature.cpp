#include "synco/signature.hpp"

#include <cctype>
#include <set>
#include <sstream>

#include "synco/errors.hpp"

namespace synco {

namespace {

bool valid_op_name(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) return false;
    if (c == '(' || c == ')' || c == ',' || c == '#' || c == '|' || c == '@' || c == '_')
      return false;
  }
  return s != "x";  // reserved leaf names in term literals
}

}  // namespace

Signature::Signature(std::vector<OpSymbol> ops) : ops_(std::move(ops)) {
  std::set<std::string> seen;
  for (const auto& o : ops_) {
    if (!valid_op_name(o.name)) {
      throw InputError("invalid operation name '" + o.name + "'");
    }
    if (o.arity < 0) {
      std::ostringstream os;
      os << "operation '" << o.name << "' has negative arity " << o.arity;
      throw InputError(os.str());
    }
    if (!seen.insert(o.name).second) {
      throw InputError("duplicate operation name '" + o.name + "'");
    }
  }
}

int Signature::index_of(std::string_view name) const {
  for (int i = 0; i < op_count(); ++i) {
    if (ops_[static_cast<std::size_t>(i)].name == name) return i;
  }
  return -1;
}

}  // namespace synco
