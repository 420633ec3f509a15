#include "synco/algebra.hpp"

#include <map>
#include <sstream>

#include "synco/errors.hpp"
#include "synco/util.hpp"

namespace synco {

FiniteAlgebra FiniteAlgebra::make(Signature sig, int size,
                                  std::vector<std::vector<std::int32_t>> tables) {
  if (size <= 0) {
    std::ostringstream os;
    os << "carrier size must be positive, got " << size;
    throw InputError(os.str());
  }
  if (tables.size() != static_cast<std::size_t>(sig.op_count())) {
    std::ostringstream os;
    os << "expected " << sig.op_count() << " operation tables, got " << tables.size();
    throw InputError(os.str());
  }
  for (int i = 0; i < sig.op_count(); ++i) {
    const auto& sym = sig.op(i);
    long long want = checked_pow(size, sym.arity, 100'000'000LL);
    const auto& t = tables[static_cast<std::size_t>(i)];
    if (t.size() != static_cast<std::size_t>(want)) {
      std::ostringstream os;
      os << "operation '" << sym.name << "': expected " << want << " table entries, got "
         << t.size();
      throw InputError(os.str());
    }
    for (std::size_t j = 0; j < t.size(); ++j) {
      if (t[j] < 0 || t[j] >= size) {
        std::ostringstream os;
        os << "operation '" << sym.name << "': entry " << j << " is " << t[j]
           << ", outside carrier {0.." << size - 1 << "}";
        throw InputError(os.str());
      }
    }
  }
  FiniteAlgebra a;
  a.sig_ = std::move(sig);
  a.size_ = size;
  a.tables_ = std::move(tables);
  return a;
}

std::uint64_t FiniteAlgebra::table_checksum(int op) const {
  return fnv1a64(tables_[static_cast<std::size_t>(op)]);
}

std::vector<ElementaryMap> elementary_maps(const FiniteAlgebra& a, long long budget) {
  const int n = a.size();
  long long total = 0;
  for (const auto& sym : a.signature().ops()) {
    if (sym.arity == 0) continue;
    total += static_cast<long long>(sym.arity) * checked_pow(n, sym.arity - 1, budget);
    if (total > budget) {
      std::ostringstream os;
      os << "elementary translation count exceeds budget " << budget;
      throw ResourceError(os.str());
    }
  }

  std::vector<ElementaryMap> out;
  std::map<std::vector<std::int32_t>, int> seen;
  std::vector<std::int32_t> args;
  for (int op = 0; op < a.signature().op_count(); ++op) {
    const int k = a.signature().op(op).arity;
    if (k == 0) continue;
    args.assign(static_cast<std::size_t>(k), 0);
    for (int pos = 0; pos < k; ++pos) {
      // odometer over the k-1 fixed slots, most significant first
      std::vector<std::int32_t> fixed(static_cast<std::size_t>(k - 1), 0);
      while (true) {
        for (int s = 0, f = 0; s < k; ++s) {
          if (s != pos) args[static_cast<std::size_t>(s)] = fixed[static_cast<std::size_t>(f++)];
        }
        std::vector<std::int32_t> m(static_cast<std::size_t>(n));
        for (int x = 0; x < n; ++x) {
          args[static_cast<std::size_t>(pos)] = x;
          m[static_cast<std::size_t>(x)] = a.apply(op, args);
        }
        if (!seen.contains(m)) {
          seen.emplace(m, static_cast<int>(out.size()));
          out.push_back(ElementaryMap{std::move(m), op, pos, fixed});
        }
        int carry = k - 2;
        while (carry >= 0 && fixed[static_cast<std::size_t>(carry)] == n - 1) {
          fixed[static_cast<std::size_t>(carry)] = 0;
          --carry;
        }
        if (carry < 0) break;
        ++fixed[static_cast<std::size_t>(carry)];
      }
    }
  }
  return out;
}

}  // namespace synco
