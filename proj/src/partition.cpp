#include "synco/partition.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "synco/errors.hpp"
#include "synco/util.hpp"

namespace synco {

namespace {

Partition from_union_find(UnionFind& uf) {
  const int n = static_cast<int>(uf.parent.size());
  std::vector<std::int32_t> rep(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) rep[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(uf.find(i));
  return Partition::from_rgs(rep);
}

}  // namespace

Partition Partition::identity(int n) {
  Partition p;
  p.rep_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p.rep_[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(i);
  return p;
}

Partition Partition::full(int n) {
  Partition p;
  p.rep_.assign(static_cast<std::size_t>(n), 0);
  return p;
}

Partition Partition::from_pairs(int n, std::span<const std::pair<std::int32_t, std::int32_t>> pairs) {
  UnionFind uf(n);
  for (auto [u, v] : pairs) {
    if (u < 0 || u >= n || v < 0 || v >= n) {
      std::ostringstream os;
      os << "pair (" << u << "," << v << ") outside carrier {0.." << n - 1 << "}";
      throw InputError(os.str());
    }
    uf.unite(u, v);
  }
  return from_union_find(uf);
}

Partition Partition::from_blocks(int n, const std::vector<std::vector<std::int32_t>>& blocks) {
  std::vector<std::int32_t> rep(static_cast<std::size_t>(n), -1);
  for (const auto& b : blocks) {
    if (b.empty()) throw InputError("empty block");
    std::int32_t mn = *std::min_element(b.begin(), b.end());
    for (std::int32_t e : b) {
      if (e < 0 || e >= n) {
        std::ostringstream os;
        os << "element " << e << " outside carrier {0.." << n - 1 << "}";
        throw InputError(os.str());
      }
      if (rep[static_cast<std::size_t>(e)] != -1) {
        std::ostringstream os;
        os << "element " << e << " appears in two blocks";
        throw InputError(os.str());
      }
      rep[static_cast<std::size_t>(e)] = mn;
    }
  }
  for (int i = 0; i < n; ++i) {
    if (rep[static_cast<std::size_t>(i)] == -1) rep[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(i);
  }
  Partition p;
  p.rep_ = std::move(rep);
  return p;
}

Partition Partition::from_rgs(std::span<const std::int32_t> rgs) {
  const int n = static_cast<int>(rgs.size());
  // first element seen with each block id is the block minimum
  Partition p;
  p.rep_.resize(static_cast<std::size_t>(n));
  std::vector<std::int32_t> block_min(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    std::int32_t id = rgs[static_cast<std::size_t>(i)];
    if (id < 0 || id >= n) throw PreconditionError("block id outside [0, n)");
    if (block_min[static_cast<std::size_t>(id)] == -1) {
      block_min[static_cast<std::size_t>(id)] = static_cast<std::int32_t>(i);
    }
    p.rep_[static_cast<std::size_t>(i)] = block_min[static_cast<std::size_t>(id)];
  }
  return p;
}

int Partition::block_count() const {
  int c = 0;
  for (int i = 0; i < size(); ++i) {
    if (rep_[static_cast<std::size_t>(i)] == i) ++c;
  }
  return c;
}

std::vector<std::vector<std::int32_t>> Partition::blocks() const {
  std::vector<std::vector<std::int32_t>> out;
  std::vector<int> slot(rep_.size(), -1);
  for (int i = 0; i < size(); ++i) {
    std::int32_t r = rep_[static_cast<std::size_t>(i)];
    if (slot[static_cast<std::size_t>(r)] == -1) {
      slot[static_cast<std::size_t>(r)] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[static_cast<std::size_t>(slot[static_cast<std::size_t>(r)])].push_back(static_cast<std::int32_t>(i));
  }
  return out;
}

bool Partition::is_identity() const {
  for (int i = 0; i < size(); ++i) {
    if (rep_[static_cast<std::size_t>(i)] != i) return false;
  }
  return true;
}

bool Partition::refines(const Partition& coarser) const {
  if (coarser.size() != size()) throw PreconditionError("partition size mismatch");
  for (int i = 0; i < size(); ++i) {
    if (!coarser.same(i, rep(i))) return false;
  }
  return true;
}

Partition Partition::meet(const Partition& other) const {
  if (other.size() != size()) throw PreconditionError("partition size mismatch");
  // common refinement: group by (rep, other.rep); first occurrence is the minimum
  const int n = size();
  std::vector<std::int32_t> rep(static_cast<std::size_t>(n));
  std::map<std::pair<std::int32_t, std::int32_t>, std::int32_t> mins;
  for (int i = 0; i < n; ++i) {
    auto [it, inserted] =
        mins.try_emplace({this->rep(i), other.rep(i)}, static_cast<std::int32_t>(i));
    rep[static_cast<std::size_t>(i)] = it->second;
    (void)inserted;
  }
  Partition p;
  p.rep_ = std::move(rep);
  return p;
}

Partition Partition::join(const Partition& other) const {
  if (other.size() != size()) throw PreconditionError("partition size mismatch");
  UnionFind uf(size());
  for (int i = 0; i < size(); ++i) {
    uf.unite(i, rep(i));
    uf.unite(i, other.rep(i));
  }
  return from_union_find(uf);
}

Partition Partition::parse(int n, std::string_view literal) {
  std::vector<std::vector<std::int32_t>> blocks;
  std::vector<std::int32_t> cur;
  std::string tok;
  auto flush_tok = [&] {
    if (tok.empty()) return;
    try {
      std::size_t used = 0;
      int v = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      cur.push_back(static_cast<std::int32_t>(v));
    } catch (const std::exception&) {
      throw InputError("bad partition element '" + tok + "'");
    }
    tok.clear();
  };
  for (char c : literal) {
    if (c == '|') {
      flush_tok();
      if (!cur.empty()) blocks.push_back(std::move(cur));
      cur = {};
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      flush_tok();
    } else {
      tok.push_back(c);
    }
  }
  flush_tok();
  if (!cur.empty()) blocks.push_back(std::move(cur));
  return from_blocks(n, blocks);
}

std::string Partition::format(const std::vector<std::string>* labels, bool omit_singletons) const {
  std::ostringstream os;
  bool first_block = true;
  for (const auto& b : blocks()) {
    if (omit_singletons && b.size() == 1) continue;
    if (!first_block) os << " | ";
    first_block = false;
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (i) os << ' ';
      if (labels) {
        os << (*labels)[static_cast<std::size_t>(b[i])];
      } else {
        os << b[i];
      }
    }
  }
  if (first_block) os << "-";  // nothing printed (identity with singletons omitted)
  return os.str();
}

void for_each_partition(int n, const std::function<bool(const Partition&)>& fn) {
  if (n <= 0) return;
  std::vector<std::int32_t> rgs(static_cast<std::size_t>(n), 0);
  std::vector<std::int32_t> maxv(static_cast<std::size_t>(n), 0);  // max of rgs[0..i]
  while (true) {
    if (!fn(Partition::from_rgs(rgs))) return;
    // next restricted growth string: rightmost position i with rgs[i] <= max(rgs[0..i-1])
    int i = n - 1;
    while (i > 0 && rgs[static_cast<std::size_t>(i)] > maxv[static_cast<std::size_t>(i - 1)]) --i;
    if (i == 0) return;
    ++rgs[static_cast<std::size_t>(i)];
    maxv[static_cast<std::size_t>(i)] = std::max(maxv[static_cast<std::size_t>(i - 1)], rgs[static_cast<std::size_t>(i)]);
    for (int j = i + 1; j < n; ++j) {
      rgs[static_cast<std::size_t>(j)] = 0;
      maxv[static_cast<std::size_t>(j)] = maxv[static_cast<std::size_t>(j - 1)];
    }
  }
}

std::uint64_t bell_number(int n) {
  if (n < 0 || n > 25) throw PreconditionError("bell_number supports 0 <= n <= 25");
  // Bell triangle
  std::vector<std::uint64_t> row{1};
  for (int i = 1; i <= n; ++i) {
    std::vector<std::uint64_t> next(static_cast<std::size_t>(i) + 1);
    next[0] = row.back();
    for (std::size_t j = 0; j < row.size(); ++j) next[j + 1] = next[j] + row[j];
    row = std::move(next);
  }
  return row.front();
}

}  // namespace synco
