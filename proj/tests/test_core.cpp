#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "synco/algebra.hpp"
#include "synco/algfile.hpp"
#include "synco/errors.hpp"
#include "synco/partition.hpp"
#include "synco/relation.hpp"
#include "synco/util.hpp"

using namespace synco;

namespace {

using Pair = std::pair<std::int32_t, std::int32_t>;

// Literal meet: u ~ v iff related in both.
Partition oracle_meet(const Partition& p, const Partition& q) {
  std::vector<Pair> pairs;
  for (int u = 0; u < p.size(); ++u)
    for (int v = u + 1; v < p.size(); ++v)
      if (p.same(u, v) && q.same(u, v)) pairs.push_back({u, v});
  return Partition::from_pairs(p.size(), pairs);
}

// Literal join: equivalence closure of the union.
Partition oracle_join(const Partition& p, const Partition& q) {
  std::vector<Pair> pairs;
  for (int u = 0; u < p.size(); ++u)
    for (int v = u + 1; v < p.size(); ++v)
      if (p.same(u, v) || q.same(u, v)) pairs.push_back({u, v});
  return Partition::from_pairs(p.size(), pairs);
}

std::vector<Partition> all_partitions(int n) {
  std::vector<Partition> out;
  for_each_partition(n, [&](const Partition& p) {
    out.push_back(p);
    return true;
  });
  return out;
}

}  // namespace

TEST_CASE("partition constructors and canonical representatives") {
  auto id = Partition::identity(4);
  CHECK(id.size() == 4);
  CHECK(id.block_count() == 4);
  CHECK(id.is_identity());
  for (int i = 0; i < 4; ++i) CHECK(id.rep(i) == i);

  auto full = Partition::full(4);
  CHECK(full.block_count() == 1);
  CHECK_FALSE(full.is_identity());
  for (int i = 0; i < 4; ++i) CHECK(full.rep(i) == 0);

  CHECK(Partition::identity(1).is_identity());
  CHECK(Partition::full(1).is_identity());
}

TEST_CASE("from_pairs closes chains") {
  std::vector<Pair> pairs{{0, 1}, {1, 2}, {4, 3}};
  auto p = Partition::from_pairs(6, pairs);
  CHECK(p.same(0, 2));
  CHECK(p.same(3, 4));
  CHECK_FALSE(p.same(0, 3));
  CHECK(p.rep(2) == 0);
  CHECK(p.rep(4) == 3);
  CHECK(p.rep(5) == 5);
  CHECK(p.block_count() == 3);
}

TEST_CASE("from_blocks and blocks round-trip") {
  auto p = Partition::from_blocks(5, {{2, 0}, {1, 4}});
  auto bl = p.blocks();
  REQUIRE(bl.size() == 3);
  CHECK(bl[0] == std::vector<std::int32_t>{0, 2});
  CHECK(bl[1] == std::vector<std::int32_t>{1, 4});
  CHECK(bl[2] == std::vector<std::int32_t>{3});
  CHECK(Partition::from_blocks(5, bl) == p);
}

TEST_CASE("partition literals parse and format") {
  auto p = Partition::parse(5, "0 2 | 1 | 3 4");
  CHECK(p.same(0, 2));
  CHECK(p.same(3, 4));
  CHECK_FALSE(p.same(0, 1));
  CHECK(p.format() == "0 2 | 1 | 3 4");

  // unmentioned elements become singletons
  auto q = Partition::parse(4, "1 3");
  CHECK(q == Partition::from_blocks(4, {{1, 3}}));
  CHECK(q.format() == "0 | 1 3 | 2");

  std::vector<std::string> labels{"z", "p", "q", "r", "s"};
  CHECK(p.format(&labels) == "z q | p | r s");
  CHECK(p.format(nullptr, true) == "0 2 | 3 4");
  CHECK(Partition::identity(3).format(nullptr, true) == "-");

  CHECK_THROWS_AS(Partition::parse(3, "0 5"), InputError);
  CHECK_THROWS_AS(Partition::parse(3, "0 1 | 1 2"), InputError);
  CHECK_THROWS_AS(Partition::parse(3, "0 x"), InputError);
}

TEST_CASE("format/parse round-trips every partition of size 5") {
  for (const auto& p : all_partitions(5)) {
    CHECK(Partition::parse(5, p.format()) == p);
  }
}

TEST_CASE("for_each_partition counts match bell_number") {
  // the sweep is the counting oracle for the closed-form table
  std::uint64_t expect[] = {1, 1, 2, 5, 15, 52, 203};
  for (int n = 0; n <= 6; ++n) {
    if (n == 0) {
      CHECK(bell_number(0) == 1);
      continue;
    }
    std::uint64_t count = 0;
    std::set<std::vector<std::int32_t>> distinct;
    for_each_partition(n, [&](const Partition& p) {
      ++count;
      std::vector<std::int32_t> reps;
      for (int i = 0; i < n; ++i) reps.push_back(p.rep(i));
      distinct.insert(reps);
      return true;
    });
    CHECK(count == expect[n]);
    CHECK(distinct.size() == count);
    CHECK(bell_number(n) == expect[n]);
  }
  CHECK(bell_number(25) == 4638590332229999353ULL);
}

TEST_CASE("for_each_partition visits RGS order and honors early stop") {
  std::vector<Partition> seen;
  for_each_partition(3, [&](const Partition& p) {
    seen.push_back(p);
    return seen.size() < 2;
  });
  REQUIRE(seen.size() == 2);
  CHECK(seen[0] == Partition::full(3));       // 0 0 0
  CHECK(seen[1] == Partition::parse(3, "0 1 | 2"));  // 0 0 1
}

TEST_CASE("meet, join, refines agree with literal oracles on size 4") {
  auto parts = all_partitions(4);
  REQUIRE(parts.size() == 15);
  for (const auto& p : parts) {
    for (const auto& q : parts) {
      auto m = p.meet(q);
      auto j = p.join(q);
      CHECK(m == oracle_meet(p, q));
      CHECK(j == oracle_join(p, q));
      CHECK(m.refines(p));
      CHECK(m.refines(q));
      CHECK(p.refines(j));
      CHECK(p.refines(q) == (m == p));
      CHECK(p.refines(q) == (j == q));
    }
  }
}

TEST_CASE("from_rgs matches block numbering") {
  std::vector<std::int32_t> rgs{0, 1, 0, 2, 1};
  auto p = Partition::from_rgs(rgs);
  CHECK(p == Partition::parse(5, "0 2 | 1 4 | 3"));
}

TEST_CASE("relation basics") {
  auto d = Relation::diagonal(3);
  CHECK(d.count() == 3);
  CHECK(d.is_equivalence());
  CHECK(d.to_partition().is_identity());

  Relation r(3);
  r.set_sym(0, 1);
  CHECK_FALSE(r.is_equivalence());  // no diagonal
  r.set(0, 0);
  r.set(1, 1);
  r.set(2, 2);
  CHECK(r.is_equivalence());
  CHECK(r.to_partition() == Partition::parse(3, "0 1 | 2"));

  r.set(1, 2);
  CHECK_FALSE(r.is_equivalence());  // not symmetric
  r.set(2, 1);
  CHECK_FALSE(r.is_equivalence());  // not transitive: (0,1),(1,2) but not (0,2)
  CHECK_THROWS_AS(r.to_partition(), PreconditionError);
}

TEST_CASE("relation algebra and first_difference") {
  for (const auto& p : all_partitions(4)) {
    auto rp = Relation::from_partition(p);
    CHECK(rp.is_equivalence());
    CHECK(rp.to_partition() == p);
    std::size_t expect = 0;
    for (const auto& b : p.blocks()) expect += b.size() * b.size();
    CHECK(rp.count() == expect);
    for (const auto& q : all_partitions(4)) {
      auto rq = Relation::from_partition(q);
      CHECK((rp & rq) == Relation::from_partition(p.meet(q)));
      CHECK(rp.subset_of(rq) == p.refines(q));
      if (p == q) {
        CHECK_FALSE(rp.first_difference(rq).has_value());
      } else {
        auto diff = rp.first_difference(rq);
        REQUIRE(diff.has_value());
        auto [u, v] = *diff;
        CHECK(rp.test(u, v) != rq.test(u, v));
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b) {
            if (a > u || (a == u && b >= v)) break;
            CHECK(rp.test(a, b) == rq.test(a, b));
          }
      }
    }
  }
  auto u = Relation::from_partition(Partition::parse(3, "0 1")) |
           Relation::from_partition(Partition::parse(3, "1 2"));
  CHECK(u.test(0, 1));
  CHECK(u.test(1, 2));
  CHECK_FALSE(u.test(0, 2));
}

TEST_CASE("union-find keeps minimum representatives") {
  UnionFind uf(5);
  CHECK(uf.unite(3, 4));
  CHECK(uf.unite(4, 1));
  CHECK_FALSE(uf.unite(1, 3));
  CHECK(uf.find(4) == 1);
  CHECK(uf.find(3) == 1);
  CHECK(uf.find(0) == 0);
}

TEST_CASE("checked_pow guards the cap") {
  CHECK(checked_pow(2, 10, 1024) == 1024);
  CHECK(checked_pow(5, 0, 1) == 1);
  CHECK(checked_pow(0, 3, 10) == 0);
  CHECK_THROWS_AS(checked_pow(2, 11, 1024), ResourceError);
  CHECK_THROWS_AS(checked_pow(10, 19, 1'000'000'000'000'000'000LL), ResourceError);
}

TEST_CASE("sample_indices is a prefix of a deterministic shuffle") {
  DetRng rng(kDefaultSeed);
  auto s1 = sample_indices(100, 10, rng);
  REQUIRE(s1.size() == 10);
  std::set<std::int64_t> uniq(s1.begin(), s1.end());
  CHECK(uniq.size() == 10);
  for (auto v : s1) {
    CHECK(v >= 0);
    CHECK(v < 100);
  }
  DetRng rng2(kDefaultSeed);
  CHECK(sample_indices(100, 10, rng2) == s1);

  DetRng rng3(7);
  auto all = sample_indices(5, 9, rng3);
  CHECK(all == std::vector<std::int64_t>{0, 1, 2, 3, 4});
}

TEST_CASE("parallel_for covers the range once for any thread count") {
  for (int threads : {1, 2, 3, 8}) {
    std::vector<int> hits(1000, 0);
    parallel_for(0, 1000, threads, [&](std::int64_t i) { hits[static_cast<std::size_t>(i)]++; });
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  }
  int ran = 0;
  parallel_for(5, 5, 4, [&](std::int64_t) { ++ran; });
  CHECK(ran == 0);
}

TEST_CASE("algebra table indexing is first-argument-major") {
  // f(0,0)=0 f(0,1)=1 f(1,0)=0 f(1,1)=1
  FiniteAlgebra a = FiniteAlgebra::make(Signature({{"f", 2}}), 2, {{0, 1, 0, 1}});
  std::vector<std::int32_t> args{1, 0};
  CHECK(a.apply(0, args) == 0);
  args = {0, 1};
  CHECK(a.apply(0, args) == 1);

  FiniteAlgebra t = FiniteAlgebra::make(Signature({{"g", 3}}), 2, {std::vector<std::int32_t>{
                                                                      0, 0, 0, 1, 0, 0, 0, 1}});
  // g(a,b,c) = 1 iff (a,b,c) in {(0,1,1),(1,1,1)}
  args = {0, 1, 1};
  CHECK(t.apply(0, args) == 1);
  args = {1, 1, 0};
  CHECK(t.apply(0, args) == 0);
}

TEST_CASE("algebra validation rejects malformed tables") {
  CHECK_THROWS_AS(FiniteAlgebra::make(Signature({{"f", 2}}), 2, {{0, 1, 2, 1}}), InputError);
  CHECK_THROWS_AS(FiniteAlgebra::make(Signature({{"f", 2}}), 2, {{0, 1, 0}}), InputError);
  CHECK_THROWS_AS(FiniteAlgebra::make(Signature({{"f", 2}}), 0, {{}}), InputError);
  CHECK_THROWS_AS(FiniteAlgebra::make(Signature({{"f", 2}}), 2, {}), InputError);
  CHECK_THROWS_AS(Signature({{"f", 2}, {"f", 1}}), InputError);
  CHECK_THROWS_AS(Signature({{"x", 1}}), InputError);
  CHECK_THROWS_AS(Signature({{"a b", 1}}), InputError);
}

TEST_CASE("elementary maps deduplicate and keep first provenance") {
  // meet semilattice on {0,1}: candidates are x->meet(x,0)=[0,0], x->meet(x,1)=[0,1],
  // x->meet(0,y)=[0,0] dup, x->meet(1,y)=[0,1] dup
  FiniteAlgebra a = FiniteAlgebra::make(Signature({{"meet", 2}}), 2, {{0, 0, 0, 1}});
  auto maps = elementary_maps(a);
  REQUIRE(maps.size() == 2);
  CHECK(maps[0].map == std::vector<std::int32_t>{0, 0});
  CHECK(maps[0].op == 0);
  CHECK(maps[0].pos == 0);
  CHECK(maps[0].args == std::vector<std::int32_t>{0});
  CHECK(maps[1].map == std::vector<std::int32_t>{0, 1});
  CHECK(maps[1].pos == 0);
  CHECK(maps[1].args == std::vector<std::int32_t>{1});

  // nullary ops contribute nothing
  FiniteAlgebra c = FiniteAlgebra::make(Signature({{"c", 0}}), 3, {{1}});
  CHECK(elementary_maps(c).empty());

  FiniteAlgebra u = FiniteAlgebra::make(Signature({{"u", 1}}), 3, {{1, 2, 0}});
  auto um = elementary_maps(u);
  REQUIRE(um.size() == 1);
  CHECK(um[0].map == std::vector<std::int32_t>{1, 2, 0});
  CHECK(um[0].args.empty());

  CHECK_THROWS_AS(elementary_maps(FiniteAlgebra::make(Signature({{"f", 3}}), 10,
                                                      {std::vector<std::int32_t>(1000, 0)}),
                                  100),
                  ResourceError);
}

TEST_CASE("table checksums separate distinct tables") {
  FiniteAlgebra a = FiniteAlgebra::make(Signature({{"f", 2}}), 2, {{0, 0, 0, 1}});
  FiniteAlgebra b = FiniteAlgebra::make(Signature({{"f", 2}}), 2, {{0, 1, 0, 1}});
  CHECK(a.table_checksum(0) != b.table_checksum(0));
  FiniteAlgebra a2 = FiniteAlgebra::make(Signature({{"g", 2}}), 2, {{0, 0, 0, 1}});
  CHECK(a.table_checksum(0) == a2.table_checksum(0));
}

TEST_CASE("alg text round-trips") {
  const char* text =
      "algebra demo\n"
      "size 3\n"
      "# a comment line\n"
      "op join 2\n"
      "0 1 2\n"
      "1 1 2  # trailing comment\n"
      "2 2 2\n"
      "op top 0\n"
      "2\n";
  auto na = parse_alg_text(text, "demo.alg");
  CHECK(na.name == "demo");
  CHECK(na.algebra.size() == 3);
  REQUIRE(na.algebra.signature().op_count() == 2);
  CHECK(na.algebra.signature().op(0).name == "join");
  CHECK(na.algebra.signature().op(1).arity == 0);
  CHECK(na.algebra.table(1) == std::vector<std::int32_t>{2});

  auto text2 = write_alg_text(na);
  auto na2 = parse_alg_text(text2, "rewritten");
  CHECK(na2.name == na.name);
  CHECK(na2.algebra.signature() == na.algebra.signature());
  for (int op = 0; op < 2; ++op) CHECK(na2.algebra.table(op) == na.algebra.table(op));

  std::vector<std::string> labels{"zero", "mid", "top"};
  auto text3 = write_alg_text(na, labels);
  CHECK(text3.find("# labels: 0=zero 1=mid 2=top") != std::string::npos);
  CHECK(parse_alg_text(text3, "labeled").algebra.table(0) == na.algebra.table(0));
}

TEST_CASE("alg text errors carry origin and line") {
  auto check_msg = [](const char* text, const char* needle) {
    try {
      parse_alg_text(text, "bad.alg");
      FAIL_CHECK("expected InputError for: " << needle);
    } catch (const InputError& e) {
      std::string msg = e.what();
      CHECK(msg.find("bad.alg:") == 0);
      CHECK(msg.find(needle) != std::string::npos);
    }
  };
  check_msg("size 2\n", "expected 'algebra <name>'");
  check_msg("algebra a\nsize 0\nop f 1\n", "carrier size out of range");
  check_msg("algebra a\nsize 2\nop f 1\n0 2\n", "outside carrier");
  check_msg("algebra a\nsize 2\nop f 1\n0\n", "unexpected end of input");
  check_msg("algebra a\nsize 2\nop f one\n", "expected an integer");
  check_msg("algebra a\nsize 2\nfoo f 1\n", "expected 'op <name> <arity>'");

  try {
    parse_alg_text("algebra a\nsize 2\nop f 1\n0\n1 1\n", "bad.alg");
    FAIL_CHECK("expected trailing-token error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("expected 'op <name> <arity>'") != std::string::npos);
  }

  CHECK_THROWS_AS(read_alg_file("/nonexistent/path.alg"), InputError);
}
