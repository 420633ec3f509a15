#include <doctest.h>

#include <set>
#include <string>
#include <vector>

#include "synco/corpus.hpp"
#include "synco/errors.hpp"
#include "synco/suites.hpp"
#include "synco/util.hpp"

using namespace synco;

TEST_CASE("corpus is fixed by the seed") {
  const auto corpus = build_corpus(kDefaultSeed);
  REQUIRE(corpus.size() == 506);

  CHECK(corpus[0].name == "binop3-11587");
  CHECK(corpus[1].name == "binop3-15978");
  CHECK(corpus[2].name == "binop3-15046");
  CHECK(corpus[3].name == "binop3-13145");
  CHECK(corpus[4].name == "binop3-14179");
  CHECK(corpus[5].name == "binop3-13404");
  CHECK(corpus[500].name == "semilattice2");
  CHECK(corpus[501].name == "sink2");
  CHECK(corpus[502].name == "Q2");
  CHECK(corpus[503].name == "Q3");
  CHECK(corpus[504].name == "Q4");
  CHECK(corpus[505].name == "Q5");

  std::set<std::string> names;
  for (const auto& e : corpus) {
    names.insert(e.name);
    CHECK(e.algebra.size() >= 2);
    CHECK(e.algebra.size() <= 11);
  }
  CHECK(names.size() == corpus.size());

  const auto again = build_corpus(kDefaultSeed);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    CHECK(again[i].name == corpus[i].name);
    for (int op = 0; op < corpus[i].algebra.signature().op_count(); ++op) {
      CHECK(again[i].algebra.table(op) == corpus[i].algebra.table(op));
    }
  }

  // a different seed draws a different binop sample
  const auto other = build_corpus(kDefaultSeed + 1);
  REQUIRE(other.size() == 506);
  bool any_diff = false;
  for (std::size_t i = 0; i < 500; ++i) any_diff |= other[i].name != corpus[i].name;
  CHECK(any_diff);
}

TEST_CASE("term family sampling") {
  const auto corpus = build_corpus(kDefaultSeed);
  const Signature& binop = corpus[0].algebra.signature();
  const Signature& sink = corpus[501].algebra.signature();
  const Signature& qsig = corpus[502].algebra.signature();

  // one binary op: 7 terms of depth <= 2, so 7 + 21 + 35 = 63 subsets
  const auto fam_binop = sampled_term_families(binop, kDefaultSeed);
  CHECK(fam_binop.size() == 63);
  const auto fam_sink = sampled_term_families(sink, kDefaultSeed);
  CHECK(fam_sink.size() == 7);
  const auto fam_q = sampled_term_families(qsig, kDefaultSeed);
  CHECK(fam_q.size() == 200);

  for (const auto* fams : {&fam_binop, &fam_sink, &fam_q}) {
    std::size_t prev = 1;
    for (const TermSet& f : *fams) {
      CHECK(f.size() >= 1);
      CHECK(f.size() <= 3);
      CHECK(f.size() >= prev);
      prev = f.size();
    }
  }

  const auto fam_q2 = sampled_term_families(qsig, kDefaultSeed);
  REQUIRE(fam_q2.size() == fam_q.size());
  for (std::size_t i = 0; i < fam_q.size(); ++i) CHECK(fam_q2[i] == fam_q[i]);

  // small universes are returned whole regardless of seed
  CHECK(sampled_term_families(sink, kDefaultSeed + 7) == fam_sink);
}

TEST_CASE("property suites hold over the corpus") {
  const int threads = 8;

  auto malcev = run_malcev_suite(kDefaultSeed, threads);
  CHECK(malcev.name == "malcev");
  CHECK(malcev.instances == 7073);
  CHECK(malcev.refutations == 0);
  CHECK(malcev.failures.empty());

  auto comp = run_comp_suite(kDefaultSeed, threads);
  CHECK(comp.name == "comp");
  CHECK(comp.instances == 2530);
  CHECK(comp.refutations == 0);

  auto quot = run_quotient_suite(kDefaultSeed, threads);
  CHECK(quot.name == "quotient");
  CHECK(quot.instances == 1518);
  CHECK(quot.refutations == 0);

  auto sub = run_subcong_suite(kDefaultSeed, threads);
  CHECK(sub.name == "subcong");
  CHECK(sub.instances == 1509);
  CHECK(sub.refutations == 0);

  auto agree = run_agreement_suite(kDefaultSeed, threads);
  CHECK(agree.name == "agreement");
  CHECK(agree.instances == 31770);
  CHECK(agree.refutations == 0);

  auto chain = run_chainbound_suite(kDefaultSeed, threads);
  CHECK(chain.name == "chainbound");
  CHECK(chain.instances == 52294);
  CHECK(chain.refutations == 0);

  // reruns reproduce the counts exactly
  auto malcev2 = run_malcev_suite(kDefaultSeed, 2);
  CHECK(malcev2.instances == malcev.instances);
  CHECK(malcev2.refutations == 0);
  auto comp2 = run_comp_suite(kDefaultSeed, 2);
  CHECK(comp2.instances == comp.instances);
}

TEST_CASE("suite dispatch") {
  auto one = run_suites("quotient", kDefaultSeed, 8);
  REQUIRE(one.size() == 1);
  CHECK(one[0].name == "quotient");

  auto all = run_suites("all", kDefaultSeed, 8);
  REQUIRE(all.size() == 6);
  CHECK(all[0].name == "malcev");
  CHECK(all[1].name == "comp");
  CHECK(all[2].name == "quotient");
  CHECK(all[3].name == "subcong");
  CHECK(all[4].name == "agreement");
  CHECK(all[5].name == "chainbound");
  for (const auto& r : all) {
    CHECK(r.refutations == 0);
    CHECK(r.instances > 0);
  }

  CHECK_THROWS_WITH_AS(run_suites("bogus", kDefaultSeed, 1),
                       doctest::Contains("unknown suite 'bogus'"), InputError);
}
