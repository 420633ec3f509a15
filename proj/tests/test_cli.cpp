#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct RunResult {
  int code = -1;
  std::string out;  // stdout and stderr interleaved
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(SYNCO_CLI_BIN) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

const char* kQ2Text =
    "algebra Q2\n"
    "size 5\n"
    "# labels: 0=0 1=a0 2=b0 3=a1 4=b1\n"
    "op meet 2\n"
    "0 0 0 0 0\n"
    "0 1 0 0 0\n"
    "0 0 2 0 0\n"
    "0 0 0 3 0\n"
    "0 0 0 0 4\n"
    "op prod 2\n"
    "0 0 0 0 0\n"
    "0 0 0 0 2\n"
    "0 0 0 0 0\n"
    "0 0 0 0 0\n"
    "0 0 0 0 0\n"
    "op zero 0\n"
    "0\n";

std::string q2_path() {
  return (std::filesystem::temp_directory_path() / "synco_cli_q2.alg").string();
}

std::string q4_path() {
  return (std::filesystem::temp_directory_path() / "synco_cli_q4.alg").string();
}

void ensure_fixtures() {
  static bool done = false;
  if (done) return;
  REQUIRE(run_cli("qomega 2 --emit --out " + q2_path()).code == 0);
  REQUIRE(run_cli("qomega 4 --emit --out " + q4_path()).code == 0);
  done = true;
}

}  // namespace

TEST_CASE("emitted algebra files round-trip through info") {
  ensure_fixtures();
  auto emit = run_cli("qomega 2 --emit");
  CHECK(emit.code == 0);
  CHECK(emit.out == kQ2Text);

  auto again = run_cli("qomega 2 --emit");
  CHECK(again.out == emit.out);

  auto to_file = run_cli("qomega 2 --emit --out " + q2_path());
  CHECK(to_file.code == 0);
  CHECK(to_file.out.empty());
  CHECK(slurp(q2_path()) == kQ2Text);

  auto info = run_cli("info " + q2_path());
  CHECK(info.code == 0);
  CHECK(info.out ==
        "algebra Q2\n"
        "carrier 5\n"
        "op meet/2 checksum 218ea83cca0fd067\n"
        "op prod/2 checksum 7fec90553242b6e1\n"
        "op zero/0 checksum 47fe0d7eaf8e51e3\n"
        "elementary translations 7\n");
}

TEST_CASE("principal congruences and witness chains") {
  ensure_fixtures();
  auto plain = run_cli("principal " + q2_path() + " 1@2");
  CHECK(plain.code == 0);
  CHECK(plain.out == "theta(1, 2) = 0 1 2 | 3 | 4\n");

  auto with_witness = run_cli("principal " + q2_path() + " 1@2 --witness 0@2");
  CHECK(with_witness.code == 0);
  CHECK(with_witness.out ==
        "theta(1, 2) = 0 1 2 | 3 | 4\n"
        "witness 0 ~ 2 from (1, 2): 1 step\n"
        "  step 1: meet(x,_) @ (2) : 0 -> 2\n"
        "verified: ok\n");

  auto outside = run_cli("principal " + q2_path() + " 1@2 --witness 0@4");
  CHECK(outside.code == 1);
  CHECK(outside.out ==
        "theta(1, 2) = 0 1 2 | 3 | 4\n"
        "(0, 4) is not in theta(1, 2)\n");
}

TEST_CASE("syntactic congruence queries") {
  ensure_fixtures();
  auto cross = run_cli("syn " + q2_path() + " \"0 2 3\" --oracle");
  CHECK(cross.code == 0);
  CHECK(cross.out == "syn = 0 2 3 | 1 | 4\noracle agrees\n");

  auto trivial = run_cli("syn " + q2_path() + " \"0 1 | 2 3 4\" --oracle");
  CHECK(trivial.code == 0);
  CHECK(trivial.out == "syn = 0 | 1 | 2 | 3 | 4\noracle agrees\n");
}

TEST_CASE("determination checks") {
  ensure_fixtures();
  auto principal = run_cli("check " + q4_path() + " --what principal --depth 1");
  CHECK(principal.code == 1);
  CHECK(principal.out ==
        "principal determination: fails at (0, 3)\n"
        "missing pair: (0, 2)\n"
        "closure:   0 3 4 | 1 | 2 | 5 | 6 | 7 | 8\n"
        "principal: 0 2 3 4 | 1 | 5 | 6 | 7 | 8\n");

  auto syntactic = run_cli("check " + q4_path() + " --what syntactic --mode principal --depth 1 --recheck");
  CHECK(syntactic.code == 1);
  CHECK(syntactic.out ==
        "syntactic determination (principal mode): fails\n"
        "origin pair: (0, 3)\n"
        "theta:  0 3 4 | 1 | 2 | 5 | 6 | 7 | 8\n"
        "kernel: 0 3 | 1 | 2 | 4 | 5 | 6 | 7 | 8\n"
        "syn:    0 | 1 | 2 | 3 | 4 | 5 | 6 | 7 | 8\n"
        "recheck: counterexample confirmed\n");

  auto subcong = run_cli("check " + q4_path() + " --what subcong --depth 1");
  CHECK(subcong.code == 1);
  CHECK(subcong.out == "subcongruence determination: fails at (0, 5)\n");

  auto holds = run_cli("check " + q2_path() + " --what syntactic --mode exhaustive --depth 1");
  CHECK(holds.code == 0);
  CHECK(holds.out == "syntactic determination (exhaustive mode): holds\n");

  auto principal_holds = run_cli("check " + q2_path() + " --what principal --depth 1");
  CHECK(principal_holds.code == 0);
  CHECK(principal_holds.out == "principal determination: holds\n");
}

TEST_CASE("q family subcommand") {
  auto sentences = run_cli("qomega 3 --sentences");
  CHECK(sentences.code == 0);
  CHECK(sentences.out == "nonzero factors: holds\ncancellation: holds\n");

  auto growth_tsv = run_cli("--format tsv qomega --depth-growth 5");
  CHECK(growth_tsv.code == 0);
  CHECK(growth_tsv.out ==
        "i\ttruncation\tdepth\tsteps\n"
        "1\tQ3\t2\t1\n"
        "2\tQ4\t3\t1\n"
        "3\tQ5\t4\t1\n"
        "4\tQ6\t5\t1\n"
        "5\tQ7\t6\t1\n");

  auto growth_text = run_cli("qomega --depth-growth 1");
  CHECK(growth_text.code == 0);
  CHECK(growth_text.out ==
        "pair (0, a1) in Q3: least sufficient depth 2\n"
        "witness 0 ~ 2 from (0, 3): 1 step\n"
        "  step 1: prod(_,prod(x,_)) @ (1,6) : 0 -> 2\n"
        "verified: ok\n");

  auto report = run_cli("qomega 1 --report");
  CHECK(report.code == 0);
  CHECK(report.out ==
        "truncation Q1, carrier 3\n"
        "distinct principal congruences: 3\n"
        "  class 1: 0 a0 b0\n"
        "    generators: (a0,b0)\n"
        "  class 2: 0 a0 | b0\n"
        "    generators: (0,a0)\n"
        "  class 3: 0 b0 | a0\n"
        "    generators: (0,b0)\n"
        "intersection: 0 | a0 | b0\n"
        "monolith: absent\n");

  auto r1 = run_cli("qomega 5 --report");
  auto r2 = run_cli("qomega 5 --report");
  CHECK(r1.code == 0);
  CHECK(r1.out == r2.out);
}

TEST_CASE("suite verification runs") {
  auto malcev = run_cli("--format tsv --threads 8 verify --suite malcev");
  CHECK(malcev.code == 0);
  CHECK(malcev.out == "malcev\t7073\t0\n");

  auto quotient = run_cli("--threads 8 verify --suite quotient");
  CHECK(quotient.code == 0);
  CHECK(quotient.out == "suite quotient: 1518 instances, 0 refutations\n");

  auto c1 = run_cli("--format tsv --threads 8 verify --suite comp");
  auto c2 = run_cli("--format tsv --threads 8 verify --suite comp");
  CHECK(c1.code == 0);
  CHECK(c1.out == "comp\t2530\t0\n");
  CHECK(c1.out == c2.out);
}

TEST_CASE("bad invocations are rejected") {
  ensure_fixtures();
  auto missing = run_cli("info nope.alg");
  CHECK(missing.code == 2);
  CHECK(missing.out == "error: cannot open 'nope.alg'\n");

  auto bad_range = run_cli("principal " + q2_path() + " 9@0");
  CHECK(bad_range.code == 2);
  CHECK(bad_range.out == "error: pair (9, 0) outside carrier of size 5\n");

  auto bad_pair = run_cli("principal " + q2_path() + " xx");
  CHECK(bad_pair.code == 2);
  CHECK(bad_pair.out == "error: pair literal wants the form a@b\n");

  auto bad_partition = run_cli("syn " + q2_path() + " \"0 9\"");
  CHECK(bad_partition.code == 2);
  CHECK(bad_partition.out.find("outside carrier") != std::string::npos);

  auto no_terms = run_cli("check " + q2_path() + " --what principal");
  CHECK(no_terms.code == 2);
  CHECK(no_terms.out == "error: missing term family: set --terms\n");

  auto both = run_cli("check " + q2_path() + " --what principal --terms \"meet(x,_)\" --depth 1");
  CHECK(both.code == 2);
  CHECK(both.out == "error: give terms either as terms or as a depth, not both\n");

  auto bad_what = run_cli("check " + q2_path() + " --what bogus --depth 1");
  CHECK(bad_what.code == 2);
  CHECK(bad_what.out == "error: check target 'bogus' is not principal, syntactic or subcong\n");

  auto no_action = run_cli("qomega 2");
  CHECK(no_action.code == 2);
  CHECK(no_action.out == "error: pick exactly one of --emit, --sentences, --report, --depth-growth\n");

  auto two_actions = run_cli("qomega 2 --emit --report");
  CHECK(two_actions.code == 2);
  CHECK(two_actions.out == no_action.out);

  auto bad_suite = run_cli("verify --suite bogus");
  CHECK(bad_suite.code == 2);
  CHECK(bad_suite.out ==
        "error: unknown suite 'bogus' (malcev, comp, quotient, subcong, agreement, chainbound, "
        "all)\n");

  auto threads0 = run_cli("--threads 0 verify --suite comp");
  CHECK(threads0.code == 2);
  CHECK(threads0.out.find("not in range") != std::string::npos);

  auto bad_format = run_cli("--format xml info " + q2_path());
  CHECK(bad_format.code == 2);
  CHECK(bad_format.out.find("xml not in {text,tsv}") != std::string::npos);

  auto nothing = run_cli("");
  CHECK(nothing.code == 2);
  CHECK(nothing.out.find("subcommand is required") != std::string::npos);

  auto starved = run_cli("--budget 3 check " + q2_path() + " --what principal --terms \"prod(_,prod(x,_))\"");
  CHECK(starved.code == 3);
  CHECK(starved.out.find("resource limit:") == 0);

  auto help = run_cli("--help");
  CHECK(help.code == 0);
  CHECK(help.out.find("congruence and translation analysis") != std::string::npos);
}
