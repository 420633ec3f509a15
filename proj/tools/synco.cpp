#include <cassert>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "synco/algfile.hpp"
#include "synco/analysis.hpp"
#include "synco/congruence.hpp"
#include "synco/errors.hpp"
#include "synco/qomega.hpp"
#include "synco/suites.hpp"
#include "synco/terms.hpp"
#include "synco/util.hpp"

namespace {

using namespace synco;

std::pair<std::int32_t, std::int32_t> parse_pair(const std::string& text, int n) {
  const auto at = text.find('@');
  if (at == std::string::npos) throw InputError("pair literal wants the form a@b");
  std::int32_t a, b;
  try {
    std::size_t used;
    a = std::stoi(text.substr(0, at), &used);
    if (used != at) throw InputError("");
    const std::string rest = text.substr(at + 1);
    b = std::stoi(rest, &used);
    if (used != rest.size()) throw InputError("");
  } catch (const std::exception&) {
    throw InputError("pair literal '" + text + "' is not a pair of integers");
  }
  if (a < 0 || a >= n || b < 0 || b >= n) {
    std::ostringstream os;
    os << "pair (" << a << ", " << b << ") outside carrier of size " << n;
    throw InputError(os.str());
  }
  return {a, b};
}

TermSet parse_terms(const Signature& sig, const std::string& text) {
  TermSet out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t semi = text.find(';', start);
    if (semi == std::string::npos) semi = text.size();
    const std::string piece = text.substr(start, semi - start);
    if (piece.find_first_not_of(" \t") != std::string::npos) {
      out.push_back(Term::parse(sig, piece));
    }
    start = semi + 1;
  }
  if (out.empty()) throw InputError("no terms in '" + text + "'");
  canonicalize(out);
  return out;
}

std::string assignment_str(const std::vector<std::int32_t>& asg) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < asg.size(); ++i) {
    if (i) os << ',';
    os << asg[i];
  }
  os << ')';
  return os.str();
}

void print_witness(std::ostream& os, const FiniteAlgebra& a, const MalcevWitness& w) {
  os << "witness " << w.from << " ~ " << w.to << " from (" << w.gen_a << ", " << w.gen_b
     << "): " << w.steps.size() << " step" << (w.steps.size() == 1 ? "" : "s") << "\n";
  std::int32_t cur = w.from;
  for (std::size_t i = 0; i < w.steps.size(); ++i) {
    const WitnessStep& s = w.steps[i];
    const std::int32_t u = s.term.eval(a, w.gen_a, s.assignment);
    const std::int32_t v = s.term.eval(a, w.gen_b, s.assignment);
    const std::int32_t dst = s.swapped ? u : v;
    os << "  step " << i + 1 << ": " << s.term.format(a.signature()) << " @ "
       << assignment_str(s.assignment) << " : " << cur << " -> " << dst
       << (s.swapped ? " (swapped)" : "") << "\n";
    cur = dst;
  }
  const auto check = verify_witness(a, w);
  os << "verified: " << (check.ok ? "ok" : "FAILED " + check.detail) << "\n";
}

struct CommonOpts {
  std::uint32_t seed = kDefaultSeed;
  int threads = 1;
  int cap = 6;
  long long budget = 1'000'000;
  std::string format = "text";

  Limits limits() const {
    Limits l;
    l.translation_budget = budget;
    l.exhaustive_cap = cap;
    return l;
  }
  bool tsv() const { return format == "tsv"; }
};

int cmd_info(const std::string& path) {
  const NamedAlgebra na = read_alg_file(path);
  std::cout << "algebra " << na.name << "\n";
  std::cout << "carrier " << na.algebra.size() << "\n";
  for (int op = 0; op < na.algebra.signature().op_count(); ++op) {
    const OpSymbol& sym = na.algebra.signature().op(op);
    std::ostringstream hex;
    hex << std::hex << na.algebra.table_checksum(op);
    std::cout << "op " << sym.name << "/" << sym.arity << " checksum " << hex.str() << "\n";
  }
  std::cout << "elementary translations " << elementary_maps(na.algebra).size() << "\n";
  return 0;
}

int cmd_principal(const std::string& path, const std::string& pair_text,
                  const std::string& witness_text, const CommonOpts& opts) {
  const NamedAlgebra na = read_alg_file(path);
  const FiniteAlgebra& a = na.algebra;
  const auto [x, y] = parse_pair(pair_text, a.size());
  std::pair<std::int32_t, std::int32_t> gen{x, y};
  const Partition theta =
      generate_congruence(a, std::span<const std::pair<std::int32_t, std::int32_t>>(&gen, 1));
  std::cout << "theta(" << x << ", " << y << ") = " << theta.format() << "\n";
  if (witness_text.empty()) return 0;
  const auto [c, d] = parse_pair(witness_text, a.size());
  const auto sys = translation_monoid(a, opts.limits());
  ChainClosure closure(sys, a.size(), x, y);
  assert(closure.partition() == theta);  // two routes to the same congruence
  if (!closure.same(c, d)) {
    std::cout << "(" << c << ", " << d << ") is not in theta(" << x << ", " << y << ")\n";
    return 1;
  }
  print_witness(std::cout, a, closure.witness(c, d));
  return 0;
}

int cmd_syn(const std::string& path, const std::string& partition_text, bool oracle,
            const CommonOpts& opts) {
  const NamedAlgebra na = read_alg_file(path);
  const FiniteAlgebra& a = na.algebra;
  const Partition theta = Partition::parse(a.size(), partition_text);
  const Partition s = syntactic_congruence(a, theta);
  std::cout << "syn = " << s.format() << "\n";
  if (oracle) {
    const Partition o = syn_oracle(a, theta, opts.cap);
    if (o != s) {
      std::cout << "oracle disagrees: " << o.format() << "\n";
      return 1;
    }
    std::cout << "oracle agrees\n";
  }
  return 0;
}

struct CheckOpts {
  std::string what = "principal";
  std::string terms;
  int depth = -1;
  std::string terms2;
  int depth2 = -1;
  std::string mode = "principal";
  bool recheck = false;
};

TranslationSystem build_system(const FiniteAlgebra& a, const std::string& terms, int depth,
                               const Limits& limits, const char* which) {
  if (!terms.empty() && depth >= 0) {
    throw InputError(std::string("give ") + which + " either as terms or as a depth, not both");
  }
  if (!terms.empty()) {
    return TranslationSystem::from_term_set(a, parse_terms(a.signature(), terms), limits);
  }
  if (depth >= 0) return TranslationSystem::from_depth(a, depth, limits);
  throw InputError(std::string("missing term family: set --") + which);
}

int cmd_check(const std::string& path, const CheckOpts& c, const CommonOpts& opts) {
  const NamedAlgebra na = read_alg_file(path);
  const FiniteAlgebra& a = na.algebra;
  const Limits limits = opts.limits();
  const auto fsys = build_system(a, c.terms, c.depth, limits, "terms");

  if (c.what == "principal") {
    const auto res = determines_principal(a, fsys);
    if (res.holds) {
      std::cout << "principal determination: holds\n";
      return 0;
    }
    std::cout << "principal determination: fails at (" << res.pair->first << ", "
              << res.pair->second << ")\n";
    std::cout << "missing pair: (" << res.missing->first << ", " << res.missing->second << ")\n";
    std::cout << "closure:   " << res.closure->format() << "\n";
    std::cout << "principal: " << res.principal->format() << "\n";
    return 1;
  }

  if (c.what == "syntactic") {
    SweepMode mode;
    if (c.mode == "exhaustive") {
      mode = SweepMode::exhaustive;
    } else if (c.mode == "principal") {
      mode = SweepMode::principal;
    } else {
      throw InputError("mode '" + c.mode + "' is not exhaustive or principal");
    }
    const auto res = determines_syntactic(a, fsys, mode, opts.cap);
    std::cout << "syntactic determination (" << c.mode << " mode): "
              << (res.holds ? "holds" : "fails") << "\n";
    if (res.holds) return 0;
    if (res.pair) {
      std::cout << "origin pair: (" << res.pair->first << ", " << res.pair->second << ")\n";
    }
    std::cout << "theta:  " << res.theta->format() << "\n";
    std::cout << "kernel: " << res.kernel->format() << "\n";
    std::cout << "syn:    " << res.syn->format() << "\n";
    if (c.recheck) {
      const Partition kernel = translation_kernel(fsys, *res.theta);
      const Partition s = syntactic_congruence(a, *res.theta);
      const bool confirmed = kernel == *res.kernel && s == *res.syn && kernel != s;
      std::cout << "recheck: " << (confirmed ? "counterexample confirmed" : "RECHECK FAILED")
                << "\n";
    }
    return 1;
  }

  if (c.what == "subcong") {
    TranslationSystem gsys =
        (c.terms2.empty() && c.depth2 < 0)
            ? build_system(a, c.terms, c.depth, limits, "terms")
            : build_system(a, c.terms2, c.depth2, limits, "terms2");
    const auto res = determines_principal_subcongruences(a, fsys, gsys);
    if (res.holds) {
      std::cout << "subcongruence determination: holds\n";
      return 0;
    }
    std::cout << "subcongruence determination: fails at (" << res.pair->first << ", "
              << res.pair->second << ")\n";
    return 1;
  }

  throw InputError("check target '" + c.what + "' is not principal, syntactic or subcong");
}

struct QomegaOpts {
  int n = 0;
  bool emit = false;
  std::string out;
  bool sentences = false;
  bool report = false;
  int depth_growth = 0;
};

int cmd_qomega(const QomegaOpts& q, const CommonOpts& opts) {
  const int actions = (q.emit ? 1 : 0) + (q.sentences ? 1 : 0) + (q.report ? 1 : 0) +
                      (q.depth_growth > 0 ? 1 : 0);
  if (actions != 1) {
    throw InputError("pick exactly one of --emit, --sentences, --report, --depth-growth");
  }

  if (q.depth_growth > 0) {
    const auto rows = depth_growth_experiment(q.depth_growth, opts.limits());
    if (opts.tsv()) {
      std::cout << "i\ttruncation\tdepth\tsteps\n";
      for (const auto& r : rows) {
        std::cout << r.index << "\tQ" << r.truncation << "\t" << r.depth << "\t"
                  << r.witness.steps.size() << "\n";
      }
      return 0;
    }
    for (const auto& r : rows) {
      const QTruncation qt = make_qn(r.truncation);
      std::cout << "pair (0, a" << r.index << ") in Q" << r.truncation
                << ": least sufficient depth " << r.depth << "\n";
      print_witness(std::cout, qt.algebra, r.witness);
    }
    return 0;
  }

  if (q.n < 1) throw InputError("truncation index must be at least 1");
  const QTruncation qt = make_qn(q.n);

  if (q.emit) {
    const std::string text =
        write_alg_text({"Q" + std::to_string(q.n), qt.algebra}, qt.labels);
    if (q.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(q.out, std::ios::binary);
      if (!f) throw InputError("cannot write '" + q.out + "'");
      f << text;
    }
    return 0;
  }

  if (q.sentences) {
    const int prod = qt.algebra.signature().index_of("prod");
    const std::int32_t zero = zero_element(qt.algebra);
    const auto nf = check_nonzero_factors(qt.algebra, prod, zero, opts.threads);
    const auto ca = check_cancellation(qt.algebra, prod, zero, opts.threads);
    auto line = [&](const char* name, const SentenceResult& r) {
      std::cout << name << ": " << (r.holds ? "holds" : "fails");
      if (!r.holds) {
        std::cout << " at (";
        const auto& vs = r.counterexample->values;
        for (std::size_t i = 0; i < vs.size(); ++i) {
          if (i) std::cout << ",";
          std::cout << qt.labels[static_cast<std::size_t>(vs[i])];
        }
        std::cout << ")";
      }
      std::cout << "\n";
    };
    line("nonzero factors", nf);
    line("cancellation", ca);
    return nf.holds && ca.holds ? 0 : 1;
  }

  // --report
  const auto report = qn_congruence_report(qt);
  std::cout << render_report(report, qt, opts.tsv());
  return 0;
}

int cmd_verify(const std::string& suite, const CommonOpts& opts) {
  const auto reports = run_suites(suite, opts.seed, opts.threads, opts.limits());
  bool any = false;
  for (const auto& r : reports) {
    if (opts.tsv()) {
      std::cout << r.name << "\t" << r.instances << "\t" << r.refutations << "\n";
    } else {
      std::cout << "suite " << r.name << ": " << r.instances << " instances, " << r.refutations
                << " refutations\n";
    }
    for (const auto& f : r.failures) std::cout << "  " << f << "\n";
    if (r.refutations > 0) any = true;
  }
  return any ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"congruence and translation analysis on finite algebras"};
  app.require_subcommand(1);

  CommonOpts opts;
  app.add_option("--seed", opts.seed, "rng seed for sampled work");
  app.add_option("--threads", opts.threads, "worker threads")->check(CLI::Range(1, 256));
  app.add_option("--cap", opts.cap, "largest carrier for exhaustive partition sweeps");
  app.add_option("--budget", opts.budget, "translation enumeration budget");
  app.add_option("--format", opts.format, "text or tsv")
      ->check(CLI::IsMember({"text", "tsv"}));

  auto* info = app.add_subcommand("info", "describe an algebra file");
  std::string info_path;
  info->add_option("file", info_path, "algebra file")->required();

  auto* principal = app.add_subcommand("principal", "principal congruence of a pair");
  std::string pr_path, pr_pair, pr_witness;
  principal->add_option("file", pr_path, "algebra file")->required();
  principal->add_option("pair", pr_pair, "generating pair a@b")->required();
  principal->add_option("--witness", pr_witness, "show a minimal chain for this pair c@d");

  auto* syn = app.add_subcommand("syn", "largest congruence below an equivalence");
  std::string syn_path, syn_partition;
  bool syn_oracle_flag = false;
  syn->add_option("file", syn_path, "algebra file")->required();
  syn->add_option("partition", syn_partition, "equivalence, e.g. '0 2 | 1'")->required();
  syn->add_flag("--oracle", syn_oracle_flag, "cross-check against the enumeration route");

  auto* check = app.add_subcommand("check", "determination properties of a term family");
  std::string check_path;
  CheckOpts check_opts;
  check->add_option("file", check_path, "algebra file")->required();
  check->add_option("--what", check_opts.what, "principal, syntactic or subcong");
  check->add_option("--terms", check_opts.terms, "term family, ';' separated");
  check->add_option("--depth", check_opts.depth, "use all terms of depth <= d");
  check->add_option("--terms2", check_opts.terms2, "second family for subcong");
  check->add_option("--depth2", check_opts.depth2, "second family as a depth");
  check->add_option("--mode", check_opts.mode, "exhaustive or principal (syntactic only)");
  check->add_flag("--recheck", check_opts.recheck, "re-derive a failing counterexample");

  auto* qomega = app.add_subcommand("qomega", "the Q family of algebras");
  QomegaOpts qopts;
  qomega->add_option("n", qopts.n, "truncation index");
  qomega->add_flag("--emit", qopts.emit, "print the algebra file");
  qomega->add_option("--out", qopts.out, "write --emit output here");
  qomega->add_flag("--sentences", qopts.sentences, "check the product sentences");
  qomega->add_flag("--report", qopts.report, "principal congruence report");
  qomega->add_option("--depth-growth", qopts.depth_growth,
                     "least sufficient depths for (0, a_i), i = 1..max");

  auto* verify = app.add_subcommand("verify", "randomized law suites over the corpus");
  std::string suite = "all";
  verify->add_option("--suite", suite,
                     "malcev, comp, quotient, subcong, agreement, chainbound or all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*info) return cmd_info(info_path);
    if (*principal) return cmd_principal(pr_path, pr_pair, pr_witness, opts);
    if (*syn) return cmd_syn(syn_path, syn_partition, syn_oracle_flag, opts);
    if (*check) return cmd_check(check_path, check_opts, opts);
    if (*qomega) return cmd_qomega(qopts, opts);
    if (*verify) return cmd_verify(suite, opts);
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
