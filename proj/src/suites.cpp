#include "synco/suites.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "synco/analysis.hpp"
#include "synco/congruence.hpp"
#include "synco/corpus.hpp"
#include "synco/errors.hpp"

namespace synco {

namespace {

constexpr std::size_t kFailureCap = 8;

struct Cell {
  long long instances = 0;
  long long refutations = 0;
  std::vector<std::string> failures;

  void fail(std::string msg) {
    ++refutations;
    if (failures.size() < kFailureCap) failures.push_back(std::move(msg));
  }
};

std::uint32_t mix_seed(std::uint32_t seed, std::uint32_t salt) {
  const std::int32_t data[2] = {static_cast<std::int32_t>(seed),
                                static_cast<std::int32_t>(salt)};
  return static_cast<std::uint32_t>(fnv1a64(data));
}

Partition random_partition(int n, DetRng& rng) {
  std::vector<std::int32_t> rgs(static_cast<std::size_t>(n));
  std::int32_t maxv = -1;
  for (int i = 0; i < n; ++i) {
    rgs[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(rng.pick(
        static_cast<std::uint32_t>(maxv + 2)));
    maxv = std::max(maxv, rgs[static_cast<std::size_t>(i)]);
  }
  return Partition::from_rgs(rgs);
}

Relation random_relation(int n, DetRng& rng) {
  Relation r(n);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (rng.next() & 1) r.set(u, v);
    }
  }
  return r;
}

std::string term_set_str(const TermSet& ts, const Signature& sig) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i) os << ", ";
    os << ts[i].format(sig);
  }
  os << '}';
  return os.str();
}

// Runs body once per corpus algebra; exceptions become recorded failures.
std::vector<Cell> over_corpus(std::uint32_t seed, int threads,
                              const std::function<void(const NamedAlgebra&, int, Cell&)>& body) {
  const auto corpus = build_corpus(seed);
  std::vector<Cell> cells(corpus.size());
  parallel_for(0, static_cast<std::int64_t>(corpus.size()), threads, [&](std::int64_t i) {
    auto idx = static_cast<std::size_t>(i);
    try {
      body(corpus[idx], static_cast<int>(i), cells[idx]);
    } catch (const std::exception& e) {
      cells[idx].fail(corpus[idx].name + ": error: " + e.what());
    }
  });
  return cells;
}

SuiteReport fold(const char* name, const std::vector<Cell>& cells) {
  SuiteReport r;
  r.name = name;
  for (const Cell& c : cells) {
    r.instances += c.instances;
    r.refutations += c.refutations;
    for (const std::string& f : c.failures) {
      if (r.failures.size() < kFailureCap) r.failures.push_back(f);
    }
  }
  return r;
}

}  // namespace

SuiteReport run_agreement_suite(std::uint32_t seed, int threads, const Limits& limits) {
  auto cells = over_corpus(seed, threads, [&](const NamedAlgebra& na, int idx, Cell& cell) {
    const FiniteAlgebra& a = na.algebra;
    if (a.size() > 5) return;  // the exhaustive side sweeps every partition
    const auto families = sampled_term_families(a.signature(), mix_seed(seed, static_cast<std::uint32_t>(idx)));
    for (const TermSet& f : families) {
      const auto sys = TranslationSystem::from_term_set(a, f, limits);
      const auto ex = determines_syntactic(a, sys, SweepMode::exhaustive);
      const auto pr = determines_syntactic(a, sys, SweepMode::principal);
      ++cell.instances;
      if (ex.holds != pr.holds) {
        std::ostringstream os;
        os << na.name << " " << term_set_str(f, a.signature()) << ": exhaustive says "
           << (ex.holds ? "yes" : "no") << ", principal says " << (pr.holds ? "yes" : "no");
        cell.fail(os.str());
      }
    }
  });
  return fold("agreement", cells);
}

SuiteReport run_malcev_suite(std::uint32_t seed, int threads, const Limits& limits) {
  auto cells = over_corpus(seed, threads, [&](const NamedAlgebra& na, int, Cell& cell) {
    const FiniteAlgebra& a = na.algebra;
    const int n = a.size();
    const auto sys = translation_monoid(a, limits);
    const auto elems = elementary_maps(a);
    std::set<Term> vocabulary;
    for (const Translation& t : sys.items) vocabulary.insert(t.term);
    for (std::int32_t x = 0; x < n; ++x) {
      for (std::int32_t y = x + 1; y < n; ++y) {
        const std::pair<std::int32_t, std::int32_t> p{x, y};
        const Partition pr = generate_congruence(
            a, elems, std::span<const std::pair<std::int32_t, std::int32_t>>(&p, 1));
        ChainClosure cl(sys, n, x, y);
        ++cell.instances;
        if (cl.partition() != pr) {
          std::ostringstream os;
          os << na.name << ": closure of (" << x << ", " << y
             << ") at stabilization is not the principal congruence";
          cell.fail(os.str());
          continue;
        }
        for (std::int32_t c = 0; c < n; ++c) {
          for (std::int32_t d = c + 1; d < n; ++d) {
            if (!cl.same(c, d)) continue;
            const MalcevWitness w = cl.witness(c, d);
            const WitnessCheck check = verify_witness(a, w);
            ++cell.instances;
            bool known = true;
            for (const WitnessStep& s : w.steps) {
              if (!vocabulary.contains(s.term)) known = false;
            }
            if (!check.ok || !known) {
              std::ostringstream os;
              os << na.name << ": chain for (" << c << ", " << d << ") from (" << x << ", " << y
                 << ") " << (check.ok ? "uses a term outside the system" : check.detail.c_str());
              cell.fail(os.str());
            }
          }
        }
      }
    }
  });
  return fold("malcev", cells);
}

SuiteReport run_comp_suite(std::uint32_t seed, int threads, const Limits& limits) {
  auto cells = over_corpus(seed, threads, [&](const NamedAlgebra& na, int idx, Cell& cell) {
    const FiniteAlgebra& a = na.algebra;
    const int n = a.size();
    const auto families =
        sampled_term_families(a.signature(), mix_seed(seed, static_cast<std::uint32_t>(idx)));
    DetRng rng(mix_seed(seed, static_cast<std::uint32_t>(idx) * 2u + 1u));
    auto pick_family = [&]() -> const TermSet& {
      return families[rng.pick(static_cast<std::uint32_t>(families.size()))];
    };
    auto one = [&](const TermSet& f, const TermSet& g) {
      const Relation theta = random_relation(n, rng);
      const auto res = check_kernel_composition(a, f, g, theta, limits);
      ++cell.instances;
      if (!res.ok) {
        std::ostringstream os;
        os << na.name << " f=" << term_set_str(f, a.signature())
           << " g=" << term_set_str(g, a.signature()) << ": kernels differ";
        if (res.diff) os << " at (" << res.diff->first << ", " << res.diff->second << ")";
        cell.fail(os.str());
      }
    };
    for (int t = 0; t < 3; ++t) one(pick_family(), pick_family());
    const TermSet just_x{Term::variable()};
    one(just_x, pick_family());
    one(pick_family(), just_x);
  });
  return fold("comp", cells);
}

SuiteReport run_chainbound_suite(std::uint32_t seed, int threads, const Limits& limits) {
  auto cells = over_corpus(seed, threads, [&](const NamedAlgebra& na, int idx, Cell& cell) {
    const FiniteAlgebra& a = na.algebra;
    const int n = a.size();
    auto families =
        sampled_term_families(a.signature(), mix_seed(seed, static_cast<std::uint32_t>(idx)));
    DetRng rng(mix_seed(seed, static_cast<std::uint32_t>(idx) * 2u + 1u));
    if (families.size() > 20) {
      auto picked = sample_indices(static_cast<std::int64_t>(families.size()), 20, rng);
      std::sort(picked.begin(), picked.end());
      std::vector<TermSet> kept;
      kept.reserve(picked.size());
      for (std::int64_t p : picked) kept.push_back(std::move(families[static_cast<std::size_t>(p)]));
      families = std::move(kept);
    }
    std::vector<Partition> thetas;
    if (n <= 5) {
      for_each_partition(n, [&](const Partition& p) {
        thetas.push_back(p);
        return true;
      });
    } else {
      for (int t = 0; t < 20; ++t) thetas.push_back(random_partition(n, rng));
    }
    for (const TermSet& f : families) {
      const auto sys = TranslationSystem::from_term_set(a, f, limits);
      for (const Partition& theta : thetas) {
        const Partition kernel = translation_kernel(sys, theta);
        ++cell.instances;
        for (std::int32_t x = 0; x < n; ++x) {
          for (std::int32_t y = x + 1; y < n; ++y) {
            if (!kernel.same(x, y)) continue;
            if (!chain_closure(sys, n, x, y).refines(theta)) {
              std::ostringstream os;
              os << na.name << " " << term_set_str(f, a.signature()) << " theta="
                 << theta.format() << ": closure of (" << x << ", " << y
                 << ") leaves theta";
              cell.fail(os.str());
            }
          }
        }
      }
    }
  });
  return fold("chainbound", cells);
}

SuiteReport run_quotient_suite(std::uint32_t seed, int threads, const Limits& limits) {
  auto cells = over_corpus(seed, threads, [&](const NamedAlgebra& na, int idx, Cell& cell) {
    const FiniteAlgebra& a = na.algebra;
    const int n = a.size();
    const auto families =
        sampled_term_families(a.signature(), mix_seed(seed, static_cast<std::uint32_t>(idx)));
    DetRng rng(mix_seed(seed, static_cast<std::uint32_t>(idx) * 2u + 1u));
    for (int t = 0; t < 3; ++t) {
      const Partition theta = random_partition(n, rng);
      const TermSet& f = families[rng.pick(static_cast<std::uint32_t>(families.size()))];
      const auto res = check_quotient_kernel_transfer(a, theta, f, limits);
      ++cell.instances;
      if (!res.ok()) {
        std::ostringstream os;
        os << na.name << " theta=" << theta.format() << " f=" << term_set_str(f, a.signature())
           << ": kernel " << (res.kernel_ok ? "ok" : "broken") << ", quotient syn "
           << (res.syn_trivial_ok ? "trivial" : "nontrivial");
        cell.fail(os.str());
      }
    }
  });
  return fold("quotient", cells);
}

SuiteReport run_subcong_suite(std::uint32_t seed, int threads, const Limits& limits) {
  auto cells = over_corpus(seed, threads, [&](const NamedAlgebra& na, int idx, Cell& cell) {
    const FiniteAlgebra& a = na.algebra;
    if (a.size() > limits.exhaustive_cap) return;
    const auto families =
        sampled_term_families(a.signature(), mix_seed(seed, static_cast<std::uint32_t>(idx)));
    DetRng rng(mix_seed(seed, static_cast<std::uint32_t>(idx) * 2u + 1u));
    auto one = [&](const TermSet& f, const TermSet& g) {
      const auto res = check_subcong_implies_syntactic(a, f, g, limits);
      ++cell.instances;
      if (!res.ok) {
        std::ostringstream os;
        os << na.name << " f=" << term_set_str(f, a.signature())
           << " g=" << term_set_str(g, a.signature())
           << ": hypothesis holds but the composed family misses a syntactic congruence";
        cell.fail(os.str());
      }
    };
    const TermSet all_depth2 = enumerate_terms(a.signature(), 2);
    one(all_depth2, all_depth2);
    for (int t = 0; t < 2; ++t) {
      one(families[rng.pick(static_cast<std::uint32_t>(families.size()))],
          families[rng.pick(static_cast<std::uint32_t>(families.size()))]);
    }
  });
  return fold("subcong", cells);
}

std::vector<SuiteReport> run_suites(const std::string& which, std::uint32_t seed, int threads,
                                    const Limits& limits) {
  std::vector<SuiteReport> out;
  const bool all = which == "all";
  if (all || which == "malcev") out.push_back(run_malcev_suite(seed, threads, limits));
  if (all || which == "comp") out.push_back(run_comp_suite(seed, threads, limits));
  if (all || which == "quotient") out.push_back(run_quotient_suite(seed, threads, limits));
  if (all || which == "subcong") out.push_back(run_subcong_suite(seed, threads, limits));
  if (all || which == "agreement") out.push_back(run_agreement_suite(seed, threads, limits));
  if (all || which == "chainbound") out.push_back(run_chainbound_suite(seed, threads, limits));
  if (out.empty()) {
    throw InputError("unknown suite '" + which +
                     "' (malcev, comp, quotient, subcong, agreement, chainbound, all)");
  }
  return out;
}

}  // namespace synco
