#include "synco/terms.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "synco/errors.hpp"

namespace synco {

int Term::param_count(const Signature& sig) const {
  int c = 0;
  for (const Frame& f : frames_) c += sig.op(f.op).arity - 1;
  return c;
}

Term Term::compose(const Term& inner) const {
  Term t;
  t.frames_ = frames_;
  t.frames_.insert(t.frames_.end(), inner.frames_.begin(), inner.frames_.end());
  return t;
}

void Term::validate(const Signature& sig) const {
  for (const Frame& f : frames_) {
    if (f.op < 0 || f.op >= sig.op_count()) {
      throw InputError("term references an operation outside the signature");
    }
    int k = sig.op(f.op).arity;
    if (k < 1) {
      throw InputError("term applies nullary operation '" + sig.op(f.op).name + "'");
    }
    if (f.pos < 0 || f.pos >= k) {
      std::ostringstream os;
      os << "x position " << f.pos << " invalid for operation '" << sig.op(f.op).name << "'/"
         << k;
      throw InputError(os.str());
    }
  }
}

std::int32_t Term::eval(const FiniteAlgebra& a, std::int32_t x_val,
                        std::span<const std::int32_t> assignment) const {
  const Signature& sig = a.signature();
  const int d = depth();
  // slot layout: left params of frames 0..d-1, then right params of frames
  // d-1..0
  std::vector<int> left_start(static_cast<std::size_t>(d), 0);
  int total_left = 0;
  for (int i = 0; i < d; ++i) {
    left_start[static_cast<std::size_t>(i)] = total_left;
    total_left += frames_[static_cast<std::size_t>(i)].pos;
  }
  std::vector<int> right_start(static_cast<std::size_t>(d), 0);
  int off = total_left;
  for (int i = d - 1; i >= 0; --i) {
    right_start[static_cast<std::size_t>(i)] = off;
    const Frame& f = frames_[static_cast<std::size_t>(i)];
    off += sig.op(f.op).arity - 1 - f.pos;
  }
  if (off != static_cast<int>(assignment.size())) {
    throw PreconditionError("assignment length does not match the term's parameter count");
  }

  std::int32_t v = x_val;
  std::vector<std::int32_t> args;
  for (int i = d - 1; i >= 0; --i) {
    const Frame& f = frames_[static_cast<std::size_t>(i)];
    const int k = sig.op(f.op).arity;
    args.assign(static_cast<std::size_t>(k), 0);
    for (int s = 0; s < k; ++s) {
      if (s < f.pos) {
        args[static_cast<std::size_t>(s)] = assignment[static_cast<std::size_t>(left_start[static_cast<std::size_t>(i)] + s)];
      } else if (s == f.pos) {
        args[static_cast<std::size_t>(s)] = v;
      } else {
        args[static_cast<std::size_t>(s)] =
            assignment[static_cast<std::size_t>(right_start[static_cast<std::size_t>(i)] + (s - f.pos - 1))];
      }
    }
    v = a.apply(f.op, args);
  }
  return v;
}

namespace {

struct Parser {
  const Signature& sig;
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  [[noreturn]] void fail(const std::string& msg) {
    std::ostringstream os;
    os << "term literal: " << msg << " at offset " << pos << " in '" << text << "'";
    throw InputError(os.str());
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size()) {
      char c = text[pos];
      if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ',') break;
      ++pos;
    }
    if (start == pos) fail("expected a name");
    return std::string(text.substr(start, pos - start));
  }

  // Returns the frames of the parsed subterm, root first.
  std::vector<Frame> term() {
    std::string name = ident();
    skip_ws();
    if (name == "x") return {};
    int op = sig.index_of(name);
    if (op == -1) fail("unknown operation '" + name + "'");
    int k = sig.op(op).arity;
    if (k < 1) fail("operation '" + name + "' is nullary");
    if (pos >= text.size() || text[pos] != '(') fail("expected '(' after '" + name + "'");
    ++pos;
    int x_pos = -1;
    std::vector<Frame> child;
    for (int s = 0; s < k; ++s) {
      skip_ws();
      if (s > 0) {
        if (pos >= text.size() || text[pos] != ',') fail("expected ','");
        ++pos;
        skip_ws();
      }
      if (pos < text.size() && text[pos] == '_') {
        ++pos;
        // a slot: nothing to record
        continue;
      }
      if (x_pos != -1) fail("more than one non-slot child");
      x_pos = s;
      child = term();
    }
    skip_ws();
    if (pos >= text.size() || text[pos] != ')') fail("expected ')'");
    ++pos;
    if (x_pos == -1) fail("application without an x child");
    std::vector<Frame> out;
    out.push_back({static_cast<std::int32_t>(op), static_cast<std::int32_t>(x_pos)});
    out.insert(out.end(), child.begin(), child.end());
    return out;
  }
};

}  // namespace

Term Term::parse(const Signature& sig, std::string_view text) {
  Parser p{sig, text};
  auto frames = p.term();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  Term t;
  t.frames_ = std::move(frames);
  return t;
}

std::string Term::format(const Signature& sig) const {
  std::string out;
  for (const Frame& f : frames_) {
    out += sig.op(f.op).name;
    out += '(';
    for (int s = 0; s < f.pos; ++s) out += "_,";
  }
  out += 'x';
  for (int i = depth() - 1; i >= 0; --i) {
    const Frame& f = frames_[static_cast<std::size_t>(i)];
    const int k = sig.op(f.op).arity;
    for (int s = f.pos + 1; s < k; ++s) out += ",_";
    out += ')';
  }
  return out;
}

void canonicalize(TermSet& terms) {
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
}

TermSet elementary_terms(const Signature& sig) {
  TermSet out;
  for (int op = 0; op < sig.op_count(); ++op) {
    for (int pos = 0; pos < sig.op(op).arity; ++pos) out.push_back(Term::elementary(op, pos));
  }
  canonicalize(out);
  return out;
}

TermSet enumerate_terms(const Signature& sig, int max_depth, long long budget) {
  if (max_depth < 0) throw InputError("negative term depth");
  TermSet frames_pool = elementary_terms(sig);
  TermSet out{Term::variable()};
  TermSet level{Term::variable()};
  for (int d = 1; d <= max_depth; ++d) {
    TermSet next;
    for (const Term& t : level) {
      for (const Term& e : frames_pool) {
        next.push_back(t.compose(e));
        if (static_cast<long long>(out.size() + next.size()) > budget) {
          std::ostringstream os;
          os << "term enumeration exceeds budget " << budget;
          throw ResourceError(os.str());
        }
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
    if (level.empty()) break;
  }
  canonicalize(out);
  return out;
}

TermSet compose_sets(const TermSet& outer, const TermSet& inner) {
  TermSet out;
  out.reserve(outer.size() * inner.size());
  for (const Term& s : outer) {
    for (const Term& t : inner) out.push_back(s.compose(t));
  }
  canonicalize(out);
  return out;
}

TranslationSystem TranslationSystem::from_term_set(const FiniteAlgebra& a, const TermSet& terms,
                                                   const Limits& limits) {
  const int n = a.size();
  TermSet sorted = terms;
  canonicalize(sorted);

  long long cost = 0;
  std::vector<int> params;
  params.reserve(sorted.size());
  for (const Term& t : sorted) {
    t.validate(a.signature());
    int p = t.param_count(a.signature());
    params.push_back(p);
    cost += checked_pow(n, p, limits.translation_budget);
    if (cost > limits.translation_budget) {
      std::ostringstream os;
      os << "translation enumeration needs more than " << limits.translation_budget
         << " term/assignment pairs";
      throw ResourceError(os.str());
    }
  }

  TranslationSystem sys;
  std::map<std::vector<std::int32_t>, int> seen;
  for (std::size_t ti = 0; ti < sorted.size(); ++ti) {
    const Term& t = sorted[ti];
    const int p = params[ti];
    std::vector<std::int32_t> asg(static_cast<std::size_t>(p), 0);
    while (true) {
      std::vector<std::int32_t> m(static_cast<std::size_t>(n));
      for (int x = 0; x < n; ++x) m[static_cast<std::size_t>(x)] = t.eval(a, x, asg);
      if (!seen.contains(m)) {
        seen.emplace(m, static_cast<int>(sys.items.size()));
        sys.items.push_back({std::move(m), t, asg});
      }
      int carry = p - 1;
      while (carry >= 0 && asg[static_cast<std::size_t>(carry)] == n - 1) {
        asg[static_cast<std::size_t>(carry)] = 0;
        --carry;
      }
      if (carry < 0) break;
      ++asg[static_cast<std::size_t>(carry)];
    }
  }
  return sys;
}

TranslationSystem TranslationSystem::from_depth(const FiniteAlgebra& a, int max_depth,
                                                const Limits& limits) {
  const int n = a.size();
  auto elems = elementary_maps(a);

  TranslationSystem sys;
  std::map<std::vector<std::int32_t>, int> seen;

  // identity = the bare x at level 0
  {
    std::vector<std::int32_t> id(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) id[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(i);
    seen.emplace(id, 0);
    sys.items.push_back({std::move(id), Term::variable(), {}});
  }

  // per-item bookkeeping for extending assignments: number of left slots
  std::vector<int> total_left{0};
  std::size_t level_begin = 0, level_end = 1;

  struct Candidate {
    std::vector<std::int32_t> map;
    Term term;
    std::vector<std::int32_t> assignment;
    int total_left;
  };

  int depth = 0;
  while (max_depth < 0 || depth < max_depth) {
    std::vector<Candidate> cands;
    for (std::size_t idx = level_begin; idx < level_end; ++idx) {
      for (const ElementaryMap& e : elems) {
        // chain extended at the innermost end: the new map sends x through e
        // first
        std::vector<std::int32_t> m(static_cast<std::size_t>(n));
        const auto& base = sys.items[idx].map;
        for (int x = 0; x < n; ++x) {
          m[static_cast<std::size_t>(x)] =
              base[static_cast<std::size_t>(e.map[static_cast<std::size_t>(x)])];
        }
        if (seen.contains(m)) continue;
        Term t = sys.items[idx].term.compose(Term::elementary(e.op, e.pos));
        // slot layout: parent's left block, e's left args, e's right args,
        // parent's right block
        const auto& pasg = sys.items[idx].assignment;
        int pl = total_left[idx];
        std::vector<std::int32_t> asg;
        asg.reserve(pasg.size() + e.args.size());
        asg.insert(asg.end(), pasg.begin(), pasg.begin() + pl);
        asg.insert(asg.end(), e.args.begin(), e.args.end());
        asg.insert(asg.end(), pasg.begin() + pl, pasg.end());
        cands.push_back({std::move(m), std::move(t), std::move(asg), pl + e.pos});
      }
    }
    // Generation order is (parent, elementary), which is not witness order
    // when two parents share a term; sort so keep-first dedup retains the
    // canonically least (term, assignment) witness per map.
    std::sort(cands.begin(), cands.end(), [](const Candidate& l, const Candidate& r) {
      if (auto c = l.term <=> r.term; c != 0) return c < 0;
      return l.assignment < r.assignment;
    });
    std::size_t first_new = sys.items.size();
    for (Candidate& c : cands) {
      if (seen.contains(c.map)) continue;
      if (static_cast<long long>(sys.items.size()) >= limits.monoid_cap) {
        std::ostringstream os;
        os << "translation map count exceeds cap " << limits.monoid_cap;
        throw ResourceError(os.str());
      }
      seen.emplace(c.map, static_cast<int>(sys.items.size()));
      sys.items.push_back({std::move(c.map), std::move(c.term), std::move(c.assignment)});
      total_left.push_back(c.total_left);
    }
    ++depth;
    if (sys.items.size() == first_new) {
      // nothing new: the map set is already stable one level down
      sys.stabilization_depth = depth - 1;
      break;
    }
    level_begin = first_new;
    level_end = sys.items.size();
  }
  return sys;
}

TranslationSystem translation_monoid(const FiniteAlgebra& a, const Limits& limits) {
  return TranslationSystem::from_depth(a, -1, limits);
}

int monoid_stabilization_depth(const FiniteAlgebra& a, const Limits& limits) {
  return TranslationSystem::from_depth(a, -1, limits).stabilization_depth;
}

}  // namespace synco
