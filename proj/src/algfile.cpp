#include "synco/algfile.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "synco/errors.hpp"
#include "synco/util.hpp"

namespace synco {

namespace {

struct Token {
  std::string text;
  int line;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::string cur;
  int line = 1;
  int tok_line = 1;
  bool in_comment = false;
  auto flush = [&] {
    if (!cur.empty()) {
      out.push_back({cur, tok_line});
      cur.clear();
    }
  };
  for (char c : text) {
    if (c == '\n') {
      flush();
      in_comment = false;
      ++line;
      continue;
    }
    if (in_comment) continue;
    if (c == '#') {
      flush();
      in_comment = true;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
      continue;
    }
    if (cur.empty()) tok_line = line;
    cur.push_back(c);
  }
  flush();
  return out;
}

[[noreturn]] void fail(std::string_view origin, int line, const std::string& msg) {
  std::ostringstream os;
  os << origin << ":" << line << ": " << msg;
  throw InputError(os.str());
}

long long parse_int(std::string_view origin, const Token& t) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(t.text, &used);
    if (used != t.text.size()) throw std::invalid_argument(t.text);
    return v;
  } catch (const std::exception&) {
    fail(origin, t.line, "expected an integer, got '" + t.text + "'");
  }
}

}  // namespace

NamedAlgebra parse_alg_text(std::string_view text, std::string_view origin) {
  auto toks = tokenize(text);
  std::size_t i = 0;
  auto need = [&](const char* what) -> const Token& {
    if (i >= toks.size()) {
      int line = toks.empty() ? 1 : toks.back().line;
      fail(origin, line, std::string("unexpected end of input, expected ") + what);
    }
    return toks[i++];
  };

  const Token& kw_algebra = need("'algebra'");
  if (kw_algebra.text != "algebra") fail(origin, kw_algebra.line, "expected 'algebra <name>'");
  std::string name = need("algebra name").text;

  const Token& kw_size = need("'size'");
  if (kw_size.text != "size") fail(origin, kw_size.line, "expected 'size <n>'");
  const Token& size_tok = toks[i - 1];
  long long n = parse_int(origin, need("carrier size"));
  if (n <= 0 || n > 100000) fail(origin, size_tok.line, "carrier size out of range");

  std::vector<OpSymbol> ops;
  std::vector<std::vector<std::int32_t>> tables;
  while (i < toks.size()) {
    const Token& kw_op = need("'op'");
    if (kw_op.text != "op") fail(origin, kw_op.line, "expected 'op <name> <arity>'");
    std::string op_name = need("operation name").text;
    const Token& arity_tok = toks[i];
    long long arity = parse_int(origin, need("operation arity"));
    if (arity < 0 || arity > 8) fail(origin, arity_tok.line, "operation arity out of range");
    long long entries;
    try {
      entries = checked_pow(static_cast<int>(n), static_cast<int>(arity), 100'000'000LL);
    } catch (const ResourceError& e) {
      fail(origin, arity_tok.line, e.what());
    }
    std::vector<std::int32_t> table;
    table.reserve(static_cast<std::size_t>(entries));
    for (long long j = 0; j < entries; ++j) {
      const Token& t = need("table entry");
      long long v = parse_int(origin, t);
      if (v < 0 || v >= n) {
        std::ostringstream os;
        os << "table entry " << v << " outside carrier {0.." << n - 1 << "}";
        fail(origin, t.line, os.str());
      }
      table.push_back(static_cast<std::int32_t>(v));
    }
    ops.push_back({std::move(op_name), static_cast<int>(arity)});
    tables.push_back(std::move(table));
  }

  try {
    return {std::move(name),
            FiniteAlgebra::make(Signature(std::move(ops)), static_cast<int>(n), std::move(tables))};
  } catch (const InputError& e) {
    fail(origin, 1, e.what());
  }
}

NamedAlgebra read_alg_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_alg_text(os.str(), path);
}

std::string write_alg_text(const NamedAlgebra& na, std::span<const std::string> labels) {
  const FiniteAlgebra& a = na.algebra;
  const int n = a.size();
  std::ostringstream os;
  os << "algebra " << na.name << "\n";
  os << "size " << n << "\n";
  if (!labels.empty()) {
    os << "# labels:";
    for (int i = 0; i < n; ++i) os << ' ' << i << '=' << labels[static_cast<std::size_t>(i)];
    os << "\n";
  }
  for (int op = 0; op < a.signature().op_count(); ++op) {
    const auto& sym = a.signature().op(op);
    os << "op " << sym.name << ' ' << sym.arity << "\n";
    const auto& t = a.table(op);
    // one row per leading argument (or a single row for arity <= 1)
    std::size_t row = sym.arity >= 2 ? t.size() / static_cast<std::size_t>(n) : t.size();
    for (std::size_t j = 0; j < t.size(); ++j) {
      os << t[j];
      os << ((j % row == row - 1) ? '\n' : ' ');
    }
  }
  return os.str();
}

}  // namespace synco
