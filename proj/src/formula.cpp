#include "fomc/formula.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "fomc/error.hpp"

namespace fomc {

Formula make_true() { return Formula{NodeKind::truth, {}, {}, {}, {}}; }
Formula make_false() { return Formula{NodeKind::falsity, {}, {}, {}, {}}; }

Formula make_atom(std::string symbol, std::vector<std::string> vars) {
  return Formula{NodeKind::atom, std::move(symbol), std::move(vars), {}, {}};
}

Formula make_equal(std::string x, std::string y) {
  return Formula{NodeKind::equality, {}, {std::move(x), std::move(y)}, {}, {}};
}

Formula make_not_equal(std::string x, std::string y) { return make_not(make_equal(std::move(x), std::move(y))); }

Formula make_not(Formula f) { return Formula{NodeKind::negation, {}, {}, {}, {std::move(f)}}; }

Formula make_and(std::vector<Formula> children) {
  if (children.empty()) return make_true();
  if (children.size() == 1) return std::move(children.front());
  return Formula{NodeKind::conjunction, {}, {}, {}, std::move(children)};
}

Formula make_or(std::vector<Formula> children) {
  if (children.empty()) return make_false();
  if (children.size() == 1) return std::move(children.front());
  return Formula{NodeKind::disjunction, {}, {}, {}, std::move(children)};
}

Formula make_forall(std::string var, Formula body, std::optional<ElementSet> restriction) {
  return Formula{NodeKind::forall, {}, {std::move(var)}, restriction, {std::move(body)}};
}

Formula make_exists(std::string var, Formula body, std::optional<ElementSet> restriction) {
  return Formula{NodeKind::exists, {}, {std::move(var)}, restriction, {std::move(body)}};
}

std::size_t node_count(const Formula& f) {
  std::size_t n = 1;
  for (const Formula& c : f.children) n += node_count(c);
  return n;
}

namespace {

void collect_free(const Formula& f, std::vector<std::string>& bound, std::vector<std::string>& out) {
  auto note = [&](const std::string& v) {
    if (std::find(bound.begin(), bound.end(), v) == bound.end() &&
        std::find(out.begin(), out.end(), v) == out.end())
      out.push_back(v);
  };
  switch (f.kind) {
    case NodeKind::atom:
    case NodeKind::equality:
      for (const auto& v : f.vars) note(v);
      return;
    case NodeKind::forall:
    case NodeKind::exists:
      bound.push_back(f.vars[0]);
      collect_free(f.body(), bound, out);
      bound.pop_back();
      return;
    default:
      for (const Formula& c : f.children) collect_free(c, bound, out);
  }
}

}  // namespace

std::vector<std::string> free_variables(const Formula& f) {
  std::vector<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

// ---- parsing ----

namespace {

enum class Tok { ident, number, lparen, rparen, lbrace, rbrace, comma, dot, amp, bar, tilde, eq, neq, end };

struct Token {
  Tok type;
  std::string text;
  int line;
  int column;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    int l = line, cl = col;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::ident, std::string(s.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::number, std::string(s.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    if (c == '!' && i + 1 < s.size() && s[i + 1] == '=') {
      out.push_back({Tok::neq, "!=", l, cl});
      advance(2);
      continue;
    }
    Tok t;
    switch (c) {
      case '(': t = Tok::lparen; break;
      case ')': t = Tok::rparen; break;
      case '{': t = Tok::lbrace; break;
      case '}': t = Tok::rbrace; break;
      case ',': t = Tok::comma; break;
      case '.': t = Tok::dot; break;
      case '&': t = Tok::amp; break;
      case '|': t = Tok::bar; break;
      case '~': t = Tok::tilde; break;
      case '=': t = Tok::eq; break;
      default:
        throw ParseError(l, cl, std::string("unexpected character '") + c + "'");
    }
    out.push_back({t, std::string(1, c), l, cl});
    advance(1);
  }
  out.push_back({Tok::end, "", line, col});
  return out;
}

bool is_keyword(const std::string& s) {
  return s == "forall" || s == "exists" || s == "in" || s == "true" || s == "false";
}

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& opts) : toks_(tokenize(text)), opts_(opts) {}

  Formula parse() {
    Formula f = formula();
    if (peek().type != Tok::end) fail(peek(), "unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& take() { return toks_[pos_++]; }
  [[noreturn]] void fail(const Token& t, const std::string& what) const {
    throw ParseError(t.line, t.column, what);
  }
  const Token& expect(Tok type, const char* what) {
    if (peek().type != type) fail(peek(), std::string("expected ") + what);
    return take();
  }
  bool at_keyword(const char* kw) const { return peek().type == Tok::ident && peek().text == kw; }

  Formula formula() {
    if (at_keyword("forall") || at_keyword("exists")) return quantifier();
    return disjunction();
  }

  Formula quantifier() {
    bool universal = take().text == "forall";
    const Token& var = expect(Tok::ident, "variable");
    if (is_keyword(var.text)) fail(var, "keyword used as variable");
    if (in_scope(var.text)) fail(var, "shadowed variable '" + var.text + "'");
    std::optional<ElementSet> restriction;
    if (at_keyword("in")) {
      take();
      expect(Tok::lbrace, "'{'");
      ElementSet set;
      while (true) {
        const Token& num = expect(Tok::number, "element");
        if (num.text.size() > 2 || std::stoi(num.text) >= kMaxDomain) fail(num, "element out of range");
        set.insert(std::stoi(num.text));
        if (peek().type == Tok::comma) {
          take();
          continue;
        }
        break;
      }
      expect(Tok::rbrace, "'}'");
      restriction = set;
    }
    expect(Tok::dot, "'.'");
    scope_.push_back(var.text);
    Formula body = formula();
    scope_.pop_back();
    return universal ? make_forall(var.text, std::move(body), restriction)
                     : make_exists(var.text, std::move(body), restriction);
  }

  Formula disjunction() {
    std::vector<Formula> parts{conjunction()};
    while (peek().type == Tok::bar) {
      take();
      parts.push_back(conjunction());
    }
    return make_or(std::move(parts));
  }

  Formula conjunction() {
    std::vector<Formula> parts{unit()};
    while (peek().type == Tok::amp) {
      take();
      parts.push_back(unit());
    }
    return make_and(std::move(parts));
  }

  Formula unit() {
    const Token& t = peek();
    if (t.type == Tok::tilde) {
      take();
      return make_not(unit());
    }
    if (t.type == Tok::lparen) {
      take();
      Formula f = formula();
      expect(Tok::rparen, "')'");
      return f;
    }
    if (t.type != Tok::ident) fail(t, "expected a formula");
    if (t.text == "forall" || t.text == "exists") return quantifier();
    if (t.text == "true") {
      take();
      return make_true();
    }
    if (t.text == "false") {
      take();
      return make_false();
    }
    if (is_keyword(t.text)) fail(t, "unexpected keyword '" + t.text + "'");
    if (peek(1).type == Tok::lparen) {
      std::string name = take().text;
      take();
      std::vector<std::string> args{variable()};
      while (peek().type == Tok::comma) {
        take();
        args.push_back(variable());
      }
      expect(Tok::rparen, "')'");
      return make_atom(std::move(name), std::move(args));
    }
    std::string x = variable();
    if (peek().type == Tok::eq) {
      take();
      return make_equal(x, variable());
    }
    if (peek().type == Tok::neq) {
      take();
      return make_not_equal(x, variable());
    }
    fail(peek(), "expected '=', '!=' or '(' after identifier");
  }

  std::string variable() {
    const Token& t = expect(Tok::ident, "variable");
    if (is_keyword(t.text)) fail(t, "keyword used as variable");
    if (!in_scope(t.text) &&
        std::find(opts_.free_variables.begin(), opts_.free_variables.end(), t.text) ==
            opts_.free_variables.end())
      fail(t, "unbound variable '" + t.text + "'");
    return t.text;
  }

  bool in_scope(const std::string& v) const {
    return std::find(scope_.begin(), scope_.end(), v) != scope_.end();
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const ParseOptions& opts_;
  std::vector<std::string> scope_;
};

}  // namespace

Formula parse_formula(std::string_view text, const ParseOptions& opts) { return Parser(text, opts).parse(); }

Formula read_formula_file(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  return parse_formula(text);
}

// ---- rendering ----

namespace {

// level 0: anywhere; 1: operand of |; 2: operand of &; 3: operand of ~
std::string render_at(const Formula& f, int level) {
  switch (f.kind) {
    case NodeKind::truth:
      return "true";
    case NodeKind::falsity:
      return "false";
    case NodeKind::atom: {
      std::string s = f.symbol + "(";
      for (std::size_t i = 0; i < f.vars.size(); ++i) s += (i ? "," : "") + f.vars[i];
      return s + ")";
    }
    case NodeKind::equality:
      return f.vars[0] + " = " + f.vars[1];
    case NodeKind::negation: {
      const Formula& c = f.body();
      if (c.kind == NodeKind::equality) return c.vars[0] + " != " + c.vars[1];
      return "~" + render_at(c, 3);
    }
    case NodeKind::conjunction:
    case NodeKind::disjunction: {
      bool is_and = f.kind == NodeKind::conjunction;
      std::string s;
      for (std::size_t i = 0; i < f.children.size(); ++i) {
        if (i) s += is_and ? " & " : " | ";
        s += render_at(f.children[i], is_and ? 2 : 1);
      }
      bool wrap = is_and ? level >= 2 : level >= 1;
      return wrap ? "(" + s + ")" : s;
    }
    case NodeKind::forall:
    case NodeKind::exists: {
      std::string s = f.kind == NodeKind::forall ? "forall " : "exists ";
      s += f.vars[0];
      if (f.restriction) {
        s += " in {";
        bool first = true;
        for (Element e : *f.restriction) {
          s += (first ? "" : ",") + std::to_string(e);
          first = false;
        }
        s += "}";
      }
      s += ". " + render_at(f.body(), 0);
      return level > 0 ? "(" + s + ")" : s;
    }
  }
  return {};
}

}  // namespace

std::string render(const Formula& f) { return render_at(f, 0); }

void check_signature(const Formula& f, const Signature& sig) {
  if (f.kind == NodeKind::atom) {
    auto i = sig.find(f.symbol);
    if (!i) throw SignatureMismatch("unknown relation symbol '" + f.symbol + "'");
    if (sig[*i].arity != static_cast<int>(f.vars.size()))
      throw SignatureMismatch("arity mismatch for '" + f.symbol + "': expected " +
                              std::to_string(sig[*i].arity) + ", got " + std::to_string(f.vars.size()));
  }
  for (const Formula& c : f.children) check_signature(c, sig);
}

// ---- normal forms ----

namespace {

Formula nnf(const Formula& f, bool negated) {
  switch (f.kind) {
    case NodeKind::truth:
      return negated ? make_false() : make_true();
    case NodeKind::falsity:
      return negated ? make_true() : make_false();
    case NodeKind::atom:
    case NodeKind::equality:
      return negated ? make_not(f) : f;
    case NodeKind::negation:
      return nnf(f.body(), !negated);
    case NodeKind::conjunction:
    case NodeKind::disjunction: {
      Formula out;
      bool is_and = f.kind == NodeKind::conjunction;
      out.kind = (is_and != negated) ? NodeKind::conjunction : NodeKind::disjunction;
      for (const Formula& c : f.children) out.children.push_back(nnf(c, negated));
      return out;
    }
    case NodeKind::forall:
    case NodeKind::exists: {
      Formula out = f;
      bool universal = f.kind == NodeKind::forall;
      out.kind = (universal != negated) ? NodeKind::forall : NodeKind::exists;
      out.children = {nnf(f.body(), negated)};
      return out;
    }
  }
  return f;
}

Formula flip_relational_literals(const Formula& f) {
  if (f.kind == NodeKind::atom) return make_not(f);
  if (f.kind == NodeKind::negation && f.body().kind == NodeKind::atom) return f.body();
  Formula out = f;
  for (Formula& c : out.children) c = flip_relational_literals(c);
  return out;
}

void scan_fragment(const Formula& f, FragmentKey& k) {
  switch (f.kind) {
    case NodeKind::equality:
      k.eq = true;
      break;
    case NodeKind::negation:
      if (f.body().kind == NodeKind::equality) k.neq = true;
      else k.neg = true;
      break;
    case NodeKind::conjunction:
      k.conj = true;
      break;
    case NodeKind::disjunction:
      k.disj = true;
      break;
    case NodeKind::forall:
      k.forall = true;
      break;
    case NodeKind::exists:
      k.exists = true;
      break;
    default:
      break;
  }
  if (f.kind == NodeKind::negation) return;
  for (const Formula& c : f.children) scan_fragment(c, k);
}

}  // namespace

Formula to_nnf(const Formula& f) { return nnf(f, false); }

Formula dualize(const Formula& f) { return flip_relational_literals(nnf(f, true)); }

// ---- fragments ----

bool FragmentKey::contains(const FragmentKey& o) const {
  return (exists || !o.exists) && (forall || !o.forall) && (conj || !o.conj) && (disj || !o.disj) &&
         (eq || !o.eq) && (neq || !o.neq) && (neg || !o.neg);
}

std::string FragmentKey::to_string() const {
  auto join = [](std::vector<std::string> parts) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + parts[i];
    return s;
  };
  std::vector<std::string> q, c, e;
  if (exists) q.push_back("exists");
  if (forall) q.push_back("forall");
  if (conj) c.push_back("and");
  if (disj) c.push_back("or");
  if (eq) e.push_back("=");
  if (neq) e.push_back("!=");
  if (neg) e.push_back("~");
  std::string s = "{" + join(q) + ";" + join(c);
  if (!e.empty()) s += ";" + join(e);
  return s + "}";
}

FragmentKey fragment_of(const Formula& f) {
  FragmentKey k;
  scan_fragment(to_nnf(f), k);
  return k;
}

FragmentKey dual_key(const FragmentKey& k) {
  FragmentKey d = k;
  d.exists = k.forall;
  d.forall = k.exists;
  d.conj = k.disj;
  d.disj = k.conj;
  d.eq = k.neq;
  d.neq = k.eq;
  return d;
}

namespace {

struct NamedKey {
  const char* name;
  FragmentKey key;
};

// Fields: exists, forall, conj, disj, eq, neq, neg
const NamedKey kNamedKeys[] = {
    {"pp", {true, false, true, false, false, false, false}},
    {"pp-eq", {true, false, true, false, true, false, false}},
    {"pp-neq", {true, false, true, false, false, true, false}},
    {"pp-disj", {true, false, true, true, false, false, false}},
    {"pp-disj-eq", {true, false, true, true, true, false, false}},
    {"pp-disj-neq", {true, false, true, true, false, true, false}},
    {"qcsp", {true, true, true, false, false, false, false}},
    {"qcsp-eq", {true, true, true, false, true, false, false}},
    {"qcsp-neq", {true, true, true, false, false, true, false}},
    {"pos-eqfree", {true, true, true, true, false, false, false}},
    {"pos-fo-eq", {true, true, true, true, true, false, false}},
    {"pos-fo-neq", {true, true, true, true, false, true, false}},
    {"eqfree-neg", {true, true, true, true, false, false, true}},
    {"fo", {true, true, true, true, true, true, true}},
    {"ex-disj", {true, false, false, true, false, false, false}},
    {"ex-disj-eq", {true, false, false, true, true, false, false}},
    {"ex-disj-neq", {true, false, false, true, false, true, false}},
};

}  // namespace

FragmentKey parse_fragment_key(std::string_view name) {
  if (name.starts_with("dual:")) return dual_key(parse_fragment_key(name.substr(5)));
  for (const NamedKey& k : kNamedKeys)
    if (name == k.name) return k.key;
  throw Error("unknown fragment key '" + std::string(name) + "'");
}

std::string fragment_name(const FragmentKey& k) {
  for (const NamedKey& n : kNamedKeys)
    if (n.key == k) return n.name;
  for (const NamedKey& n : kNamedKeys)
    if (dual_key(n.key) == k) return std::string("dual:") + n.name;
  return k.to_string();
}

Formula relativise(const Formula& f, ElementSet u, ElementSet x, RelativiseMode mode) {
  Formula out = f;
  if (f.is_quantifier()) {
    bool universal = f.kind == NodeKind::forall;
    bool apply = universal ? mode != RelativiseMode::existentialOnly : mode != RelativiseMode::universalOnly;
    if (apply) {
      ElementSet target = universal ? u : x;
      ElementSet r = f.restriction ? (*f.restriction & target) : target;
      if (r.empty()) throw Error("relativisation leaves variable '" + f.vars[0] + "' with no range");
      out.restriction = r;
    }
  }
  for (Formula& c : out.children) c = relativise(c, u, x, mode);
  return out;
}

}  // namespace fomc
