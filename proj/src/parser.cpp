#include "fixprov/parser.hpp"

#include <cctype>
#include <map>
#include <vector>

#include "fixprov/error.hpp"

namespace fixprov {

namespace {

enum class Tok { Name, LParen, RParen, Comma, Dot, At, And, Or, Bang, Eq, Neq, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {  // comment to end of line
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    int l = line, cl = col;
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\'')) ++j;
      out.push_back({Tok::Name, std::string(s.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    Tok k;
    std::size_t len = 1;
    switch (c) {
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case ',': k = Tok::Comma; break;
      case '.': k = Tok::Dot; break;
      case '@': k = Tok::At; break;
      case '&': k = Tok::And; break;
      case '|': k = Tok::Or; break;
      case '=': k = Tok::Eq; break;
      case '!':
        if (i + 1 < s.size() && s[i + 1] == '=') {
          k = Tok::Neq;
          len = 2;
        } else {
          k = Tok::Bang;
        }
        break;
      default:
        throw Error(ErrorCode::ParseError,
                    std::to_string(l) + ":" + std::to_string(cl) + ": unexpected character '" + std::string(1, c) + "'");
    }
    out.push_back({k, std::string(s.substr(i, len)), l, cl});
    advance(len);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

std::string describe(const Token& t) { return t.kind == Tok::End ? "end of input" : "'" + t.text + "'"; }

bool is_keyword(const std::string& s) { return s == "exists" || s == "forall" || s == "lfp" || s == "gfp"; }

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& opts) : toks_(lex(text)), opts_(opts) {
    vars_.assign(opts.free_variables.begin(), opts.free_variables.end());
    for (const auto& [n, a] : opts.free_fixpoints) fps_.emplace_back(n, a);
  }

  Formula parse() {
    Formula f = formula();
    if (peek().kind != Tok::End) fail(peek(), "unexpected " + describe(peek()));
    return f;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const Token& at, const std::string& msg) const {
    throw Error(ErrorCode::ParseError, std::to_string(at.line) + ":" + std::to_string(at.column) + ": " + msg);
  }

  Token expect(Tok k, const char* what) {
    if (peek().kind != k) fail(peek(), std::string("expected ") + what + ", found " + describe(peek()));
    return next();
  }

  std::string name(const char* what) {
    Token t = expect(Tok::Name, what);
    if (is_keyword(t.text)) fail(t, std::string("expected ") + what + ", found keyword '" + t.text + "'");
    return t.text;
  }

  bool starts_scope() const {
    return peek().kind == Tok::Name && is_keyword(peek().text);
  }

  Formula formula() {
    if (starts_scope()) return scoped();
    return disjunction();
  }

  Formula scoped() {
    Token kw = next();
    if (kw.text == "exists" || kw.text == "forall") {
      std::string v = name("variable");
      expect(Tok::Dot, "'.'");
      vars_.push_back(v);
      Formula body = formula();
      vars_.pop_back();
      return kw.text == "exists" ? exists(v, body) : forall(v, body);
    }
    std::string r = name("relation variable");
    Token rt = toks_[pos_ - 1];
    if (opts_.vocabulary && opts_.vocabulary->arity(r)) fail(rt, "fixed-point variable " + r + " shadows a relation");
    for (const auto& fp : fps_) {
      if (fp.first == r) fail(rt, "fixed-point variable " + r + " is already bound");
    }
    expect(Tok::LParen, "'('");
    std::vector<std::string> params;
    params.push_back(name("parameter"));
    while (peek().kind == Tok::Comma) {
      next();
      params.push_back(name("parameter"));
    }
    expect(Tok::RParen, "')'");
    expect(Tok::Dot, "'.'");
    for (const auto& p : params) vars_.push_back(p);
    fps_.emplace_back(r, static_cast<int>(params.size()));
    Formula body = formula();
    fps_.pop_back();
    vars_.resize(vars_.size() - params.size());
    Token at = expect(Tok::At, "'@'");
    std::vector<Term> args = arguments();
    if (args.size() != params.size()) {
      throw Error(ErrorCode::ArityMismatch, std::to_string(at.line) + ":" + std::to_string(at.column) + ": " + r +
                                                " has " + std::to_string(params.size()) + " parameters, applied to " +
                                                std::to_string(args.size()) + " arguments");
    }
    return kw.text == "lfp" ? lfp(r, params, body, args) : gfp(r, params, body, args);
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (peek().kind == Tok::Or) {
      next();
      f = lor(f, conjunction());
    }
    return f;
  }

  Formula conjunction() {
    Formula f = atom();
    while (peek().kind == Tok::And) {
      next();
      f = land(f, atom());
    }
    return f;
  }

  Term term(const std::string& n) const {
    for (auto it = vars_.rbegin(); it != vars_.rend(); ++it) {
      if (*it == n) return var(n);
    }
    return cst(n);
  }

  std::vector<Term> arguments() {
    expect(Tok::LParen, "'('");
    std::vector<Term> args;
    args.push_back(term(name("argument")));
    while (peek().kind == Tok::Comma) {
      next();
      args.push_back(term(name("argument")));
    }
    expect(Tok::RParen, "')'");
    return args;
  }

  Formula atom() {
    const Token& t = peek();
    if (t.kind == Tok::Bang) {
      next();
      if (peek().kind == Tok::LParen) {
        next();
        Formula inner = formula();
        expect(Tok::RParen, "')'");
        return lnot(inner);
      }
      Formula inner = atom();
      if (inner.kind() == NodeKind::RelAtom) return neg_rel(inner->name, inner->args);
      return lnot(inner);
    }
    if (t.kind == Tok::LParen) {
      next();
      Formula inner = formula();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (t.kind != Tok::Name) fail(t, "expected a formula, found " + describe(t));
    if (is_keyword(t.text)) return scoped();
    if (peek(1).kind == Tok::LParen) return application();
    Token a = next();
    if (peek().kind == Tok::Eq || peek().kind == Tok::Neq) {
      bool positive = next().kind == Tok::Eq;
      Term lhs = term(a.text);
      Term rhs = term(name("argument"));
      return positive ? eq(lhs, rhs) : neq(lhs, rhs);
    }
    fail(peek(), "expected '(', '=' or '!=' after '" + a.text + "'");
  }

  Formula application() {
    Token n = next();
    std::vector<Term> args = arguments();
    auto where = [&] { return std::to_string(n.line) + ":" + std::to_string(n.column) + ": "; };
    for (auto it = fps_.rbegin(); it != fps_.rend(); ++it) {
      if (it->first != n.text) continue;
      if (static_cast<std::size_t>(it->second) != args.size()) {
        throw Error(ErrorCode::ArityMismatch, where() + n.text + " has arity " + std::to_string(it->second));
      }
      return fpvar(n.text, args);
    }
    if (opts_.vocabulary) {
      auto a = opts_.vocabulary->arity(n.text);
      if (!a) throw Error(ErrorCode::UnknownRelation, where() + "unknown relation '" + n.text + "'");
      if (static_cast<std::size_t>(*a) != args.size()) {
        throw Error(ErrorCode::ArityMismatch, where() + n.text + " has arity " + std::to_string(*a) + ", given " +
                                                  std::to_string(args.size()) + " arguments");
      }
    } else if (auto [it, fresh] = seen_.emplace(n.text, args.size()); !fresh && it->second != args.size()) {
      throw Error(ErrorCode::ArityMismatch, where() + n.text + " used with arity " + std::to_string(it->second) +
                                                " and " + std::to_string(args.size()));
    }
    return rel(n.text, args);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const ParseOptions& opts_;
  std::vector<std::string> vars_;
  std::vector<std::pair<std::string, int>> fps_;
  std::map<std::string, std::size_t> seen_;  // relation arities when no vocabulary is given
};

}  // namespace

Formula parse_formula(std::string_view text, const ParseOptions& options) {
  return Parser(text, options).parse();
}

}  // namespace fixprov
