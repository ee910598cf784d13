#include "lpmr/parser.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

namespace lpmr {
namespace {

enum class Tok {
  Ident, Type, Def, Thm, LParen, RParen, LBracket, RBracket, Comma, Colon, Dot,
  Arrow, FatArrow, LongArrow, ColonEq, EqEq, Require, Assert, Check, Eval, End
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Type: return "'Type'";
    case Tok::Def: return "'def'";
    case Tok::Thm: return "'thm'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::Colon: return "':'";
    case Tok::Dot: return "'.'";
    case Tok::Arrow: return "'->'";
    case Tok::FatArrow: return "'=>'";
    case Tok::LongArrow: return "'-->'";
    case Tok::ColonEq: return "':='";
    case Tok::EqEq: return "'=='";
    case Tok::Require: return "'#REQUIRE'";
    case Tok::Assert: return "'#ASSERT'";
    case Tok::Check: return "'#CHECK'";
    case Tok::Eval: return "'#EVAL'";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::string text;
  Span span;
};

bool ident_char(unsigned char c) {
  return std::isalnum(c) || c == '_' || c == '\'' || c >= 0x80;
}

class Lexer {
 public:
  Lexer(std::string_view src, std::string file) : src_(src), file_(std::move(file)) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Span sp = here();
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", sp});
        return out;
      }
      unsigned char c = src_[pos_];
      if (ident_char(c)) {
        std::size_t start = pos_;
        while (pos_ < src_.size() && ident_char(src_[pos_])) advance();
        std::string word(src_.substr(start, pos_ - start));
        Tok k = Tok::Ident;
        if (word == "Type") k = Tok::Type;
        else if (word == "def") k = Tok::Def;
        else if (word == "thm") k = Tok::Thm;
        out.push_back({k, std::move(word), sp});
        continue;
      }
      if (c == '#') {
        std::size_t start = pos_;
        advance();
        while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) advance();
        std::string word(src_.substr(start, pos_ - start));
        Tok k;
        if (word == "#REQUIRE") k = Tok::Require;
        else if (word == "#ASSERT") k = Tok::Assert;
        else if (word == "#CHECK") k = Tok::Check;
        else if (word == "#EVAL") k = Tok::Eval;
        else throw ParseError(sp, "unknown pragma '" + word + "'");
        out.push_back({k, std::move(word), sp});
        continue;
      }
      auto starts = [&](std::string_view s) { return src_.substr(pos_, s.size()) == s; };
      auto emit = [&](Tok k, std::size_t len) {
        out.push_back({k, std::string(src_.substr(pos_, len)), sp});
        for (std::size_t i = 0; i < len; ++i) advance();
      };
      if (starts("-->")) emit(Tok::LongArrow, 3);
      else if (starts("->")) emit(Tok::Arrow, 2);
      else if (starts("=>")) emit(Tok::FatArrow, 2);
      else if (starts(":=")) emit(Tok::ColonEq, 2);
      else if (starts("==")) emit(Tok::EqEq, 2);
      else if (c == '(') emit(Tok::LParen, 1);
      else if (c == ')') emit(Tok::RParen, 1);
      else if (c == '[') emit(Tok::LBracket, 1);
      else if (c == ']') emit(Tok::RBracket, 1);
      else if (c == ',') emit(Tok::Comma, 1);
      else if (c == ':') emit(Tok::Colon, 1);
      else if (c == '.') emit(Tok::Dot, 1);
      else throw ParseError(sp, std::string("unexpected character '") + static_cast<char>(c) + "'");
    }
  }

 private:
  Span here() const { return Span{file_, line_, col_}; }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(src_[pos_]) & 0xC0) != 0x80) {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    for (;;) {
      while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
      if (src_.substr(pos_, 2) != "(;") return;
      Span open = here();
      int depth = 0;
      do {
        if (pos_ >= src_.size()) throw ParseError(open, "unterminated comment");
        if (src_.substr(pos_, 2) == "(;") {
          ++depth;
          advance();
          advance();
        } else if (src_.substr(pos_, 2) == ";)") {
          --depth;
          advance();
          advance();
        } else {
          advance();
        }
      } while (depth > 0);
    }
  }

  std::string_view src_;
  std::string file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  SourceFile file() {
    SourceFile out;
    while (!at(Tok::End)) out.entries.push_back(entry(out));
    return out;
  }

  Term whole_term() {
    Term t = term();
    expect(Tok::End);
    return t;
  }

  std::vector<std::string> free_names;

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at(Tok k, std::size_t ahead = 0) const { return peek(ahead).kind == k; }
  Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(std::vector<Tok> expected) {
    std::vector<std::string> names;
    for (Tok t : expected) names.emplace_back(describe(t));
    std::string msg = "unexpected " + std::string(describe(peek().kind));
    if (at(Tok::Ident)) msg += " '" + peek().text + "'";
    throw ParseError(peek().span, msg, names);
  }

  Token expect(Tok k) {
    if (!at(k)) fail({k});
    return next();
  }

  SourceEntry entry(SourceFile& out) {
    Span sp = peek().span;
    switch (peek().kind) {
      case Tok::Require: {
        next();
        Require r{expect(Tok::Ident).text, sp};
        expect(Tok::Dot);
        out.imports.push_back(r);
        return r;
      }
      case Tok::Assert: {
        next();
        Term a = term();
        expect(Tok::EqEq);
        Term b = term();
        expect(Tok::Dot);
        return Pragma{Pragma::Kind::Assert, {a, b}, sp};
      }
      case Tok::Check: {
        next();
        Term a = term();
        expect(Tok::Comma);
        Term b = term();
        expect(Tok::Dot);
        return Pragma{Pragma::Kind::Check, {a, b}, sp};
      }
      case Tok::Eval: {
        next();
        Term a = term();
        expect(Tok::Dot);
        return Pragma{Pragma::Kind::Eval, {a}, sp};
      }
      case Tok::Def:
      case Tok::Thm: {
        bool opaque = next().kind == Tok::Thm;
        std::string name = expect(Tok::Ident).text;
        expect(Tok::Colon);
        Term ty = term();
        if (!opaque && at(Tok::Dot)) {
          next();
          return ConstantDecl{name, ty, sp};
        }
        expect(Tok::ColonEq);
        Term body = term();
        expect(Tok::Dot);
        return Definition{name, ty, body, opaque, sp};
      }
      case Tok::LBracket:
        return rule(false, sp);
      case Tok::Ident:
        if (peek().text == "unchecked" && at(Tok::LBracket, 1)) {
          next();
          return rule(true, sp);
        }
        {
          std::string name = next().text;
          expect(Tok::Colon);
          Term ty = term();
          expect(Tok::Dot);
          return ConstantDecl{name, ty, sp};
        }
      default:
        fail({Tok::Ident, Tok::Def, Tok::Thm, Tok::LBracket, Tok::Require, Tok::Assert, Tok::Check,
              Tok::Eval});
    }
  }

  RewriteRule rule(bool unchecked, const Span& sp) {
    expect(Tok::LBracket);
    std::vector<std::string> vars;
    if (!at(Tok::RBracket)) {
      for (;;) {
        Token v = expect(Tok::Ident);
        if (std::find(vars.begin(), vars.end(), v.text) != vars.end()) {
          throw ParseError(v.span, "pattern variable '" + v.text + "' listed twice");
        }
        vars.push_back(v.text);
        if (at(Tok::RBracket)) break;
        expect(Tok::Comma);
      }
    }
    expect(Tok::RBracket);
    auto saved = free_names;
    free_names.insert(free_names.end(), vars.begin(), vars.end());
    Term lhs = term();
    expect(Tok::LongArrow);
    Term rhs = term();
    expect(Tok::Dot);
    free_names = saved;
    RewriteRule r;
    r.pattern_vars = vars;
    r.lhs = lhs;
    r.rhs = rhs;
    r.unchecked = unchecked;
    r.span = sp;
    return r;
  }

  Term term() {
    if (at(Tok::Ident) && at(Tok::FatArrow, 1)) {
      std::string x = next().text;
      next();
      return binder(TermKind::Lam, x, Term());
    }
    if (at(Tok::Ident) && at(Tok::Colon, 1)) {
      std::string x = next().text;
      next();
      Term dom = application();
      if (at(Tok::Arrow)) {
        next();
        return binder(TermKind::Pi, x, dom);
      }
      if (at(Tok::FatArrow)) {
        next();
        return binder(TermKind::Lam, x, dom);
      }
      fail({Tok::Arrow, Tok::FatArrow});
    }
    Term a = application();
    if (at(Tok::Arrow)) {
      next();
      bound_.push_back("");  // anonymous binder, unreachable by name
      Term b = term();
      bound_.pop_back();
      return Term::pi("_", a, b);
    }
    return a;
  }

  Term binder(TermKind kind, const std::string& x, const Term& dom) {
    bound_.push_back(x);
    Term body = term();
    bound_.pop_back();
    return kind == TermKind::Lam ? Term::lam(x, dom, body) : Term::pi(x, dom, body);
  }

  bool starts_atom() const { return at(Tok::Ident) || at(Tok::Type) || at(Tok::LParen); }

  Term application() {
    Term t = atom();
    // An identifier followed by ':' starts a binder, not an argument.
    while (starts_atom() && !(at(Tok::Ident) && at(Tok::Colon, 1))) {
      t = Term::app(t, atom());
    }
    return t;
  }

  Term atom() {
    if (at(Tok::Type)) {
      next();
      return Term::type_sort();
    }
    if (at(Tok::LParen)) {
      next();
      Term t = term();
      expect(Tok::RParen);
      return t;
    }
    if (at(Tok::Ident)) {
      std::string x = next().text;
      for (std::size_t i = bound_.size(); i-- > 0;) {
        if (bound_[i] == x) return Term::bound(static_cast<std::uint32_t>(bound_.size() - 1 - i));
      }
      if (std::find(free_names.begin(), free_names.end(), x) != free_names.end()) return Term::free(x);
      return Term::constant(x);
    }
    fail({Tok::Ident, Tok::Type, Tok::LParen});
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string> bound_;
};

std::string format_message(const Span& sp, const std::string& msg, const std::vector<std::string>& expected) {
  std::string out = sp.file + ":" + std::to_string(sp.line) + ":" + std::to_string(sp.col) + ": " + msg;
  if (!expected.empty()) {
    out += "; expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) out += i + 1 == expected.size() ? " or " : ", ";
      out += expected[i];
    }
  }
  return out;
}

}  // namespace

ParseError::ParseError(Span span, std::string message, std::vector<std::string> expected)
    : Error(format_message(span, message, expected)),
      span_(std::move(span)),
      detail_(std::move(message)),
      expected_(std::move(expected)) {}

SourceFile parse_file(std::string_view text, const std::string& file_name) {
  Parser p(Lexer(text, file_name).run());
  SourceFile f = p.file();
  auto slash = file_name.find_last_of('/');
  std::string base = slash == std::string::npos ? file_name : file_name.substr(slash + 1);
  auto dot = base.rfind('.');
  f.module = dot == std::string::npos ? base : base.substr(0, dot);
  return f;
}

Term parse_term(std::string_view text, const std::vector<std::string>& free) {
  Parser p(Lexer(text, "<term>").run());
  p.free_names = free;
  return p.whole_term();
}

Theory to_theory(const SourceFile& file, const std::string& name) {
  Theory th(name.empty() ? file.module : name);
  for (const auto& e : file.entries) {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, ConstantDecl>) th.add_constant(x);
          else if constexpr (std::is_same_v<T, Definition>) th.add_definition(x);
          else if constexpr (std::is_same_v<T, RewriteRule>) th.add_rule(x);
        },
        e);
  }
  return th;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || s == "Type" || s == "def" || s == "thm") return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return ident_char(static_cast<unsigned char>(c)); });
}

}  // namespace lpmr
