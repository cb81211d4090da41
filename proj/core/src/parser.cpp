#include "rdf/parser.hpp"

#include <array>
#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

namespace rdf {

namespace {

enum class Tok {
  Ident,
  Number,
  FuncConst,
  DerivOpen,  // "D["
  LParen,
  RParen,
  LBrack,
  RBrack,
  Comma,
  Plus,
  Minus,
  Star,
  Slash,
  Eq,
  Neq,
  Gt,
  Ge,
  Lt,
  Le,
  Bang,
  Amp,
  Pipe,
  NegInf,
  PosInf,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

// '$' admits the normalizer's fresh names.
bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == kFreshPrefix; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == kFreshPrefix;
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_blank();
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", span_at(pos_, pos_)});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t line_start_ = 0;

  SourceSpan span_at(std::size_t begin, std::size_t end) const {
    return {begin, end, line_, begin - line_start_ + 1};
  }

  void skip_blank() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else if (c == '\n') {
        ++pos_;
        ++line_;
        line_start_ = pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        return;
      }
    }
  }

  bool at_word(std::size_t at, std::string_view word) const {
    if (src_.substr(at, word.size()) != word) return false;
    std::size_t after = at + word.size();
    return after >= src_.size() || !ident_char(src_[after]);
  }

  Token make(Tok kind, std::size_t begin) {
    return {kind, std::string(src_.substr(begin, pos_ - begin)), span_at(begin, pos_)};
  }

  Token next() {
    std::size_t begin = pos_;
    char c = src_[pos_];
    auto peek = [&](std::size_t k) { return pos_ + k < src_.size() ? src_[pos_ + k] : '\0'; };

    if (c == 'D' && peek(1) == '[') {
      pos_ += 2;
      return make(Tok::DerivOpen, begin);
    }
    if (ident_start(c)) {
      while (pos_ < src_.size() && ident_char(src_[pos_])) ++pos_;
      return make(Tok::Ident, begin);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      return number(begin);
    }
    if (c == '@' && (peek(1) == '0' || peek(1) == '1') && !ident_char(peek(2))) {
      pos_ += 2;
      return make(Tok::FuncConst, begin);
    }
    if ((c == '-' || c == '+') && at_word(pos_ + 1, "inf")) {
      pos_ += 4;
      return make(c == '-' ? Tok::NegInf : Tok::PosInf, begin);
    }
    auto two = [&](char second, Tok yes, Tok no) {
      if (peek(1) == second) {
        pos_ += 2;
        return make(yes, begin);
      }
      ++pos_;
      return make(no, begin);
    };
    switch (c) {
      case '(': ++pos_; return make(Tok::LParen, begin);
      case ')': ++pos_; return make(Tok::RParen, begin);
      case '[': ++pos_; return make(Tok::LBrack, begin);
      case ']': ++pos_; return make(Tok::RBrack, begin);
      case ',': ++pos_; return make(Tok::Comma, begin);
      case '+': ++pos_; return make(Tok::Plus, begin);
      case '-': ++pos_; return make(Tok::Minus, begin);
      case '*': ++pos_; return make(Tok::Star, begin);
      case '/': ++pos_; return make(Tok::Slash, begin);
      case '=': ++pos_; return make(Tok::Eq, begin);
      case '&': ++pos_; return make(Tok::Amp, begin);
      case '|': ++pos_; return make(Tok::Pipe, begin);
      case '!': return two('=', Tok::Neq, Tok::Bang);
      case '>': return two('=', Tok::Ge, Tok::Gt);
      case '<': return two('=', Tok::Le, Tok::Lt);
      default: break;
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", span_at(begin, begin + 1));
  }

  Token number(std::size_t begin) {
    auto digits = [&] {
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ + 1 < src_.size() && src_[pos_] == '/' &&
        std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])) && pos_ > begin &&
        src_.substr(begin, pos_ - begin).find('.') == std::string_view::npos) {
      ++pos_;
      digits();
    } else if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      digits();
    }
    Token t = make(Tok::Number, begin);
    if (!parse_rational(t.text)) throw SyntaxError("malformed numeral '" + t.text + "'", t.span);
    return t;
  }
};

const std::array<std::pair<const char*, ShapeKind>, 8> kShapes{{
    {"Up", ShapeKind::Up},
    {"StrictUp", ShapeKind::StrictUp},
    {"Down", ShapeKind::Down},
    {"StrictDown", ShapeKind::StrictDown},
    {"Convex", ShapeKind::Convex},
    {"StrictConvex", ShapeKind::StrictConvex},
    {"Concave", ShapeKind::Concave},
    {"StrictConcave", ShapeKind::StrictConcave},
}};

std::optional<ShapeKind> shape_keyword(const std::string& s) {
  for (const auto& [name, kind] : kShapes)
    if (s == name) return kind;
  return std::nullopt;
}

bool is_reserved(const std::string& s) { return s == "inf" || shape_keyword(s).has_value(); }

bool is_relation(Tok t) {
  return t == Tok::Eq || t == Tok::Neq || t == Tok::Gt || t == Tok::Ge || t == Tok::Lt || t == Tok::Le;
}
bool is_arith(Tok t) { return t == Tok::Plus || t == Tok::Minus || t == Tok::Star || t == Tok::Slash; }

SourceSpan join(SourceSpan a, SourceSpan b) { return {a.begin, b.end, a.line, a.column}; }

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  FormulaPtr run() {
    auto f = formula();
    if (cur().kind != Tok::End) fail("expected end of input");
    return f;
  }

 private:
  std::vector<Token> toks_;
  std::size_t i_ = 0;
  std::optional<SyntaxError> furthest_;

  const Token& cur() const { return toks_[i_]; }
  const Token& ahead(std::size_t k) const { return toks_[std::min(i_ + k, toks_.size() - 1)]; }

  [[noreturn]] void fail(const std::string& what) {
    std::string found = cur().kind == Tok::End ? "end of input" : "'" + cur().text + "'";
    SyntaxError err(what + ", found " + found, cur().span);
    if (!furthest_ || furthest_->span().begin <= err.span().begin) furthest_ = err;
    throw *furthest_;
  }

  const Token& expect(Tok kind, const char* what) {
    if (cur().kind != kind) fail(std::string("expected ") + what);
    return toks_[i_++];
  }

  bool accept(Tok kind) {
    if (cur().kind != kind) return false;
    ++i_;
    return true;
  }

  // --- formulas -----------------------------------------------------------

  FormulaPtr formula() {
    auto lhs = conjunction();
    while (cur().kind == Tok::Pipe) {
      ++i_;
      auto rhs = conjunction();
      lhs = disj(lhs, rhs, join(lhs->span, rhs->span));
    }
    return lhs;
  }

  FormulaPtr conjunction() {
    auto lhs = unary();
    while (cur().kind == Tok::Amp) {
      ++i_;
      auto rhs = unary();
      lhs = conj(lhs, rhs, join(lhs->span, rhs->span));
    }
    return lhs;
  }

  bool is_fid(std::size_t k) const {
    const auto& t = ahead(k);
    return (t.kind == Tok::Ident && !is_reserved(t.text)) || t.kind == Tok::FuncConst;
  }

  FormulaPtr unary() {
    SourceSpan start = cur().span;
    if (accept(Tok::Bang)) {
      auto sub = unary();
      return negation(sub, join(start, sub->span));
    }
    if (cur().kind == Tok::LParen) {
      if (is_fid(1) &&
          (ahead(2).kind == Tok::Eq || ahead(2).kind == Tok::Neq || ahead(2).kind == Tok::Gt) &&
          is_fid(3) && ahead(4).kind == Tok::RParen && ahead(5).kind == Tok::LBrack) {
        return function_atom();
      }
      if (ahead(1).kind == Tok::DerivOpen && is_fid(2) && ahead(3).kind == Tok::RBrack &&
          is_relation(ahead(4).kind)) {
        return derivative_atom();
      }
      std::size_t save = i_;
      try {
        ++i_;
        auto inner = formula();
        expect(Tok::RParen, "')'");
        if (!is_arith(cur().kind) && !is_relation(cur().kind)) return inner;
      } catch (const SyntaxError&) {
      }
      i_ = save;
      return numeric_atom();
    }
    if (cur().kind == Tok::Ident && shape_keyword(cur().text) && ahead(1).kind == Tok::LParen) {
      return shape_atom();
    }
    return numeric_atom();
  }

  FuncVar fid() {
    if (!is_fid(0)) fail("expected function name");
    return FuncVar{toks_[i_++].text};
  }

  std::pair<Endpoint, Endpoint> interval() {
    expect(Tok::LBrack, "'['");
    Endpoint lo = endpoint();
    expect(Tok::Comma, "','");
    Endpoint hi = endpoint();
    expect(Tok::RBrack, "']'");
    return {lo, hi};
  }

  Endpoint endpoint() {
    if (accept(Tok::NegInf)) return Endpoint::neg_inf();
    if (accept(Tok::PosInf)) return Endpoint::pos_inf();
    return Endpoint::finite(term());
  }

  SourceSpan since(SourceSpan start) const { return join(start, toks_[i_ - 1].span); }

  FormulaPtr function_atom() {
    SourceSpan start = expect(Tok::LParen, "'('").span;
    FuncVar f = fid();
    Tok rel = toks_[i_++].kind;
    FuncVar g = fid();
    expect(Tok::RParen, "')'");
    auto [lo, hi] = interval();
    SourceSpan span = since(start);
    if (rel == Tok::Gt) return atom(FunGtAtom{f, g, lo, hi}, span);
    auto eq = atom(FunEqAtom{f, g, lo, hi}, span);
    return rel == Tok::Neq ? negation(eq, span) : eq;
  }

  FormulaPtr derivative_atom() {
    SourceSpan start = expect(Tok::LParen, "'('").span;
    expect(Tok::DerivOpen, "'D['");
    FuncVar f = fid();
    expect(Tok::RBrack, "']'");
    Tok rel = toks_[i_++].kind;
    TermPtr bound = term();
    expect(Tok::RParen, "')'");
    auto [lo, hi] = interval();
    SourceSpan span = since(start);
    DerRel r = DerRel::Eq;
    switch (rel) {
      case Tok::Eq:
      case Tok::Neq: r = DerRel::Eq; break;
      case Tok::Gt: r = DerRel::Gt; break;
      case Tok::Ge: r = DerRel::Ge; break;
      case Tok::Lt: r = DerRel::Lt; break;
      case Tok::Le: r = DerRel::Le; break;
      default: fail("expected relation");
    }
    auto a = atom(DerAtom{f, r, bound, lo, hi}, span);
    return rel == Tok::Neq ? negation(a, span) : a;
  }

  FormulaPtr shape_atom() {
    SourceSpan start = cur().span;
    ShapeKind kind = *shape_keyword(toks_[i_++].text);
    expect(Tok::LParen, "'('");
    FuncVar f = fid();
    expect(Tok::RParen, "')'");
    auto [lo, hi] = interval();
    return atom(ShapeAtom{kind, f, lo, hi}, since(start));
  }

  FormulaPtr numeric_atom() {
    SourceSpan start = cur().span;
    TermPtr lhs = term();
    if (!is_relation(cur().kind)) fail("expected relation");
    Tok rel = toks_[i_++].kind;
    TermPtr rhs = term();
    SourceSpan span = since(start);
    switch (rel) {
      case Tok::Eq: return atom(NumAtom{NumRel::Eq, lhs, rhs}, span);
      case Tok::Neq: return negation(atom(NumAtom{NumRel::Eq, lhs, rhs}, span), span);
      case Tok::Gt: return atom(NumAtom{NumRel::Gt, lhs, rhs}, span);
      case Tok::Lt: return atom(NumAtom{NumRel::Gt, rhs, lhs}, span);
      case Tok::Ge: return negation(atom(NumAtom{NumRel::Gt, rhs, lhs}, span), span);
      case Tok::Le: return negation(atom(NumAtom{NumRel::Gt, lhs, rhs}, span), span);
      default: break;
    }
    fail("expected relation");
  }

  // --- terms --------------------------------------------------------------

  TermPtr term() {
    TermPtr lhs = product();
    while (cur().kind == Tok::Plus || cur().kind == Tok::Minus) {
      BinOp op = cur().kind == Tok::Plus ? BinOp::Add : BinOp::Sub;
      ++i_;
      TermPtr rhs = product();
      lhs = binary(op, lhs, rhs, join(lhs->span, rhs->span));
    }
    return lhs;
  }

  TermPtr product() {
    TermPtr lhs = signed_factor();
    while (cur().kind == Tok::Star || cur().kind == Tok::Slash) {
      BinOp op = cur().kind == Tok::Star ? BinOp::Mul : BinOp::Div;
      ++i_;
      TermPtr rhs = signed_factor();
      lhs = binary(op, lhs, rhs, join(lhs->span, rhs->span));
    }
    return lhs;
  }

  TermPtr signed_factor() {
    SourceSpan start = cur().span;
    if (accept(Tok::Minus)) {
      TermPtr sub = signed_factor();
      if (const auto* c = std::get_if<Term::Const>(&sub->node)) {
        if (c->value > 0) return constant(-c->value, since(start));
      }
      return binary(BinOp::Sub, constant(0, start), sub, since(start));
    }
    return primary();
  }

  TermPtr primary() {
    SourceSpan start = cur().span;
    switch (cur().kind) {
      case Tok::Number: {
        auto q = parse_rational(cur().text);
        ++i_;
        return constant(*q, start);
      }
      case Tok::Ident: {
        if (is_reserved(cur().text)) fail("reserved word used as a term");
        std::string name = toks_[i_++].text;
        if (accept(Tok::LParen)) {
          TermPtr arg = term();
          expect(Tok::RParen, "')'");
          return apply(FuncVar{name}, arg, since(start));
        }
        return var(name, start);
      }
      case Tok::FuncConst: {
        FuncVar f{toks_[i_++].text};
        expect(Tok::LParen, "'('");
        TermPtr arg = term();
        expect(Tok::RParen, "')'");
        return apply(f, arg, since(start));
      }
      case Tok::DerivOpen: {
        ++i_;
        FuncVar f = fid();
        expect(Tok::RBrack, "']'");
        expect(Tok::LParen, "'('");
        TermPtr arg = term();
        expect(Tok::RParen, "')'");
        return deriv(f, arg, since(start));
      }
      case Tok::LParen: {
        ++i_;
        TermPtr inner = term();
        expect(Tok::RParen, "')'");
        return inner;
      }
      default: break;
    }
    fail("expected term");
  }
};

}  // namespace

FormulaPtr parse_unvalidated(std::string_view text) {
  Parser p(Lexer(text).run());
  return p.run();
}

FormulaPtr parse(std::string_view text) { return validate(parse_unvalidated(text)); }

FormulaPtr parse_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

}  // namespace rdf
