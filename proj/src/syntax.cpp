#include "folab/syntax.hpp"

#include <cctype>
#include <vector>

#include "folab/errors.hpp"

namespace folab {

std::string print(const Formula& f) {
  return std::visit(
      overloaded{
          [&](const Top&) -> std::string { return "true"; },
          [&](const Bottom&) -> std::string { return "false"; },
          [&](const RelAtom& a) -> std::string {
            std::string s = a.pred + "(";
            for (size_t i = 0; i < a.args.size(); ++i) {
              if (i) s += ",";
              s += "x" + std::to_string(a.args[i].index);
            }
            return s + ")";
          },
          [&](const Equality& e) -> std::string {
            return "x" + std::to_string(e.lhs.index) + "=x" +
                   std::to_string(e.rhs.index);
          },
          [&](const Not& n) -> std::string { return "!" + print(n.body); },
          [&](const And& n) -> std::string {
            return "(" + print(n.lhs) + " & " + print(n.rhs) + ")";
          },
          [&](const Or& n) -> std::string {
            return "(" + print(n.lhs) + " | " + print(n.rhs) + ")";
          },
          [&](const Implies& n) -> std::string {
            return "(" + print(n.lhs) + " -> " + print(n.rhs) + ")";
          },
          [&](const Iff& n) -> std::string {
            return "(" + print(n.lhs) + " <-> " + print(n.rhs) + ")";
          },
          [&](const ExistsFO& n) -> std::string {
            return "(E x" + std::to_string(n.var.index) + ". " + print(n.body) +
                   ")";
          },
          [&](const ForallFO& n) -> std::string {
            return "(A x" + std::to_string(n.var.index) + ". " + print(n.body) +
                   ")";
          },
          [&](const ExistsSO& n) -> std::string {
            return "(E2 " + n.pred + "/" + std::to_string(n.arity) + ". " +
                   print(n.body) + ")";
          },
          [&](const ForallSO& n) -> std::string {
            return "(A2 " + n.pred + "/" + std::to_string(n.arity) + ". " +
                   print(n.body) + ")";
          },
      },
      f.node().v);
}

namespace {

enum class Tok {
  name,   // relation identifier
  var,    // x<digits>
  number, // bare digits (arities)
  lpar, rpar, comma, dot, slash, eq,
  bang, amp, pipe, arrow, darrow,
  kw_true, kw_false, kw_e, kw_a, kw_e2, kw_a2,
  end,
};

struct Token {
  Tok kind;
  std::string text;
  int value = 0;  // variable index or number
  size_t offset = 0;
};

[[noreturn]] void fail(const std::string& msg, size_t offset) {
  throw Error(Errc::parse_error, msg + " at offset " + std::to_string(offset));
}

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  size_t i = 0;
  auto push = [&](Tok k, std::string text, size_t off, int value = 0) {
    out.push_back({k, std::move(text), value, off});
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
    size_t start = i;
    if (c == '(') { push(Tok::lpar, "(", start); ++i; continue; }
    if (c == ')') { push(Tok::rpar, ")", start); ++i; continue; }
    if (c == ',') { push(Tok::comma, ",", start); ++i; continue; }
    if (c == '.') { push(Tok::dot, ".", start); ++i; continue; }
    if (c == '/') { push(Tok::slash, "/", start); ++i; continue; }
    if (c == '=') { push(Tok::eq, "=", start); ++i; continue; }
    if (c == '!') { push(Tok::bang, "!", start); ++i; continue; }
    if (c == '&') { push(Tok::amp, "&", start); ++i; continue; }
    if (c == '|') { push(Tok::pipe, "|", start); ++i; continue; }
    if (c == '-') {
      if (i + 1 < s.size() && s[i + 1] == '>') {
        push(Tok::arrow, "->", start);
        i += 2;
        continue;
      }
      fail("expected '->'", start);
    }
    if (c == '<') {
      if (i + 2 < s.size() && s[i + 1] == '-' && s[i + 2] == '>') {
        push(Tok::darrow, "<->", start);
        i += 3;
        continue;
      }
      fail("expected '<->'", start);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      std::string digits = s.substr(i, j - i);
      if (digits.size() > 6) fail("number too large", start);
      push(Tok::number, digits, start, std::stoi(digits));
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) ||
                              s[j] == '_'))
        ++j;
      std::string word = s.substr(i, j - i);
      i = j;
      if (word == "true") { push(Tok::kw_true, word, start); continue; }
      if (word == "false") { push(Tok::kw_false, word, start); continue; }
      if (word == "E") { push(Tok::kw_e, word, start); continue; }
      if (word == "A") { push(Tok::kw_a, word, start); continue; }
      if (word == "E2") { push(Tok::kw_e2, word, start); continue; }
      if (word == "A2") { push(Tok::kw_a2, word, start); continue; }
      // x followed only by digits is a variable token.
      if (word.size() >= 2 && word[0] == 'x') {
        bool all_digits = true;
        for (size_t k = 1; k < word.size(); ++k)
          if (!std::isdigit(static_cast<unsigned char>(word[k]))) {
            all_digits = false;
            break;
          }
        if (all_digits) {
          if (word.size() > 7) fail("variable index too large", start);
          int idx = std::stoi(word.substr(1));
          if (idx < 1) fail("variable index must be >= 1", start);
          push(Tok::var, word, start, idx);
          continue;
        }
      }
      push(Tok::name, word, start);
      continue;
    }
    fail(std::string("unexpected character '") + c + "'", start);
  }
  push(Tok::end, "", s.size());
  return out;
}

struct Parser {
  const std::vector<Token>& toks;
  size_t pos = 0;

  const Token& peek() const { return toks[pos]; }
  const Token& advance() { return toks[pos++]; }
  bool accept(Tok k) {
    if (peek().kind == k) { ++pos; return true; }
    return false;
  }
  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what, peek().offset);
    return toks[pos++];
  }

  Formula formula() { return iff_level(); }

  Formula iff_level() {
    Formula lhs = imp_level();
    if (accept(Tok::darrow)) return iff(std::move(lhs), iff_level());
    return lhs;
  }

  Formula imp_level() {
    Formula lhs = or_level();
    if (accept(Tok::arrow)) return implies(std::move(lhs), imp_level());
    return lhs;
  }

  Formula or_level() {
    Formula lhs = and_level();
    while (accept(Tok::pipe)) lhs = lor(std::move(lhs), and_level());
    return lhs;
  }

  Formula and_level() {
    Formula lhs = unary();
    while (accept(Tok::amp)) lhs = land(std::move(lhs), unary());
    return lhs;
  }

  Formula unary() {
    const Token& t = peek();
    // Quantifier letters followed directly by '(' are ordinary relation names.
    if ((t.kind == Tok::kw_e || t.kind == Tok::kw_a || t.kind == Tok::kw_e2 ||
         t.kind == Tok::kw_a2) &&
        toks[pos + 1].kind == Tok::lpar)
      return named_atom(advance());
    switch (t.kind) {
      case Tok::bang:
        advance();
        return lnot(unary());
      case Tok::kw_e:
      case Tok::kw_a: {
        advance();
        const Token& v = expect(Tok::var, "a variable after the quantifier");
        expect(Tok::dot, "'.' after the quantified variable");
        Formula body = formula();  // scope extends maximally rightward
        return t.kind == Tok::kw_e ? exists(x(v.value), std::move(body))
                                   : forall(x(v.value), std::move(body));
      }
      case Tok::kw_e2:
      case Tok::kw_a2: {
        advance();
        const Token& n = expect(Tok::name, "a relation name after the quantifier");
        expect(Tok::slash, "'/' and an arity");
        const Token& ar = expect(Tok::number, "an arity");
        expect(Tok::dot, "'.' after the quantified relation");
        Formula body = formula();
        return t.kind == Tok::kw_e2
                   ? exists_so(n.text, ar.value, std::move(body))
                   : forall_so(n.text, ar.value, std::move(body));
      }
      default:
        return primary();
    }
  }

  Formula primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::kw_true:
        advance();
        return top();
      case Tok::kw_false:
        advance();
        return bottom();
      case Tok::lpar: {
        advance();
        Formula inner = formula();
        expect(Tok::rpar, "')'");
        return inner;
      }
      case Tok::var: {
        advance();
        expect(Tok::eq, "'=' after a bare variable");
        const Token& rhs = expect(Tok::var, "a variable after '='");
        return eq(x(t.value), x(rhs.value));
      }
      case Tok::name:
        advance();
        return named_atom(t);
      default:
        fail("expected a formula", t.offset);
    }
  }

  Formula named_atom(const Token& t) {
    expect(Tok::lpar, "'(' after a relation name");
    std::vector<Variable> args;
    if (!accept(Tok::rpar)) {
      do {
        const Token& v = expect(Tok::var, "a variable argument");
        args.push_back(x(v.value));
      } while (accept(Tok::comma));
      expect(Tok::rpar, "')'");
    }
    return rel(t.text, std::move(args));
  }
};

}  // namespace

Formula parse(const std::string& text) {
  std::vector<Token> toks = lex(text);
  Parser p{toks};
  Formula f = p.formula();
  if (p.peek().kind != Tok::end) fail("trailing input", p.peek().offset);
  return f;
}

}  // namespace folab
