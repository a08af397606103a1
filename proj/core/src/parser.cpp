#include <cctype>

#include "csgame/errors.hpp"
#include "csgame/logic.hpp"

namespace csgame {

std::string var_name(int j) {
  switch (j) {
    case 0: return "x";
    case 1: return "y";
    case 2: return "z";
    default: return "v" + std::to_string(j);
  }
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::optional<FragmentSpec> fragment) : text_(text), fragment_(fragment) {}

  FormulaPtr run() {
    FormulaPtr f = formula();
    skip();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at position " + std::to_string(pos_), pos_);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(std::string_view tok) {
    skip();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }

  std::string identifier() {
    skip();
    std::size_t start = pos_;
    if (pos_ >= text_.size() || !(std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      fail("expected an identifier");
    }
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  int integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    std::string digits(text_.substr(start, pos_ - start));
    if (digits.size() > 6) fail("integer too large");
    return std::stoi(digits);
  }

  static std::optional<int> variable_index(const std::string& id) {
    if (id == "x") return 0;
    if (id == "y") return 1;
    if (id == "z") return 2;
    if (id.size() >= 2 && id[0] == 'v' && id.find_first_not_of("0123456789", 1) == std::string::npos &&
        id.size() <= 4) {
      return std::stoi(id.substr(1));
    }
    return std::nullopt;
  }

  int checked_variable(const std::string& id, std::size_t at) {
    auto j = variable_index(id);
    if (!j) {
      pos_ = at;
      fail("expected a variable, got '" + id + "'");
    }
    if (*j >= kMaxVariables || (fragment_ && *j >= fragment_->m)) {
      pos_ = at;
      fail("variable '" + id + "' outside the fragment");
    }
    return *j;
  }

  Term term_from(const std::string& id, std::size_t at) {
    if (id == "min") return Term::min();
    if (id == "max") return Term::max();
    return Term::variable(checked_variable(id, at));
  }

  Term term() {
    skip();
    std::size_t at = pos_;
    return term_from(identifier(), at);
  }

  FormulaPtr formula() {
    char c = peek();
    if (c == '~') {
      ++pos_;
      return neg(formula());
    }
    if (c == '(') {
      ++pos_;
      FormulaPtr a = formula();
      if (accept(")")) return a;
      if (accept("|")) {
        FormulaPtr b = formula();
        expect(")");
        return disj(a, b);
      }
      if (accept("&")) {
        FormulaPtr b = formula();
        expect(")");
        return conj(a, b);
      }
      fail("expected '|', '&' or ')'");
    }
    std::size_t at = pos_;
    std::string id = identifier();
    if ((id == "E" || id == "A") && peek() != '(') return quantified(id == "E", at);
    if (peek() == '(') return relation_atom(id);
    Term a = term_from(id, at);
    std::string op;
    if (accept("=")) {
      op = "=";
    } else if (accept("<")) {
      op = "<";
    } else {
      fail("expected '=' or '<'");
    }
    return atom(op, {a, term()});
  }

  FormulaPtr quantified(bool existential, std::size_t at) {
    int k = 1;
    if (accept(">=")) {
      std::size_t kat = pos_;
      k = integer();
      if (k < 1) {
        pos_ = kat;
        fail("counting rank must be positive");
      }
      if (fragment_ && k > fragment_->t) {
        pos_ = kat;
        fail("counting rank outside the fragment");
      }
    }
    skip();
    std::size_t vat = pos_;
    int var = checked_variable(identifier(), vat);
    expect(".");
    FormulaPtr body = formula();
    (void)at;
    return existential ? exists(k, var, body) : forall(k, var, body);
  }

  FormulaPtr relation_atom(const std::string& name) {
    expect("(");
    std::vector<Term> args{term()};
    while (accept(",")) args.push_back(term());
    expect(")");
    if (name == "min" || name == "max" || variable_index(name)) fail("'" + name + "' is not a relation name");
    return atom(name, std::move(args));
  }

  std::string_view text_;
  std::optional<FragmentSpec> fragment_;
  std::size_t pos_ = 0;
};

std::string term_string(const Term& t) {
  switch (t.type) {
    case Term::Type::Var: return var_name(t.var);
    case Term::Type::Min: return "min";
    case Term::Type::Max: return "max";
  }
  return {};
}

bool infix(const Formula& f) { return f.kind == Kind::Atom && (f.relation == "=" || f.relation == "<"); }

void print(const Formula& f, std::string& out) {
  switch (f.kind) {
    case Kind::Atom:
      if (infix(f)) {
        out += term_string(f.args[0]);
        out += f.relation;
        out += term_string(f.args[1]);
        return;
      }
      out += f.relation;
      out += '(';
      for (std::size_t i = 0; i < f.args.size(); ++i) {
        if (i) out += ',';
        out += term_string(f.args[i]);
      }
      out += ')';
      return;
    case Kind::Not:
      out += '~';
      if (infix(*f.left)) {
        out += '(';
        print(*f.left, out);
        out += ')';
      } else {
        print(*f.left, out);
      }
      return;
    case Kind::Or:
    case Kind::And:
      out += '(';
      print(*f.left, out);
      out += f.kind == Kind::Or ? " | " : " & ";
      print(*f.right, out);
      out += ')';
      return;
    case Kind::Exists:
    case Kind::Forall:
      out += f.kind == Kind::Exists ? "E" : "A";
      if (f.k != 1) out += ">=" + std::to_string(f.k);
      out += ' ';
      out += var_name(f.var);
      out += ". ";
      print(*f.left, out);
      return;
  }
}

}  // namespace

FormulaPtr parse(std::string_view text, std::optional<FragmentSpec> fragment) {
  return Parser(text, fragment).run();
}

std::string to_string(const Formula& f) {
  std::string out;
  print(f, out);
  return out;
}

}  // namespace csgame
