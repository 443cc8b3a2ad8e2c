#include "roblev/formula.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "roblev/error.hpp"

namespace roblev {

bool Term::same_variables(const Term& other) const {
  if (factors.size() != other.factors.size()) return false;
  auto a = factors;
  auto b = other.factors;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

std::string Term::label() const {
  std::string out;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    if (k) out += ':';
    out += factors[k];
  }
  return out;
}

std::vector<std::string> ModelSpec::variables() const {
  std::vector<std::string> out;
  for (const auto& t : terms)
    for (const auto& f : t.factors)
      if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
  return out;
}

namespace {

enum class Tok { name, one, zero, plus, minus, star, colon, tilde, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

bool name_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}
bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

std::string at(std::size_t pos) { return " at position " + std::to_string(pos + 1); }

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    switch (c) {
      case '+': out.push_back({Tok::plus, "+", i++}); continue;
      case '-': out.push_back({Tok::minus, "-", i++}); continue;
      case '*': out.push_back({Tok::star, "*", i++}); continue;
      case ':': out.push_back({Tok::colon, ":", i++}); continue;
      case '~': out.push_back({Tok::tilde, "~", i++}); continue;
      case '`': {
        const auto close = s.find('`', i + 1);
        if (close == std::string_view::npos) {
          throw FormulaError("unterminated back-quoted name" + at(start), start);
        }
        if (close == i + 1) throw FormulaError("empty back-quoted name" + at(start), start);
        out.push_back({Tok::name, std::string(s.substr(i + 1, close - i - 1)), start});
        i = close + 1;
        continue;
      }
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < s.size() && name_char(s[i])) ++i;
      const auto lit = s.substr(start, i - start);
      if (lit == "1") {
        out.push_back({Tok::one, "1", start});
      } else if (lit == "0") {
        out.push_back({Tok::zero, "0", start});
      } else {
        throw FormulaError("numeric literal '" + std::string(lit) +
                               "' is not a term (only 0 and 1 are allowed)" + at(start),
                           start);
      }
      continue;
    }
    if (name_start(c)) {
      while (i < s.size() && name_char(s[i])) ++i;
      out.push_back({Tok::name, std::string(s.substr(start, i - start)), start});
      continue;
    }
    throw FormulaError("unknown operator '" + std::string(1, c) + "'" + at(start), start);
  }
  out.push_back({Tok::end, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  ModelSpec parse() {
    ModelSpec spec;
    if (peek().kind == Tok::name && toks_[1].kind == Tok::tilde) {
      spec.response = next().text;
    }
    if (peek().kind != Tok::tilde) {
      throw FormulaError("expected '~'" + at(peek().pos), peek().pos);
    }
    next();

    bool first = true;
    while (true) {
      bool removing = false;
      const Token& sep = peek();
      if (first) {
        if (sep.kind == Tok::minus) {
          removing = true;
          next();
        } else if (sep.kind == Tok::plus) {
          throw FormulaError("empty term" + at(sep.pos), sep.pos);
        }
      } else {
        if (sep.kind == Tok::end) break;
        if (sep.kind == Tok::minus) {
          removing = true;
        } else if (sep.kind != Tok::plus) {
          throw FormulaError("expected '+' or '-' before '" + sep.text + "'" + at(sep.pos),
                             sep.pos);
        }
        next();
      }
      first = false;
      parse_item(removing);
    }

    // Main effects first, then interactions by ascending order; stable sort
    // keeps appearance order within each order.
    std::stable_sort(terms_.begin(), terms_.end(),
                     [](const Term& a, const Term& b) { return a.order() < b.order(); });
    spec.terms = std::move(terms_);
    spec.intercept = intercept_;
    return spec;
  }

 private:
  const Token& peek() const { return toks_[idx_]; }
  const Token& next() { return toks_[idx_++]; }

  void parse_item(bool removing) {
    const Token& t = peek();
    if (t.kind == Tok::one || t.kind == Tok::zero) {
      next();
      const bool one = t.kind == Tok::one;
      intercept_ = removing ? !one : one;
      if (!is_separator(peek().kind)) {
        throw FormulaError("the intercept cannot be part of an interaction" + at(peek().pos),
                           peek().pos);
      }
      return;
    }
    if (t.kind != Tok::name) {
      if (is_separator(t.kind)) {
        throw FormulaError("empty term" + at(t.pos), t.pos);
      }
      throw FormulaError("expected a variable name, found '" + t.text + "'" + at(t.pos), t.pos);
    }
    if (removing) {
      throw FormulaError("only the intercept can be removed with '-'" + at(t.pos), t.pos);
    }

    std::vector<std::vector<std::string>> groups;
    groups.push_back(parse_inter());
    while (peek().kind == Tok::star) {
      next();
      groups.push_back(parse_inter());
    }
    if (!is_separator(peek().kind)) {
      throw FormulaError("unexpected '" + peek().text + "'" + at(peek().pos), peek().pos);
    }

    // Every non-empty combination of the '*'-joined groups, in size order.
    const std::size_t k = groups.size();
    for (std::size_t size = 1; size <= k; ++size) {
      for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcountll(mask)) != size) continue;
        Term term;
        for (std::size_t g = 0; g < k; ++g) {
          if (!(mask & (std::size_t{1} << g))) continue;
          for (const auto& f : groups[g]) add_factor(term, f);
        }
        add_term(std::move(term));
      }
    }
  }

  std::vector<std::string> parse_inter() {
    std::vector<std::string> names;
    names.push_back(expect_name());
    while (peek().kind == Tok::colon) {
      next();
      names.push_back(expect_name());
    }
    return names;
  }

  std::string expect_name() {
    const Token& t = peek();
    if (t.kind != Tok::name) {
      if (t.kind == Tok::one || t.kind == Tok::zero) {
        throw FormulaError("the intercept cannot be part of an interaction" + at(t.pos), t.pos);
      }
      throw FormulaError("empty term" + at(t.pos), t.pos);
    }
    next();
    return t.text;
  }

  static bool is_separator(Tok k) { return k == Tok::plus || k == Tok::minus || k == Tok::end; }

  static void add_factor(Term& term, const std::string& f) {
    if (std::find(term.factors.begin(), term.factors.end(), f) == term.factors.end()) {
      term.factors.push_back(f);
    }
  }

  void add_term(Term term) {
    for (const auto& existing : terms_)
      if (existing.same_variables(term)) return;
    terms_.push_back(std::move(term));
  }

  std::vector<Token> toks_;
  std::size_t idx_ = 0;
  std::vector<Term> terms_;
  bool intercept_ = true;
};

bool plain_name(const std::string& s) {
  if (s.empty() || !name_start(s[0])) return false;
  return std::all_of(s.begin(), s.end(), name_char);
}

std::string quote(const std::string& s) { return plain_name(s) ? s : "`" + s + "`"; }

}  // namespace

ModelSpec parse_formula(std::string_view text) {
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    throw FormulaError("formula is empty", 0);
  }
  return Parser(tokenize(text)).parse();
}

std::string render_formula(const ModelSpec& spec) {
  std::string out;
  if (spec.response) out += quote(*spec.response) + " ";
  out += "~ ";
  if (spec.terms.empty()) {
    out += spec.intercept ? "1" : "0";
    return out;
  }
  for (std::size_t t = 0; t < spec.terms.size(); ++t) {
    if (t) out += " + ";
    const auto& factors = spec.terms[t].factors;
    for (std::size_t k = 0; k < factors.size(); ++k) {
      if (k) out += ":";
      out += quote(factors[k]);
    }
  }
  if (!spec.intercept) out += " - 1";
  return out;
}

}  // namespace roblev
