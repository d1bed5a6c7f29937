#include "nsyl/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

namespace nsyl {

namespace {

bool is_name_start(char c) { return c >= 'a' && c <= 'z'; }
bool is_name_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
}

// ---- DSL ----

class DslScanner {
public:
  explicit DslScanner(std::string_view text) : text_(text) {}

  Formula formula() {
    skip_ws();
    Quant quant;
    if (eat("<=")) {
      quant = Quant::AtMost;
    } else if (eat(">")) {
      quant = Quant::MoreThan;
    } else {
      fail("expected '<=' or '>'");
    }
    skip_ws();
    Bound bound = integer();
    skip_ws();
    expect('(');
    Literal a = literal();
    skip_ws();
    expect(',');
    Literal b = literal();
    skip_ws();
    expect(')');
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters after formula");
    return Formula(quant, bound, a, b);
  }

private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool eat(std::string_view tok) {
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (pos_ >= text_.size() || text_[pos_] != c)
      fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  Bound integer() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (pos_ == start) fail("expected a nonnegative integer bound");
    Bound value = 0;
    auto res = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (res.ec != std::errc{}) fail("bound out of range");
    return value;
  }

  Literal literal() {
    skip_ws();
    bool positive = true;
    if (pos_ < text_.size() && text_[pos_] == '~') {
      positive = false;
      ++pos_;
      skip_ws();
    }
    std::size_t start = pos_;
    if (pos_ >= text_.size() || !is_name_start(text_[pos_]))
      fail("expected an atom name");
    while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
    return Literal(Atom(std::string(text_.substr(start, pos_ - start))),
                   positive);
  }

  [[noreturn]] void fail(const std::string& what) {
    throw ParseError("column " + std::to_string(pos_ + 1) + ": " + what, 0,
                     pos_ + 1);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// ---- English ----

std::vector<std::string> english_tokens(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  for (auto& t : out)
    while (!t.empty() && (t.back() == '.' || t.back() == ',' || t.back() == ';'))
      t.pop_back();
  std::erase(out, std::string{});
  return out;
}

std::string lowercase(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

class EnglishParser {
public:
  explicit EnglishParser(std::string_view text)
      : tokens_(english_tokens(text)) {}

  Formula formula() {
    Quant quant;
    Bound bound;
    bool object_flip = false;  // "every" negates the object literal
    std::string head = lowered();
    if (head == "at" && lowered(1) == "most") {
      advance(2);
      quant = Quant::AtMost;
      bound = number();
    } else if (head == "more" && lowered(1) == "than") {
      advance(2);
      quant = Quant::MoreThan;
      bound = number();
    } else if (head == "no") {
      advance(1);
      quant = Quant::AtMost;
      bound = 0;
    } else if (head == "every") {
      advance(1);
      quant = Quant::AtMost;
      bound = 0;
      object_flip = true;
    } else if (head == "some") {
      advance(1);
      quant = Quant::MoreThan;
      bound = 0;
    } else {
      fail("unknown sentence template");
    }

    Literal subject = noun_phrase();
    std::string cop = lowered();
    if (cop != "is" && cop != "are") fail("expected 'is' or 'are'");
    advance(1);
    plural_ = cop == "are";
    plural_known_ = true;

    bool negated = false;
    if (lowered() == "not") {
      negated = true;
      advance(1);
    }
    if (lowered() == "a" || lowered() == "an") advance(1);
    Literal object = noun_phrase();
    if (negated) {
      if (!object.positive) fail("cannot combine 'not' with a non- phrase");
      object = object.complement();
    }
    if (object_flip) object = object.complement();
    if (pos_ != tokens_.size()) fail("trailing words after sentence");
    return Formula(quant, bound, subject, object);
  }

private:
  std::string lowered(std::size_t ahead = 0) const {
    return pos_ + ahead < tokens_.size() ? lowercase(tokens_[pos_ + ahead])
                                          : std::string{};
  }

  void advance(std::size_t n) { pos_ += n; }

  Bound number() {
    if (pos_ >= tokens_.size()) fail("expected a number");
    const std::string& tok = tokens_[pos_];
    Bound value = 0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
      fail("expected a number, got '" + tok + "'");
    advance(1);
    return value;
  }

  // A noun token, optionally prefixed "non-" and followed by a detached
  // plural "s". A trailing "s" on the token itself is stripped under plural
  // agreement with the copula; the subject's copula is read ahead.
  Literal noun_phrase() {
    if (pos_ >= tokens_.size()) fail("expected a noun");
    std::string tok = lowercase(tokens_[pos_]);
    advance(1);
    bool positive = true;
    if (tok.starts_with("non-")) {
      positive = false;
      tok = tok.substr(4);
    }
    bool detached_s = false;
    if (lowered() == "s" ) {
      detached_s = true;
      advance(1);
    }
    bool plural = plural_known_ ? plural_ : peek_plural();
    if (plural && !detached_s && tok.size() > 1 && tok.ends_with('s')) {
      std::string stripped = tok.substr(0, tok.size() - 1);
      if (valid_atom_name(stripped)) tok = stripped;
    }
    if (!valid_atom_name(tok)) fail("invalid atom name '" + tok + "'");
    return Literal(Atom(tok), positive);
  }

  // Before the copula is consumed, look ahead for it.
  bool peek_plural() {
    for (std::size_t i = pos_; i < tokens_.size(); ++i) {
      std::string t = lowercase(tokens_[i]);
      if (t == "is") return false;
      if (t == "are") return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " in sentence");
  }

  std::vector<std::string> tokens_;
  std::size_t pos_ = 0;
  bool plural_ = false;
  bool plural_known_ = false;
};

// Letter names beginning with a vowel sound take "an" (an f, an r, ...).
bool wants_an(const std::string& noun) {
  static const std::string an_letters = "aefhilmnorsx";
  if (noun.size() == 1 || (noun.size() > 1 && !std::isalpha(static_cast<unsigned char>(noun[1]))))
    return an_letters.find(noun[0]) != std::string::npos;
  return noun[0] == 'a' || noun[0] == 'e' || noun[0] == 'i' || noun[0] == 'o' ||
         noun[0] == 'u';
}

std::string english(const Formula& f) {
  Bound i = f.bound();
  bool plural = i != 1;
  std::ostringstream os;
  os << (f.quant() == Quant::AtMost ? "At most " : "More than ") << i << ' ';
  const Literal& subj = f.first();
  std::string subj_noun =
      (subj.positive ? "" : "non-") + subj.atom.name() + (plural ? "s" : "");
  os << subj_noun << (plural ? " are " : " is ");
  const Literal& obj = f.second();
  if (!obj.positive) os << "not ";
  if (!plural) os << (wants_an(obj.atom.name()) ? "an " : "a ");
  os << obj.atom.name() << (plural ? "s" : "");
  return os.str();
}

// ---- line utilities ----

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      if (!cur.empty() && cur.back() == '\r') cur.pop_back();
      lines.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty() && cur.back() == '\r') cur.pop_back();
  if (!cur.empty()) lines.push_back(std::move(cur));
  return lines;
}

std::string strip_comment(const std::string& line) {
  auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

Formula parse_formula(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
    ++i;
  if (i == text.size()) throw ParseError("empty formula");
  if (text[i] == '<' || text[i] == '>') return DslScanner(text).formula();
  try {
    return EnglishParser(text).formula();
  } catch (const InputError& e) {
    throw ParseError(std::string(e.what()) + " in sentence");
  }
}

std::string render(const Literal& l) {
  return (l.positive ? "" : "~") + l.atom.name();
}

std::string render(const Formula& f, RenderStyle style) {
  if (style == RenderStyle::English) return english(f);
  std::ostringstream os;
  os << (f.quant() == Quant::AtMost ? "<=" : ">") << f.bound() << '('
     << render(f.first()) << ',' << render(f.second()) << ')';
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Formula& f) {
  return os << render(f);
}

std::ostream& operator<<(std::ostream& os, const Literal& l) {
  return os << render(l);
}

FormulaSet TheoryDocument::as_set() const {
  FormulaSet out;
  for (const auto& e : entries) out.insert(e.formula);
  return out;
}

std::vector<Formula> TheoryDocument::formulas() const {
  std::vector<Formula> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.formula);
  return out;
}

TheoryDocument parse_theory(std::string_view text) {
  TheoryDocument doc;
  std::vector<std::string> errors;
  std::size_t first_bad_line = 0;
  auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string body = trim(strip_comment(lines[i]));
    if (body.empty()) continue;
    try {
      doc.entries.push_back({parse_formula(body), i + 1});
    } catch (const ParseError& e) {
      if (errors.empty()) first_bad_line = i + 1;
      errors.push_back("line " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  if (!errors.empty()) {
    std::string joined;
    for (const auto& e : errors) {
      if (!joined.empty()) joined += '\n';
      joined += e;
    }
    throw ParseError(joined, first_bad_line);
  }
  return doc;
}

TheoryDocument load_theory(const std::string& path) {
  return parse_theory(read_file(path));
}

std::string render_theory(const std::vector<Formula>& formulas) {
  std::string out;
  for (const auto& f : formulas) out += render(f) + "\n";
  return out;
}

std::string render_theory(const FormulaSet& formulas) {
  return render_theory(std::vector<Formula>(formulas.begin(), formulas.end()));
}

namespace {

bool valid_rule_name(const std::string& name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
}

}  // namespace

RuleDocument parse_rules(std::string_view text) {
  enum class State { TopLevel, Antecedents, Consequent, AfterRule };
  State state = State::TopLevel;
  RuleDocument doc;
  std::string name;
  FormulaSet antecedents;
  std::optional<Formula> consequent;
  std::set<std::string> seen_names;

  auto finish = [&]() {
    doc.rules.push_back(Rule{name, std::move(antecedents), *consequent});
    antecedents.clear();
    consequent.reset();
  };
  auto bad = [](std::size_t line, const std::string& what) -> ParseError {
    return ParseError("line " + std::to_string(line) + ": " + what, line);
  };

  auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::size_t lineno = i + 1;
    std::string body = trim(strip_comment(lines[i]));
    if (body.empty()) continue;
    bool is_header = body.starts_with("rule ") || body == "rule";
    if (is_header) {
      if (state == State::Antecedents)
        throw bad(lineno, "missing '---' separator in rule '" + name + "'");
      if (state == State::Consequent)
        throw bad(lineno, "missing consequent in rule '" + name + "'");
      if (body.back() != ':')
        throw bad(lineno, "rule header must end with ':'");
      name = trim(body.substr(4, body.size() - 5));
      if (!valid_rule_name(name)) throw bad(lineno, "invalid rule name");
      if (!seen_names.insert(name).second)
        throw bad(lineno, "duplicate rule name '" + name + "'");
      state = State::Antecedents;
      continue;
    }
    switch (state) {
      case State::TopLevel:
        throw bad(lineno, "expected a 'rule NAME:' header");
      case State::Antecedents:
        if (body == "---") {
          state = State::Consequent;
        } else {
          try {
            antecedents.insert(parse_formula(body));
          } catch (const ParseError& e) {
            throw bad(lineno, e.what());
          }
        }
        break;
      case State::Consequent:
        if (body == "---") throw bad(lineno, "second '---' separator");
        try {
          consequent = parse_formula(body);
        } catch (const ParseError& e) {
          throw bad(lineno, e.what());
        }
        finish();
        state = State::AfterRule;
        break;
      case State::AfterRule:
        if (body == "---") throw bad(lineno, "stray '---' separator");
        throw bad(lineno,
                  "multiple consequents in rule '" + name +
                      "' (expected a 'rule NAME:' header)");
    }
  }
  if (state == State::Antecedents)
    throw ParseError("missing '---' separator in rule '" + name + "'");
  if (state == State::Consequent)
    throw ParseError("missing consequent in rule '" + name + "'");
  return doc;
}

RuleDocument load_rules(const std::string& path) {
  return parse_rules(read_file(path));
}

std::string render_rules(const std::vector<Rule>& rules) {
  std::string out;
  for (const Rule& r : rules) {
    if (!out.empty()) out += "\n";
    out += "rule " + r.name + ":\n";
    for (const Formula& f : r.antecedents) out += render(f) + "\n";
    out += "---\n";
    out += render(r.consequent) + "\n";
  }
  return out;
}

Structure parse_structure(std::string_view text) {
  std::vector<std::string> domain;
  std::set<std::string> seen;
  std::map<Atom, std::set<std::string>> interp;
  auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::size_t lineno = i + 1;
    std::string body = trim(strip_comment(lines[i]));
    if (body.empty()) continue;
    if (!body.starts_with("elem "))
      throw ParseError("line " + std::to_string(lineno) +
                           ": expected 'elem NAME: ...'",
                       lineno);
    auto colon = body.find(':');
    if (colon == std::string::npos)
      throw ParseError("line " + std::to_string(lineno) + ": missing ':'",
                       lineno);
    std::string id = trim(body.substr(5, colon - 5));
    if (id.empty() || id.find_first_of(" \t") != std::string::npos)
      throw ParseError("line " + std::to_string(lineno) +
                           ": invalid element name",
                       lineno);
    if (!seen.insert(id).second)
      throw ParseError("line " + std::to_string(lineno) +
                           ": duplicate element '" + id + "'",
                       lineno);
    domain.push_back(id);
    std::istringstream rest(body.substr(colon + 1));
    std::string atom_name;
    while (rest >> atom_name) {
      if (!valid_atom_name(atom_name))
        throw ParseError("line " + std::to_string(lineno) +
                             ": invalid atom name '" + atom_name + "'",
                         lineno);
      interp[Atom(atom_name)].insert(id);
    }
  }
  if (domain.empty()) throw ParseError("structure has no elements");
  return Structure(std::move(domain), std::move(interp));
}

Structure load_structure(const std::string& path) {
  return parse_structure(read_file(path));
}

std::string render_structure(const Structure& s) {
  std::string out;
  for (const std::string& id : s.domain()) {
    out += "elem " + id + ":";
    for (const auto& [atom, elems] : s.interp())
      if (elems.contains(id)) out += " " + atom.name();
    out += "\n";
  }
  return out;
}

Graph parse_graph(std::string_view text) {
  std::optional<std::size_t> vertices;
  std::size_t declared_edges = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::size_t lineno = i + 1;
    std::string body = trim(lines[i]);
    if (body.empty() || body[0] == 'c') continue;
    std::istringstream in(body);
    std::string kind;
    in >> kind;
    auto bad = [&](const std::string& what) -> ParseError {
      return ParseError("line " + std::to_string(lineno) + ": " + what,
                        lineno);
    };
    if (kind == "p") {
      if (vertices) throw bad("duplicate 'p' line");
      std::string fmt;
      long long v = -1, e = -1;
      in >> fmt >> v >> e;
      if (!in || fmt != "edge" || v < 0 || e < 0)
        throw bad("expected 'p edge V E'");
      vertices = static_cast<std::size_t>(v);
      declared_edges = static_cast<std::size_t>(e);
    } else if (kind == "e") {
      if (!vertices) throw bad("'e' line before 'p' line");
      long long u = 0, v = 0;
      in >> u >> v;
      if (!in) throw bad("expected 'e U V'");
      if (u < 1 || v < 1 || static_cast<std::size_t>(u) > *vertices ||
          static_cast<std::size_t>(v) > *vertices)
        throw bad("vertex out of range");
      if (u == v) throw bad("self-loops are not allowed");
      edges.emplace_back(static_cast<std::size_t>(u),
                         static_cast<std::size_t>(v));
    } else {
      throw bad("unknown line kind '" + kind + "'");
    }
  }
  if (!vertices) throw ParseError("missing 'p edge V E' line");
  Graph g = Graph::make(*vertices, std::move(edges));
  if (g.edges.size() != declared_edges)
    throw ParseError("edge count mismatch: header declares " +
                     std::to_string(declared_edges) + ", found " +
                     std::to_string(g.edges.size()) + " distinct");
  return g;
}

Graph load_graph(const std::string& path) { return parse_graph(read_file(path)); }

std::string render_graph(const Graph& g) {
  std::string out = "p edge " + std::to_string(g.vertex_count) + " " +
                    std::to_string(g.edges.size()) + "\n";
  for (const auto& [u, v] : g.edges)
    out += "e " + std::to_string(u) + " " + std::to_string(v) + "\n";
  return out;
}

Graph Graph::make(std::size_t vertex_count,
                  std::vector<std::pair<std::size_t, std::size_t>> edges) {
  for (auto& [u, v] : edges) {
    if (u < 1 || v < 1 || u > vertex_count || v > vertex_count)
      throw InputError("edge endpoint out of range");
    if (u == v) throw InputError("self-loops are not allowed");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  Graph g;
  g.vertex_count = vertex_count;
  g.edges = std::move(edges);
  return g;
}

}  // namespace nsyl
