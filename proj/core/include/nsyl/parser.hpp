#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "nsyl/graph.hpp"
#include "nsyl/proof.hpp"
#include "nsyl/semantics.hpp"
#include "nsyl/syntax.hpp"

namespace nsyl {

/// Syntax error in any of the text formats. line/column are 1-based;
/// line 0 means the error is not tied to a single line.
class ParseError : public std::runtime_error {
public:
  ParseError(std::string message, std::size_t line = 0, std::size_t column = 0)
      : std::runtime_error(std::move(message)), line(line), column(column) {}
  std::size_t line;
  std::size_t column;
};

/// Accepts the formula DSL `(<=|>) INT ( LIT , LIT )` with literals `p`/`~p`,
/// or one of the fixed quasi-English sentence templates ("At most 1 q is not
/// an r", "No p is a q", "More than 0 non-ps are not qs", ...).
Formula parse_formula(std::string_view text);

enum class RenderStyle { Dsl, English };

/// Dsl is the canonical bit-exact form (parse_formula inverts it exactly);
/// English follows the sentence templates with singular/plural agreement.
std::string render(const Formula& f, RenderStyle style = RenderStyle::Dsl);

std::string render(const Literal& l);

std::ostream& operator<<(std::ostream& os, const Formula& f);
std::ostream& operator<<(std::ostream& os, const Literal& l);

struct TheoryEntry {
  Formula formula;
  std::size_t line;
};

/// A theory file in parsed order. Duplicates are kept here and collapse in
/// the set view.
struct TheoryDocument {
  std::vector<TheoryEntry> entries;

  FormulaSet as_set() const;
  std::vector<Formula> formulas() const;
};

/// One formula per line; `#` starts a comment; blank lines ignored.
/// Syntax errors are aggregated across lines into a single ParseError.
TheoryDocument parse_theory(std::string_view text);
TheoryDocument load_theory(const std::string& path);
std::string render_theory(const std::vector<Formula>& formulas);
std::string render_theory(const FormulaSet& formulas);

struct RuleDocument {
  std::vector<Rule> rules;
};

/// Rule files: `rule NAME:`, antecedent formula lines, a `---` separator,
/// then exactly one consequent line. Atoms are schematic.
RuleDocument parse_rules(std::string_view text);
RuleDocument load_rules(const std::string& path);
std::string render_rules(const std::vector<Rule>& rules);

/// Structure files: one `elem NAME: atom atom ...` line per element;
/// the atom list may be empty. `#` comments and blank lines ignored.
Structure parse_structure(std::string_view text);
Structure load_structure(const std::string& path);
std::string render_structure(const Structure& s);

/// DIMACS-like graph files: `c` comments, one `p edge V E` header, then
/// `e u v` lines with 1-based vertex numbers.
Graph parse_graph(std::string_view text);
Graph load_graph(const std::string& path);
std::string render_graph(const Graph& g);

}  // namespace nsyl
