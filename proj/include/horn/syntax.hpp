#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "horn/formula.hpp"

namespace horn {

/// Token syntax of formula items.
///   letters: every lowercase letter is a variable, `ab->cd`, `df=gh`
///   names:   comma-separated identifiers, `p1,q->r`, `x,y=z`
enum class Syntax { letters, names };

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t item, std::size_t column, const std::string& what);

  /// Zero-based index of the offending item (corpus: line number, 1-based).
  std::size_t item() const { return item_; }
  /// One-based column inside the item.
  std::size_t column() const { return column_; }

 private:
  std::size_t item_;
  std::size_t column_;
};

struct ParseOptions {
  Syntax syntax = Syntax::letters;
  /// Variables added to the universe even when no clause mentions them.
  std::vector<std::string> declared;
};

/// Parses formula items. `X->Y` yields X->y for each y in Y; `X=Y` yields
/// X->y and Y->x for every variable on the other side. Tautologies are
/// dropped and duplicates merged. Variable ids follow name order.
Formula parse_formula(std::span<const std::string> items, const ParseOptions& options = {});

/// Parses a variable list: letters syntax `abc`, names syntax `a,b,c`.
/// Every name must already be known to `symbols`.
VarSet parse_vars(const std::string& text, const Symbols& symbols, Syntax syntax);

std::string format_vars(const VarSet& vars, const Symbols& symbols, Syntax syntax);
std::string format_clause(const Clause& c, const Symbols& symbols, Syntax syntax);
std::vector<std::string> format_clauses(std::span<const Clause> clauses, const Symbols& symbols,
                                        Syntax syntax);

/// letters syntax is only usable when every variable name is a single
/// lowercase letter.
Syntax preferred_syntax(const Symbols& symbols);

enum class Expectation { single_head, not_single_head };

/// One corpus file: `#` comments, blank lines ignored, `%` directives
/// (`% expect: single-head | not-single-head`, `% syntax: letters | names`),
/// every other line one formula item.
struct CorpusFile {
  std::string name;
  Syntax syntax = Syntax::letters;
  std::optional<Expectation> expect;
  std::vector<std::string> items;
  std::vector<std::size_t> lines;  // 1-based source line of each item
};

CorpusFile read_corpus(std::istream& in, const std::string& name);
CorpusFile load_corpus(const std::string& path);

/// Parse errors carry the corpus line number as item().
Formula parse_corpus(const CorpusFile& file);

}  // namespace horn
