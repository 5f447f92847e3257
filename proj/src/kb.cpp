#include "crep/kb.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace crep {

namespace {

constexpr std::size_t kMaxTerms = 4096;

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

enum class Tok { ident, bang, comma, semicolon, lparen, rparen, bar, colon, end, bad };

struct Token {
    Tok kind = Tok::end;
    std::string_view text;
    int column = 0;
};

/// Tokenizer over one line. Columns are 1-based and relative to the line.
class Lexer {
public:
    Lexer(std::string_view text, int line, int column_base)
        : text_(text), line_(line), base_(column_base) {
        advance();
    }

    const Token& peek() const { return current_; }

    Token next() {
        Token t = current_;
        advance();
        return t;
    }

    [[noreturn]] void fail(const Token& at, const std::string& message) const {
        throw ParseError(line_, at.column, message);
    }

    Token expect(Tok kind, const char* what) {
        if (current_.kind != kind) {
            fail(current_, std::string("expected ") + what + ", found " + describe(current_));
        }
        return next();
    }

    static std::string describe(const Token& t) {
        if (t.kind == Tok::end) return "end of line";
        return "'" + std::string(t.text) + "'";
    }

private:
    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        current_.column = base_ + static_cast<int>(pos_);
        if (pos_ >= text_.size()) {
            current_.kind = Tok::end;
            current_.text = {};
            return;
        }
        const char c = text_[pos_];
        if (is_ident_start(c)) {
            std::size_t end = pos_ + 1;
            while (end < text_.size() && is_ident_char(text_[end])) ++end;
            current_.kind = Tok::ident;
            current_.text = text_.substr(pos_, end - pos_);
            pos_ = end;
            return;
        }
        switch (c) {
            case '!': current_.kind = Tok::bang; break;
            case ',': current_.kind = Tok::comma; break;
            case ';': current_.kind = Tok::semicolon; break;
            case '(': current_.kind = Tok::lparen; break;
            case ')': current_.kind = Tok::rparen; break;
            case '|': current_.kind = Tok::bar; break;
            case ':': current_.kind = Tok::colon; break;
            default: current_.kind = Tok::bad; break;
        }
        current_.text = text_.substr(pos_, 1);
        ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_;
    int base_;
    Token current_;
};

/// Recursive descent over the formula grammar, producing DNF directly.
/// An empty term list means "unsatisfiable" until normalization.
class FormulaParser {
public:
    FormulaParser(Lexer& lex, std::span<const Atom> atoms)
        : lex_(lex), atoms_(atoms), m_(static_cast<int>(atoms.size())) {}

    std::vector<Term> disjunction() {
        std::vector<Term> terms = conjunction();
        while (lex_.peek().kind == Tok::semicolon) {
            lex_.next();
            std::vector<Term> more = conjunction();
            terms.insert(terms.end(), more.begin(), more.end());
            check_size(terms);
        }
        return terms;
    }

private:
    std::vector<Term> conjunction() {
        std::vector<Term> acc = literal();
        while (lex_.peek().kind == Tok::comma) {
            lex_.next();
            std::vector<Term> rhs = literal();
            std::vector<Term> product;
            for (const Term& a : acc) {
                for (const Term& b : rhs) {
                    Term t = a & b;
                    if (!t.contradictory()) product.push_back(t);
                }
                check_size(product);
            }
            acc = std::move(product);
        }
        return acc;
    }

    std::vector<Term> literal() {
        const Token t = lex_.peek();
        if (t.kind == Tok::bang) {
            lex_.next();
            const Token operand = lex_.peek();
            if (operand.kind != Tok::ident) {
                lex_.fail(operand, "negation applies only to atoms and constants");
            }
            lex_.next();
            return constant_or_atom(operand, false);
        }
        if (t.kind == Tok::lparen) {
            lex_.next();
            std::vector<Term> inner = disjunction();
            if (lex_.peek().kind == Tok::bar) {
                lex_.fail(lex_.peek(), "nested conditionals are not supported");
            }
            lex_.expect(Tok::rparen, "')'");
            return inner;
        }
        if (t.kind == Tok::ident) {
            lex_.next();
            return constant_or_atom(t, true);
        }
        lex_.fail(t, "expected a literal, found " + Lexer::describe(t));
    }

    std::vector<Term> constant_or_atom(const Token& t, bool positive) {
        const bool is_top = t.text == "top";
        if (is_top || t.text == "bot") {
            if (is_top == positive) return {Term::top(m_)};
            return {};
        }
        const auto it = std::find_if(atoms_.begin(), atoms_.end(),
                                     [&](const Atom& a) { return a.name == t.text; });
        if (it == atoms_.end()) lex_.fail(t, "unknown atom '" + std::string(t.text) + "'");
        Term term(m_);
        term.require(it->index, positive);
        return {term};
    }

    void check_size(const std::vector<Term>& terms) const {
        if (terms.size() > kMaxTerms) {
            lex_.fail(lex_.peek(), "formula expands to more than " + std::to_string(kMaxTerms) +
                                       " DNF terms");
        }
    }

    Lexer& lex_;
    std::span<const Atom> atoms_;
    int m_;
};

Formula finish(std::vector<Term> terms, std::string_view source, int atom_count) {
    if (terms.empty()) terms.push_back(Term::contradiction(atom_count));
    return Formula{std::move(terms), std::string(source)};
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

/// Consumes `( CONSEQUENT | ANTECEDENT )` from the lexer.
Conditional conditional_from(Lexer& lex, std::string_view line, int column_base,
                             std::span<const Atom> atoms, int id) {
    const int m = static_cast<int>(atoms.size());
    FormulaParser parser(lex, atoms);
    lex.expect(Tok::lparen, "'(' opening the conditional");

    const int cons_begin = lex.peek().column;
    std::vector<Term> consequent = parser.disjunction();
    const Token bar = lex.peek();
    if (bar.kind != Tok::bar) lex.fail(bar, "expected '|' in conditional, found " + Lexer::describe(bar));
    lex.next();

    const int ante_begin = lex.peek().column;
    std::vector<Term> antecedent = parser.disjunction();
    const Token close = lex.peek();
    if (close.kind == Tok::bar) lex.fail(close, "nested conditionals are not supported");
    lex.expect(Tok::rparen, "')' closing the conditional");
    if (lex.peek().kind != Tok::end) {
        lex.fail(lex.peek(), "unexpected " + Lexer::describe(lex.peek()) + " after conditional");
    }

    auto slice = [&](int from, int to) {
        return trim(line.substr(static_cast<std::size_t>(from - column_base),
                                static_cast<std::size_t>(to - from)));
    };
    Conditional c;
    c.id = id;
    c.consequent = finish(std::move(consequent), slice(cons_begin, bar.column), m);
    c.antecedent = finish(std::move(antecedent), slice(ante_begin, close.column), m);
    return c;
}

}  // namespace

Term::Term(int atom_count) : atom_count_(atom_count) {
    if (atom_count < 1 || atom_count > kMaxAtoms) {
        throw std::invalid_argument("term width must be in [1, " + std::to_string(kMaxAtoms) + "]");
    }
}

Term Term::contradiction(int atom_count) {
    Term t(atom_count);
    t.pos_ = t.neg_ = t.bit(1);
    return t;
}

std::uint32_t Term::bit(int atom_index) const {
    return std::uint32_t{1} << (atom_count_ - atom_index);
}

Polarity Term::polarity(int atom_index) const {
    const std::uint32_t b = bit(atom_index);
    const bool p = (pos_ & b) != 0;
    const bool n = (neg_ & b) != 0;
    if (p && n) return Polarity::conflict;
    if (p) return Polarity::pos;
    if (n) return Polarity::neg;
    return Polarity::free;
}

void Term::require(int atom_index, bool positive) {
    (positive ? pos_ : neg_) |= bit(atom_index);
}

Term operator&(const Term& lhs, const Term& rhs) {
    Term t = lhs;
    t.pos_ |= rhs.pos_;
    t.neg_ |= rhs.neg_;
    return t;
}

std::optional<int> KnowledgeBase::find_atom(std::string_view name) const {
    for (const Atom& a : atoms) {
        if (a.name == name) return a.index;
    }
    return std::nullopt;
}

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + message),
      line_(line),
      column_(column),
      detail_(message) {}

Formula parse_formula(std::string_view text, std::span<const Atom> atoms) {
    if (atoms.empty()) throw ParseError(1, 1, "formula needs at least one declared atom");
    Lexer lex(text, 1, 1);
    FormulaParser parser(lex, atoms);
    std::vector<Term> terms = parser.disjunction();
    const Token rest = lex.peek();
    if (rest.kind == Tok::bar) lex.fail(rest, "conditional bar '|' is not allowed inside a formula");
    if (rest.kind != Tok::end) lex.fail(rest, "unexpected " + Lexer::describe(rest));
    return finish(std::move(terms), trim(text), static_cast<int>(atoms.size()));
}

Conditional parse_conditional(std::string_view text, std::span<const Atom> atoms, int id) {
    if (atoms.empty()) throw ParseError(1, 1, "conditional needs at least one declared atom");
    Lexer lex(text, 1, 1);
    return conditional_from(lex, text, 1, atoms, id);
}

KnowledgeBase parse_kb(std::string_view text) {
    KnowledgeBase kb;
    bool have_vars = false;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;

        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

        Lexer lex(line, line_no, 1);
        if (lex.peek().kind == Tok::end) {
            if (end == text.size()) break;
            continue;
        }
        const Token keyword = lex.next();
        if (keyword.kind == Tok::ident && keyword.text == "vars") {
            if (have_vars) lex.fail(keyword, "duplicate vars declaration");
            lex.expect(Tok::colon, "':' after 'vars'");
            if (lex.peek().kind == Tok::end) lex.fail(lex.peek(), "empty vars declaration");
            while (true) {
                const Token name = lex.expect(Tok::ident, "an atom name");
                if (name.text == "top" || name.text == "bot") {
                    lex.fail(name, "'" + std::string(name.text) + "' is reserved");
                }
                if (kb.find_atom(name.text)) {
                    lex.fail(name, "duplicate atom '" + std::string(name.text) + "'");
                }
                if (kb.atom_count() == kMaxAtoms) {
                    lex.fail(name, "more than " + std::to_string(kMaxAtoms) + " atoms");
                }
                kb.atoms.push_back(Atom{std::string(name.text), kb.atom_count() + 1});
                if (lex.peek().kind == Tok::end) break;
                lex.expect(Tok::comma, "',' between atoms");
            }
            have_vars = true;
        } else if (keyword.kind == Tok::ident && keyword.text == "rule") {
            if (!have_vars) lex.fail(keyword, "rule before vars declaration");
            if (kb.rule_count() == kMaxRules) {
                lex.fail(keyword, "more than " + std::to_string(kMaxRules) + " rules");
            }
            std::string label;
            if (lex.peek().kind == Tok::colon) {
                lex.next();
            } else if (lex.peek().kind == Tok::ident) {
                label = std::string(lex.next().text);
                lex.expect(Tok::colon, "':' after rule label");
            }
            Conditional c = conditional_from(lex, line, 1, kb.atoms, kb.rule_count() + 1);
            c.label = std::move(label);
            kb.conditionals.push_back(std::move(c));
        } else {
            lex.fail(keyword, "expected 'vars:' or 'rule', found " + Lexer::describe(keyword));
        }
        if (end == text.size()) break;
    }
    if (!have_vars) throw ParseError(line_no, 1, "missing vars declaration");
    return kb;
}

KnowledgeBase load_kb_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open knowledge base file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_kb(buffer.str());
}

std::string render_term(const Term& term, std::span<const Atom> atoms) {
    if (term.contradictory()) return "bot";
    if (term.is_top()) return "top";
    std::string out;
    for (const Atom& a : atoms) {
        const Polarity p = term.polarity(a.index);
        if (p == Polarity::free) continue;
        if (!out.empty()) out += ", ";
        if (p == Polarity::neg) out += '!';
        out += a.name;
    }
    return out;
}

std::string render_formula(const Formula& formula, std::span<const Atom> atoms) {
    std::string out;
    for (const Term& t : formula.terms) {
        if (!out.empty()) out += " ; ";
        out += render_term(t, atoms);
    }
    return out;
}

std::string render_conditional(const Conditional& conditional, std::span<const Atom> atoms) {
    return "(" + render_formula(conditional.consequent, atoms) + " | " +
           render_formula(conditional.antecedent, atoms) + ")";
}

std::string render_kb(const KnowledgeBase& kb) {
    std::string out = "vars: ";
    for (const Atom& a : kb.atoms) {
        if (a.index > 1) out += ", ";
        out += a.name;
    }
    out += '\n';
    for (const Conditional& c : kb.conditionals) {
        out += "rule ";
        if (!c.label.empty()) out += c.label + ": ";
        out += render_conditional(c, kb.atoms);
        out += '\n';
    }
    return out;
}

bool structurally_equal(const KnowledgeBase& lhs, const KnowledgeBase& rhs) {
    if (lhs.atoms != rhs.atoms || lhs.rule_count() != rhs.rule_count()) return false;
    for (std::size_t i = 0; i < lhs.conditionals.size(); ++i) {
        const Conditional& a = lhs.conditionals[i];
        const Conditional& b = rhs.conditionals[i];
        if (a.id != b.id || a.label != b.label || a.antecedent.terms != b.antecedent.terms ||
            a.consequent.terms != b.consequent.terms) {
            return false;
        }
    }
    return true;
}

}  // namespace crep
