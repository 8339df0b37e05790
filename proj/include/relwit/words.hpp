#pragma once

#include <relwit/groups.hpp>
#include <relwit/report.hpp>

#include <array>
#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace relwit {

/// Alphabet X = {x} with an indexed family y_1, ..., y_n.
struct Alphabet {
    std::string x = "x";
    std::vector<std::string> ys;

    static Alphabet standard(std::size_t n) {
        Alphabet a;
        for (std::size_t i = 1; i <= n; ++i) a.ys.push_back("y" + std::to_string(i));
        return a;
    }

    bool contains(const std::string& name) const {
        if (name == x) return true;
        for (const auto& y : ys)
            if (y == name) return true;
        return false;
    }
};

/// A formal letter from X or X^-1.
struct Letter {
    std::string name;
    int sign = 1;  // +1 or -1

    friend bool operator==(const Letter& a, const Letter& b) {
        return a.name == b.name && a.sign == b.sign;
    }
    friend auto operator<=>(const Letter& a, const Letter& b) {
        if (auto c = a.name <=> b.name; c != 0) return c;
        return a.sign <=> b.sign;
    }
    std::string to_string() const { return sign < 0 ? name + "^-1" : name; }
};

using LetterPair = std::pair<Letter, Letter>;

struct Word;
using WordPtr = std::shared_ptr<const Word>;

/// [left, right], sub-bracketing preserved as given.
struct CommutatorExpr {
    WordPtr left;
    WordPtr right;
};

/// One factor of a word: a generator or a commutator, raised to a nonzero power.
struct Term {
    std::variant<std::string, CommutatorExpr> atom;
    long long exponent = 1;
};

/// Ordered product of terms; immutable after construction.
struct Word {
    std::vector<Term> terms;
};

inline Word letter_word(const std::string& name, long long exp = 1) {
    if (exp == 0) throw std::invalid_argument("word term exponent must be nonzero");
    Word w;
    w.terms.push_back({name, exp});
    return w;
}

inline Word commutator_word(Word left, Word right, long long exp = 1) {
    if (exp == 0) throw std::invalid_argument("word term exponent must be nonzero");
    Word w;
    CommutatorExpr c{std::make_shared<Word>(std::move(left)),
                     std::make_shared<Word>(std::move(right))};
    w.terms.push_back({std::move(c), exp});
    return w;
}

inline Word concat(Word a, const Word& b) {
    for (const auto& t : b.terms) a.terms.push_back(t);
    return a;
}

inline std::string render_word(const Word& w);

inline std::string render_term(const Term& t) {
    std::string s;
    if (const auto* name = std::get_if<std::string>(&t.atom)) {
        s = *name;
    } else {
        const auto& c = std::get<CommutatorExpr>(t.atom);
        s = "[" + render_word(*c.left) + "," + render_word(*c.right) + "]";
    }
    if (t.exponent != 1) s += "^" + std::to_string(t.exponent);
    return s;
}

/// Canonical rendering; parse(render(w)) reproduces the AST.
inline std::string render_word(const Word& w) {
    std::string s;
    for (const auto& t : w.terms) {
        if (!s.empty()) s += ' ';
        s += render_term(t);
    }
    return s;
}

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(std::size_t pos, const std::string& what)
        : std::runtime_error("parse error at position " + std::to_string(pos) + ": " + what),
          position(pos) {}
};

namespace detail {

class WordParser {
public:
    WordParser(std::string_view text, const Alphabet& alphabet)
        : text_(text), alphabet_(alphabet) {}

    Word parse() {
        Word w = parse_word();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError(pos_, "unexpected trailing input");
        if (w.terms.empty()) throw ParseError(0, "empty word");
        return w;
    }

private:
    // word := term+ ; term := atom ('^' int)? ; atom := ident | '[' word ',' word ']'
    Word parse_word() {
        Word w;
        for (;;) {
            skip_ws();
            if (pos_ >= text_.size() || text_[pos_] == ',' || text_[pos_] == ']') break;
            w.terms.push_back(parse_term());
        }
        return w;
    }

    Term parse_term() {
        Term t;
        if (text_[pos_] == '[') {
            std::size_t open = pos_++;
            Word left = parse_word();
            expect(',', open);
            Word right = parse_word();
            expect(']', open);
            if (left.terms.empty() || right.terms.empty())
                throw ParseError(open, "commutator side is empty");
            t.atom = CommutatorExpr{std::make_shared<Word>(std::move(left)),
                                    std::make_shared<Word>(std::move(right))};
        } else {
            t.atom = parse_ident();
        }
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '^') {
            ++pos_;
            skip_ws();
            t.exponent = parse_int();
        }
        if (t.exponent == 0) throw ParseError(pos_, "zero exponent is not allowed");
        return t;
    }

    std::string parse_ident() {
        std::size_t start = pos_;
        if (pos_ >= text_.size() || !(std::isalpha((unsigned char)text_[pos_]) || text_[pos_] == '_'))
            throw ParseError(pos_, "expected generator name or '['");
        while (pos_ < text_.size() &&
               (std::isalnum((unsigned char)text_[pos_]) || text_[pos_] == '_'))
            ++pos_;
        std::string name(text_.substr(start, pos_ - start));
        if (!alphabet_.contains(name))
            throw ParseError(start, "unknown generator '" + name + "'");
        return name;
    }

    long long parse_int() {
        std::size_t start = pos_;
        bool neg = false;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
            neg = text_[pos_] == '-';
            ++pos_;
        }
        if (pos_ >= text_.size() || !std::isdigit((unsigned char)text_[pos_]))
            throw ParseError(start, "expected integer exponent");
        long long v = 0;
        while (pos_ < text_.size() && std::isdigit((unsigned char)text_[pos_])) {
            v = v * 10 + (text_[pos_] - '0');
            if (v > (1LL << 40)) throw ParseError(start, "exponent out of range");
            ++pos_;
        }
        return neg ? -v : v;
    }

    void expect(char ch, std::size_t context) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != ch)
            throw ParseError(pos_ < text_.size() ? pos_ : text_.size(),
                             std::string("expected '") + ch + "' for bracket opened at " +
                                 std::to_string(context));
        ++pos_;
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace((unsigned char)text_[pos_])) ++pos_;
    }

    std::string_view text_;
    const Alphabet& alphabet_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Word parse_word(std::string_view text, const Alphabet& alphabet) {
    return detail::WordParser(text, alphabet).parse();
}

/// Left-nested iterated commutator: [x^(0), y] = y, [x^(i), y] = [x, [x^(i-1), y]].
inline Word iterated_commutator(const Word& x, const Word& y, unsigned long i) {
    Word cur = y;
    for (unsigned long n = 0; n < i; ++n) cur = commutator_word(x, std::move(cur));
    return cur;
}

namespace detail {

// A word that is a single letter with exponent +-1, if it is one.
inline std::optional<Letter> as_single_letter(const Word& w) {
    if (w.terms.size() != 1) return std::nullopt;
    const Term& t = w.terms.front();
    const auto* name = std::get_if<std::string>(&t.atom);
    if (!name || (t.exponent != 1 && t.exponent != -1)) return std::nullopt;
    return Letter{*name, static_cast<int>(t.exponent)};
}

inline void collect_pairs(const Word& w, std::set<LetterPair>& out) {
    for (const Term& t : w.terms) {
        const auto* c = std::get_if<CommutatorExpr>(&t.atom);
        if (!c) continue;
        auto u = as_single_letter(*c->left);
        auto v = as_single_letter(*c->right);
        if (u && v) out.insert({*u, *v});
        collect_pairs(*c->left, out);
        collect_pairs(*c->right, out);
    }
}

}  // namespace detail

/// All ordered pairs (u, v) over X and X^-1 such that the two-letter commutator
/// [u, v] occurs innermost anywhere in the word's tree. Deeper mixed commutators
/// such as [[y1,y2],x] contribute only their innermost pairs.
inline std::set<LetterPair> appearing_pairs(const Word& w) {
    std::set<LetterPair> out;
    detail::collect_pairs(w, out);
    return out;
}

/// Homomorphic evaluation in a concrete group: letters map to assigned
/// elements, commutators to [g,h] = g h g^-1 h^-1, exponents to powers.
template <GroupCarrier C>
typename C::Element evaluate(const Word& w,
                             const std::map<std::string, typename C::Element>& assignment,
                             const C& c) {
    auto result = c.identity();
    for (const Term& t : w.terms) {
        typename C::Element base = c.identity();
        if (const auto* name = std::get_if<std::string>(&t.atom)) {
            auto it = assignment.find(*name);
            if (it == assignment.end())
                throw std::invalid_argument("evaluate: no assignment for generator '" + *name +
                                            "'");
            base = it->second;
        } else {
            const auto& comm = std::get<CommutatorExpr>(t.atom);
            base = group_commutator(c, evaluate(*comm.left, assignment, c),
                                    evaluate(*comm.right, assignment, c));
        }
        result = c.mul(result, group_pow(c, base, t.exponent));
    }
    return result;
}

/// Checks [xy,z] = [x,[y,z]] [y,z] [x,z] and [x,yz] = [x,y] [y,[x,z]] [x,z]
/// for every sampled triple. A failure is reported as a counterexample.
template <GroupCarrier C>
Report commutator_identities_check(
    const C& c,
    const std::vector<std::array<typename C::Element, 3>>& triples) {
    Report rep;
    rep.title = "commutator expansion identities";
    std::size_t fail_left = 0, fail_right = 0;
    for (const auto& [x, y, z] : triples) {
        {
            auto lhs = group_commutator(c, c.mul(x, y), z);
            auto yz = group_commutator(c, y, z);
            auto rhs = c.mul(c.mul(group_commutator(c, x, yz), yz), group_commutator(c, x, z));
            if (c.encode(lhs) != c.encode(rhs)) ++fail_left;
        }
        {
            auto lhs = group_commutator(c, x, c.mul(y, z));
            auto xz = group_commutator(c, x, z);
            auto rhs = c.mul(c.mul(group_commutator(c, x, y), group_commutator(c, y, xz)), xz);
            if (c.encode(lhs) != c.encode(rhs)) ++fail_right;
        }
    }
    rep.check("[xy,z] = [x,[y,z]][y,z][x,z]", fail_left == 0,
              std::to_string(triples.size()) + " triples, " + std::to_string(fail_left) +
                  " failures");
    rep.check("[x,yz] = [x,y][y,[x,z]][x,z]", fail_right == 0,
              std::to_string(triples.size()) + " triples, " + std::to_string(fail_right) +
                  " failures");
    return rep;
}

}  // namespace relwit
