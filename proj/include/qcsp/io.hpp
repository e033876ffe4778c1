#pragma once

#include <cctype>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qcsp/sentence.hpp"
#include "qcsp/structure.hpp"

namespace qcsp {

namespace detail {

struct Token {
    std::string text;
    int line;
    int column;  // 1-based position of the first character
};

// Whitespace-separated tokens per line; '#' starts a comment; blank lines skipped.
inline std::vector<std::vector<Token>> tokenize(std::istream& in) {
    std::vector<std::vector<Token>> lines;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::vector<Token> tokens;
        std::size_t i = 0;
        while (i < raw.size()) {
            if (std::isspace(static_cast<unsigned char>(raw[i]))) { ++i; continue; }
            std::size_t start = i;
            while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
            tokens.push_back({raw.substr(start, i - start), line_no, static_cast<int>(start) + 1});
        }
        if (!tokens.empty()) lines.push_back(std::move(tokens));
    }
    return lines;
}

inline int parse_int(const Token& t) {
    std::size_t pos = 0;
    int value = 0;
    try {
        value = std::stoi(t.text, &pos);
    } catch (...) {
        throw ParseError("expected an integer, got '" + t.text + "'", t.line, t.column);
    }
    if (pos != t.text.size())
        throw ParseError("expected an integer, got '" + t.text + "'", t.line, t.column);
    return value;
}

}  // namespace detail

/// Parse the line-oriented structure format:
///   domain <m>
///   relation <name> <arity>
///   <tuple lines...>
///   end
inline Structure read_structure(std::istream& in) {
    auto lines = detail::tokenize(in);
    if (lines.empty()) throw ParseError("empty structure file", 1, 1);

    std::size_t i = 0;
    if (lines[i][0].text != "domain" || lines[i].size() != 2)
        throw ParseError("expected 'domain <size>'", lines[i][0].line, lines[i][0].column);
    const int size = detail::parse_int(lines[i][1]);
    if (size < 1) throw ParseError("domain must be nonempty", lines[i][1].line, lines[i][1].column);
    ++i;

    std::vector<Symbol> symbols;
    std::vector<std::vector<std::pair<Tuple, detail::Token>>> tuples;
    while (i < lines.size()) {
        const auto& head = lines[i];
        if (head[0].text != "relation" || head.size() != 3)
            throw ParseError("expected 'relation <name> <arity>'", head[0].line, head[0].column);
        const std::string name = head[1].text;
        const int arity = detail::parse_int(head[2]);
        if (arity < 1) throw ParseError("arity must be positive", head[2].line, head[2].column);
        for (const Symbol& s : symbols)
            if (s.name == name)
                throw ParseError("duplicate relation '" + name + "'", head[1].line, head[1].column);
        symbols.push_back({name, arity});
        tuples.emplace_back();
        ++i;

        bool closed = false;
        while (i < lines.size()) {
            const auto& row = lines[i];
            if (row[0].text == "end" && row.size() == 1) {
                closed = true;
                ++i;
                break;
            }
            if (static_cast<int>(row.size()) != arity)
                throw ParseError("tuple of '" + name + "' needs " + std::to_string(arity) +
                                     " entries",
                                 row[0].line, row[0].column);
            Tuple t;
            for (const auto& tok : row) {
                int e = detail::parse_int(tok);
                if (e < 0 || e >= size)
                    throw ParseError("element out of range", tok.line, tok.column);
                t.push_back(e);
            }
            tuples.back().emplace_back(std::move(t), row[0]);
            ++i;
        }
        if (!closed) {
            const auto& last = lines.back().back();
            throw ParseError("missing 'end' for relation '" + name + "'", last.line, last.column);
        }
    }

    Structure out(Signature(std::move(symbols)), size);
    for (std::size_t s = 0; s < tuples.size(); ++s)
        for (auto& [t, tok] : tuples[s]) out.add_tuple(s, std::move(t));
    return out;
}

inline void write_structure(std::ostream& out, const Structure& s) {
    out << "domain " << s.size() << "\n";
    for (std::size_t i = 0; i < s.signature().size(); ++i) {
        const Symbol& sym = s.signature().at(i);
        out << "relation " << sym.name << " " << sym.arity << "\n";
        for (const Tuple& t : s.relation(i)) {
            for (std::size_t j = 0; j < t.size(); ++j) out << (j ? " " : "") << t[j];
            out << "\n";
        }
        out << "end\n";
    }
}

/// Parse the sentence format: a 'prefix' line of alternating 'A <var>' /
/// 'E <var>' tokens, then one 'atom <rel> <term>...' line per atom, where a
/// term is a variable name or '@<element>'. The single line 'false' is bottom;
/// no atom lines means the empty (true) body.
inline PHSentence read_sentence(std::istream& in) {
    auto lines = detail::tokenize(in);
    if (lines.empty()) throw ParseError("empty sentence file", 1, 1);

    if (lines[0][0].text == "false") {
        if (lines[0].size() != 1 || lines.size() != 1)
            throw ParseError("'false' must be the only content", lines[0][0].line,
                             lines[0][0].column);
        return PHSentence::bottom();
    }

    if (lines[0][0].text != "prefix")
        throw ParseError("expected 'prefix' or 'false'", lines[0][0].line, lines[0][0].column);
    std::vector<QuantifiedVar> prefix;
    const auto& head = lines[0];
    if ((head.size() - 1) % 2 != 0)
        throw ParseError("prefix needs quantifier/variable pairs", head.back().line,
                         head.back().column);
    for (std::size_t i = 1; i < head.size(); i += 2) {
        Quantifier q;
        if (head[i].text == "A")
            q = Quantifier::Universal;
        else if (head[i].text == "E")
            q = Quantifier::Existential;
        else
            throw ParseError("quantifier must be 'A' or 'E'", head[i].line, head[i].column);
        const std::string& name = head[i + 1].text;
        if (name.front() == '@')
            throw ParseError("variable may not start with '@'", head[i + 1].line,
                             head[i + 1].column);
        for (const auto& qv : prefix)
            if (qv.name == name)
                throw ParseError("duplicate variable '" + name + "'", head[i + 1].line,
                                 head[i + 1].column);
        prefix.push_back({q, name});
    }

    std::vector<Atom> body;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& row = lines[i];
        if (row[0].text != "atom" || row.size() < 2)
            throw ParseError("expected 'atom <rel> <term>...'", row[0].line, row[0].column);
        Atom a{row[1].text, {}};
        for (std::size_t j = 2; j < row.size(); ++j) {
            const auto& tok = row[j];
            if (tok.text.front() == '@') {
                detail::Token value{tok.text.substr(1), tok.line, tok.column + 1};
                a.args.push_back(Term::elem(detail::parse_int(value)));
            } else {
                bool known = false;
                for (const auto& qv : prefix) known |= qv.name == tok.text;
                if (!known)
                    throw ParseError("unquantified variable '" + tok.text + "'", tok.line,
                                     tok.column);
                a.args.push_back(Term::var(tok.text));
            }
        }
        body.push_back(std::move(a));
    }
    return PHSentence(std::move(prefix), std::move(body));
}

inline void write_sentence(std::ostream& out, const PHSentence& phi) {
    if (phi.is_bottom()) {
        out << "false\n";
        return;
    }
    out << "prefix";
    for (const auto& qv : phi.prefix())
        out << " " << (qv.quantifier == Quantifier::Universal ? "A" : "E") << " " << qv.name;
    out << "\n";
    for (const Atom& a : phi.body()) {
        out << "atom " << a.symbol;
        for (const Term& t : a.args) {
            out << " ";
            if (t.is_constant())
                out << "@" << t.constant();
            else
                out << t.variable();
        }
        out << "\n";
    }
}

inline Structure parse_structure(const std::string& text) {
    std::istringstream in(text);
    return read_structure(in);
}

inline PHSentence parse_sentence(const std::string& text) {
    std::istringstream in(text);
    return read_sentence(in);
}

inline std::string to_text(const Structure& s) {
    std::ostringstream out;
    write_structure(out, s);
    return out.str();
}

inline std::string to_text(const PHSentence& phi) {
    std::ostringstream out;
    write_sentence(out, phi);
    return out.str();
}

}  // namespace qcsp
