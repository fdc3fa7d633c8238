#include "kbfuse/term.hpp"

#include <stdexcept>

namespace kbfuse {

namespace {

void append_escaped(std::string& out, std::string_view s) {
    for (char c : s) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '"': out += "\\\""; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
}

std::string unescape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '\\' && i + 1 < s.size()) {
            ++i;
            switch (s[i]) {
                case 'n': out += '\n'; break;
                case 'r': out += '\r'; break;
                case 't': out += '\t'; break;
                case '\\': out += '\\'; break;
                case '"': out += '"'; break;
                default: out += '\\'; out += s[i];
            }
        } else {
            out += s[i];
        }
    }
    return out;
}

}  // namespace

std::string to_turtle(const Term& t) {
    switch (t.kind) {
        case TermKind::Iri:
            return "<" + t.value + ">";
        case TermKind::Blank:
            return "_:" + t.value;
        case TermKind::Literal: {
            std::string out = "\"";
            append_escaped(out, t.value);
            out += '"';
            if (!t.language.empty()) {
                out += '@';
                out += t.language;
            } else if (!t.datatype.empty()) {
                out += "^^<" + t.datatype + ">";
            }
            return out;
        }
    }
    return {};
}

Term term_from_turtle(std::string_view text) {
    if (text.empty()) throw std::runtime_error("empty term");
    if (text.front() == '<') {
        if (text.back() != '>') throw std::runtime_error("unterminated IRI: " + std::string(text));
        return Term::iri(std::string(text.substr(1, text.size() - 2)));
    }
    if (text.starts_with("_:")) {
        return Term::blank(std::string(text.substr(2)));
    }
    if (text.front() == '"') {
        // Find the closing quote, honoring backslash escapes.
        size_t i = 1;
        for (; i < text.size(); ++i) {
            if (text[i] == '\\') { ++i; continue; }
            if (text[i] == '"') break;
        }
        if (i >= text.size()) throw std::runtime_error("unterminated literal: " + std::string(text));
        Term t = Term::literal(unescape(text.substr(1, i - 1)));
        std::string_view rest = text.substr(i + 1);
        if (rest.starts_with("@")) {
            t.language = std::string(rest.substr(1));
        } else if (rest.starts_with("^^<") && rest.ends_with(">")) {
            t.datatype = std::string(rest.substr(3, rest.size() - 4));
        } else if (!rest.empty()) {
            throw std::runtime_error("trailing garbage after literal: " + std::string(text));
        }
        return t;
    }
    throw std::runtime_error("unrecognized term: " + std::string(text));
}

}  // namespace kbfuse
