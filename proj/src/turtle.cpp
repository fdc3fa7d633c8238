#include "kbfuse/turtle.hpp"

#include <cctype>
#include <stdexcept>

#include "kbfuse/vocab.hpp"

namespace kbfuse {

namespace {

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

bool is_pn_local_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
           c == '.' || c == '%' || c == ':';
}

// Characters that may never appear raw inside an IRIREF.
bool is_illegal_iri_char(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '<' ||
           c == '"' || c == '{' || c == '}' || c == '|' || c == '^' || c == '`';
}

void append_utf8(std::string& out, uint32_t cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

}  // namespace

PrefixTable default_prefixes() {
    using namespace vocab;
    return {
        {"rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#"},
        {"rdfs", "http://www.w3.org/2000/01/rdf-schema#"},
        {"owl", "http://www.w3.org/2002/07/owl#"},
        {"xsd", XSD},
        {"sh", SH},
        {"skos", "http://www.w3.org/2004/02/skos/core#"},
        {"schema", SCHEMA},
        {"wd", WD},
        {"wdt", WDT},
        {"p", WD_P},
        {"ps", WD_PS},
        {"pq", WD_PQ},
        {"wds", WD + "statement/"},
        {"kbf", KBF},
        {"kbc", KB_CLASS},
        {"kbr", KB_RESOURCE},
    };
}

TurtleParser::TurtleParser(std::string_view input, PrefixTable prefixes,
                           std::string blankLabelPrefix)
    : in_(input), prefixes_(std::move(prefixes)), blankPrefix_(std::move(blankLabelPrefix)) {}

void TurtleParser::skip_ws() {
    while (!at_end()) {
        char c = peek();
        if (is_ws(c)) {
            ++pos_;
        } else if (c == '#') {
            while (!at_end() && peek() != '\n') ++pos_;
        } else {
            break;
        }
    }
}

// Skip forward to the next top-level statement terminator and resume there.
void TurtleParser::recover(const std::string& reason, size_t offset) {
    ++stats_.skipped;
    stats_.diagnostics.push_back({offset, reason});
    int bracketDepth = 0;
    while (!at_end()) {
        char c = peek();
        if (c == '"') {
            ++pos_;
            while (!at_end() && peek() != '"') {
                if (peek() == '\\') ++pos_;
                if (!at_end()) ++pos_;
            }
            if (!at_end()) ++pos_;
            continue;
        }
        if (c == '#') {
            while (!at_end() && peek() != '\n') ++pos_;
            continue;
        }
        if (c == '[') ++bracketDepth;
        if (c == ']' && bracketDepth > 0) --bracketDepth;
        if (c == '.' && bracketDepth == 0) {
            ++pos_;
            return;
        }
        ++pos_;
    }
}

Term TurtleParser::fresh_blank() {
    return Term::blank(blankPrefix_ + std::to_string(blankCounter_++));
}

Term TurtleParser::parse_iriref() {
    size_t start = pos_;
    ++pos_;  // consume '<'
    std::string iri;
    while (!at_end()) {
        char c = peek();
        if (c == '>') {
            ++pos_;
            return Term::iri(std::move(iri));
        }
        if (is_illegal_iri_char(c)) {
            throw Malformed{"illegal character in IRI at offset " + std::to_string(pos_)};
        }
        if (c == '\\') {
            ++pos_;
            if (at_end()) break;
            char e = peek();
            int digits = e == 'u' ? 4 : e == 'U' ? 8 : 0;
            if (digits == 0) throw Malformed{"bad escape in IRI"};
            ++pos_;
            if (pos_ + digits > in_.size()) break;
            uint32_t cp = 0;
            for (int i = 0; i < digits; ++i) {
                char h = in_[pos_ + i];
                cp <<= 4;
                if (h >= '0' && h <= '9') cp |= h - '0';
                else if (h >= 'a' && h <= 'f') cp |= h - 'a' + 10;
                else if (h >= 'A' && h <= 'F') cp |= h - 'A' + 10;
                else throw Malformed{"bad unicode escape in IRI"};
            }
            pos_ += digits;
            append_utf8(iri, cp);
            continue;
        }
        iri += c;
        ++pos_;
    }
    throw std::runtime_error("truncated IRI at end of stream, byte offset " +
                             std::to_string(start));
}

Term TurtleParser::parse_literal() {
    ++pos_;  // consume opening '"'
    std::string lex;
    while (true) {
        if (at_end())
            throw std::runtime_error("truncated literal at end of stream, byte offset " +
                                     std::to_string(pos_));
        char c = peek();
        if (c == '"') {
            ++pos_;
            break;
        }
        if (c == '\n') throw Malformed{"newline in single-line literal"};
        if (c == '\\') {
            ++pos_;
            if (at_end()) continue;
            char e = peek();
            ++pos_;
            switch (e) {
                case 'n': lex += '\n'; break;
                case 'r': lex += '\r'; break;
                case 't': lex += '\t'; break;
                case 'b': lex += '\b'; break;
                case 'f': lex += '\f'; break;
                case '"': lex += '"'; break;
                case '\'': lex += '\''; break;
                case '\\': lex += '\\'; break;
                case 'u':
                case 'U': {
                    int digits = e == 'u' ? 4 : 8;
                    if (pos_ + digits > in_.size()) throw Malformed{"truncated unicode escape"};
                    uint32_t cp = 0;
                    for (int i = 0; i < digits; ++i) {
                        char h = in_[pos_ + i];
                        cp <<= 4;
                        if (h >= '0' && h <= '9') cp |= h - '0';
                        else if (h >= 'a' && h <= 'f') cp |= h - 'a' + 10;
                        else if (h >= 'A' && h <= 'F') cp |= h - 'A' + 10;
                        else throw Malformed{"bad unicode escape in literal"};
                    }
                    pos_ += digits;
                    append_utf8(lex, cp);
                    break;
                }
                default:
                    throw Malformed{std::string("unknown escape \\") + e};
            }
            continue;
        }
        lex += c;
        ++pos_;
    }
    Term t = Term::literal(std::move(lex));
    if (!at_end() && peek() == '@') {
        ++pos_;
        std::string tag;
        while (!at_end() &&
               (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-')) {
            tag += peek();
            ++pos_;
        }
        if (tag.empty()) throw Malformed{"empty language tag"};
        t.language = std::move(tag);
    } else if (pos_ + 1 < in_.size() && peek() == '^' && in_[pos_ + 1] == '^') {
        pos_ += 2;
        skip_ws();
        if (at_end()) throw Malformed{"missing datatype"};
        Term dt = peek() == '<' ? parse_iriref() : parse_prefixed_or_keyword();
        if (!dt.is_iri()) throw Malformed{"datatype must be an IRI"};
        t.datatype = dt.value;
    }
    return t;
}

Term TurtleParser::parse_prefixed_or_keyword() {
    size_t start = pos_;
    // Numeric shorthand.
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-') {
        std::string num;
        bool isDecimal = false, isDouble = false;
        while (!at_end()) {
            char d = peek();
            if (std::isdigit(static_cast<unsigned char>(d)) || d == '+' || d == '-') {
                num += d;
            } else if (d == '.' && pos_ + 1 < in_.size() &&
                       std::isdigit(static_cast<unsigned char>(in_[pos_ + 1]))) {
                num += d;
                isDecimal = true;
            } else if (d == 'e' || d == 'E') {
                num += d;
                isDouble = true;
            } else {
                break;
            }
            ++pos_;
        }
        const std::string& dt =
            isDouble ? vocab::XSD_DOUBLE : isDecimal ? vocab::XSD_DECIMAL : vocab::XSD_INTEGER;
        return Term::literal(std::move(num), dt);
    }

    std::string token;
    while (!at_end() && is_pn_local_char(peek())) {
        token += peek();
        ++pos_;
    }
    // A trailing '.' belongs to the statement, not the name.
    while (!token.empty() && token.back() == '.') {
        token.pop_back();
        --pos_;
    }
    if (token.empty()) throw Malformed{"expected term at offset " + std::to_string(start)};
    if (token == "true" || token == "false") return Term::literal(token, vocab::XSD_BOOLEAN);

    size_t colon = token.find(':');
    if (colon == std::string::npos)
        throw Malformed{"not a prefixed name: '" + token + "'"};
    std::string prefix = token.substr(0, colon);
    auto it = prefixes_.find(prefix);
    if (it == prefixes_.end()) throw Malformed{"unknown prefix '" + prefix + ":'"};
    return Term::iri(it->second + token.substr(colon + 1));
}

Term TurtleParser::parse_simple_term() {
    char c = peek();
    if (c == '<') return parse_iriref();
    if (c == '"') return parse_literal();
    if (c == '_' && pos_ + 1 < in_.size() && in_[pos_ + 1] == ':') {
        pos_ += 2;
        std::string label;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                             peek() == '_' || peek() == '-')) {
            label += peek();
            ++pos_;
        }
        if (label.empty()) throw Malformed{"empty blank node label"};
        return Term::blank(std::move(label));
    }
    return parse_prefixed_or_keyword();
}

Term TurtleParser::parse_blank_property_list(const std::function<void(Statement&&)>& sink) {
    ++pos_;  // consume '['
    Term node = fresh_blank();
    skip_ws();
    while (!at_end() && peek() != ']') {
        Term pred = parse_predicate();
        skip_ws();
        while (true) {
            Term obj = parse_object(sink);
            sink(Statement{node, pred, std::move(obj)});
            skip_ws();
            if (!at_end() && peek() == ',') {
                ++pos_;
                skip_ws();
                continue;
            }
            break;
        }
        if (!at_end() && peek() == ';') {
            ++pos_;
            skip_ws();
        }
    }
    if (at_end())
        throw std::runtime_error("truncated blank node list at end of stream, byte offset " +
                                 std::to_string(pos_));
    ++pos_;  // consume ']'
    return node;
}

Term TurtleParser::parse_subject(const std::function<void(Statement&&)>& sink) {
    skip_ws();
    if (peek() == '[') return parse_blank_property_list(sink);
    Term t = parse_simple_term();
    if (t.is_literal()) throw Malformed{"literal in subject position"};
    return t;
}

Term TurtleParser::parse_predicate() {
    skip_ws();
    if (!at_end() && peek() == 'a') {
        // 'a' keyword only when delimited.
        if (pos_ + 1 >= in_.size() || is_ws(in_[pos_ + 1]) || in_[pos_ + 1] == '<') {
            ++pos_;
            return Term::iri(vocab::RDF_TYPE);
        }
    }
    Term t = peek() == '<' ? parse_iriref() : parse_prefixed_or_keyword();
    if (!t.is_iri()) throw Malformed{"predicate must be an IRI"};
    return t;
}

Term TurtleParser::parse_object(const std::function<void(Statement&&)>& sink) {
    skip_ws();
    if (peek() == '[') return parse_blank_property_list(sink);
    return parse_simple_term();
}

bool TurtleParser::try_directive() {
    if (in_.substr(pos_).starts_with("@prefix") ||
        in_.substr(pos_).starts_with("PREFIX")) {
        bool sparqlStyle = peek() == 'P';
        pos_ += sparqlStyle ? 6 : 7;
        skip_ws();
        std::string label;
        while (!at_end() && peek() != ':') {
            label += peek();
            ++pos_;
        }
        if (at_end()) throw std::runtime_error("truncated prefix directive");
        ++pos_;  // ':'
        skip_ws();
        if (at_end() || peek() != '<') throw Malformed{"prefix directive needs an IRI"};
        Term iri = parse_iriref();
        prefixes_[label] = iri.value;
        skip_ws();
        if (!sparqlStyle) {
            if (at_end() || peek() != '.') throw Malformed{"prefix directive missing '.'"};
            ++pos_;
        }
        return true;
    }
    if (in_.substr(pos_).starts_with("@base") || in_.substr(pos_).starts_with("BASE"))
        throw Malformed{"@base is not supported"};
    return false;
}

void TurtleParser::expect_dot() {
    skip_ws();
    if (at_end())
        throw std::runtime_error("truncated statement at end of stream, byte offset " +
                                 std::to_string(pos_));
    if (peek() != '.') throw Malformed{"expected '.' at offset " + std::to_string(pos_)};
    ++pos_;
}

void TurtleParser::parse_statement(const std::function<void(Statement&&)>& sink) {
    Term subject = parse_subject(sink);
    skip_ws();
    // A bare blank-node property list followed by '.' is a legal statement.
    if (subject.is_blank() && !at_end() && peek() == '.') {
        ++pos_;
        return;
    }
    while (true) {
        Term pred = parse_predicate();
        while (true) {
            Term obj = parse_object(sink);
            sink(Statement{subject, pred, std::move(obj)});
            skip_ws();
            if (!at_end() && peek() == ',') {
                ++pos_;
                continue;
            }
            break;
        }
        if (!at_end() && peek() == ';') {
            ++pos_;
            skip_ws();
            if (!at_end() && peek() == '.') break;  // trailing ';'
            continue;
        }
        break;
    }
    expect_dot();
}

void TurtleParser::parse(const std::function<void(Statement&&)>& sink) {
    while (true) {
        skip_ws();
        if (at_end()) return;
        size_t start = pos_;
        try {
            if (try_directive()) continue;
            parse_statement(sink);
        } catch (const Malformed& m) {
            recover(m.reason, start);
        }
    }
}

std::vector<Statement> parse_turtle(std::string_view input, PrefixTable prefixes,
                                    ParseStats* stats, std::string blankLabelPrefix) {
    TurtleParser parser(input, std::move(prefixes), std::move(blankLabelPrefix));
    std::vector<Statement> out;
    parser.parse([&](Statement&& s) { out.push_back(std::move(s)); });
    if (stats) *stats = parser.stats();
    return out;
}

}  // namespace kbfuse
