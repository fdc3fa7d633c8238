#ifndef KBFUSE_TERM_HPP
#define KBFUSE_TERM_HPP

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace kbfuse {

enum class TermKind { Iri, Literal, Blank };

// An RDF node: IRI, typed/language-tagged literal, or blank node.
struct Term {
    TermKind kind = TermKind::Iri;
    std::string value;     // IRI text, literal lexical form, or blank label
    std::string datatype;  // optional datatype IRI (literals only)
    std::string language;  // optional BCP-47 tag (literals only)

    static Term iri(std::string v) { return {TermKind::Iri, std::move(v), {}, {}}; }
    static Term blank(std::string label) { return {TermKind::Blank, std::move(label), {}, {}}; }
    static Term literal(std::string v, std::string dt = {}, std::string lang = {}) {
        return {TermKind::Literal, std::move(v), std::move(dt), std::move(lang)};
    }

    bool is_iri() const { return kind == TermKind::Iri; }
    bool is_literal() const { return kind == TermKind::Literal; }
    bool is_blank() const { return kind == TermKind::Blank; }

    auto operator<=>(const Term&) const = default;
};

// Subject/predicate/object plus optional temporal annotation columns.
// The base parser never fills the temporal fields; only the fact
// extractor does.
struct Statement {
    Term subject;
    Term predicate;
    Term object;
    std::string startTime;    // xsd:date/dateTime lexical form, empty = absent
    std::string endTime;
    std::string pointInTime;

    bool has_time() const {
        return !startTime.empty() || !endTime.empty() || !pointInTime.empty();
    }
    auto operator<=>(const Statement&) const = default;
};

// Single-line Turtle form of a term: <iri>, "literal"@tag / ^^<dt>, _:label.
// Tabs, newlines, quotes and backslashes in literals are escaped so one
// statement always fits on one line.
std::string to_turtle(const Term& t);

// Inverse of to_turtle for a single term. Throws std::runtime_error on
// malformed input.
Term term_from_turtle(std::string_view text);

}  // namespace kbfuse

#endif
