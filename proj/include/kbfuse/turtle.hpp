#ifndef KBFUSE_TURTLE_HPP
#define KBFUSE_TURTLE_HPP

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "kbfuse/term.hpp"

namespace kbfuse {

// Prefix label -> IRI stem. `@prefix` directives in the stream extend it.
using PrefixTable = std::map<std::string, std::string>;

// Standard prefixes of Wikidata-style dumps plus the tool's own vocabulary.
PrefixTable default_prefixes();

struct ParseDiagnostic {
    size_t offset = 0;
    std::string reason;
};

struct ParseStats {
    size_t skipped = 0;  // malformed statements skipped
    std::vector<ParseDiagnostic> diagnostics;
};

// Streaming parser for the Turtle subset used by the pipeline: prefixed
// names, IRIs, typed/langtag literals, numeric and boolean shorthand,
// `;`/`,` continuation, and blank-node property lists one level deep.
// Collections and quoted triples are out of scope.
//
// Malformed statements are skipped and counted; the only hard failure is
// a block truncated at end of stream.
class TurtleParser {
public:
    TurtleParser(std::string_view input, PrefixTable prefixes,
                 std::string blankLabelPrefix = "b");

    void parse(const std::function<void(Statement&&)>& sink);

    const ParseStats& stats() const { return stats_; }
    const PrefixTable& prefixes() const { return prefixes_; }

private:
    struct Malformed {
        std::string reason;
    };

    bool at_end() const { return pos_ >= in_.size(); }
    char peek() const { return in_[pos_]; }
    void skip_ws();
    void recover(const std::string& reason, size_t offset);
    void expect_dot();

    Term parse_subject(const std::function<void(Statement&&)>& sink);
    Term parse_predicate();
    Term parse_object(const std::function<void(Statement&&)>& sink);
    Term parse_simple_term();
    Term parse_iriref();
    Term parse_prefixed_or_keyword();
    Term parse_literal();
    Term parse_blank_property_list(const std::function<void(Statement&&)>& sink);
    Term fresh_blank();
    bool try_directive();
    void parse_statement(const std::function<void(Statement&&)>& sink);

    std::string_view in_;
    size_t pos_ = 0;
    PrefixTable prefixes_;
    ParseStats stats_;
    std::string blankPrefix_;
    size_t blankCounter_ = 0;
};

// One-shot convenience wrapper.
std::vector<Statement> parse_turtle(std::string_view input, PrefixTable prefixes,
                                    ParseStats* stats = nullptr,
                                    std::string blankLabelPrefix = "b");

}  // namespace kbfuse

#endif
