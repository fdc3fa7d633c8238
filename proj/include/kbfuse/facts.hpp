#ifndef KBFUSE_FACTS_HPP
#define KBFUSE_FACTS_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kbfuse/schema.hpp"
#include "kbfuse/tally.hpp"
#include "kbfuse/taxonomy.hpp"
#include "kbfuse/term.hpp"

namespace kbfuse {

// Dump-side predicate layout (Wikidata-style defaults).
struct FactsConfig {
    std::string entityNamespace;      // subjects of item blocks
    std::string truthyPrefix;         // wdt:
    std::string statementPrefix;      // p:  (links item -> statement node)
    std::string statementValuePrefix; // ps: (statement node -> value)
    std::string qualifierPrefix;      // pq:
    std::string subclassPid = "P279";
    std::string instancePid = "P31";
    std::string startQualifierPid = "P580";
    std::string endQualifierPid = "P582";
    std::string pointQualifierPid = "P585";
    std::string productPid = "P176";

    static FactsConfig wikidata();
};

// Name material gathered per source entity during extraction.
struct NameSource {
    std::string iri;                           // source entity IRI
    std::string wikipediaTitle;                // raw page title, underscores kept
    std::map<std::string, std::string> labels; // language tag -> label text
};

// Source class -> final class: mapping targets resolve to their upper
// class, retained glued classes to themselves, everything else to nothing.
std::optional<std::string> resolve_class(const std::string& sourceClass,
                                         const std::map<std::string, std::string>& sourceToUpper,
                                         const TaxonomyGraph& taxonomy);

struct MappedPredicate {
    const PropertyShape* shape = nullptr;
    bool inverted = false;
};

// The schema property populated from `sourcePredicate` (a truthy IRI), or
// nothing when unmapped.
std::optional<MappedPredicate> map_predicate(const std::string& sourcePredicate,
                                             const SchemaDefinition& schema);

// True iff some direct class of the subject is a transitive subclass of the
// shape's domain class.
bool check_subject(const std::set<std::string>& subjectClasses, const PropertyShape& shape,
                   const TaxonomyGraph& taxonomy);

// Datatype (with documented coercions) and pattern check; may rewrite the
// literal in place (dateTime with zero time-of-day truncates to xsd:date).
bool check_literal(Term& object, const PropertyShape& shape);

// Keeps at most maxCount facts per (subject, predicate) group, preferring
// the lexicographically smallest objects. Facts must share subject and
// predicate.
std::vector<Statement> enforce_max_count(std::vector<Statement> facts,
                                         const PropertyShape& shape, Tally* tally = nullptr);

struct TimeAnnotation {
    std::string start, end, point;
};

// Temporal qualifiers (start/end/point-in-time P-ids) from a statement
// node's qualifier list; ill-formed dates are dropped and counted.
TimeAnnotation extract_time(const std::vector<std::pair<std::string, Term>>& qualifiers,
                            const FactsConfig& config, Tally* tally = nullptr);

// Everything one extraction pass produces; chunk results merge by
// concatenation in range order.
struct FactExtraction {
    std::vector<Statement> facts;   // schema predicates; object checks may be pending
    std::vector<Statement> labels;  // label/comment/alternate-name pass-through
    std::vector<Statement> types;   // subject rdf:type resolved-class
    std::vector<NameSource> names;  // per entity, first-seen order
    std::set<std::string> products; // subjects carrying the product P-id
    Tally tally;
};

FactExtraction extract_facts(const std::vector<Statement>& statements,
                             const SchemaDefinition& schema, const TaxonomyGraph& taxonomy,
                             const FactsConfig& config);

void merge_into(FactExtraction& target, FactExtraction&& part);

// Name-source table persistence (step 3 -> step 5).
void save_names(const std::vector<NameSource>& names, const std::string& path);
std::vector<NameSource> load_names(const std::string& path);

}  // namespace kbfuse

#endif
