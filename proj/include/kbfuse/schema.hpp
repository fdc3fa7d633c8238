#ifndef KBFUSE_SCHEMA_HPP
#define KBFUSE_SCHEMA_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kbfuse/term.hpp"

namespace kbfuse {

// One SHACL-style property constraint: declared on a class, targeting
// either an object class or a literal datatype, optionally capped and
// pattern-checked, and mapped to a source-KB property.
struct PropertyShape {
    std::string onClass;
    std::string path;
    std::string rangeClass;       // exactly one of rangeClass/datatype is set
    std::string datatype;
    std::optional<int> maxCount;
    std::string pattern;          // empty = unconstrained
    std::string sourceProperty;   // empty = not populated from the source KB
    bool inverseOfSource = false; // populate from the inverse direction
};

enum class MappingKind { OneToOne, OneToMany, OneToNone };

struct ClassMapping {
    std::string upperClass;
    std::vector<std::string> sourceClasses;  // sorted; empty for OneToNone
    MappingKind kind = MappingKind::OneToNone;
};

struct SchemaDefinition {
    std::set<std::string> upperClasses;
    std::set<std::pair<std::string, std::string>> subclassEdges;  // (child, parent)
    std::set<std::pair<std::string, std::string>> disjointPairs;  // normalized, first < second
    std::vector<PropertyShape> shapes;
    std::vector<ClassMapping> classMappings;                      // one per upper class
    std::set<std::string> classBlacklist;                         // source-KB IRIs
    std::set<std::string> genericInstanceClasses;                 // upper categories
    std::map<std::string, std::string> labelMap;  // source predicate -> emitted predicate
    std::string rootClass;

    std::vector<std::string> parents_of(const std::string& cls) const;
    std::vector<std::string> children_of(const std::string& cls) const;
    // Transitive and reflexive.
    bool is_subclass_of(const std::string& cls, const std::string& ancestor) const;
    bool are_disjoint(const std::string& a, const std::string& b) const;
    const ClassMapping* mapping_of(const std::string& upperClass) const;
    // Source class -> upper class, over all mappings.
    std::map<std::string, std::string> source_to_upper() const;
};

// Loads and validates the declarative schema file. Aborts with a named
// diagnostic on: duplicate mapping of one source class, a shape referencing
// an unknown class, a cyclic upper taxonomy, a non-compiling pattern, or a
// source property claimed by two shapes.
SchemaDefinition load_schema(const std::string& turtleFile);
SchemaDefinition load_schema_from_statements(const std::vector<Statement>& statements);

// Keeps only classes that declare a shape, appear as a shape range, or lie
// on a path from such a class to the root. Mappings, disjointness pairs and
// generic categories are restricted to the survivors.
SchemaDefinition prune_upper_taxonomy(const SchemaDefinition& schema);

// The shape governing `predicate` on `cls`: declared on the class itself or
// on the nearest superclass declaring it. Throws on an unknown class.
const PropertyShape* property_for(const std::string& cls, const std::string& predicate,
                                  const SchemaDefinition& schema);

// The unique shape listing `sourceProperty`, if any.
const PropertyShape* shape_for_source_property(const std::string& sourceProperty,
                                               const SchemaDefinition& schema);

// Round-trippable statement form (used for the step-1 output file).
std::vector<Statement> schema_to_statements(const SchemaDefinition& schema);

}  // namespace kbfuse

#endif
