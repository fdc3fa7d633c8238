#ifndef KBFUSE_TYPECHECK_HPP
#define KBFUSE_TYPECHECK_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "kbfuse/schema.hpp"
#include "kbfuse/tally.hpp"
#include "kbfuse/taxonomy.hpp"
#include "kbfuse/term.hpp"

namespace kbfuse {

// Everything known about the final population: which IRIs are entities
// (and their direct classes), which are classes, which are products, and
// which generic instances exist.
struct EntityRegistry {
    std::map<std::string, std::set<std::string>> directClasses;  // entity -> final classes
    std::set<std::string> isClass;
    std::set<std::string> isProduct;
    std::map<std::string, std::string> generics;  // class -> generic-instance IRI

    bool is_instance_of(const std::string& entity, const std::string& cls,
                        const TaxonomyGraph& taxonomy) const;
};

EntityRegistry build_registry(const std::vector<Statement>& types, const TaxonomyGraph& taxonomy,
                              const std::set<std::string>& products);

// One generic instance per class, created on demand. The IRI lives in a
// dedicated namespace keyed by the class IRI's local name; the readable
// identifier is assigned later from the class's final name. Throws if the
// class is not in the taxonomy.
std::string make_generic(const std::string& classIri, EntityRegistry& registry,
                         const TaxonomyGraph& taxonomy);

enum class ObjectVerdict { Accept, Rewrite, Reject };

// Second-pass object check for IRI objects of class-ranged shapes: accept
// instances of the range, rewrite class objects inside a generic-instance
// category to their generic instance (fact.object is replaced), reject the
// rest.
ObjectVerdict check_object(Statement& fact, const PropertyShape& shape, EntityRegistry& registry,
                           const TaxonomyGraph& taxonomy, const SchemaDefinition& schema,
                           Tally& tally);

// Every product that is also a class stops being one: it and any demoted
// descendants leave the taxonomy, it becomes an instance of its nearest
// non-demoted former ancestors, and its former instances move to those
// ancestors too.
void demote_products(EntityRegistry& registry, TaxonomyGraph& taxonomy, Tally* tally = nullptr);

// Entities typed under two disjoint anchors keep their classes in
// lexicographic order greedily: a class conflicting with an already-kept
// one is dropped and counted.
void resolve_instance_disjointness(EntityRegistry& registry, const TaxonomyGraph& taxonomy,
                                   Tally* tally = nullptr);

struct TypecheckResult {
    std::vector<Statement> facts;   // fully validated, cardinality enforced
    std::vector<Statement> labels;  // restricted to retained subjects
    std::vector<Statement> types;   // regenerated from the registry + generics
    EntityRegistry registry;
    Tally tally;
};

// The full step: build the registry, demote products, resolve instance
// disjointness, re-validate every fact (subject, literal, object),
// enforce cardinality globally, regenerate type facts.
TypecheckResult run_typecheck(const std::vector<Statement>& facts,
                              const std::vector<Statement>& labels,
                              const std::vector<Statement>& types,
                              const std::set<std::string>& products, TaxonomyGraph& taxonomy,
                              const SchemaDefinition& schema);

}  // namespace kbfuse

#endif
