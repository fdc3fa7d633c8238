#ifndef KBFUSE_IDS_HPP
#define KBFUSE_IDS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "kbfuse/facts.hpp"
#include "kbfuse/typecheck.hpp"

namespace kbfuse {

// Turtle-safe local name: spaces and hyphens become underscores, ASCII
// letters/digits/underscore pass through, every other codepoint becomes
// `_uXXXX_` (lowercase hex, at least four digits).
std::string sanitize(const std::string& text);

// Inverse of sanitize up to the space/hyphen -> underscore identification;
// used as the injectivity oracle.
std::string desanitize(const std::string& localName);

// How many entities claim each Wikipedia title.
std::map<std::string, uint64_t> count_title_claims(const std::vector<NameSource>& names);

// Priority chain: unique Wikipedia title; English label + "_" + Q-id;
// label of the lexicographically smallest language tag + "_" + Q-id;
// bare Q-id.
std::string assign_identifier(const NameSource& name,
                              const std::map<std::string, uint64_t>& titleClaims,
                              const std::string& qidLocal);

struct RenamePlan {
    std::map<std::string, std::string> mapping;  // source IRI -> final IRI
    std::vector<Statement> sameAs;               // final owl:sameAs source
};

// Final IRIs for every retained individual (resource namespace), glued
// class (class namespace), and generic instance (class name +
// "_generic_instance"). Upper classes keep their IRIs. Collisions fall
// through the chain; the bare Q-id form is the unique backstop.
RenamePlan build_rename_plan(const std::vector<NameSource>& names, const EntityRegistry& registry,
                             const TaxonomyGraph& taxonomy);

// Statements with subjects and IRI objects renamed through the mapping.
std::vector<Statement> apply_rename(const std::vector<Statement>& statements,
                                    const std::map<std::string, std::string>& mapping);

}  // namespace kbfuse

#endif
