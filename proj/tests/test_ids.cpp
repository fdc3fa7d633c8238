#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <set>
#include <string>

#include "doctest.h"
#include "kbfuse/ids.hpp"
#include "kbfuse/vocab.hpp"

using namespace kbfuse;
using namespace kbfuse::vocab;

namespace {
const std::string kW = "http://www.wikidata.org/entity/";
}

TEST_CASE("sanitize: spaces, hyphens, ascii, escapes") {
    CHECK(sanitize("Eleanor Roosevelt") == "Eleanor_Roosevelt");
    CHECK(sanitize("Brazilian jiu-jitsu competition") == "Brazilian_jiu_jitsu_competition");
    CHECK(sanitize("AC/DC") == "AC_u002f_DC");
    CHECK(sanitize("métier") == "m_u00e9_tier");
    CHECK(sanitize("東京") == "_u6771__u4eac_");
    CHECK(sanitize("snake_case_stays") == "snake_case_stays");
    // Astral-plane codepoint gets more than four digits.
    CHECK(sanitize("a\xF0\x9F\x8E\xB8z") == "a_u1f3b8_z");
}

TEST_CASE("desanitize inverts the escapes") {
    CHECK(desanitize("AC_u002f_DC") == "AC/DC");
    CHECK(desanitize("m_u00e9_tier") == "métier");
    CHECK(desanitize("_u6771__u4eac_") == "東京");
    CHECK(desanitize("plain_name") == "plain_name");
}

TEST_CASE("sanitize is injective up to space/hyphen identification") {
    // 10^4 generated labels over a hostile alphabet; any collision of the
    // sanitized forms must desanitize to the same space/hyphen-normalized
    // source. [DERIVED] oracle: decode(sanitize(x)) == normalize(x).
    std::mt19937_64 rng(7);
    // Note: no raw "u" pieces — source text that already looks like an
    // escape sequence ("_u002f_") intentionally decodes as one, so the
    // inverse property only holds for inputs without literal escape shapes.
    const std::vector<std::string> alphabet = {"a", "Z", "0", "_",  " ",  "-", "/",
                                               "é", "ü", "東", "\t", "\"", "."};
    auto normalize = [](const std::string& s) {
        std::string out;
        for (size_t i = 0; i < s.size(); ++i) {
            char c = s[i];
            out += (c == ' ' || c == '-') ? '_' : c;
        }
        return out;
    };
    std::set<std::string> seenSanitized;
    std::map<std::string, std::string> firstSource;
    int collisions = 0;
    for (int i = 0; i < 10000; ++i) {
        std::string label;
        int len = 1 + static_cast<int>(rng() % 12);
        for (int k = 0; k < len; ++k) label += alphabet[rng() % alphabet.size()];
        std::string s = sanitize(label);
        CHECK(desanitize(s) == normalize(label));
        auto [it, fresh] = firstSource.emplace(s, normalize(label));
        if (!fresh && it->second != normalize(label)) ++collisions;
    }
    CHECK(collisions == 0);
}

TEST_CASE("identifier chain: title, english label, smallest language, bare id") {
    std::map<std::string, uint64_t> claims = {{"Eleanor_Roosevelt", 1}, {"Springfield", 2}};

    NameSource titled{kW + "Q83396", "Eleanor_Roosevelt", {{"en", "Eleanor Roosevelt"}}};
    CHECK(assign_identifier(titled, claims, "Q83396") == "Eleanor_Roosevelt");

    NameSource contested{kW + "Q1", "Springfield", {{"en", "Springfield"}}};
    CHECK(assign_identifier(contested, claims, "Q1") == "Springfield_Q1");

    NameSource labeled{kW + "Q105086361", "", {{"en", "Brazilian jiu-jitsu competition"}}};
    CHECK(assign_identifier(labeled, claims, "Q105086361") ==
          "Brazilian_jiu_jitsu_competition_Q105086361");

    NameSource foreign{kW + "Q2", "", {{"fr", "métier"}, {"de", "Beruf"}}};
    CHECK(assign_identifier(foreign, claims, "Q2") == "Beruf_Q2");  // "de" < "fr"

    NameSource bare{kW + "Q3800", "", {}};
    CHECK(assign_identifier(bare, claims, "Q3800") == "Q3800");
}

TEST_CASE("rename plan: namespaces, generics, collision fallback") {
    TaxonomyGraph tax;
    int person = tax.intern("http://kbfuse.org/class/Person", NodeOrigin::Upper);
    int lang = tax.intern("http://kbfuse.org/class/Language", NodeOrigin::Upper);
    int q60 = tax.intern(kW + "Q60", NodeOrigin::Glued);
    tax.add_edge(q60, lang);
    (void)person;

    EntityRegistry reg;
    reg.isClass = {"http://kbfuse.org/class/Person", "http://kbfuse.org/class/Language",
                   kW + "Q60"};
    reg.directClasses[kW + "Q1"] = {"http://kbfuse.org/class/Person"};
    reg.directClasses[kW + "Q2"] = {"http://kbfuse.org/class/Person"};
    reg.generics[kW + "Q60"] = KB_GENERIC + "Q60";
    reg.directClasses[KB_GENERIC + "Q60"] = {kW + "Q60"};

    std::vector<NameSource> names = {
        {kW + "Q60", "English_language", {{"en", "English"}}},
        {kW + "Q1", "", {{"en", "Ada Lovelace"}}},
        // Duplicate rows for Q1 as chunked extraction produces them.
        {kW + "Q1", "Ada_Lovelace", {}},
        {kW + "Q2", "Ada_Lovelace", {{"en", "Ada Lovelace"}}},
    };
    auto plan = build_rename_plan(names, reg, tax);

    // Glued class to the class namespace, named by its unique title.
    CHECK(plan.mapping.at(kW + "Q60") == "http://kbfuse.org/class/English_language");
    // Generic instance named from the class's final name.
    CHECK(plan.mapping.at(KB_GENERIC + "Q60") ==
          KB_RESOURCE + "English_language_generic_instance");
    // Q1 and Q2 both claim the title Ada_Lovelace: neither gets it, both
    // fall back to label + Q-id.
    CHECK(plan.mapping.at(kW + "Q1") == KB_RESOURCE + "Ada_Lovelace_Q1");
    CHECK(plan.mapping.at(kW + "Q2") == KB_RESOURCE + "Ada_Lovelace_Q2");
    // Upper classes keep their IRIs.
    CHECK(!plan.mapping.count("http://kbfuse.org/class/Person"));

    // sameAs links point from the new IRI to the source IRI.
    bool found = false;
    for (const auto& s : plan.sameAs)
        if (s.subject == Term::iri(KB_RESOURCE + "Ada_Lovelace_Q1") &&
            s.predicate == Term::iri(OWL_SAMEAS) && s.object == Term::iri(kW + "Q1"))
            found = true;
    CHECK(found);
}

TEST_CASE("used names collide down the chain to the bare id") {
    TaxonomyGraph tax;
    EntityRegistry reg;
    reg.directClasses[kW + "Q7"] = {"c"};
    reg.directClasses[kW + "Q9"] = {"c"};
    // Q7 (processed first, IRI order) takes "X_Q7" from its label. Q9's
    // unique title sanitizes to the same name, so Q9 falls through its
    // chain; with no labels the bare Q-id backstop catches it.
    std::vector<NameSource> names = {
        {kW + "Q7", "", {{"en", "X"}}},
        {kW + "Q9", "X_Q7", {}},
    };
    auto plan = build_rename_plan(names, reg, tax);
    CHECK(plan.mapping.at(kW + "Q7") == KB_RESOURCE + "X_Q7");
    CHECK(plan.mapping.at(kW + "Q9") == KB_RESOURCE + "Q9");
}

TEST_CASE("apply_rename maps subjects and iri objects only") {
    std::map<std::string, std::string> mapping = {{"old", "new"}};
    std::vector<Statement> in = {
        {Term::iri("old"), Term::iri("p"), Term::iri("old")},
        {Term::iri("other"), Term::iri("old"), Term::literal("old")},
    };
    auto out = apply_rename(in, mapping);
    CHECK(out[0].subject == Term::iri("new"));
    CHECK(out[0].object == Term::iri("new"));
    CHECK(out[1].predicate == Term::iri("old"));      // predicates never renamed
    CHECK(out[1].object == Term::literal("old"));     // literals untouched
}
