// Deterministic generator for the shipped synthetic mini dump: ~200 classes
// and ~1000 entities in the Wikidata-style Turtle layout the pipeline
// consumes, with deliberately planted taxonomy cycles, redundant links,
// disjointness violations, instance-and-class items, products, constraint
// violations, and temporal qualifiers. Regenerate with:
//   gen_minidump data/mini_dump.ttl

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

namespace {

std::string q(int n) { return "wd:Q" + std::to_string(n); }

std::string date(int y, int m, int d) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "\"+%04d-%02d-%02dT00:00:00Z\"^^xsd:dateTime", y, m, d);
    return buf;
}

}  // namespace

int main(int argc, char** argv) {
    std::string path = argc > 1 ? argv[1] : "mini_dump.ttl";
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        std::cerr << "cannot write " << path << "\n";
        return 1;
    }

    out << "@prefix wd: <http://www.wikidata.org/entity/> .\n"
           "@prefix wds: <http://www.wikidata.org/entity/statement/> .\n"
           "@prefix wdt: <http://www.wikidata.org/prop/direct/> .\n"
           "@prefix p: <http://www.wikidata.org/prop/> .\n"
           "@prefix ps: <http://www.wikidata.org/prop/statement/> .\n"
           "@prefix pq: <http://www.wikidata.org/prop/qualifier/> .\n"
           "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n"
           "@prefix skos: <http://www.w3.org/2004/02/skos/core#> .\n"
           "@prefix schema: <http://schema.org/> .\n"
           "@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n\n";

    auto sitelink = [&](const std::string& title, int qid) {
        out << "<https://en.wikipedia.org/wiki/" << title << "> schema:about " << q(qid) << " .\n";
    };

    // ---- classes ----------------------------------------------------------

    // Occupation tree under human (Q5): three levels.
    for (int i = 0; i < 60; ++i) {
        int id = 1000 + i;
        int parent;
        if (i < 10) parent = 5;                       // direct children of Q5
        else if (i < 40) parent = 1000 + (i - 10) % 10;  // level 2
        else parent = 1010 + (i - 40) % 20;              // level 3 (é for UTF-8 mass)
        out << q(id) << " wdt:P279 " << q(parent) << " ;\n\trdfs:label \"occupation " << i
            << " métier\"@en .\n";
    }
    // Five transitively redundant shortcuts: level-2 classes also directly
    // under Q5.
    for (int i = 0; i < 5; ++i)
        out << q(1010 + i) << " wdt:P279 wd:Q5 .\n";
    // Two disjointness-violating links: a taxon class under a place class,
    // and a creative-work class under a person-tree class. Both endpoints
    // carry anchor edges that sort earlier, so the anchors insert first and
    // these links are the ones rejected.
    out << "wd:Q1800 wdt:P279 wd:Q1400 .\n";
    out << "wd:Q1500 wdt:P279 wd:Q1000 .\n";
    // Three taxonomy cycles, all anchored inside the occupation tree.
    out << "wd:Q2100 wdt:P279 wd:Q2101 ;\n\trdfs:label \"method\"@en .\n"
           "wd:Q2101 wdt:P279 wd:Q2100 , wd:Q1000 ;\n\trdfs:label \"technique\"@en .\n"
           "wd:Q2102 wdt:P279 wd:Q2103 ;\n\trdfs:label \"axiom\"@en .\n"
           "wd:Q2103 wdt:P279 wd:Q2104 ;\n\trdfs:label \"first principle\"@en .\n"
           "wd:Q2104 wdt:P279 wd:Q2102 , wd:Q1001 ;\n\trdfs:label \"principle\"@en .\n"
           "wd:Q2105 wdt:P279 wd:Q2106 , wd:Q1002 ;\n\trdfs:label \"habit\"@en .\n"
           "wd:Q2106 wdt:P279 wd:Q2105 ;\n\trdfs:label \"custom\"@en .\n";
    // Blacklisted housekeeping class with a private subtree.
    out << "wd:Q4167836 wdt:P279 wd:Q5 ;\n\trdfs:label \"Wikimedia category\"@en .\n";
    for (int i = 0; i < 3; ++i)
        out << q(2200 + i) << " wdt:P279 wd:Q4167836 ;\n\trdfs:label \"tracking class " << i
            << "\"@en .\n";
    // Uninstantiated classes (dropped by step 2).
    for (int i = 0; i < 5; ++i)
        out << q(2300 + i) << " wdt:P279 wd:Q1003 ;\n\trdfs:label \"empty class " << i
            << "\"@en .\n";

    for (int i = 0; i < 10; ++i)
        out << q(1300 + i) << " wdt:P279 wd:Q43229 ;\n\trdfs:label \"org kind " << i << "\"@en .\n";
    for (int i = 0; i < 15; ++i)
        out << q(1400 + i) << " wdt:P279 wd:Q82794 ;\n\trdfs:label \"region kind " << i
            << "\"@en .\n";
    for (int i = 15; i < 30; ++i)
        out << q(1400 + i) << " wdt:P279 wd:Q3622002 ;\n\trdfs:label \"area kind " << i
            << "\"@en .\n";
    // One place class under both mapped roots (one-to-many merge).
    out << "wd:Q1405 wdt:P279 wd:Q3622002 .\n";
    for (int i = 0; i < 10; ++i)
        out << q(1500 + i) << " wdt:P279 wd:Q17537576 ;\n\trdfs:label \"work kind " << i
            << "\"@en .\n";
    for (int i = 0; i < 10; ++i)
        out << q(1600 + i) << " wdt:P279 wd:Q2424752 ;\n\trdfs:label \"product kind " << i
            << "\"@en .\n";
    // Product line that is itself a class with a sub-product class; both
    // carry a manufacturer, so step 4 demotes them to instances.
    out << "wd:Q1602 wdt:P279 wd:Q1601 ;\n\twdt:P176 wd:Q4001 ;\n"
           "\trdfs:label \"compact phone line\"@en .\n";
    out << "wd:Q1601 wdt:P176 wd:Q4000 .\n";
    for (int i = 0; i < 10; ++i)
        out << q(1700 + i) << " wdt:P279 wd:Q1656682 ;\n\trdfs:label \"event kind " << i
            << "\"@en .\n";
    for (int i = 0; i < 15; ++i)
        out << q(1800 + i) << " wdt:P279 wd:Q16521 ;\n\trdfs:label \"taxon rank " << i
            << "\"@en .\n";
    for (int i = 15; i < 20; ++i)
        out << q(1800 + i) << " wdt:P279 wd:Q1800 ;\n\trdfs:label \"taxon rank " << i
            << "\"@en .\n";

    // Generic-instance categories: items that are both classes and instances.
    out << "wd:Q33742 wdt:P279 wd:Q34770 ;\n\trdfs:label \"natural language\"@en .\n";
    out << "wd:Q1860 wdt:P279 wd:Q33742 ;\n\twdt:P31 wd:Q33742 ;\n"
           "\trdfs:label \"English\"@en ;\n\tschema:description \"West Germanic language\"@en .\n";
    sitelink("English_language", 1860);
    out << "wd:Q1900 wdt:P279 wd:Q618779 ;\n\twdt:P31 wd:Q618779 ;\n"
           "\trdfs:label \"Nobel Peace Prize\"@en .\n";
    out << "wd:Q6581097 wdt:P279 wd:Q48264 ;\n\twdt:P31 wd:Q48264 ;\n"
           "\trdfs:label \"male\"@en .\n";
    out << "wd:Q6581072 wdt:P279 wd:Q48264 ;\n\twdt:P31 wd:Q48264 ;\n"
           "\trdfs:label \"female\"@en .\n";
    out << "wd:Q2000 wdt:P279 wd:Q5390013 ;\n\twdt:P31 wd:Q5390013 ;\n"
           "\trdfs:label \"Buddhism\"@en .\n";

    // Cycle and blacklist classes need instances so they are not dropped
    // for emptiness before the interesting checks run.
    for (int i = 0; i < 6; ++i)
        out << q(7200 + i) << " wdt:P31 " << q(2100 + i) << " ;\n\trdfs:label \"cycle filler "
            << i << "\"@en .\n";

    // ---- person entities ----------------------------------------------------

    for (int i = 0; i < 600; ++i) {
        int id = 3000 + i;
        out << q(id) << " wdt:P31 " << q(1000 + i % 60) << " ;\n";
        if (i % 50 == 0) out << "\trdfs:label \"José Pérez " << i << "\"@en ;\n";
        else out << "\trdfs:label \"Person " << i << "\"@en ;\n";
        out << "\twdt:P569 " << date(1900 + i % 100, 1 + i % 12, 1 + i % 28);
        if (i % 3 == 0) out << " ;\n\twdt:P570 " << date(1960 + i % 60, 1 + (i + 3) % 12, 5);
        if (i % 5 == 0) out << " ;\n\twdt:P108 " << q(4000 + i % 60);
        if (i % 7 == 0) out << " ;\n\twdt:P21 " << (i % 14 == 0 ? "wd:Q6581097" : "wd:Q6581072");
        if (i % 11 == 0) out << " ;\n\twdt:P166 wd:Q1900";
        if (i % 13 == 0) out << " ;\n\twdt:P140 wd:Q2000";
        if (i % 17 == 0) out << " ;\n\twdt:P1412 wd:Q1860";
        if (i % 9 == 0 && i > 0) out << " ;\n\twdt:P40 " << q(3000 + (i - 1));
        if (id >= 3500 && id <= 3504) out << " ;\n\twdt:P9999 \"noise\"";
        out << " .\n";
        if (i % 2 == 0) sitelink("Person_" + std::to_string(i), id);
    }

    // Eleanor Roosevelt: unique Wikipedia title, generic-language object,
    // and fully qualified temporal statements.
    out << "wd:Q83396 wdt:P31 wd:Q1000 ;\n"
           "\trdfs:label \"Eleanor Roosevelt\"@en ;\n"
           "\tschema:description \"American political figure\"@en ;\n"
           "\tskos:altLabel \"Anna Eleanor Roosevelt\"@en ;\n"
           "\twdt:P569 \"+1884-10-11T00:00:00Z\"^^xsd:dateTime ;\n"
           "\twdt:P570 \"+1962-11-07T00:00:00Z\"^^xsd:dateTime ;\n"
           "\twdt:P1412 wd:Q1860 ;\n"
           "\twdt:P166 wd:Q1900 ;\n"
           "\twdt:P108 wd:Q4000 ;\n"
           "\tp:P108 wds:Q83396-1 ;\n"
           "\tp:P166 wds:Q83396-2 .\n"
           "wds:Q83396-1 ps:P108 wd:Q4000 ;\n"
           "\tpq:P580 \"+1933-03-04T00:00:00Z\"^^xsd:dateTime ;\n"
           "\tpq:P582 \"+1945-06-30T00:00:00Z\"^^xsd:dateTime .\n"
           "wds:Q83396-2 ps:P166 wd:Q1900 ;\n"
           "\tpq:P585 \"+1968-01-01T00:00:00Z\"^^xsd:dateTime .\n";
    sitelink("Eleanor_Roosevelt", 83396);

    // Identifier-chain specials.
    out << "wd:Q105086361 wdt:P31 wd:Q1700 ;\n"
           "\trdfs:label \"Brazilian jiu-jitsu competition\"@en .\n";
    out << "wd:Q3800 wdt:P31 wd:Q1000 ;\n\twdt:P569 " << date(1970, 1, 1) << " .\n";
    out << "wd:Q3801 wdt:P31 wd:Q1001 ;\n\trdfs:label \"Médecin célèbre\"@fr .\n";
    out << "wd:Q3802 wdt:P31 wd:Q1001 ;\n\trdfs:label \"Beispielmensch\"@de .\n";
    // Planted cardinality overflow: two birth dates, maxCount 1.
    out << "wd:Q3700 wdt:P31 wd:Q1000 ;\n\trdfs:label \"Double Birthday\"@en ;\n"
           "\twdt:P569 \"+1950-01-01T00:00:00Z\"^^xsd:dateTime ;\n"
           "\twdt:P569 \"+1952-02-02T00:00:00Z\"^^xsd:dateTime .\n";
    // Planted range violation: employer is a place.
    out << "wd:Q3701 wdt:P31 wd:Q1000 ;\n\trdfs:label \"Misfiled Worker\"@en ;\n"
           "\twdt:P108 wd:Q4500 .\n";
    // Instance-level disjointness conflict: typed person and taxon.
    out << "wd:Q3804 wdt:P31 wd:Q1000 , wd:Q1800 ;\n\trdfs:label \"Chimera\"@en .\n";

    // ---- organizations ------------------------------------------------------

    for (int i = 0; i < 60; ++i) {
        int id = 4000 + i;
        out << q(id) << " wdt:P31 " << q(1300 + i % 10) << " ;\n\trdfs:label \"Organization " << i
            << "\"@en ;\n\twdt:P571 " << date(1800 + i, 1 + i % 12, 1 + i % 28)
            << " ;\n\twdt:P159 " << q(4500 + i % 80) << " .\n";
        if (i % 3 == 0) sitelink("Organization_" + std::to_string(i), id);
    }

    // ---- places -------------------------------------------------------------

    for (int i = 0; i < 80; ++i) {
        int id = 4500 + i;
        out << q(id) << " wdt:P31 " << q(1400 + i % 30) << " ;\n";
        if (id == 4501) out << "\trdfs:label \"Zürich\"@en ;\n";
        else if (id == 4503) out << "\trdfs:label \"Tokyo\"@en ;\n\trdfs:label \"東京\"@ja ;\n";
        else out << "\trdfs:label \"City " << i << "\"@en ;\n";
        out << "\twdt:P1082 \"" << (1000 + i * 137) << "\"^^xsd:integer ;\n"
            << "\twdt:P131 " << q(4500 + (i + 1) % 80) << " .\n";
        if (i % 4 == 0 && id != 4501) sitelink("City_" + std::to_string(i), id);
    }
    sitelink("Z%C3%BCrich", 4501);
    // Two places claiming the same Wikipedia page: both fall back to
    // label + Q-id.
    out << "wd:Q4601 wdt:P31 wd:Q1401 ;\n\trdfs:label \"Springfield\"@en ;\n"
           "\twdt:P1082 \"60000\"^^xsd:integer .\n";
    out << "wd:Q4602 wdt:P31 wd:Q1401 ;\n\trdfs:label \"Springfield\"@en ;\n"
           "\twdt:P1082 \"61000\"^^xsd:integer .\n";
    sitelink("Springfield", 4601);
    sitelink("Springfield", 4602);

    // ---- creative works -------------------------------------------------------

    for (int i = 0; i < 60; ++i) {
        int id = 5000 + i;
        out << q(id) << " wdt:P31 " << q(1500 + i % 10) << " ;\n\trdfs:label \"Book " << i
            << "\"@en ;\n\twdt:P50 " << q(3000 + (i * 7) % 600) << " ;\n\twdt:P577 "
            << date(1900 + i, 1 + i % 12, 1 + i % 28);
        if (i % 4 == 0 && i != 0) {
            char isbn[32];
            std::snprintf(isbn, sizeof isbn, "978-%010d", 140000000 + i);
            out << " ;\n\twdt:P212 \"" << isbn << "\"";
        }
        out << " .\n";
        if (i % 5 == 0) sitelink("Book_" + std::to_string(i), id);
    }
    // Planted pattern violation: malformed ISBN.
    out << "wd:Q5100 wdt:P31 wd:Q1500 ;\n\trdfs:label \"Bad Book\"@en ;\n"
           "\twdt:P212 \"12345\" .\n";

    // ---- products -------------------------------------------------------------

    for (int i = 0; i < 40; ++i) {
        int id = 5500 + i;
        int cls = (i >= 20 && i < 25) ? 1602 : 1600 + i % 10;  // sub-product-line instances
        out << q(id) << " wdt:P31 " << q(cls) << " ;\n\trdfs:label \"Gadget " << i
            << "\"@en ;\n\twdt:P176 " << q(4000 + i % 60) << " .\n";
    }

    // ---- events ---------------------------------------------------------------

    for (int i = 0; i < 50; ++i) {
        int id = 6000 + i;
        out << q(id) << " wdt:P31 " << q(1700 + i % 10) << " ;\n\trdfs:label \"Event " << i
            << "\"@en ;\n\twdt:P580 " << date(2000 + i % 20, 1 + i % 12, 1 + i % 28)
            << " ;\n\twdt:P582 " << date(2000 + i % 20, 1 + i % 12, 2 + i % 27) << " .\n";
        if (i % 6 == 0) sitelink("Event_" + std::to_string(i), id);
    }

    // ---- taxa -----------------------------------------------------------------

    for (int i = 0; i < 60; ++i) {
        int id = 6500 + i;
        out << q(id) << " wdt:P31 " << q(1800 + i % 20) << " ;\n\trdfs:label \"Species " << i
            << "\"@en";
        if (i > 0) out << " ;\n\twdt:P171 " << q(6500 + i - 1);
        out << " .\n";
        if (i % 7 == 0) sitelink("Species_" + std::to_string(i), id);
    }

    // ---- entities outside the retained taxonomy --------------------------------

    for (int i = 0; i < 5; ++i)
        out << q(7000 + i) << " wdt:P31 wd:Q2200 ;\n\trdfs:label \"tracked page " << i
            << "\"@en .\n";
    out << "wd:Q7100 wdt:P31 wd:Q99999 ;\n\trdfs:label \"orphan one\"@en .\n";
    out << "wd:Q7101 wdt:P31 wd:Q99999 ;\n\trdfs:label \"orphan two\"@en .\n";

    return 0;
}
