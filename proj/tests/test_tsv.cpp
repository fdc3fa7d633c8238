#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <string>

#include "doctest.h"
#include "kbfuse/tsv.hpp"
#include "kbfuse/vocab.hpp"

using namespace kbfuse;

TEST_CASE("line layout: four columns plus optional time columns") {
    Statement s{Term::iri("http://e/s"), Term::iri("http://e/p"), Term::literal("v")};
    CHECK(statement_to_tsv_line(s) == "<http://e/s>\t<http://e/p>\t\"v\"\t.");
    s.startTime = "1933-03-04";
    s.endTime = "1945-06-30";
    CHECK(statement_to_tsv_line(s) ==
          "<http://e/s>\t<http://e/p>\t\"v\"\t.\t1933-03-04\t1945-06-30\t");
    Statement p{Term::iri("http://e/s"), Term::iri("http://e/p"), Term::iri("http://e/o")};
    p.pointInTime = "1968-01-01";
    CHECK(statement_to_tsv_line(p) ==
          "<http://e/s>\t<http://e/p>\t<http://e/o>\t.\t\t\t1968-01-01");
}

TEST_CASE("string round trip preserves terms, tags, and times") {
    std::vector<Statement> in = {
        {Term::iri("http://e/a"), Term::iri("http://e/p"), Term::literal("x\ty\nz\\w")},
        {Term::iri("http://e/a"), Term::iri("http://e/q"),
         Term::literal("1984", vocab::XSD_INTEGER)},
        {Term::iri("http://e/b"), Term::iri("http://e/r"), Term::literal("café", "", "fr")},
        {Term::iri("http://e/b"), Term::iri("http://e/s"), Term::iri("http://e/c"), "1901-01-01",
         "", "1902-02-02"},
    };
    std::string text;
    for (const auto& s : in) text += statement_to_tsv_line(s) + "\n";
    auto back = read_tsv_facts_from_string(text);
    CHECK(back.skipped == 0);
    CHECK(back.statements == in);
}

TEST_CASE("malformed lines are skipped and counted") {
    auto r = read_tsv_facts_from_string(
        "<http://e/a>\t<http://e/p>\t<http://e/b>\t.\n"
        "only\ttwo\n"
        "<http://e/a>\tnot-a-term\t<http://e/b>\t.\n"
        "\n"
        "<http://e/c>\t<http://e/p>\t\"ok\"\t.\n");
    CHECK(r.statements.size() == 2);
    CHECK(r.skipped == 2);  // blank lines are not statements but not errors
}

TEST_CASE("file round trip") {
    std::string path = std::string(KBFUSE_BINARY_DIR) + "/tsv_roundtrip_test.tsv";
    std::vector<Statement> in = {
        {Term::iri("http://e/a"), Term::iri("http://e/p"), Term::literal("v", "", "en")}};
    write_tsv_facts(in, path);
    auto r = read_tsv_facts(path);
    CHECK(r.statements == in);
    std::remove(path.c_str());
}
