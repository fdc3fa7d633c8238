#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "kbfuse/chunk.hpp"

using namespace kbfuse;

namespace {

// Reference reading: sequential parse of the whole input.
std::vector<Statement> sequential(const std::string& data) {
    PrefixTable table = read_prefix_header(data);
    size_t start = align_to_item_start(data, 0);
    return parse_turtle(data.substr(start), table);
}

std::vector<Statement> chunked(const std::string& data, unsigned workers) {
    PrefixTable table = read_prefix_header(data);
    std::vector<Statement> all;
    for (auto& part : parse_chunked(data, workers, table))
        all.insert(all.end(), part.statements.begin(), part.statements.end());
    return all;
}

std::string fixture(int items) {
    std::ostringstream out;
    out << "@prefix wd: <http://www.wikidata.org/entity/> .\n"
           "@prefix wdt: <http://www.wikidata.org/prop/direct/> .\n"
           "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n"
           "@prefix schema: <http://schema.org/> .\n";
    for (int i = 0; i < items; ++i) {
        out << "wd:Q" << (100 + i) << " wdt:P31 wd:Q5 ;\n\trdfs:label \"person " << i
            << " métier\"@fr .\n";
        if (i % 3 == 0)
            out << "<https://en.wikipedia.org/wiki/Page_" << i << "> schema:about wd:Q"
                << (100 + i) << " .\n";
    }
    return out.str();
}

}  // namespace

TEST_CASE("plan covers the file with disjoint ordered ranges") {
    auto plan = plan_chunks(1000, 4);
    REQUIRE(plan.ranges.size() == 4);
    CHECK(plan.ranges.front().first == 0);
    CHECK(plan.ranges.back().second == 1000);
    for (size_t i = 1; i < plan.ranges.size(); ++i)
        CHECK(plan.ranges[i].first == plan.ranges[i - 1].second);
}

TEST_CASE("empty file yields one empty range") {
    auto plan = plan_chunks(0, 8);
    REQUIRE(plan.ranges.size() == 1);
    CHECK(plan.ranges[0] == std::pair<uint64_t, uint64_t>{0, 0});
}

TEST_CASE("align skips to the next item declaration") {
    std::string data =
        "@prefix wd: <http://x/> .\n"
        "wd:Q1 a b ;\n\tc d .\n"
        "wd:Q2 a b .\n";
    size_t q1 = data.find("wd:Q1");
    size_t q2 = data.find("wd:Q2");
    CHECK(align_to_item_start(data, 0) == q1);
    // From inside Q1's block the next boundary is Q2, not the indented line.
    CHECK(align_to_item_start(data, q1 + 1) == q2);
    CHECK(align_to_item_start(data, q2 + 1) == data.size());
}

TEST_CASE("align never lands inside a multi-byte character") {
    // Labels are packed with two-byte codepoints so arbitrary offsets
    // frequently bisect one.
    std::string data = fixture(10);
    for (size_t off = 0; off < data.size(); ++off) {
        size_t a = align_to_item_start(data, off);
        if (a < data.size())
            CHECK(static_cast<unsigned char>(data[a]) < 0x80);
    }
}

TEST_CASE("chunked parse equals sequential parse") {
    std::string data = fixture(40);
    auto expected = sequential(data);
    REQUIRE(expected.size() > 40);
    for (unsigned n : {2u, 3u, 7u}) {
        CAPTURE(n);
        CHECK(chunked(data, n) == expected);
    }
}

TEST_CASE("chunk boundary bisecting a utf-8 label is harmless") {
    // Craft a file where the arithmetic 2-way split point falls inside a
    // multi-byte codepoint, then check equivalence for several worker
    // counts anyway.
    std::string head =
        "@prefix wd: <http://www.wikidata.org/entity/> .\n"
        "@prefix wdt: <http://w/> .\n"
        "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n";
    std::string data;
    for (int tries = 0; tries < 200 && data.empty(); ++tries) {
        std::ostringstream out;
        out << head;
        for (int i = 0; i < 6; ++i)
            out << "wd:Q" << i << " rdfs:label \"ééééééééééééé" << std::string(tries, 'x')
                << "\"@fr .\n";
        std::string candidate = out.str();
        size_t mid = plan_chunks(candidate.size(), 2).ranges[1].first;
        if ((static_cast<unsigned char>(candidate[mid]) & 0xC0u) == 0x80u) data = candidate;
    }
    REQUIRE(!data.empty());  // found a bisecting layout
    auto expected = sequential(data);
    REQUIRE(expected.size() == 6);
    for (unsigned n : {2u, 3u, 7u}) CHECK(chunked(data, n) == expected);
}

TEST_CASE("statement-node and sitelink blocks stay with the preceding item") {
    std::string data =
        "@prefix wd: <http://www.wikidata.org/entity/> .\n"
        "@prefix wds: <http://www.wikidata.org/entity/statement/> .\n"
        "@prefix wdt: <http://w/> .\n"
        "@prefix ps: <http://ps/> .\n"
        "@prefix schema: <http://schema.org/> .\n"
        "wd:Q1 wdt:P31 wd:Q5 .\n"
        "wds:Q1-1 ps:P108 wd:Q9 .\n"
        "<https://en.wikipedia.org/wiki/One> schema:about wd:Q1 .\n"
        "wd:Q2 wdt:P31 wd:Q5 .\n";
    auto expected = sequential(data);
    REQUIRE(expected.size() == 4);
    for (unsigned n = 1; n <= 8; ++n) {
        CAPTURE(n);
        CHECK(chunked(data, n) == expected);
    }
}

TEST_CASE("more workers than items degrades gracefully") {
    std::string data = fixture(2);
    CHECK(chunked(data, 16) == sequential(data));
}
