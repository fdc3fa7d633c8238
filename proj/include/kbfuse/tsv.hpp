#ifndef KBFUSE_TSV_HPP
#define KBFUSE_TSV_HPP

#include <string>
#include <vector>

#include "kbfuse/term.hpp"

namespace kbfuse {

// Tab-separated Turtle: `subject TAB predicate TAB object TAB .` with
// optional supplementary columns (startTime, endTime, pointInTime) after
// the dot. One fact per line; literals escape embedded tabs/newlines.

std::string statement_to_tsv_line(const Statement& s);

void write_tsv_facts(const std::vector<Statement>& statements, const std::string& path);

struct TsvReadResult {
    std::vector<Statement> statements;
    size_t skipped = 0;  // lines with fewer than 4 columns or malformed terms
};

TsvReadResult read_tsv_facts(const std::string& path);
TsvReadResult read_tsv_facts_from_string(const std::string& content);

}  // namespace kbfuse

#endif
