#include "kbfuse/tsv.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kbfuse {

std::string statement_to_tsv_line(const Statement& s) {
    std::string line = to_turtle(s.subject);
    line += '\t';
    line += to_turtle(s.predicate);
    line += '\t';
    line += to_turtle(s.object);
    line += "\t.";
    if (s.has_time()) {
        line += '\t';
        line += s.startTime;
        line += '\t';
        line += s.endTime;
        line += '\t';
        line += s.pointInTime;
    }
    return line;
}

void write_tsv_facts(const std::vector<Statement>& statements, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    for (const auto& s : statements) {
        out << statement_to_tsv_line(s) << '\n';
    }
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> cols;
    size_t start = 0;
    while (true) {
        size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
            cols.push_back(line.substr(start));
            break;
        }
        cols.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
    return cols;
}

}  // namespace

TsvReadResult read_tsv_facts_from_string(const std::string& content) {
    TsvReadResult result;
    std::istringstream in(content);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cols = split_tabs(line);
        if (cols.size() < 4 || cols[3] != ".") {
            ++result.skipped;
            continue;
        }
        try {
            Statement s;
            s.subject = term_from_turtle(cols[0]);
            s.predicate = term_from_turtle(cols[1]);
            s.object = term_from_turtle(cols[2]);
            if (cols.size() > 4) s.startTime = cols[4];
            if (cols.size() > 5) s.endTime = cols[5];
            if (cols.size() > 6) s.pointInTime = cols[6];
            result.statements.push_back(std::move(s));
        } catch (const std::runtime_error&) {
            ++result.skipped;
        }
    }
    return result;
}

TsvReadResult read_tsv_facts(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return read_tsv_facts_from_string(ss.str());
}

}  // namespace kbfuse
