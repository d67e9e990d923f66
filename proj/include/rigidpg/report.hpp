// Serialization of search rows, sieve case reports and family exclusions
// as CSV, JSON-lines and markdown, plus the full reproduction report.
// Every number is emitted as an exact decimal integer; JSON-lines encodes
// them as strings so values beyond 64 bits survive any parser.
#pragma once

#include <string>
#include <vector>

#include "rigidpg/params.hpp"
#include "rigidpg/sieve.hpp"

namespace rigidpg {

enum class OutputFormat { Csv, Jsonl, Md };

// Accepts "csv", "jsonl", "md".
OutputFormat parse_format(const std::string& name);

std::string render_search(const std::vector<CandidateRow>& rows, OutputFormat format);

std::string render_sieve(const std::vector<CaseReport>& reports, OutputFormat format);

std::string render_family(const std::vector<FamilyExclusion>& rows, OutputFormat format);

// The markdown reproduction report: candidate table, T.1/T.2/T.3 exclusion
// tables, open cases with structural facts, and the survivor statement.
std::string render_report(const std::vector<CaseReport>& reports,
                          const std::vector<FamilyExclusion>& family);

}  // namespace rigidpg
