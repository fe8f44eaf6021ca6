#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dmiso/json_io.hpp"

namespace dmiso::cmd {

using io::json;
using io::PrecisionPolicy;

// Exit statuses shared with the CLI.
enum Status : int { kOk = 0, kInput = 2, kInconclusive = 3, kInternal = 4 };

// Internal beats input beats inconclusive beats ok.
int worse(int a, int b);
int status_of(ErrorKind k);

struct Outcome {
  json entry;  // report entry; partial when status != 0
  int status = kOk;
};

constexpr const char* kVersion = "1.0.0";
constexpr const char* kReportSchema = "dmiso/report/v1";

// Wraps entries with tool, version, schema and policy.
json make_report(const PrecisionPolicy& pol, const std::vector<json>& entries);
// Tables generated from the JSON, which stays the source of truth.
std::string to_markdown(const json& report);

Outcome analyze(const json& doc, const PrecisionPolicy& pol);
// sub: tensor (two documents), dual, purity (slope s/r), slopes, tate
Outcome isocrystal(const std::string& sub, const std::vector<json>& docs, int64_t s, int64_t r,
                   const PrecisionPolicy& pol);
Outcome solve(const json& a, const json& b, const std::string& ring, int64_t N, const PrecisionPolicy& pol);
Outcome tate(const json& doc, int64_t N, const PrecisionPolicy& pol);
Outcome weil(const json& doc, const PrecisionPolicy& pol);

// Corpus item: a document with "kind" drinfeld | isocrystal | solve, or
// inferred from its keys.
Outcome corpus_item(const json& doc, const PrecisionPolicy& pol);

struct CorpusResult {
  json report;
  int status = kOk;
};
// Items are the *.json files of dir in lexicographic order; each item's
// failure is recorded in its entry. Input error on a missing directory or
// duplicate item names.
CorpusResult corpus(const std::string& dir, const PrecisionPolicy& pol, unsigned jobs);

// Replays every object tagged "certificate" in a report.
struct VerifyResult {
  json report;  // one entry per certificate with its path and outcome
  int checked = 0, failed = 0, skipped = 0;
  int status = kOk;
};
VerifyResult verify(const json& report);

}  // namespace dmiso::cmd
