#pragma once

#include <map>
#include <string>
#include <vector>

#include "lctrs/engine.hpp"

namespace lctrs {

/// One rewrite step as recorded in a JSON-lines trace.
struct TraceEntry {
  std::string mode;
  std::string rule;
  Position position;
  std::map<std::string, std::string> matcher;
  std::string input;
  std::string output;
  std::string gate;

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

TraceEntry trace_entry(const StepRecord& step);
std::string trace_line(const TraceEntry& e);
/// Every step of a reduction, in node order, one JSON object per line.
std::vector<TraceEntry> trace_of(const ReductionResult& r);
std::string to_jsonl(const std::vector<TraceEntry>& entries);
/// Throws ParseError on malformed lines.
std::vector<TraceEntry> parse_trace(const std::string& text);
/// Human-readable differences; empty when the traces agree.
std::vector<std::string> diff_traces(const std::vector<TraceEntry>& expected, const std::vector<TraceEntry>& actual);

}  // namespace lctrs
