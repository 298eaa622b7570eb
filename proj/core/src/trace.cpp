#include "lctrs/trace.hpp"

#include <sstream>

#include "json.hpp"
#include "lctrs/errors.hpp"
#include "lctrs/printer.hpp"

namespace lctrs {

TraceEntry trace_entry(const StepRecord& step) {
  TraceEntry e;
  e.mode = mode_name(step.redex.mode);
  e.rule = step.redex.rule_id;
  e.position = step.redex.position;
  for (const auto& [x, t] : step.redex.matcher.bindings()) e.matcher[x.name] = show(t);
  e.input = show(step.input);
  e.output = show(step.output);
  e.gate = status_name(step.redex.gate.status);
  return e;
}

std::string trace_line(const TraceEntry& e) {
  nlohmann::ordered_json j;
  j["mode"] = e.mode;
  j["rule"] = e.rule;
  j["position"] = e.position;
  j["matcher"] = e.matcher;
  j["input"] = e.input;
  j["output"] = e.output;
  j["gate"] = e.gate;
  return j.dump();
}

std::vector<TraceEntry> trace_of(const ReductionResult& r) {
  std::vector<TraceEntry> out;
  for (const auto& n : r.nodes)
    if (n.step) out.push_back(trace_entry(*n.step));
  return out;
}

std::string to_jsonl(const std::vector<TraceEntry>& entries) {
  std::string out;
  for (const auto& e : entries) out += trace_line(e) + "\n";
  return out;
}

std::vector<TraceEntry> parse_trace(const std::string& text) {
  std::vector<TraceEntry> out;
  std::istringstream in(text);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      auto j = nlohmann::json::parse(line);
      TraceEntry e;
      e.mode = j.at("mode").get<std::string>();
      e.rule = j.at("rule").get<std::string>();
      e.position = j.at("position").get<Position>();
      e.matcher = j.at("matcher").get<std::map<std::string, std::string>>();
      e.input = j.at("input").get<std::string>();
      e.output = j.at("output").get<std::string>();
      e.gate = j.at("gate").get<std::string>();
      out.push_back(std::move(e));
    } catch (const nlohmann::json::exception& ex) {
      throw ParseError(static_cast<int>(n), 1, std::string("trace record (") + ex.what() + ")");
    }
  }
  return out;
}

std::vector<std::string> diff_traces(const std::vector<TraceEntry>& expected, const std::vector<TraceEntry>& actual) {
  std::vector<std::string> out;
  std::size_t n = std::max(expected.size(), actual.size());
  for (std::size_t i = 0; i < n; ++i) {
    std::string at = "step " + std::to_string(i + 1) + ": ";
    if (i >= expected.size()) {
      out.push_back(at + "unexpected " + trace_line(actual[i]));
    } else if (i >= actual.size()) {
      out.push_back(at + "missing " + trace_line(expected[i]));
    } else if (!(expected[i] == actual[i])) {
      out.push_back(at + "expected " + trace_line(expected[i]));
      out.push_back(at + "actual   " + trace_line(actual[i]));
    }
  }
  return out;
}

}  // namespace lctrs
